//! Truncated series with two-sided bounds.
//!
//! Both series here alternate in sign from their first term, and their even
//! and odd partial sums bracket the limit:
//!
//! ```text
//! ln(sinh t / t)           = Σ 2^2k B_2k t^2k / (2k (2k)!)          0 < t < π
//! ln Γ(x+1) - ln(√(2πx)(x/e)^x) = Σ B_2k / (2k (2k-1) x^(2k-1))     x > 0
//! ```
//!
//! The sum to `2n` terms is a lower bound and the sum to `2n-1` terms an
//! upper bound, so each call returns an enclosure of the exact value.

use serde::{Deserialize, Serialize};

use crate::coefficients::coeff_stirling;
use crate::error::{Error, Result};
use crate::numerics::{check_precision, pi, Interval, Real};

/// Which side of the exact value a truncation lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketKind {
    Lower,
    Upper,
    Enclosure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub terms_used: usize,
    pub value: Interval,
    pub bracket_kind: BracketKind,
}

// extra bits carried through the Horner loop
const GUARD: u32 = 16;

/// Evaluates `Σ coeffs[i] u^i`, highest power first.
pub(crate) fn horner(coeffs: &[Interval], u: &Interval) -> Interval {
    let mut acc = coeffs.last().cloned().unwrap_or_else(|| Interval::from_int(0, u.precision()));
    for c in coeffs.iter().rev().skip(1) {
        acc = &(&acc * u) + c;
    }
    acc
}

fn bracket_kind(terms: usize) -> BracketKind {
    if terms % 2 == 0 {
        BracketKind::Lower
    } else {
        BracketKind::Upper
    }
}

fn check_terms(terms: usize) -> Result<()> {
    if terms == 0 {
        return Err(Error::Contract("a truncation needs at least one term".into()));
    }
    Ok(())
}

fn check_t(t: &Interval, w: u32) -> Result<()> {
    if !t.is_positive() {
        return Err(Error::Domain(format!("ln(sinh t / t) series needs t > 0, got {t}")));
    }
    if t.hi() >= pi(w).lo() {
        return Err(Error::Domain(format!("ln(sinh t / t) series needs t < π, got {t}")));
    }
    Ok(())
}

fn ln_sinhc_sum(t: &Interval, terms: usize, w: u32) -> Interval {
    let coeffs: Vec<Interval> = (1..=terms).map(|k| Interval::from_rational(&coeff_stirling(k).1, w)).collect();
    let u = t.with_precision(w).sqr();
    // t^2 (a''_1 + a''_2 t^2 + ...)
    &horner(&coeffs, &u) * &u
}

fn stirling_sum(x: &Interval, terms: usize, w: u32) -> Result<Interval> {
    let coeffs: Vec<Interval> = (1..=terms).map(|k| Interval::from_rational(&coeff_stirling(k).0, w)).collect();
    let inv = x.with_precision(w).recip()?;
    // x^-1 (a'_1 + a'_2 x^-2 + ...)
    Ok(&horner(&coeffs, &inv.sqr()) * &inv)
}

fn enclose(lower: Interval, upper: Interval, n: usize, precision: u32) -> TruncatedSeries {
    let lo = lower.lo().round(precision, crate::numerics::Round::Down);
    let hi = upper.hi().round(precision, crate::numerics::Round::Up);
    TruncatedSeries { terms_used: 2 * n, value: Interval::new(lo, hi), bracket_kind: BracketKind::Enclosure }
}

/// The partial sum of `ln(sinh t / t)` to `terms` terms: a lower bound when
/// `terms` is even and an upper bound when odd.
pub fn ln_sinh_over_t_partial(t: &Interval, terms: usize, precision_bits: u32) -> Result<TruncatedSeries> {
    check_precision(precision_bits)?;
    check_terms(terms)?;
    let w = precision_bits + GUARD;
    check_t(t, w)?;
    let value = ln_sinhc_sum(t, terms, w).with_precision(precision_bits);
    Ok(TruncatedSeries { terms_used: terms, value, bracket_kind: bracket_kind(terms) })
}

/// Encloses `ln(sinh t / t)` between the `2n`- and `(2n-1)`-term partial sums.
pub fn ln_sinh_over_t(t: &Real, n: usize, precision_bits: u32) -> Result<TruncatedSeries> {
    ln_sinh_over_t_interval(&Interval::point(t.clone()), n, precision_bits)
}

/// As [`ln_sinh_over_t`], valid for every `t` in the interval.
pub fn ln_sinh_over_t_interval(t: &Interval, n: usize, precision_bits: u32) -> Result<TruncatedSeries> {
    check_precision(precision_bits)?;
    check_terms(n)?;
    let w = precision_bits + GUARD;
    check_t(t, w)?;
    let lower = ln_sinhc_sum(t, 2 * n, w);
    let upper = ln_sinhc_sum(t, 2 * n - 1, w);
    Ok(enclose(lower, upper, n, precision_bits))
}

/// The partial sum of the Stirling exponent series to `terms` terms.
pub fn stirling_exponent_partial(x: &Interval, terms: usize, precision_bits: u32) -> Result<TruncatedSeries> {
    check_precision(precision_bits)?;
    check_terms(terms)?;
    check_x(x)?;
    let value = stirling_sum(x, terms, precision_bits + GUARD)?.with_precision(precision_bits);
    Ok(TruncatedSeries { terms_used: terms, value, bracket_kind: bracket_kind(terms) })
}

fn check_x(x: &Interval) -> Result<()> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("Stirling series needs x > 0, got {x}")));
    }
    Ok(())
}

/// Encloses `ln Γ(x+1) - ln(√(2πx)(x/e)^x)` for any `x > 0`.
pub fn stirling_exponent(x: &Real, n: usize, precision_bits: u32) -> Result<TruncatedSeries> {
    stirling_exponent_interval(&Interval::point(x.clone()), n, precision_bits)
}

/// As [`stirling_exponent`], valid for every `x` in the interval.
pub fn stirling_exponent_interval(x: &Interval, n: usize, precision_bits: u32) -> Result<TruncatedSeries> {
    check_precision(precision_bits)?;
    check_terms(n)?;
    check_x(x)?;
    let w = precision_bits + GUARD;
    let lower = stirling_sum(x, 2 * n, w)?;
    let upper = stirling_sum(x, 2 * n - 1, w)?;
    Ok(enclose(lower, upper, n, precision_bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{interval_ln, interval_sinhc, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const P: u32 = 256;

    fn real(s: &str) -> Real {
        Real::from_decimal_str(s, P).unwrap()
    }

    #[test]
    fn first_bracket_at_one() {
        let s = ln_sinh_over_t(&real("1"), 1, P).unwrap();
        assert_eq!(s.bracket_kind, BracketKind::Enclosure);
        assert_eq!(s.terms_used, 2);
        assert!(s.value.contains_rational(&Rational::new(29, 180)));
        assert!(s.value.contains_rational(&Rational::new(1, 6)));
        assert!(s.value.contains(&real("0.16143936157119563361011972844234937196280204461790")));
        let deeper = ln_sinh_over_t(&real("1"), 2, P).unwrap();
        assert!(deeper.value.contains(&real("0.16143936157119563361011972844234937196280204461790")));
    }

    #[test]
    fn partial_sums_bracket() {
        let t = Interval::point(real("1"));
        let upper = ln_sinh_over_t_partial(&t, 1, P).unwrap();
        let lower = ln_sinh_over_t_partial(&t, 2, P).unwrap();
        assert_eq!(upper.bracket_kind, BracketKind::Upper);
        assert_eq!(lower.bracket_kind, BracketKind::Lower);
        assert!(lower.value.hi() < upper.value.lo());
    }

    #[test]
    fn small_t_shrinks_toward_zero() {
        let mut prev_width = None;
        for s in ["0.1", "0.01", "0.001"] {
            let e = ln_sinh_over_t(&real(s), 1, P).unwrap().value;
            assert!(e.is_positive());
            let w = e.hi().to_f64();
            if let Some(p) = prev_width {
                assert!(w < p / 50.0);
            }
            prev_width = Some(w);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(ln_sinh_over_t(&real("0"), 1, P), Err(Error::Domain(_))));
        assert!(matches!(ln_sinh_over_t(&real("-1"), 1, P), Err(Error::Domain(_))));
        assert!(matches!(ln_sinh_over_t(&real("3.1416"), 1, P), Err(Error::Domain(_))));
        assert!(matches!(ln_sinh_over_t(&real("4"), 1, P), Err(Error::Domain(_))));
        assert!(ln_sinh_over_t(&real("3.1415"), 1, P).is_ok());
        assert!(matches!(stirling_exponent(&real("0"), 1, P), Err(Error::Domain(_))));
        assert!(matches!(ln_sinh_over_t(&real("1"), 0, P), Err(Error::Contract(_))));
    }

    #[test]
    fn random_brackets_contain_direct_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        for _ in 0..100 {
            let t = Real::from_f64(rng.gen_range(1e-3..3.0), P).unwrap();
            let n = rng.gen_range(1..=8);
            let enc = ln_sinh_over_t(&t, n, P).unwrap().value;
            assert!(enc.lo() <= enc.hi());
            let direct = interval_ln(&interval_sinhc(&Interval::point(t.clone()), 4 * P).unwrap(), 4 * P).unwrap();
            assert!(enc.contains_interval(&direct), "t = {t}, n = {n}");
        }
    }

    #[test]
    fn brackets_nest() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        for _ in 0..40 {
            let t = Real::from_f64(rng.gen_range(0.1..3.1), P).unwrap();
            let mut prev = ln_sinh_over_t(&t, 1, P).unwrap().value;
            for n in 2..=8 {
                let next = ln_sinh_over_t(&t, n, P).unwrap().value;
                assert!(prev.contains_interval(&next), "t = {t}, n = {n}");
                prev = next;
            }
        }
    }

    #[test]
    fn stirling_at_one() {
        let target = real("0.081061466795327258219670263594382360138602526362216");
        let s = stirling_exponent(&real("1"), 1, P).unwrap();
        let expected = Interval::new(
            Real::from_rational(&Rational::new(29, 360), P, crate::numerics::Round::Down),
            Real::from_rational(&Rational::new(1, 12), P, crate::numerics::Round::Up),
        );
        assert_eq!(s.value, expected);
        assert!(s.value.contains(&target));
        assert!(stirling_exponent(&real("1"), 4, P).unwrap().value.contains(&target));
    }

    #[test]
    fn stirling_width_is_last_term() {
        let s = stirling_exponent(&real("10"), 2, P).unwrap();
        // |a'_4| / 10^7 = (1/30)/56 * 1e-7
        let last = 1.0 / 1680.0 * 1e-7;
        let w = s.value.width().to_f64();
        assert!((w - last).abs() < last * 1e-10, "{w}");
    }

    #[test]
    fn stirling_contains_log_factorials() {
        let values = [
            ("1", "0.081061466795327258219670263594382360138602526362216"),
            ("2", "0.041340695955409294093822081407117508025352324821833"),
            ("5", "0.016644691189821192163194865373593391147387393057398"),
            ("10", "0.0083305634333628712564693186596285522092876400520316"),
        ];
        for (x, v) in values {
            for n in 1..=6 {
                let s = stirling_exponent(&real(x), n, P).unwrap();
                assert!(s.value.contains(&real(v)), "x = {x}, n = {n}");
            }
        }
    }

    #[test]
    fn interval_argument_encloses_points() {
        let x = Interval::new(real("4.5"), real("5.5"));
        let wide = stirling_exponent_interval(&x, 2, P).unwrap().value;
        for s in ["4.5", "5", "5.5"] {
            assert!(wide.contains_interval(&stirling_exponent(&real(s), 2, P).unwrap().value));
        }
    }
}
