//! Rigorous enclosures of `Γ(x+1)` and `ln Γ(x+1)`.
//!
//! The argument is shifted up to `y = x + m`, where the Stirling series
//! bracket (valid for every `y > 0`) is tight after a few terms, and the
//! result is divided back down by `(x+1)(x+2)···(x+m)`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::coefficients::coeff_stirling;
use crate::error::{Error, Result};
use crate::numerics::{check_precision, interval_exp, interval_ln, pi, Interval, Rational, Real};
use crate::series::stirling_exponent_interval;

/// Arguments below this are shifted up before the series is applied.
pub const X_MIN: i64 = 20;
/// Largest shift the oracle will use.
pub const MAX_SHIFT: i64 = 64;
const MAX_TERMS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct GammaEnclosure {
    /// Contains `Γ(x+1)`.
    pub value: Interval,
    /// Contains `ln Γ(x+1)`.
    pub log_value: Interval,
    pub shift_used: i64,
    /// Bracket depth `n` of the series: `2n` and `2n-1` terms.
    pub stirling_terms: usize,
}

fn log2_big(m: &BigInt) -> f64 {
    let m = m.abs();
    let bits = m.bits();
    let shift = bits.saturating_sub(53);
    (&m >> shift).to_f64().unwrap_or(f64::MAX).log2() + shift as f64
}

/// `log2 |r|`, accurate to roughly double precision.
pub(crate) fn log2_real(r: &Real) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    log2_big(r.mantissa()) + r.exponent() as f64
}

fn log2_rational(r: &Rational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    log2_big(r.numer()) - log2_big(r.denom())
}

/// Smallest `n` whose bracket width `|a'_2n| / y^(4n-1)` is at most
/// `2^log2_target`, or `None` if the divergent tail never gets that small.
fn choose_terms(log2_y: f64, log2_target: f64) -> Option<usize> {
    (1..=MAX_TERMS).find(|&n| {
        let term = log2_rational(&coeff_stirling(2 * n).0) - (4 * n - 1) as f64 * log2_y;
        term <= log2_target
    })
}

/// Encloses `Γ(x+1)` with relative width at most `target_rel_width`.
///
/// Fails with [`Error::Precision`] when the target is at or below
/// `2^(8 - precision_bits)` or cannot be met with a shift of at most 64.
pub fn gamma_enclosure(x: &Real, target_rel_width: &Real, precision_bits: u32) -> Result<GammaEnclosure> {
    check_precision(precision_bits)?;
    if !x.is_positive() {
        return Err(Error::Domain(format!("reference gamma needs x > 0, got {x}")));
    }
    let floor = 8.0 - precision_bits as f64;
    let log2_target = log2_real(target_rel_width);
    if !target_rel_width.is_positive() || log2_target <= floor {
        return Err(Error::Precision { requested: target_rel_width.to_f64(), achievable: floor.exp2() });
    }
    let x_f = x.to_f64();
    let mut shift = if x_f < X_MIN as f64 { (X_MIN as f64 - x_f).ceil() as i64 } else { 0 };
    // relative width of Γ ≈ log width; leave room for rounding
    let series_target = log2_target - 2.0;
    let mut best: Option<f64> = None;
    loop {
        let log2_y = (x_f + shift as f64).log2();
        if let Some(n) = choose_terms(log2_y, series_target) {
            let enc = enclose_with(x, shift, n, precision_bits)?;
            let achieved = enc.value.rel_width();
            if achieved.log2() <= log2_target {
                return Ok(enc);
            }
            best = Some(best.map_or(achieved, |b: f64| b.min(achieved)));
        }
        if shift >= MAX_SHIFT {
            break;
        }
        shift = (shift + 8).min(MAX_SHIFT);
    }
    let achievable = best.unwrap_or_else(|| {
        let log2_y = (x_f + MAX_SHIFT as f64).log2();
        (1..=MAX_TERMS)
            .map(|n| log2_rational(&coeff_stirling(2 * n).0) - (4 * n - 1) as f64 * log2_y)
            .fold(f64::INFINITY, f64::min)
            .exp2()
    });
    Err(Error::Precision { requested: target_rel_width.to_f64(), achievable })
}

/// The enclosure for a fixed shift and bracket depth.
pub fn enclose_with(x: &Real, shift: i64, n: usize, precision_bits: u32) -> Result<GammaEnclosure> {
    check_precision(precision_bits)?;
    if !(0..=MAX_SHIFT).contains(&shift) {
        return Err(Error::Contract(format!("shift must lie in 0..={MAX_SHIFT}, got {shift}")));
    }
    let magnitude = (x.to_f64() + shift as f64).log2().max(0.0).ceil() as u32;
    let w = precision_bits + 32 + magnitude;
    let xi = Interval::point(x.clone()).with_precision(w);
    let y = &xi + &Interval::from_int(shift, w);
    let series = stirling_exponent_interval(&y, n, w)?.value;
    // (y + 1/2) ln y - y + ln √(2π)
    let ln_y = interval_ln(&y, w)?;
    let half_ln_2pi = interval_ln(&pi(w).mul_int(2), w)?.mul_pow2(-1);
    let log_base = &(&(&(&y + &Interval::from_rational(&Rational::new(1, 2), w)) * &ln_y) - &y) + &half_ln_2pi;
    let mut log_value = &log_base + &series;
    if shift > 0 {
        let product = (1..=shift).fold(Interval::from_int(1, w), |acc, j| &acc * &(&xi + &Interval::from_int(j, w)));
        log_value = &log_value - &interval_ln(&product, w)?;
    }
    let value = interval_exp(&log_value, w)?.with_precision(precision_bits);
    Ok(GammaEnclosure { value, log_value: log_value.with_precision(precision_bits), shift_used: shift, stirling_terms: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const P: u32 = 256;

    fn real(s: &str) -> Real {
        Real::from_decimal_str(s, P).unwrap()
    }

    fn factorial(n: u32) -> Rational {
        Rational::from_integer((1..=n).map(BigInt::from).product::<BigInt>())
    }

    #[test]
    fn integer_arguments_contain_factorials() {
        for k in 1..=20u32 {
            let g = gamma_enclosure(&Real::from_int(k as i64, P), &real("1e-30"), P).unwrap();
            assert!(g.value.contains_rational(&factorial(k)), "x = {k}");
            assert!(g.value.rel_width() <= 1e-30);
        }
    }

    #[test]
    fn half_integer() {
        // Γ(3/2) = √π / 2
        let g = gamma_enclosure(&real("0.5"), &real("1e-25"), P).unwrap();
        assert!(g.value.contains(&real("0.88622692545275801364908374167057259139877472806119")));
        assert!(g.value.rel_width() <= 1e-25);
        assert_eq!(g.shift_used, 20);
    }

    #[test]
    fn shift_choice() {
        assert_eq!(gamma_enclosure(&real("1"), &real("1e-30"), P).unwrap().shift_used, 19);
        assert_eq!(gamma_enclosure(&real("25"), &real("1e-30"), P).unwrap().shift_used, 0);
    }

    #[test]
    fn log_and_value_agree() {
        let g = gamma_enclosure(&real("7.3"), &real("1e-40"), P).unwrap();
        assert!(interval_exp(&g.log_value, P).unwrap().overlaps(&g.value));
    }

    #[test]
    fn functional_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
        let target = real("1e-40");
        for _ in 0..50 {
            let x = Real::from_f64(rng.gen_range(0.5..30.0), P).unwrap();
            let g = gamma_enclosure(&x, &target, P).unwrap().value;
            let x1 = x.add(&Real::one(P), P + 64, crate::numerics::Round::Nearest);
            let g1 = gamma_enclosure(&x1, &target, P).unwrap().value;
            assert!((&g * &Interval::point(x1.clone())).overlaps(&g1), "x = {x}");
        }
    }

    #[test]
    fn tighter_targets_are_not_wider() {
        let x = real("3.7");
        let mut prev = f64::INFINITY;
        for t in ["1e-10", "1e-20", "1e-30", "1e-45", "1e-60"] {
            let w = gamma_enclosure(&x, &real(t), P).unwrap().value.rel_width();
            assert!(w <= prev, "{t}: {w} > {prev}");
            prev = w;
        }
    }

    #[test]
    fn unreachable_targets() {
        assert!(matches!(gamma_enclosure(&real("1"), &real("1e-76"), P), Err(Error::Precision { .. })));
        let tiny = Real::from_decimal_str("1e-400", 2048).unwrap();
        match gamma_enclosure(&real("1"), &tiny, 2048) {
            Err(Error::Precision { achievable, .. }) => assert!(achievable > 0.0 && achievable < 1e-100),
            other => panic!("{other:?}"),
        }
        assert!(matches!(gamma_enclosure(&real("0"), &real("1e-10"), P), Err(Error::Domain(_))));
    }
}
