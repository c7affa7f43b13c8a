//! The closed Windschitl-type formulas and the three expansions they truncate.
//!
//! With `base(x) = √(2πx)(x/e)^x` and `s(x) = x sinh(1/x)`:
//!
//! | id        | formula                                         |
//! |-----------|-------------------------------------------------|
//! | `w0`      | `base · s^(x/2)`                                |
//! | `w1`      | `base · (s + 1/(810x^6))^(x/2)`                 |
//! | `w01`     | `w0 · exp(1/(1620x^5))`                         |
//! | `w01star` | `w0 · (1 + 1/(1620x^5))`                        |
//! | `wc1`     | `base · s^((x/2)(1 + 1/(135x^4)))`              |
//! | `wl1`     | `base · (x sinh(1/x + 1/(810x^7)))^(x/2)`       |
//!
//! Everything is evaluated in log space and exponentiated at the end, so the
//! large factors never appear as intermediate powers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coefficients::{coeff_a, coeff_b, coeff_c, coeff_stirling};
use crate::error::{Error, Result};
use crate::numerics::{check_precision, interval_exp, interval_ln, interval_sinhc, pi, Interval, Rational, Real, Round};
use crate::series::horner;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormulaId {
    #[serde(rename = "w0")]
    W0,
    #[serde(rename = "w1")]
    W1,
    #[serde(rename = "w01")]
    W01,
    #[serde(rename = "w01star")]
    W01Star,
    #[serde(rename = "wc1")]
    Wc1,
    #[serde(rename = "wl1")]
    Wl1,
}

impl FormulaId {
    pub const ALL: [FormulaId; 6] =
        [FormulaId::W0, FormulaId::W1, FormulaId::W01, FormulaId::W01Star, FormulaId::Wc1, FormulaId::Wl1];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::W0 => "w0",
            FormulaId::W1 => "w1",
            FormulaId::W01 => "w01",
            FormulaId::W01Star => "w01star",
            FormulaId::Wc1 => "wc1",
            FormulaId::Wl1 => "wl1",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown formula '{s}' (expected one of w0, w1, w01, w01star, wc1, wl1)")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionFamily {
    /// `W0 · exp(Σ_{k=3}^{n} a_k x^-(2k-1))`
    ExpSeries,
    /// `W0 · (1 + Σ_{k=1}^{n} b_k x^-k)`
    MultSeries,
    /// `base · s^((x/2)(1 + Σ_{k=1}^{n} c_k x^-2k))`
    ExponentSeries,
}

impl ExpansionFamily {
    /// Smallest index with a nonzero coefficient.
    pub fn min_truncation(self) -> usize {
        match self {
            ExpansionFamily::ExpSeries => 3,
            ExpansionFamily::MultSeries => 5,
            ExpansionFamily::ExponentSeries => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExpansionSpec {
    pub family: ExpansionFamily,
    pub truncation_n: usize,
}

impl ExpansionSpec {
    pub fn new(family: ExpansionFamily, truncation_n: usize) -> Result<ExpansionSpec> {
        if truncation_n < family.min_truncation() {
            return Err(Error::Contract(format!(
                "{family:?} needs truncation_n >= {}, got {truncation_n}",
                family.min_truncation()
            )));
        }
        Ok(ExpansionSpec { family, truncation_n })
    }
}

/// Shared log-space pieces at one `x`.
struct Pieces {
    w: u32,
    x: Interval,
    inv_x: Interval,
    log_base: Interval,
    sinhc: Interval,
    ln_sinhc: Interval,
    half_x: Interval,
}

impl Pieces {
    fn new(x: &Real, precision_bits: u32) -> Result<Pieces> {
        check_precision(precision_bits)?;
        if !x.is_positive() {
            return Err(Error::Domain(format!("approximations need x > 0, got {x}")));
        }
        let w = working_precision(x, precision_bits);
        let xi = Interval::point(x.clone()).with_precision(w);
        let inv_x = xi.recip()?;
        let ln_x = interval_ln(&xi, w)?;
        let half_ln_2pi = interval_ln(&pi(w).mul_int(2), w)?.mul_pow2(-1);
        // (x + 1/2) ln x - x + ln √(2π)
        let log_base = &(&(&xi + &Interval::from_rational(&Rational::new(1, 2), w)) * &ln_x) - &xi;
        let log_base = &log_base + &half_ln_2pi;
        let sinhc = interval_sinhc(&inv_x, w)?;
        let ln_sinhc = interval_ln(&sinhc, w)?;
        let half_x = xi.mul_pow2(-1);
        Ok(Pieces { w, x: xi, inv_x, log_base, sinhc, ln_sinhc, half_x })
    }

    fn q(&self, p: i64, d: i64) -> Interval {
        Interval::from_rational(&Rational::new(p, d), self.w)
    }

    /// `c / x^k`
    fn over_pow(&self, c: &Interval, k: u32) -> Interval {
        c * &self.inv_x.powi(k)
    }

    fn log_w0(&self) -> Interval {
        &self.log_base + &(&self.half_x * &self.ln_sinhc)
    }

    fn log_formula(&self, id: FormulaId) -> Result<Interval> {
        let w = self.w;
        Ok(match id {
            FormulaId::W0 => self.log_w0(),
            FormulaId::W1 => {
                let inner = &self.sinhc + &self.over_pow(&self.q(1, 810), 6);
                &self.log_base + &(&self.half_x * &interval_ln(&inner, w)?)
            }
            FormulaId::W01 => &self.log_w0() + &self.over_pow(&self.q(1, 1620), 5),
            FormulaId::W01Star => {
                let factor = &Interval::from_int(1, w) + &self.over_pow(&self.q(1, 1620), 5);
                &self.log_w0() + &interval_ln(&factor, w)?
            }
            FormulaId::Wc1 => {
                let exponent = &self.half_x * &(&Interval::from_int(1, w) + &self.over_pow(&self.q(1, 135), 4));
                &self.log_base + &(&exponent * &self.ln_sinhc)
            }
            FormulaId::Wl1 => {
                // x sinh(u) = sinhc(u) · (u x) with u = 1/x + 1/(810x^7)
                let ux = &Interval::from_int(1, w) + &self.over_pow(&self.q(1, 810), 6);
                let u = &self.inv_x * &ux;
                let ln_inner = &interval_ln(&interval_sinhc(&u, w)?, w)? + &interval_ln(&ux, w)?;
                &self.log_base + &(&self.half_x * &ln_inner)
            }
        })
    }

    fn log_expansion(&self, spec: ExpansionSpec) -> Result<Interval> {
        let w = self.w;
        let n = spec.truncation_n;
        Ok(match spec.family {
            ExpansionFamily::ExpSeries => {
                // Σ_{k=3}^{n} a_k x^-(2k-1) = x^-5 Σ_{j=0}^{n-3} a_(j+3) x^-2j
                let coeffs: Vec<Interval> = (3..=n).map(|k| Interval::from_rational(&coeff_a(k), w)).collect();
                let tail = &horner(&coeffs, &self.inv_x.sqr()) * &self.inv_x.powi(5);
                &self.log_w0() + &tail
            }
            ExpansionFamily::MultSeries => {
                let coeffs: Vec<Interval> = (0..=n).map(|k| Interval::from_rational(&coeff_b(k), w)).collect();
                let factor = horner(&coeffs, &self.inv_x);
                if !factor.is_positive() {
                    return Err(Error::Domain(format!(
                        "1 + Σ b_k x^-k is not positive at x = {} for n = {n}",
                        self.x.lo()
                    )));
                }
                &self.log_w0() + &interval_ln(&factor, w)?
            }
            ExpansionFamily::ExponentSeries => {
                let coeffs: Vec<Interval> = (0..=n).map(|k| Interval::from_rational(&coeff_c(k), w)).collect();
                let exponent = &self.half_x * &horner(&coeffs, &self.inv_x.sqr());
                &self.log_base + &(&exponent * &self.ln_sinhc)
            }
        })
    }
}

fn working_precision(x: &Real, precision_bits: u32) -> u32 {
    let magnitude = x.log2_floor().unwrap_or(0).unsigned_abs().min(4096) as u32;
    precision_bits + 32 + magnitude
}

/// Encloses `ln √(2πx)(x/e)^x`.
pub fn log_stirling_base(x: &Real, precision_bits: u32) -> Result<Interval> {
    Ok(Pieces::new(x, precision_bits)?.log_base.with_precision(precision_bits))
}

/// Encloses the natural log of the named formula at `x`.
pub fn log_formula(id: FormulaId, x: &Real, precision_bits: u32) -> Result<Interval> {
    Ok(Pieces::new(x, precision_bits)?.log_formula(id)?.with_precision(precision_bits))
}

/// Log enclosures of several formulas at one `x`, sharing the common pieces.
pub fn log_formulas(ids: &[FormulaId], x: &Real, precision_bits: u32) -> Result<Vec<Interval>> {
    let pieces = Pieces::new(x, precision_bits)?;
    ids.iter().map(|&id| Ok(pieces.log_formula(id)?.with_precision(precision_bits))).collect()
}

/// Encloses the value of the named formula at `x`.
pub fn eval_formula(id: FormulaId, x: &Real, precision_bits: u32) -> Result<Interval> {
    let pieces = Pieces::new(x, precision_bits)?;
    let log = pieces.log_formula(id)?;
    Ok(interval_exp(&log, pieces.w)?.with_precision(precision_bits))
}

/// Encloses the natural log of a truncated expansion at `x`.
pub fn log_expansion(spec: ExpansionSpec, x: &Real, precision_bits: u32) -> Result<Interval> {
    let spec = ExpansionSpec::new(spec.family, spec.truncation_n)?;
    Ok(Pieces::new(x, precision_bits)?.log_expansion(spec)?.with_precision(precision_bits))
}

/// Encloses the value of a truncated expansion at `x`.
pub fn eval_expansion(spec: ExpansionSpec, x: &Real, precision_bits: u32) -> Result<Interval> {
    let spec = ExpansionSpec::new(spec.family, spec.truncation_n)?;
    let pieces = Pieces::new(x, precision_bits)?;
    let log = pieces.log_expansion(spec)?;
    Ok(interval_exp(&log, pieces.w)?.with_precision(precision_bits))
}

/// `|B_2n| / (2n(2n-1) x^(2n-1))`, rounded up; requires `n >= 4`.
pub fn remainder_bound(n: usize, x: &Real) -> Result<Real> {
    if n < 4 {
        return Err(Error::Contract(format!("the remainder bound holds for n >= 4, got n = {n}")));
    }
    if !x.is_positive() {
        return Err(Error::Domain(format!("remainder bound needs x > 0, got {x}")));
    }
    let p = x.precision().max(64);
    let w = p + 32;
    let c = Interval::from_rational(&coeff_stirling(n).0.abs(), w);
    let inv = Interval::point(x.clone()).with_precision(w).recip()?;
    let bound = &c * &inv.powi(2 * n as u32 - 1);
    Ok(bound.hi().round(p, Round::Up))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{interval_sinh, interval_sqrt};

    const P: u32 = 256;

    fn real(s: &str) -> Real {
        Real::from_decimal_str(s, P).unwrap()
    }

    fn rel_err(v: &Interval, exact: f64) -> f64 {
        (v.mid().to_f64() - exact).abs() / exact
    }

    #[test]
    fn names_round_trip() {
        for id in FormulaId::ALL {
            assert_eq!(id.name().parse::<FormulaId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{}\"", id.name()));
        }
        assert!("w2".parse::<FormulaId>().is_err());
    }

    #[test]
    fn w0_at_one_matches_direct_expression() {
        // e^-1 √(2π) (sinh 1)^(1/2)
        let one = Interval::from_int(1, P + 64);
        let direct = &(&interval_sqrt(&pi(P + 64).mul_int(2), P + 64).unwrap()
            * &interval_sqrt(&interval_sinh(&one, P + 64).unwrap(), P + 64).unwrap())
            * &interval_exp(&-&one, P + 64).unwrap();
        let v = eval_formula(FormulaId::W0, &real("1"), P).unwrap();
        assert!(v.overlaps(&direct));
        assert!(v.rel_width() < 1e-70);
        let e = rel_err(&v, 1.0);
        assert!((e - 3.41727607545e-4).abs() < 1e-14, "{e}");
    }

    #[test]
    fn table_magnitudes() {
        let w1 = eval_formula(FormulaId::W1, &real("1"), P).unwrap();
        assert!((rel_err(&w1, 1.0) - 1.832e-4).abs() < 0.001e-4);
        let wl1 = eval_formula(FormulaId::Wl1, &real("10"), P).unwrap();
        assert!((rel_err(&wl1, 3628800.0) - 7.794e-11).abs() < 0.001e-11);
    }

    #[test]
    fn expansions_reproduce_closed_formulas() {
        for s in ["0.5", "1", "2.5", "10", "77"] {
            let x = real(s);
            let pairs = [
                (ExpansionSpec::new(ExpansionFamily::ExpSeries, 3).unwrap(), FormulaId::W01),
                (ExpansionSpec::new(ExpansionFamily::MultSeries, 5).unwrap(), FormulaId::W01Star),
                (ExpansionSpec::new(ExpansionFamily::ExponentSeries, 2).unwrap(), FormulaId::Wc1),
            ];
            for (spec, id) in pairs {
                let a = eval_expansion(spec, &x, P).unwrap();
                let b = eval_formula(id, &x, P).unwrap();
                assert!(a.overlaps(&b), "{id} at {s}");
            }
        }
    }

    #[test]
    fn exp_series_steps_by_one_factor() {
        let x = real("3");
        for n in 3..8 {
            let lo = log_expansion(ExpansionSpec { family: ExpansionFamily::ExpSeries, truncation_n: n }, &x, P).unwrap();
            let hi =
                log_expansion(ExpansionSpec { family: ExpansionFamily::ExpSeries, truncation_n: n + 1 }, &x, P).unwrap();
            let step = Interval::from_rational(&(coeff_a(n + 1) / Rational::from_integer(3).pow(2 * n as i32 + 1)), P);
            assert!((&lo + &step).overlaps(&hi), "n = {n}");
        }
    }

    #[test]
    fn spec_minimums() {
        assert!(ExpansionSpec::new(ExpansionFamily::ExpSeries, 2).is_err());
        assert!(ExpansionSpec::new(ExpansionFamily::MultSeries, 4).is_err());
        assert!(ExpansionSpec::new(ExpansionFamily::ExponentSeries, 1).is_err());
        let bad = ExpansionSpec { family: ExpansionFamily::MultSeries, truncation_n: 1 };
        assert!(matches!(eval_expansion(bad, &real("1"), P), Err(Error::Contract(_))));
    }

    #[test]
    fn domain_errors() {
        for id in FormulaId::ALL {
            assert!(matches!(eval_formula(id, &real("0"), P), Err(Error::Domain(_))));
            assert!(matches!(eval_formula(id, &real("-2"), P), Err(Error::Domain(_))));
        }
        assert!(matches!(eval_formula(FormulaId::W0, &real("1"), 8), Err(Error::InvalidPrecision { .. })));
    }

    #[test]
    fn remainder_bound_values() {
        let b = remainder_bound(4, &real("1")).unwrap();
        assert!(b >= Real::from_rational(&Rational::new(1, 1680), P, Round::Up));
        assert!(b.to_f64() == 1.0 / 1680.0);
        let b = remainder_bound(5, &real("1")).unwrap();
        assert!((b.to_f64() - 1.0 / 1188.0).abs() < 1e-18);
        let b = remainder_bound(4, &real("10")).unwrap();
        assert!((b.to_f64() / (1e-7 / 1680.0) - 1.0).abs() < 1e-12);
        assert!(matches!(remainder_bound(3, &real("1")), Err(Error::Contract(_))));
    }

    #[test]
    fn large_argument_stays_finite() {
        let v = log_formula(FormulaId::Wl1, &real("1e6"), P).unwrap();
        assert!(v.rel_width() < 1e-60);
    }
}
