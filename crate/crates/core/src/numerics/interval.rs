//! Closed intervals with outward-rounded endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::real::{Real, Round};
use super::Rational;
use crate::error::{Error, Result};

/// `[lo, hi]` with `lo <= hi`. Every operation returns an interval containing
/// the exact result for all members of its operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Real,
    hi: Real,
    precision: u32,
}

/// Outcome of comparing two enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certainty {
    Certified,
    Violated,
    Inconclusive,
}

impl Interval {
    /// # Panics
    /// Panics if `lo > hi`.
    pub fn new(lo: Real, hi: Real) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order");
        let precision = lo.precision().max(hi.precision());
        Interval { lo, hi, precision }
    }

    pub fn point(x: Real) -> Interval {
        let precision = x.precision();
        Interval { lo: x.clone(), hi: x, precision }
    }

    pub fn from_int(n: i64, precision: u32) -> Interval {
        Interval::point(Real::from_int(n, precision))
    }

    pub fn from_rational(r: &Rational, precision: u32) -> Interval {
        Interval {
            lo: Real::from_rational(r, precision, Round::Down),
            hi: Real::from_rational(r, precision, Round::Up),
            precision,
        }
    }

    pub fn lo(&self) -> &Real {
        &self.lo
    }

    pub fn hi(&self) -> &Real {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Rounds the endpoints outward to `precision` bits.
    pub fn with_precision(&self, precision: u32) -> Interval {
        Interval {
            lo: self.lo.round(precision, Round::Down),
            hi: self.hi.round(precision, Round::Up),
            precision,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Midpoint rounded to nearest.
    pub fn mid(&self) -> Real {
        self.lo.add(&self.hi, self.precision + 1, Round::Nearest).mul_pow2(-1).round(self.precision, Round::Nearest)
    }

    /// `hi - lo`, rounded up.
    pub fn width(&self) -> Real {
        self.hi.sub(&self.lo, self.precision, Round::Up)
    }

    /// Upper bound on `(hi - lo) / min |x|`; infinite when the interval touches zero.
    pub fn rel_width(&self) -> f64 {
        if self.contains_zero() {
            return f64::INFINITY;
        }
        let mag = self.mag_lower();
        self.width().div(&mag, 64, Round::Up).to_f64()
    }

    /// `max |x|` over the interval.
    pub fn mag(&self) -> Real {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        if a > b {
            a
        } else {
            b
        }
    }

    /// `min |x|` over the interval.
    pub fn mag_lower(&self) -> Real {
        if self.contains_zero() {
            Real::zero(self.precision)
        } else if self.lo.is_positive() {
            self.lo.clone()
        } else {
            self.hi.abs()
        }
    }

    pub fn contains(&self, x: &Real) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Tri-state check of `self < other` for every pair of members.
    pub fn certify_lt(&self, other: &Interval) -> Certainty {
        if self.hi < other.lo {
            Certainty::Certified
        } else if self.lo >= other.hi {
            Certainty::Violated
        } else {
            Certainty::Inconclusive
        }
    }

    /// Tri-state check of `self <= other`.
    pub fn certify_le(&self, other: &Interval) -> Certainty {
        if self.hi <= other.lo {
            Certainty::Certified
        } else if self.lo > other.hi {
            Certainty::Violated
        } else {
            Certainty::Inconclusive
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            precision: self.precision.max(other.precision),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| Interval { lo, hi, precision: self.precision.max(other.precision) })
    }

    /// Widens symmetrically by `r >= 0` (the error term of a truncated series).
    pub fn inflate(&self, r: &Real) -> Interval {
        let r = r.abs();
        Interval {
            lo: self.lo.sub(&r, self.precision, Round::Down),
            hi: self.hi.add(&r, self.precision, Round::Up),
            precision: self.precision,
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval { lo: Real::zero(self.precision), hi: self.mag(), precision: self.precision }
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k), precision: self.precision }
    }

    pub fn add_ref(&self, rhs: &Interval) -> Interval {
        let p = self.precision.max(rhs.precision);
        Interval { lo: self.lo.add(&rhs.lo, p, Round::Down), hi: self.hi.add(&rhs.hi, p, Round::Up), precision: p }
    }

    pub fn sub_ref(&self, rhs: &Interval) -> Interval {
        let p = self.precision.max(rhs.precision);
        Interval { lo: self.lo.sub(&rhs.hi, p, Round::Down), hi: self.hi.sub(&rhs.lo, p, Round::Up), precision: p }
    }

    pub fn mul_ref(&self, rhs: &Interval) -> Interval {
        let p = self.precision.max(rhs.precision);
        let products = [
            self.lo.mul_exact(&rhs.lo, p),
            self.lo.mul_exact(&rhs.hi, p),
            self.hi.mul_exact(&rhs.lo, p),
            self.hi.mul_exact(&rhs.hi, p),
        ];
        let min = products.iter().min().expect("four products");
        let max = products.iter().max().expect("four products");
        Interval { lo: min.round(p, Round::Down), hi: max.round(p, Round::Up), precision: p }
    }

    pub fn sqr(&self) -> Interval {
        let p = self.precision;
        let a = self.lo.mul_exact(&self.lo, p);
        let b = self.hi.mul_exact(&self.hi, p);
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        let lo = if self.contains_zero() { Real::zero(p) } else { small.round(p, Round::Down) };
        Interval { lo, hi: large.round(p, Round::Up), precision: p }
    }

    pub fn try_div(&self, rhs: &Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::Domain("interval division by an interval containing zero".into()));
        }
        let p = self.precision.max(rhs.precision);
        let pairs = [(&self.lo, &rhs.lo), (&self.lo, &rhs.hi), (&self.hi, &rhs.lo), (&self.hi, &rhs.hi)];
        let lo = pairs.iter().map(|(a, b)| a.div(b, p, Round::Down)).min().expect("four quotients");
        let hi = pairs.iter().map(|(a, b)| a.div(b, p, Round::Up)).max().expect("four quotients");
        Ok(Interval { lo, hi, precision: p })
    }

    /// # Panics
    /// Panics if `rhs` contains zero; see [`Interval::try_div`].
    pub fn div_ref(&self, rhs: &Interval) -> Interval {
        self.try_div(rhs).expect("divisor interval contains zero")
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::from_int(1, self.precision).try_div(self)
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, d: i64) -> Interval {
        assert!(d != 0, "division by zero");
        let p = self.precision;
        let (a, b) = (self.lo.div_int(d, p, Round::Down), self.hi.div_int(d, p, Round::Down));
        let (c, e) = (self.lo.div_int(d, p, Round::Up), self.hi.div_int(d, p, Round::Up));
        Interval { lo: a.min(b), hi: c.max(e), precision: p }
    }

    pub fn div_big(&self, d: &BigInt) -> Interval {
        let p = self.precision;
        let (a, b) = (self.lo.div_big(d, p, Round::Down), self.hi.div_big(d, p, Round::Down));
        let (c, e) = (self.lo.div_big(d, p, Round::Up), self.hi.div_big(d, p, Round::Up));
        Interval { lo: a.min(b), hi: c.max(e), precision: p }
    }

    pub fn mul_int(&self, k: i64) -> Interval {
        self.mul_ref(&Interval::from_int(k, self.precision))
    }

    /// Non-negative integer power.
    pub fn powi(&self, n: u32) -> Interval {
        if n % 2 == 1 && self.lo.is_negative() && self.hi.is_positive() {
            // odd powers are increasing
            let lo = Interval::point(self.lo.clone()).pow_chain(n);
            let hi = Interval::point(self.hi.clone()).pow_chain(n);
            return Interval { lo: lo.lo, hi: hi.hi, precision: self.precision };
        }
        self.pow_chain(n)
    }

    /// Repeated squaring.
    fn pow_chain(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::from_int(1, self.precision);
        }
        let mut result: Option<Interval> = None;
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    Some(r) => r.mul_ref(&base),
                    None => base.clone(),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.sqr();
        }
        // the first squaring makes every later factor non-negative, so even
        // powers of sign-straddling intervals come out tight
        result.expect("n > 0")
    }

    /// Compares lower endpoints (for sorting enclosures).
    pub fn cmp_lo(&self, other: &Interval) -> Ordering {
        self.lo.cmp(&other.lo)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = super::real::decimal_digits(self.precision);
        write!(
            f,
            "[{}, {}]",
            self.lo.to_scientific_rounded(digits, Round::Down),
            self.hi.to_scientific_rounded(digits, Round::Up)
        )
    }
}

/// Serialized as `{"lo": ..., "hi": ...}` with outward-rounded decimal strings.
impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let digits = super::real::decimal_digits(self.precision);
        let mut st = serializer.serialize_struct("Interval", 2)?;
        st.serialize_field("lo", &self.lo.to_scientific_rounded(digits, Round::Down))?;
        st.serialize_field("hi", &self.hi.to_scientific_rounded(digits, Round::Up))?;
        st.end()
    }
}

macro_rules! interval_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait<&Interval> for &Interval {
            type Output = Interval;
            fn $method(self, rhs: &Interval) -> Interval {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<Interval> for Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                self.$impl_fn(&rhs)
            }
        }
        impl $trait<&Interval> for Interval {
            type Output = Interval;
            fn $method(self, rhs: &Interval) -> Interval {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<Interval> for &Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                self.$impl_fn(&rhs)
            }
        }
    };
}

interval_binop!(Add, add, add_ref);
interval_binop!(Sub, sub, sub_ref);
interval_binop!(Mul, mul, mul_ref);

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), precision: self.precision }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

/// Encloses an exact rational at `precision` bits.
pub fn rational_to_interval(r: &Rational, precision: u32) -> Interval {
    Interval::from_rational(r, precision)
}
