//! Binary floating point numbers of arbitrary precision.
//!
//! A [`Real`] is a dyadic number `mantissa * 2^exponent` together with the
//! precision it was produced at. Every arithmetic operation takes an explicit
//! target precision and rounding direction, so interval code can round lower
//! endpoints down and upper endpoints up.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

pub const MIN_PRECISION: u32 = 64;
pub const MAX_PRECISION: u32 = 1 << 16;

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    /// To nearest, ties away from zero.
    Nearest,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
            Round::Nearest => Round::Nearest,
        }
    }
}

pub fn check_precision(bits: u32) -> Result<()> {
    if (MIN_PRECISION..=MAX_PRECISION).contains(&bits) {
        Ok(())
    } else {
        Err(Error::InvalidPrecision { bits, min: MIN_PRECISION, max: MAX_PRECISION })
    }
}

/// `mantissa * 2^exponent`, with trailing zero bits stripped from the mantissa.
#[derive(Clone, Debug)]
pub struct Real {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

impl Real {
    /// Exact value `mantissa * 2^exponent`, rounded to nearest if it needs more
    /// than `precision` bits.
    pub fn new(mantissa: BigInt, exponent: i64, precision: u32) -> Result<Real> {
        check_precision(precision)?;
        Ok(Real::round_raw(mantissa, exponent, precision, Round::Nearest))
    }

    pub fn zero(precision: u32) -> Real {
        Real { mantissa: BigInt::zero(), exponent: 0, precision }
    }

    pub fn one(precision: u32) -> Real {
        Real::from_int(1, precision)
    }

    /// Integers are stored exactly regardless of `precision`.
    pub fn from_int(n: i64, precision: u32) -> Real {
        Real::exact(BigInt::from(n), 0, precision)
    }

    pub fn from_bigint(n: BigInt, precision: u32) -> Real {
        Real::exact(n, 0, precision)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64, precision: u32) -> Result<Real> {
        if !v.is_finite() {
            return Err(Error::Domain(format!("non-finite value {v}")));
        }
        if v == 0.0 {
            return Ok(Real::zero(precision));
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Ok(Real::exact(BigInt::from(m) * sign, e, precision.max(MIN_PRECISION)))
    }

    /// Rounds an exact rational to `precision` bits.
    pub fn from_rational(r: &Rational, precision: u32, round: Round) -> Real {
        Real::exact(r.numer().clone(), 0, precision).div_big(r.denom(), precision, round)
    }

    /// Parses a decimal (optionally with exponent), rounding to nearest.
    pub fn from_decimal_str(s: &str, precision: u32) -> Result<Real> {
        check_precision(precision)?;
        let r = Rational::from_decimal_str(s)?;
        Ok(Real::from_rational(&r, precision, Round::Nearest))
    }

    fn exact(mantissa: BigInt, exponent: i64, precision: u32) -> Real {
        let mut r = Real { mantissa, exponent, precision };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exponent += tz as i64;
        }
    }

    fn round_raw(mantissa: BigInt, exponent: i64, precision: u32, round: Round) -> Real {
        let bits = mantissa.bits();
        if bits <= precision as u64 {
            return Real::exact(mantissa, exponent, precision);
        }
        let shift = bits - precision as u64;
        // `>>` on BigInt rounds toward negative infinity.
        let floor = &mantissa >> shift;
        let rem = &mantissa - (&floor << shift);
        let q = if rem.is_zero() {
            floor
        } else {
            match round {
                Round::Down => floor,
                Round::Up => floor + 1,
                Round::Nearest => {
                    let half = BigInt::one() << (shift - 1);
                    match rem.cmp(&half) {
                        Ordering::Less => floor,
                        Ordering::Greater => floor + 1,
                        // tie: away from zero
                        Ordering::Equal => {
                            if mantissa.is_negative() {
                                floor
                            } else {
                                floor + 1
                            }
                        }
                    }
                }
            }
        };
        Real::exact(q, exponent + shift as i64, precision)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Same value, relabelled with a new precision (rounds if needed).
    pub fn round(&self, precision: u32, round: Round) -> Real {
        Real::round_raw(self.mantissa.clone(), self.exponent, precision, round)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Real {
        Real { mantissa: -&self.mantissa, exponent: self.exponent, precision: self.precision }
    }

    pub fn abs(&self) -> Real {
        Real { mantissa: self.mantissa.abs(), exponent: self.exponent, precision: self.precision }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        Real { mantissa: self.mantissa.clone(), exponent: self.exponent + k, precision: self.precision }
    }

    /// Exclusive upper bit position: `2^(top-1) <= |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exponent + self.mantissa.bits() as i64
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.top() - 1)
        }
    }

    /// Whether the value is an integer.
    pub fn is_integer(&self) -> bool {
        self.exponent >= 0
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    /// Nearest-ish `f64` (at most one rounding error beyond truncation).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let (m, e) = if bits > 64 {
            let shift = bits - 64;
            ((&self.mantissa >> shift).to_f64().unwrap_or(0.0), self.exponent + shift as i64)
        } else {
            (self.mantissa.to_f64().unwrap_or(0.0), self.exponent)
        };
        scale_f64(m, e)
    }

    pub fn add(&self, rhs: &Real, precision: u32, round: Round) -> Real {
        if self.is_zero() {
            return rhs.round(precision, round);
        }
        if rhs.is_zero() {
            return self.round(precision, round);
        }
        let (big, small) = if self.top() >= rhs.top() { (self, rhs) } else { (rhs, self) };
        let p = precision as i64;
        if big.exponent - small.top() > 2 && big.top() - small.top() > p + 8 {
            // `small` lies entirely below the rounding position of `big`;
            // replace it by a sticky half-unit with the same sign.
            let e = big.exponent.min(big.top() - p - 4);
            let m = (&big.mantissa << (big.exponent - e) as u64) * 2 + small.signum();
            return Real::round_raw(m, e - 1, precision, round);
        }
        let e = self.exponent.min(rhs.exponent);
        let m = (&self.mantissa << (self.exponent - e) as u64) + (&rhs.mantissa << (rhs.exponent - e) as u64);
        Real::round_raw(m, e, precision, round)
    }

    pub fn sub(&self, rhs: &Real, precision: u32, round: Round) -> Real {
        self.add(&rhs.neg(), precision, round)
    }

    pub fn mul(&self, rhs: &Real, precision: u32, round: Round) -> Real {
        Real::round_raw(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent, precision, round)
    }

    /// Exact product (no rounding); the result carries `precision` as a label.
    pub fn mul_exact(&self, rhs: &Real, precision: u32) -> Real {
        Real::exact(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent, precision)
    }

    /// # Panics
    /// Panics if `rhs` is zero.
    pub fn div(&self, rhs: &Real, precision: u32, round: Round) -> Real {
        assert!(!rhs.is_zero(), "division by zero");
        if self.is_zero() {
            return Real::zero(precision);
        }
        let q = self.div_big(&rhs.mantissa, precision, round);
        // div_big divided the mantissa only; account for rhs exponent
        Real { exponent: q.exponent - rhs.exponent, ..q }
    }

    /// `self / d` for an integer `d != 0`.
    pub fn div_big(&self, d: &BigInt, precision: u32, round: Round) -> Real {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Real::zero(precision);
        }
        let (mut n, d) = if d.is_negative() { (-&self.mantissa, -d) } else { (self.mantissa.clone(), d.clone()) };
        let want = d.bits() as i64 + precision as i64 + 2;
        let shift = (want - n.bits() as i64).max(0);
        n <<= shift as u64;
        let (q, r) = n.div_mod_floor(&d);
        // floor division: true quotient lies in [q, q+1)
        let (m, e) = if r.is_zero() { (q, self.exponent - shift) } else { (q * 2 + 1, self.exponent - shift - 1) };
        Real::round_raw(m, e, precision, round)
    }

    pub fn div_int(&self, d: i64, precision: u32, round: Round) -> Real {
        self.div_big(&BigInt::from(d), precision, round)
    }

    /// # Panics
    /// Panics on a negative argument.
    pub fn sqrt(&self, precision: u32, round: Round) -> Real {
        assert!(!self.is_negative(), "square root of negative number");
        if self.is_zero() {
            return Real::zero(precision);
        }
        let want = 2 * (precision as i64 + 2);
        let mut shift = (want - self.mantissa.bits() as i64).max(0);
        if (self.exponent - shift) % 2 != 0 {
            shift += 1;
        }
        let n = &self.mantissa << shift as u64;
        let root = n.sqrt();
        let e = (self.exponent - shift) / 2;
        let (m, e) = if &root * &root == n { (root, e) } else { (root * 2 + 1, e - 1) };
        Real::round_raw(m, e, precision, round)
    }

    /// Scientific notation with `digits` significant digits, e.g. `1.832e-4`.
    pub fn to_scientific(&self, digits: usize) -> String {
        self.to_scientific_rounded(digits, Round::Nearest)
    }

    /// Scientific notation rounded in the given direction.
    pub fn to_scientific_rounded(&self, digits: usize, round: Round) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return if digits > 1 { format!("0.{}e0", "0".repeat(digits - 1)) } else { "0e0".into() };
        }
        let negative = self.is_negative();
        let mag = self.abs().to_rational();
        let mag_round = if negative { round.flip() } else { round };
        let log10 = (self.top() as f64 - 0.5) * std::f64::consts::LOG10_2;
        let mut k = log10.floor() as i64;
        let lower = num_traits::pow(BigInt::from(10u32), digits - 1);
        let upper = &lower * 10;
        let scaled_int = |k: i64| -> BigInt {
            let shift = digits as i64 - 1 - k;
            let ten = Rational::from_integer(10);
            let scaled = if shift >= 0 { &mag * &ten.pow(shift as i32) } else { &mag / &ten.pow((-shift) as i32) };
            round_rational(&scaled, mag_round)
        };
        let mut n = scaled_int(k);
        for _ in 0..4 {
            if n >= upper {
                k += 1;
            } else if n < lower {
                k -= 1;
            } else {
                break;
            }
            n = scaled_int(k);
        }
        if n >= upper {
            // rounding carried into a new digit
            n /= 10;
            k += 1;
        }
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if negative { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{k}")
        } else {
            format!("{sign}{head}.{tail}e{k}")
        }
    }

    /// Exact decimal expansion when it has at most `max_digits` significant
    /// digits, scientific notation otherwise.
    pub fn to_plain_string(&self, max_digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if self.exponent >= 0 {
            let n = &self.mantissa << self.exponent as u64;
            let s = n.to_string();
            if s.trim_start_matches('-').len() <= max_digits {
                return s;
            }
            return self.to_scientific(max_digits);
        }
        // m / 2^k = m * 5^k / 10^k
        let k = (-self.exponent) as usize;
        let scaled = self.mantissa.abs() * num_traits::pow(BigInt::from(5u32), k);
        let mut digits = scaled.to_string();
        if digits.len() <= k {
            digits = format!("{}{}", "0".repeat(k + 1 - digits.len()), digits);
        }
        let (int, frac) = digits.split_at(digits.len() - k);
        let significant = format!("{int}{frac}").trim_start_matches('0').len();
        if significant > max_digits {
            return self.to_scientific(max_digits);
        }
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}{int}.{frac}")
    }
}

fn round_rational(r: &Rational, round: Round) -> BigInt {
    let (q, rem) = r.numer().div_mod_floor(r.denom());
    if rem.is_zero() {
        return q;
    }
    match round {
        Round::Down => q,
        Round::Up => q + 1,
        Round::Nearest => {
            if rem * 2 >= *r.denom() {
                q + 1
            } else {
                q
            }
        }
    }
}

fn scale_f64(mut m: f64, mut e: i64) -> f64 {
    while e > 0 {
        let step = e.min(1000);
        m *= 2f64.powi(step as i32);
        e -= step;
        if m.is_infinite() {
            return m;
        }
    }
    while e < 0 {
        let step = (-e).min(1000);
        m /= 2f64.powi(step as i32);
        e += step;
        if m == 0.0 {
            return m;
        }
    }
    m
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.mantissa == other.mantissa && self.exponent == other.exponent
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Real) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let mag = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let e = self.exponent.min(other.exponent);
                let a = self.mantissa.abs() << (self.exponent - e) as u64;
                let b = other.mantissa.abs() << (other.exponent - e) as u64;
                a.cmp(&b)
            }
            ord => ord,
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl fmt::Display for Real {
    /// Scientific notation with as many digits as the precision supports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_scientific(decimal_digits(self.precision)))
    }
}

impl serde::Serialize for Real {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// `ceil(bits * log10(2))` significant decimal digits.
pub fn decimal_digits(bits: u32) -> usize {
    (bits as f64 * 0.30103).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> Real {
        Real::from_f64(v, 64).unwrap()
    }

    #[test]
    fn precision_is_enforced() {
        assert!(Real::new(BigInt::from(3), 0, 63).is_err());
        assert!(Real::new(BigInt::from(3), 0, 64).is_ok());
        assert!(Real::from_decimal_str("1", 32).is_err());
    }

    #[test]
    fn directed_rounding_brackets_one_third() {
        let one = Real::one(64);
        let lo = one.div_int(3, 64, Round::Down);
        let hi = one.div_int(3, 64, Round::Up);
        assert!(lo < hi);
        let third = Rational::new(1, 3);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert_eq!(hi.sub(&lo, 200, Round::Nearest).log2_floor(), Some(-65));
    }

    #[test]
    fn exact_operations_stay_exact() {
        let a = r(1.5);
        let b = r(-0.25);
        assert_eq!(a.add(&b, 64, Round::Down), r(1.25));
        assert_eq!(a.mul(&b, 64, Round::Up), r(-0.375));
        assert_eq!(a.div(&b, 64, Round::Up), r(-6.0));
        assert_eq!(r(2.25).sqrt(64, Round::Down), r(1.5));
    }

    #[test]
    fn tiny_addend_uses_sticky_rounding() {
        let one = Real::one(64);
        let tiny = Real::one(64).mul_pow2(-10_000);
        assert_eq!(one.add(&tiny, 64, Round::Down), one);
        assert!(one.add(&tiny, 64, Round::Up) > one);
        assert!(one.sub(&tiny, 64, Round::Down) < one);
        assert_eq!(one.sub(&tiny, 64, Round::Up), one);
        assert_eq!(one.add(&tiny, 64, Round::Nearest), one);
    }

    #[test]
    fn sqrt_two_brackets() {
        let two = Real::from_int(2, 128);
        let lo = two.sqrt(128, Round::Down);
        let hi = two.sqrt(128, Round::Up);
        assert!(lo.mul(&lo, 512, Round::Up) < two);
        assert!(hi.mul(&hi, 512, Round::Down) > two);
    }

    #[test]
    fn ordering_matches_values() {
        let mut v = vec![r(3.0), r(-1.0), r(0.0), r(1e-300), r(-1e300), r(2.5)];
        v.sort();
        let f: Vec<f64> = v.iter().map(Real::to_f64).collect();
        assert_eq!(f, vec![-1e300, -1.0, 0.0, 1e-300, 2.5, 3.0]);
    }

    #[test]
    fn scientific_formatting() {
        let x = Real::from_decimal_str("0.00018321", 128).unwrap();
        assert_eq!(x.to_scientific(4), "1.832e-4");
        assert_eq!(Real::from_int(3628800, 64).to_scientific(3), "3.63e6");
        assert_eq!(Real::from_int(-1, 64).to_scientific(1), "-1e0");
        assert_eq!(Real::from_decimal_str("9.9996", 128).unwrap().to_scientific(4), "1.000e1");
        let y = Real::from_decimal_str("1.2345", 128).unwrap();
        assert_eq!(y.to_scientific_rounded(3, Round::Down), "1.23e0");
        assert_eq!(y.to_scientific_rounded(3, Round::Up), "1.24e0");
        assert_eq!(y.neg().to_scientific_rounded(3, Round::Down), "-1.24e0");
    }

    #[test]
    fn plain_formatting() {
        assert_eq!(r(1.25).to_plain_string(20), "1.25");
        assert_eq!(r(100.0).to_plain_string(20), "100");
        assert_eq!(r(0.0).to_plain_string(20), "0");
        assert_eq!(r(-0.5).to_plain_string(20), "-0.5");
    }

    #[test]
    fn decimal_parsing_is_exact_for_dyadics() {
        let x = Real::from_decimal_str("1.25", 64).unwrap();
        assert_eq!(x, r(1.25));
        let tenth = Real::from_decimal_str("0.1", 256).unwrap();
        assert!((tenth.to_f64() - 0.1).abs() < 1e-17);
    }
}
