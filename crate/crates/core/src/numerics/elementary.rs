//! Rigorous enclosures of exp, ln, sinh, sqrt, pow and the constants pi, e, ln 2.
//!
//! Kernels work on exact point arguments: the argument is reduced, a Taylor
//! (or atanh) series is summed in interval arithmetic, and an explicit bound
//! on the discarded tail is added to the width. Interval arguments are then
//! handled through monotonicity.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::interval::Interval;
use super::real::{check_precision, Real, Round};
use crate::error::{Error, Result};

/// Reduction depth used by the exp and ln kernels.
fn reduction_bits(precision: u32) -> i64 {
    ((precision as f64).sqrt() / 2.0) as i64 + 4
}

/// `log2(n!)`, approximate; used only to size series.
fn log2_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).log2()).sum()
}

fn exp_point(x: &Real, precision: u32) -> Result<Interval> {
    let Some(lg) = x.log2_floor() else {
        return Ok(Interval::from_int(1, precision));
    };
    if lg > 40 {
        return Err(Error::Range(format!("exp argument {x} exceeds the exponent range")));
    }
    let k = reduction_bits(precision);
    let squarings = (lg + 1 + k).max(0);
    let w = precision + squarings as u32 + 20;
    // |r| < 2^-k
    let r = Interval::point(x.mul_pow2(-squarings));
    let terms = ((w as i64 + 5) + k - 1) / k;
    let one = Interval::from_int(1, w);
    let mut acc = one.clone();
    for j in (1..=terms).rev() {
        acc = &one + &(&r * &acc).div_int(j);
    }
    // |tail| <= 2 |r|^(N+1) / (N+1)! <= 2^(1 - k(N+1))
    let tail = Real::one(w).mul_pow2(1 - k * (terms + 1));
    acc = acc.inflate(&tail);
    for _ in 0..squarings {
        acc = acc.sqr();
    }
    Ok(acc.with_precision(precision))
}

/// `ln m` for `m > 0` near 1, by repeated square roots and the atanh series.
fn ln_reduced(m: &Real, w: u32, roots: u32) -> Interval {
    let mut y = Interval::point(m.clone());
    for _ in 0..roots {
        y = sqrt_interval(&y, w);
    }
    let one = Interval::from_int(1, w);
    let z = (&y - &one).div_ref(&(&y + &one));
    if z.is_point() && z.lo().is_zero() {
        return Interval::from_int(0, w);
    }
    let mag = z.mag();
    let Some(lz) = mag.log2_floor() else {
        // z straddles zero but has zero magnitude bound: ln m is 0 within rounding
        return z.mul_pow2(roots as i64 + 1);
    };
    // |z| < 2^(lz+1) <= 1/2
    let per_term = -(lz + 1) as f64;
    let odd_power = ((w as f64 + 4.0) / per_term).ceil().max(3.0) as i64;
    let n = ((odd_power - 3 + 1) / 2).max(0);
    let z2 = z.sqr();
    let mut acc = Interval::from_int(1, w).div_int(2 * n + 1);
    for j in (0..n).rev() {
        acc = &Interval::from_int(1, w).div_int(2 * j + 1) + &(&z2 * &acc);
    }
    let series = &z * &acc;
    // sum_{j>n} |z|^(2j+1)/(2j+1) <= 2 |z|^(2n+3)
    let tail = Real::one(w).mul_pow2((2 * n + 3) * (lz + 1) + 1);
    series.inflate(&tail).mul_pow2(roots as i64 + 1)
}

fn ln_roots(precision: u32) -> u32 {
    ((precision as f64).sqrt() / 2.0).max(4.0) as u32
}

fn ln_point(x: &Real, precision: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("logarithm of non-positive number {x}")));
    }
    if *x == Real::one(precision) {
        return Ok(Interval::from_int(0, precision));
    }
    // x = m 2^e with m in [3/4, 3/2)
    let mut e = x.log2_floor().expect("positive") + 1;
    let mut m = x.mul_pow2(-e);
    let three_quarters = Real::from_int(3, 64).mul_pow2(-2);
    if m < three_quarters {
        m = m.mul_pow2(1);
        e -= 1;
    }
    let roots = ln_roots(precision);
    let guard = 24 + roots + (64 - e.unsigned_abs().leading_zeros());
    let w = precision + guard;
    let mut result = ln_reduced(&m, w, roots);
    if e != 0 {
        result = &result + &(&ln2(w) * &Interval::from_int(e, w));
    }
    Ok(result.with_precision(precision))
}

fn sqrt_interval(x: &Interval, precision: u32) -> Interval {
    Interval::new(x.lo().sqrt(precision, Round::Down), x.hi().sqrt(precision, Round::Up))
}

/// `sinh(t)/t` for `|t| <= 1` via its even Taylor series.
fn sinhc_series(t: &Real, precision: u32) -> Interval {
    let w = precision + 16;
    let Some(lt) = t.log2_floor() else {
        return Interval::from_int(1, precision);
    };
    let lb = (lt + 1) as f64; // |t| < 2^lb, lb <= 1
    let mut n: u64 = 1;
    while (2 * n + 2) as f64 * lb - log2_factorial(2 * n + 3) > -(w as f64) - 3.0 {
        n += 1;
    }
    let tt = Interval::point(t.clone()).with_precision(w).sqr();
    let one = Interval::from_int(1, w);
    let mut acc = one.clone();
    for j in (1..=n as i64).rev() {
        acc = &one + &(&tt * &acc).div_int((2 * j) * (2 * j + 1));
    }
    // tail <= 2 |t|^(2n+2) / (2n+3)!
    let fact: BigInt = (1..=2 * n + 3).map(BigInt::from).product();
    let tail = Real::one(w).mul_pow2((2 * n as i64 + 2) * (lt + 1) + 1).div_big(&fact, w, Round::Up);
    acc.inflate(&tail).with_precision(precision)
}

fn sinh_point(t: &Real, precision: u32) -> Result<Interval> {
    if t.is_zero() {
        return Ok(Interval::from_int(0, precision));
    }
    if t.abs() <= Real::one(64) {
        let w = precision + 8;
        let s = sinhc_series(t, w);
        return Ok((&s * &Interval::point(t.clone())).with_precision(precision));
    }
    let w = precision + 8;
    let e = exp_point(t, w)?;
    let inv = e.recip()?;
    Ok((&e - &inv).mul_pow2(-1).with_precision(precision))
}

fn sinhc_point(t: &Real, precision: u32) -> Result<Interval> {
    if t.abs() <= Real::one(64) {
        return Ok(sinhc_series(t, precision));
    }
    let w = precision + 8;
    let s = sinh_point(t, w)?;
    Ok(s.div_ref(&Interval::point(t.clone())).with_precision(precision))
}

/// Encloses `e^t` for every `t` in `x`.
pub fn interval_exp(x: &Interval, precision_bits: u32) -> Result<Interval> {
    check_precision(precision_bits)?;
    if x.is_point() {
        return exp_point(x.lo(), precision_bits);
    }
    let lo = exp_point(x.lo(), precision_bits)?;
    let hi = exp_point(x.hi(), precision_bits)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

/// Encloses `ln t` for every `t` in `x`; requires `x.lo > 0`.
pub fn interval_ln(x: &Interval, precision_bits: u32) -> Result<Interval> {
    check_precision(precision_bits)?;
    if !x.lo().is_positive() {
        return Err(Error::Domain(format!("logarithm of interval {x} with non-positive lower endpoint")));
    }
    if x.is_point() {
        return ln_point(x.lo(), precision_bits);
    }
    let lo = ln_point(x.lo(), precision_bits)?;
    let hi = ln_point(x.hi(), precision_bits)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

/// Encloses `sinh t`; uses the odd Taylor series for `|t| <= 1`.
pub fn interval_sinh(x: &Interval, precision_bits: u32) -> Result<Interval> {
    check_precision(precision_bits)?;
    if x.is_point() {
        return sinh_point(x.lo(), precision_bits);
    }
    let lo = sinh_point(x.lo(), precision_bits)?;
    let hi = sinh_point(x.hi(), precision_bits)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

/// Encloses `sinh(t)/t` (equal to 1 at `t = 0`). Even, and increasing in `|t|`.
pub fn interval_sinhc(x: &Interval, precision_bits: u32) -> Result<Interval> {
    check_precision(precision_bits)?;
    if x.is_point() {
        return sinhc_point(x.lo(), precision_bits);
    }
    let (near, far) = if x.contains_zero() {
        (Real::zero(precision_bits), x.mag())
    } else if x.is_positive() {
        (x.lo().clone(), x.hi().clone())
    } else {
        (x.hi().abs(), x.lo().abs())
    };
    let lo = sinhc_point(&near, precision_bits)?;
    let hi = sinhc_point(&far, precision_bits)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

pub fn interval_sqrt(x: &Interval, precision_bits: u32) -> Result<Interval> {
    check_precision(precision_bits)?;
    if x.lo().is_negative() {
        return Err(Error::Domain(format!("square root of interval {x} with negative lower endpoint")));
    }
    Ok(sqrt_interval(x, precision_bits))
}

/// Encloses `b^y` for `b` in `base` (requires `base.lo > 0`) and `y` in `exponent`.
pub fn interval_pow(base: &Interval, exponent: &Interval, precision_bits: u32) -> Result<Interval> {
    check_precision(precision_bits)?;
    if !base.lo().is_positive() {
        return Err(Error::Domain(format!("power with non-positive base {base}")));
    }
    let w = precision_bits + 32;
    let log = interval_ln(base, w)?;
    let product = &log * &exponent.with_precision(w.max(exponent.precision()));
    Ok(interval_exp(&product, w)?.with_precision(precision_bits))
}

fn cached(cache: &'static OnceLock<Mutex<HashMap<u32, Interval>>>, precision: u32, f: impl FnOnce() -> Interval) -> Interval {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("constant cache poisoned").get(&precision) {
        return v.clone();
    }
    let v = f();
    map.lock().expect("constant cache poisoned").insert(precision, v.clone());
    v
}

/// Encloses `ln 2`.
pub fn ln2(precision: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    cached(&CACHE, precision, || {
        let roots = ln_roots(precision);
        let w = precision + roots + 24;
        ln_reduced(&Real::from_int(2, w), w, roots).with_precision(precision)
    })
}

/// `sum_{j>=0} (-1)^j / ((2j+1) n^(2j+1))`, i.e. `atan(1/n)` for an integer `n >= 2`.
fn atan_inv(n: u64, w: u32) -> Interval {
    let n_big = BigInt::from(n);
    let terms = ((w as f64 + 4.0) / (n as f64).log2() / 2.0).ceil() as i64 + 1;
    let one = Interval::from_int(1, w);
    let mut sum = Interval::from_int(0, w);
    let mut power = n_big.clone();
    let n2 = &n_big * &n_big;
    for j in 0..terms {
        let term = one.div_big(&(BigInt::from(2 * j + 1) * &power));
        sum = if j % 2 == 0 { &sum + &term } else { &sum - &term };
        power *= &n2;
    }
    // alternating with decreasing terms: tail bounded by the next term
    let next = Real::one(w).div_big(&(BigInt::from(2 * terms + 1) * &power), w, Round::Up);
    sum.inflate(&next)
}

/// Encloses pi via Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(precision: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    cached(&CACHE, precision, || {
        let w = precision + 16;
        let a = atan_inv(5, w).mul_pow2(4);
        let b = atan_inv(239, w).mul_pow2(2);
        (&a - &b).with_precision(precision)
    })
}

/// Encloses Euler's number.
pub fn e(precision: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    cached(&CACHE, precision, || exp_point(&Real::one(precision), precision).expect("exp(1) is in range"))
}

impl Interval {
    pub fn exp(&self) -> Result<Interval> {
        interval_exp(self, self.precision())
    }

    pub fn ln(&self) -> Result<Interval> {
        interval_ln(self, self.precision())
    }

    pub fn sinh(&self) -> Result<Interval> {
        interval_sinh(self, self.precision())
    }

    pub fn sinhc(&self) -> Result<Interval> {
        interval_sinhc(self, self.precision())
    }

    pub fn sqrt(&self) -> Result<Interval> {
        interval_sqrt(self, self.precision())
    }

    pub fn pow(&self, exponent: &Interval) -> Result<Interval> {
        interval_pow(self, exponent, self.precision().max(exponent.precision()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    const E_50: &str = "2.71828182845904523536028747135266249775724709369995";
    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";
    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436025";

    fn contains_decimal(i: &Interval, s: &str, digits_tol: i32) -> bool {
        let v = Rational::from_decimal_str(s).unwrap();
        let tol = Rational::new(1, 10).pow(digits_tol);
        let widened = i.inflate(&Real::from_rational(&tol, 256, Round::Up));
        widened.contains_rational(&v)
    }

    fn iv(s: &str, p: u32) -> Interval {
        Interval::point(Real::from_decimal_str(s, p).unwrap())
    }

    #[test]
    fn constants() {
        let p = pi(256);
        assert!(contains_decimal(&p, PI_50, 49));
        assert!(p.width().log2_floor().unwrap() < -250);
        assert!(contains_decimal(&e(256), E_50, 49));
        assert!(contains_decimal(&ln2(256), LN2_50, 49));
        assert!(ln2(256).width().log2_floor().unwrap() < -250);
    }

    #[test]
    fn exp_examples() {
        let zero = interval_exp(&Interval::from_int(0, 128), 128).unwrap();
        assert!(zero.contains(&Real::one(128)));
        let one = interval_exp(&Interval::from_int(1, 128), 128).unwrap();
        assert!(contains_decimal(&one, "2.718281828459045235360287", 24));
        assert!(one.width().log2_floor().unwrap() <= 2 - 128);
        let wide = Interval::new(Real::from_int(-1, 128), Real::from_int(1, 128));
        let r = interval_exp(&wide, 128).unwrap();
        let e = e(128);
        assert!(r.hi() >= e.hi());
        assert!(r.lo() <= e.recip().unwrap().lo());
    }

    #[test]
    fn exp_overflow_is_a_range_error() {
        let huge = Interval::point(Real::one(64).mul_pow2(50));
        assert!(matches!(interval_exp(&huge, 64), Err(Error::Range(_))));
    }

    #[test]
    fn exp_large_and_negative_arguments() {
        let x = interval_exp(&Interval::from_int(-20, 128), 128).unwrap();
        assert!(contains_decimal(&x, "2.061153622438557827965940380155e-9", 38));
        let y = interval_exp(&Interval::from_int(500, 256), 256).unwrap();
        assert!(y.rel_width() < 1e-70);
    }

    #[test]
    fn ln_examples() {
        let one = interval_ln(&Interval::from_int(1, 128), 128).unwrap();
        assert!(one.contains(&Real::zero(128)));
        assert!(one.width().is_zero() || one.width().log2_floor().unwrap() <= 2 - 128);
        let l = interval_ln(&e(128), 128).unwrap();
        assert!(l.contains(&Real::one(128)));
        let half_two = Interval::new(Real::from_decimal_str("0.5", 64).unwrap(), Real::from_int(2, 64));
        let r = interval_ln(&half_two, 128).unwrap();
        let l2 = ln2(128);
        assert!(r.lo() <= (-&l2).lo() && r.hi() >= l2.hi());
        assert!(matches!(interval_ln(&Interval::from_int(0, 64), 64), Err(Error::Domain(_))));
        let ten = interval_ln(&Interval::from_int(10, 256), 256).unwrap();
        assert!(contains_decimal(&ten, "2.30258509299404568401799145468436420760110148862877", 49));
        let tiny = interval_ln(&iv("1e-30", 256), 256).unwrap();
        assert!(contains_decimal(&tiny, "-69.0775527898213705205397436405309262280330446588631", 48));
    }

    #[test]
    fn sinh_small_and_large() {
        let s1 = interval_sinh(&Interval::from_int(1, 256), 256).unwrap();
        assert!(contains_decimal(&s1, "1.17520119364380145688238185059560081515571798133410", 49));
        let tiny = iv("1e-20", 256);
        let s = interval_sinh(&tiny, 256).unwrap();
        assert!(s.rel_width() < 1e-70);
        let sc = interval_sinhc(&iv("0.01", 256), 256).unwrap();
        assert!(contains_decimal(&sc, "1.00001666675000019841297398614117", 32));
        let s3 = interval_sinh(&Interval::from_int(3, 128), 128).unwrap();
        assert!(contains_decimal(&s3, "10.0178749274099018989745936194658", 30));
        let m = interval_sinh(&Interval::from_int(-2, 128), 128).unwrap();
        assert!(contains_decimal(&m, "-3.62686040784701876766821398280", 29));
    }

    #[test]
    fn sqrt_and_pow() {
        let s = interval_sqrt(&Interval::from_int(2, 128), 128).unwrap();
        assert!(contains_decimal(&s, "1.41421356237309504880168872420969807857", 37));
        assert!(interval_sqrt(&Interval::from_int(-1, 64), 64).is_err());
        let p = interval_pow(&Interval::from_int(2, 128), &iv("0.5", 128), 128).unwrap();
        assert!(p.overlaps(&s));
        let q = interval_pow(&Interval::from_int(10, 128), &Interval::from_int(3, 128), 128).unwrap();
        assert!(q.contains(&Real::from_int(1000, 128)));
        assert!(interval_pow(&Interval::from_int(0, 64), &Interval::from_int(1, 64), 64).is_err());
    }

    #[test]
    fn invalid_precision_rejected() {
        assert!(interval_exp(&Interval::from_int(1, 64), 32).is_err());
    }
}
