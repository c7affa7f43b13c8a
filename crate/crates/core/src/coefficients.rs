//! Exact coefficient families of the Windschitl-type expansions.
//!
//! | family     | expansion                                                         |
//! |------------|-------------------------------------------------------------------|
//! | `A`        | `Γ(x+1) ~ W0(x) exp(Σ_{n≥3} a_n / x^(2n-1))`                        |
//! | `AStar`    | the same exponent re-indexed: `Σ_{n≥1} a*_n / x^n`                  |
//! | `B`        | `Γ(x+1) ~ W0(x) (1 + Σ_{n≥1} b_n / x^n)`                            |
//! | `C`        | `Γ(x+1) ~ √(2πx)(x/e)^x (x sinh(1/x))^((x/2)(1 + Σ c_n x^(-2n)))`   |
//! | `Stirling` | `a'_n = B_2n/(2n(2n-1))`, `a''_n = 2^2n B_2n/(2n(2n)!)`             |
//! | `Lu`       | the fixed constants `a_7, a_9, a_11` of the sinh-argument expansion |
//!
//! Everything is exact rational arithmetic; factorials and powers of two are
//! big integers. Indices up to 64 are the practical range.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::numerics::{bernoulli, Rational};

/// Largest index the families are meant to be used at.
pub const PRACTICAL_MAX_INDEX: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    A,
    AStar,
    B,
    C,
    StirlingPrime,
    StirlingDoublePrime,
    Lu,
}

impl FamilyKind {
    /// Smallest valid index.
    pub fn first_index(self) -> usize {
        match self {
            FamilyKind::A | FamilyKind::AStar | FamilyKind::StirlingPrime | FamilyKind::StirlingDoublePrime => 1,
            FamilyKind::B | FamilyKind::C => 0,
            FamilyKind::Lu => 7,
        }
    }

    pub fn coefficient(self, n: usize) -> Option<Rational> {
        if n < self.first_index() {
            return None;
        }
        Some(match self {
            FamilyKind::A => coeff_a(n),
            FamilyKind::AStar => coeff_a_star(n),
            FamilyKind::B => coeff_b(n),
            FamilyKind::C => coeff_c(n),
            FamilyKind::StirlingPrime => coeff_stirling(n).0,
            FamilyKind::StirlingDoublePrime => coeff_stirling(n).1,
            FamilyKind::Lu => return lu_constants().into_iter().find(|(i, _)| *i == n).map(|(_, v)| v),
        })
    }
}

/// A coefficient family materialized up to some index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientFamily {
    pub kind: FamilyKind,
    /// `(n, value)` pairs in increasing `n`.
    pub values: Vec<(usize, Rational)>,
}

impl CoefficientFamily {
    /// All coefficients with index in `first_index..=n_max`. For `Lu` the
    /// three fixed constants are returned regardless of `n_max`.
    pub fn generate(kind: FamilyKind, n_max: usize) -> CoefficientFamily {
        let values = match kind {
            FamilyKind::Lu => lu_constants(),
            _ => (kind.first_index()..=n_max).map(|n| (n, kind.coefficient(n).expect("index in range"))).collect(),
        };
        CoefficientFamily { kind, values }
    }
}

/// Memoized recurrence values, shareable between threads.
#[derive(Debug)]
pub struct CoefficientTable {
    values: RwLock<Vec<Rational>>,
    next: fn(&[Rational]) -> Rational,
}

impl CoefficientTable {
    /// `next(prefix)` must return entry `prefix.len()`.
    pub const fn new(next: fn(&[Rational]) -> Rational) -> Self {
        CoefficientTable { values: RwLock::new(Vec::new()), next }
    }

    pub fn get(&self, n: usize) -> Rational {
        if let Some(v) = self.values.read().expect("coefficient table poisoned").get(n) {
            return v.clone();
        }
        let mut values = self.values.write().expect("coefficient table poisoned");
        while values.len() <= n {
            let v = (self.next)(&values);
            values.push(v);
        }
        values[n].clone()
    }
}

fn factorial(n: usize) -> BigInt {
    (2..=n).map(BigInt::from).product::<BigInt>().max(BigInt::from(1))
}

fn pow2(n: usize) -> BigInt {
    BigInt::from(1) << n
}

fn int(n: usize) -> BigInt {
    BigInt::from(n)
}

/// `a_n = (2n (2n-2)! - 2^(2n-1)) B_2n / (2n (2n)!)` for `n >= 1`.
///
/// # Panics
/// Panics if `n == 0`.
pub fn coeff_a(n: usize) -> Rational {
    assert!(n >= 1, "a_n is defined for n >= 1");
    let num = int(2 * n) * factorial(2 * n - 2) - pow2(2 * n - 1);
    let den = int(2 * n) * factorial(2 * n);
    Rational::new(num, den) * bernoulli(2 * n)
}

/// `a*_n = ((n+1)(n-1)! - 2^n) B_(n+1) / ((n+1)(n+1)!)` for `n >= 1`.
///
/// # Panics
/// Panics if `n == 0`.
pub fn coeff_a_star(n: usize) -> Rational {
    assert!(n >= 1, "a*_n is defined for n >= 1");
    let num = int(n + 1) * factorial(n - 1) - pow2(n);
    let den = int(n + 1) * factorial(n + 1);
    Rational::new(num, den) * bernoulli(n + 1)
}

/// `(a'_n, a''_n)` with `a'_n = B_2n / (2n(2n-1))` and `a''_n = 2^2n B_2n / (2n (2n)!)`.
///
/// # Panics
/// Panics if `n == 0`.
pub fn coeff_stirling(n: usize) -> (Rational, Rational) {
    assert!(n >= 1, "Stirling coefficients are defined for n >= 1");
    let b = bernoulli(2 * n);
    let prime = &b / &Rational::from_integer(int(2 * n) * int(2 * n - 1));
    let double_prime = &b * &Rational::new(pow2(2 * n), int(2 * n) * factorial(2 * n));
    (prime, double_prime)
}

fn next_b(prev: &[Rational]) -> Rational {
    let n = prev.len();
    if n == 0 {
        return Rational::one();
    }
    // b_n = (1/n) Σ_{k=1}^{n} k a*_k b_{n-k}
    let sum: Rational = (1..=n)
        .filter(|&k| !prev[n - k].is_zero())
        .map(|k| Rational::from_integer(int(k)) * coeff_a_star(k) * &prev[n - k])
        .sum();
    sum / Rational::from_integer(int(n))
}

fn next_c(prev: &[Rational]) -> Rational {
    let n = prev.len();
    let six = Rational::from_integer(6);
    // c_n = 6 B_(2n+2)/((n+1)(2n+1)) - 6 Σ_{k=1}^{n} 2^(2k+2) B_(2k+2) / (2(k+1)(2k+2)!) c_(n-k)
    let lead = &six * &bernoulli(2 * n + 2) / Rational::from_integer(int(n + 1) * int(2 * n + 1));
    let sum: Rational = (1..=n)
        .filter(|&k| !prev[n - k].is_zero())
        .map(|k| {
            let w = Rational::new(pow2(2 * k + 2), int(2) * int(k + 1) * factorial(2 * k + 2)) * bernoulli(2 * k + 2);
            w * &prev[n - k]
        })
        .sum();
    lead - six * sum
}

fn b_table() -> &'static CoefficientTable {
    static TABLE: OnceLock<CoefficientTable> = OnceLock::new();
    TABLE.get_or_init(|| CoefficientTable::new(next_b))
}

fn c_table() -> &'static CoefficientTable {
    static TABLE: OnceLock<CoefficientTable> = OnceLock::new();
    TABLE.get_or_init(|| CoefficientTable::new(next_c))
}

/// `b_n` of the multiplicative expansion, via `b_n = (1/n) Σ k a*_k b_(n-k)`, `b_0 = 1`.
pub fn coeff_b(n: usize) -> Rational {
    b_table().get(n)
}

/// `c_n` of the exponent expansion, `c_0 = 1`.
pub fn coeff_c(n: usize) -> Rational {
    c_table().get(n)
}

/// The published constants `a_7 = 1/810`, `a_9 = -67/42525`, `a_11 = 19/8505`.
pub fn lu_constants() -> Vec<(usize, Rational)> {
    vec![(7, Rational::new(1, 810)), (9, Rational::new(-67, 42525)), (11, Rational::new(19, 8505))]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    /// The expanded recurrence
    /// `b_n = (1/n) Σ (1/(k+1) - 2^k/((k+1)^2 (k-1)!)) B_(k+1) b_(n-k)`,
    /// evaluated independently of `coeff_a_star`.
    fn b_expanded(n_max: usize) -> Vec<Rational> {
        let mut b = vec![Rational::one()];
        for n in 1..=n_max {
            let mut sum = Rational::zero();
            for k in 1..=n {
                let w = Rational::new(1, k as i64 + 1)
                    - Rational::new(pow2(k), int(k + 1) * int(k + 1) * factorial(k - 1));
                sum = sum + w * bernoulli(k + 1) * &b[n - k];
            }
            b.push(sum / Rational::from_integer(n as i64));
        }
        b
    }

    #[test]
    fn a_values() {
        assert_eq!(coeff_a(1), Rational::zero());
        assert_eq!(coeff_a(2), Rational::zero());
        assert_eq!(coeff_a(3), q(1, 1620));
        assert_eq!(coeff_a(4), q(-11, 18900));
        assert_eq!(coeff_a(5), q(143, 170100));
        assert_eq!(coeff_a(6), q(-2260261, 1178793000));
    }

    #[test]
    fn a_star_values() {
        assert_eq!(coeff_a_star(5), q(1, 1620));
        assert_eq!(coeff_a_star(2), Rational::zero());
        assert_eq!(coeff_a_star(7), q(-11, 18900));
        for k in 1..=16 {
            assert_eq!(coeff_a_star(2 * k - 1), coeff_a(k), "a*_(2k-1) = a_k at k = {k}");
            assert!(coeff_a_star(2 * k).is_zero());
        }
    }

    #[test]
    fn b_values() {
        assert_eq!(coeff_b(0), Rational::one());
        for n in 1..=4 {
            assert!(coeff_b(n).is_zero());
        }
        assert_eq!(coeff_b(5), q(1, 1620));
        assert_eq!(coeff_b(6), Rational::zero());
        assert_eq!(coeff_b(7), q(-11, 18900));
        assert_eq!(coeff_b(8), Rational::zero());
        assert_eq!(coeff_b(9), q(143, 170100));
        assert_eq!(coeff_b(10), q(1, 5248800));
    }

    #[test]
    fn b_matches_expanded_recurrence() {
        let oracle = b_expanded(30);
        for (n, expected) in oracle.iter().enumerate() {
            assert_eq!(&coeff_b(n), expected, "b_{n}");
        }
        for n in 5..=8 {
            assert_eq!(coeff_b(n), coeff_a_star(n));
        }
        // first nonlinear contribution: b_10 = a*_10 + a*_5^2 / 2
        assert_eq!(coeff_b(10), coeff_a_star(10) + coeff_a_star(5).pow(2) / Rational::from_integer(2));
    }

    #[test]
    fn c_values() {
        assert_eq!(coeff_c(0), Rational::one());
        assert_eq!(coeff_c(1), Rational::zero());
        assert_eq!(coeff_c(2), q(1, 135));
        assert_eq!(coeff_c(3), q(-191, 28350));
        assert_eq!(coeff_c(4), q(25127, 2551500));
        assert_eq!(coeff_c(5), q(-19084273, 841995000));
    }

    #[test]
    fn c_satisfies_convolution_identity() {
        // B_(2n+2)/((n+1)(2n+1)) = Σ_{k=0}^{n} 2^(2k+2) B_(2k+2)/(2(k+1)(2k+2)!) c_(n-k)
        for n in 0..20 {
            let lhs = bernoulli(2 * n + 2) / Rational::from_integer(int(n + 1) * int(2 * n + 1));
            let rhs: Rational = (0..=n)
                .map(|k| {
                    Rational::new(pow2(2 * k + 2), int(2) * int(k + 1) * factorial(2 * k + 2))
                        * bernoulli(2 * k + 2)
                        * coeff_c(n - k)
                })
                .sum();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn stirling_pair() {
        assert_eq!(coeff_stirling(1), (q(1, 12), q(1, 6)));
        assert_eq!(coeff_stirling(2).0, q(-1, 360));
        for n in 1..=16 {
            let (p, dp) = coeff_stirling(n);
            assert_eq!(p - dp / Rational::from_integer(2), coeff_a(n), "n = {n}");
        }
    }

    #[test]
    fn lu_constants_exact() {
        let lu = lu_constants();
        assert_eq!(lu.len(), 3);
        assert!(lu.contains(&(7, q(1, 810))));
        assert!(lu.contains(&(9, q(-67, 42525))));
        assert!(lu.contains(&(11, q(19, 8505))));
        assert_eq!(FamilyKind::Lu.coefficient(9), Some(q(-67, 42525)));
        assert_eq!(FamilyKind::Lu.coefficient(8), None);
    }

    #[test]
    fn family_generation() {
        let a = CoefficientFamily::generate(FamilyKind::A, 6);
        assert_eq!(a.values.len(), 6);
        assert_eq!(a.values.last().unwrap(), &(6, q(-2260261, 1178793000)));
        let b = CoefficientFamily::generate(FamilyKind::B, 10);
        assert_eq!(b.values.first().unwrap().0, 0);
        assert_eq!(CoefficientFamily::generate(FamilyKind::Lu, 0).values.len(), 3);
        assert_eq!(FamilyKind::A.coefficient(0), None);
    }
}
