//! Bernoulli numbers as exact rationals.
//!
//! Generated from the defining recurrence
//! `sum_{j=0}^{m} C(m+1, j) B_j = 0` (for `m >= 1`) with `B_0 = 1`, which
//! fixes the convention `B_1 = -1/2`. Only even indices matter downstream.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use super::Rational;

/// Largest index the table is intended for; the recurrence is quadratic.
pub const PRACTICAL_MAX_INDEX: usize = 512;

/// Memoized `B_0, B_1, ...`; safe to share between threads.
#[derive(Debug, Default)]
pub struct BernoulliTable {
    entries: RwLock<Vec<Rational>>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `B_n`, extending the table if needed.
    pub fn get(&self, n: usize) -> Rational {
        if let Some(b) = self.entries.read().expect("bernoulli table poisoned").get(n) {
            return b.clone();
        }
        let mut entries = self.entries.write().expect("bernoulli table poisoned");
        while entries.len() <= n {
            let m = entries.len();
            let next = next_bernoulli(&entries, m);
            entries.push(next);
        }
        entries[n].clone()
    }

    /// Number of entries computed so far.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.read().expect("bernoulli table poisoned").len().checked_sub(1)
    }
}

fn next_bernoulli(prev: &[Rational], m: usize) -> Rational {
    if m == 0 {
        return Rational::one();
    }
    if m > 1 && m % 2 == 1 {
        return Rational::zero();
    }
    // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
    let mut sum = Rational::zero();
    let mut binom = BigInt::from(1u32); // C(m+1, 0)
    for (j, b) in prev.iter().enumerate() {
        if !b.is_zero() {
            sum = sum + Rational::from_integer(binom.clone()) * b;
        }
        // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
        binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
    }
    -(sum / Rational::from_integer(BigInt::from(m + 1)))
}

fn global() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(BernoulliTable::new)
}

/// `B_n` with `B_1 = -1/2`, from a process-wide memo table.
pub fn bernoulli(n: usize) -> Rational {
    global().get(n)
}
