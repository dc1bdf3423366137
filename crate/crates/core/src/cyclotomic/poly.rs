//! Cyclotomic polynomials Φ_N over the integers.
//!
//! Φ_N is obtained by exact division of x^N − 1 by Φ_d for every proper
//! divisor d of N. Results are memoized in a process-wide read-through cache.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::numtheory::{divisors, euler_phi};

type Memo = RwLock<HashMap<u32, Arc<Vec<i64>>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of Φ_N, constant term first.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    cyclotomic_polynomial_shared(n).as_ref().clone()
}

pub(crate) fn cyclotomic_polynomial_shared(n: u32) -> Arc<Vec<i64>> {
    assert!(n > 0, "cyclotomic_polynomial: n must be positive");
    if let Some(p) = memo().read().expect("memo poisoned").get(&n) {
        return Arc::clone(p);
    }
    let poly = Arc::new(compute(n));
    let mut guard = memo().write().expect("memo poisoned");
    Arc::clone(guard.entry(n).or_insert(poly))
}

fn compute(n: u32) -> Vec<i64> {
    if n == 1 {
        return vec![-1, 1];
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n as u64) {
        if d == n as u64 {
            continue;
        }
        let phi_d = cyclotomic_polynomial_shared(d as u32);
        num = divide_exact(&num, &phi_d);
    }
    debug_assert_eq!(num.len() as u64 - 1, euler_phi(n as u64));
    num
}

/// Quotient of `num` by the monic polynomial `den`; the division must be exact.
fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        if c == 0 {
            continue;
        }
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            if d != 0 {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(d).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Every memoized Φ_N, sorted by N.
pub fn memoized_polynomials() -> Vec<(u32, Vec<i64>)> {
    let guard = memo().read().expect("memo poisoned");
    let mut out: Vec<_> = guard.iter().map(|(&n, p)| (n, p.as_ref().clone())).collect();
    out.sort_by_key(|(n, _)| *n);
    out
}

/// Inserts a previously computed Φ_N into the memo.
///
/// Returns `false` (and ignores the input) when the coefficients fail the
/// cheap structural checks: degree φ(N), monic, constant term ±1.
pub fn seed_polynomial(n: u32, coeffs: Vec<i64>) -> bool {
    if n == 0
        || coeffs.len() as u64 != euler_phi(n as u64) + 1
        || coeffs.last() != Some(&1)
        || coeffs[0].abs() != 1
    {
        return false;
    }
    memo()
        .write()
        .expect("memo poisoned")
        .entry(n)
        .or_insert_with(|| Arc::new(coeffs));
    true
}
