//! Integer factorization: trial division by the primes below 10⁶, then
//! Brent's variant of Pollard rho under an iteration budget.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;
pub const DEFAULT_FACTOR_BUDGET: u64 = 2_000_000;

static FACTOR_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_FACTOR_BUDGET);

/// Sets the Pollard-rho iteration budget used by `factor` and everything built
/// on it. Intended to be called once at program start.
pub fn set_factor_budget(budget: u64) {
    FACTOR_BUDGET.store(budget, Ordering::Relaxed);
}

pub fn factor_budget() -> u64 {
    FACTOR_BUDGET.load(Ordering::Relaxed)
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::with_capacity(78_500);
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Prime factorization of `n > 0` using the global budget.
pub fn factor(n: &BigUint) -> Result<BTreeMap<BigUint, u32>> {
    factor_with_budget(n, factor_budget())
}

pub fn factor_with_budget(n: &BigUint, budget: u64) -> Result<BTreeMap<BigUint, u32>> {
    assert!(!n.is_zero(), "factor(0)");
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        while (&m % p).is_zero() {
            m /= p;
            *out.entry(pb.clone()).or_insert(0) += 1;
        }
    }
    if m.is_one() {
        return Ok(out);
    }
    let bound = BigUint::from(TRIAL_DIVISION_BOUND);
    if m < &bound * &bound {
        *out.entry(m).or_insert(0) += 1;
        return Ok(out);
    }
    let mut remaining = budget;
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) {
            *out.entry(c).or_insert(0) += 1;
            continue;
        }
        let d = rho_split(&c, &mut remaining).ok_or_else(|| Error::FactorizationLimit(n.to_string()))?;
        let e = &c / &d;
        stack.push(d);
        stack.push(e);
    }
    Ok(out)
}

const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin with the first twelve prime bases; exact below 3.3·10²⁴.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &MR_BASES {
        let pb = BigUint::from(p);
        if n == &pb {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial divisor of the odd composite `n`, spending at most
/// `budget` iterations in total.
fn rho_split(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Some(small) = n.to_u64() {
        return rho_split_u64(small, budget).map(BigUint::from);
    }
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = 128.min(r - k);
                for _ in 0..steps {
                    if *budget == 0 {
                        return None;
                    }
                    *budget -= 1;
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n && g != one {
            return Some(g);
        }
    }
    None
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn rho_split_u64(n: u64, budget: &mut u64) -> Option<u64> {
    for c in 1u64.. {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut ys = y;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = 128.min(r - k);
                for _ in 0..steps {
                    if *budget == 0 {
                        return None;
                    }
                    *budget -= 1;
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += steps;
            }
            r *= 2;
        }
        if g == n {
            loop {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n && g != 1 {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u128) -> BigUint {
        BigUint::from(n)
    }

    fn expand(f: &BTreeMap<BigUint, u32>) -> BigUint {
        f.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    #[test]
    fn small_numbers() {
        let f = factor(&big(360)).unwrap();
        let v: Vec<(u32, u32)> = f.iter().map(|(p, e)| (p.to_u32().unwrap(), *e)).collect();
        assert_eq!(v, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factor(&big(1)).unwrap().is_empty());
    }

    #[test]
    fn semiprime_beyond_trial_division() {
        // 1000003 · 1000033, both above the trial-division bound
        let n = big(1_000_003u128 * 1_000_033u128);
        let f = factor(&n).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(expand(&f), n);
        // a 96-bit semiprime
        let p = 4_294_967_311u128;
        let q = 18_446_744_073_709_551_557u128;
        let n = big(p) * big(q);
        let f = factor(&n).unwrap();
        assert_eq!(expand(&f), n);
        assert!(f.contains_key(&big(p)) && f.contains_key(&big(q)));
    }

    #[test]
    fn zero_budget_reports_limit() {
        let n = big(1_000_003u128 * 1_000_033u128 * 1_000_037u128);
        let err = factor_with_budget(&n, 0).unwrap_err();
        assert_eq!(err.name(), "FACTORIZATION_LIMIT");
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&big(1_000_000_007)));
        assert!(!is_probable_prime(&big(561)));
        assert!(is_probable_prime(&big(18_446_744_073_709_551_557)));
    }
}
