//! Small rational-integer helpers: primality, factorization, square roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Int = BigInt;

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

pub fn is_square_free(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            n /= f;
            if n.is_multiple_of(f) {
                return false;
            }
        }
        f += 1;
    }
    true
}

/// Prime factorization by trial division, ascending, with multiplicities.
pub fn factorize(n: &Int) -> Vec<(Int, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut f = Int::from(2);
    while &f * &f <= n {
        let mut e = 0;
        while (&n % &f).is_zero() {
            n /= &f;
            e += 1;
        }
        if e > 0 {
            out.push((f.clone(), e));
        }
        f += if f == Int::from(2) { 1 } else { 2 };
    }
    if n > Int::from(1) {
        out.push((n, 1));
    }
    out
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime_u64(p)).collect()
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn exact_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact quotient when `d` divides `n`.
pub fn exact_div(n: &Int, d: &Int) -> Option<Int> {
    if d.is_zero() {
        return None;
    }
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

pub fn to_u64(n: &Int) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let ps = primes_up_to(30);
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn square_free() {
        assert!(is_square_free(1));
        assert!(is_square_free(30));
        assert!(!is_square_free(12));
        assert!(!is_square_free(49));
        assert!(!is_square_free(0));
    }

    #[test]
    fn factor_164() {
        let f = factorize(&Int::from(164));
        assert_eq!(f, vec![(Int::from(2), 2), (Int::from(41), 1)]);
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(exact_sqrt(&Int::from(49)), Some(Int::from(7)));
        assert_eq!(exact_sqrt(&Int::from(50)), None);
        assert_eq!(exact_sqrt(&Int::from(-4)), None);
    }
}
