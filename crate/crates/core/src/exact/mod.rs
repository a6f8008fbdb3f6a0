//! Exact arithmetic: rationals, sparse Laurent polynomials in `q`, and the
//! cyclotomic field `Q(zeta)` with the evaluation `q -> zeta`.

mod cyclo;
mod laurent;

pub use cyclo::{CycloField, CycloScalar};
pub use laurent::{LaurentPoly, Substitution};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n/d`. Panics on `d = 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Returns the integer value of `r` when its denominator is one.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)` for `0 <= k <= n`, zero otherwise.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Euler's totient of a positive integer.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Non-negative residue of `a` modulo `m`.
pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(6, 7), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(0), BigInt::one());
    }

    #[test]
    fn totients() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (n, e) in (1..=12).zip(expected) {
            assert_eq!(totient(n), e, "phi({n})");
        }
    }

    #[test]
    fn integer_extraction() {
        assert_eq!(as_integer(&rat(6, 3)), Some(BigInt::from(2)));
        assert_eq!(as_integer(&rat(1, 3)), None);
    }
}
