use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// The field `Q(zeta_p) = Q[x]/(Phi_p(x))` with `zeta` the class of `x`.
///
/// Fields are interned: [`CycloField::get`] returns the same `'static`
/// instance for a given `p`, so scalars carry a cheap pointer to theirs.
pub struct CycloField {
    p: u32,
    /// Monic `Phi_p`, coefficients from degree 0 upward.
    phi: Vec<i64>,
    /// `x^k mod Phi_p` for `0 <= k < 2 deg - 1`.
    xpow: Vec<Vec<BigInt>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.p)
    }
}

impl CycloField {
    /// The interned field for `p >= 1`.
    pub fn get(p: u32) -> &'static CycloField {
        assert!(p >= 1, "cyclotomic order must be positive");
        static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycloField>>> = OnceLock::new();
        let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = map.lock().expect("field registry poisoned");
        guard
            .entry(p)
            .or_insert_with(|| Box::leak(Box::new(CycloField::build(p))))
    }

    fn build(p: u32) -> CycloField {
        let phi = cyclotomic_i64(p as usize);
        let deg = phi.len() - 1;
        let mut xpow: Vec<Vec<BigInt>> = Vec::with_capacity(2 * deg);
        for k in 0..(2 * deg).max(1) {
            let mut v = vec![BigInt::zero(); deg];
            if k < deg {
                v[k] = BigInt::one();
            } else {
                // x^k = x * x^{k-1}; shift and fold the top coefficient back.
                let prev = &xpow[k - 1];
                let top = prev[deg - 1].clone();
                for i in (1..deg).rev() {
                    v[i] = prev[i - 1].clone();
                }
                v[0] = BigInt::zero();
                if !top.is_zero() {
                    for (i, c) in phi.iter().take(deg).enumerate() {
                        v[i] -= &top * BigInt::from(*c);
                    }
                }
            }
            xpow.push(v);
        }
        CycloField { p, phi, xpow }
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    /// `deg Phi_p = phi(p)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of `Phi_p`, lowest degree first.
    pub fn phi_coeffs(&self) -> &[i64] {
        &self.phi
    }

    pub fn zero(&'static self) -> CycloScalar {
        CycloScalar {
            field: self,
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(&'static self) -> CycloScalar {
        self.from_int(1)
    }

    pub fn from_int(&'static self, n: i64) -> CycloScalar {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&'static self, r: &Rational) -> CycloScalar {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = r.numer().clone();
        CycloScalar::normalized(self, num, r.denom().clone())
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(&'static self, k: i64) -> CycloScalar {
        let k = k.rem_euclid(self.p as i64) as usize;
        self.reduce_poly(self.monomial_coeffs(k), BigInt::one())
    }

    fn monomial_coeffs(&self, k: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        v
    }

    /// Reduces an arbitrary-length integer polynomial modulo `Phi_p`.
    fn reduce_poly(&'static self, mut poly: Vec<BigInt>, den: BigInt) -> CycloScalar {
        let d = self.degree();
        // Fold high powers down; the table covers up to 2d - 2, beyond that
        // repeatedly fold the leading term.
        while poly.len() > self.xpow.len() {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            for (i, c) in self.phi.iter().take(d).enumerate() {
                poly[shift + i] -= &top * BigInt::from(*c);
            }
        }
        let mut out = vec![BigInt::zero(); d];
        for (k, c) in poly.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                out[k] += c;
            } else {
                for (o, t) in out.iter_mut().zip(&self.xpow[k]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        CycloScalar::normalized(self, out, den)
    }

    /// Builds a scalar from rational coefficients of `1, zeta, zeta^2, ...`
    /// of any length (reduced modulo `Phi_p`).
    pub fn from_coeffs(&'static self, coeffs: &[Rational]) -> CycloScalar {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let poly = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect::<Vec<_>>();
        if poly.is_empty() {
            return self.zero();
        }
        self.reduce_poly(poly, den)
    }
}

/// `Phi_n` via exact division of `x^n - 1` by `Phi_d` for proper divisors.
fn cyclotomic_i64(n: usize) -> Vec<i64> {
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            poly = div_monic(&poly, &cyclotomic_i64(d));
        }
    }
    poly
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![0i64; num.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quo
}

/// An element of `Q(zeta_p)`, stored as integer numerators over a common
/// positive denominator, normalized so the representation is unique.
#[derive(Clone)]
pub struct CycloScalar {
    field: &'static CycloField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloScalar {
    fn normalized(field: &'static CycloField, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if num.iter().all(|c| c.is_zero()) {
            return CycloScalar {
                field,
                num,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den /= g;
            }
        }
        CycloScalar { field, num, den }
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    /// Rational coefficients of `1, zeta, ..., zeta^{deg-1}`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when this lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_field(&self, other: &CycloScalar) {
        assert!(
            std::ptr::eq(self.field, other.field),
            "mixing Q(zeta_{}) with Q(zeta_{})",
            self.field.p,
            other.field.p
        );
    }

    pub fn scale(&self, r: &Rational) -> CycloScalar {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycloScalar::normalized(self.field, num, &self.den * r.denom())
    }

    pub fn mul_int(&self, n: i64) -> CycloScalar {
        if n == 1 {
            return self.clone();
        }
        let n = BigInt::from(n);
        let num = self.num.iter().map(|c| c * &n).collect();
        CycloScalar::normalized(self.field, num, self.den.clone())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_p` over `Q`.
    pub fn inverse(&self) -> Result<CycloScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a: Vec<Rational> = self.coeffs();
        let m: Vec<Rational> = self
            .field
            .phi
            .iter()
            .map(|c| Rational::from_integer(BigInt::from(*c)))
            .collect();
        // Invariant: r_k = s_k * a (mod m).
        let (mut r0, mut r1) = (trim(m), trim(a));
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r1.is_empty() {
            return Err(Error::Internal("cyclotomic polynomial not irreducible".into()));
        }
        let c = r1[0].clone();
        let inv: Vec<Rational> = s1.iter().map(|x| x / &c).collect();
        Ok(self.field.from_coeffs(&inv))
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, n: i64) -> Result<CycloScalar> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let mut quo = vec![Rational::zero(); rem.len() - db];
    let lead = b[db].clone();
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                rem[k + i] -= &c * bc;
            }
        }
        quo[k] = c;
    }
    rem.truncate(db);
    (trim(quo), trim(rem))
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.p == other.field.p && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloScalar {}

impl Hash for CycloScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{a}*z")?,
                (k, true) => write!(f, "z^{k}")?,
                (k, false) => write!(f, "{a}*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        self.check_field(rhs);
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return CycloScalar::normalized(self.field, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        CycloScalar::normalized(self.field, num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.check_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let d = self.num.len();
        let mut poly = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        self.field.reduce_poly(poly, &self.den * &rhs.den)
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            field: self.field,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, LaurentPoly};

    #[test]
    fn phi_small_orders() {
        assert_eq!(cyclotomic_i64(1), vec![-1, 1]);
        assert_eq!(cyclotomic_i64(2), vec![1, 1]);
        assert_eq!(cyclotomic_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_i64(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn zeta_to_the_p_is_one() {
        for p in [3u32, 5, 7, 8, 9, 12] {
            let f = CycloField::get(p);
            assert!(f.zeta_pow(p as i64).is_one());
            assert_eq!(LaurentPoly::q_pow(p as i64).eval_zeta(p), f.one());
            assert_eq!(LaurentPoly::q_pow(-3).eval_zeta(p), f.zeta_pow(p as i64 - 3));
        }
    }

    #[test]
    fn geometric_sum_vanishes_for_prime() {
        for p in [3u32, 5, 7, 11] {
            let s = LaurentPoly::from_int_terms((0..p as i64).map(|k| (k, 1)));
            assert!(s.eval_zeta(p).is_zero());
        }
    }

    #[test]
    fn inverse_of_one_minus_zeta() {
        for p in [5u32, 7] {
            let f = CycloField::get(p);
            let a = &f.one() - &f.zeta_pow(1);
            let mut expected = f.from_rational(&rat(1, p as i64));
            for s in 2..p as i64 {
                expected = &expected * &(&f.one() - &f.zeta_pow(s));
            }
            assert_eq!(a.inverse().unwrap(), expected);
        }
    }

    #[test]
    fn zeta_inverse_is_zeta_power() {
        let f = CycloField::get(9);
        assert_eq!(f.zeta_pow(1).inverse().unwrap(), f.zeta_pow(8));
        assert!(f.one().inverse().unwrap().is_one());
        assert_eq!(f.zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_coefficients_roundtrip() {
        let f = CycloField::get(7);
        let x = f.from_coeffs(&[rat(1, 2), int(0), rat(-3, 4)]);
        assert_eq!(x.coeffs()[2], rat(-3, 4));
        assert_eq!(x.coeffs().len(), 6);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
    }
}
