use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CycloScalar, Rational};
use crate::error::{Error, Result};

/// Exponent rewriting applied by [`LaurentPoly::substitute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `q -> q^k`, with `k != 0`.
    Power(i64),
    /// `q -> q^{-1}`.
    Inverse,
}

/// Sparse Laurent polynomial in `q` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// `c q^e`.
    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, Rational::one())
    }

    /// Integer constant.
    pub fn constant(c: i64) -> Self {
        Self::monomial(0, Rational::from_integer(BigInt::from(c)))
    }

    /// Builds a polynomial from `(exponent, integer coefficient)` pairs;
    /// repeated exponents accumulate.
    pub fn from_int_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, Rational::from_integer(BigInt::from(c)));
        }
        p
    }

    /// Adds `c q^e` in place.
    pub fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Rewrites exponents: `Power(k)` multiplies each exponent by `k`,
    /// `Inverse` negates them.
    pub fn substitute(&self, mode: Substitution) -> Result<Self> {
        let k = match mode {
            Substitution::Power(0) => {
                return Err(Error::InvalidArgument(
                    "power substitution needs a nonzero exponent".into(),
                ))
            }
            Substitution::Power(k) => k,
            Substitution::Inverse => -1,
        };
        Ok(Self {
            terms: self.terms.iter().map(|(e, v)| (e * k, v.clone())).collect(),
        })
    }

    /// `p(q^{-1})`.
    pub fn invert_q(&self) -> Self {
        self.substitute(Substitution::Inverse).expect("inverse is total")
    }

    /// `p(1)`, the sum of all coefficients.
    pub fn at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// `q d/dq`, multiplying each coefficient by its exponent.
    pub fn q_derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * Rational::from_integer(BigInt::from(*e)));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by a nonzero polynomial; `None` when the quotient is
    /// not a Laurent polynomial.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (dlo, dhi) = (d.min_exp()?, d.max_exp()?);
        let lead = d.terms[&dhi].clone();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some(top) = rem.max_exp() {
            let lo = rem.min_exp().unwrap();
            if top - dhi < lo - dlo {
                return None;
            }
            let c = rem.terms[&top].clone() / &lead;
            let e = top - dhi;
            quo.add_term(e, c.clone());
            rem = &rem - &d.shift(e).scale(&c);
        }
        Some(quo)
    }

    /// Evaluates `q -> zeta` in `Q(zeta_p)`.
    pub fn eval_zeta(&self, p: u32) -> CycloScalar {
        self.eval_zeta_pow(p, 1)
    }

    /// Evaluates `q -> zeta^k` in `Q(zeta_p)`.
    pub fn eval_zeta_pow(&self, p: u32, k: i64) -> CycloScalar {
        let field = super::CycloField::get(p);
        let mut acc = vec![Rational::zero(); p as usize];
        for (e, c) in &self.terms {
            acc[(e * k).rem_euclid(p as i64) as usize] += c;
        }
        let mut out = field.zero();
        for (k, c) in acc.into_iter().enumerate() {
            if !c.is_zero() {
                out = &out + &field.zeta_pow(k as i64).scale(&c);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
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
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms.iter().copied())
    }

    #[test]
    fn power_substitution_scales_exponents() {
        let p = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(p.substitute(Substitution::Power(3)).unwrap(), lp(&[(3, 1), (-3, 1)]));
    }

    #[test]
    fn inverse_substitution() {
        let p = lp(&[(2, 1), (0, -2)]);
        assert_eq!(p.substitute(Substitution::Inverse).unwrap(), lp(&[(-2, 1), (0, -2)]));
    }

    #[test]
    fn zero_substitution_stays_zero() {
        assert!(LaurentPoly::zero().substitute(Substitution::Power(5)).unwrap().is_zero());
        assert!(LaurentPoly::one().substitute(Substitution::Power(0)).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = lp(&[(1, 1), (-1, -1)]);
        let s = &p + &(-&p);
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
    }

    #[test]
    fn exact_division() {
        // (q^2 - q^-2) / (q - q^-1) = q + q^-1
        let n = lp(&[(2, 1), (-2, -1)]);
        let d = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(n.div_exact(&d).unwrap(), lp(&[(1, 1), (-1, 1)]));
        assert!(lp(&[(0, 1)]).div_exact(&lp(&[(0, 1), (1, 1)])).is_none());
    }

    #[test]
    fn derivative_and_value_at_one() {
        let p = lp(&[(3, 2), (-1, 5)]);
        assert_eq!(p.q_derivative(), lp(&[(3, 6), (-1, -5)]));
        assert_eq!(p.at_one(), int(7));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(lp(&[(2, 1), (0, -2)]).to_string(), "q^2 - 2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
