use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::{LaurentPoly, Rational};

/// Sparse Laurent polynomial in a fixed number of commuting variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiLaurent {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl MultiLaurent {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(&vec![0; nvars], Rational::from_integer(1.into()))
    }

    pub fn monomial(exps: &[i64], c: Rational) -> Self {
        let mut m = Self::zero(exps.len());
        m.add_term(exps.to_vec(), c);
        m
    }

    fn add_term(&mut self, e: Vec<i64>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn first_term(&self) -> Option<(Vec<i64>, Rational)> {
        self.terms.iter().next().map(|(e, c)| (e.clone(), c.clone()))
    }

    pub fn add(&self, o: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, o: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, o.nvars);
        let mut acc: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MultiLaurent {
            nvars: self.nvars,
            terms: acc,
        }
    }

    /// Multiplies by a one-variable polynomial placed in variable `var`.
    pub fn mul_q_poly(&self, p: &LaurentPoly, var: usize) -> MultiLaurent {
        let mut lifted = MultiLaurent::zero(self.nvars);
        for (e, c) in p.terms() {
            let mut exps = vec![0; self.nvars];
            exps[var] = e;
            lifted.add_term(exps, c.clone());
        }
        self.mul(&lifted)
    }
}
