use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{CycloField, CycloScalar, Rational};

/// Precision marker for series that are exact (finite Laurent polynomials).
pub const EXACT: i64 = i64::MAX / 4;

fn is_exact(p: i64) -> bool {
    p >= EXACT / 2
}

fn shift_prec(p: i64, by: i64) -> i64 {
    if is_exact(p) {
        EXACT
    } else {
        p + by
    }
}

/// Truncated Laurent series `sum_{e >= val} c_e z^e + O(z^prec)` over
/// `Q(zeta_p)`.
///
/// Coefficients with exponent `< prec` are exact; nothing at or beyond
/// `prec` is ever reported.  Leading and trailing zeros are trimmed, so the
/// zero series has no stored coefficients.
#[derive(Clone)]
pub struct TruncSeries {
    field: &'static CycloField,
    val: i64,
    coeffs: Vec<CycloScalar>,
    prec: i64,
}

impl TruncSeries {
    pub fn zero(field: &'static CycloField, prec: i64) -> Self {
        TruncSeries {
            field,
            val: 0,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn exact_zero(field: &'static CycloField) -> Self {
        Self::zero(field, EXACT)
    }

    pub fn one(field: &'static CycloField) -> Self {
        Self::monomial(field, 0, field.one())
    }

    /// `c z^e`, exact.
    pub fn monomial(field: &'static CycloField, e: i64, c: CycloScalar) -> Self {
        Self::from_coeffs(field, e, vec![c], EXACT)
    }

    pub fn constant(c: CycloScalar) -> Self {
        Self::monomial(c.field(), 0, c)
    }

    /// Coefficients of `z^val, z^{val+1}, ...`, known below `prec`.
    pub fn from_coeffs(field: &'static CycloField, val: i64, coeffs: Vec<CycloScalar>, prec: i64) -> Self {
        let mut s = TruncSeries {
            field,
            val,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    /// Rational coefficients starting at `z^val`.
    pub fn from_rationals(field: &'static CycloField, val: i64, coeffs: &[Rational], prec: i64) -> Self {
        let c = coeffs.iter().map(|r| field.from_rational(r)).collect();
        Self::from_coeffs(field, val, c, prec)
    }

    fn normalize(&mut self) {
        if !is_exact(self.prec) {
            let keep = (self.prec - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        } else {
            self.prec = EXACT;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    /// Exponent of the first nonzero coefficient; `prec` for a zero series.
    pub fn valuation(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.val
        }
    }

    /// First exponent whose coefficient is unknown (`EXACT` if none).
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        is_exact(self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored range: exponents `val .. val + len` (possibly empty).
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycloScalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.val + k as i64, c))
            .filter(|(_, c)| !c.is_zero())
    }

    /// Highest stored exponent, `None` when zero.
    pub fn top(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val + self.coeffs.len() as i64 - 1)
        }
    }

    /// Coefficient of `z^e`; `None` when `e` is at or beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<CycloScalar> {
        if e >= self.prec {
            return None;
        }
        let k = e - self.val;
        if k < 0 || k as usize >= self.coeffs.len() {
            Some(self.field.zero())
        } else {
            Some(self.coeffs[k as usize].clone())
        }
    }

    /// Coefficient of `z^e`, zero at or beyond the precision.
    fn c(&self, e: i64) -> CycloScalar {
        self.coeff(e).unwrap_or_else(|| self.field.zero())
    }

    /// Drops everything at or beyond `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.min(prec);
        s.normalize();
        s
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        let prec = self.prec.min(o.prec);
        if self.is_zero() {
            return o.truncate(prec);
        }
        if o.is_zero() {
            return self.truncate(prec);
        }
        let lo = self.val.min(o.val);
        let hi = self.top().unwrap().max(o.top().unwrap());
        let hi = if is_exact(prec) { hi } else { hi.min(prec - 1) };
        if hi < lo {
            return Self::zero(self.field, prec);
        }
        let coeffs = (lo..=hi).map(|e| &self.c(e) + &o.c(e)).collect();
        Self::from_coeffs(self.field, lo, coeffs, prec)
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            field: self.field,
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        let prec = shift_prec(o.prec, self.valuation()).min(shift_prec(self.prec, o.valuation()));
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field, prec);
        }
        // Single-term factors are common (monomials and constants).
        if self.coeffs.len() == 1 {
            let mut s = o.shift(self.val).scale(&self.coeffs[0]);
            s.prec = s.prec.min(prec);
            s.normalize();
            return s;
        }
        if o.coeffs.len() == 1 {
            let mut s = self.shift(o.val).scale(&o.coeffs[0]);
            s.prec = s.prec.min(prec);
            s.normalize();
            return s;
        }
        let lo = self.val + o.val;
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if !is_exact(prec) {
            len = len.min((prec - lo).max(0) as usize);
        }
        let mut out = vec![self.field.zero(); len];
        for (a, x) in self.coeffs.iter().enumerate() {
            if a >= len {
                break;
            }
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.coeffs.iter().enumerate() {
                if a + b >= len {
                    break;
                }
                if !y.is_zero() {
                    out[a + b] = &out[a + b] + &(x * y);
                }
            }
        }
        Self::from_coeffs(self.field, lo, out, prec)
    }

    pub fn scale(&self, c: &CycloScalar) -> TruncSeries {
        if c.is_one() {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::from_coeffs(self.field, self.val, coeffs, self.prec)
    }

    pub fn scale_rational(&self, r: &Rational) -> TruncSeries {
        let coeffs = self.coeffs.iter().map(|x| x.scale(r)).collect();
        Self::from_coeffs(self.field, self.val, coeffs, self.prec)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> TruncSeries {
        TruncSeries {
            field: self.field,
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: shift_prec(self.prec, k),
        }
    }

    /// Multiplicative inverse. Exact inputs are inverted to absolute
    /// precision `cap`; truncated inputs keep all the precision they carry.
    pub fn inv_capped(&self, cap: i64) -> Result<TruncSeries> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let v = self.val;
        let rel = if self.is_exact() {
            (cap + v).max(1)
        } else {
            self.prec - v
        };
        let lead_inv = self.coeffs[0].inverse()?;
        let n = rel as usize;
        let mut out: Vec<CycloScalar> = Vec::with_capacity(n);
        out.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = self.field.zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc = &acc + &(a * &out[k - j]);
                }
            }
            out.push(-(&acc * &lead_inv));
        }
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(Self::from_coeffs(self.field, -v, vec![lead_inv], EXACT));
        }
        Ok(Self::from_coeffs(self.field, -v, out, -v + rel))
    }

    /// Inverse of a truncated series; exact non-monomials are rejected since
    /// they have no canonical truncation.
    pub fn inv(&self) -> Result<TruncSeries> {
        if self.is_exact() && self.coeffs.len() > 1 {
            return Err(Error::InvalidArgument(
                "inverse of an exact polynomial needs an explicit precision".into(),
            ));
        }
        self.inv_capped(0)
    }

    /// `d/dz`.
    pub fn derive(&self) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.mul_int(self.val + k as i64))
            .collect();
        Self::from_coeffs(self.field, self.val - 1, coeffs, shift_prec(self.prec, -1))
    }

    /// `z -> -z`.
    pub fn negate_var(&self) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if (self.val + k as i64) % 2 == 0 { c.clone() } else { -c })
            .collect();
        Self::from_coeffs(self.field, self.val, coeffs, self.prec)
    }

    /// `exp(f)` for `f` with positive valuation; exact inputs use `cap`.
    pub fn exp_capped(&self, cap: i64) -> Result<TruncSeries> {
        if self.valuation() < 1 {
            return Err(Error::InvalidArgument("exp needs a series without constant term".into()));
        }
        let prec = if self.is_exact() { cap } else { self.prec };
        let n = prec.max(0) as usize;
        let mut g: Vec<CycloScalar> = Vec::with_capacity(n);
        if n > 0 {
            g.push(self.field.one());
        }
        for k in 1..n {
            let mut acc = self.field.zero();
            for j in 1..=k {
                let fj = self.c(j as i64);
                if !fj.is_zero() {
                    acc = &acc + &(&fj.mul_int(j as i64) * &g[k - j]);
                }
            }
            g.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
        }
        Ok(Self::from_coeffs(self.field, 0, g, prec))
    }

    /// `log(f)` for `f` with constant term 1; exact inputs use `cap`.
    pub fn log_capped(&self, cap: i64) -> Result<TruncSeries> {
        if self.valuation() != 0 || !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument("log needs constant term 1".into()));
        }
        let prec = if self.is_exact() { cap } else { self.prec };
        let n = prec.max(0) as usize;
        let mut h: Vec<CycloScalar> = vec![self.field.zero(); n.max(1)];
        for k in 1..n {
            let mut acc = self.c(k as i64).mul_int(k as i64);
            for j in 1..k {
                let fkj = self.c((k - j) as i64);
                if !fkj.is_zero() && !h[j].is_zero() {
                    acc = &acc - &(&h[j].mul_int(j as i64) * &fkj);
                }
            }
            h[k] = acc.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
        }
        h.truncate(n);
        Ok(Self::from_coeffs(self.field, 0, h, prec))
    }

    /// Integer power; negative exponents invert (exact inputs use `cap`).
    pub fn pow_capped(&self, k: i64, cap: i64) -> Result<TruncSeries> {
        let base = if k < 0 { self.inv_capped(cap)? } else { self.clone() };
        let mut acc = TruncSeries::one(self.field);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
            if acc.is_exact() && !is_exact(cap) {
                acc = acc.truncate(cap.max(acc.valuation() + 1));
            }
        }
        Ok(acc)
    }

    /// Compares two series on their common known range.
    ///
    /// Returns the number of coefficients compared, or the first exponent
    /// where they differ.
    pub fn compare(&self, o: &TruncSeries) -> std::result::Result<usize, i64> {
        let prec = self.prec.min(o.prec);
        let lo = self.valuation().min(o.valuation()).min(prec);
        let hi = if is_exact(prec) {
            self.top().unwrap_or(lo).max(o.top().unwrap_or(lo)) + 1
        } else {
            prec
        };
        let mut n = 0usize;
        for e in lo..hi {
            if self.c(e) != o.c(e) {
                return Err(e);
            }
            n += 1;
        }
        Ok(n)
    }
}

impl PartialEq for TruncSeries {
    fn eq(&self, o: &Self) -> bool {
        self.field.order() == o.field.order()
            && self.prec == o.prec
            && self.valuation() == o.valuation()
            && self.coeffs == o.coeffs
    }
}

impl Eq for TruncSeries {}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*w^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(w^{})", self.prec)?;
        }
        Ok(())
    }
}

/// Operations exposed through [`series_ops`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Inv,
    Derive,
    NegateVariable,
}

/// Uniform entry point for the elementary series operations; unary
/// operations ignore `y`.
pub fn series_ops(x: &TruncSeries, y: &TruncSeries, op: SeriesOp) -> Result<TruncSeries> {
    Ok(match op {
        SeriesOp::Add => x.add(y),
        SeriesOp::Mul => x.mul(y),
        SeriesOp::Inv => x.inv()?,
        SeriesOp::Derive => x.derive(),
        SeriesOp::NegateVariable => x.negate_var(),
    })
}

/// `sum_{n < prec} (c z)^n / n!` with rational `c`.
pub fn exp_linear(field: &'static CycloField, c: &Rational, prec: i64) -> TruncSeries {
    let mut coeffs = Vec::new();
    let mut term = Rational::one();
    for n in 0..prec.max(0) {
        if n > 0 {
            term = term * c / Rational::from_integer(BigInt::from(n));
        }
        coeffs.push(field.from_rational(&term));
    }
    TruncSeries::from_coeffs(field, 0, coeffs, prec)
}
