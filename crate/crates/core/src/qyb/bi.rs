use crate::exact::{CycloField, CycloScalar};
use crate::series::{TruncSeries, EXACT};

fn exact(p: i64) -> bool {
    p >= EXACT / 2
}

/// Element of `C((z1))((z2))`: rows indexed by the power of `z2`, each a
/// truncated Laurent series in `z1`.  Rows at or beyond `prec2` are
/// unknown.
#[derive(Clone, Debug)]
pub struct BiSeries {
    field: &'static CycloField,
    v2: i64,
    rows: Vec<TruncSeries>,
    prec2: i64,
}

impl BiSeries {
    pub fn one(field: &'static CycloField) -> Self {
        Self::in_z1(&TruncSeries::one(field))
    }

    /// `f(z1)`, constant in `z2`.
    pub fn in_z1(f: &TruncSeries) -> Self {
        BiSeries {
            field: f.field(),
            v2: 0,
            rows: vec![f.clone()],
            prec2: EXACT,
        }
        .normalized()
    }

    /// `f(z2)`, constant in `z1`.
    pub fn in_z2(f: &TruncSeries) -> Self {
        let field = f.field();
        let v = f.valuation().min(f.prec());
        let top = f.top().unwrap_or(v - 1);
        let rows = (v..=top)
            .map(|e| TruncSeries::constant(f.coeff(e).unwrap_or_else(|| field.zero())))
            .collect();
        BiSeries {
            field,
            v2: v,
            rows,
            prec2: f.prec(),
        }
        .normalized()
    }

    /// `f(z1 + z2)` expanded in nonnegative powers of `z2`, keeping `k`
    /// rows: row `t` is `f^{(t)}(z1) / t!`.
    pub fn in_sum(f: &TruncSeries, k: i64) -> Self {
        let field = f.field();
        let mut rows = Vec::with_capacity(k.max(0) as usize);
        let mut d = f.clone();
        let mut fact = num_bigint::BigInt::from(1);
        for t in 0..k {
            if t > 0 {
                d = d.derive();
                fact *= t;
            }
            let inv = crate::exact::Rational::new(1.into(), fact.clone());
            rows.push(d.scale_rational(&inv));
        }
        BiSeries {
            field,
            v2: 0,
            rows,
            prec2: k,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        if !exact(self.prec2) {
            let keep = (self.prec2 - self.v2).max(0) as usize;
            self.rows.truncate(keep);
        }
        while self.rows.last().is_some_and(|r| r.is_zero()) {
            self.rows.pop();
        }
        let lead = self.rows.iter().take_while(|r| r.is_zero()).count();
        if lead > 0 {
            self.rows.drain(..lead);
            self.v2 += lead as i64;
        }
        if self.rows.is_empty() {
            self.v2 = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// `true` for the exact constant 1.
    pub fn is_one(&self) -> bool {
        exact(self.prec2)
            && self.v2 == 0
            && self.rows.len() == 1
            && self.rows[0].is_exact()
            && self.rows[0].compare(&TruncSeries::one(self.field)) == Ok(1)
    }

    fn valuation(&self) -> i64 {
        if self.rows.is_empty() {
            self.prec2
        } else {
            self.v2
        }
    }

    fn row(&self, e: i64) -> Option<&TruncSeries> {
        let k = e - self.v2;
        if k < 0 {
            None
        } else {
            self.rows.get(k as usize)
        }
    }

    pub fn mul(&self, o: &BiSeries) -> BiSeries {
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let shift = |p: i64, v: i64| if exact(p) { EXACT } else { p + v };
        let prec2 = shift(o.prec2, self.valuation()).min(shift(self.prec2, o.valuation()));
        if self.is_zero() || o.is_zero() {
            return BiSeries {
                field: self.field,
                v2: 0,
                rows: Vec::new(),
                prec2,
            };
        }
        let v2 = self.v2 + o.v2;
        let mut len = self.rows.len() + o.rows.len() - 1;
        if !exact(prec2) {
            len = len.min((prec2 - v2).max(0) as usize);
        }
        let mut rows: Vec<Option<TruncSeries>> = vec![None; len];
        for (a, x) in self.rows.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.rows.iter().enumerate() {
                if a + b >= len {
                    break;
                }
                if y.is_zero() {
                    continue;
                }
                let prod = x.mul(y);
                rows[a + b] = Some(match rows[a + b].take() {
                    None => prod,
                    Some(acc) => acc.add(&prod),
                });
            }
        }
        let field = self.field;
        let rows = rows
            .into_iter()
            .map(|r| r.unwrap_or_else(|| TruncSeries::exact_zero(field)))
            .collect();
        BiSeries { field, v2, rows, prec2 }.normalized()
    }

    pub fn add(&self, o: &BiSeries) -> BiSeries {
        let prec2 = self.prec2.min(o.prec2);
        if self.is_zero() && o.is_zero() {
            return BiSeries {
                field: self.field,
                v2: 0,
                rows: Vec::new(),
                prec2,
            };
        }
        let lo = self.valuation().min(o.valuation());
        let hi_of = |s: &BiSeries| s.v2 + s.rows.len() as i64;
        let mut hi = hi_of(self).max(hi_of(o));
        if !exact(prec2) {
            hi = hi.min(prec2);
        }
        let rows = (lo..hi)
            .map(|e| match (self.row(e), o.row(e)) {
                (Some(x), Some(y)) => x.add(y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => TruncSeries::exact_zero(self.field),
            })
            .collect();
        BiSeries {
            field: self.field,
            v2: lo,
            rows,
            prec2,
        }
        .normalized()
    }

    pub fn scale(&self, c: &CycloScalar) -> BiSeries {
        BiSeries {
            field: self.field,
            v2: self.v2,
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
            prec2: self.prec2,
        }
        .normalized()
    }

    /// Compares on the common known range; returns the number of
    /// coefficients compared or the first differing `(z2, z1)` exponent.
    pub fn compare(&self, o: &BiSeries) -> Result<usize, (i64, i64)> {
        let prec2 = self.prec2.min(o.prec2);
        let lo = self.valuation().min(o.valuation()).min(prec2);
        let hi_of = |s: &BiSeries| s.v2 + s.rows.len() as i64;
        let mut hi = hi_of(self).max(hi_of(o));
        if !exact(prec2) {
            hi = prec2;
        }
        let zero = TruncSeries::exact_zero(self.field);
        let mut n = 0;
        for e in lo..hi {
            let x = self.row(e).unwrap_or(&zero);
            let y = o.row(e).unwrap_or(&zero);
            match x.compare(y) {
                Ok(k) => n += k,
                Err(e1) => return Err((e, e1)),
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_expansion_of_inverse_square() {
        // (z1 + z2)^{-2} = sum_t (-1)^t (t+1) z2^t z1^{-2-t}
        let f = CycloField::get(5);
        let inv_sq = TruncSeries::monomial(f, -2, f.one());
        let b = BiSeries::in_sum(&inv_sq, 5);
        for t in 0..5i64 {
            let row = b.row(t).unwrap();
            let sign = if t % 2 == 0 { 1 } else { -1 };
            assert_eq!(row.coeff(-2 - t).unwrap(), f.from_int(sign * (t + 1)));
        }
    }

    #[test]
    fn product_of_embeddings() {
        // z1 * z2 * (z1 + z2)^{-1} * (z1 + z2) = z1 z2
        let f = CycloField::get(7);
        let z = TruncSeries::monomial(f, 1, f.one());
        let zi = TruncSeries::monomial(f, -1, f.one());
        let lhs = BiSeries::in_z1(&z)
            .mul(&BiSeries::in_z2(&z))
            .mul(&BiSeries::in_sum(&zi, 6))
            .mul(&BiSeries::in_sum(&z, 6));
        let rhs = BiSeries::in_z1(&z).mul(&BiSeries::in_z2(&z));
        assert!(lhs.compare(&rhs).unwrap() > 0);
    }
}
