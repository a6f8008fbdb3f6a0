//! The quantum Yang-Baxter operator `S(z)` on the span of the vacuum and
//! the generators, and the checks it is expected to satisfy.

mod bi;
mod ybe;

pub use bi::BiSeries;
pub use ybe::{check_ybe, YbeSample};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::cartan::{ConstKind, RootUnityCtx, StructureConstants};
use crate::exact::{CycloField, CycloScalar, LaurentPoly};
use crate::report::Check;
use crate::series::TruncSeries;
use crate::tau::TauTuple;

const SUITE: &str = "qyb";

/// A basis vector of the generator span.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Vac,
    Xi0 { i: usize, m: i64 },
    /// `xi^{a^pm}_{i,m}` with `a` in `{1, 2}`.
    Xi { a: u8, plus: bool, i: usize, m: i64 },
}

impl Gen {
    /// Generator type: 0 for `xi^0`, `a` for `xi^{a^pm}`; `None` for the vacuum.
    pub fn kind(&self) -> Option<u8> {
        match self {
            Gen::Vac => None,
            Gen::Xi0 { .. } => Some(0),
            Gen::Xi { a, .. } => Some(*a),
        }
    }

    pub fn node(&self) -> Option<usize> {
        match self {
            Gen::Vac => None,
            Gen::Xi0 { i, .. } | Gen::Xi { i, .. } => Some(*i),
        }
    }

    pub fn residue(&self) -> Option<i64> {
        match self {
            Gen::Vac => None,
            Gen::Xi0 { m, .. } | Gen::Xi { m, .. } => Some(*m),
        }
    }

    fn sign(&self) -> i64 {
        match self {
            Gen::Xi { plus: false, .. } => -1,
            _ => 1,
        }
    }

    /// The image under `m -> m + s` (mod `p`).
    pub fn shifted(&self, s: i64, p: i64) -> Gen {
        match *self {
            Gen::Vac => Gen::Vac,
            Gen::Xi0 { i, m } => Gen::Xi0 { i, m: (m + s).rem_euclid(p) },
            Gen::Xi { a, plus, i, m } => Gen::Xi { a, plus, i, m: (m + s).rem_euclid(p) },
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Vac => write!(f, "1"),
            Gen::Xi0 { i, m } => write!(f, "xi0[{},{}]", i + 1, m),
            Gen::Xi { a, plus, i, m } => {
                write!(f, "xi{}{}[{},{}]", a, if *plus { "+" } else { "-" }, i + 1, m)
            }
        }
    }
}

/// The vacuum followed by every generator, in a fixed order.
pub fn generators(ctx: &RootUnityCtx) -> Vec<Gen> {
    let mut out = vec![Gen::Vac];
    for i in 0..ctx.rank() {
        for m in 0..ctx.pp() {
            out.push(Gen::Xi0 { i, m });
        }
    }
    for a in 1..=2u8 {
        for plus in [true, false] {
            for i in 0..ctx.rank() {
                for m in 0..ctx.pp() {
                    out.push(Gen::Xi { a, plus, i, m });
                }
            }
        }
    }
    out
}

/// A finite combination of generators with scalar coefficients.
#[derive(Clone, Debug, Default)]
pub struct DerivedGen {
    terms: BTreeMap<Gen, CycloScalar>,
}

impl DerivedGen {
    pub fn add(&mut self, g: Gen, c: CycloScalar) {
        let sum = match self.terms.remove(&g) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(g, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Gen, &CycloScalar)> {
        self.terms.iter()
    }

    /// `h_{i,k} = sum_s zeta^{k s} xi^0_{i,s}`.
    pub fn h(ctx: &RootUnityCtx, i: usize, k: i64) -> DerivedGen {
        let field = CycloField::get(ctx.p);
        let mut d = DerivedGen::default();
        for s in 0..ctx.pp() {
            d.add(Gen::Xi0 { i, m: s }, field.zeta_pow(k * s));
        }
        d
    }

    /// `xi~^0_{i,m} = xi^0_{i,m-r_i} - xi^0_{i,m+r_i}`.
    pub fn xi_tilde(ctx: &RootUnityCtx, i: usize, m: i64) -> DerivedGen {
        let field = CycloField::get(ctx.p);
        let ri = ctx.r_i(i);
        let mut d = DerivedGen::default();
        d.add(Gen::Xi0 { i, m: ctx.md(m - ri) }, field.one());
        d.add(Gen::Xi0 { i, m: ctx.md(m + ri) }, -&field.one());
        d
    }
}

/// An element of `W (x) W ((z))` for the generator span `W`.
#[derive(Clone, Debug, Default)]
pub struct TensorElem {
    terms: BTreeMap<(Gen, Gen), TruncSeries>,
}

impl TensorElem {
    pub fn basis(l: Gen, r: Gen, field: &'static CycloField) -> TensorElem {
        let mut t = TensorElem::default();
        t.add(l, r, TruncSeries::one(field));
        t
    }

    pub fn add(&mut self, l: Gen, r: Gen, f: TruncSeries) {
        let sum = match self.terms.remove(&(l, r)) {
            Some(old) => old.add(&f),
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert((l, r), sum);
        }
    }

    pub fn get(&self, l: Gen, r: Gen) -> Option<&TruncSeries> {
        self.terms.get(&(l, r))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Gen, Gen), &TruncSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficientwise comparison; on mismatch names the basis pair and
    /// the first differing exponent.
    pub fn compare(&self, o: &TensorElem, field: &'static CycloField) -> Result<usize, String> {
        let zero = TruncSeries::exact_zero(field);
        let mut n = 0;
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(o.terms.keys()).collect();
        for k in keys {
            let x = self.terms.get(k).unwrap_or(&zero);
            let y = o.terms.get(k).unwrap_or(&zero);
            match x.compare(y) {
                Ok(c) => n += c,
                Err(e) => return Err(format!("{} (x) {}: first mismatch at z^{e}", k.0, k.1)),
            }
        }
        Ok(n)
    }
}

/// `c z^k` as an exact series.
fn mono(field: &'static CycloField, k: i64, c: i64) -> TruncSeries {
    TruncSeries::monomial(field, k, field.from_int(c))
}

/// `S(z)(left (x) right)` with `left = xi^b_{j,n}` and `right = xi^a_{i,m}`.
pub fn s_apply(t: &TauTuple, sc: &StructureConstants, left: Gen, right: Gen) -> TensorElem {
    let field = t.field();
    let mut out = TensorElem::basis(left, right, field);
    let (Some(b), Some(a)) = (left.kind(), right.kind()) else {
        return out;
    };
    let (j, n) = (left.node().unwrap(), left.residue().unwrap());
    let (i, m) = (right.node().unwrap(), right.residue().unwrap());
    let big_a = |x: u8, y: u8, i: usize, j: usize, m: i64, n: i64| sc.get(ConstKind::a(x, y), i, j, m, n);
    match (b, a) {
        (0, 0) => {
            let c = mono(field, -2, big_a(0, 0, i, j, m, n) - big_a(0, 0, j, i, n, m));
            let f = c
                .add(&t.get(0, 0, i, j, m, n).negate_var())
                .sub(t.get(0, 0, j, i, n, m));
            out.add(Gen::Vac, Gen::Vac, f);
        }
        (0, a) => {
            let eps = right.sign();
            let pole = mono(field, -1, eps * (big_a(a, 0, i, j, m, n) - big_a(0, a, j, i, n, m)));
            let reg = t.get(a, 0, i, j, m, n).negate_var().add(t.get(0, a, j, i, n, m));
            let f = if eps > 0 { pole.sub(&reg) } else { pole.add(&reg) };
            out.add(Gen::Vac, right, f);
        }
        (b, 0) => {
            let eps = left.sign();
            let pole = mono(field, -1, -eps * (big_a(0, b, i, j, m, n) - big_a(b, 0, j, i, n, m)));
            let reg = t.get(0, b, i, j, m, n).negate_var().add(t.get(b, 0, j, i, n, m));
            let f = if eps > 0 { pole.add(&reg) } else { pole.sub(&reg) };
            out.add(left, Gen::Vac, f);
        }
        (b, a) => {
            let e = left.sign() * right.sign();
            let x = -e * big_a(a, b, i, j, m, n);
            let y = e * big_a(b, a, j, i, n, m);
            let mut sign = if x.rem_euclid(2) == 1 { -1 } else { 1 };
            if a == 2 && b == 2 {
                sign = -sign;
            }
            let lhs = t.get(a, b, i, j, m, n).negate_var();
            let rhs = t.get(b, a, j, i, n, m);
            let prod = if e > 0 {
                lhs.inv().expect("tau entries are invertible").mul(rhs)
            } else {
                lhs.mul(&rhs.inv().expect("tau entries are invertible"))
            };
            let f = mono(field, x + y, sign).mul(&prod);
            out = TensorElem::default();
            out.add(left, right, f);
        }
    }
    out
}

/// `S(z)` with every image of a basis pair cached.
pub struct SOperator<'a> {
    t: &'a TauTuple,
    sc: StructureConstants,
    gens: Vec<Gen>,
    index: BTreeMap<Gen, usize>,
    images: Vec<OnceLock<TensorElem>>,
}

impl<'a> SOperator<'a> {
    pub fn new(t: &'a TauTuple) -> Self {
        let sc = StructureConstants::build(t.ctx());
        let gens = generators(t.ctx());
        let index = gens.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let images = (0..gens.len() * gens.len()).map(|_| OnceLock::new()).collect();
        SOperator { t, sc, gens, index, images }
    }

    pub fn tau(&self) -> &TauTuple {
        self.t
    }

    pub fn ctx(&self) -> &RootUnityCtx {
        self.t.ctx()
    }

    pub fn field(&self) -> &'static CycloField {
        self.t.field()
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    pub(crate) fn pair_index(&self, l: Gen, r: Gen) -> usize {
        self.index[&l] * self.gens.len() + self.index[&r]
    }

    pub fn image(&self, l: Gen, r: Gen) -> &TensorElem {
        self.images[self.pair_index(l, r)].get_or_init(|| s_apply(self.t, &self.sc, l, r))
    }

    /// `S(z)` applied to an arbitrary element, by linearity.
    pub fn apply(&self, v: &TensorElem) -> TensorElem {
        let mut out = TensorElem::default();
        for ((l, r), c) in v.terms() {
            for ((x, y), f) in self.image(*l, *r).terms() {
                out.add(*x, *y, f.mul(c));
            }
        }
        out
    }

    /// `S^{21}(-z) = flip . S(-z) . flip`, applied by linearity.
    pub fn apply_flipped_negated(&self, v: &TensorElem) -> TensorElem {
        let mut out = TensorElem::default();
        for ((l, r), c) in v.terms() {
            for ((x, y), f) in self.image(*r, *l).terms() {
                out.add(*y, *x, f.negate_var().mul(c));
            }
        }
        out
    }
}

/// `S(z) S^{21}(-z) = 1` on every basis pair.
pub fn check_unitarity(op: &SOperator) -> Check {
    let field = op.field();
    let gens = op.generators();
    let pairs: Vec<(Gen, Gen)> = gens.iter().flat_map(|l| gens.iter().map(move |r| (*l, *r))).collect();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(l, r)| {
            let v = TensorElem::basis(l, r, field);
            let w = op.apply(&op.apply_flipped_negated(&v));
            w.compare(&v, field).err().map(|e| format!("{l} (x) {r}: {e}"))
        })
        .collect();
    Check::from_failures(SUITE, "unitarity", op.ctx().name(), pairs.len(), &failures)
}

/// The image of a shifted pair is the shifted image, for every shift.
pub fn check_shift_equivariance(op: &SOperator) -> Check {
    let field = op.field();
    let p = op.ctx().pp();
    let gens = op.generators();
    let mut failures = Vec::new();
    let mut count = 0;
    for &l in gens {
        for &r in gens {
            let base = op.image(l, r);
            for s in 1..p {
                count += 1;
                let mut moved = TensorElem::default();
                for ((x, y), f) in base.terms() {
                    moved.add(x.shifted(s, p), y.shifted(s, p), f.clone());
                }
                let direct = op.image(l.shifted(s, p), r.shifted(s, p));
                if let Err(e) = direct.compare(&moved, field) {
                    failures.push(format!("{l} (x) {r}, shift {s}: {e}"));
                }
            }
        }
    }
    Check::from_failures(SUITE, "shift equivariance", op.ctx().name(), count, &failures)
}

/// `S(z)(h_{i,p_i m} (x) u) = h_{i,p_i m} (x) u` for the identity tuple,
/// one check per `(i, m)` listing every generator `u` that fails.
pub fn check_h_trivial(ctx: &RootUnityCtx, trunc: i64) -> Vec<Check> {
    let t = TauTuple::identity(ctx, trunc);
    let op = SOperator::new(&t);
    let field = op.field();
    let mut out = Vec::new();
    for i in 0..ctx.rank() {
        let pi = ctx.p_i[i];
        for m in 0..ctx.pp() {
            let h = DerivedGen::h(ctx, i, pi * m);
            let mut failures = Vec::new();
            for &u in op.generators() {
                let mut v = TensorElem::default();
                for (g, c) in h.terms() {
                    v.add(*g, u, TruncSeries::constant(c.clone()));
                }
                if let Err(e) = op.apply(&v).compare(&v, field) {
                    failures.push(format!("u = {u}: {e}"));
                }
            }
            let params = format!("{} i={} m={}", ctx.name(), i + 1, m);
            out.push(Check::from_failures(SUITE, "h-triviality", params, op.generators().len(), &failures));
        }
    }
    out
}

/// The `xi~^0` commutator coefficient: the fourfold `A^{0,0}` difference
/// over the shifts `+-r_i`, `+-r_j` equals
/// `<(q_i^{a_ij} - q_i^{-a_ij})(q^{-2rl} - 1) q^{n-m}>`.
pub fn check_xi_tilde_identity(ctx: &RootUnityCtx) -> Check {
    let sc = StructureConstants::build(ctx);
    let rl = ctx.rl();
    let mut failures = Vec::new();
    let mut count = 0;
    for i in 0..ctx.rank() {
        for j in 0..ctx.rank() {
            let (ri, rj) = (ctx.r_i(i), ctx.r_i(j));
            let aij = ctx.a(i, j);
            let factor = &(&ctx.qi_pow(i, aij) - &ctx.qi_pow(i, -aij))
                * &(&LaurentPoly::q_pow(-2 * rl) - &LaurentPoly::constant(1));
            for m in 0..ctx.pp() {
                for n in 0..ctx.pp() {
                    count += 1;
                    let a = |dm: i64, dn: i64| sc.get(ConstKind::A00, i, j, m + dm, n + dn);
                    let lhs = a(-ri, -rj) - a(-ri, rj) - a(ri, -rj) + a(ri, rj);
                    let rhs = ctx.br(&factor.shift(n - m));
                    if lhs != rhs {
                        failures.push(format!("i={} j={} m={m} n={n}: {lhs} vs {rhs}", i + 1, j + 1));
                    }
                }
            }
        }
    }
    Check::from_failures(SUITE, "xi-tilde commutator", ctx.name(), count, &failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_context, CartanType};

    fn a1() -> RootUnityCtx {
        build_context(CartanType::A, 1, 7, 1).unwrap()
    }

    #[test]
    fn vacuum_and_worked_images() {
        let ctx = a1();
        let t = TauTuple::identity(&ctx, 4);
        let op = SOperator::new(&t);
        let f = op.field();
        let u = Gen::Xi0 { i: 0, m: 3 };
        let img = op.image(Gen::Vac, u);
        assert_eq!(img.len(), 1);
        assert!(img.get(Gen::Vac, u).unwrap().compare(&TruncSeries::one(f)).is_ok());

        for m in 0..7 {
            let e = Gen::Xi { a: 2, plus: true, i: 0, m };
            let img = op.image(e, e);
            assert_eq!(img.len(), 1);
            let c = img.get(e, e).unwrap();
            assert!(c.compare(&TruncSeries::constant(-&f.one())).is_ok(), "{c}");
        }

        let x = Gen::Xi0 { i: 0, m: 0 };
        let img = op.image(x, x);
        assert_eq!(img.len(), 1);
    }

    #[test]
    fn unitarity_and_shift() {
        let ctx = a1();
        for t in [TauTuple::canonical(&ctx, 5), TauTuple::perturbed(&ctx, 5, 3)] {
            let op = SOperator::new(&t);
            let c = check_unitarity(&op);
            assert!(c.passed(), "{}", c.detail);
            let c = check_shift_equivariance(&op);
            assert!(c.passed(), "{}", c.detail);
        }
    }

    #[test]
    fn h_trivial_small() {
        let ctx = a1();
        for c in check_h_trivial(&ctx, 3) {
            assert!(c.passed(), "{}: {}", c.params, c.detail);
        }
    }

    #[test]
    fn xi_tilde_identity() {
        for (ty, rank, p, l) in [(CartanType::A, 1, 7, 1), (CartanType::B, 2, 9, 2), (CartanType::G, 2, 7, 0)] {
            let ctx = build_context(ty, rank, p, l).unwrap();
            let c = check_xi_tilde_identity(&ctx);
            assert!(c.passed(), "{}", c.detail);
        }
    }
}
