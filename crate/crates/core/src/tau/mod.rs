//! The group of tau-tuples: canonical member, perturbations, group law
//! and the constraint families defining membership.

mod kernel;

pub use kernel::{check_kernel_equivalence, check_zeta10, kernel_first, kernel_second, kernel_product};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cartan::RootUnityCtx;
use crate::error::{Error, Result};
use crate::exact::{CycloField, LaurentPoly, Rational};
use crate::report::Check;
use crate::series::{cap_c, residue_counts, ThetaTable, TruncSeries};

/// `true` when the `(a, b)` entry combines additively.
pub fn is_additive(a: u8, b: u8) -> bool {
    a == 0 || b == 0
}

/// A tuple `tau^{a,b}_{ijmn}(z)` for `a, b in {0,1,2}`, all nodes and all
/// residues, truncated after `z^N`.
#[derive(Clone, Debug)]
pub struct TauTuple {
    ctx: RootUnityCtx,
    trunc: i64,
    entries: Vec<TruncSeries>,
}

/// How the exponent polynomial of each entry is turned into a series.
enum Flavor<'a> {
    Canonical(&'a ThetaTable),
    Potentials(&'a [TruncSeries]),
}

impl TauTuple {
    fn index(ctx: &RootUnityCtx, a: u8, b: u8, i: usize, j: usize, m: i64, n: i64) -> usize {
        let rank = ctx.rank();
        let p = ctx.p as usize;
        let (m, n) = (ctx.md(m) as usize, ctx.md(n) as usize);
        ((((a as usize * 3 + b as usize) * rank + i) * rank + j) * p + m) * p + n
    }

    fn from_fn<F>(ctx: &RootUnityCtx, trunc: i64, f: F) -> TauTuple
    where
        F: Fn(u8, u8, usize, usize, i64, i64) -> TruncSeries + Sync,
    {
        let rank = ctx.rank();
        let p = ctx.p as usize;
        let total = 9 * rank * rank * p * p;
        let entries = (0..total)
            .into_par_iter()
            .map(|idx| {
                let n = idx % p;
                let rest = idx / p;
                let m = rest % p;
                let rest = rest / p;
                let j = rest % rank;
                let rest = rest / rank;
                let i = rest % rank;
                let ab = rest / rank;
                f((ab / 3) as u8, (ab % 3) as u8, i, j, m as i64, n as i64)
            })
            .collect();
        TauTuple {
            ctx: ctx.clone(),
            trunc,
            entries,
        }
    }

    pub fn ctx(&self) -> &RootUnityCtx {
        &self.ctx
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn field(&self) -> &'static CycloField {
        CycloField::get(self.ctx.p)
    }

    /// `tau^{a,b}_{ijmn}`, with `m, n` read modulo `p`.
    pub fn get(&self, a: u8, b: u8, i: usize, j: usize, m: i64, n: i64) -> &TruncSeries {
        &self.entries[Self::index(&self.ctx, a, b, i, j, m, n)]
    }

    /// The identity element.
    pub fn identity(ctx: &RootUnityCtx, trunc: i64) -> TauTuple {
        let field = CycloField::get(ctx.p);
        Self::from_fn(ctx, trunc, |a, b, _, _, _, _| {
            if is_additive(a, b) {
                TruncSeries::exact_zero(field)
            } else {
                TruncSeries::one(field)
            }
        })
    }

    /// The canonical tuple built from `theta_s`, `C` and `E`.
    pub fn canonical(ctx: &RootUnityCtx, trunc: i64) -> TauTuple {
        let table = ThetaTable::new(ctx.p, trunc);
        Self::build(ctx, trunc, Flavor::Canonical(&table))
    }

    /// The tuple obtained from the canonical formulas after replacing every
    /// `theta_s` by an arbitrary potential `psi_s` in `z C[[z]]` and dropping
    /// all constant prefactors.
    pub fn from_potentials(ctx: &RootUnityCtx, trunc: i64, psi: &[TruncSeries]) -> Result<TauTuple> {
        if psi.len() != ctx.p as usize {
            return Err(Error::InvalidArgument(format!("need {} potentials, got {}", ctx.p, psi.len())));
        }
        if psi.iter().any(|s| s.valuation() < 1) {
            return Err(Error::InvalidArgument("potentials must vanish at z = 0".into()));
        }
        Ok(Self::build(ctx, trunc, Flavor::Potentials(psi)))
    }

    /// Seeded random potentials with small rational coefficients.
    pub fn random_potentials(ctx: &RootUnityCtx, trunc: i64, seed: u64) -> Vec<TruncSeries> {
        let field = CycloField::get(ctx.p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..ctx.p)
            .map(|_| {
                let coeffs: Vec<Rational> = (0..trunc)
                    .map(|_| Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into()))
                    .collect();
                TruncSeries::from_rationals(field, 1, &coeffs, trunc + 1)
            })
            .collect()
    }

    /// `canonical * from_potentials(random)`, a non-canonical member.
    pub fn perturbed(ctx: &RootUnityCtx, trunc: i64, seed: u64) -> TauTuple {
        let psi = Self::random_potentials(ctx, trunc, seed);
        let pert = Self::from_potentials(ctx, trunc, &psi).expect("valid potentials");
        Self::canonical(ctx, trunc).mul(&pert).expect("same context")
    }

    fn build(ctx: &RootUnityCtx, trunc: i64, flavor: Flavor<'_>) -> TauTuple {
        let field = CycloField::get(ctx.p);
        let weighted = |g: &LaurentPoly, derivs: u32| -> TruncSeries {
            match &flavor {
                Flavor::Canonical(t) => t.weighted(g, derivs),
                Flavor::Potentials(psi) => {
                    let mut acc = TruncSeries::zero(field, trunc + 1 - derivs as i64);
                    for (s, c) in residue_counts(g, ctx.p).into_iter().enumerate() {
                        if c != 0 {
                            let mut t = psi[s].truncate(trunc + 1);
                            for _ in 0..derivs {
                                t = t.derive();
                            }
                            acc = acc.add(&t.scale(&field.from_int(c)));
                        }
                    }
                    acc
                }
            }
        };
        Self::from_fn(ctx, trunc, |a, b, i, j, m, n| {
            let shape = EntryShape::of(ctx, a, b, i, j, m, n);
            match (a, b) {
                (0, 0) => weighted(&shape.exponent, 2).neg(),
                _ if is_additive(a, b) => weighted(&shape.exponent, 1),
                _ => {
                    let series = weighted(&shape.exponent, 0)
                        .exp_capped(trunc + 1)
                        .expect("no constant term");
                    match &flavor {
                        Flavor::Canonical(_) => series.scale(&shape.prefactor(ctx, field)),
                        Flavor::Potentials(_) => series,
                    }
                }
            }
        })
    }

    fn check_compatible(&self, o: &TauTuple) -> Result<()> {
        if self.ctx != o.ctx || self.trunc != o.trunc {
            return Err(Error::InvalidArgument(format!(
                "context mismatch: {} N={} vs {} N={}",
                self.ctx.name(),
                self.trunc,
                o.ctx.name(),
                o.trunc
            )));
        }
        Ok(())
    }

    fn zip(&self, o: &TauTuple, f: impl Fn(bool, &TruncSeries, &TruncSeries) -> TruncSeries + Sync) -> TauTuple {
        Self::from_fn(&self.ctx, self.trunc, |a, b, i, j, m, n| {
            f(is_additive(a, b), self.get(a, b, i, j, m, n), o.get(a, b, i, j, m, n))
        })
    }

    /// The group product.
    pub fn mul(&self, o: &TauTuple) -> Result<TauTuple> {
        self.check_compatible(o)?;
        Ok(self.zip(o, |add, x, y| if add { x.add(y) } else { x.mul(y) }))
    }

    /// The group inverse; fails if a multiplicative entry is zero.
    pub fn inv(&self) -> Result<TauTuple> {
        let ctx = &self.ctx;
        for a in 1..=2u8 {
            for b in 1..=2u8 {
                for i in 0..ctx.rank() {
                    for j in 0..ctx.rank() {
                        for m in 0..ctx.pp() {
                            for n in 0..ctx.pp() {
                                if self.get(a, b, i, j, m, n).is_zero() {
                                    return Err(Error::DivisionByZero);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Self::from_fn(ctx, self.trunc, |a, b, i, j, m, n| {
            let x = self.get(a, b, i, j, m, n);
            if is_additive(a, b) {
                x.neg()
            } else {
                x.inv().expect("checked nonzero")
            }
        }))
    }

    /// Entrywise comparison on the common known range; the first
    /// disagreement is reported as `(a, b, i, j, m, n, exponent)`.
    pub fn compare(&self, o: &TauTuple) -> std::result::Result<usize, String> {
        self.check_compatible(o).map_err(|e| e.to_string())?;
        let mut count = 0;
        for (k, (x, y)) in self.entries.iter().zip(&o.entries).enumerate() {
            match x.compare(y) {
                Ok(c) => count += c,
                Err(e) => return Err(format!("entry #{k}: first mismatch at z^{e}")),
            }
        }
        Ok(count)
    }
}

/// Group operations in one entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauOp {
    Mul,
    Inv,
    Identity,
}

/// `x * y`, `x^{-1}`, or the identity of `x`'s context (`y` ignored for
/// the unary operations).
pub fn tau_group_op(x: &TauTuple, y: &TauTuple, op: TauOp) -> Result<TauTuple> {
    match op {
        TauOp::Mul => x.mul(y),
        TauOp::Inv => x.inv(),
        TauOp::Identity => Ok(TauTuple::identity(&x.ctx, x.trunc)),
    }
}

/// Exponent polynomial and constant data of one canonical entry.
pub(crate) struct EntryShape {
    /// `g` with the entry built from `<g q^{-s}>`.
    pub exponent: LaurentPoly,
    /// Polynomial whose bracket gives the sign exponent (multiplicative only).
    sign: Option<LaurentPoly>,
    /// Power of `zeta` in the prefactor.
    zeta_exp: i64,
}

impl EntryShape {
    pub fn of(ctx: &RootUnityCtx, a: u8, b: u8, i: usize, j: usize, m: i64, n: i64) -> EntryShape {
        let q = LaurentPoly::q_pow;
        let rl = ctx.rl();
        let aij = ctx.a(i, j);
        let base = ctx.qi_pow(i, -aij).shift(n - m);
        let up = || &q(rl) - &q(-rl);
        let down = || &q(-rl) - &q(rl);
        let dual = |f: LaurentPoly| Some((&ctx.qi_pow(i, aij) * &f).shift(n - m));
        let (exponent, sign, zeta_exp) = match (a, b) {
            (0, 0) => (&(&base * &ctx.qint_level(j)) * &ctx.qint_level(i), None, 0),
            (0, 1) => (&(&base * &ctx.qint_level(i)) * &down(), None, 0),
            (1, 0) => (&(&base * &ctx.qint_level(j)) * &up(), None, 0),
            (0, 2) => (&base * &ctx.qint_level(i), None, 0),
            (2, 0) => (&base * &ctx.qint_level(j), None, 0),
            (1, 1) => (&base * &up().pow(2), dual(up().pow(2)), 0),
            (1, 2) => (&base * &down(), dual(down()), 0),
            (2, 1) => (&base * &up(), dual(down()), -2 * rl),
            (2, 2) => (-&base, dual(LaurentPoly::one()), n),
            _ => unreachable!("generator types are 0, 1, 2"),
        };
        EntryShape {
            exponent,
            sign,
            zeta_exp,
        }
    }

    /// `(-1)^{<sign>} zeta^{zeta_exp} C(exponent)`.
    fn prefactor(&self, ctx: &RootUnityCtx, field: &'static CycloField) -> crate::exact::CycloScalar {
        let sign = self.sign.as_ref().map(|s| ctx.br(s)).unwrap_or(0);
        let c = &cap_c(ctx.p, &self.exponent) * &field.zeta_pow(self.zeta_exp);
        if sign.rem_euclid(2) == 1 {
            -c
        } else {
            c
        }
    }
}

fn agree(x: &TruncSeries, y: &TruncSeries) -> std::result::Result<usize, i64> {
    x.compare(y)
}

/// The ten constraint families of the tau group plus invertibility of the
/// multiplicative entries and the shift behaviour of every entry.
pub fn check_membership(t: &TauTuple) -> Vec<Check> {
    let ctx = t.ctx();
    let rank = ctx.rank();
    let p = ctx.pp();
    let rl = ctx.rl();
    let params = format!("{} N={}", ctx.name(), t.trunc());
    let g = |a, b, i, j, m, n| t.get(a, b, i, j, m, n);
    let tuples: Vec<(usize, usize, i64, i64)> = (0..rank)
        .flat_map(|i| (0..rank).flat_map(move |j| (0..p).flat_map(move |m| (0..p).map(move |n| (i, j, m, n)))))
        .collect();

    type Rule<'a> = Box<dyn Fn(usize, usize, i64, i64) -> Vec<(TruncSeries, TruncSeries)> + Sync + 'a>;
    let ratio = |x: &TruncSeries, y: &TruncSeries| x.mul(&y.inv().expect("invertible entry"));
    let rules: Vec<(&str, Rule)> = vec![
        ("tau01=tau02(n-rl)-tau02(n+rl)", Box::new(|i, j, m, n| {
            vec![(g(0, 1, i, j, m, n).clone(), g(0, 2, i, j, m, n - rl).sub(g(0, 2, i, j, m, n + rl)))]
        })),
        ("tau10=tau20(m-rl)-tau20(m+rl)", Box::new(|i, j, m, n| {
            vec![(g(1, 0, i, j, m, n).clone(), g(2, 0, i, j, m - rl, n).sub(g(2, 0, i, j, m + rl, n)))]
        })),
        ("tau11=tau12(n-rl)/tau12(n+rl)", Box::new(|i, j, m, n| {
            vec![(g(1, 1, i, j, m, n).clone(), ratio(g(1, 2, i, j, m, n - rl), g(1, 2, i, j, m, n + rl)))]
        })),
        ("tau11=tau21(m-rl)/tau21(m+rl)", Box::new(|i, j, m, n| {
            vec![(g(1, 1, i, j, m, n).clone(), ratio(g(2, 1, i, j, m - rl, n), g(2, 1, i, j, m + rl, n)))]
        })),
        ("tau21=tau22(n-rl)/tau22(n+rl)", Box::new(|i, j, m, n| {
            vec![(g(2, 1, i, j, m, n).clone(), ratio(g(2, 2, i, j, m, n - rl), g(2, 2, i, j, m, n + rl)))]
        })),
        ("tau12=tau22(m-rl)/tau22(m+rl)", Box::new(|i, j, m, n| {
            vec![(g(1, 2, i, j, m, n).clone(), ratio(g(2, 2, i, j, m - rl, n), g(2, 2, i, j, m + rl, n)))]
        })),
        ("d tau01=tau00(n+rj)-tau00(n-rj)", Box::new(|i, j, m, n| {
            let rj = ctx.r_i(j);
            vec![(g(0, 1, i, j, m, n).derive(), g(0, 0, i, j, m, n + rj).sub(g(0, 0, i, j, m, n - rj)))]
        })),
        ("d tau10=tau00(m+ri)-tau00(m-ri)", Box::new(|i, j, m, n| {
            let ri = ctx.r_i(i);
            vec![(g(1, 0, i, j, m, n).derive(), g(0, 0, i, j, m + ri, n).sub(g(0, 0, i, j, m - ri, n)))]
        })),
        ("d tau^{a,1}=(tau^{a,0}(n+rj)-tau^{a,0}(n-rj))tau^{a,1}", Box::new(|i, j, m, n| {
            let rj = ctx.r_i(j);
            [1u8, 2]
                .iter()
                .map(|&a| {
                    let x = g(a, 1, i, j, m, n);
                    (x.derive(), g(a, 0, i, j, m, n + rj).sub(g(a, 0, i, j, m, n - rj)).mul(x))
                })
                .collect()
        })),
        ("d tau^{1,a}=(tau^{0,a}(m+ri)-tau^{0,a}(m-ri))tau^{1,a}", Box::new(|i, j, m, n| {
            let ri = ctx.r_i(i);
            [1u8, 2]
                .iter()
                .map(|&a| {
                    let x = g(1, a, i, j, m, n);
                    (x.derive(), g(0, a, i, j, m + ri, n).sub(g(0, a, i, j, m - ri, n)).mul(x))
                })
                .collect()
        })),
    ];

    let mut out: Vec<Check> = rules
        .par_iter()
        .map(|(name, rule)| {
            let mut failures = Vec::new();
            let mut compared = 0usize;
            for &(i, j, m, n) in &tuples {
                for (lhs, rhs) in rule(i, j, m, n) {
                    match agree(&lhs, &rhs) {
                        Ok(c) => compared += c,
                        Err(e) => failures.push(format!("(i,j,m,n)=({i},{j},{m},{n}) first mismatch at z^{e}")),
                    }
                }
            }
            let mut c = Check::from_failures("tau", name, params.clone(), tuples.len(), &failures);
            if failures.is_empty() {
                c.detail = format!("{} tuples, {compared} coefficients", tuples.len());
            }
            c
        })
        .collect();

    let mut bad = Vec::new();
    for &(i, j, m, n) in &tuples {
        for a in 1..=2u8 {
            for b in 1..=2u8 {
                let x = g(a, b, i, j, m, n);
                if x.valuation() != 0 || x.coeff(0).map(|c| c.is_zero()).unwrap_or(true) {
                    bad.push(format!("tau^{{{a},{b}}} (i,j,m,n)=({i},{j},{m},{n})"));
                }
            }
        }
    }
    out.push(Check::from_failures("tau", "invertible entries", params.clone(), tuples.len() * 4, &bad));
    out
}

/// `tau^{a,b}_{i,j,m+s,n+s} = tau^{a,b}_{ijmn}` for every entry except
/// `tau^{2,2}`, which is expected to pick up `zeta^{weight s}` (weight 1 for
/// the canonical tuple, 0 for the identity).
pub fn check_shift_covariance(t: &TauTuple, weight: i64) -> Check {
    let params = format!("{} N={} weight={weight}", t.ctx().name(), t.trunc());
    let ctx = t.ctx();
    let field = t.field();
    let p = ctx.pp();
    let mut bad = Vec::new();
    let mut count = 0;
    for a in 0..3u8 {
        for b in 0..3u8 {
            for i in 0..ctx.rank() {
                for j in 0..ctx.rank() {
                    for m in 0..p {
                        for n in 0..p {
                            let base = t.get(a, b, i, j, m, n);
                            for s in 1..p {
                                count += 1;
                                let shifted = t.get(a, b, i, j, m + s, n + s);
                                let expect = if (a, b) == (2, 2) {
                                    base.scale(&field.zeta_pow(weight * s))
                                } else {
                                    base.clone()
                                };
                                if shifted.compare(&expect).is_err() {
                                    bad.push(format!("tau^{{{a},{b}}} (i,j,m,n)=({i},{j},{m},{n}) s={s}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Check::from_failures("tau", "shift covariance", params, count, &bad)
}

/// Inverse, identity and associativity laws on the canonical tuple and two
/// perturbed members drawn from `seeds`.
pub fn check_group_law(ctx: &RootUnityCtx, trunc: i64, seeds: [u64; 2]) -> Vec<Check> {
    let params = format!("{} N={trunc} seeds={},{}", ctx.name(), seeds[0], seeds[1]);
    let e = TauTuple::identity(ctx, trunc);
    let members = [
        ("canonical", TauTuple::canonical(ctx, trunc)),
        ("perturbed#1", TauTuple::perturbed(ctx, trunc, seeds[0])),
        ("perturbed#2", TauTuple::perturbed(ctx, trunc, seeds[1])),
    ];
    let law = |name: &str, lhs: Result<TauTuple>, rhs: Result<TauTuple>| {
        match lhs.and_then(|l| rhs.map(|r| l.compare(&r))) {
            Ok(Ok(n)) => Check::pass("tau", name, params.clone(), format!("{n} coefficients agree")),
            Ok(Err(d)) => Check::fail("tau", name, params.clone(), d),
            Err(err) => Check::fail("tau", name, params.clone(), err.to_string()),
        }
    };
    let mut out = Vec::new();
    for (label, t) in &members {
        out.push(law(&format!("inverse ({label})"), t.inv().and_then(|i| t.mul(&i)), Ok(e.clone())));
        out.push(law(&format!("identity ({label})"), e.mul(t), Ok(t.clone())));
    }
    let [(_, a), (_, b), (_, c)] = &members;
    for (name, x, y, z) in [("associativity (c,p1,p2)", a, b, c), ("associativity (p2,c,p1)", c, a, b)] {
        let lhs = x.mul(y).and_then(|xy| xy.mul(z));
        let rhs = y.mul(z).and_then(|yz| x.mul(&yz));
        out.push(law(name, lhs, rhs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_context, CartanType};

    fn all_pass(checks: &[Check]) {
        for c in checks {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn identity_is_member() {
        let ctx = build_context(CartanType::A, 1, 7, 1).unwrap();
        let e = TauTuple::identity(&ctx, 8);
        all_pass(&check_membership(&e));
        assert!(check_shift_covariance(&e, 0).passed());
    }

    #[test]
    fn canonical_is_member() {
        for (t, r, p, l) in [(CartanType::A, 1, 7, 1), (CartanType::B, 2, 9, 2), (CartanType::G, 2, 7, 0)] {
            let ctx = build_context(t, r, p, l).unwrap();
            let t = TauTuple::canonical(&ctx, 8);
            all_pass(&check_membership(&t));
            assert!(check_shift_covariance(&t, 1).passed());
            assert!(!check_shift_covariance(&t, 0).passed());
        }
    }

    #[test]
    fn canonical_worked_values() {
        let ctx = build_context(CartanType::A, 1, 7, 0).unwrap();
        let t = TauTuple::canonical(&ctx, 10);
        for m in 0..7 {
            for n in 0..7 {
                assert!(t.get(0, 0, 0, 0, m, n).is_zero());
            }
        }
        let ctx = build_context(CartanType::A, 2, 8, 1).unwrap();
        let t = TauTuple::canonical(&ctx, 6);
        let field = t.field();
        for i in 0..2 {
            for m in 0..8 {
                let sign = if ctx.br(&ctx.qi_pow(i, 2)) % 2 == 0 { 1 } else { -1 };
                let expect = &(&field.from_int(sign) * &field.zeta_pow(m)) * &cap_c(8, &-ctx.qi_pow(i, -2));
                assert_eq!(t.get(2, 2, i, i, m, m).coeff(0).unwrap(), expect);
            }
        }
    }

    #[test]
    fn group_laws() {
        let ctx = build_context(CartanType::A, 2, 7, 1).unwrap();
        let n = 6;
        let t = TauTuple::canonical(&ctx, n);
        let u = TauTuple::perturbed(&ctx, n, 1);
        let v = TauTuple::perturbed(&ctx, n, 2);
        let e = TauTuple::identity(&ctx, n);
        assert!(e.mul(&t).unwrap().compare(&t).is_ok());
        assert!(t.mul(&t.inv().unwrap()).unwrap().compare(&e).is_ok());
        assert!(t.mul(&u).unwrap().compare(&u.mul(&t).unwrap()).is_ok());
        let l = t.mul(&u).unwrap().mul(&v).unwrap();
        let r = t.mul(&u.mul(&v).unwrap()).unwrap();
        assert!(l.compare(&r).is_ok());
        for (x, w) in [(&u, 1), (&t.inv().unwrap(), -1), (&t.mul(&t).unwrap(), 2)] {
            all_pass(&check_membership(x));
            assert!(check_shift_covariance(x, w).passed());
        }
        all_pass(&check_group_law(&ctx, 5, [3, 4]));
        let other = build_context(CartanType::A, 2, 8, 1).unwrap();
        assert!(t.mul(&TauTuple::identity(&other, n)).is_err());
    }
}
