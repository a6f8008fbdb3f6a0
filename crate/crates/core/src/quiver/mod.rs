//! The quiver `Q` with its `Z_p`-action, the loop set `L`, the Gram matrix
//! of the Heisenberg factor, and the consistency of all three with the
//! structure constants.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::cartan::{ConstKind, RootUnityCtx, StructureConstants};
use crate::exact::{CycloField, CycloScalar, LaurentPoly};
use crate::report::Check;

const SUITE: &str = "quiver";
const DFT_SUITE: &str = "dft";

/// The vertex `p_{i,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub node: usize,
    pub res: i64,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p[{},{}]", self.node + 1, self.res)
    }
}

/// Predicate-backed quiver: `p_{i,m} -> p_{j,n}` iff
/// `r_i a_ij + n - m = 0 (mod p)`.
#[derive(Clone, Debug)]
pub struct Quiver {
    rank: usize,
    p: i64,
    /// `r_i a_ij`, row-major.
    weight: Vec<i64>,
}

impl Quiver {
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.rank).flat_map(move |node| (0..self.p).map(move |res| Vertex { node, res }))
    }

    pub fn vertex(&self, node: usize, res: i64) -> Vertex {
        Vertex {
            node,
            res: res.rem_euclid(self.p),
        }
    }

    pub fn len(&self) -> usize {
        self.rank * self.p as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn has_arrow(&self, u: Vertex, v: Vertex) -> bool {
        (self.weight[u.node * self.rank + v.node] + v.res - u.res).rem_euclid(self.p) == 0
    }

    /// `|u -> v|` as an integer.
    pub fn count(&self, u: Vertex, v: Vertex) -> i64 {
        self.has_arrow(u, v) as i64
    }

    /// `s . p_{i,m} = p_{i,m+s}`.
    pub fn act(&self, s: i64, v: Vertex) -> Vertex {
        self.vertex(v.node, v.res + s)
    }

    pub fn arrows(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in self.vertices() {
                if self.has_arrow(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn out_degree(&self, u: Vertex) -> usize {
        self.vertices().filter(|v| self.has_arrow(u, *v)).count()
    }

    /// The arrow set is stable under every shift, and out-degrees do not
    /// depend on the residue.
    pub fn check_equivariance(&self, params: &str) -> Check {
        let mut failures = Vec::new();
        let mut n = 0;
        for s in 1..self.p {
            for u in self.vertices() {
                for v in self.vertices() {
                    n += 1;
                    if self.has_arrow(u, v) != self.has_arrow(self.act(s, u), self.act(s, v)) {
                        failures.push(format!("shift {s} moves {u} -> {v}"));
                    }
                }
            }
        }
        for node in 0..self.rank {
            let d0 = self.out_degree(self.vertex(node, 0));
            for res in 1..self.p {
                n += 1;
                let d = self.out_degree(self.vertex(node, res));
                if d != d0 {
                    failures.push(format!("out-degree of {} is {d}, not {d0}", self.vertex(node, res)));
                }
            }
        }
        Check::from_failures(SUITE, "equivariance", params, n, &failures)
    }
}

pub fn build_quiver(ctx: &RootUnityCtx) -> Quiver {
    let rank = ctx.rank();
    let weight = (0..rank * rank)
        .map(|k| ctx.r_i(k / rank) * ctx.a(k / rank, k % rank))
        .collect();
    Quiver {
        rank,
        p: ctx.pp(),
        weight,
    }
}

/// Directed cycles, each listed from its first vertex; the closing edge
/// runs from the last vertex back to the first.
#[derive(Clone, Debug, Default)]
pub struct LoopSet {
    pub loops: Vec<Vec<Vertex>>,
}

impl LoopSet {
    pub fn len(&self) -> usize {
        self.loops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }
}

/// Rotates a cycle so that its smallest vertex comes first.
fn canonical(cycle: &[Vertex]) -> Vec<Vertex> {
    let k = (0..cycle.len()).min_by_key(|&k| cycle[k]).unwrap_or(0);
    cycle[k..].iter().chain(&cycle[..k]).copied().collect()
}

/// Builds `L` and checks that each of its edges is an arrow of `Q`.
///
/// For `a_ij < 0` the Serre loop walks down
/// `p_{i,m - r_i a_ij}, p_{i,m - r_i a_ij - 2 r_i}, ..., p_{i,m + r_i a_ij}`,
/// steps to `p_{j,m}` and closes.  For every `i` the second kind walks
/// `p_{i,m}` up to `p_{i,m + 2 r_i (p_i - 1)}` and then descends by `2 r_i`
/// back to the start.
pub fn build_loops(ctx: &RootUnityCtx) -> (LoopSet, Check) {
    let q = build_quiver(ctx);
    let p = ctx.pp();
    let mut seen = BTreeSet::new();
    let mut set = LoopSet::default();
    let mut push = |cycle: Vec<Vertex>| {
        if seen.insert(canonical(&cycle)) {
            set.loops.push(cycle);
        }
    };
    for i in 0..ctx.rank() {
        let ri = ctx.r_i(i);
        for j in 0..ctx.rank() {
            let aij = ctx.a(i, j);
            if i == j || aij >= 0 {
                continue;
            }
            for m in 0..p {
                let mut cycle: Vec<Vertex> = (0..=-aij)
                    .map(|k| q.vertex(i, m - ri * aij - 2 * ri * k))
                    .collect();
                cycle.push(q.vertex(j, m));
                push(cycle);
            }
        }
        let pi = ctx.p_i[i];
        for m in 0..p {
            let mut cycle = vec![q.vertex(i, m)];
            cycle.extend((1..pi).rev().map(|k| q.vertex(i, m + 2 * ri * k)));
            push(cycle);
        }
    }
    let mut failures = Vec::new();
    let mut n = 0;
    for cycle in &set.loops {
        for k in 0..cycle.len() {
            let (u, v) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            n += 1;
            if !q.has_arrow(u, v) {
                let shown: Vec<String> = cycle.iter().map(ToString::to_string).collect();
                failures.push(format!("edge {u} -> {v} of loop ({}) is not an arrow", shown.join(" ")));
            }
        }
    }
    let check = Check::from_failures(SUITE, "loops-in-quiver", ctx.name(), n, &failures);
    (set, check)
}

/// The Gram matrix of the Heisenberg factor, indexed by `(i, s)` with
/// `s` running over the multiples of `p_i` in `Z_p`.
#[derive(Clone, Debug)]
pub struct HeisenbergGram {
    pub labels: Vec<(usize, i64)>,
    pub entries: Vec<Vec<CycloScalar>>,
}

impl HeisenbergGram {
    pub fn get(&self, u: (usize, i64), v: (usize, i64)) -> Option<&CycloScalar> {
        let a = self.labels.iter().position(|l| *l == u)?;
        let b = self.labels.iter().position(|l| *l == v)?;
        Some(&self.entries[a][b])
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.labels.len();
        (0..k).all(|a| (0..a).all(|b| self.entries[a][b] == self.entries[b][a]))
    }
}

fn gram_labels(ctx: &RootUnityCtx) -> Vec<(usize, i64)> {
    let p = ctx.pp();
    let mut out = Vec::new();
    for i in 0..ctx.rank() {
        let pi = ctx.p_i[i];
        out.extend((0..p / pi).map(|k| (i, k * pi)));
    }
    out
}

/// `p [a_ij]_{zeta_i^s} [r l / r_j]_{zeta_j^t} zeta^{s r l}` when
/// `s + t = 0 (mod p)`, zero otherwise.
fn gram_entry(ctx: &RootUnityCtx, i: usize, s: i64, j: usize, t: i64) -> CycloScalar {
    let field = CycloField::get(ctx.p);
    if ctx.md(s + t) != 0 {
        return field.zero();
    }
    // The quantum integers are written in q with q_i = q^{r_i}, so
    // evaluating at q = zeta^s gives the base zeta_i^s.
    let a = ctx.qint_a(i, j).eval_zeta_pow(ctx.p, s);
    let l = ctx.qint_level(j).eval_zeta_pow(ctx.p, t);
    let phase = field.zeta_pow(s * ctx.rl());
    (&(&a * &l) * &phase).mul_int(ctx.pp())
}

/// Builds the Gram matrix and checks its symmetry.
pub fn heisenberg_gram(ctx: &RootUnityCtx) -> (HeisenbergGram, Check) {
    let labels = gram_labels(ctx);
    let entries: Vec<Vec<CycloScalar>> = labels
        .iter()
        .map(|&(i, s)| labels.iter().map(|&(j, t)| gram_entry(ctx, i, s, j, t)).collect())
        .collect();
    let gram = HeisenbergGram { labels, entries };
    let mut failures = Vec::new();
    let k = gram.labels.len();
    for a in 0..k {
        for b in 0..=a {
            if gram.entries[a][b] != gram.entries[b][a] {
                failures.push(format!("entries at {:?}, {:?} differ", gram.labels[a], gram.labels[b]));
            }
        }
    }
    let check = Check::from_failures(SUITE, "gram-symmetry", ctx.name(), k * (k + 1) / 2, &failures);
    (gram, check)
}

/// Discrete Fourier transform of the `xi^0` constants against the Gram
/// matrix, together with the vanishing sums that make `h` commute with
/// the difference fields `xi_{j,n-r_j} - xi_{j,n+r_j}`.
pub fn check_dft(ctx: &RootUnityCtx) -> Vec<Check> {
    let sc = StructureConstants::build(ctx);
    let field = CycloField::get(ctx.p);
    let p = ctx.pp();
    let labels = gram_labels(ctx);
    let a00 = |i, j, m, n| sc.get(ConstKind::A00, i, j, m, n);

    let pairs: Vec<((usize, i64), (usize, i64))> = labels
        .iter()
        .flat_map(|&u| labels.iter().map(move |&v| (u, v)))
        .collect();
    let mut failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&((i, s), (j, t))| {
            let mut fwd = vec![0i64; p as usize];
            let mut rev = vec![0i64; p as usize];
            for u in 0..p {
                for v in 0..p {
                    let k = ctx.md(s * u + t * v) as usize;
                    fwd[k] += a00(i, j, u, v);
                    rev[k] += a00(j, i, v, u);
                }
            }
            let want = gram_entry(ctx, i, s, j, t);
            let fwd = eval_character(field, &fwd);
            let rev = eval_character(field, &rev);
            if fwd != want || rev != want {
                Some(format!(
                    "(i,s)=({},{s}) (j,t)=({},{t}): transform {fwd} / {rev}, Gram {want}",
                    i + 1,
                    j + 1
                ))
            } else {
                None
            }
        })
        .collect();
    failures.sort();
    let mut out = vec![Check::from_failures(DFT_SUITE, "gram-transform", ctx.name(), pairs.len(), &failures)];

    let mut failures = Vec::new();
    let mut n = 0;
    for &(i, s) in &labels {
        for j in 0..ctx.rank() {
            let rj = ctx.r_i(j);
            for m in 0..p {
                n += 1;
                let mut fwd = vec![0i64; p as usize];
                let mut rev = vec![0i64; p as usize];
                for u in 0..p {
                    let k = ctx.md(s * u) as usize;
                    fwd[k] += a00(i, j, u, m - rj) - a00(i, j, u, m + rj);
                    rev[k] += a00(j, i, m - rj, u) - a00(j, i, m + rj, u);
                }
                let (fwd, rev) = (eval_character(field, &fwd), eval_character(field, &rev));
                if !fwd.is_zero() || !rev.is_zero() {
                    failures.push(format!("(i,s)=({},{s}) against ({},{m}): {fwd} / {rev}", i + 1, j + 1));
                }
            }
        }
    }
    out.push(Check::from_failures(DFT_SUITE, "h-commutes-with-difference", ctx.name(), n, &failures));
    out
}

/// `sum_k c_k zeta^k`.
fn eval_character(field: &'static CycloField, c: &[i64]) -> CycloScalar {
    let mut acc = field.zero();
    for (k, &x) in c.iter().enumerate() {
        if x != 0 {
            acc = &acc + &field.zeta_pow(k as i64).mul_int(x);
        }
    }
    acc
}

/// Matches arrow counts of `Q` against the structure constants.
///
/// The level acts on vertices through the shift by `r l`.  For each pair
/// `u = p_{i,m}`, `v = p_{j,n}` the following agree:
/// * `|u -> v|` and `A22_{ijmn}`;
/// * the signed fourfold counts of the `xi^0` difference relations, the
///   corresponding combinations of `A00`, `A01`/`A10` and `A02`/`A20`, and
///   the closed-form brackets;
/// * the exponents of the quiver braiding and of the braiding with
///   trivial tau on corresponding generator pairs.
pub fn check_arrow_counts(ctx: &RootUnityCtx) -> Vec<Check> {
    let q = build_quiver(ctx);
    let sc = StructureConstants::build(ctx);
    let rl = ctx.rl();
    let c = |u: Vertex, v: Vertex| q.count(u, v);
    let sh = |s: i64, v: Vertex| q.act(s, v);
    let k = |kind, i, j, m, n| sc.get(kind, i, j, m, n);
    let verts: Vec<Vertex> = q.vertices().collect();
    let pairs: Vec<(Vertex, Vertex)> = verts
        .iter()
        .flat_map(|&u| verts.iter().map(move |&v| (u, v)))
        .collect();

    let run = |name: &str, f: &(dyn Fn(Vertex, Vertex) -> Option<String> + Sync)| {
        let mut failures: Vec<String> = pairs.par_iter().filter_map(|&(u, v)| f(u, v)).collect();
        failures.sort();
        Check::from_failures(SUITE, name, ctx.name(), pairs.len(), &failures)
    };
    let mismatch = |u: Vertex, v: Vertex, what: &str, vals: &[i64]| {
        if vals.windows(2).all(|w| w[0] == w[1]) {
            None
        } else {
            Some(format!("{u}, {v}: {what} {vals:?}"))
        }
    };

    let mut out = Vec::new();
    out.push(run("arrows-vs-A22", &|u, v| {
        mismatch(u, v, "arrow/A22", &[c(u, v), k(ConstKind::A22, u.node, v.node, u.res, v.res)])
    }));

    // (q_i^a - q_i^{-a}) q^e with a = a_ij.
    let diff = |u: Vertex, v: Vertex, extra: LaurentPoly| {
        let a = ctx.a(u.node, v.node);
        let f = &(&ctx.qi_pow(u.node, a) - &ctx.qi_pow(u.node, -a)) * &extra;
        ctx.br(&f.shift(v.res - u.res))
    };
    let qp = LaurentPoly::q_pow;
    // Signed fourfold counts of the xi^0 relations.
    let four_first = |u: Vertex, v: Vertex| c(sh(2 * rl, u), v) - c(v, sh(2 * rl, u)) + c(v, u) - c(u, v);
    let four_second = |u: Vertex, v: Vertex| c(sh(2 * rl, v), u) - c(u, sh(2 * rl, v)) + c(u, v) - c(v, u);

    out.push(run("xi0-xi0-counts", &|u, v| {
        let (i, j, m, n) = (u.node, v.node, u.res, v.res);
        let (ri, rj) = (ctx.r_i(i), ctx.r_i(j));
        let comb = |kind, i2, j2, swap: bool| {
            let mut acc = 0;
            for (si, sgn_i) in [(-ri, 1), (ri, -1)] {
                for (sj, sgn_j) in [(-rj, 1), (rj, -1)] {
                    let val = if swap {
                        k(kind, i2, j2, n + sj, m + si)
                    } else {
                        k(kind, i2, j2, m + si, n + sj)
                    };
                    acc += sgn_i * sgn_j * val;
                }
            }
            acc
        };
        let first = [
            four_first(u, v),
            comb(ConstKind::A00, i, j, false),
            diff(u, v, &qp(-2 * rl) - &qp(0)),
        ];
        let second = [
            four_second(u, v),
            comb(ConstKind::A00, j, i, true),
            diff(u, v, &qp(0) - &qp(2 * rl)),
        ];
        mismatch(u, v, "first", &first).or_else(|| mismatch(u, v, "second", &second))
    }));

    // Relations of xi~^0_{i,m} against xi^{a}_{j,n} for a = 1, 2.
    let two_term = |kind_fwd, kind_rev, u: Vertex, v: Vertex| {
        let (i, j, m, n) = (u.node, v.node, u.res, v.res);
        let ri = ctx.r_i(i);
        (
            k(kind_fwd, i, j, m - ri, n) - k(kind_fwd, i, j, m + ri, n),
            k(kind_rev, j, i, n, m - ri) - k(kind_rev, j, i, n, m + ri),
        )
    };
    out.push(run("xi0-xi1-counts", &|u, v| {
        let (f, r) = two_term(ConstKind::A01, ConstKind::A10, u, v);
        let first = [four_first(u, v), f, diff(u, v, &qp(-2 * rl) - &qp(0))];
        let second = [four_second(u, v), r, diff(u, v, &qp(0) - &qp(2 * rl))];
        mismatch(u, v, "first", &first).or_else(|| mismatch(u, v, "second", &second))
    }));
    out.push(run("xi0-xi2-counts", &|u, v| {
        let (f, r) = two_term(ConstKind::A02, ConstKind::A20, u, v);
        let first = [c(sh(rl, u), v) - c(v, sh(rl, u)), f, diff(u, v, qp(-rl))];
        let second = [c(u, sh(rl, v)) - c(sh(rl, v), u), r, diff(u, v, qp(rl))];
        mismatch(u, v, "first", &first).or_else(|| mismatch(u, v, "second", &second))
    }));

    // Braiding exponents.  `v = p_{j,n}` is the left tensor factor and
    // `u = p_{i,m}` the right one, as in S(z)(y_j (x) y_i).
    out.push(run("braiding-exponents", &|u, v| {
        let (i, j, m, n) = (u.node, v.node, u.res, v.res);
        let rj = ctx.r_i(j);
        let (iu, jv) = (u, v);
        // Left factor is the difference field at `v`.
        let left_diff = |kind_a0, kind_0a| {
            k(kind_a0, i, j, m, n - rj) - k(kind_0a, j, i, n - rj, m) - k(kind_a0, i, j, m, n + rj)
                + k(kind_0a, j, i, n + rj, m)
        };
        let s00 = {
            let mut acc = 0;
            for (sj, gj) in [(-rj, 1), (rj, -1)] {
                for (si, gi) in [(-ctx.r_i(i), 1), (ctx.r_i(i), -1)] {
                    acc += gj * gi * (k(ConstKind::A00, i, j, m + si, n + sj) - k(ConstKind::A00, j, i, n + sj, m + si));
                }
            }
            acc
        };
        let q00 = c(sh(2 * rl, iu), jv) - c(jv, sh(2 * rl, iu)) - c(sh(2 * rl, jv), iu) + c(iu, sh(2 * rl, jv))
            - 2 * c(iu, jv)
            + 2 * c(jv, iu);
        let q01 = c(iu, sh(2 * rl, jv)) - c(sh(2 * rl, jv), iu) - c(jv, sh(2 * rl, iu)) + c(sh(2 * rl, iu), jv)
            - 2 * c(iu, jv)
            + 2 * c(jv, iu);
        let q02 = c(iu, sh(rl, jv)) - c(sh(rl, jv), iu) + c(jv, sh(rl, iu)) - c(sh(rl, iu), jv);
        let q11 = (
            c(iu, sh(2 * rl, jv)) + c(sh(2 * rl, iu), jv) - 2 * c(iu, jv),
            -(c(jv, sh(2 * rl, iu)) + c(sh(2 * rl, jv), iu) - 2 * c(jv, iu)),
        );
        let q21 = (
            c(sh(rl, iu), jv) - c(iu, sh(rl, jv)),
            c(sh(rl, jv), iu) - c(jv, sh(rl, iu)),
        );
        let q22 = (-c(iu, jv), c(jv, iu));
        // S with trivial tau on xi^b_{j,n} (x) xi^a_{i,m}: powers
        // (-z)^{-e A^{ab}_{ijmn}} z^{e A^{ba}_{jinm}}.
        let s_diag = |ab, ba| (-k(ab, i, j, m, n), k(ba, j, i, n, m));
        let s11 = s_diag(ConstKind::A11, ConstKind::A11);
        let s21 = s_diag(ConstKind::A12, ConstKind::A21);
        let s22 = s_diag(ConstKind::A22, ConstKind::A22);
        mismatch(u, v, "(0,0)", &[q00, s00])
            .or_else(|| mismatch(u, v, "(0,1)", &[q01, left_diff(ConstKind::A10, ConstKind::A01)]))
            .or_else(|| mismatch(u, v, "(0,2)", &[q02, left_diff(ConstKind::A20, ConstKind::A02)]))
            .or_else(|| mismatch(u, v, "(1,1)", &[q11.0, s11.0]).or(mismatch(u, v, "(1,1)'", &[q11.1, s11.1])))
            .or_else(|| mismatch(u, v, "(2,1)", &[q21.0, s21.0]).or(mismatch(u, v, "(2,1)'", &[q21.1, s21.1])))
            .or_else(|| mismatch(u, v, "(2,2)", &[q22.0, s22.0]).or(mismatch(u, v, "(2,2)'", &[q22.1, s22.1])))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_context, CartanType};

    fn ctx(t: CartanType, rank: usize, p: u32, l: i64) -> RootUnityCtx {
        build_context(t, rank, p, l).unwrap()
    }

    #[test]
    fn a1_quiver_is_a_cycle() {
        let c = ctx(CartanType::A, 1, 7, 1);
        let q = build_quiver(&c);
        assert_eq!(q.len(), 7);
        for m in 0..7 {
            let u = q.vertex(0, m);
            assert_eq!(q.out_degree(u), 1);
            assert!(q.has_arrow(u, q.vertex(0, m - 2)));
            assert!(!q.has_arrow(u, u));
        }
        assert!(q.check_equivariance(&c.name()).passed());
    }

    #[test]
    fn worked_loops() {
        let c = ctx(CartanType::A, 1, 7, 1);
        let (set, check) = build_loops(&c);
        assert!(check.passed(), "{}", check.detail);
        assert_eq!(set.len(), 1);
        let cycle = &set.loops[0];
        assert_eq!(cycle.len(), 7);
        assert_eq!(cycle[1].res, 5);

        let c = ctx(CartanType::A, 2, 7, 1);
        let (set, check) = build_loops(&c);
        assert!(check.passed(), "{}", check.detail);
        let q = build_quiver(&c);
        let serre = [q.vertex(0, 1), q.vertex(0, 6), q.vertex(1, 0)];
        assert!(set.loops.iter().any(|l| canonical(l) == canonical(&serre)));
    }

    #[test]
    fn gram_worked_value_and_support() {
        let c = ctx(CartanType::A, 1, 7, 1);
        let (g, check) = heisenberg_gram(&c);
        assert!(check.passed());
        assert_eq!(g.get((0, 0), (0, 0)).unwrap(), &CycloField::get(7).from_int(14));

        let c = ctx(CartanType::B, 2, 9, 2);
        let (g, _) = heisenberg_gram(&c);
        assert!(g.is_symmetric());
        for (a, &(_, s)) in g.labels.iter().enumerate() {
            for (b, &(_, t)) in g.labels.iter().enumerate() {
                if (s + t) % 9 != 0 {
                    assert!(g.entries[a][b].is_zero());
                }
            }
        }

        let c = ctx(CartanType::A, 2, 8, 0);
        let (g, _) = heisenberg_gram(&c);
        assert!(g.entries.iter().flatten().all(CycloScalar::is_zero));
    }

    #[test]
    fn dft_and_counts() {
        for c in [
            ctx(CartanType::A, 1, 7, 1),
            ctx(CartanType::A, 2, 8, 1),
            ctx(CartanType::B, 2, 9, 2),
            ctx(CartanType::G, 2, 7, 2),
        ] {
            for ch in check_dft(&c).into_iter().chain(check_arrow_counts(&c)) {
                assert!(ch.passed(), "{} {}: {}", ch.name, ch.params, ch.detail);
            }
        }
    }
}
