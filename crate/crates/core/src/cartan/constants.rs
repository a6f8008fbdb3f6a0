use rayon::prelude::*;

use super::RootUnityCtx;
use crate::exact::LaurentPoly;
use crate::report::Check;

/// The thirteen families of integer structure constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstKind {
    A00,
    A22,
    A01,
    A10,
    A02,
    A20,
    B11Plus,
    B11Minus,
    B12,
    B21,
    A11,
    A21,
    A12,
}

impl ConstKind {
    pub const ALL: [ConstKind; 13] = [
        ConstKind::A00,
        ConstKind::A22,
        ConstKind::A01,
        ConstKind::A10,
        ConstKind::A02,
        ConstKind::A20,
        ConstKind::B11Plus,
        ConstKind::B11Minus,
        ConstKind::B12,
        ConstKind::B21,
        ConstKind::A11,
        ConstKind::A21,
        ConstKind::A12,
    ];

    /// The `A^{a,b}` family for generator types `a, b` in `{0, 1, 2}`.
    pub fn a(a: u8, b: u8) -> ConstKind {
        match (a, b) {
            (0, 0) => ConstKind::A00,
            (0, 1) => ConstKind::A01,
            (1, 0) => ConstKind::A10,
            (0, 2) => ConstKind::A02,
            (2, 0) => ConstKind::A20,
            (1, 1) => ConstKind::A11,
            (1, 2) => ConstKind::A12,
            (2, 1) => ConstKind::A21,
            (2, 2) => ConstKind::A22,
            _ => panic!("generator types are 0, 1, 2"),
        }
    }

    fn index(self) -> usize {
        ConstKind::ALL.iter().position(|k| *k == self).unwrap()
    }
}

impl RootUnityCtx {
    /// The Laurent polynomial whose `<.>_p` defines the constant
    /// `kind_{ijmn}`, written directly from its closed form.
    pub fn const_poly(&self, kind: ConstKind, i: usize, j: usize, m: i64, n: i64) -> LaurentPoly {
        let rl = self.rl();
        let d = n - m;
        let aij = self.a(i, j);
        let q = LaurentPoly::q_pow;
        let lvl = || &q(-rl) - &q(rl);
        match kind {
            ConstKind::A00 => &(&self.qint_a(i, j) * &self.qint_level(j)) * &q(d - rl),
            ConstKind::A22 => self.qi_pow(i, aij).shift(d),
            ConstKind::A01 => &(&self.qint_a(i, j) * &lvl()) * &q(d - rl),
            ConstKind::A10 => &(&self.qint_a(j, i) * &(-&lvl())) * &q(d - rl),
            ConstKind::A02 => self.qint_a(i, j).shift(d - rl),
            ConstKind::A20 => self.qint_a(j, i).shift(d - rl),
            ConstKind::B11Plus => &self.qi_pow(i, aij) * &(&q(d) - &q(d - 2 * rl)),
            ConstKind::B11Minus => &self.qi_pow(i, -aij) * &(&q(d) - &q(d - 2 * rl)),
            ConstKind::B12 => self.qi_pow(i, aij).shift(d - rl),
            ConstKind::B21 => self.qi_pow(i, -aij).shift(d - rl),
            ConstKind::A11 => {
                let sq = (&q(rl) - &q(-rl)).pow(2);
                -&(&self.qi_pow(i, aij) * &sq).shift(d)
            }
            ConstKind::A21 => (&self.qi_pow(i, aij) * &lvl()).shift(d),
            ConstKind::A12 => -&(&self.qi_pow(i, aij) * &lvl()).shift(d),
        }
    }

    /// `kind_{ijmn}` straight from its closed form.
    pub fn struct_const(&self, kind: ConstKind, i: usize, j: usize, m: i64, n: i64) -> i64 {
        self.br(&self.const_poly(kind, i, j, m, n))
    }
}

/// Tabulated structure constants for one context.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    rank: usize,
    p: usize,
    table: Vec<i64>,
}

impl StructureConstants {
    pub fn build(ctx: &RootUnityCtx) -> Self {
        let rank = ctx.rank();
        let p = ctx.p as usize;
        let per_kind = rank * rank * p * p;
        let table: Vec<i64> = (0..ConstKind::ALL.len() * per_kind)
            .into_par_iter()
            .map(|idx| {
                let kind = ConstKind::ALL[idx / per_kind];
                let rest = idx % per_kind;
                let (i, rest) = (rest / (rank * p * p), rest % (rank * p * p));
                let (j, rest) = (rest / (p * p), rest % (p * p));
                let (m, n) = (rest / p, rest % p);
                ctx.struct_const(kind, i, j, m as i64, n as i64)
            })
            .collect();
        StructureConstants { rank, p, table }
    }

    /// `kind_{ijmn}` with `m, n` read modulo `p`.
    pub fn get(&self, kind: ConstKind, i: usize, j: usize, m: i64, n: i64) -> i64 {
        let p = self.p as i64;
        let (m, n) = (m.rem_euclid(p) as usize, n.rem_euclid(p) as usize);
        let per_kind = self.rank * self.rank * self.p * self.p;
        self.table[kind.index() * per_kind + ((i * self.rank + j) * self.p + m) * self.p + n]
    }
}

/// Verifies the two defining identities among the constants, the sign
/// relation `A21 = -A12`, and invariance under the diagonal shift
/// `(m, n) -> (m + s, n + s)` for every family.
pub fn check_const_identities(ctx: &RootUnityCtx, sc: &StructureConstants) -> Vec<Check> {
    let params = ctx.name();
    let rank = ctx.rank();
    let p = ctx.pp();
    let mut tuples = Vec::new();
    for i in 0..rank {
        for j in 0..rank {
            for m in 0..p {
                for n in 0..p {
                    tuples.push((i, j, m, n));
                }
            }
        }
    }
    let mut a11 = Vec::new();
    let mut a21 = Vec::new();
    let mut sign = Vec::new();
    let mut shift = Vec::new();
    for &(i, j, m, n) in &tuples {
        let lhs = sc.get(ConstKind::A11, i, j, m, n);
        let rhs = sc.get(ConstKind::B11Plus, i, j, m, n) + sc.get(ConstKind::B11Minus, j, i, n, m);
        if lhs != rhs {
            a11.push(format!("(i,j,m,n)=({i},{j},{m},{n}): {lhs} vs {rhs}"));
        }
        let lhs = sc.get(ConstKind::A21, i, j, m, n);
        let rhs = sc.get(ConstKind::B12, i, j, m, n) - sc.get(ConstKind::B21, j, i, n, m);
        if lhs != rhs {
            a21.push(format!("(i,j,m,n)=({i},{j},{m},{n}): {lhs} vs {rhs}"));
        }
        if sc.get(ConstKind::A21, i, j, m, n) + sc.get(ConstKind::A12, i, j, m, n) != 0 {
            sign.push(format!("(i,j,m,n)=({i},{j},{m},{n})"));
        }
        for kind in ConstKind::ALL {
            let base = sc.get(kind, i, j, m, n);
            for s in 1..p {
                if sc.get(kind, i, j, m + s, n + s) != base {
                    shift.push(format!("{kind:?} (i,j,m,n)=({i},{j},{m},{n}) s={s}"));
                }
            }
        }
    }
    let count = tuples.len();
    vec![
        Check::from_failures("constants", "A11=B11+ + B11-", params.clone(), count, &a11),
        Check::from_failures("constants", "A21=B12 - B21", params.clone(), count, &a21),
        Check::from_failures("constants", "A21+A12=0", params.clone(), count, &sign),
        Check::from_failures("constants", "shift_invariance", params, count * 13, &shift),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_context, CartanType};

    #[test]
    fn a1_worked_values() {
        let ctx = build_context(CartanType::A, 1, 7, 1).unwrap();
        assert_eq!(ctx.struct_const(ConstKind::A00, 0, 0, 0, 0), 1);
        for m in 0..7 {
            for n in 0..7 {
                let expect = i64::from((n - m + 2i64).rem_euclid(7) == 0);
                assert_eq!(ctx.struct_const(ConstKind::A22, 0, 0, m, n), expect);
            }
            assert_eq!(ctx.struct_const(ConstKind::A11, 0, 0, m, m), -1);
        }
    }

    #[test]
    fn table_matches_direct() {
        let ctx = build_context(CartanType::B, 2, 9, 2).unwrap();
        let sc = StructureConstants::build(&ctx);
        for kind in ConstKind::ALL {
            for (i, j, m, n) in [(0, 1, 3, 5), (1, 0, 8, 0), (1, 1, 2, 2)] {
                assert_eq!(sc.get(kind, i, j, m, n), ctx.struct_const(kind, i, j, m, n));
            }
        }
    }

    #[test]
    fn identities_hold() {
        for (t, n, p, l) in [(CartanType::A, 1, 7, 1), (CartanType::G, 2, 7, 2), (CartanType::A, 2, 8, 3)] {
            let ctx = build_context(t, n, p, l).unwrap();
            let sc = StructureConstants::build(&ctx);
            for c in check_const_identities(&ctx, &sc) {
                assert!(c.passed(), "{c:?}");
            }
        }
    }

    #[test]
    fn level_zero_kills_level_factors() {
        let ctx = build_context(CartanType::A, 2, 7, 0).unwrap();
        for kind in [ConstKind::A00, ConstKind::A01, ConstKind::A10, ConstKind::A11, ConstKind::A21] {
            for m in 0..7 {
                assert_eq!(ctx.struct_const(kind, 0, 1, 0, m), 0, "{kind:?}");
            }
        }
    }
}
