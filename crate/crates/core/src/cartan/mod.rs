//! Finite-type Cartan data, the root-of-unity context and the integer
//! structure constants obtained from the bracket `<.>_p`.

mod constants;

pub use constants::{check_const_identities, ConstKind, StructureConstants};

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{as_integer, LaurentPoly};
use crate::qcomb::qint;

/// Dynkin type label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            "C" | "c" => Ok(Self::C),
            "D" | "d" => Ok(Self::D),
            "E" | "e" => Ok(Self::E),
            "F" | "f" => Ok(Self::F),
            "G" | "g" => Ok(Self::G),
            other => Err(Error::InvalidArgument(format!("unknown Cartan type {other:?}"))),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Cartan matrix with Bourbaki node numbering, `a_ij = 2(a_i,a_j)/(a_i,a_i)`,
/// together with the symmetrizing integers `r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub label: CartanType,
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
    /// 1 for simply-laced types, 2 for B, C, F and 3 for G.
    pub r: i64,
    /// 1 on short nodes, `r` on long nodes.
    pub r_i: Vec<i64>,
}

impl CartanData {
    pub fn new(label: CartanType, rank: usize) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("no finite type {label}{rank}"));
        let n = rank;
        let valid = match label {
            CartanType::A => n >= 1,
            CartanType::B => n >= 2,
            CartanType::C => n >= 2,
            CartanType::D => n >= 4,
            CartanType::E => (6..=8).contains(&n),
            CartanType::F => n == 4,
            CartanType::G => n == 2,
        };
        if !valid {
            return Err(bad());
        }
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i - 1][j - 1] = aij;
            a[j - 1][i - 1] = aji;
        };
        let (r, r_i): (i64, Vec<i64>) = match label {
            CartanType::A => {
                for i in 1..n {
                    link(i, i + 1, -1, -1);
                }
                (1, vec![1; n])
            }
            CartanType::B => {
                for i in 1..n - 1 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 1, n, -1, -2);
                let mut ri = vec![2; n];
                ri[n - 1] = 1;
                (2, ri)
            }
            CartanType::C => {
                for i in 1..n - 1 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 1, n, -2, -1);
                let mut ri = vec![1; n];
                ri[n - 1] = 2;
                (2, ri)
            }
            CartanType::D => {
                for i in 1..n - 1 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 2, n, -1, -1);
                (1, vec![1; n])
            }
            CartanType::E => {
                link(1, 3, -1, -1);
                link(2, 4, -1, -1);
                for i in 3..n {
                    link(i, i + 1, -1, -1);
                }
                (1, vec![1; n])
            }
            CartanType::F => {
                link(1, 2, -1, -1);
                link(2, 3, -1, -2);
                link(3, 4, -1, -1);
                (2, vec![2, 2, 1, 1])
            }
            CartanType::G => {
                link(1, 2, -3, -1);
                (3, vec![1, 3])
            }
        };
        let data = CartanData {
            label,
            rank,
            matrix: a,
            r,
            r_i,
        };
        data.validate()?;
        Ok(data)
    }

    /// Parses labels such as `A1`, `b2`, `G2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).unwrap_or(s.len()));
        let label: CartanType = head.parse()?;
        let rank: usize = tail
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad Cartan label {s:?}")))?;
        Self::new(label, rank)
    }

    /// Load-time self-check of the defining properties.
    fn validate(&self) -> Result<()> {
        let n = self.rank;
        for i in 0..n {
            if self.matrix[i][i] != 2 {
                return Err(Error::Internal(format!("a_{i}{i} != 2")));
            }
            for j in 0..n {
                if i != j && self.matrix[i][j] > 0 {
                    return Err(Error::Internal(format!("positive off-diagonal a_{i}{j}")));
                }
                if self.r_i[i] * self.matrix[i][j] != self.r_i[j] * self.matrix[j][i] {
                    return Err(Error::Internal(format!("r_i a_ij != r_j a_ji at ({i},{j})")));
                }
            }
            if self.r_i[i] != 1 && self.r_i[i] != self.r {
                return Err(Error::Internal(format!("r_{i} is neither 1 nor r")));
            }
        }
        Ok(())
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }
}

/// How [`bracket`] reads off an integer from a Laurent polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketMode {
    /// Sum of coefficients at exponents divisible by `p`.
    Periodic(u32),
    /// Coefficient of `q^0`.
    ConstantTerm,
}

/// `<f>_p` or `<f>_infinity`; `f` must have integer coefficients.
pub fn bracket(f: &LaurentPoly, mode: BracketMode) -> Result<i64> {
    let mut total = num_bigint::BigInt::zero();
    for (e, c) in f.terms() {
        let c = as_integer(c).ok_or_else(|| {
            Error::InvalidArgument(format!("bracket of non-integral coefficient {c} at q^{e}"))
        })?;
        let hit = match mode {
            BracketMode::Periodic(p) => e.rem_euclid(p as i64) == 0,
            BracketMode::ConstantTerm => e == 0,
        };
        if hit {
            total += c;
        }
    }
    total
        .to_i64()
        .ok_or_else(|| Error::Internal("bracket value exceeds i64".into()))
}

/// Cartan data together with `p`, `l` and the derived `zeta_i`, `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootUnityCtx {
    pub cartan: CartanData,
    pub p: u32,
    /// Level, normalized into `[0, p)`.
    pub level: u32,
    /// `p_i = p / gcd(p, 2 r_i)`, the order of `zeta_i^2`.
    pub p_i: Vec<i64>,
}

impl RootUnityCtx {
    pub fn new(cartan: CartanData, p: u32, level: i64) -> Result<Self> {
        if (p as i64) <= 2 * cartan.r {
            return Err(Error::ConstraintViolation(format!(
                "p = {p} must exceed 2r = {} for type {}",
                2 * cartan.r,
                cartan.name()
            )));
        }
        let level = level.rem_euclid(p as i64) as u32;
        let p_i = cartan
            .r_i
            .iter()
            .map(|ri| p as i64 / (p as i64).gcd(&(2 * ri)))
            .collect();
        Ok(RootUnityCtx {
            cartan,
            p,
            level,
            p_i,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn r(&self) -> i64 {
        self.cartan.r
    }

    pub fn r_i(&self, i: usize) -> i64 {
        self.cartan.r_i[i]
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan.a(i, j)
    }

    /// `r l`, the shift carried by the level.
    pub fn rl(&self) -> i64 {
        self.cartan.r * self.level as i64
    }

    pub fn pp(&self) -> i64 {
        self.p as i64
    }

    /// Residue of `m` in `Z_p`.
    pub fn md(&self, m: i64) -> i64 {
        m.rem_euclid(self.p as i64)
    }

    /// `q_i^k = q^{r_i k}`.
    pub fn qi_pow(&self, i: usize, k: i64) -> LaurentPoly {
        LaurentPoly::q_pow(self.r_i(i) * k)
    }

    /// `[n]_{q_i}` for `n >= 0`.
    pub fn qint_i(&self, n: i64, i: usize) -> LaurentPoly {
        assert!(n >= 0, "quantum integer of negative argument");
        qint(n as u32, self.r_i(i))
    }

    /// `[a_ij]_{q_i}`, read as `-[-a_ij]` when `a_ij < 0`.
    pub fn qint_a(&self, i: usize, j: usize) -> LaurentPoly {
        let a = self.a(i, j);
        if a >= 0 {
            self.qint_i(a, i)
        } else {
            -self.qint_i(-a, i)
        }
    }

    /// `[r l / r_j]_{q_j}`; exact because `r_j` divides `r`.
    pub fn qint_level(&self, j: usize) -> LaurentPoly {
        let rj = self.r_i(j);
        debug_assert_eq!(self.rl() % rj, 0);
        self.qint_i(self.rl() / rj, j)
    }

    /// `<f>_p`.
    pub fn br(&self, f: &LaurentPoly) -> i64 {
        bracket(f, BracketMode::Periodic(self.p)).expect("structure polynomials are integral")
    }

    pub fn name(&self) -> String {
        format!("{} p={} l={}", self.cartan.name(), self.p, self.level)
    }
}

/// Builds a validated context from a type label, rank, `p` and level.
pub fn build_context(label: CartanType, rank: usize, p: u32, level: i64) -> Result<RootUnityCtx> {
    RootUnityCtx::new(CartanData::new(label, rank)?, p, level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        let f = LaurentPoly::from_int_terms([(5, 1), (0, 3), (-10, 1)]);
        assert_eq!(bracket(&f, BracketMode::Periodic(5)).unwrap(), 5);
        let g = LaurentPoly::from_int_terms([(1, 1), (3, 1)]);
        assert_eq!(bracket(&g, BracketMode::Periodic(5)).unwrap(), 0);
        let h = LaurentPoly::from_int_terms([(2, 1), (0, 7), (-1, 1)]);
        assert_eq!(bracket(&h, BracketMode::ConstantTerm).unwrap(), 7);
        let bad = LaurentPoly::monomial(0, crate::exact::rat(1, 2));
        assert!(bracket(&bad, BracketMode::ConstantTerm).is_err());
    }

    #[test]
    fn bracket_is_periodic() {
        let f = LaurentPoly::from_int_terms([(3, 2), (-4, 1), (7, -1)]);
        for p in [5u32, 7, 8] {
            let shifted = f.shift(p as i64);
            assert_eq!(
                bracket(&f, BracketMode::Periodic(p)).unwrap(),
                bracket(&shifted, BracketMode::Periodic(p)).unwrap()
            );
        }
    }

    #[test]
    fn all_types_satisfy_symmetrization() {
        let cases = [
            (CartanType::A, 1),
            (CartanType::A, 4),
            (CartanType::B, 2),
            (CartanType::B, 5),
            (CartanType::C, 3),
            (CartanType::D, 4),
            (CartanType::D, 6),
            (CartanType::E, 6),
            (CartanType::E, 7),
            (CartanType::E, 8),
            (CartanType::F, 4),
            (CartanType::G, 2),
        ];
        for (t, n) in cases {
            let c = CartanData::new(t, n).unwrap();
            assert_eq!(c.matrix.len(), n);
        }
        assert!(CartanData::new(CartanType::G, 3).is_err());
        assert!(CartanData::new(CartanType::D, 3).is_err());
    }

    #[test]
    fn g2_context() {
        let ctx = build_context(CartanType::G, 2, 7, 1).unwrap();
        assert_eq!(ctx.r(), 3);
        assert_eq!(ctx.cartan.r_i, vec![1, 3]);
        assert_eq!(ctx.p_i, vec![7, 7]);
    }

    #[test]
    fn p_bound_enforced() {
        assert!(build_context(CartanType::A, 1, 4, 0).is_ok());
        assert!(matches!(
            build_context(CartanType::A, 1, 2, 0),
            Err(Error::ConstraintViolation(_))
        ));
        assert!(build_context(CartanType::G, 2, 6, 0).is_err());
    }

    #[test]
    fn b2_p_i() {
        let ctx = build_context(CartanType::B, 2, 8, 3).unwrap();
        // Node 1 long (r_1 = 2), node 2 short (r_2 = 1).
        assert_eq!(ctx.p_i, vec![2, 4]);
    }

    #[test]
    fn level_normalized() {
        let ctx = build_context(CartanType::A, 1, 7, 9).unwrap();
        assert_eq!(ctx.level, 2);
    }

    #[test]
    fn parse_labels() {
        assert_eq!(CartanData::parse("G2").unwrap().r, 3);
        assert_eq!(CartanData::parse("b3").unwrap().rank, 3);
        assert!(CartanData::parse("X2").is_err());
        assert!(CartanData::parse("A").is_err());
    }

    #[test]
    fn zeta_i_square_order() {
        // zeta_i^{2 p_i} = 1 and p_i is minimal with that property.
        for (t, n, p) in [(CartanType::B, 2, 9), (CartanType::G, 2, 8), (CartanType::C, 3, 10)] {
            let ctx = build_context(t, n, p, 1).unwrap();
            for i in 0..n {
                let ri = ctx.r_i(i);
                let pi = ctx.p_i[i];
                assert_eq!((2 * ri * pi) % p as i64, 0);
                for k in 1..pi {
                    assert_ne!((2 * ri * k) % p as i64, 0);
                }
            }
        }
    }
}
