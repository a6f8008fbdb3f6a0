//! Compositions, shuffle sets and the factorization of block-increasing
//! permutations through the first block.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::Check;

const SUITE: &str = "symcomb";

/// A permutation of `{1..k}`, stored 0-based: `img[u]` is the image of `u`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(k: usize) -> Perm {
        Perm { img: (0..k).collect() }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Perm> {
        let mut seen = vec![false; img.len()];
        for &x in &img {
            if x >= img.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidArgument(format!("{img:?} is not a permutation")));
            }
        }
        Ok(Perm { img })
    }

    /// Every permutation of `k` letters, in lexicographic order of images.
    pub fn all(k: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(Perm { img: cur.clone() });
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    pub fn len(&self) -> usize {
        self.img.len()
    }

    pub fn is_empty(&self) -> bool {
        self.img.is_empty()
    }

    /// Image of the 0-based letter `u`.
    pub fn at(&self, u: usize) -> usize {
        self.img[u]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    /// `(self o o)(u) = self(o(u))`.
    pub fn compose(&self, o: &Perm) -> Perm {
        Perm {
            img: o.img.iter().map(|&u| self.img[u]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0; self.img.len()];
        for (u, &x) in self.img.iter().enumerate() {
            img[x] = u;
        }
        Perm { img }
    }

    /// `|sigma|`, the number of pairs `u < v` with `sigma(u) > sigma(v)`.
    pub fn inversions(&self) -> usize {
        let p = &self.img;
        (0..p.len())
            .map(|a| (a + 1..p.len()).filter(|&b| p[a] > p[b]).count())
            .sum()
    }

    /// `(-1)^{|sigma|}`.
    pub fn sign(&self) -> i64 {
        if self.inversions() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<String> = self.img.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", one_based.join(" "))
    }
}

/// A composition `(p_1, ..., p_s)` of `k` into positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Composition> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("composition parts must be positive".into()));
        }
        Ok(Composition { parts })
    }

    /// All compositions of `k`, lexicographically.
    pub fn all(k: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition { parts: cur.clone() });
                return;
            }
            for first in 1..=rest {
                cur.push(first);
                rec(rest - first, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k > 0 {
            rec(k, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Partial sums `p^0 = 0, p^1, ..., p^s = k`.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut acc = vec![0];
        for p in &self.parts {
            acc.push(acc.last().unwrap() + p);
        }
        acc
    }

    /// The blocks `[p^{t-1}+1, p^t]` as 0-based half-open ranges.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        self.partial_sums().windows(2).map(|w| w[0]..w[1]).collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The two shuffle sets attached to a composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShuffleKind {
    /// `S_p`: increasing on every block.
    BlockIncreasing,
    /// `S^p`: each block maximum carries the largest value of its block,
    /// and these values decrease from block to block.
    Ridge,
}

fn increasing_on(t: &Perm, blocks: &[std::ops::Range<usize>]) -> bool {
    blocks.iter().all(|b| b.clone().skip(1).all(|u| t.at(u - 1) < t.at(u)))
}

fn is_ridge(t: &Perm, blocks: &[std::ops::Range<usize>]) -> bool {
    let tops: Vec<usize> = blocks.iter().map(|b| t.at(b.end - 1)).collect();
    tops.windows(2).all(|w| w[0] > w[1])
        && blocks.iter().zip(&tops).all(|(b, &top)| b.clone().all(|u| t.at(u) <= top))
}

/// `true` when `t` lies in the requested shuffle set of `p`.
pub fn in_shuffle_set(t: &Perm, p: &Composition, kind: ShuffleKind) -> bool {
    let blocks = p.blocks();
    match kind {
        ShuffleKind::BlockIncreasing => increasing_on(t, &blocks),
        ShuffleKind::Ridge => is_ridge(t, &blocks),
    }
}

/// The shuffle set `S_p` or `S^p` as an explicit list.
pub fn enumerate_shuffles(k: usize, p: &Composition, kind: ShuffleKind) -> Result<Vec<Perm>> {
    if p.total() != k {
        return Err(Error::InvalidArgument(format!("{p} is not a composition of {k}")));
    }
    if k > 8 {
        return Err(Error::InvalidArgument("shuffle enumeration is limited to k <= 8".into()));
    }
    Ok(Perm::all(k).into_iter().filter(|t| in_shuffle_set(t, p, kind)).collect())
}

/// Verifies, for every composition `p` of `k` (with at most `max_parts`
/// parts when given) and every `sigma` in `S_k`, that `(tau, tau') ->
/// tau tau'` is a bijection from the pairs with
/// `tau in S_(p_1, k-p_1)`, `tau'` fixing the first block and increasing
/// on the remaining blocks, `sigma tau(p_1) = k`, `sigma tau tau' in S^p`
/// onto `S_p cap sigma^{-1} S^p`.
pub fn check_sym_gps(k: usize, max_parts: Option<usize>) -> Check {
    let params = match max_parts {
        Some(s) => format!("k={k} parts<={s}"),
        None => format!("k={k}"),
    };
    if k == 0 || k > 6 {
        return Check::skipped(SUITE, "sym-gps bijection", params, "needs 1 <= k <= 6");
    }
    let perms = Perm::all(k);
    let comps: Vec<Composition> = Composition::all(k)
        .into_iter()
        .filter(|c| max_parts.is_none_or(|s| c.parts().len() <= s))
        .collect();
    let cases: Vec<(&Composition, &Perm)> = comps.iter().flat_map(|c| perms.iter().map(move |s| (c, s))).collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(p, sigma)| sym_gps_case(k, p, sigma, &perms).err())
        .collect();
    Check::from_failures(SUITE, "sym-gps bijection", params, cases.len(), &failures)
}

fn sym_gps_case(k: usize, p: &Composition, sigma: &Perm, perms: &[Perm]) -> std::result::Result<(), String> {
    let blocks = p.blocks();
    let p1 = p.parts()[0];
    let two = Composition { parts: if p1 < k { vec![p1, k - p1] } else { vec![k] } };
    let taus: Vec<&Perm> = perms
        .iter()
        .filter(|t| in_shuffle_set(t, &two, ShuffleKind::BlockIncreasing) && sigma.at(t.at(p1 - 1)) == k - 1)
        .collect();
    let primes: Vec<&Perm> = perms
        .iter()
        .filter(|t| (0..p1).all(|u| t.at(u) == u) && increasing_on(t, &blocks[1..]))
        .collect();

    let mut image = BTreeSet::new();
    for tau in &taus {
        for tp in &primes {
            let prod = tau.compose(tp);
            if !in_shuffle_set(&sigma.compose(&prod), p, ShuffleKind::Ridge) {
                continue;
            }
            if !in_shuffle_set(&prod, p, ShuffleKind::BlockIncreasing) {
                return Err(format!("p={p} sigma={sigma}: tau tau' = {prod} not block-increasing"));
            }
            if !image.insert(prod.clone()) {
                return Err(format!("p={p} sigma={sigma}: {prod} has two factorizations"));
            }
        }
    }
    let target: BTreeSet<Perm> = perms
        .iter()
        .filter(|t| {
            in_shuffle_set(t, p, ShuffleKind::BlockIncreasing)
                && in_shuffle_set(&sigma.compose(t), p, ShuffleKind::Ridge)
        })
        .cloned()
        .collect();
    if image != target {
        return Err(format!(
            "p={p} sigma={sigma}: {} products vs {} targets",
            image.len(),
            target.len()
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn worked_shuffle_sets() {
        let s = enumerate_shuffles(3, &comp(&[1, 1, 1]), ShuffleKind::BlockIncreasing).unwrap();
        assert_eq!(s.len(), 6);
        let s = enumerate_shuffles(3, &comp(&[3]), ShuffleKind::BlockIncreasing).unwrap();
        assert_eq!(s, vec![Perm::identity(3)]);
        let s = enumerate_shuffles(3, &comp(&[1, 1, 1]), ShuffleKind::Ridge).unwrap();
        assert_eq!(s, vec![Perm::from_images(vec![2, 1, 0]).unwrap()]);
        assert!(enumerate_shuffles(3, &comp(&[1, 1]), ShuffleKind::Ridge).is_err());
    }

    #[test]
    fn composition_counts() {
        for k in 1..=8 {
            assert_eq!(Composition::all(k).len(), 1 << (k - 1));
        }
    }

    #[test]
    fn multinomial_counts() {
        for k in 1..=7usize {
            let fact = |n: usize| (1..=n).product::<usize>();
            for p in Composition::all(k) {
                let expect = fact(k) / p.parts().iter().map(|&x| fact(x)).product::<usize>();
                let got = enumerate_shuffles(k, &p, ShuffleKind::BlockIncreasing).unwrap().len();
                assert_eq!(got, expect, "{p}");
            }
        }
    }

    #[test]
    fn sym_gps_small() {
        for k in 1..=4 {
            let c = check_sym_gps(k, None);
            assert!(c.passed(), "{}", c.detail);
        }
    }

    proptest! {
        #[test]
        fn inversions_are_a_sign_character(k in 1usize..7, a in 0usize..5040, b in 0usize..5040) {
            let perms = Perm::all(k);
            let x = &perms[a % perms.len()];
            let y = &perms[b % perms.len()];
            prop_assert_eq!(x.compose(y).sign(), x.sign() * y.sign());
            prop_assert_eq!(x.compose(&x.inverse()), Perm::identity(k));
        }
    }
}
