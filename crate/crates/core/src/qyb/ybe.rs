use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{BiSeries, Gen, SOperator, SUITE};
use crate::report::Check;

/// Which basis triples enter the Yang-Baxter sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YbeSample {
    /// Every triple up to the diagonal shift: the first non-vacuum factor
    /// is pinned to residue 0 (sound once shift equivariance holds).
    AllUpToShift,
    /// `count` triples drawn uniformly with a fixed seed.
    Seeded { count: usize, seed: u64 },
}

type Triple = [Gen; 3];
type Tensor3 = BTreeMap<Triple, BiSeries>;

/// An image term of `S` with its coefficient embedded as `f(z1)`,
/// `f(z1 + z2)` and `f(z2)`.
struct Embedded {
    l: Gen,
    r: Gen,
    forms: [BiSeries; 3],
}

const Z1: usize = 0;
const SUM: usize = 1;
const Z2: usize = 2;

struct Ybe<'a, 'b> {
    op: &'b SOperator<'a>,
    z2_order: i64,
    cache: Vec<OnceLock<Vec<Embedded>>>,
}

impl Ybe<'_, '_> {
    fn embedded(&self, l: Gen, r: Gen) -> &[Embedded] {
        self.cache[self.op.pair_index(l, r)].get_or_init(|| {
            self.op
                .image(l, r)
                .terms()
                .map(|((x, y), f)| Embedded {
                    l: *x,
                    r: *y,
                    forms: [
                        BiSeries::in_z1(f),
                        BiSeries::in_sum(f, self.z2_order),
                        BiSeries::in_z2(f),
                    ],
                })
                .collect()
        })
    }

    /// `S^{ab}` with coefficient embedding `form`.
    fn apply(&self, v: &Tensor3, a: usize, b: usize, form: usize) -> Tensor3 {
        let mut out = Tensor3::new();
        for (key, c) in v {
            for e in self.embedded(key[a], key[b]) {
                let mut k = *key;
                k[a] = e.l;
                k[b] = e.r;
                let term = c.mul(&e.forms[form]);
                let sum = match out.remove(&k) {
                    Some(old) => old.add(&term),
                    None => term,
                };
                if !sum.is_zero() {
                    out.insert(k, sum);
                }
            }
        }
        out
    }

    fn check(&self, t: Triple) -> Result<usize, String> {
        let field = self.op.field();
        let mut start = Tensor3::new();
        start.insert(t, BiSeries::one(field));
        // S12(z1) S13(z1+z2) S23(z2), rightmost first.
        let lhs = self.apply(&self.apply(&self.apply(&start, 1, 2, Z2), 0, 2, SUM), 0, 1, Z1);
        // S23(z2) S13(z1+z2) S12(z1).
        let rhs = self.apply(&self.apply(&self.apply(&start, 0, 1, Z1), 0, 2, SUM), 1, 2, Z2);
        let zero = BiSeries::one(field).scale(&field.zero());
        let keys: std::collections::BTreeSet<&Triple> = lhs.keys().chain(rhs.keys()).collect();
        let mut n = 0;
        for k in keys {
            let x = lhs.get(k).unwrap_or(&zero);
            let y = rhs.get(k).unwrap_or(&zero);
            match x.compare(y) {
                Ok(c) => n += c,
                Err((e2, e1)) => {
                    return Err(format!(
                        "{} (x) {} (x) {} at term {} (x) {} (x) {}: z2^{e2} z1^{e1}",
                        t[0], t[1], t[2], k[0], k[1], k[2]
                    ))
                }
            }
        }
        Ok(n)
    }
}

fn triples(op: &SOperator, sample: YbeSample) -> Vec<Triple> {
    let gens = op.generators();
    match sample {
        YbeSample::AllUpToShift => {
            let mut out = Vec::new();
            for &a in gens {
                for &b in gens {
                    for &c in gens {
                        let first = [a, b, c].into_iter().find(|g| *g != Gen::Vac);
                        if first.is_none_or(|g| g.residue() == Some(0)) {
                            out.push([a, b, c]);
                        }
                    }
                }
            }
            out
        }
        YbeSample::Seeded { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = gens.len();
            (0..count)
                .map(|_| [gens[rng.gen_range(0..n)], gens[rng.gen_range(0..n)], gens[rng.gen_range(0..n)]])
                .collect()
        }
    }
}

/// `S12(z1) S13(z1+z2) S23(z2) = S23(z2) S13(z1+z2) S12(z1)` on basis
/// triples, in series in `z2` (orders below `z2_order`) over truncated
/// Laurent series in `z1`, with `(z1 + z2)^k` expanded in powers of `z2`.
pub fn check_ybe(op: &SOperator, z2_order: i64, sample: YbeSample) -> Check {
    let ybe = Ybe {
        op,
        z2_order,
        cache: (0..op.generators().len().pow(2)).map(|_| OnceLock::new()).collect(),
    };
    let list = triples(op, sample);
    let mut failures: Vec<String> = list
        .par_iter()
        .filter_map(|t| ybe.check(*t).err())
        .collect();
    failures.sort();
    let params = format!("{} N={} z2<{}", op.ctx().name(), op.tau().trunc(), z2_order);
    Check::from_failures(SUITE, "yang-baxter", params, list.len(), &failures)
}
