//! Quantum integers, factorials and Gaussian binomials, the bracket
//! `qb[a;m]_q`, cyclotomic polynomials with the `C_{k,a}` family, and exact
//! checks of the polynomial identities behind divided powers.

mod intpoly;
mod multi;

pub use intpoly::IntPoly;
pub use multi::MultiLaurent;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{CycloField, LaurentPoly, Rational};
use crate::report::Check;
use crate::symcomb::Perm;

/// `[n]_{q^d} = q^{d(n-1)} + q^{d(n-3)} + ... + q^{d(1-n)}`.
pub fn qint(n: u32, d: i64) -> LaurentPoly {
    let n = n as i64;
    LaurentPoly::from_int_terms((0..n).map(|k| (d * (n - 1 - 2 * k), 1)))
}

/// `[n]_{q^d}! = [n][n-1]...[1]`.
pub fn qfactorial(n: u32, d: i64) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k, d))
}

/// Gaussian binomial `[n choose r]_{q^d}` as the exact quotient of
/// factorials.
pub fn qbinom(n: u32, r: u32, d: i64) -> Result<LaurentPoly> {
    if r > n {
        return Err(Error::InvalidArgument(format!("qbinom needs r <= n, got r={r}, n={n}")));
    }
    let den = &qfactorial(r, d) * &qfactorial(n - r, d);
    qfactorial(n, d)
        .div_exact(&den)
        .ok_or_else(|| Error::Internal(format!("[{n}]!/([{r}]![{}]!) is not a Laurent polynomial", n - r)))
}

/// `Phi_k(z)`, by exact division of `z^k - 1` by `Phi_d` over the proper
/// divisors `d` of `k`.
pub fn cyclotomic_poly(k: u32) -> IntPoly {
    assert!(k >= 1, "cyclotomic index must be positive");
    let mut p = IntPoly::from_i64(&[-1]).add(&IntPoly::monomial(k as usize, BigInt::one()));
    for d in 1..k {
        if k % d == 0 {
            let (q, r) = p.divmod_monic(&cyclotomic_poly(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

/// Coefficients `C'_{k,a}(z)` for `a = 0..k`, defined by
/// `w^k - 1 - prod_{t<k} (w - z^t) = sum_a C'_{k,a}(z) w^a`.
pub fn c_prime_polys(k: u32) -> Vec<IntPoly> {
    let k = k as usize;
    // prod[a] is the coefficient of w^a, a polynomial in z.
    let mut prod: Vec<IntPoly> = vec![IntPoly::one()];
    for t in 0..k {
        let zt = IntPoly::monomial(t, BigInt::one());
        let mut next = vec![IntPoly::zero(); prod.len() + 1];
        for (a, c) in prod.iter().enumerate() {
            next[a + 1] = next[a + 1].add(c);
            next[a] = next[a].sub(&c.mul(&zt));
        }
        prod = next;
    }
    let mut out: Vec<IntPoly> = prod.iter().take(k).map(|c| c.neg()).collect();
    out[0] = out[0].sub(&IntPoly::one());
    out
}

/// `C_{k,a} = C'_{k,a} / Phi_k`, failing when the division leaves a
/// remainder.
pub fn c_poly(k: u32, a: u32) -> Result<IntPoly> {
    if a >= k {
        return Err(Error::InvalidArgument(format!("c_poly needs 0 <= a < k, got a={a}, k={k}")));
    }
    let cp = &c_prime_polys(k)[a as usize];
    let (q, r) = cp.divmod_monic(&cyclotomic_poly(k));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::ConstraintViolation(format!(
            "C'_{{{k},{a}}} leaves remainder {r} modulo Phi_{k}"
        )))
    }
}

/// Verifies integrality of every `C_{k,a}` with `k <= kmax`, and
/// independently that `C'_{k,a}` vanishes at a primitive `k`-th root.
pub fn check_c_integrality(kmax: u32) -> Check {
    let mut checked = 0usize;
    for k in 1..=kmax {
        let field = CycloField::get(k);
        let primes = c_prime_polys(k);
        for a in 0..k {
            if let Err(e) = c_poly(k, a) {
                return Check::fail("qcomb", "c_integrality", format!("k={k} a={a}"), e.to_string());
            }
            let at_root = primes[a as usize].eval_zeta(field);
            if !at_root.is_zero() {
                return Check::fail(
                    "qcomb",
                    "c_integrality",
                    format!("k={k} a={a}"),
                    format!("C' does not vanish at zeta_{k}: {at_root}"),
                );
            }
            checked += 1;
        }
    }
    Check::pass(
        "qcomb",
        "c_integrality",
        format!("kmax={kmax}"),
        format!("{checked} polynomials divisible by Phi_k over Z"),
    )
}

/// Numerator and denominator of `qb[x;m]_q` for a monomial `x` in the
/// auxiliary variables: `prod_{s=1}^m (x q^{1-s} - x^{-1} q^{s-1})` and
/// `prod_{s=1}^m (q^s - q^{-s})`.
fn qb_parts(x: &[i64], m: u32, nvars: usize) -> (MultiLaurent, LaurentPoly) {
    let mut num = MultiLaurent::one(nvars);
    let mut den = LaurentPoly::one();
    let xinv: Vec<i64> = x.iter().map(|e| -e).collect();
    for s in 1..=m as i64 {
        let mut fx = x.to_vec();
        fx[0] += 1 - s;
        let mut fxi = xinv.clone();
        fxi[0] += s - 1;
        let factor = MultiLaurent::monomial(&fx, Rational::one())
            .sub(&MultiLaurent::monomial(&fxi, Rational::one()));
        num = num.mul(&factor);
        den = &den * &LaurentPoly::from_int_terms([(s, 1), (-s, -1)]);
    }
    (num, den)
}

/// `qb[ab;m] = sum_k a^{m-k} b^{-k} qb[b;m-k] qb[a;k]`, checked exactly in
/// `Q[q^{+-1}, a^{+-1}, b^{+-1}]` after clearing the `q`-denominator.
pub fn check_qb_mult(m: u32) -> Check {
    let name = "qb_mult";
    let params = format!("m={m}");
    // Variables: q, a, b.
    let (lhs, dm) = qb_parts(&[0, 1, 1], m, 3);
    let mut rhs = MultiLaurent::zero(3);
    for k in 0..=m {
        let (nb, db) = qb_parts(&[0, 0, 1], m - k, 3);
        let (na, da) = qb_parts(&[0, 1, 0], k, 3);
        let Some(ratio) = dm.div_exact(&(&db * &da)) else {
            return Check::fail("qcomb", name, params, format!("denominator ratio not polynomial at k={k}"));
        };
        let mono = MultiLaurent::monomial(&[0, (m - k) as i64, -(k as i64)], Rational::one());
        rhs = rhs.add(&mono.mul(&nb).mul(&na).mul_q_poly(&ratio, 0));
    }
    if lhs == rhs {
        Check::pass("qcomb", name, params, format!("{} monomials matched", lhs.len()))
    } else {
        let diff = lhs.sub(&rhs);
        Check::fail("qcomb", name, params, format!("first differing monomial {:?}", diff.first_term()))
    }
}

/// Which identity [`check_antisym`] verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntisymMode {
    /// `sum_sigma (-1)^{inv sigma} prod_{sigma(a)<sigma(b)} (z_a - t z_b)
    /// = t-factorial * prod_{a<b} (z_a - z_b)` with `t = q^{-2}`.
    ProductFormula,
    /// `prod_{s<m} (1 + q^{2s} z) = sum_s q^{s(m-1)} [m choose s]_q z^s`.
    QbinomTheorem,
}

/// Runs the selected identity at size `k`; product-formula mode evaluates on
/// a full tensor grid of `deg + 1` distinct integers per variable, which is
/// enough to determine the polynomial, with grid values drawn from `seed`.
pub fn check_antisym(k: u32, mode: AntisymMode, seed: u64) -> Check {
    match mode {
        AntisymMode::ProductFormula => antisym_product(k, seed),
        AntisymMode::QbinomTheorem => qbinom_theorem(k),
    }
}

fn qbinom_theorem(m: u32) -> Check {
    let name = "qbinom_theorem";
    let params = format!("m={m}");
    // Variables: q, z.
    let mut lhs = MultiLaurent::one(2);
    for s in 0..m as i64 {
        let f = MultiLaurent::one(2).add(&MultiLaurent::monomial(&[2 * s, 1], Rational::one()));
        lhs = lhs.mul(&f);
    }
    let mut rhs = MultiLaurent::zero(2);
    for s in 0..=m {
        let b = match qbinom(m, s, 1) {
            Ok(b) => b,
            Err(e) => return Check::fail("qcomb", name, params, e.to_string()),
        };
        let mono = MultiLaurent::monomial(&[(s * (m.saturating_sub(1))) as i64, s as i64], Rational::one());
        rhs = rhs.add(&mono.mul_q_poly(&b, 0));
    }
    if lhs == rhs {
        Check::pass("qcomb", name, params, format!("{} monomials matched", lhs.len()))
    } else {
        Check::fail("qcomb", name, params, format!("first differing monomial {:?}", lhs.sub(&rhs).first_term()))
    }
}

/// `count` distinct integers from a fixed range, shuffled by `rng`.
fn distinct_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<i128> {
    let mut pool: Vec<i128> = (-40..=40).filter(|x| *x != 0).collect();
    pool.shuffle(rng);
    pool.truncate(count);
    pool
}

fn antisym_product(k: u32, seed: u64) -> Check {
    let name = "antisym_product";
    let params = format!("k={k}");
    let k = k as usize;
    let perms = Perm::all(k);
    let tdeg = k * k.saturating_sub(1) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tpts = distinct_points(&mut rng, tdeg + 1);
    let zpts: Vec<Vec<i128>> = (0..k).map(|_| distinct_points(&mut rng, k.max(1))).collect();
    // RHS t-factor: prod_{j=1}^k (1 + t + ... + t^{j-1}).
    let tfact = |t: i128| -> Option<i128> {
        let mut acc: i128 = 1;
        for j in 1..=k as u32 {
            let mut s: i128 = 0;
            for e in 0..j {
                s = s.checked_add(t.checked_pow(e)?)?;
            }
            acc = acc.checked_mul(s)?;
        }
        Some(acc)
    };
    let total = tpts.len() * zpts.iter().map(|v| v.len()).product::<usize>();
    let mut idx = vec![0usize; k];
    let mut evaluated = 0usize;
    loop {
        let z: Vec<i128> = (0..k).map(|a| zpts[a][idx[a]]).collect();
        for &t in &tpts {
            let eval = || -> Option<(i128, i128)> {
                let mut lhs: i128 = 0;
                for p in &perms {
                    let mut term: i128 = p.sign() as i128;
                    for a in 0..k {
                        for b in 0..k {
                            if a != b && p.at(a) < p.at(b) {
                                term = term.checked_mul(z[a].checked_sub(t.checked_mul(z[b])?)?)?;
                            }
                        }
                    }
                    lhs = lhs.checked_add(term)?;
                }
                let mut rhs = tfact(t)?;
                for a in 0..k {
                    for b in a + 1..k {
                        rhs = rhs.checked_mul(z[a] - z[b])?;
                    }
                }
                Some((lhs, rhs))
            };
            match eval() {
                Some((l, r)) if l == r => evaluated += 1,
                Some((l, r)) => {
                    return Check::fail(
                        "qcomb",
                        name,
                        params,
                        format!("mismatch at z={z:?}, t={t}: {l} vs {r}"),
                    )
                }
                None => {
                    return Check::fail("qcomb", name, params, format!("i128 overflow at z={z:?}, t={t}"))
                }
            }
        }
        // Advance the mixed-radix grid index.
        let mut a = 0;
        loop {
            if a == k {
                return Check::pass(
                    "qcomb",
                    name,
                    params,
                    format!("{evaluated}/{total} grid points agree (degree-complete grid)"),
                );
            }
            idx[a] += 1;
            if idx[a] < zpts[a].len() {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}
