//! Truncated Laurent series over `Q(zeta_p)` and the special series
//! `theta_s`, `C(g)` and `E(z, g)`.

mod trunc;

pub use trunc::{exp_linear, series_ops, SeriesOp, TruncSeries, EXACT};

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{factorial, CycloField, CycloScalar, LaurentPoly, Rational};
use crate::report::Check;

/// Default number of kept orders: coefficients of `z^0 .. z^N`.
pub const DEFAULT_TRUNC: i64 = 12;

/// `<g q^{-s}>_p` for every residue `s`, i.e. the sums of coefficients of
/// `g` over each exponent class modulo `p`.
///
/// Panics if `g` has non-integer coefficients.
pub fn residue_counts(g: &LaurentPoly, p: u32) -> Vec<i64> {
    let mut out = vec![0i64; p as usize];
    for (e, c) in g.terms() {
        assert!(c.is_integer(), "residue_counts needs integer coefficients");
        let c: i64 = c.to_integer().try_into().expect("coefficient fits in i64");
        out[e.rem_euclid(p as i64) as usize] += c;
    }
    out
}

fn half_pow_over_fact(n: i64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2).pow(n as u32) * factorial(n as u32))
}

/// `theta_s(z)` through `z^n`.
pub fn theta_series(p: u32, s: i64, n: i64) -> TruncSeries {
    let field = CycloField::get(p);
    let prec = n + 1;
    let arg = if s.rem_euclid(p as i64) == 0 {
        // (e^{z/2} - e^{-z/2}) / z: only odd powers survive, shifted down one.
        let coeffs: Vec<Rational> = (0..prec)
            .map(|k| {
                if k % 2 == 0 {
                    half_pow_over_fact(k + 1) * Rational::from_integer(BigInt::from(2))
                } else {
                    Rational::from_integer(BigInt::from(0))
                }
            })
            .collect();
        TruncSeries::from_rationals(field, 0, &coeffs, prec)
    } else {
        let zs = field.zeta_pow(s);
        let norm = (&field.one() - &zs).inverse().expect("1 - zeta^s is a unit");
        let coeffs = (0..prec)
            .map(|k| {
                let sign = if k % 2 == 0 { zs.clone() } else { -&zs };
                (&(&field.one() - &sign) * &norm).scale(&half_pow_over_fact(k))
            })
            .collect();
        TruncSeries::from_coeffs(field, 0, coeffs, prec)
    };
    arg.log_capped(prec).expect("argument has constant term 1")
}

/// Cached `theta_s` for every residue at one truncation.
#[derive(Clone, Debug)]
pub struct ThetaTable {
    p: u32,
    n: i64,
    theta: Vec<TruncSeries>,
}

impl ThetaTable {
    pub fn new(p: u32, n: i64) -> Self {
        let theta = (0..p as i64).map(|s| theta_series(p, s, n)).collect();
        ThetaTable { p, n, theta }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn trunc(&self) -> i64 {
        self.n
    }

    pub fn field(&self) -> &'static CycloField {
        CycloField::get(self.p)
    }

    pub fn theta(&self, s: i64) -> &TruncSeries {
        &self.theta[s.rem_euclid(self.p as i64) as usize]
    }

    /// `sum_s <g q^{-s}> theta_s^{(k)}(z)`.
    pub fn weighted(&self, g: &LaurentPoly, derivs: u32) -> TruncSeries {
        let mut acc = TruncSeries::zero(self.field(), self.n + 1 - derivs as i64);
        for (s, c) in residue_counts(g, self.p).into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut t = self.theta[s].clone();
            for _ in 0..derivs {
                t = t.derive();
            }
            acc = acc.add(&t.scale(&self.field().from_int(c)));
        }
        acc
    }

    /// `E(z, g)` at this truncation.
    pub fn cap_e(&self, g: &LaurentPoly) -> TruncSeries {
        let c = cap_c(self.p, g);
        let sum = self.weighted(g, 0);
        sum.exp_capped(self.n + 1).expect("theta sum has no constant term").scale(&c)
    }
}

/// `C(g) = prod_{s != 0} (1 - zeta^s)^{<g q^{-s}>}`.
pub fn cap_c(p: u32, g: &LaurentPoly) -> CycloScalar {
    let field = CycloField::get(p);
    let mut acc = field.one();
    for (s, c) in residue_counts(g, p).into_iter().enumerate().skip(1) {
        if c != 0 {
            let base = &field.one() - &field.zeta_pow(s as i64);
            acc = &acc * &base.pow(c).expect("1 - zeta^s is a unit");
        }
    }
    acc
}

/// `E(z, g)` through `z^n`.
pub fn cap_e(p: u32, g: &LaurentPoly, n: i64) -> TruncSeries {
    ThetaTable::new(p, n).cap_e(g)
}

/// `1 - c e^{-z}` through `z^n`.
pub(crate) fn one_minus_exp(c: &CycloScalar, n: i64) -> TruncSeries {
    let field = c.field();
    let e = exp_linear(field, &Rational::from_integer(BigInt::from(-1)), n + 1);
    TruncSeries::one(field).sub(&e.scale(c))
}

fn series_check(name: &str, params: &str, lhs: &TruncSeries, rhs: &TruncSeries) -> Check {
    match lhs.compare(rhs) {
        Ok(k) => Check::pass("series", name, params, format!("{k} coefficients agree")),
        Err(e) => Check::fail("series", name, params, format!("first mismatch at z^{e}")),
    }
}

/// The `E` identities: behaviour under `z -> -z`, the logarithmic
/// derivative, and the product expansion in `1 - zeta^s e^{-z}`.
pub fn check_e_identities(p: u32, g: &LaurentPoly, n: i64) -> Vec<Check> {
    let table = ThetaTable::new(p, n);
    let field = table.field();
    let params = format!("p={p} g={g} N={n}");
    let e = table.cap_e(g);
    let r0 = residue_counts(g, p)[0];
    let g1 = g.at_one();
    let g1_int: i64 = g1.to_integer().try_into().expect("small");
    let dg1: i64 = g.q_derivative().at_one().to_integer().try_into().expect("small");
    let mut out = Vec::new();

    // E(-z, g) = (-1)^{g(1) - <g>} zeta^{dg(1)} E(z, g(q^{-1}))
    let sign = if (g1_int - r0).rem_euclid(2) == 0 { field.one() } else { field.from_int(-1) };
    let factor = &sign * &field.zeta_pow(dg1);
    let rhs = table.cap_e(&g.invert_q()).scale(&factor);
    out.push(series_check("E(-z,g)", &params, &e.negate_var(), &rhs));

    // d/dz log E = sum_s <g q^{-s}> theta_s'
    let lhs = e.derive().mul(&e.inv().expect("E is invertible"));
    out.push(series_check("dlogE", &params, &lhs, &table.weighted(g, 1)));

    // prod_s (1 - zeta^s e^{-z})^{<g q^{-s}>} = e^{-g(1) z / 2} z^{<g>} E(z, g)
    let mut lhs = TruncSeries::one(field);
    for (s, c) in residue_counts(g, p).into_iter().enumerate() {
        if c == 0 {
            continue;
        }
        let base = if s == 0 {
            // (1 - e^{-z}) / z, then restore z^{<g>} below.
            let raw = one_minus_exp(&field.one(), n + 1);
            raw.shift(-1)
        } else {
            one_minus_exp(&field.zeta_pow(s as i64), n)
        };
        lhs = lhs.mul(&base.pow_capped(c, n + 1).expect("unit base"));
    }
    let lhs = lhs.shift(r0);
    let half = -g1 / Rational::from_integer(BigInt::from(2));
    let rhs = exp_linear(field, &half, n + 1).mul(&e).shift(r0);
    out.push(series_check("product_form", &params, &lhs, &rhs));
    out
}

/// The scalar and multiplicative identities of `C` and `E` for a pair
/// `f, g`.
pub fn check_ce_algebra(p: u32, f: &LaurentPoly, g: &LaurentPoly, n: i64) -> Vec<Check> {
    let table = ThetaTable::new(p, n);
    let field = table.field();
    let params = format!("p={p} f={f} g={g} N={n}");
    let mut out = Vec::new();
    let scalar = |name: &str, ok: bool, detail: String| {
        if ok {
            Check::pass("series", name, &params, detail)
        } else {
            Check::fail("series", name, &params, detail)
        }
    };
    let cg = cap_c(p, g);
    let cmg = cap_c(p, &-g);
    out.push(scalar("C(g)C(-g)=1", (&cg * &cmg).is_one(), format!("C(g)={cg}")));
    let cfg = cap_c(p, &(f + g));
    let prod = &cap_c(p, f) * &cg;
    out.push(scalar("C(f+g)=C(f)C(g)", cfg == prod, format!("{cfg} vs {prod}")));
    let r0 = residue_counts(g, p)[0];
    let g1: i64 = g.at_one().to_integer().try_into().expect("small");
    let dg1: i64 = g.q_derivative().at_one().to_integer().try_into().expect("small");
    let sign = if (g1 - r0).rem_euclid(2) == 0 { field.one() } else { field.from_int(-1) };
    let rhs = &(&sign * &field.zeta_pow(-dg1)) * &cg;
    let lhs = cap_c(p, &g.invert_q());
    out.push(scalar("C(g(1/q))", lhs == rhs, format!("{lhs} vs {rhs}")));

    let eg = table.cap_e(g);
    let emg = table.cap_e(&-g);
    out.push(series_check("E(g)E(-g)=1", &params, &eg.mul(&emg), &TruncSeries::one(field)));
    out.push(scalar("E(0,g)=C(g)", eg.coeff(0) == Some(cg.clone()), format!("C(g)={cg}")));
    let efg = table.cap_e(&(f + g));
    out.push(series_check("E(f+g)=E(f)E(g)", &params, &efg, &table.cap_e(f).mul(&eg)));
    out
}

/// `theta_s` against its closed-form derivatives and the reflection
/// `theta_s(-z) = theta_{-s}(z)`.
pub fn check_theta(p: u32, n: i64) -> Vec<Check> {
    let table = ThetaTable::new(p, n);
    let field = table.field();
    let params = format!("p={p} N={n}");
    let mut out = Vec::new();
    for s in 0..p as i64 {
        let th = table.theta(s);
        out.push(series_check(
            &format!("theta_{s}(-z)=theta_{}(z)", (-s).rem_euclid(p as i64)),
            &params,
            &th.negate_var(),
            table.theta(-s),
        ));
        let zs = field.zeta_pow(s);
        let base = one_minus_exp(&zs, n);
        let ez = exp_linear(field, &Rational::from_integer(BigInt::from(-1)), n + 1).scale(&zs);
        let (d1, d2) = if s == 0 {
            // Remove the simple zero of 1 - e^{-z} before inverting.
            let b = base.shift(-1);
            let binv = b.inv().expect("unit");
            let d1 = TruncSeries::one(field)
                .add(&ez)
                .mul(&binv)
                .scale_rational(&Rational::new(BigInt::one(), BigInt::from(2)))
                .shift(-1)
                .sub(&TruncSeries::monomial(field, -1, field.one()));
            let d2 = ez
                .mul(&binv.mul(&binv))
                .shift(-2)
                .neg()
                .add(&TruncSeries::monomial(field, -2, field.one()));
            (d1, d2)
        } else {
            let binv = base.inv().expect("unit");
            let d1 = TruncSeries::one(field)
                .add(&ez)
                .mul(&binv)
                .scale_rational(&Rational::new(BigInt::one(), BigInt::from(2)));
            let d2 = ez.mul(&binv.mul(&binv)).neg();
            (d1, d2)
        };
        out.push(series_check(&format!("theta_{s}'"), &params, &th.derive(), &d1));
        out.push(series_check(&format!("theta_{s}''"), &params, &th.derive().derive(), &d2));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn f(p: u32) -> &'static CycloField {
        CycloField::get(p)
    }

    #[test]
    fn elementary_ops() {
        let k = f(7);
        let one_minus_z = TruncSeries::from_rationals(k, 0, &[rat(1, 1), rat(-1, 1)], EXACT).truncate(13);
        let inv = series_ops(&one_minus_z, &one_minus_z, SeriesOp::Inv).unwrap();
        for e in 0..13 {
            assert!(inv.coeff(e).unwrap().is_one());
        }
        assert_eq!(inv.coeff(13), None);
        let z3 = TruncSeries::monomial(k, 3, k.one());
        assert_eq!(z3.derive(), TruncSeries::monomial(k, 2, k.from_int(3)));
        let zi = TruncSeries::monomial(k, -1, k.one());
        assert_eq!(zi.mul(&TruncSeries::monomial(k, 1, k.one())), TruncSeries::one(k));
        assert!(TruncSeries::exact_zero(k).inv().is_err());
    }

    #[test]
    fn precision_propagates() {
        let k = f(5);
        let x = TruncSeries::from_rationals(k, 2, &[rat(1, 1), rat(3, 1)], 6);
        let y = TruncSeries::from_rationals(k, -1, &[rat(2, 1)], 4);
        // (z^2 + 3z^3 + O(z^6)) (2/z + O(z^4)) is known below min(6-1, 4+2).
        assert_eq!(x.mul(&y).prec(), 5);
        assert_eq!(x.derive().prec(), 5);
        let u = TruncSeries::from_rationals(k, 1, &[rat(1, 1), rat(1, 1)], 8);
        assert_eq!(u.inv().unwrap().prec(), 6);
    }

    #[test]
    fn theta_values() {
        let th0 = theta_series(7, 0, 6);
        assert_eq!(th0.coeff(0).unwrap(), f(7).zero());
        assert_eq!(th0.coeff(2).unwrap(), f(7).from_rational(&rat(1, 24)));
        assert_eq!(th0.coeff(4).unwrap(), f(7).from_rational(&rat(-1, 2880)));
        assert!(th0.coeff(1).unwrap().is_zero() && th0.coeff(3).unwrap().is_zero());
        for s in 1..7 {
            let k = f(7);
            let zs = k.zeta_pow(s);
            let expect = &(&k.one() + &zs) * &(&k.from_int(2) - &zs.mul_int(2)).inverse().unwrap();
            let th = theta_series(7, s, 5);
            assert!(th.coeff(0).unwrap().is_zero());
            assert_eq!(th.coeff(1).unwrap(), expect);
        }
    }

    #[test]
    fn cap_c_values() {
        assert!(cap_c(7, &LaurentPoly::one()).is_one());
        for p in [5u32, 7, 11] {
            let g = LaurentPoly::from_int_terms((0..p as i64).map(|k| (k, 1)));
            assert_eq!(cap_c(p, &g), f(p).from_int(p as i64));
        }
    }

    #[test]
    fn cap_e_basics() {
        let g = LaurentPoly::from_int_terms([(1, 1), (-1, 1), (3, -2)]);
        let e = cap_e(7, &g, 8);
        assert_eq!(e.coeff(0).unwrap(), cap_c(7, &g));
        assert_eq!(cap_e(7, &LaurentPoly::zero(), 8).compare(&TruncSeries::one(f(7))), Ok(9));
    }

    #[test]
    fn e_identities_examples() {
        let zero = LaurentPoly::zero();
        let g1 = LaurentPoly::from_int_terms([(1, 1), (-1, 1)]);
        let g2 = LaurentPoly::from_int_terms([(2, 1), (0, -2), (-2, 1)]);
        for (p, g, n) in [(7u32, &zero, 12i64), (7, &g1, 10), (5, &g2, 12)] {
            for c in check_e_identities(p, g, n) {
                assert!(c.passed(), "{c:?}");
            }
        }
    }

    #[test]
    fn ce_algebra_and_theta() {
        let f1 = LaurentPoly::from_int_terms([(0, 2), (3, -1)]);
        let g1 = LaurentPoly::from_int_terms([(1, 1), (-4, 3), (7, -1)]);
        for c in check_ce_algebra(9, &f1, &g1, 10).into_iter().chain(check_theta(6, 10)) {
            assert!(c.passed(), "{c:?}");
        }
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -2i64..3), 0..5).prop_map(LaurentPoly::from_int_terms)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn exp_log_roundtrip(cs in prop::collection::vec(-5i64..6, 1..10), n in 4i64..16) {
            let k = f(5);
            let mut c: Vec<CycloScalar> = vec![k.zero()];
            c.extend(cs.iter().enumerate().map(|(i, x)| &k.from_int(*x) + &k.zeta_pow(i as i64).mul_int(x % 2)));
            let u = TruncSeries::from_coeffs(k, 0, c, n + 1);
            let one_plus = TruncSeries::one(k).add(&u);
            let back = one_plus.log_capped(0).unwrap().exp_capped(0).unwrap();
            prop_assert!(back.compare(&one_plus).is_ok());
        }

        #[test]
        fn e_identities_random(g in arb_poly(), p in prop::sample::select(vec![5u32, 6, 7, 8])) {
            for c in check_e_identities(p, &g, 8) {
                prop_assert!(c.passed(), "{:?}", c);
            }
        }

        #[test]
        fn mul_inv_is_one(cs in prop::collection::vec(-4i64..5, 1..8), v in -3i64..3) {
            let k = f(7);
            let mut c: Vec<CycloScalar> = cs.iter().map(|x| k.from_int(*x)).collect();
            c[0] = &c[0] + &k.zeta_pow(2);
            let x = TruncSeries::from_coeffs(k, v, c, v + 10);
            let y = x.inv().unwrap();
            prop_assert!(x.mul(&y).compare(&TruncSeries::one(k)).is_ok());
        }
    }
}
