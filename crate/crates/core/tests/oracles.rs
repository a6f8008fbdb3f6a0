//! Worked values pinned through the public API.

use zetaqva::cartan::{bracket, build_context, BracketMode, CartanType, ConstKind};
use zetaqva::dist::{iota_expand, partial_fraction_delta, Direction, RatFunc};
use zetaqva::exact::{int, rat};
use zetaqva::qcomb::{cyclotomic_poly, qbinom, qint, IntPoly};
use zetaqva::quiver::{build_quiver, heisenberg_gram};
use zetaqva::series::{cap_c, theta_series};
use zetaqva::symcomb::{enumerate_shuffles, Composition, Perm, ShuffleKind};
use zetaqva::{CycloField, LaurentPoly};

fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_int_terms(terms.iter().copied())
}

#[test]
fn brackets() {
    assert_eq!(bracket(&lp(&[(5, 1), (0, 3), (-10, 1)]), BracketMode::Periodic(5)).unwrap(), 5);
    assert_eq!(bracket(&lp(&[(1, 1), (3, 1)]), BracketMode::Periodic(5)).unwrap(), 0);
    assert_eq!(bracket(&lp(&[(2, 1), (0, 7), (-1, 1)]), BracketMode::ConstantTerm).unwrap(), 7);
}

#[test]
fn quantum_integers_and_binomials() {
    assert_eq!(qint(3, 1), lp(&[(2, 1), (0, 1), (-2, 1)]));
    assert_eq!(qint(2, 3), lp(&[(3, 1), (-3, 1)]));
    assert!(qint(0, 1).is_zero());
    assert_eq!(qbinom(4, 2, 1).unwrap(), lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
    assert_eq!(qbinom(5, 5, 2).unwrap(), LaurentPoly::one());
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
    assert_eq!(cyclotomic_poly(2), IntPoly::from_i64(&[1, 1]));
    assert_eq!(cyclotomic_poly(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
}

#[test]
fn a1_structure_constants() {
    let c = build_context(CartanType::A, 1, 7, 1).unwrap();
    assert_eq!(c.struct_const(ConstKind::A00, 0, 0, 0, 0), 1);
    for m in 0..7 {
        assert_eq!(c.struct_const(ConstKind::A11, 0, 0, m, m), -1);
        for n in 0..7 {
            let want = i64::from((n - m + 2).rem_euclid(7) == 0);
            assert_eq!(c.struct_const(ConstKind::A22, 0, 0, m, n), want, "m={m} n={n}");
        }
    }
}

#[test]
fn node_orders() {
    let b2 = build_context(CartanType::B, 2, 8, 3).unwrap();
    assert_eq!(b2.p_i, vec![2, 4]);
    let g2 = build_context(CartanType::G, 2, 7, 1).unwrap();
    assert_eq!(g2.r(), 3);
    assert_eq!(g2.p_i, vec![7, 7]);
    assert!(build_context(CartanType::A, 1, 2, 0).is_err());
}

#[test]
fn theta_zero_expansion() {
    let t = theta_series(7, 0, 5);
    let f = CycloField::get(7);
    assert!(t.coeff(0).unwrap().is_zero());
    assert_eq!(t.coeff(2).unwrap(), f.from_rational(&rat(1, 24)));
    assert_eq!(t.coeff(4).unwrap(), f.from_rational(&rat(-1, 2880)));
    assert!(t.coeff(3).unwrap().is_zero());
}

#[test]
fn theta_linear_coefficient() {
    let f = CycloField::get(7);
    let t = theta_series(7, 3, 4);
    let z = f.zeta_pow(3);
    let want = &(&f.one() + &z) * &(&f.from_int(2) - &z.scale(&int(2))).inverse().unwrap();
    assert_eq!(t.coeff(1).unwrap(), want);
}

#[test]
fn cap_c_of_full_residue_sum() {
    for p in [5u32, 7, 11] {
        let g = lp(&(0..p as i64).map(|k| (k, 1)).collect::<Vec<_>>());
        assert_eq!(cap_c(p, &g), CycloField::get(p).from_int(p as i64));
    }
    assert!(cap_c(7, &LaurentPoly::one()).is_one());
}

#[test]
fn shuffle_sets_for_three() {
    let singles = Composition::new(vec![1, 1, 1]).unwrap();
    assert_eq!(enumerate_shuffles(3, &singles, ShuffleKind::BlockIncreasing).unwrap().len(), 6);
    let ridge = enumerate_shuffles(3, &singles, ShuffleKind::Ridge).unwrap();
    assert_eq!(ridge, vec![Perm::from_images(vec![2, 1, 0]).unwrap()]);
    let whole = Composition::new(vec![3]).unwrap();
    assert_eq!(
        enumerate_shuffles(3, &whole, ShuffleKind::BlockIncreasing).unwrap(),
        vec![Perm::identity(3)]
    );
}

#[test]
fn a1_quiver_steps_down_by_two() {
    let c = build_context(CartanType::A, 1, 7, 1).unwrap();
    let q = build_quiver(&c);
    assert_eq!(q.len(), 7);
    for m in 0..7 {
        let u = q.vertex(0, m);
        assert_eq!(q.out_degree(u), 1);
        assert!(q.has_arrow(u, q.vertex(0, m - 2)));
        assert!(!q.has_arrow(u, u));
    }
}

#[test]
fn a1_gram_entry() {
    let c = build_context(CartanType::A, 1, 7, 1).unwrap();
    let (gram, sym) = heisenberg_gram(&c);
    assert!(sym.passed());
    assert_eq!(gram.get((0, 0), (0, 0)).cloned(), Some(CycloField::get(7).from_int(14)));
}

#[test]
fn geometric_expansions() {
    let f = CycloField::get(5);
    let h = RatFunc::inverse_product(f, &[(f.one(), 1)]);
    let fwd = iota_expand(&h, Direction::Z1Dominant, 6).unwrap();
    let back = iota_expand(&h, Direction::Z2Dominant, 6).unwrap();
    for a in -6..=6 {
        let one_if = |b: bool| if b { f.one() } else { f.zero() };
        assert_eq!(fwd.coeff(a, 0, f).unwrap(), one_if(a >= 0), "a={a}");
        assert_eq!(back.coeff(a, 0, f).unwrap(), -&one_if(a < 0), "a={a}");
        assert_eq!(fwd.sub(&back).coeff(a, 0, f).unwrap(), f.one());
    }
}

#[test]
fn partial_fractions() {
    let f = CycloField::get(5);
    let simple = partial_fraction_delta(f, &[(f.one(), 1)]).unwrap();
    assert_eq!(simple, vec![(0, 0, f.one())]);

    let double = partial_fraction_delta(f, &[(f.one(), 2)]).unwrap();
    assert_eq!(double, vec![(0, 0, f.one()), (0, 1, f.one())]);

    let z = f.zeta_pow(1);
    let two = partial_fraction_delta(f, &[(f.one(), 1), (z.clone(), 1)]).unwrap();
    let inv = (&f.one() - &z).inverse().unwrap();
    assert_eq!(two[0], (0, 0, inv.clone()));
    assert_eq!(&two[0].2 + &two[1].2, f.one());
    assert_eq!(two[1], (1, 0, &f.one() - &inv));
}
