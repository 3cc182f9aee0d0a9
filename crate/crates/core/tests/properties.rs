use num_bigint::BigInt;
use proptest::prelude::*;

use ppgf::conegeom::{decompose, is_member, rays_uk, triangulation, LatticePoint};
use ppgf::enumerate::{enumerate_pp, oracle_series};
use ppgf::omega::{
    ap_step, box_gf, column_prefactor, p22_via_omega, p22_via_omega_with_order,
    series_semantics_hold, BoxGF, CrudeForm,
};
use ppgf::recursion::{compute_q, compute_q_tilde, embed};
use ppgf::{Ctx, FactoredGF, Monomial, Polynomial, Substitution, VariableContext};

fn ctx3() -> Ctx {
    VariableContext::new(["a", "b", "c"]).unwrap()
}

fn monomial(max_exp: i32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, 3).prop_map(|e| Monomial::from_exponents(&e))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(3), -5i64..=5), 0..6).prop_map(|terms| {
        Polynomial::from_terms(
            &ctx3(),
            terms.into_iter().map(|(m, c)| (m, BigInt::from(c))),
        )
        .unwrap()
    })
}

fn factor() -> impl Strategy<Value = Monomial> {
    monomial(2).prop_filter("nonconstant", |m| !m.is_one())
}

fn gf() -> impl Strategy<Value = FactoredGF> {
    (polynomial(), prop::collection::vec(factor(), 0..4))
        .prop_map(|(num, factors)| FactoredGF::with_factors(num, factors).unwrap())
}

proptest! {
    #[test]
    fn ring_axioms(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&ctx3()), a.clone());
    }

    #[test]
    fn division_undoes_multiplication(a in polynomial(), b in polynomial()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn one_minus_division(a in polynomial(), m in factor()) {
        let p = a.mul_one_minus(&m);
        prop_assert!(p.divisible_by_one_minus(&m));
        prop_assert_eq!(p.div_one_minus(&m).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_ring_map(a in polynomial(), b in polynomial(), imgs in prop::collection::vec(monomial(2), 3)) {
        let target = VariableContext::new(["a", "b", "c"]).unwrap();
        let s = Substitution::from_images(&ctx3(), &target, imgs).unwrap();
        prop_assert_eq!((&a * &b).substitute(&s).unwrap(), &a.substitute(&s).unwrap() * &b.substitute(&s).unwrap());
        prop_assert_eq!((&a + &b).substitute(&s).unwrap(), &a.substitute(&s).unwrap() + &b.substitute(&s).unwrap());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in polynomial(), b in polynomial(), pt in prop::collection::vec(-3i64..=3, 3)) {
        let pt: Vec<BigInt> = pt.into_iter().map(BigInt::from).collect();
        prop_assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
    }

    #[test]
    fn encodings_round_trip(a in polynomial(), g in gf()) {
        prop_assert_eq!(Polynomial::parse(&ctx3(), &a.to_text()).unwrap(), a.clone());
        prop_assert_eq!(Polynomial::from_json(&a.to_json()).unwrap(), a);
        prop_assert_eq!(FactoredGF::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn series_is_additive_and_multiplicative(f in gf(), g in gf()) {
        let n = 6;
        let sum = f.add(&g).unwrap();
        prop_assert_eq!(sum.series(n).unwrap(), &f.series(n).unwrap() + &g.series(n).unwrap());
        let prod = f.mul(&g).unwrap();
        prop_assert_eq!(prod.series(n).unwrap(), (&f.series(n).unwrap() * &g.series(n).unwrap()).truncate(n));
    }

    #[test]
    fn series_times_denominator_recovers_numerator(f in gf()) {
        let n = 7;
        let back = (&f.series(n).unwrap() * &f.den().expand()).truncate(n);
        prop_assert_eq!(back, f.num().truncate(n));
    }

    #[test]
    fn reduce_is_idempotent_and_keeps_the_series(f in gf(), extra in factor()) {
        let padded = FactoredGF::with_factors(
            f.num().mul_one_minus(&extra),
            f.den().iter().cloned().chain([extra.clone()]),
        ).unwrap();
        let r = padded.reduce();
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert_eq!(r.series(6).unwrap(), f.series(6).unwrap());
        prop_assert!(r.den().len() <= f.den().len());
    }

    #[test]
    fn half_open_cones_partition_the_cone(v in prop::collection::vec(0i64..=4, 6)) {
        let k = 3;
        let p = LatticePoint(v);
        let hits = triangulation(k).iter().filter(|c| c.contains_halfopen(&p)).count();
        prop_assert_eq!(hits, usize::from(is_member(&p, k)));
        if is_member(&p, k) {
            let total = decompose(&p, k).unwrap().iter().fold(vec![0i64; 2 * k], |mut acc, r| {
                acc.iter_mut().zip(r.vector()).for_each(|(s, x)| *s += x);
                acc
            });
            prop_assert_eq!(total, p.0);
        }
    }

    #[test]
    fn omega_series_semantics_on_random_forms(
        num_exp in -3i32..=3,
        factors in prop::collection::vec((monomial(1), -1i32..=1), 1..4),
    ) {
        let ctx = VariableContext::new(["a", "b", "c", "v"]).unwrap();
        let mut form = CrudeForm::new(&ctx, &["v"]).unwrap();
        let mut lifted = Vec::new();
        for (m, e) in factors {
            prop_assume!(!m.is_one());
            let mut exps = m.exponents().to_vec();
            exps.push(e);
            lifted.push(Monomial::from_exponents(&exps));
        }
        let num = Polynomial::monomial(&ctx, Monomial::from_exponents(&[0, 0, 0, num_exp]));
        form.push_term(num, lifted).unwrap();
        prop_assert!(series_semantics_hold(&form, "v", 6).unwrap());
    }
}

#[test]
fn telescoping() {
    for k in 1..=4 {
        let diff = compute_q_tilde(k)
            .sub(&embed(&compute_q_tilde(k - 1), k).unwrap())
            .unwrap()
            .reduce();
        let q = compute_q(k);
        assert_eq!(diff.series(8).unwrap(), q.series(8).unwrap(), "k={k}");
    }
}

#[test]
fn enumeration_is_exhaustive_and_sound() {
    for k in 1..=3 {
        for n in 0..=6u32 {
            let all = enumerate_pp(k, n, false);
            assert!(all.iter().all(|p| p.is_valid() && p.size() <= n));
            let strict = oracle_series(k, n, true);
            let rest = &oracle_series(k, n, false) - &strict;
            assert!(rest
                .terms()
                .all(|(m, c)| m[k - 1] == 0 && *c == BigInt::from(1)));
        }
    }
    // points of the cone of size <= 4 and width 2, counted independently
    let mut count = 0;
    for code in 0..5i64.pow(4) {
        let v: Vec<i64> = (0..4).map(|i| code / 5i64.pow(i) % 5).collect();
        if is_member(&LatticePoint(v.clone()), 2) && v.iter().sum::<i64>() <= 4 {
            count += 1;
        }
    }
    assert_eq!(enumerate_pp(2, 4, false).len(), count);
}

#[test]
fn cones_are_unimodular_with_basis_rays() {
    for k in 1..=4 {
        let basis = rays_uk(k);
        for cone in triangulation(k) {
            assert_eq!(cone.determinant().abs(), 1);
            assert!(cone.rays.iter().all(|r| basis.contains(r)));
        }
    }
}

#[test]
fn p22_does_not_depend_on_elimination_order() {
    let forward = p22_via_omega().unwrap();
    let reverse = p22_via_omega_with_order(&["l21", "l11", "mu12", "mu11"]).unwrap();
    assert_eq!(forward.value.den(), reverse.value.den());
    assert_eq!(forward.value.num(), reverse.value.num());
}

#[test]
fn ap_step_agrees_with_enumeration() {
    let p23 = ap_step(&ap_step(&BoxGF::p21()).unwrap()).unwrap();
    assert_eq!(
        p23.to_plane_partition().series(5).unwrap(),
        oracle_series(3, 5, false)
    );
    assert_eq!(ap_step(&BoxGF::p21()).unwrap(), p22_via_omega().unwrap());
}

#[test]
fn extra_prefactor_breaks_agreement_with_enumeration() {
    let p23 = box_gf(3).unwrap();
    let with_prefactor = BoxGF {
        n: 3,
        value: p23.value.mul(&column_prefactor(2)).unwrap(),
    };
    assert_ne!(
        with_prefactor.to_plane_partition().series(8).unwrap(),
        oracle_series(3, 8, false)
    );
}
