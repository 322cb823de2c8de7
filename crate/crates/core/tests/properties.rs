use axial_core::field::{MultiPoly, PrimeFieldElem, RatFunc, Rational, Scalar, Var};
use axial_core::frobenius::{gram_closed_form, gram_det, gram_det_formula, radical};
use axial_core::jordan::{build_hermitian_iso, build_m3_iso, conj_transpose, special_product};
use axial_core::universal::{
    axis_products, build_symbolic, build_universal, eta_relations, phi, EtaMode, UniversalParams, AC, A_BC, B, B_AC,
    DIM,
};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn params() -> impl Strategy<Value = UniversalParams<Rational>> {
    (rat(), rat(), rat(), rat()).prop_map(|(a, b, c, p)| UniversalParams::new(a, b, c, p))
}

fn vector() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rat(), DIM)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_commutes(p in params(), x in vector(), y in vector()) {
        let alg = build_universal(&p).unwrap();
        prop_assert_eq!(alg.multiply(&x, &y).unwrap(), alg.multiply(&y, &x).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn subalgebra_inside_ideal(p in params(), x in vector(), y in vector()) {
        let alg = build_universal(&p).unwrap();
        let gens = vec![x, y];
        let sub = alg.subalgebra_closure(&gens).unwrap();
        let ideal = alg.ideal_closure(&gens).unwrap();
        prop_assert!(sub.is_subspace_of(&ideal));
    }

    #[test]
    fn determinant_matches_closed_form(p in params()) {
        prop_assert_eq!(gram_det(&p).unwrap(), gram_det_formula(&p));
    }

    /// Points with alpha + beta + gamma = 2 psi + 1, where the form degenerates.
    #[test]
    fn radical_on_the_lambda_surface(a in rat(), b in rat(), c in rat()) {
        let psi = a.add(&b).add(&c).sub(&Rational::from_int(1)).mul(&Rational::new(1, 2).unwrap());
        let p = UniversalParams::new(a, b, c, psi);
        let alg = build_universal(&p).unwrap();
        let g = gram_closed_form(&p).unwrap();
        let r = radical(&alg, &g, Some(&p)).unwrap();
        prop_assert_eq!(r.rank + r.radical.dim(), DIM);
        prop_assert!(r.radical.dim() > 0);
        prop_assert!(r.is_ideal);
        prop_assert_eq!(r.table_span_matches, Some(true));
        prop_assert_eq!(Some(r.rank), r.printed_rank);
    }

    /// Points with alpha beta gamma = psi^2.
    #[test]
    fn radical_on_the_delta_surface(a in rat(), b in rat(), psi in rat()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let c = psi.mul(&psi).checked_div(&a.mul(&b)).unwrap();
        let p = UniversalParams::new(a, b, c, psi);
        let alg = build_universal(&p).unwrap();
        let r = radical(&alg, &gram_closed_form(&p).unwrap(), Some(&p)).unwrap();
        prop_assert!(r.is_ideal);
        prop_assert_eq!(r.table_span_matches, Some(true));
        prop_assert_eq!(Some(r.rank), r.printed_rank);
    }

    /// `gamma` chosen so that `psi^2 - alpha beta gamma = root^2`.
    #[test]
    fn split_isomorphism(a in rat(), b in rat(), psi in rat(), root in rat()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let c = psi.mul(&psi).sub(&root.mul(&root)).checked_div(&a.mul(&b)).unwrap();
        let p = UniversalParams::new(a, b, c, psi);
        prop_assume!(!p.lambda().is_zero() && !p.delta().is_zero());
        let w = build_m3_iso(&p).unwrap();
        prop_assert!(w.passed());
    }
}

#[test]
fn hermitian_fixed_algebra_over_small_primes() {
    let mut built = 0;
    for modulus in [7u64, 11, 13, 19] {
        let f = |k: i64| PrimeFieldElem::new(k, modulus).unwrap();
        for (a, b, c, psi) in [(1, 1, 1, 2), (1, 2, 3, 1), (2, 3, 1, 4), (3, 1, 5, 2)] {
            let p = UniversalParams::new(f(a), f(b), f(c), f(psi));
            if p.lambda().is_zero() || p.delta().is_zero() || p.delta().neg().is_residue() {
                continue;
            }
            let h = build_hermitian_iso(&p, None).unwrap();
            assert!(h.passed(), "p = {modulus}: {:?}", h.checks);
            for x in &h.fixed_basis {
                assert_eq!(conj_transpose(x), *x);
                for y in &h.fixed_basis {
                    let xy = special_product(x, y).unwrap();
                    assert_eq!(conj_transpose(&xy), xy);
                }
            }
            built += 1;
        }
    }
    assert!(built >= 4);
}

#[test]
fn peirce_spaces_fill_the_algebra() {
    let alg = build_symbolic();
    let half = RatFunc::constant(Rational::new(1, 2).unwrap());
    for k in 0..3 {
        let d = alg.peirce(&alg.basis_vector(k), &half).unwrap();
        let (one, zero, eta) = d.dims();
        assert_eq!(one + zero + eta, DIM);
        assert!(alg.check_fusion(&d).unwrap().passed());
    }
}

#[test]
fn pairing_of_a_with_b_ac_for_symbolic_eta() {
    // (a, b(ac)) read from phi_a against (b, a(ac)) from the derived axis row
    let t = axis_products(EtaMode::Symbolic).unwrap();
    let eta = MultiPoly::var(Var::Eta);
    let a_ac = t.entry(0, AC).unwrap();
    let phi_b = phi(B, &eta);
    let lhs = phi_b.iter().zip(a_ac).fold(MultiPoly::zero(), |s, (x, y)| s.add(&x.mul(y)));
    let phi_a = phi(0, &eta);
    let (al, ga, ps) = (MultiPoly::var(Var::Alpha), MultiPoly::var(Var::Gamma), MultiPoly::var(Var::Psi));
    let want = MultiPoly::one().sub(&eta).mul(&al).mul(&ga).add(&eta.mul(&ps));
    assert_eq!(lhs, want);
    assert_eq!(phi_a[B_AC], want);
    assert_ne!(phi_a[A_BC], want);
}

#[test]
fn first_relation_is_antisymmetric_in_beta_gamma() {
    let r = eta_relations().unwrap();
    let swapped = r.differences[0].permute_vars(&[0, 2, 1, 3, 4]);
    assert_eq!(swapped, r.differences[0].neg());
}
