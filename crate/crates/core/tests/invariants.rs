//! Property tests over small random inputs.

use bc1::ops::{base_operator, cherednik, composite_shift, poly_of, AnyOp, Realization};
use bc1::pairing::{pair_scalar, PairingKind};
use bc1::polynomials::nonsym_jacobi;
use bc1::rational::rat;
use bc1::structure::decompose_shift;
use bc1::{DROp, Label, Laurent, Multiplicity, RatFunc, Shift, Var};
use proptest::prelude::*;

fn coef() -> impl Strategy<Value = bc1::Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn laurent(span: i64) -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-span..=span, coef()), 0..5).prop_map(|t| Laurent::from_terms(Var::Z, t))
}

fn poly_xi(max_deg: i64) -> impl Strategy<Value = Laurent> {
    (prop::collection::vec(coef(), 0..=max_deg as usize), 1i64..=3)
        .prop_map(|(c, lead)| {
            let deg = c.len() as i64;
            let mut p = Laurent::from_terms(Var::Xi, c.into_iter().enumerate().map(|(e, c)| (e as i64, c)));
            p.add_term(deg, rat(lead, 1));
            p
        })
}

/// Sums of c(z)·θ^i·s^j with polynomial coefficients.
fn small_op() -> impl Strategy<Value = DROp> {
    prop::collection::vec((laurent(2), 0u32..=2, 0u8..=1), 1..3).prop_map(|ts| {
        let mut op = DROp::zero();
        for (c, i, j) in ts {
            op.add_term(i, j, RatFunc::poly(c));
        }
        op
    })
}

fn int_k() -> impl Strategy<Value = Multiplicity> {
    (0i64..=3, 0i64..=2).prop_map(|(a, b)| Multiplicity::ints(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn laurent_ring_laws(a in laurent(4), b in laurent(4), c in laurent(4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn reflection_is_a_ring_involution(a in laurent(4), b in laurent(4)) {
        prop_assert_eq!(a.reflect().reflect(), a.clone());
        prop_assert_eq!((&a * &b).reflect(), &a.reflect() * &b.reflect());
    }

    #[test]
    fn ratfunc_cancels(a in laurent(3), b in laurent(3)) {
        prop_assume!(!b.is_zero());
        let q = &RatFunc::poly(a.clone()) / &RatFunc::poly(b.clone());
        prop_assert_eq!(&q * &RatFunc::poly(b), RatFunc::poly(a));
    }

    #[test]
    fn composition_is_associative(a in small_op(), b in small_op(), c in small_op()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn composition_matches_application(a in small_op(), b in small_op(), f in laurent(3)) {
        let f = RatFunc::poly(f);
        prop_assert_eq!((&a * &b).apply_rational(&f), a.apply_rational(&b.apply_rational(&f)));
    }

    #[test]
    fn laurent_json_round_trip(a in laurent(6)) {
        let s = serde_json::to_string(&a).unwrap();
        let back: Laurent = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn cherednik_eigen(k in int_k(), n in -6i64..=6) {
        let e = nonsym_jacobi(n, &k).unwrap();
        prop_assert_eq!(cherednik(&k).apply(&e).unwrap(), e.scale(&Label(n).tilde(&k)));
    }

    #[test]
    fn pairing_is_symmetric(k in int_k(), f in laurent(3), g in laurent(3)) {
        let pk = PairingKind::ct(&k);
        prop_assert_eq!(pair_scalar(&f, &g, &pk).unwrap(), pair_scalar(&g, &f, &pk).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn nonsym_structure_round_trip(p in poly_xi(2), which in 0usize..4) {
        let k = Multiplicity::ints(2, 1);
        let l = [Shift::G_PLUS, Shift::G_MINUS, Shift::E_PLUS, Shift::E_MINUS][which];
        let r = Realization::Nonsym;
        let op: AnyOp = composite_shift(r, l, &k).unwrap().compose(&poly_of(&p, &base_operator(r, &k)));
        let d = decompose_shift(&op, r, l, &k).unwrap();
        prop_assert_eq!(d.poly, p);
        prop_assert!(d.residual_is_zero);
    }
}
