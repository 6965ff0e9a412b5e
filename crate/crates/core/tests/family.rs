//! Invariants of the four-pole family checked through the public API only.

use proptest::prelude::*;
use strebel::qdiff::{
    classify_zeros, discriminant_closed_form, family, mu_double_zero_gauss, pullback, residue_at, MobiusMap, Point,
    StrebelParams,
};
use strebel::{ExactRatFunc, GaussRat};

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-12i64..=12, 1i64..=6, -12i64..=12, 1i64..=6).prop_map(|(a, b, c, d)| GaussRat::from_parts((a, b), (c, d)))
}

fn lambda() -> impl Strategy<Value = GaussRat> {
    gauss().prop_filter("non-degenerate", |l| !l.is_zero() && !l.is_one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_pole_has_unit_residue(l in lambda(), m in gauss()) {
        let q = family(&StrebelParams::new(l.clone(), m).unwrap()).unwrap();
        for p in [Point::int(0), Point::int(1), Point::Finite(l), Point::Infinity] {
            prop_assert_eq!(residue_at(&q, &p).unwrap().exact(), Some(GaussRat::one()));
        }
    }

    #[test]
    fn repeated_zero_exactly_on_the_discriminant_locus(l in lambda(), m in gauss()) {
        let q = family(&StrebelParams::new(l.clone(), m.clone()).unwrap()).unwrap();
        let simple = classify_zeros(&q).unwrap().tag() == "1+1+1+1";
        prop_assert_eq!(simple, !discriminant_closed_form(&l, &m).is_zero());
    }

    #[test]
    fn closed_form_mu_gives_two_double_zeros(l in lambda().prop_map(|l| GaussRat::from_rational(l.re().clone()))
        .prop_filter("non-degenerate", |l| !l.is_zero() && !l.is_one())) {
        let m = mu_double_zero_gauss(&l).unwrap();
        let q = family(&StrebelParams::new(l, m).unwrap()).unwrap();
        prop_assert_eq!(classify_zeros(&q).unwrap().tag(), "2+2");
    }

    #[test]
    fn json_round_trip(l in lambda(), m in gauss()) {
        let q = family(&StrebelParams::new(l, m).unwrap()).unwrap();
        let back: strebel::qdiff::QuadDiff = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        prop_assert_eq!(back, q);
    }
}

#[test]
fn pullback_along_the_identity_is_trivial() {
    let q = family(&StrebelParams::new(GaussRat::from_frac(1, 3), GaussRat::from_int(2)).unwrap()).unwrap();
    assert_eq!(pullback(&ExactRatFunc::x(), &q).r(), q.r());
}

#[test]
fn mobius_action_keeps_residues() {
    let q = family(&StrebelParams::new(GaussRat::from_int(-1), GaussRat::from_frac(1, 2)).unwrap()).unwrap();
    let inv = MobiusMap::new(GaussRat::zero(), GaussRat::one(), GaussRat::one(), GaussRat::zero()).unwrap();
    let moved = inv.apply_to(&q);
    for p in [Point::int(0), Point::int(1), Point::int(-1), Point::Infinity] {
        assert_eq!(residue_at(&moved, &p).unwrap().exact(), Some(GaussRat::one()), "{p:?}");
    }
}
