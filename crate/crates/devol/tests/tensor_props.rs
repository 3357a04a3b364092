//! Randomized structural properties of the decomposition algebra.

use devol::tensor::{DecompKind, Kind, Rank4, SymTensor2, Voigt66};
use proptest::prelude::*;

fn components() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(-1.0e8..1.0e8f64)
}

fn scale_of(t: &SymTensor2) -> f64 {
    t.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn split_parts_rebuild_the_tensor(c in components()) {
        let t = SymTensor2::stress(c);
        let parts = t.decompose();
        let rebuilt = parts.dev + parts.vol;
        let scale = scale_of(&t);
        for (a, b) in rebuilt.components().iter().zip(t.components()) {
            prop_assert!((a - b).abs() <= 1e-14 * scale);
        }
    }

    #[test]
    fn deviator_is_traceless_and_spherical_part_is_isotropic(c in components()) {
        let t = SymTensor2::strain(c);
        let parts = t.decompose();
        let scale = scale_of(&t);
        prop_assert!(parts.dev.trace().abs() <= 1e-13 * scale);
        // off-diagonals of the spherical part vanish, diagonals all equal
        let v = parts.vol.components();
        prop_assert!(v[3] == 0.0 && v[4] == 0.0 && v[5] == 0.0);
        prop_assert!((v[0] - v[1]).abs() <= 1e-14 * scale);
        prop_assert!((v[0] - v[2]).abs() <= 1e-14 * scale);
        prop_assert!((parts.scalar - t.trace() / 3.0).abs() <= 1e-14 * scale);
    }

    #[test]
    fn multiplier_application_matches_decompose(c in components()) {
        let t = SymTensor2::stress(c);
        let parts = t.decompose();
        let md = Rank4::multiplier(DecompKind::Dev).apply(&t);
        let mv = Rank4::multiplier(DecompKind::Vol).apply(&t);
        let scale = scale_of(&t);
        for i in 0..6 {
            prop_assert!((md.components()[i] - parts.dev.components()[i]).abs() <= 1e-13 * scale);
            prop_assert!((mv.components()[i] - parts.vol.components()[i]).abs() <= 1e-13 * scale);
        }
    }

    #[test]
    fn multipliers_are_idempotent_and_orthogonal_on_data(c in components()) {
        let t = SymTensor2::stress(c);
        let dev = Rank4::multiplier(DecompKind::Dev);
        let vol = Rank4::multiplier(DecompKind::Vol);
        let scale = scale_of(&t);
        let twice = dev.apply(&dev.apply(&t));
        let once = dev.apply(&t);
        for i in 0..6 {
            prop_assert!((twice.components()[i] - once.components()[i]).abs() <= 1e-13 * scale);
        }
        let cross = dev.apply(&vol.apply(&t));
        for v in cross.components() {
            prop_assert!(v.abs() <= 1e-13 * scale);
        }
    }

    #[test]
    fn voigt_round_trip_preserves_components(c in components()) {
        for kind in [Kind::Stress, Kind::Strain] {
            let t = SymTensor2::new(kind, c);
            let back = t.to_voigt().to_tensor();
            let scale = scale_of(&t);
            for (a, b) in back.components().iter().zip(t.components()) {
                prop_assert!((a - b).abs() <= 1e-14 * scale);
            }
        }
    }

    #[test]
    fn voigt_multipliers_agree_with_rank4_action(c in components()) {
        let t = SymTensor2::strain(c);
        let scale = scale_of(&t);
        for kind in [DecompKind::Dev, DecompKind::Vol] {
            let tensor_way = Rank4::multiplier(kind).apply(&t);
            let voigt_way = Voigt66::multiplier(kind).apply(&t.to_voigt(), Kind::Strain).to_tensor();
            for i in 0..6 {
                prop_assert!(
                    (tensor_way.components()[i] - voigt_way.components()[i]).abs() <= 1e-13 * scale
                );
            }
        }
    }

    #[test]
    fn j2_ignores_hydrostatic_shift(c in components(), shift in -1.0e8..1.0e8f64) {
        let t = SymTensor2::stress(c);
        let shifted = t + SymTensor2::diag(Kind::Stress, [shift, shift, shift]);
        let (a, b) = (t.invariants(), shifted.invariants());
        let scale = a.j2.abs().max(shift * shift).max(1.0);
        prop_assert!(a.j2 >= -1e-12 * scale);
        prop_assert!((a.j2 - b.j2).abs() <= 1e-10 * scale);
        prop_assert!((a.j3 - b.j3).abs() <= 1e-10 * scale * scale.sqrt());
    }

    #[test]
    fn deviator_first_invariant_vanishes(c in components()) {
        let t = SymTensor2::stress(c);
        let dev = t.decompose().dev;
        prop_assert!(dev.invariants().i1.abs() <= 1e-13 * scale_of(&t));
    }
}
