use proptest::prelude::*;

use lozenge_core::formulas::*;
use lozenge_core::lattice::{Region, TriangleCell};
use lozenge_core::oracle::{count_tilings, count_tilings_by_expansion, enumerate_tilings};
use lozenge_core::properties::check_trapsimp;
use lozenge_core::regions::*;
use lozenge_core::ExactCount;

fn family_region() -> impl Strategy<Value = Region> {
    prop_oneof![
        (0i64..3, 0i64..3, 0i64..3, any::<bool>())
            .prop_filter_map("a <= b", |(a, d, c, w)| p_region(a, a + d, c, w).ok()),
        (0i64..3, 0i64..3, 0i64..3, 0i64..3, any::<bool>())
            .prop_filter_map("builds", |(x, a, b, c, w)| b_region(x, a, b, c, w).ok()),
        (1u8..=8, 0i64..2, 0i64..2, 0i64..2, 0i64..2, 0i64..2, 0i64..2).prop_filter_map(
            "fits",
            |(i, x, b, c, m, a, d)| h_region(i, HParams::new(x, b, c, m, a, d)).ok()
        ),
        (0i64..3, 1i64..3, 0i64..2, 0i64..2, 0i64..2, 0i64..2)
            .prop_filter_map("fits", |(x, y, z, m, a, b)| hs_region(HsParams::new(x, y, z, m, a, b)).ok()),
    ]
}

/// A random patch of the lattice: cells of a small box kept with probability
/// about one half.
fn blob() -> impl Strategy<Value = Region> {
    proptest::collection::vec(any::<bool>(), 36).prop_map(|keep| {
        let cells = (0..4)
            .flat_map(|r| (0..9).map(move |c| TriangleCell::new(r, c)))
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(c, _)| c);
        Region::from_cells(cells)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn built_regions_are_balanced(r in family_region()) {
        prop_assert!(r.is_balanced());
    }

    #[test]
    fn weighted_counts_are_dyadic(r in family_region()) {
        prop_assert!(count_tilings(&r).is_dyadic());
    }

    #[test]
    fn mirror_image_has_the_same_count(r in family_region()) {
        prop_assert_eq!(count_tilings(&r.reflect_vertical()), count_tilings(&r));
    }

    #[test]
    fn double_reflection_is_identity(r in family_region()) {
        prop_assert_eq!(r.reflect_vertical().reflect_vertical(), r);
    }

    #[test]
    fn forced_reduction_does_not_depend_on_order(r in blob(), seed in any::<u64>()) {
        let canonical = r.remove_forced_lozenges();
        let mut state = seed;
        let other = r.remove_forced_lozenges_by(|len| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % len
        });
        prop_assert_eq!(canonical.tileable, other.tileable);
        if canonical.tileable {
            prop_assert_eq!(&canonical.reduced, &other.reduced);
            prop_assert_eq!(canonical.weight, other.weight);
        }
    }

    #[test]
    fn forced_reduction_keeps_the_count(r in family_region()) {
        let red = r.remove_forced_lozenges();
        let after = if red.tileable { red.weight * count_tilings(&red.reduced) } else { ExactCount::zero() };
        prop_assert_eq!(after, count_tilings(&r));
    }

    #[test]
    fn witnesses_are_tilings(r in blob()) {
        let ws = enumerate_tilings(&r, 64);
        for w in &ws {
            prop_assert!(w.covers(&r));
        }
        let n = count_tilings(&r);
        if ws.len() < 64 {
            prop_assert_eq!(ExactCount::from_int(ws.len() as i64), n);
        }
    }

    #[test]
    fn two_oracles_agree_on_blobs(r in blob()) {
        prop_assert_eq!(count_tilings_by_expansion(&r), Some(count_tilings(&r)));
    }

    #[test]
    fn trapezoid_identities(num in 1i64..80, den in 1i64..9, n in 0i64..=10, m in 0i64..=10) {
        for rep in check_trapsimp(&ExactCount::ratio(num, den), n, m) {
            prop_assert!(!rep.failed(), "{}", rep);
        }
    }

    #[test]
    fn pochhammer_recurrence(num in -40i64..40, den in 1i64..7, n in -6i64..6) {
        let x = ExactCount::ratio(num, den);
        if let (Ok(a), Ok(b)) = (pochhammer(&x, n + 1), pochhammer(&x, n)) {
            prop_assert_eq!(a, b * (&x + &ExactCount::from_int(n)));
        }
    }

    #[test]
    fn region_json_round_trip(r in family_region()) {
        let s = serde_json::to_string(&r).unwrap();
        let back: Region = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, r);
    }
}
