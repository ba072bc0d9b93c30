//! Counts computed once by the oracle and frozen here.

use lozenge_core::formulas::*;
use lozenge_core::oracle::{count_tilings, count_tilings_by_expansion};
use lozenge_core::properties::*;
use lozenge_core::regions::*;
use lozenge_core::ExactCount;

fn q(s: &str) -> ExactCount {
    s.parse().unwrap()
}

fn spec(family: Family, v: &[i64]) -> RegionSpec {
    RegionSpec::new(family, v).unwrap()
}

fn both(family: Family, v: &[i64]) -> (ExactCount, ExactCount) {
    let s = spec(family, v);
    (formula_value(&s).unwrap(), count_tilings(&s.build().unwrap()))
}

#[test]
fn small_halved_hexagons() {
    assert_eq!(both(Family::P, &[1, 1, 1]), (q("2"), q("2")));
    assert_eq!(both(Family::PWeighted, &[1, 1, 1]), (q("3/2"), q("3/2")));
    assert_eq!(both(Family::PWeighted, &[2, 3, 1]), (q("15/4"), q("15/4")));
    assert_eq!(both(Family::B, &[2, 1, 2, 2]), (q("3850"), q("3850")));
    assert_eq!(both(Family::BWeighted, &[2, 1, 2, 2]), (q("2475/2"), q("2475/2")));
}

#[test]
fn plain_hexagons() {
    assert_eq!(count_tilings(&hexagon(1, 1, 1).unwrap()), q("2"));
    assert_eq!(count_tilings(&hexagon(2, 2, 2).unwrap()), q("20"));
    assert_eq!(count_tilings(&hexagon(2, 3, 4).unwrap()), q("490"));
}

#[test]
fn one_instance_per_h_family() {
    let expect = ["36400", "3080", "1650", "405/2", "9450", "1050", "4725", "420"];
    for (i, e) in (1..=8u8).zip(expect) {
        let f = Family::from_h_index(i).unwrap();
        assert_eq!(both(f, &[1, 1, 1, 1, 1, 1]), (q(e), q(e)), "H{i}");
    }
}

#[test]
fn shamrock_hexagons() {
    assert_eq!(both(Family::HS, &[2, 1, 0, 0, 0, 0]), (q("3"), q("3")));
    assert_eq!(both(Family::HS, &[1, 2, 1, 1, 0, 1]), (q("160"), q("160")));
    assert_eq!(both(Family::HS, &[2, 3, 0, 2, 0, 1]), (q("873180"), q("873180")));
    assert_eq!(both(Family::HS, &[2, 3, 2, 1, 1, 1]), (q("962280"), q("962280")));
}

#[test]
fn shamrock_validity() {
    assert!(spec(Family::HS, &[1, 1, 0, 0, 0, 0]).validate().is_err());
    // Leaves on the boundary are not interior.
    assert!(spec(Family::HS, &[2, 1, 0, 1, 1, 0]).validate().is_err());
    // A side of length zero.
    assert!(spec(Family::HS, &[1, 0, 1, 0, 0, 0]).validate().is_err());
}

#[test]
fn printed_shamrock_table_disagrees_with_the_oracle() {
    let p = HsParams::new(2, 3, 2, 1, 1, 1);
    let printed = hs_split_printed(p).unwrap();
    let value = ExactCount::pow2(printed.exponent)
        * count_h(printed.left.0, printed.left.1).unwrap()
        * count_h(printed.right.0, printed.right.1).unwrap();
    let oracle = count_tilings(&hs_region(p).unwrap());
    assert_ne!(value, oracle);
    assert_eq!(count_hs(p).unwrap(), oracle);
}

#[test]
fn shamrock_halves_recombine() {
    for p in [
        HsParams::new(2, 1, 0, 0, 0, 0),
        HsParams::new(1, 2, 1, 1, 0, 1),
        HsParams::new(3, 1, 1, 1, 1, 0),
        HsParams::new(2, 2, 2, 0, 1, 1),
    ] {
        let h = hs_halves(p).unwrap();
        assert_eq!(h.exponent, p.y + p.b);
        let whole = count_tilings(&hs_region(p).unwrap());
        let split = ExactCount::pow2(h.exponent) * count_tilings(&h.left) * count_tilings(&h.right);
        assert_eq!(whole, split, "{p}");
    }
}

#[test]
fn shamrock_halves_are_the_factor_regions() {
    let p = HsParams::new(2, 1, 0, 0, 0, 0);
    let h = hs_halves(p).unwrap();
    let s = hs_split(p).unwrap();
    let mut got = [count_tilings(&h.left), count_tilings(&h.right)];
    let mut want = [count_h(s.left.0, s.left.1).unwrap(), count_h(s.right.0, s.right.1).unwrap()];
    got.sort();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn kuo_examples() {
    assert!(check_kuo_b(1, 0, 1, 1).holds);
    assert!(check_kuo_b(2, 1, 2, 2).holds);
    assert!(check_kuo_b_oracle(1, 0, 1, 1, 500).holds);
    assert!(check_kuo_b_oracle(1, 1, 1, 1, 500).holds);
    assert!(check_kuo_h(1, HVariant::DShrink, HParams::new(1, 0, 1, 0, 0, 1)).holds);
    assert!(check_kuo_h(1, HVariant::AShrink, HParams::new(1, 0, 1, 0, 1, 0)).holds);
    let p = HParams::new(1, 0, 1, 1, 0, 1);
    assert!(check_kuo_h(4, HVariant::DShrink, p).holds);
    assert!(check_kuo_h_oracle(4, HVariant::DShrink, p, 500).holds);
}

#[test]
fn kuo_preconditions_skip() {
    let r = check_kuo_h(1, HVariant::DShrink, HParams::new(1, 0, 1, 0, 0, 0));
    assert!(r.is_skipped());
    // H4 needs m >= 1; the terms would leave the family.
    let r = check_kuo_h(4, HVariant::AShrink, HParams::new(1, 0, 1, 0, 2, 1));
    assert!(r.is_skipped());
}

#[test]
fn magnet_bar_both_parities() {
    for (x, y, m, a) in [(1, 2, 0, 2), (1, 2, 1, 1), (2, 3, 0, 3), (1, 1, 1, 0)] {
        let r = check_magnet_bar(x, y, m, a);
        assert!(r.holds, "{r}");
    }
}

#[test]
fn base_case_examples() {
    let reports = check_base_reductions(&BaseGrid { b_max: 2, h_max: 1 });
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r.holds), "{:?}", reports.iter().find(|r| !r.holds));
}

#[test]
fn expansion_agrees_with_the_sweep() {
    for r in [
        p_region(2, 3, 1, true).unwrap(),
        b_region(1, 1, 1, 1, true).unwrap(),
        hs_region(HsParams::new(2, 1, 0, 0, 0, 0)).unwrap(),
        h_region(5, HParams::new(1, 0, 1, 1, 0, 1)).unwrap(),
    ] {
        assert_eq!(count_tilings_by_expansion(&r), Some(count_tilings(&r)));
    }
}
