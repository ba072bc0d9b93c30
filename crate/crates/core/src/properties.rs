//! Numerical checks of the structural identities.
//!
//! Every check returns [`IdentityReport`]s. A report either compares two
//! exact values or records why the instance was skipped; skipped instances
//! are never failures.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::batch;
use crate::exact::ExactCount;
use crate::formulas::{
    count_b, count_b_weighted, count_h, count_hs, count_p, pochhammer, skipped_pochhammer, trapezoid_t,
    trapezoid_v, FormulaError, HParams, HsParams,
};
use crate::lattice::{Region, TriangleCell};
use crate::oracle::count_tilings;
use crate::regions::{b_region, h_fits, h_region, hexagon, hs_halves, hs_parts_with, hs_region, p_region};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub lhs: Option<ExactCount>,
    pub rhs: Option<ExactCount>,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl IdentityReport {
    pub fn compared(identity: &str, params: BTreeMap<String, String>, lhs: ExactCount, rhs: ExactCount) -> Self {
        let holds = lhs == rhs;
        IdentityReport {
            identity: identity.to_string(),
            params,
            lhs: Some(lhs),
            rhs: Some(rhs),
            holds,
            skipped: None,
        }
    }

    pub fn skip(identity: &str, params: BTreeMap<String, String>, why: impl Into<String>) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            params,
            lhs: None,
            rhs: None,
            holds: false,
            skipped: Some(why.into()),
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }

    pub fn failed(&self) -> bool {
        self.skipped.is_none() && !self.holds
    }

    fn from_result(
        identity: &str,
        params: BTreeMap<String, String>,
        sides: Result<(ExactCount, ExactCount), String>,
    ) -> Self {
        match sides {
            Ok((l, r)) => Self::compared(identity, params, l, r),
            Err(why) => Self::skip(identity, params, why),
        }
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let status = match (&self.skipped, self.holds) {
            (Some(why), _) => format!("SKIP ({why})"),
            (None, true) => "OK".to_string(),
            (None, false) => "FAIL".to_string(),
        };
        write!(f, "{} [{}] {}", self.identity, ps.join(" "), status)?;
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            write!(f, " {l} vs {r}")?;
        }
        Ok(())
    }
}

/// Totals over a batch of reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Tally {
    pub fn of(reports: &[IdentityReport]) -> Self {
        let mut t = Tally::default();
        for r in reports {
            if r.is_skipped() {
                t.skipped += 1;
            } else if r.holds {
                t.passed += 1;
            } else {
                t.failed += 1;
            }
        }
        t
    }
}

fn named(names: &[&str], values: &[i64]) -> BTreeMap<String, String> {
    names.iter().zip(values).map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn h_named(i: u8, p: HParams) -> BTreeMap<String, String> {
    let mut m = named(&["x", "b", "c", "m", "a", "d"], &[p.x, p.b, p.c, p.m, p.a, p.d]);
    m.insert("i".into(), i.to_string());
    m
}

fn hs_named(p: HsParams) -> BTreeMap<String, String> {
    named(&["x", "y", "z", "m", "a", "b"], &[p.x, p.y, p.z, p.m, p.a, p.b])
}

fn ferr(e: FormulaError) -> String {
    e.to_string()
}

fn kuo_sides(t: [ExactCount; 6]) -> (ExactCount, ExactCount) {
    let [t1, t2, t3, t4, t5, t6] = t;
    (t1 * t2, t3 * t4 + t5 * t6)
}

fn collect6<E>(items: [Result<ExactCount, E>; 6]) -> Result<[ExactCount; 6], E> {
    let [a, b, c, d, e, f] = items;
    Ok([a?, b?, c?, d?, e?, f?])
}

// ---------------------------------------------------------------------------
// Trapezoid simplifications

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrapIdentity {
    /// `T(x,n+1,m) / T(x,n,m) = (x+n-m+1)_m`
    TShiftN,
    /// `T(x+1,n,m) / T(x,n,m) = (x+n-m+1)_m / (x)_m`
    TShiftX,
    /// `V(x,n+1,m) / V(x,n,m) = [x+2n-2m+2]_m`
    VShiftN,
    /// `V(x+2,n,m) / V(x,n,m) = [x+2n-2m+2]_m / [x]_m`
    VShiftX,
}

impl TrapIdentity {
    pub const ALL: [TrapIdentity; 4] = [Self::TShiftN, Self::TShiftX, Self::VShiftN, Self::VShiftX];

    pub fn name(self) -> &'static str {
        match self {
            Self::TShiftN => "trapsimp-t-n",
            Self::TShiftX => "trapsimp-t-x",
            Self::VShiftN => "trapsimp-v-n",
            Self::VShiftX => "trapsimp-v-x",
        }
    }
}

fn ratio(num: ExactCount, den: ExactCount) -> Result<ExactCount, String> {
    let inv = den.recip().ok_or_else(|| "zero denominator".to_string())?;
    Ok(num * inv)
}

fn trap_sides(id: TrapIdentity, x: &ExactCount, n: i64, m: i64) -> Result<(ExactCount, ExactCount), String> {
    let int = ExactCount::from_int;
    match id {
        TrapIdentity::TShiftN => {
            let l = ratio(trapezoid_t(x, n + 1, m).map_err(ferr)?, trapezoid_t(x, n, m).map_err(ferr)?)?;
            let r = pochhammer(&(x + &int(n - m + 1)), m).map_err(ferr)?;
            Ok((l, r))
        }
        TrapIdentity::TShiftX => {
            let l = ratio(trapezoid_t(&(x + &int(1)), n, m).map_err(ferr)?, trapezoid_t(x, n, m).map_err(ferr)?)?;
            let r = ratio(
                pochhammer(&(x + &int(n - m + 1)), m).map_err(ferr)?,
                pochhammer(x, m).map_err(ferr)?,
            )?;
            Ok((l, r))
        }
        TrapIdentity::VShiftN => {
            let l = ratio(trapezoid_v(x, n + 1, m).map_err(ferr)?, trapezoid_v(x, n, m).map_err(ferr)?)?;
            let r = skipped_pochhammer(&(x + &int(2 * n - 2 * m + 2)), m).map_err(ferr)?;
            Ok((l, r))
        }
        TrapIdentity::VShiftX => {
            let l = ratio(trapezoid_v(&(x + &int(2)), n, m).map_err(ferr)?, trapezoid_v(x, n, m).map_err(ferr)?)?;
            let r = ratio(
                skipped_pochhammer(&(x + &int(2 * n - 2 * m + 2)), m).map_err(ferr)?,
                skipped_pochhammer(x, m).map_err(ferr)?,
            )?;
            Ok((l, r))
        }
    }
}

/// All four trapezoid identities at one point.
pub fn check_trapsimp(x: &ExactCount, n: i64, m: i64) -> Vec<IdentityReport> {
    TrapIdentity::ALL
        .iter()
        .map(|&id| {
            let mut params = named(&["n", "m"], &[n, m]);
            params.insert("x".into(), x.to_string());
            IdentityReport::from_result(id.name(), params, trap_sides(id, x, n, m))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Condensation recurrences

fn kuo_b_terms(x: i64, a: i64, b: i64, c: i64) -> [(i64, i64, i64, i64); 6] {
    [
        (x, a, b, c),
        (x, a, b - 1, c - 1),
        (x, a, b, c - 1),
        (x, a, b - 1, c),
        (x + 1, a, b - 1, c - 1),
        (x - 1, a, b, c),
    ]
}

/// `M(B_{x,a,b,c}) M(B_{x,a,b-1,c-1}) = M(B_{x,a,b,c-1}) M(B_{x,a,b-1,c})
/// + M(B_{x+1,a,b-1,c-1}) M(B_{x-1,a,b,c})` on formula values.
pub fn check_kuo_b(x: i64, a: i64, b: i64, c: i64) -> IdentityReport {
    let params = named(&["x", "a", "b", "c"], &[x, a, b, c]);
    if x < 1 || b < 1 || c < 1 || a < 0 {
        return IdentityReport::skip("kuo-b", params, "needs x, b, c >= 1");
    }
    let t = kuo_b_terms(x, a, b, c).map(|(x, a, b, c)| count_b(x, a, b, c));
    IdentityReport::from_result("kuo-b", params, collect6(t).map(kuo_sides).map_err(ferr))
}

/// Same recurrence on oracle counts of the built regions; skipped when any
/// region exceeds `max_cells`.
pub fn check_kuo_b_oracle(x: i64, a: i64, b: i64, c: i64, max_cells: usize) -> IdentityReport {
    let params = named(&["x", "a", "b", "c"], &[x, a, b, c]);
    if x < 1 || b < 1 || c < 1 || a < 0 {
        return IdentityReport::skip("kuo-b-oracle", params, "needs x, b, c >= 1");
    }
    let regions = kuo_b_terms(x, a, b, c).map(|(x, a, b, c)| b_region(x, a, b, c, false));
    let sides = collect6_regions(regions, max_cells).map(kuo_sides);
    IdentityReport::from_result("kuo-b-oracle", params, sides)
}

fn collect6_regions<E: fmt::Display>(
    regions: [Result<Region, E>; 6],
    max_cells: usize,
) -> Result<[ExactCount; 6], String> {
    let mut out = Vec::with_capacity(6);
    for r in regions {
        let r = r.map_err(|e| e.to_string())?;
        if r.len() > max_cells {
            return Err(format!("region with {} cells is over the oracle limit", r.len()));
        }
        out.push(count_tilings(&r));
    }
    Ok(out.try_into().expect("six regions"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HVariant {
    #[serde(rename = "D_SHRINK")]
    DShrink,
    #[serde(rename = "A_SHRINK")]
    AShrink,
}

impl HVariant {
    pub fn name(self) -> &'static str {
        match self {
            HVariant::DShrink => "d-shrink",
            HVariant::AShrink => "a-shrink",
        }
    }
}

/// The six parameter sets of the recurrence, in the order
/// `t1 t2 = t3 t4 + t5 t6`.
pub fn kuo_h_terms(variant: HVariant, p: HParams) -> [HParams; 6] {
    let HParams { x, b, c, m, a, d } = p;
    let h = HParams::new;
    match variant {
        HVariant::DShrink => [
            p,
            h(x, b, c, m, a, d - 1),
            h(x + 1, b, c, m, a, d - 1),
            h(x - 1, b, c, m, a, d),
            h(x, b, c + 1, m, a, d - 1),
            h(x, b, c - 1, m, a, d),
        ],
        HVariant::AShrink => [
            p,
            h(x, b + 1, c - 1, m, a - 1, d),
            h(x + 1, b + 1, c - 1, m, a - 1, d),
            h(x - 1, b, c, m, a, d),
            h(x, b + 1, c, m, a - 1, d),
            h(x, b, c - 1, m, a, d),
        ],
    }
}

fn kuo_h_pre(i: u8, variant: HVariant, p: HParams) -> Result<(), String> {
    if !(1..=8).contains(&i) {
        return Err(format!("no family H{i}"));
    }
    let (k, what) = match variant {
        HVariant::DShrink => (p.d, "d"),
        HVariant::AShrink => (p.a, "a"),
    };
    if k < 1 || p.x < 1 || p.c < 1 {
        return Err(format!("needs {what}, x, c >= 1"));
    }
    // The recurrence comes from the regions, so every term must be one.
    for t in kuo_h_terms(variant, p) {
        h_fits(i, t).map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// The H recurrences on formula values, with `H_i` in place of `H_1`.
pub fn check_kuo_h(i: u8, variant: HVariant, p: HParams) -> IdentityReport {
    let name = format!("kuo-h-{}", variant.name());
    let params = h_named(i, p);
    if let Err(why) = kuo_h_pre(i, variant, p) {
        return IdentityReport::skip(&name, params, why);
    }
    let t = kuo_h_terms(variant, p).map(|q| count_h(i, q));
    IdentityReport::from_result(&name, params, collect6(t).map(kuo_sides).map_err(ferr))
}

/// The H recurrences on oracle counts of the built regions.
pub fn check_kuo_h_oracle(i: u8, variant: HVariant, p: HParams, max_cells: usize) -> IdentityReport {
    let name = format!("kuo-h-{}-oracle", variant.name());
    let params = h_named(i, p);
    if let Err(why) = kuo_h_pre(i, variant, p) {
        return IdentityReport::skip(&name, params, why);
    }
    let regions = kuo_h_terms(variant, p).map(|q| h_region(i, q));
    let sides = collect6_regions(regions, max_cells).map(kuo_sides);
    IdentityReport::from_result(&name, params, sides)
}

// ---------------------------------------------------------------------------
// Condensation on raw graphs

fn centre(c: TriangleCell) -> (f64, f64) {
    let dy = if c.is_up() { 2.0 / 3.0 } else { 1.0 / 3.0 };
    (c.col() as f64 * 0.5, (c.row() as f64 + dy) * 3f64.sqrt() / 2.0)
}

/// Cells with an edge on the boundary, in angular order around the centroid.
/// For the convex regions used here this is their order along the outer face.
fn boundary_cycle(region: &Region) -> Vec<TriangleCell> {
    let n = region.len().max(1) as f64;
    let (sx, sy) = region
        .cells()
        .iter()
        .map(|&c| centre(c))
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (cx, cy) = (sx / n, sy / n);
    let mut cells: Vec<(f64, TriangleCell)> = region
        .cells()
        .iter()
        .copied()
        .filter(|c| c.adjacency().iter().any(|d| !region.contains(*d)))
        .map(|c| {
            let (x, y) = centre(c);
            ((y - cy).atan2(x - cx), c)
        })
        .collect();
    cells.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    cells.into_iter().map(|(_, c)| c).collect()
}

/// Picks four cells from `cycle`, in cyclic order, whose orientations read
/// `pattern` after a rotation.
fn pick_in_order(cycle: &[TriangleCell], pattern: [bool; 4], rng: &mut StdRng) -> Option<[TriangleCell; 4]> {
    if cycle.len() < 4 {
        return None;
    }
    let idx: Vec<usize> = (0..cycle.len()).collect();
    for _ in 0..1000 {
        let mut pick: Vec<usize> = idx.choose_multiple(rng, 4).copied().collect();
        pick.sort_unstable();
        for rot in 0..4 {
            let cells: Vec<TriangleCell> = (0..4).map(|k| cycle[pick[(k + rot) % 4]]).collect();
            if cells.iter().zip(pattern).all(|(c, up)| c.is_up() == up) {
                return Some([cells[0], cells[1], cells[2], cells[3]]);
            }
        }
    }
    None
}

fn minus(region: &Region, cells: &[TriangleCell]) -> ExactCount {
    count_tilings(&region.without_cells(cells.iter()))
}

fn cells_named(cells: &[TriangleCell]) -> BTreeMap<String, String> {
    ["u", "v", "w", "s"]
        .iter()
        .zip(cells)
        .map(|(k, c)| (k.to_string(), format!("{c:?}")))
        .collect()
}

/// Balanced condensation with `u, w` up and `v, s` down in cyclic order on
/// the outer face.
pub fn check_kuo_balanced(region: &Region, [u, v, w, s]: [TriangleCell; 4]) -> IdentityReport {
    let mut params = cells_named(&[u, v, w, s]);
    params.insert("cells".into(), region.len().to_string());
    let lhs = count_tilings(region) * minus(region, &[u, v, w, s]);
    let rhs = minus(region, &[u, v]) * minus(region, &[w, s]) + minus(region, &[u, s]) * minus(region, &[v, w]);
    IdentityReport::compared("kuo-graph-balanced", params, lhs, rhs)
}

/// Condensation for one surplus up cell: `u, v, w` up and `s` down in cyclic
/// order on the outer face.
pub fn check_kuo_unbalanced(region: &Region, [u, v, w, s]: [TriangleCell; 4]) -> IdentityReport {
    let mut params = cells_named(&[u, v, w, s]);
    params.insert("cells".into(), region.len().to_string());
    let lhs = minus(region, &[v]) * minus(region, &[u, w, s]);
    let rhs = minus(region, &[u]) * minus(region, &[v, w, s]) + minus(region, &[w]) * minus(region, &[u, v, s]);
    IdentityReport::compared("kuo-graph-unbalanced", params, lhs, rhs)
}

fn random_convex(rng: &mut StdRng, max_side: i64) -> Region {
    let max_side = max_side.max(1);
    let (a, b, c) = (
        rng.gen_range(1..=max_side),
        rng.gen_range(1..=max_side),
        rng.gen_range(1..=max_side),
    );
    hexagon(a, b, c).expect("positive sides")
}

/// Both condensation lemmas on `cfg.regions` random hexagons each. The
/// unbalanced graphs drop one down cell from the boundary.
pub fn kuo_graph_reports(cfg: &KuoGraphGrid) -> Vec<IdentityReport> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < cfg.regions && tries < 100 * cfg.regions.max(1) {
        tries += 1;
        let r = random_convex(&mut rng, cfg.max_side);
        if let Some(q) = pick_in_order(&boundary_cycle(&r), [true, false, true, false], &mut rng) {
            out.push(check_kuo_balanced(&r, q));
        }
    }
    let mut done = 0;
    tries = 0;
    while done < cfg.regions && tries < 100 * cfg.regions.max(1) {
        tries += 1;
        let r = random_convex(&mut rng, cfg.max_side);
        let cycle = boundary_cycle(&r);
        let downs: Vec<TriangleCell> = cycle.iter().copied().filter(|c| !c.is_up()).collect();
        let Some(&gone) = downs.choose(&mut rng) else { continue };
        let g = r.without_cells([gone].iter());
        let rest: Vec<TriangleCell> = cycle
            .iter()
            .copied()
            .filter(|&c| c != gone && !c.is_adjacent(gone))
            .collect();
        if let Some(q) = pick_in_order(&rest, [true, true, true, false], &mut rng) {
            out.push(check_kuo_unbalanced(&g, q));
            done += 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Factorization

/// Axis-cut factorization of the shamrock hexagon: the oracle count against
/// `2^k M(L) M(R)` on the halves, and against the product formula.
pub fn check_factorization_hs(p: HsParams) -> Vec<IdentityReport> {
    let params = hs_named(p);
    let region = match hs_region(p) {
        Ok(r) => r,
        Err(e) => {
            return vec![
                IdentityReport::skip("factorization-halves", params.clone(), e.to_string()),
                IdentityReport::skip("factorization-formula", params, e.to_string()),
            ];
        }
    };
    let whole = count_tilings(&region);
    let halves = hs_halves(p)
        .map(|h| ExactCount::pow2(h.exponent) * count_tilings(&h.left) * count_tilings(&h.right))
        .map_err(|e| e.to_string());
    let formula = count_hs(p).map_err(ferr);
    vec![
        IdentityReport::from_result("factorization-halves", params.clone(), halves.map(|h| (whole.clone(), h))),
        IdentityReport::from_result("factorization-formula", params, formula.map(|f| (whole, f))),
    ]
}

/// The shamrock hexagon with an empty stem and leaves on the boundary,
/// `HS(2x, y, 0, 2m+1, a, 0)`, against `2^y M(B_{x,m,a,y}) M(B'_{x,m+1,a,y-1})`.
pub fn check_magnet_bar(x: i64, y: i64, m: i64, a: i64) -> IdentityReport {
    let params = named(&["x", "y", "m", "a"], &[x, y, m, a]);
    if y < 1 || x < 0 || m < 0 || a < 0 {
        return IdentityReport::skip("magnet-bar", params, "needs y >= 1");
    }
    let p = HsParams::new(2 * x, y, 0, 2 * m + 1, a, 0);
    let sides = hs_parts_with(p, false).map_err(|e| e.to_string()).and_then(|(hex, leaf)| {
        let whole = count_tilings(&Region::new(hex.difference(&leaf).copied().collect()));
        let b = count_b(x, m, a, y).map_err(ferr)?;
        let bw = count_b_weighted(x, m + 1, a, y - 1).map_err(ferr)?;
        Ok((whole, ExactCount::pow2(y) * b * bw))
    });
    IdentityReport::from_result("magnet-bar", params, sides)
}

// ---------------------------------------------------------------------------
// Base cases

fn oracle_of<E: fmt::Display>(r: Result<Region, E>) -> Result<ExactCount, String> {
    r.map(|r| count_tilings(&r)).map_err(|e| e.to_string())
}

fn pair<E: fmt::Display>(
    l: Result<ExactCount, E>,
    r: Result<ExactCount, E>,
) -> Result<(ExactCount, ExactCount), String> {
    Ok((l.map_err(|e| e.to_string())?, r.map_err(|e| e.to_string())?))
}

/// The reductions used as induction bases, each on formula values and on
/// oracle counts of the regions involved.
pub fn check_base_reductions(cfg: &BaseGrid) -> Vec<IdentityReport> {
    let bn = cfg.b_max;
    let hn = cfg.h_max;
    let mut jobs: Vec<(&'static str, Vec<i64>)> = Vec::new();
    for v in grid(&[[0, bn]; 3]) {
        jobs.push(("b-x0", v.clone()));
        jobs.push(("b-b0", v.clone()));
        jobs.push(("b-c0", v));
    }
    for v in grid(&[[0, hn]; 5]) {
        jobs.push(("h1-x0", v.clone()));
        jobs.push(("h1-c0", v));
    }
    batch::map(&jobs, |(kind, v)| base_case(kind, v)).into_iter().flatten().collect()
}

fn base_case(kind: &str, v: &[i64]) -> Vec<IdentityReport> {
    let f = format!("{kind}-formula");
    let o = format!("{kind}-oracle");
    match kind {
        // B_{0,a,b,c} against P_{c,c,a}
        "b-x0" => {
            let (a, b, c) = (v[0], v[1], v[2]);
            let ps = named(&["a", "b", "c"], &[a, b, c]);
            vec![
                IdentityReport::from_result(&f, ps.clone(), pair(count_b(0, a, b, c), count_p(c, c, a))),
                IdentityReport::from_result(
                    &o,
                    ps,
                    pair(oracle_of(b_region(0, a, b, c, false)), oracle_of(p_region(c, c, a, false))),
                ),
            ]
        }
        // B_{x,a,0,c} against P_{c,c,x+a}
        "b-b0" => {
            let (x, a, c) = (v[0], v[1], v[2]);
            let ps = named(&["x", "a", "c"], &[x, a, c]);
            vec![
                IdentityReport::from_result(&f, ps.clone(), pair(count_b(x, a, 0, c), count_p(c, c, x + a))),
                IdentityReport::from_result(
                    &o,
                    ps,
                    pair(oracle_of(b_region(x, a, 0, c, false)), oracle_of(p_region(c, c, x + a, false))),
                ),
            ]
        }
        // B_{x,a,b,0}: after the forced lozenges a hexagon with sides x, b, 2a+1
        "b-c0" => {
            let (x, a, b) = (v[0], v[1], v[2]);
            let ps = named(&["x", "a", "b"], &[x, a, b]);
            let hex = if x == 0 || b == 0 {
                Ok(ExactCount::one())
            } else {
                oracle_of(hexagon(x, b, 2 * a + 1))
            };
            let residual = b_region(x, a, b, 0, false).map_err(|e| e.to_string()).map(|r| {
                let red = r.remove_forced_lozenges();
                if red.tileable {
                    red.weight * count_tilings(&red.reduced)
                } else {
                    ExactCount::zero()
                }
            });
            vec![
                IdentityReport::from_result(&f, ps.clone(), pair(count_b(x, a, b, 0).map_err(ferr), hex.clone())),
                IdentityReport::from_result(&o, ps, pair(residual, hex)),
            ]
        }
        // H1(0,b,c;m,a,d) against P_{c+d,c+d,m} B_{d,a,2m+1,b}
        "h1-x0" => {
            let (b, c, m, a, d) = (v[0], v[1], v[2], v[3], v[4]);
            let q = HParams::new(0, b, c, m, a, d);
            let ps = h_named(1, q);
            let prod = || -> Result<ExactCount, String> {
                Ok(oracle_of(p_region(c + d, c + d, m, false))? * oracle_of(b_region(d, a, 2 * m + 1, b, false))?)
            };
            let fp = count_p(c + d, c + d, m).and_then(|p| Ok(p * count_b(d, a, 2 * m + 1, b)?));
            vec![
                IdentityReport::from_result(&f, ps.clone(), pair(count_h(1, q), fp)),
                IdentityReport::from_result(&o, ps, pair(oracle_of(h_region(1, q)), prod())),
            ]
        }
        // H1(x,b,0;m,a,d) against P_{d,d,m} B_{x+d,a,2m+1,b}
        "h1-c0" => {
            let (x, b, m, a, d) = (v[0], v[1], v[2], v[3], v[4]);
            let q = HParams::new(x, b, 0, m, a, d);
            let ps = h_named(1, q);
            let prod = || -> Result<ExactCount, String> {
                Ok(oracle_of(p_region(d, d, m, false))? * oracle_of(b_region(x + d, a, 2 * m + 1, b, false))?)
            };
            let fp = count_p(d, d, m).and_then(|p| Ok(p * count_b(x + d, a, 2 * m + 1, b)?));
            vec![
                IdentityReport::from_result(&f, ps.clone(), pair(count_h(1, q), fp)),
                IdentityReport::from_result(&o, ps, pair(oracle_of(h_region(1, q)), prod())),
            ]
        }
        _ => unreachable!("unknown base case {kind}"),
    }
}

// ---------------------------------------------------------------------------
// Grids and suites

/// Inclusive range `[lo, hi]`.
pub type Span = [i64; 2];

/// Cartesian product of inclusive spans, last coordinate fastest.
pub fn grid(spans: &[Span]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &[lo, hi] in spans {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrapGrid {
    pub samples: usize,
    pub seed: u64,
    pub max_n: i64,
    pub max_m: i64,
    pub max_numerator: i64,
    pub max_denominator: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KuoBGrid {
    pub x: Span,
    pub a: Span,
    pub b: Span,
    pub c: Span,
    pub oracle_max_cells: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KuoHGrid {
    pub families: Vec<u8>,
    pub x: Span,
    pub b: Span,
    pub c: Span,
    pub m: Span,
    pub a: Span,
    pub d: Span,
    pub oracle_max_cells: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KuoGraphGrid {
    pub regions: usize,
    pub seed: u64,
    pub max_side: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HsGrid {
    pub x: Span,
    pub y: Span,
    pub z: Span,
    pub m: Span,
    pub a: Span,
    pub b: Span,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagnetGrid {
    pub x: Span,
    pub y: Span,
    pub m: Span,
    pub a: Span,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseGrid {
    pub b_max: i64,
    pub h_max: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grids {
    pub trapsimp: TrapGrid,
    pub kuo_b: KuoBGrid,
    pub kuo_h: KuoHGrid,
    pub kuo_graph: KuoGraphGrid,
    pub factorization: HsGrid,
    pub magnet_bar: MagnetGrid,
    pub base_cases: BaseGrid,
}

const DEFAULT_GRIDS: &str = include_str!("../fixtures/default_grids.json");

impl Default for Grids {
    fn default() -> Self {
        serde_json::from_str(DEFAULT_GRIDS).expect("bundled grid file parses")
    }
}

impl Grids {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Trapsimp,
    KuoB,
    KuoH,
    KuoGraph,
    Factorization,
    BaseCases,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Trapsimp,
        Suite::KuoB,
        Suite::KuoH,
        Suite::KuoGraph,
        Suite::Factorization,
        Suite::BaseCases,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Trapsimp => "trapsimp",
            Suite::KuoB => "kuo-b",
            Suite::KuoH => "kuo-h",
            Suite::KuoGraph => "kuo-graph",
            Suite::Factorization => "factorization",
            Suite::BaseCases => "base-cases",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

pub fn trapsimp_reports(cfg: &TrapGrid) -> Vec<IdentityReport> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let points: Vec<(ExactCount, i64, i64)> = (0..cfg.samples)
        .map(|_| {
            let num = rng.gen_range(1..=cfg.max_numerator.max(1));
            let den = rng.gen_range(1..=cfg.max_denominator.max(1));
            let n = rng.gen_range(0..=cfg.max_n);
            let m = rng.gen_range(0..=cfg.max_m);
            (ExactCount::ratio(num, den), n, m)
        })
        .collect();
    batch::map(&points, |(x, n, m)| check_trapsimp(x, *n, *m)).into_iter().flatten().collect()
}

pub fn kuo_b_reports(cfg: &KuoBGrid) -> Vec<IdentityReport> {
    let pts = grid(&[cfg.x, cfg.a, cfg.b, cfg.c]);
    batch::map(&pts, |v| {
        vec![
            check_kuo_b(v[0], v[1], v[2], v[3]),
            check_kuo_b_oracle(v[0], v[1], v[2], v[3], cfg.oracle_max_cells),
        ]
    })
    .into_iter()
    .flatten()
    .collect()
}

pub fn kuo_h_reports(cfg: &KuoHGrid) -> Vec<IdentityReport> {
    let mut jobs = Vec::new();
    for &i in &cfg.families {
        for v in grid(&[cfg.x, cfg.b, cfg.c, cfg.m, cfg.a, cfg.d]) {
            let p = HParams::new(v[0], v[1], v[2], v[3], v[4], v[5]);
            for variant in [HVariant::DShrink, HVariant::AShrink] {
                jobs.push((i, variant, p));
            }
        }
    }
    batch::map(&jobs, |&(i, variant, p)| {
        vec![
            check_kuo_h(i, variant, p),
            check_kuo_h_oracle(i, variant, p, cfg.oracle_max_cells),
        ]
    })
    .into_iter()
    .flatten()
    .collect()
}

pub fn factorization_reports(cfg: &HsGrid, magnet: &MagnetGrid) -> Vec<IdentityReport> {
    let pts: Vec<HsParams> = grid(&[cfg.x, cfg.y, cfg.z, cfg.m, cfg.a, cfg.b])
        .into_iter()
        .map(|v| HsParams::new(v[0], v[1], v[2], v[3], v[4], v[5]))
        .collect();
    let mut out: Vec<IdentityReport> = batch::map(&pts, |&p| check_factorization_hs(p)).into_iter().flatten().collect();
    let bars = grid(&[magnet.x, magnet.y, magnet.m, magnet.a]);
    out.extend(batch::map(&bars, |v| check_magnet_bar(v[0], v[1], v[2], v[3])));
    out
}

pub fn run_suite(suite: Suite, grids: &Grids) -> Vec<IdentityReport> {
    match suite {
        Suite::Trapsimp => trapsimp_reports(&grids.trapsimp),
        Suite::KuoB => kuo_b_reports(&grids.kuo_b),
        Suite::KuoH => kuo_h_reports(&grids.kuo_h),
        Suite::KuoGraph => kuo_graph_reports(&grids.kuo_graph),
        Suite::Factorization => factorization_reports(&grids.factorization, &grids.magnet_bar),
        Suite::BaseCases => check_base_reductions(&grids.base_cases),
        Suite::All => Suite::EACH.iter().flat_map(|&s| run_suite(s, grids)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapsimp_small_case() {
        let r = check_trapsimp(&ExactCount::from_int(1), 3, 2);
        assert_eq!(r[0].lhs, Some(ExactCount::from_int(12)));
        assert!(r.iter().all(|r| r.holds));
    }

    #[test]
    fn trapsimp_empty_product() {
        for r in check_trapsimp(&ExactCount::ratio(5, 3), 4, 0) {
            assert_eq!(r.lhs, Some(ExactCount::one()));
            assert!(r.holds);
        }
    }

    #[test]
    fn trapsimp_zero_denominator_is_skipped() {
        // T(0, n, m) vanishes, so the ratio is undefined.
        let r = check_trapsimp(&ExactCount::zero(), 3, 1);
        assert!(r[0].is_skipped());
        assert!(!r[0].failed());
    }

    #[test]
    fn kuo_b_domain() {
        assert!(check_kuo_b(0, 1, 1, 1).is_skipped());
        assert!(check_kuo_b(2, 1, 2, 2).holds);
    }

    #[test]
    fn grid_order() {
        assert_eq!(grid(&[[0, 1], [2, 3]]), vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert!(grid(&[[1, 0]]).is_empty());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nonsense".parse::<Suite>().is_err());
    }

    #[test]
    fn default_grids_parse() {
        let g = Grids::default();
        assert_eq!(g.trapsimp.samples, 100);
        assert_eq!(g.kuo_h.families.len(), 8);
    }

    #[test]
    fn report_serializes_without_skip_field() {
        let r = check_kuo_b(1, 0, 1, 1);
        let s = serde_json::to_string(&r).unwrap();
        assert!(!s.contains("skipped"));
        let back: IdentityReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
