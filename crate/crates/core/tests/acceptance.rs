//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use lozenge_core::batch;
use lozenge_core::formulas::*;
use lozenge_core::lattice::Region;
use lozenge_core::oracle::{count_tilings, count_tilings_by_expansion};
use lozenge_core::properties::*;
use lozenge_core::regions::*;
use lozenge_core::ExactCount;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn p_grid() -> Vec<(i64, i64, i64)> {
    let mut v = Vec::new();
    for a in 0..=4 {
        for b in a..=4 {
            for c in 0..=4 {
                v.push((a, b, c));
            }
        }
    }
    v
}

fn halved(weighted: bool) -> Outcome {
    let rows = batch::map(&p_grid(), |&(a, b, c)| {
        let f = if weighted { count_p_weighted(a, b, c) } else { count_p(a, b, c) };
        let o = count_tilings(&p_region(a, b, c, weighted).unwrap());
        let exact = if weighted { o.is_dyadic() } else { o.is_integer() };
        f.map(|f| f == o && exact).unwrap_or(false)
    });
    let ok = rows.iter().filter(|m| **m).count();
    outcome(ok == rows.len() && rows.len() == 75, format!("{ok}/{} match", rows.len()))
}

fn b_family() -> Outcome {
    let pts = grid(&[[0, 3]; 4]);
    let mut parities = BTreeMap::new();
    let rows = batch::map(&pts, |v| {
        let (x, a, b, c) = (v[0], v[1], v[2], v[3]);
        let plain = count_b(x, a, b, c).ok() == Some(count_tilings(&b_region(x, a, b, c, false).unwrap()));
        let weighted =
            count_b_weighted(x, a, b, c).ok() == Some(count_tilings(&b_region(x, a, b, c, true).unwrap()));
        (plain, weighted)
    });
    for (v, (p, w)) in pts.iter().zip(&rows) {
        let e = parities.entry((v[2] % 2, v[3] % 2)).or_insert(0);
        if *p && *w {
            *e += 1;
        }
    }
    let ok_b = rows.iter().filter(|r| r.0).count();
    let ok_w = rows.iter().filter(|r| r.1).count();
    let covered = parities.len() == 4 && parities.values().all(|n| *n > 0);
    outcome(
        ok_b == 256 && ok_w == 256 && covered,
        format!("B {ok_b}/256, B' {ok_w}/256, (b,c) parity classes {parities:?}"),
    )
}

fn h_families() -> Outcome {
    let pts = grid(&[[0, 2]; 6]);
    let mut pass = true;
    let mut parts = Vec::new();
    for i in 1..=8u8 {
        let rows: Vec<Option<bool>> = batch::map(&pts, |v| {
            let p = HParams::new(v[0], v[1], v[2], v[3], v[4], v[5]);
            let r = h_region(i, p).ok()?;
            Some(count_h(i, p).ok() == Some(count_tilings(&r)))
        });
        let valid = rows.iter().flatten().count();
        let ok = rows.iter().flatten().filter(|m| **m).count();
        pass &= valid >= 200 && ok == valid;
        parts.push(format!("H{i} {ok}/{valid}"));
    }
    outcome(pass, parts.join(", "))
}

fn shamrock() -> Outcome {
    let pts = grid(&[[1, 3], [1, 3], [0, 2], [0, 2], [0, 2], [0, 1]]);
    let rows = batch::map(&pts, |v| {
        let p = HsParams::new(v[0], v[1], v[2], v[3], v[4], v[5]);
        let region = hs_region(p).ok()?;
        let s = hs_split(p).ok()?;
        let o = count_tilings(&region);
        let f = match (count_h(s.left.0, s.left.1), count_h(s.right.0, s.right.1)) {
            (Ok(l), Ok(r)) => Some(ExactCount::pow2(s.exponent) * l * r),
            _ => None,
        };
        let direct = count_hs(p).ok();
        Some((s.case, f.clone().map(|f| f == o && direct == Some(f))))
    });
    let mut per_case: BTreeMap<String, usize> = BTreeMap::new();
    let (mut ok, mut bad, mut undefined) = (0, 0, 0);
    for (case, m) in rows.iter().flatten() {
        let key = format!("{}{}", case.0, if case.1 { "-even" } else { "-odd" });
        match m {
            Some(true) => {
                ok += 1;
                *per_case.entry(key).or_insert(0) += 1;
            }
            Some(false) => bad += 1,
            None => undefined += 1,
        }
    }
    let covered = per_case.len() == 8 && per_case.values().all(|n| *n >= 2);
    outcome(
        bad == 0 && covered,
        format!("{ok} match, {bad} mismatch, {undefined} with a zero factor; per case {per_case:?}"),
    )
}

fn kuo() -> Outcome {
    let g = Grids::default();
    let graph = kuo_graph_reports(&g.kuo_graph);
    let bal = graph.iter().filter(|r| r.identity == "kuo-graph-balanced" && r.holds).count();
    let unbal = graph.iter().filter(|r| r.identity == "kuo-graph-unbalanced" && r.holds).count();
    let b = Tally::of(&kuo_b_reports(&g.kuo_b));
    let h = Tally::of(&kuo_h_reports(&g.kuo_h));
    let gt = Tally::of(&graph);
    outcome(
        gt.failed == 0 && bal >= 10 && unbal >= 10 && b.failed == 0 && h.failed == 0 && b.passed > 0 && h.passed > 0,
        format!(
            "raw graphs {bal}+{unbal}; B recurrence {}/{} ({} skipped); H recurrences {}/{} ({} skipped)",
            b.passed,
            b.passed + b.failed,
            b.skipped,
            h.passed,
            h.passed + h.failed,
            h.skipped
        ),
    )
}

fn trapsimp() -> Outcome {
    let t = Tally::of(&trapsimp_reports(&Grids::default().trapsimp));
    outcome(
        t.failed == 0 && t.passed + t.skipped == 400,
        format!("{} hold, {} failed, {} skipped for a zero factor", t.passed, t.failed, t.skipped),
    )
}

fn base_cases() -> Outcome {
    let reports = check_base_reductions(&Grids::default().base_cases);
    let mut kinds: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in &reports {
        let e = kinds.entry(r.identity.as_str()).or_insert((0, 0));
        e.1 += 1;
        if r.holds {
            e.0 += 1;
        }
    }
    let t = Tally::of(&reports);
    let detail: Vec<String> = kinds.iter().map(|(k, (ok, n))| format!("{k} {ok}/{n}")).collect();
    outcome(t.failed == 0 && t.skipped == 0 && kinds.len() == 10, detail.join(", "))
}

fn grid_regions() -> Vec<Region> {
    let mut v: Vec<Region> = Vec::new();
    for (a, b, c) in p_grid() {
        v.push(p_region(a, b, c, false).unwrap());
        v.push(p_region(a, b, c, true).unwrap());
    }
    for p in grid(&[[0, 3]; 4]) {
        v.push(b_region(p[0], p[1], p[2], p[3], false).unwrap());
        v.push(b_region(p[0], p[1], p[2], p[3], true).unwrap());
    }
    for i in 1..=8u8 {
        for p in grid(&[[0, 2]; 6]) {
            if let Ok(r) = h_region(i, HParams::new(p[0], p[1], p[2], p[3], p[4], p[5])) {
                v.push(r);
            }
        }
    }
    for p in grid(&[[1, 3], [1, 3], [0, 2], [0, 2], [0, 2], [0, 1]]) {
        if let Ok(r) = hs_region(HsParams::new(p[0], p[1], p[2], p[3], p[4], p[5])) {
            v.push(r);
        }
    }
    v.retain(|r| r.len() <= 120);
    v
}

fn oracles_agree() -> Outcome {
    let regions = grid_regions();
    let rows = batch::map(&regions, |r| count_tilings_by_expansion(r) == Some(count_tilings(r)));
    let ok = rows.iter().filter(|m| **m).count();
    outcome(ok == rows.len(), format!("{ok}/{} regions of at most 120 cells", rows.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("halved hexagon equivalence", || halved(false)),
        ("weighted halved hexagon equivalence", || halved(true)),
        ("B and B' equivalence", b_family),
        ("H1-H8 equivalence", h_families),
        ("shamrock hexagon factorization", shamrock),
        ("condensation identities", kuo),
        ("trapezoid identities", trapsimp),
        ("base-case reductions", base_cases),
        ("oracle self-consistency", oracles_agree),
    ];
    let mut all = true;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        all &= o.pass;
        println!(
            "criterion {} {}: {} ({}; {:.1}s)",
            n + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
