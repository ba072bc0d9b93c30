use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use lozenge_core::batch;
use lozenge_core::formulas::{HParams, HsParams};
use lozenge_core::lattice::Region;
use lozenge_core::oracle::{count_tilings, count_tilings_by_expansion};
use lozenge_core::properties::grid;
use lozenge_core::regions::{b_region, h_region, hexagon, hs_region};

fn b_batch() -> Vec<Region> {
    grid(&[[0, 3]; 4])
        .into_iter()
        .map(|v| b_region(v[0], v[1], v[2], v[3], true).unwrap())
        .collect()
}

fn h_batch() -> Vec<Region> {
    grid(&[[0, 1]; 6])
        .into_iter()
        .filter_map(|v| h_region(3, HParams::new(v[0], v[1], v[2], v[3], v[4], v[5])).ok())
        .collect()
}

fn batches(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle_batch");
    g.sample_size(10);
    for (name, regions) in [("B_W [0,3]^4", b_batch()), ("H3 [0,1]^6", h_batch())] {
        g.bench_with_input(BenchmarkId::new("sequential", name), &regions, |b, rs| {
            b.iter(|| batch::map_sequential(rs, count_tilings))
        });
        g.bench_with_input(BenchmarkId::new("batch", name), &regions, |b, rs| {
            b.iter(|| batch::map(rs, count_tilings))
        });
    }
    g.finish();
}

fn single_regions(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle_single");
    let hs = hs_region(HsParams::new(2, 3, 2, 1, 1, 1)).unwrap();
    let hex = hexagon(4, 4, 4).unwrap();
    g.bench_function("sweep HS(2,3,2,1,1,1)", |b| b.iter(|| count_tilings(black_box(&hs))));
    g.bench_function("sweep hexagon(4,4,4)", |b| b.iter(|| count_tilings(black_box(&hex))));
    let small = hexagon(3, 3, 3).unwrap();
    g.bench_function("expansion hexagon(3,3,3)", |b| {
        b.iter(|| count_tilings_by_expansion(black_box(&small)))
    });
    g.finish();
}

criterion_group!(benches, batches, single_regions);
criterion_main!(benches);
