//! Exact (weighted) tiling counts, independent of any closed-form formula.
//!
//! Two algorithms are provided:
//!
//! * [`count_matchings`] sweeps the vertices in row-major order and keeps, as
//!   state, the set of not-yet-visited vertices that are already matched
//!   (a broken-profile transfer matrix). This is the workhorse.
//! * [`count_matchings_by_expansion`] recursively picks a vertex, expands over
//!   its incident edges (deleting or contracting each) and memoizes on the
//!   remaining vertex set. It only ever sees the abstract graph and serves as
//!   a cross-check on graphs with at most 128 vertices.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::exact::ExactCount;
use crate::lattice::{DualGraph, Lozenge, Region, TriangleCell};

/// A tiling given as its list of lozenges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingWitness {
    pub lozenges: Vec<Lozenge>,
}

impl TilingWitness {
    /// Checks that the lozenges are disjoint and cover exactly the region.
    pub fn covers(&self, region: &Region) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for l in &self.lozenges {
            for c in l.cells() {
                if !region.contains(c) || !seen.insert(c) {
                    return false;
                }
            }
        }
        seen.len() == region.len()
    }

    pub fn weight(&self, region: &Region) -> ExactCount {
        self.lozenges.iter().map(|l| region.weight(l)).product()
    }
}

/// Weighted sum over all perfect matchings of the dual graph.
pub fn count_matchings(graph: &DualGraph) -> ExactCount {
    if graph.up_vertices.len() != graph.down_vertices.len() {
        return ExactCount::zero();
    }
    if graph.vertex_count() == 0 {
        return ExactCount::one();
    }
    let sweep = Sweep::new(graph);
    sweep.run()
}

/// Weighted tiling count: forced lozenges are peeled first, then the profile
/// sweep runs on each connected piece.
pub fn count_tilings(region: &Region) -> ExactCount {
    if !region.is_balanced() {
        return ExactCount::zero();
    }
    let red = region.remove_forced_lozenges();
    if !red.tileable {
        return ExactCount::zero();
    }
    let graph = red.reduced.dual_graph();
    let mut total = red.weight;
    for comp in graph.components() {
        if total.is_zero() {
            break;
        }
        let cells: std::collections::BTreeSet<TriangleCell> =
            comp.iter().map(|&i| graph.combined_vertex(i)).collect();
        let piece = red.reduced.restricted_to(&cells);
        total = total * count_matchings(&piece.dual_graph());
    }
    total
}

/// Same count via the memoized expansion algorithm; `None` when the graph has
/// more than 128 vertices.
pub fn count_tilings_by_expansion(region: &Region) -> Option<ExactCount> {
    count_matchings_by_expansion(&region.dual_graph())
}

/// Up to `limit` tilings in canonical order: the first uncovered cell in
/// row-major order is matched to its right neighbour before the cell below.
pub fn enumerate_tilings(region: &Region, limit: usize) -> Vec<TilingWitness> {
    let mut out = Vec::new();
    if limit == 0 || !region.is_balanced() {
        return out;
    }
    let cells: Vec<TriangleCell> = region.cells().iter().copied().collect();
    let index: HashMap<TriangleCell, usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut covered = vec![false; cells.len()];
    let mut stack = Vec::new();
    enumerate_rec(&cells, &index, &mut covered, 0, &mut stack, &mut out, limit);
    out
}

fn enumerate_rec(
    cells: &[TriangleCell],
    index: &HashMap<TriangleCell, usize>,
    covered: &mut [bool],
    mut pos: usize,
    stack: &mut Vec<Lozenge>,
    out: &mut Vec<TilingWitness>,
    limit: usize,
) {
    while pos < cells.len() && covered[pos] {
        pos += 1;
    }
    if pos == cells.len() {
        out.push(TilingWitness {
            lozenges: stack.clone(),
        });
        return;
    }
    let c = cells[pos];
    let right = TriangleCell::new(c.row(), c.col() + 1);
    let below = TriangleCell::new(c.row() + 1, c.col());
    let mut partners = vec![right];
    if c.is_up() {
        partners.push(below);
    }
    for p in partners {
        if out.len() >= limit {
            return;
        }
        let Some(&j) = index.get(&p) else { continue };
        if covered[j] {
            continue;
        }
        covered[pos] = true;
        covered[j] = true;
        stack.push(Lozenge::new(c, p).expect("adjacent"));
        enumerate_rec(cells, index, covered, pos + 1, stack, out, limit);
        stack.pop();
        covered[pos] = false;
        covered[j] = false;
    }
}

/// Fixed-width bit set used as a sweep state.
trait Mask: Copy + Eq + std::hash::Hash + Default + Send + Sync {
    const BITS: usize;
    fn bit(self, i: usize) -> bool;
    fn with(self, i: usize) -> Self;
    fn shr1(self) -> Self;
}

impl Mask for u128 {
    const BITS: usize = 128;
    fn bit(self, i: usize) -> bool {
        (self >> i) & 1 == 1
    }
    fn with(self, i: usize) -> Self {
        self | (1u128 << i)
    }
    fn shr1(self) -> Self {
        self >> 1
    }
}

const WIDE_WORDS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
struct WideMask([u64; WIDE_WORDS]);

impl Mask for WideMask {
    const BITS: usize = 64 * WIDE_WORDS;
    fn bit(self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }
    fn with(mut self, i: usize) -> Self {
        self.0[i / 64] |= 1u64 << (i % 64);
        self
    }
    fn shr1(mut self) -> Self {
        for w in 0..WIDE_WORDS {
            let carry = if w + 1 < WIDE_WORDS { self.0[w + 1] & 1 } else { 0 };
            self.0[w] = (self.0[w] >> 1) | (carry << 63);
        }
        self
    }
}

/// Accumulator for weighted path sums in the sweep.
trait Acc: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += other * w`; returns false on overflow.
    fn add_scaled(&mut self, other: &Self, w: u64) -> bool;
}

impl Acc for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_scaled(&mut self, other: &Self, w: u64) -> bool {
        match other.checked_mul(w as u128).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Acc for BigUint {
    fn zero() -> Self {
        <BigUint as Zero>::zero()
    }
    fn one() -> Self {
        <BigUint as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, w: u64) -> bool {
        if w == 1 {
            *self += other;
        } else {
            *self += other * w;
        }
        true
    }
}

/// Precomputed forward edges of the row-major vertex order.
struct Sweep {
    /// For each vertex, `(offset to later partner, scaled integer weight)`.
    forward: Vec<Vec<(usize, u64)>>,
    window: usize,
    /// Every weight was multiplied by `scale`; a matching has `pairs` edges.
    scale: BigUint,
    pairs: usize,
}

impl Sweep {
    fn new(graph: &DualGraph) -> Self {
        let mut order: Vec<TriangleCell> = graph
            .up_vertices
            .iter()
            .chain(graph.down_vertices.iter())
            .copied()
            .collect();
        order.sort();
        let pos: HashMap<TriangleCell, usize> = order.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let scale = ExactCount::lcm_denominator(graph.edges.iter().map(|e| &e.2));
        let mut forward = vec![Vec::new(); order.len()];
        let mut window = 1;
        for (u, d, w) in &graph.edges {
            let pu = pos[&graph.up_vertices[*u]];
            let pd = pos[&graph.down_vertices[*d]];
            let (lo, hi) = if pu < pd { (pu, pd) } else { (pd, pu) };
            let scaled = (w.as_rational() * num_rational::BigRational::from_integer(scale.clone())).to_integer();
            let scaled = scaled
                .to_u64()
                .expect("scaled lozenge weight must fit in 64 bits");
            forward[lo].push((hi - lo, scaled));
            window = window.max(hi - lo + 1);
        }
        for f in &mut forward {
            f.sort();
        }
        Sweep {
            forward,
            window,
            scale: scale.magnitude().clone(),
            pairs: order.len() / 2,
        }
    }

    fn run(&self) -> ExactCount {
        let raw: BigUint = if self.window <= u128::BITS as usize {
            match self.sweep::<u128, u128>() {
                Some(v) => BigUint::from(v),
                None => self.sweep::<u128, BigUint>().expect("big accumulator cannot overflow"),
            }
        } else if self.window <= WideMask::BITS {
            match self.sweep::<WideMask, u128>() {
                Some(v) => BigUint::from(v),
                None => self.sweep::<WideMask, BigUint>().expect("big accumulator cannot overflow"),
            }
        } else {
            panic!(
                "sweep frontier of {} vertices exceeds the supported {}",
                self.window,
                WideMask::BITS
            );
        };
        let den = num_traits::pow(self.scale.clone(), self.pairs);
        ExactCount::from_scaled(raw, den)
    }

    fn sweep<M: Mask, A: Acc>(&self) -> Option<A> {
        let mut states: FxHashMap<M, A> = FxHashMap::default();
        states.insert(M::default(), A::one());
        for fwd in &self.forward {
            let mut next: FxHashMap<M, A> = FxHashMap::with_capacity_and_hasher(states.len() * 2, Default::default());
            for (mask, val) in states.iter() {
                if mask.bit(0) {
                    let m = mask.shr1();
                    let slot = next.entry(m).or_insert_with(A::zero);
                    if !slot.add_scaled(val, 1) {
                        return None;
                    }
                    continue;
                }
                for &(off, w) in fwd {
                    if mask.bit(off) {
                        continue;
                    }
                    let m = mask.with(off).shr1();
                    let slot = next.entry(m).or_insert_with(A::zero);
                    if !slot.add_scaled(val, w) {
                        return None;
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            states = next;
            if states.is_empty() {
                return Some(A::zero());
            }
        }
        Some(states.remove(&M::default()).unwrap_or_else(A::zero))
    }
}

/// Memoized expansion over the edges of one vertex at a time.
///
/// Vertices are renumbered in breadth-first order from vertex 0 of each
/// component and the branching vertex is always the first remaining one,
/// which keeps the set of live subproblems small on lattice-like graphs.
pub fn count_matchings_by_expansion(graph: &DualGraph) -> Option<ExactCount> {
    let n = graph.vertex_count();
    if n > 128 {
        return None;
    }
    if graph.up_vertices.len() != graph.down_vertices.len() {
        return Some(ExactCount::zero());
    }
    let adj = graph.adjacency_lists();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for (u, _) in &adj[v] {
                if !seen[*u] {
                    seen[*u] = true;
                    queue.push_back(*u);
                }
            }
        }
    }
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let nu = graph.up_vertices.len();
    let mut up_mask = 0u128;
    let mut nbrs: Vec<Vec<(usize, ExactCount)>> = vec![Vec::new(); n];
    for v in 0..n {
        if v < nu {
            up_mask |= 1u128 << rank[v];
        }
        nbrs[rank[v]] = adj[v].iter().map(|(u, w)| (rank[*u], w.clone())).collect();
    }
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut memo: FxHashMap<u128, ExactCount> = FxHashMap::default();
    Some(expand(full, &nbrs, up_mask, &mut memo))
}

fn expand(
    remaining: u128,
    nbrs: &[Vec<(usize, ExactCount)>],
    up_mask: u128,
    memo: &mut FxHashMap<u128, ExactCount>,
) -> ExactCount {
    if remaining == 0 {
        return ExactCount::one();
    }
    if (remaining & up_mask).count_ones() * 2 != remaining.count_ones() {
        return ExactCount::zero();
    }
    if let Some(v) = memo.get(&remaining) {
        return v.clone();
    }
    let v = remaining.trailing_zeros() as usize;
    let without_v = remaining & !(1u128 << v);
    let mut total = ExactCount::zero();
    // Each edge at v is either contracted (v matched along it) or deleted;
    // deleting all but one in turn is the sum below.
    for (u, w) in &nbrs[v] {
        if without_v >> u & 1 == 1 {
            let sub = expand(without_v & !(1u128 << u), nbrs, up_mask, memo);
            if !sub.is_zero() {
                total = total + w * &sub;
            }
        }
    }
    memo.insert(remaining, total.clone());
    total
}
