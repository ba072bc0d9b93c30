//! Unit triangles, lozenges and regions on the triangular lattice.
//!
//! Horizontal lattice lines are numbered top to bottom; row `r` is the strip
//! between lines `r` and `r + 1`. Horizontal positions are measured in half
//! edge lengths, so the cell `(r, c)` is centred at `x = c / 2`. A cell is
//! up-pointing iff `r + c` is even; its apex is then the lattice point
//! `(c, r)`. A down-pointing cell `(r, c)` has its bottom vertex at `(c, r + 1)`.
//!
//! Edge adjacency:
//!
//! * `Up(r, c)` touches `Down(r, c - 1)`, `Down(r, c + 1)` and `Down(r + 1, c)`.
//! * `Down(r, c)` touches `Up(r, c - 1)`, `Up(r, c + 1)` and `Up(r - 1, c)`.
//!
//! The mirror `c -> -c` is the reflection in the vertical line `x = 0`; it
//! keeps every orientation.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::ExactCount;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Orientation {
    Up,
    Down,
}

impl Orientation {
    pub fn opposite(self) -> Self {
        match self {
            Orientation::Up => Orientation::Down,
            Orientation::Down => Orientation::Up,
        }
    }
}

/// A unit triangle addressed by row and half-unit column.
///
/// Ordering is row-major, which is the canonical sweep order used by the
/// counting algorithms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleCell {
    row: i32,
    col: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("cell ({row}, {col}) is {actual:?}, not {claimed:?}")]
    OrientationMismatch {
        row: i32,
        col: i32,
        claimed: Orientation,
        actual: Orientation,
    },
    #[error("cells {0:?} and {1:?} do not share an edge")]
    NotAdjacent(TriangleCell, TriangleCell),
    #[error("weighted lozenge {0} is not inside the region")]
    WeightOutsideRegion(Lozenge),
    #[error("lozenge weights must be positive, got {0}")]
    NonPositiveWeight(ExactCount),
    #[error("boundary walk does not close: ends at {0:?}")]
    OpenBoundary(LatticePoint),
    #[error("lattice point ({x2}, {line}) has the wrong parity")]
    BadPoint { x2: i32, line: i32 },
}

impl TriangleCell {
    pub const fn new(row: i32, col: i32) -> Self {
        TriangleCell { row, col }
    }

    /// Builds a cell and checks that `orient` matches its address.
    pub fn with_orientation(row: i32, col: i32, orient: Orientation) -> Result<Self, LatticeError> {
        let cell = TriangleCell::new(row, col);
        if cell.orient() != orient {
            return Err(LatticeError::OrientationMismatch {
                row,
                col,
                claimed: orient,
                actual: cell.orient(),
            });
        }
        Ok(cell)
    }

    pub fn row(self) -> i32 {
        self.row
    }

    pub fn col(self) -> i32 {
        self.col
    }

    pub fn orient(self) -> Orientation {
        if (self.row + self.col).rem_euclid(2) == 0 {
            Orientation::Up
        } else {
            Orientation::Down
        }
    }

    pub fn is_up(self) -> bool {
        self.orient() == Orientation::Up
    }

    /// The three edge-neighbours on the infinite lattice; callers intersect
    /// with their region.
    pub fn adjacency(self) -> [TriangleCell; 3] {
        let vertical = if self.is_up() { self.row + 1 } else { self.row - 1 };
        [
            TriangleCell::new(self.row, self.col - 1),
            TriangleCell::new(self.row, self.col + 1),
            TriangleCell::new(vertical, self.col),
        ]
    }

    pub fn is_adjacent(self, other: TriangleCell) -> bool {
        self.adjacency().contains(&other)
    }

    pub fn reflect(self) -> Self {
        TriangleCell::new(self.row, -self.col)
    }

    /// Translation by `(dr, dc)`; `dr + dc` must be even to keep orientations.
    pub fn shifted(self, dr: i32, dc: i32) -> Self {
        debug_assert!((dr + dc).rem_euclid(2) == 0);
        TriangleCell::new(self.row + dr, self.col + dc)
    }
}

impl fmt::Debug for TriangleCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = if self.is_up() { "U" } else { "D" };
        write!(f, "{}({},{})", o, self.row, self.col)
    }
}

/// Shape of a lozenge, named by the direction of its long diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LozengeKind {
    /// Up cell above the down cell sharing its base.
    Vertical,
    /// Horizontal pair with the up cell on the left.
    LeanRight,
    /// Horizontal pair with the up cell on the right.
    LeanLeft,
}

/// Two edge-adjacent cells of opposite orientation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lozenge {
    up: TriangleCell,
    down: TriangleCell,
}

impl Lozenge {
    pub fn new(first: TriangleCell, second: TriangleCell) -> Result<Self, LatticeError> {
        if !first.is_adjacent(second) {
            return Err(LatticeError::NotAdjacent(first, second));
        }
        let (up, down) = if first.is_up() { (first, second) } else { (second, first) };
        Ok(Lozenge { up, down })
    }

    /// The vertical lozenge formed by an up cell and the down cell below it.
    pub fn vertical_below(up: TriangleCell) -> Option<Self> {
        if !up.is_up() {
            return None;
        }
        Some(Lozenge {
            up,
            down: TriangleCell::new(up.row + 1, up.col),
        })
    }

    pub fn up(self) -> TriangleCell {
        self.up
    }

    pub fn down(self) -> TriangleCell {
        self.down
    }

    pub fn cells(self) -> [TriangleCell; 2] {
        [self.up, self.down]
    }

    pub fn kind(self) -> LozengeKind {
        if self.up.row != self.down.row {
            LozengeKind::Vertical
        } else if self.up.col < self.down.col {
            LozengeKind::LeanRight
        } else {
            LozengeKind::LeanLeft
        }
    }

    pub fn reflect(self) -> Self {
        Lozenge {
            up: self.up.reflect(),
            down: self.down.reflect(),
        }
    }

    pub fn shifted(self, dr: i32, dc: i32) -> Self {
        Lozenge {
            up: self.up.shifted(dr, dc),
            down: self.down.shifted(dr, dc),
        }
    }
}

impl fmt::Debug for Lozenge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}-{:?}]", self.up, self.down)
    }
}

impl fmt::Display for Lozenge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A lattice vertex: `x2` is twice the horizontal coordinate, `line` the
/// horizontal lattice line. `x2` and `line` always have the same parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x2: i32,
    pub line: i32,
}

impl LatticePoint {
    pub fn new(x2: i32, line: i32) -> Result<Self, LatticeError> {
        if (x2 - line).rem_euclid(2) != 0 {
            return Err(LatticeError::BadPoint { x2, line });
        }
        Ok(LatticePoint { x2, line })
    }

    pub fn step(self, dir: Dir, len: i32) -> Self {
        let (dx, dl) = dir.delta();
        LatticePoint {
            x2: self.x2 + dx * len,
            line: self.line + dl * len,
        }
    }
}

/// The six lattice directions, compass-named with north up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    E,
    W,
    NE,
    NW,
    SE,
    SW,
}

impl Dir {
    fn delta(self) -> (i32, i32) {
        match self {
            Dir::E => (2, 0),
            Dir::W => (-2, 0),
            Dir::NE => (1, -1),
            Dir::NW => (-1, -1),
            Dir::SE => (1, 1),
            Dir::SW => (-1, 1),
        }
    }
}

/// Cells of the up-pointing triangle of side `side` with apex `apex`.
pub fn up_triangle(apex: LatticePoint, side: i32) -> BTreeSet<TriangleCell> {
    let mut out = BTreeSet::new();
    for i in 0..side.max(0) {
        for c in (apex.x2 - i)..=(apex.x2 + i) {
            out.insert(TriangleCell::new(apex.line + i, c));
        }
    }
    out
}

/// Cells of the down-pointing triangle of side `side` whose top-left corner is
/// `corner`.
pub fn down_triangle(corner: LatticePoint, side: i32) -> BTreeSet<TriangleCell> {
    let mut out = BTreeSet::new();
    for i in 0..side.max(0) {
        for c in (corner.x2 + 1 + i)..=(corner.x2 + 2 * side - 1 - i) {
            out.insert(TriangleCell::new(corner.line + i, c));
        }
    }
    out
}

/// Cells enclosed by closed boundary walks (even-odd rule, so inner walks cut
/// holes). Each walk is a start point and a list of `(direction, length)`.
pub fn cells_inside(walks: &[(LatticePoint, Vec<(Dir, i32)>)]) -> Result<BTreeSet<TriangleCell>, LatticeError> {
    // Each slanted unit edge crosses exactly one row: (row -> [(top x2, bottom x2)]).
    let mut crossings: BTreeMap<i32, Vec<(i32, i32)>> = BTreeMap::new();
    for (start, steps) in walks {
        let mut p = *start;
        for &(dir, len) in steps {
            for _ in 0..len {
                let q = p.step(dir, 1);
                if p.line != q.line {
                    let (top, bot) = if p.line < q.line { (p, q) } else { (q, p) };
                    crossings.entry(top.line).or_default().push((top.x2, bot.x2));
                }
                p = q;
            }
        }
        if p != *start {
            return Err(LatticeError::OpenBoundary(p));
        }
    }
    let mut cells = BTreeSet::new();
    for (row, mut edges) in crossings {
        edges.sort_by_key(|&(t, b)| t + b);
        for pair in edges.chunks(2) {
            if let [l, r] = pair {
                let lo = l.0.max(l.1);
                let hi = r.0.min(r.1);
                for c in lo..=hi {
                    cells.insert(TriangleCell::new(row, c));
                }
            }
        }
    }
    Ok(cells)
}

/// A finite set of cells with sparse lozenge weights (absent means weight 1).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Region {
    cells: BTreeSet<TriangleCell>,
    weights: BTreeMap<Lozenge, ExactCount>,
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Region")
            .field("cells", &self.cells.len())
            .field("weighted", &self.weights.len())
            .finish()
    }
}

impl Region {
    pub fn new(cells: BTreeSet<TriangleCell>) -> Self {
        Region {
            cells,
            weights: BTreeMap::new(),
        }
    }

    pub fn empty() -> Self {
        Region::default()
    }

    pub fn from_cells<I: IntoIterator<Item = TriangleCell>>(cells: I) -> Self {
        Region::new(cells.into_iter().collect())
    }

    pub fn with_weights(
        cells: BTreeSet<TriangleCell>,
        weights: BTreeMap<Lozenge, ExactCount>,
    ) -> Result<Self, LatticeError> {
        let mut r = Region::new(cells);
        for (l, w) in weights {
            r.set_weight(l, w)?;
        }
        Ok(r)
    }

    /// Sets the weight of a lozenge inside the region. Weight one is stored
    /// as absence.
    pub fn set_weight(&mut self, lozenge: Lozenge, weight: ExactCount) -> Result<(), LatticeError> {
        if !self.contains(lozenge.up) || !self.contains(lozenge.down) {
            return Err(LatticeError::WeightOutsideRegion(lozenge));
        }
        if !weight.is_positive() {
            return Err(LatticeError::NonPositiveWeight(weight));
        }
        if weight.is_one() {
            self.weights.remove(&lozenge);
        } else {
            self.weights.insert(lozenge, weight);
        }
        Ok(())
    }

    pub fn cells(&self) -> &BTreeSet<TriangleCell> {
        &self.cells
    }

    pub fn weights(&self) -> &BTreeMap<Lozenge, ExactCount> {
        &self.weights
    }

    pub fn weight(&self, lozenge: &Lozenge) -> ExactCount {
        self.weights.get(lozenge).cloned().unwrap_or_else(ExactCount::one)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: TriangleCell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn up_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_up()).count()
    }

    pub fn down_count(&self) -> usize {
        self.cells.len() - self.up_count()
    }

    pub fn is_balanced(&self) -> bool {
        self.up_count() == self.down_count()
    }

    pub fn neighbors_in(&self, cell: TriangleCell) -> impl Iterator<Item = TriangleCell> + '_ {
        cell.adjacency().into_iter().filter(move |n| self.cells.contains(n))
    }

    /// Removes cells (and any weight touching them).
    pub fn remove_cells<'a, I: IntoIterator<Item = &'a TriangleCell>>(&mut self, cells: I) {
        for c in cells {
            self.cells.remove(c);
        }
        let cells = &self.cells;
        self.weights
            .retain(|l, _| cells.contains(&l.up) && cells.contains(&l.down));
    }

    pub fn without_cells<'a, I: IntoIterator<Item = &'a TriangleCell>>(&self, cells: I) -> Region {
        let mut r = self.clone();
        r.remove_cells(cells);
        r
    }

    /// Restriction to the cells of `keep`, with weights carried over.
    pub fn restricted_to(&self, keep: &BTreeSet<TriangleCell>) -> Region {
        let cells: BTreeSet<_> = self.cells.intersection(keep).copied().collect();
        let weights = self
            .weights
            .iter()
            .filter(|(l, _)| cells.contains(&l.up) && cells.contains(&l.down))
            .map(|(l, w)| (*l, w.clone()))
            .collect();
        Region { cells, weights }
    }

    /// Mirror image in the vertical line `x = 0`.
    pub fn reflect_vertical(&self) -> Region {
        Region {
            cells: self.cells.iter().map(|c| c.reflect()).collect(),
            weights: self.weights.iter().map(|(l, w)| (l.reflect(), w.clone())).collect(),
        }
    }

    pub fn shifted(&self, dr: i32, dc: i32) -> Region {
        Region {
            cells: self.cells.iter().map(|c| c.shifted(dr, dc)).collect(),
            weights: self.weights.iter().map(|(l, w)| (l.shifted(dr, dc), w.clone())).collect(),
        }
    }

    /// Translate so the top row is 0 and the leftmost column is 0 or 1.
    pub fn normalized(&self) -> Region {
        let (Some(min_row), Some(min_col)) = (
            self.cells.iter().map(|c| c.row).min(),
            self.cells.iter().map(|c| c.col).min(),
        ) else {
            return self.clone();
        };
        let dr = -min_row;
        let mut dc = -min_col;
        if (dr + dc).rem_euclid(2) != 0 {
            dc += 1;
        }
        self.shifted(dr, dc)
    }

    /// Equal up to translation, cells and weights alike.
    pub fn is_translate_of(&self, other: &Region) -> bool {
        self.normalized() == other.normalized()
    }

    /// Equal up to translation and vertical reflection.
    pub fn is_congruent(&self, other: &Region) -> bool {
        self.is_translate_of(other) || self.is_translate_of(&other.reflect_vertical())
    }

    pub fn dual_graph(&self) -> DualGraph {
        DualGraph::of_region(self)
    }

    /// Repeatedly removes lozenges forced by a cell with exactly one
    /// neighbour left in the region.
    pub fn remove_forced_lozenges(&self) -> ForcedReduction {
        self.remove_forced_lozenges_by(|len| len - 1)
    }

    /// Same as [`Region::remove_forced_lozenges`], with `pick(len)` choosing
    /// which pending worklist entry to handle next. The result does not
    /// depend on the choices.
    pub fn remove_forced_lozenges_by<F: FnMut(usize) -> usize>(&self, mut pick: F) -> ForcedReduction {
        let mut cells = self.cells.clone();
        let mut weight = ExactCount::one();
        let degree = |cells: &BTreeSet<TriangleCell>, c: TriangleCell| {
            c.adjacency().iter().filter(|n| cells.contains(n)).count()
        };
        let mut work: Vec<TriangleCell> = cells.iter().copied().filter(|&c| degree(&cells, c) <= 1).collect();
        while !work.is_empty() {
            let i = pick(work.len()).min(work.len() - 1);
            let c = work.swap_remove(i);
            if !cells.contains(&c) {
                continue;
            }
            let mut ns = c.adjacency().into_iter().filter(|n| cells.contains(n));
            match (ns.next(), ns.next()) {
                (None, _) => {
                    return ForcedReduction {
                        reduced: Region::empty(),
                        weight: ExactCount::zero(),
                        tileable: false,
                    };
                }
                (Some(n), None) => {
                    let loz = Lozenge::new(c, n).expect("neighbours are adjacent");
                    weight = weight * self.weight(&loz);
                    cells.remove(&c);
                    cells.remove(&n);
                    for m in n.adjacency().into_iter().chain(c.adjacency()) {
                        if cells.contains(&m) && degree(&cells, m) <= 1 {
                            work.push(m);
                        }
                    }
                }
                _ => {}
            }
        }
        ForcedReduction {
            reduced: self.restricted_to(&cells),
            weight,
            tileable: true,
        }
    }

    /// Splits off a subregion whose tilings never cross its boundary.
    ///
    /// `sub` must lie in the region, be balanced, and every cell of `sub`
    /// sharing an edge with the rest of the region must have one common
    /// orientation. Then `M(region) = M(sub) * M(region - sub)`.
    pub fn split_region(&self, sub: &Region) -> Result<(Region, Region), SplitError> {
        if let Some(c) = sub.cells.iter().find(|c| !self.contains(**c)) {
            return Err(SplitError::NotContained(*c));
        }
        let rest: BTreeSet<_> = self.cells.difference(&sub.cells).copied().collect();
        let mut seen: Option<Orientation> = None;
        for &c in &sub.cells {
            if c.adjacency().iter().any(|n| rest.contains(n)) {
                match seen {
                    None => seen = Some(c.orient()),
                    Some(o) if o != c.orient() => return Err(SplitError::MixedBoundary(c)),
                    _ => {}
                }
            }
        }
        if !sub.is_balanced() {
            return Err(SplitError::Unbalanced {
                up: sub.up_count(),
                down: sub.down_count(),
            });
        }
        Ok((self.restricted_to(&sub.cells), self.restricted_to(&rest)))
    }

    pub fn row_range(&self) -> Option<(i32, i32)> {
        Some((self.cells.first()?.row, self.cells.last()?.row))
    }

    /// Text picture, one line per row: `^` up, `v` down, `*` weighted vertical
    /// lozenge member, `.` outside.
    pub fn ascii(&self) -> String {
        let Some((r0, r1)) = self.row_range() else {
            return String::new();
        };
        let c0 = self.cells.iter().map(|c| c.col).min().unwrap();
        let c1 = self.cells.iter().map(|c| c.col).max().unwrap();
        let weighted: BTreeSet<TriangleCell> = self.weights.keys().flat_map(|l| l.cells()).collect();
        let mut s = String::new();
        for r in r0..=r1 {
            for c in c0..=c1 {
                let cell = TriangleCell::new(r, c);
                let ch = if !self.contains(cell) {
                    '.'
                } else if weighted.contains(&cell) {
                    if cell.is_up() { 'A' } else { 'V' }
                } else if cell.is_up() {
                    '^'
                } else {
                    'v'
                };
                s.push(ch);
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("cell {0:?} of the subregion is not in the region")]
    NotContained(TriangleCell),
    #[error("boundary cells of the subregion have mixed orientation (at {0:?})")]
    MixedBoundary(TriangleCell),
    #[error("subregion is unbalanced: {up} up and {down} down cells")]
    Unbalanced { up: usize, down: usize },
}

/// Outcome of forced-lozenge elimination: `M(original) = weight * M(reduced)`.
#[derive(Clone, Debug)]
pub struct ForcedReduction {
    pub reduced: Region,
    pub weight: ExactCount,
    /// False when a cell was left with no partner; the region has no tiling.
    pub tileable: bool,
}

/// Bipartite dual graph: one vertex per cell, one edge per shared edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub up_vertices: Vec<TriangleCell>,
    pub down_vertices: Vec<TriangleCell>,
    /// `(up index, down index, weight)`.
    pub edges: Vec<(usize, usize, ExactCount)>,
}

impl DualGraph {
    pub fn of_region(region: &Region) -> Self {
        let up_vertices: Vec<_> = region.cells.iter().copied().filter(|c| c.is_up()).collect();
        let down_vertices: Vec<_> = region.cells.iter().copied().filter(|c| !c.is_up()).collect();
        let down_index: HashMap<TriangleCell, usize> =
            down_vertices.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut edges = Vec::new();
        for (ui, &u) in up_vertices.iter().enumerate() {
            for n in u.adjacency() {
                if let Some(&di) = down_index.get(&n) {
                    let loz = Lozenge::new(u, n).expect("adjacent");
                    edges.push((ui, di, region.weight(&loz)));
                }
            }
        }
        DualGraph {
            up_vertices,
            down_vertices,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.up_vertices.len() + self.down_vertices.len()
    }

    /// Adjacency lists over a combined numbering: up vertices first, then down.
    pub fn adjacency_lists(&self) -> Vec<Vec<(usize, ExactCount)>> {
        let nu = self.up_vertices.len();
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (u, d, w) in &self.edges {
            adj[*u].push((nu + d, w.clone()));
            adj[nu + d].push((*u, w.clone()));
        }
        adj
    }

    /// Connected components as lists of combined vertex indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; adj.len()];
        let mut out = Vec::new();
        for s in 0..adj.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for (n, _) in &adj[v] {
                    if !seen[*n] {
                        seen[*n] = true;
                        comp.push(*n);
                        q.push_back(*n);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn combined_vertex(&self, i: usize) -> TriangleCell {
        let nu = self.up_vertices.len();
        if i < nu {
            self.up_vertices[i]
        } else {
            self.down_vertices[i - nu]
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawWeight {
    cells: [(i32, i32); 2],
    weight: ExactCount,
}

#[derive(Serialize, Deserialize)]
struct RawRegion {
    cells: Vec<(i32, i32)>,
    #[serde(default)]
    weights: Vec<RawWeight>,
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawRegion {
            cells: self.cells.iter().map(|c| (c.row, c.col)).collect(),
            weights: self
                .weights
                .iter()
                .map(|(l, w)| RawWeight {
                    cells: [(l.up.row, l.up.col), (l.down.row, l.down.col)],
                    weight: w.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawRegion::deserialize(d)?;
        let mut region = Region::from_cells(raw.cells.iter().map(|&(r, c)| TriangleCell::new(r, c)));
        for w in raw.weights {
            let [(r1, c1), (r2, c2)] = w.cells;
            let loz = Lozenge::new(TriangleCell::new(r1, c1), TriangleCell::new(r2, c2))
                .map_err(serde::de::Error::custom)?;
            region.set_weight(loz, w.weight).map_err(serde::de::Error::custom)?;
        }
        Ok(region)
    }
}
