//! Constructors for the region families.

use std::collections::BTreeSet;

use crate::exact::ExactCount;
use crate::formulas::{HParams, HsParams};
use crate::lattice::{cells_inside, down_triangle, up_triangle, Dir, LatticeError, LatticePoint, Lozenge, Region, TriangleCell};

/// A region bounded by a north side, a northeast side, a southeast side and a
/// south side, closed on the west by a lattice path made of a straight
/// southwest part, a zigzag and a straight northwest part (bottom to top).
///
/// The top-left corner sits at lattice point `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalvedHexagon {
    pub north: i32,
    pub north_east: i32,
    pub south_east: i32,
    pub south: i32,
    pub south_west: i32,
    pub zigzag: i32,
    pub north_west: i32,
    /// First zigzag step when walking up, used only when `zigzag` is even.
    pub zig_first: Dir,
    /// Give weight 1/2 to the vertical lozenges in the notches of the west
    /// boundary.
    pub weighted: bool,
}

impl HalvedHexagon {
    pub fn height(&self) -> i32 {
        self.north_east + self.south_east
    }

    /// The west boundary from the bottom-left corner up to `(0, 0)`, as unit
    /// steps, or `None` if the sides do not close up.
    pub fn west_path(&self) -> Option<(LatticePoint, Vec<Dir>)> {
        if self.south_west + self.zigzag + self.north_west != self.height() {
            return None;
        }
        let x_end = 2 * self.north + self.north_east - self.south_east - 2 * self.south;
        let start = LatticePoint { x2: x_end, line: self.height() };
        // Net horizontal drift the zigzag has to supply.
        let need = -(x_end - self.south_west + self.north_west);
        let k = self.zigzag;
        let first = if k % 2 == 0 {
            if need != 0 {
                return None;
            }
            self.zig_first
        } else if need == 1 {
            Dir::NE
        } else if need == -1 {
            Dir::NW
        } else {
            return None;
        };
        let other = if first == Dir::NE { Dir::NW } else { Dir::NE };
        let mut steps = vec![Dir::NW; self.south_west as usize];
        steps.extend((0..k).map(|i| if i % 2 == 0 { first } else { other }));
        steps.extend(std::iter::repeat_n(Dir::NE, self.north_west as usize));
        Some((start, steps))
    }

    pub fn build(&self) -> Result<Region, LatticeError> {
        let (start, west) = self
            .west_path()
            .ok_or(LatticeError::OpenBoundary(LatticePoint { x2: 0, line: 0 }))?;
        let mut walk = vec![
            (Dir::E, self.north),
            (Dir::SE, self.north_east),
            (Dir::SW, self.south_east),
            (Dir::W, self.south),
        ];
        walk.extend(west.iter().map(|d| (*d, 1)));
        let top_left = LatticePoint { x2: 0, line: 0 };
        let cells = cells_inside(&[(top_left, walk)])?;
        debug_assert!(start.x2 == 2 * self.north + self.north_east - self.south_east - 2 * self.south);
        let mut region = Region::new(cells);
        if self.weighted {
            for lz in notch_lozenges(start, &west) {
                if region.contains(lz.up()) && region.contains(lz.down()) {
                    region.set_weight(lz, ExactCount::half())?;
                }
            }
        }
        Ok(region)
    }
}

/// Vertical lozenges whose left vertex is a `<` corner of a path walked
/// upward (a NW step followed by a NE step).
pub fn notch_lozenges(start: LatticePoint, steps: &[Dir]) -> Vec<Lozenge> {
    let mut out = Vec::new();
    let mut p = start;
    for w in steps.windows(2) {
        let q = p.step(w[0], 1);
        if w[0] == Dir::NW && w[1] == Dir::NE {
            let up = TriangleCell::new(q.line - 1, q.x2 + 1);
            if let Some(lz) = Lozenge::vertical_below(up) {
                out.push(lz);
            }
        }
        p = q;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("the parameters give no region: {0}")]
    Fit(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Cells of a shamrock: a down-pointing core of side `core` with top-left
/// corner `corner`, an up-pointing leaf of side `bottom` hanging from the
/// core's bottom vertex, and two up-pointing leaves of side `top` standing on
/// the core's top line at either side.
pub fn shamrock(corner: LatticePoint, core: i32, bottom: i32, top: i32) -> BTreeSet<TriangleCell> {
    let mut cells = down_triangle(corner, core);
    let bottom_vertex = LatticePoint { x2: corner.x2 + core, line: corner.line + core };
    cells.extend(up_triangle(bottom_vertex, bottom));
    let left = LatticePoint { x2: corner.x2 - top, line: corner.line - top };
    let right = LatticePoint { x2: corner.x2 + 2 * core + top, line: corner.line - top };
    cells.extend(up_triangle(left, top));
    cells.extend(up_triangle(right, top));
    cells
}

/// The symmetric hexagon with a shamrock removed from its axis, returned as
/// (hexagon cells, shamrock cells). The axis is `x = 0`.
pub fn hs_parts(p: HsParams) -> Result<(BTreeSet<TriangleCell>, BTreeSet<TriangleCell>), RegionError> {
    hs_parts_with(p, true)
}

/// As [`hs_parts`]; with `strict` unset the shamrock may touch the boundary
/// (it must still lie inside the hexagon).
pub fn hs_parts_with(
    p: HsParams,
    strict: bool,
) -> Result<(BTreeSet<TriangleCell>, BTreeSet<TriangleCell>), RegionError> {
    let [x, y, z, m, a, b] = [p.x, p.y, p.z, p.m, p.a, p.b].map(|v| v as i32);
    if [x, y, z, m, a, b].iter().any(|v| *v < 0) {
        return Err(RegionError::Parameter(format!("HS{p} needs nonnegative parameters")));
    }
    if (x - z).rem_euclid(2) != 0 {
        return Err(RegionError::Parameter(format!("HS{p}: x and z must have the same parity")));
    }
    let slant = y + a + 2 * b;
    if x + m == 0 || y + m == 0 || slant == 0 || x + a + 2 * b == 0 {
        return Err(RegionError::Fit(format!("HS{p}: the hexagon has a side of length zero")));
    }
    let top = (x + m).rem_euclid(2);
    let walk = vec![
        (Dir::E, x + m),
        (Dir::SE, slant),
        (Dir::SW, y + m),
        (Dir::W, x + a + 2 * b),
        (Dir::NW, y + m),
        (Dir::NE, slant),
    ];
    let hexagon = cells_inside(&[(LatticePoint { x2: -(x + m), line: top }, walk)])?;
    let bottom = top + 2 * y + a + 2 * b + m;
    let core_top = bottom - z - a - m;
    let leaf = shamrock(LatticePoint { x2: -m, line: core_top }, m, a, b);
    if let Some(c) = leaf.iter().find(|c| !hexagon.contains(c)) {
        return Err(RegionError::Fit(format!("shamrock cell {c:?} leaves HS{p}")));
    }
    // Strictly inside: no shamrock cell shares an edge with the outside.
    if let Some(c) = leaf
        .iter()
        .filter(|_| strict)
        .find(|c| c.adjacency().iter().any(|n| !hexagon.contains(n)))
    {
        return Err(RegionError::Fit(format!("shamrock cell {c:?} touches the boundary of HS{p}")));
    }
    Ok((hexagon, leaf))
}

pub fn hs_region(p: HsParams) -> Result<Region, RegionError> {
    let (hexagon, leaf) = hs_parts(p)?;
    Ok(Region::new(hexagon.difference(&leaf).copied().collect()))
}

/// Result of cutting a mirror-symmetric region along `x = 0`:
/// `M(region) = 2^exponent * forced * M(left) * M(right)`.
#[derive(Clone, Debug)]
pub struct AxisCut {
    /// The part west of the axis, mirrored so its cut edge faces west.
    pub left: Region,
    pub right: Region,
    pub exponent: i64,
    /// Product of weights of the lozenges forced after the cut.
    pub forced: ExactCount,
}

/// Splits a region symmetric about `x = 0` into two halves whose weighted
/// counts factor the count of the whole.
///
/// The cells on the axis, read top to bottom, are labelled alternately
/// `a1, b1, a2, b2, ...`. An up cell labelled `a` or a down cell labelled
/// `b` goes east of the cut; the others go west. Vertical lozenges on the
/// axis keep half their weight.
pub fn axis_cut(region: &Region) -> Result<AxisCut, RegionError> {
    let (west, east, exponent) = axis_halves(region)?;
    let east = east.remove_forced_lozenges();
    let west = west.remove_forced_lozenges();
    Ok(AxisCut {
        left: west.reduced.reflect_vertical(),
        right: east.reduced,
        exponent,
        forced: west.weight * east.weight,
    })
}

/// The two sides of the cut before forced lozenges are removed, as
/// (west, east, number of axis pairs). The west side is not mirrored.
pub fn axis_halves(region: &Region) -> Result<(Region, Region, i64), RegionError> {
    if region.reflect_vertical() != *region {
        return Err(RegionError::Parameter("region is not symmetric about x = 0".into()));
    }
    let axis: Vec<TriangleCell> = region.cells().iter().copied().filter(|c| c.col() == 0).collect();
    if !axis.len().is_multiple_of(2) {
        return Err(RegionError::Parameter(format!("odd number ({}) of axis cells", axis.len())));
    }
    let mut east = BTreeSet::new();
    let mut west = BTreeSet::new();
    for (i, c) in axis.iter().enumerate() {
        if (i % 2 == 0) == c.is_up() {
            east.insert(*c);
        } else {
            west.insert(*c);
        }
    }
    for c in region.cells() {
        if c.col() > 0 {
            east.insert(*c);
        } else if c.col() < 0 {
            west.insert(*c);
        }
    }
    let mut halves = Vec::new();
    for side in [&west, &east] {
        let mut half = region.restricted_to(side);
        for c in side.iter().filter(|c| c.col() == 0 && c.is_up()) {
            if let Some(lz) = Lozenge::vertical_below(*c) {
                if half.contains(lz.down()) {
                    let w = half.weight(&lz) * ExactCount::half();
                    half.set_weight(lz, w)?;
                }
            }
        }
        halves.push(half);
    }
    let east = halves.pop().unwrap();
    let west = halves.pop().unwrap();
    Ok((west, east, (axis.len() / 2) as i64))
}

/// Halved hexagon with three holes on its west side, the common shape of the
/// `H` families.
///
/// The west boundary is a zigzag of `lower_zigzag` rows starting with a NW
/// step at the bottom-left corner, followed by a zigzag whose phase is fixed
/// by the sides closing up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HShape {
    pub north: i32,
    pub north_east: i32,
    pub south_east: i32,
    pub south: i32,
    pub lower_zigzag: i32,
    /// Top-left corner and side of the down-pointing `m`-hole.
    pub m_hole: (LatticePoint, i32),
    /// Apex and side of the up-pointing triangle east of the `m`-hole.
    pub d_hole: (LatticePoint, i32),
    /// Apex and side of the up-pointing `a`-hole.
    pub a_hole: (LatticePoint, i32),
    /// Rows whose notch lozenges get weight 1/2.
    pub weighted_rows: std::ops::Range<i32>,
}

impl HShape {
    pub fn height(&self) -> i32 {
        self.north_east + self.south_east
    }

    pub fn west_path(&self) -> Option<(LatticePoint, Vec<Dir>)> {
        let ht = self.height();
        if self.lower_zigzag < 0 || self.lower_zigzag > ht {
            return None;
        }
        let x_end = 2 * self.north + self.north_east - self.south_east - 2 * self.south;
        let flip = |d: Dir| if d == Dir::NE { Dir::NW } else { Dir::NE };
        let mut steps = Vec::with_capacity(ht as usize);
        let mut cur = Dir::NW;
        for _ in 0..self.lower_zigzag {
            steps.push(cur);
            cur = flip(cur);
        }
        let drift: i32 = steps.iter().map(|d| if *d == Dir::NE { 1 } else { -1 }).sum();
        let need = -x_end - drift;
        let upper = ht - self.lower_zigzag;
        cur = match (upper % 2, need) {
            (0, 0) => cur,
            (1, 1) => Dir::NE,
            (1, -1) => Dir::NW,
            _ => return None,
        };
        for _ in 0..upper {
            steps.push(cur);
            cur = flip(cur);
        }
        Some((LatticePoint { x2: x_end, line: ht }, steps))
    }

    pub fn build(&self) -> Result<Region, RegionError> {
        if [self.north, self.north_east, self.south_east, self.south].iter().any(|v| *v < 0) {
            return Err(RegionError::Fit(format!("negative side in {self:?}")));
        }
        let (start, west) = self
            .west_path()
            .ok_or_else(|| RegionError::Fit(format!("the sides of {self:?} do not close up")))?;
        let mut walk = vec![
            (Dir::E, self.north),
            (Dir::SE, self.north_east),
            (Dir::SW, self.south_east),
            (Dir::W, self.south),
        ];
        walk.extend(west.iter().map(|d| (*d, 1)));
        let mut region = Region::new(cells_inside(&[(LatticePoint { x2: 0, line: 0 }, walk)])?);
        for lz in notch_lozenges(start, &west) {
            if self.weighted_rows.contains(&lz.up().row()) && region.contains(lz.up()) && region.contains(lz.down()) {
                region.set_weight(lz, ExactCount::half())?;
            }
        }
        let mut holes = down_triangle(self.m_hole.0, self.m_hole.1);
        holes.extend(up_triangle(self.d_hole.0, self.d_hole.1));
        holes.extend(up_triangle(self.a_hole.0, self.a_hole.1));
        Ok(region.without_cells(holes.iter()))
    }
}

/// Parameters outside which the reconstructed `H_i` boundary does not give
/// the region the formula counts.
pub fn h_fits(i: u8, p: HParams) -> Result<(), RegionError> {
    if !(1..=8).contains(&i) {
        return Err(RegionError::Parameter(format!("no family H{i}")));
    }
    if !p.is_nonnegative() {
        return Err(RegionError::Parameter(format!("H{i}{p} needs nonnegative parameters")));
    }
    let ok = match i {
        4 | 8 => p.m >= 1 && p.c + p.d >= 1,
        6 => p.c + p.d >= 1,
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        let need = if i == 6 { "c + d >= 1" } else { "m >= 1 and c + d >= 1" };
        Err(RegionError::Fit(format!("H{i}{p} needs {need}")))
    }
}

/// The outline and hole placement of the five families built directly.
pub fn h_shape(i: u8, p: HParams) -> Result<HShape, RegionError> {
    let [x, b, c, m, a, d] = [p.x, p.b, p.c, p.m, p.a, p.d].map(|v| v as i32);
    // (north-east offset, south-east offset, m-hole column, m-hole line
    // offset, a-hole apex column)
    let (neo, seo, axm, dl, apex) = match i {
        1 => (1, 1, 0, 0, 0),
        2 => (1, 0, 0, 0, 1),
        3 => (0, 0, 0, 0, 0),
        4 => (-1, -1, -1, -1, 0),
        5 => (0, 1, 0, 0, -1),
        _ => return Err(RegionError::Parameter(format!("H{i} is not built from an outline"))),
    };
    let north_east = 2 * a + b + c + 2 * d + neo;
    let south_east = 2 * m + b + c + seo;
    let ht = north_east + south_east;
    let lm = 2 * (c + d) + dl;
    let la = ht - 2 * b - 2 * a;
    let weighted_rows = match i {
        3 | 4 => 0..ht,
        5 => ht - 2 * b..ht,
        _ => 0..0,
    };
    Ok(HShape {
        north: x + m,
        north_east,
        south_east,
        south: x + a + d,
        lower_zigzag: 2 * b,
        m_hole: (LatticePoint { x2: axm - 2 * m, line: lm }, 2 * m),
        d_hole: (LatticePoint { x2: axm + 2 * m + d, line: lm - d }, d),
        a_hole: (LatticePoint { x2: apex, line: la }, 2 * a),
        weighted_rows,
    })
}

fn westmost(region: &Region, row: i32) -> Option<TriangleCell> {
    region.cells().iter().copied().filter(|c| c.row() == row).min_by_key(|c| c.col())
}

/// The region `H_i(x, b, c; m, a, d)`.
///
/// `H6` is `H3` with the strip along the north side and along the west side
/// above the `m`-hole removed. `H7` and `H8` are `H3` and `H4` with `b + 1`,
/// minus the strip along the south side, the base of the `a`-hole and the
/// west side below it.
pub fn h_region(i: u8, p: HParams) -> Result<Region, RegionError> {
    h_fits(i, p)?;
    match i {
        1..=5 => h_shape(i, p)?.build(),
        6 => {
            let r = h_shape(3, p)?.build()?;
            let lm = 2 * (p.c + p.d) as i32;
            let mut strip: BTreeSet<TriangleCell> = r.cells().iter().copied().filter(|c| c.row() == 0).collect();
            strip.extend((1..lm).filter_map(|row| westmost(&r, row)));
            Ok(r.without_cells(strip.iter()))
        }
        _ => {
            let q = HParams { b: p.b + 1, ..p };
            let r = h_shape(if i == 7 { 3 } else { 4 }, q)?.build()?;
            let Some((_, last)) = r.row_range() else {
                return Ok(r);
            };
            let a = q.a as i32;
            let base = last + 1 - 2 * q.b as i32;
            let mut strip: BTreeSet<TriangleCell> = r
                .cells()
                .iter()
                .copied()
                .filter(|c| c.row() == last || (c.row() == base && c.col() <= 2 * a))
                .collect();
            strip.extend((base..=last).filter_map(|row| westmost(&r, row)));
            Ok(r.without_cells(strip.iter()))
        }
    }
}

/// `P_{a,b,c}`, and its weighted version `P'` when `weighted` is set.
pub fn p_region(a: i64, b: i64, c: i64, weighted: bool) -> Result<Region, RegionError> {
    if a < 0 || b < 0 || c < 0 {
        return Err(RegionError::Parameter(format!("P({a},{b},{c}) needs nonnegative parameters")));
    }
    if a > b {
        return Err(RegionError::Parameter(format!("P({a},{b},{c}) needs a <= b")));
    }
    let [a, b, c] = [a, b, c].map(|v| v as i32);
    let h = HalvedHexagon {
        north: c,
        north_east: b,
        south_east: a,
        south: c,
        south_west: b - a,
        zigzag: 2 * a,
        north_west: 0,
        zig_first: Dir::NW,
        weighted,
    };
    Ok(h.build()?)
}

/// `B_{x,a,b,c}` (or `B'` when `weighted`): a halved hexagon with half of a
/// down-pointing triangle of side `2a` cut from its west side.
pub fn b_region(x: i64, a: i64, b: i64, c: i64, weighted: bool) -> Result<Region, RegionError> {
    if [x, a, b, c].iter().any(|v| *v < 0) {
        return Err(RegionError::Parameter(format!("B({x},{a},{b},{c}) needs nonnegative parameters")));
    }
    let [x, a, b, c] = [x, a, b, c].map(|v| v as i32);
    let h = match (weighted, a + c) {
        // The weighted zigzag would have -1 rows; the west side is straight.
        (true, 0) => HalvedHexagon {
            north: x,
            north_east: b,
            south_east: 0,
            south: x,
            south_west: b,
            zigzag: 0,
            north_west: 0,
            zig_first: Dir::NW,
            weighted: false,
        },
        (true, _) => HalvedHexagon {
            north: x + a,
            north_east: b + c,
            south_east: 2 * a + c,
            south: x,
            south_west: b + 1,
            zigzag: 2 * a + 2 * c - 1,
            north_west: 0,
            zig_first: Dir::NW,
            weighted: true,
        },
        (false, _) => HalvedHexagon {
            north: x + a,
            north_east: b + c,
            south_east: 2 * a + c + 1,
            south: x,
            south_west: b,
            zigzag: 2 * a + 2 * c + 1,
            north_west: 0,
            zig_first: Dir::NW,
            weighted: false,
        },
    };
    let region = h.build()?;
    let hole = down_triangle(LatticePoint { x2: -2 * a, line: 2 * c }, 2 * a);
    Ok(region.without_cells(hole.iter()))
}

/// The semiregular hexagon with sides `a, b, c, a, b, c`, walked clockwise
/// from the north side.
pub fn hexagon(a: i64, b: i64, c: i64) -> Result<Region, RegionError> {
    if a < 0 || b < 0 || c < 0 {
        return Err(RegionError::Parameter(format!("hexagon({a},{b},{c}) needs nonnegative sides")));
    }
    let [a, b, c] = [a, b, c].map(|v| v as i32);
    let walk = vec![(Dir::E, a), (Dir::SE, b), (Dir::SW, c), (Dir::W, a), (Dir::NW, b), (Dir::NE, c)];
    Ok(Region::new(cells_inside(&[(LatticePoint { x2: 0, line: 0 }, walk)])?))
}

/// The two halves of `HS` after the axis cut, with
/// `M(HS) = 2^exponent * M(left) * M(right)`.
#[derive(Clone, Debug)]
pub struct HsHalves {
    /// The west half, mirrored.
    pub left: Region,
    pub right: Region,
    pub exponent: i64,
}

pub fn hs_halves(p: HsParams) -> Result<HsHalves, RegionError> {
    let (west, east, exponent) = axis_halves(&hs_region(p)?)?;
    // Forced lozenges of weight 1 are dropped. A side whose forced lozenges
    // include a weighted one is kept whole, since that weight is part of the
    // count of the half.
    let reduce = |half: Region| {
        let f = half.remove_forced_lozenges();
        if f.tileable && f.weight.is_one() {
            f.reduced
        } else {
            half
        }
    };
    Ok(HsHalves { left: reduce(west).reflect_vertical().normalized(), right: reduce(east).normalized(), exponent })
}

/// A region family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Family {
    #[serde(rename = "HEXAGON")]
    Hexagon,
    P,
    #[serde(rename = "P_W")]
    PWeighted,
    B,
    #[serde(rename = "B_W")]
    BWeighted,
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
    H8,
    HS,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::Hexagon,
        Family::P,
        Family::PWeighted,
        Family::B,
        Family::BWeighted,
        Family::H1,
        Family::H2,
        Family::H3,
        Family::H4,
        Family::H5,
        Family::H6,
        Family::H7,
        Family::H8,
        Family::HS,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Hexagon => "HEXAGON",
            Family::P => "P",
            Family::PWeighted => "P_W",
            Family::B => "B",
            Family::BWeighted => "B_W",
            Family::H1 => "H1",
            Family::H2 => "H2",
            Family::H3 => "H3",
            Family::H4 => "H4",
            Family::H5 => "H5",
            Family::H6 => "H6",
            Family::H7 => "H7",
            Family::H8 => "H8",
            Family::HS => "HS",
        }
    }

    /// Parameter names, in the order the constructors take them.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Hexagon | Family::P | Family::PWeighted => &["a", "b", "c"],
            Family::B | Family::BWeighted => &["x", "a", "b", "c"],
            Family::HS => &["x", "y", "z", "m", "a", "b"],
            _ => &["x", "b", "c", "m", "a", "d"],
        }
    }

    /// `Some(i)` for the family `H_i`.
    pub fn h_index(self) -> Option<u8> {
        let i = match self {
            Family::H1 => 1,
            Family::H2 => 2,
            Family::H3 => 3,
            Family::H4 => 4,
            Family::H5 => 5,
            Family::H6 => 6,
            Family::H7 => 7,
            Family::H8 => 8,
            _ => return None,
        };
        Some(i)
    }

    pub fn from_h_index(i: u8) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.h_index() == Some(i))
    }

    pub fn is_weighted(self) -> bool {
        !matches!(self, Family::Hexagon | Family::P | Family::B | Family::H1 | Family::H2 | Family::HS)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = RegionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace(['\'', '-'], "_");
        let key = match key.as_str() {
            "P_" | "PW" => "P_W",
            "B_" | "BW" => "B_W",
            k => k,
        };
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| RegionError::Parameter(format!("unknown family {s:?}")))
    }
}

/// A family together with its named integer parameters.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RegionSpec {
    pub family: Family,
    pub params: std::collections::BTreeMap<String, i64>,
}

impl RegionSpec {
    /// Pairs `values` with the family's parameter names in order.
    pub fn new(family: Family, values: &[i64]) -> Result<Self, RegionError> {
        let names = family.param_names();
        if values.len() != names.len() {
            return Err(RegionError::Parameter(format!(
                "{family} takes {} parameters ({}), got {}",
                names.len(),
                names.join(", "),
                values.len()
            )));
        }
        let params = names.iter().map(|n| n.to_string()).zip(values.iter().copied()).collect();
        Ok(RegionSpec { family, params })
    }

    /// Parameter values in the family's order.
    pub fn values(&self) -> Result<Vec<i64>, RegionError> {
        let names = self.family.param_names();
        if let Some(extra) = self.params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(RegionError::Parameter(format!("{} has no parameter {extra:?}", self.family)));
        }
        let values = names
            .iter()
            .map(|n| {
                self.params
                    .get(*n)
                    .copied()
                    .ok_or_else(|| RegionError::Parameter(format!("{} needs parameter {n:?}", self.family)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some((n, v)) = names.iter().zip(&values).find(|(_, v)| **v < 0) {
            return Err(RegionError::Parameter(format!("{}: {n} = {v} is negative", self.family)));
        }
        Ok(values)
    }

    pub fn h_params(&self) -> Result<Option<(u8, HParams)>, RegionError> {
        let Some(i) = self.family.h_index() else { return Ok(None) };
        let v = self.values()?;
        Ok(Some((i, HParams::new(v[0], v[1], v[2], v[3], v[4], v[5]))))
    }

    pub fn hs_params(&self) -> Result<Option<HsParams>, RegionError> {
        if self.family != Family::HS {
            return Ok(None);
        }
        let v = self.values()?;
        Ok(Some(HsParams::new(v[0], v[1], v[2], v[3], v[4], v[5])))
    }

    /// Checks the invariants without building the region (except for `HS`,
    /// whose fit test needs the cells).
    pub fn validate(&self) -> Result<(), RegionError> {
        let v = self.values()?;
        match self.family {
            Family::P | Family::PWeighted if v[0] > v[1] => {
                Err(RegionError::Parameter(format!("{self}: needs a <= b")))
            }
            Family::HS => hs_parts(self.hs_params()?.expect("HS")).map(|_| ()),
            f => match f.h_index() {
                Some(i) => h_fits(i, self.h_params()?.expect("H").1),
                None => Ok(()),
            },
        }
    }

    pub fn build(&self) -> Result<Region, RegionError> {
        let v = self.values()?;
        match self.family {
            Family::Hexagon => hexagon(v[0], v[1], v[2]),
            Family::P => p_region(v[0], v[1], v[2], false),
            Family::PWeighted => p_region(v[0], v[1], v[2], true),
            Family::B => b_region(v[0], v[1], v[2], v[3], false),
            Family::BWeighted => b_region(v[0], v[1], v[2], v[3], true),
            Family::HS => hs_region(self.hs_params()?.expect("HS")),
            _ => {
                let (i, p) = self.h_params()?.expect("H");
                h_region(i, p)
            }
        }
    }
}

impl std::fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}(", self.family)?;
        let mut first = true;
        for n in self.family.param_names() {
            if let Some(v) = self.params.get(*n) {
                if !first {
                    f.write_str(",")?;
                }
                write!(f, "{n}={v}")?;
                first = false;
            }
        }
        f.write_str(")")
    }
}

/// What a spec file may contain: a family spec or an explicit cell list.
#[derive(Clone, Debug, serde::Deserialize)]
#[serde(untagged)]
pub enum RegionInput {
    Spec(RegionSpec),
    Cells(Region),
}

impl RegionInput {
    pub fn build(&self) -> Result<Region, RegionError> {
        match self {
            RegionInput::Spec(s) => s.build(),
            RegionInput::Cells(r) => Ok(r.clone()),
        }
    }
}
