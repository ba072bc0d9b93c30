//! Closed-form product formulas for every region family.
//!
//! Each family is described by a list of [`Factor`]s (a term and a signed
//! power), built by one function per family so the transcription can be read
//! line by line against the printed products. Evaluation is exact; negative
//! trapezoid profiles may produce non-integral intermediate factors and only
//! the final product is expected to be integral (or dyadic for weighted
//! families).

use std::fmt;

use crate::exact::ExactCount;
use crate::regions::{Family, RegionSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("zero factor in the reciprocal branch of {0}")]
    ZeroFactor(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
}

/// Rising factorial with the reciprocal branch for negative `n`:
/// `(x)_n = x (x+1) ... (x+n-1)`, `(x)_0 = 1`,
/// `(x)_{-k} = 1 / ((x-1)(x-2) ... (x-k))`.
pub fn pochhammer(x: &ExactCount, n: i64) -> Result<ExactCount, FormulaError> {
    stepped_product(x, n, 1, "Pochhammer symbol")
}

/// Rising product with step two: `[x]_n = x (x+2) ... (x+2(n-1))`,
/// `[x]_{-k} = 1 / ((x-2)(x-4) ... (x-2k))`.
pub fn skipped_pochhammer(x: &ExactCount, n: i64) -> Result<ExactCount, FormulaError> {
    stepped_product(x, n, 2, "skipped Pochhammer symbol")
}

fn stepped_product(x: &ExactCount, n: i64, step: i64, what: &str) -> Result<ExactCount, FormulaError> {
    if n >= 0 {
        return Ok((0..n).map(|i| x + &ExactCount::from_int(step * i)).product());
    }
    let den: ExactCount = (1..=-n).map(|i| x - &ExactCount::from_int(step * i)).product();
    den.recip()
        .ok_or_else(|| FormulaError::ZeroFactor(format!("{what} ({x})_{n}")))
}

/// `T(x, n, m) = prod_{i=0}^{m-1} (x+i)_{n-2i}`, reciprocal of `T(x, n, -m)`
/// for negative `m`.
pub fn trapezoid_t(x: &ExactCount, n: i64, m: i64) -> Result<ExactCount, FormulaError> {
    trapezoid(x, n, m, 1, pochhammer, "T")
}

/// `V(x, n, m) = prod_{i=0}^{m-1} [x+2i]_{n-2i}`, reciprocal of `V(x, n, -m)`
/// for negative `m`.
pub fn trapezoid_v(x: &ExactCount, n: i64, m: i64) -> Result<ExactCount, FormulaError> {
    trapezoid(x, n, m, 2, skipped_pochhammer, "V")
}

fn trapezoid(
    x: &ExactCount,
    n: i64,
    m: i64,
    shift: i64,
    inner: fn(&ExactCount, i64) -> Result<ExactCount, FormulaError>,
    name: &str,
) -> Result<ExactCount, FormulaError> {
    let mut v = ExactCount::one();
    for i in 0..m.abs() {
        let xi = x + &ExactCount::from_int(shift * i);
        v = v * inner(&xi, n - 2 * i)?;
    }
    if m >= 0 {
        Ok(v)
    } else {
        v.recip()
            .ok_or_else(|| FormulaError::ZeroFactor(format!("{name}({x}, {n}, {m})")))
    }
}

/// One term of a product formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// Halved hexagon `P_{a,b,c}`.
    P(i64, i64, i64),
    /// Weighted halved hexagon `P'_{a,b,c}`.
    PWeighted(i64, i64, i64),
    /// `B_{x,a,b,c}`.
    B(i64, i64, i64, i64),
    /// `B'_{x,a,b,c}`.
    BWeighted(i64, i64, i64, i64),
    T(i64, i64, i64),
    V(i64, i64, i64),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::P(a, b, c) => write!(f, "M(P[{a},{b},{c}])"),
            Term::PWeighted(a, b, c) => write!(f, "M(P'[{a},{b},{c}])"),
            Term::B(x, a, b, c) => write!(f, "M(B[{x},{a},{b},{c}])"),
            Term::BWeighted(x, a, b, c) => write!(f, "M(B'[{x},{a},{b},{c}])"),
            Term::T(x, n, m) => write!(f, "T({x},{n},{m})"),
            Term::V(x, n, m) => write!(f, "V({x},{n},{m})"),
        }
    }
}

/// A term raised to a power (+1 numerator, -1 denominator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub term: Term,
    pub power: i32,
}

fn num(term: Term) -> Factor {
    Factor { term, power: 1 }
}

fn den(term: Term) -> Factor {
    Factor { term, power: -1 }
}

impl Term {
    pub fn evaluate(&self) -> Result<ExactCount, FormulaError> {
        match *self {
            Term::P(a, b, c) => Ok(halved_product(a, b, c)),
            Term::PWeighted(a, b, c) => weighted_product(a, b, c),
            Term::B(x, a, b, c) => evaluate_factors(&b_factors(x, a, b, c)),
            Term::BWeighted(x, a, b, c) => evaluate_factors(&b_weighted_factors(x, a, b, c)),
            Term::T(x, n, m) => trapezoid_t(&ExactCount::from_int(x), n, m),
            Term::V(x, n, m) => trapezoid_v(&ExactCount::from_int(x), n, m),
        }
    }
}

pub fn evaluate_factors(factors: &[Factor]) -> Result<ExactCount, FormulaError> {
    let mut v = ExactCount::one();
    for f in factors {
        let t = f.term.evaluate()?;
        if f.power >= 0 {
            v = v * t.powi(f.power);
        } else {
            let r = t
                .recip()
                .ok_or_else(|| FormulaError::ZeroFactor(format!("denominator {}", f.term)))?;
            v = v * r.powi(-f.power);
        }
    }
    Ok(v)
}

/// The double product over the halved hexagon, with empty products equal to one.
fn halved_product(a: i64, b: i64, c: i64) -> ExactCount {
    let mut v = ExactCount::one();
    for i in 1..=a {
        for j in 1..=(b - a + 1) {
            v = v * ExactCount::ratio(c + i + j - 1, i + j - 1);
        }
        for j in (b - a + 2)..=(b - a + i) {
            v = v * ExactCount::ratio(2 * c + i + j - 1, i + j - 1);
        }
    }
    v
}

fn weighted_product(a: i64, b: i64, c: i64) -> Result<ExactCount, FormulaError> {
    let mut v = ExactCount::pow2(-a) * halved_product(a, b, c);
    for i in 1..=a {
        let d = c + b - a + i;
        if d == 0 {
            return Err(FormulaError::ZeroFactor(format!("P'[{a},{b},{c}]")));
        }
        v = v * ExactCount::ratio(2 * c + b - a + i, d);
    }
    Ok(v)
}

fn check_halved(a: i64, b: i64, c: i64) -> Result<(), FormulaError> {
    if a < 0 || b < 0 || c < 0 {
        return Err(FormulaError::Parameter(format!("P[{a},{b},{c}] needs nonnegative parameters")));
    }
    if a > b {
        return Err(FormulaError::Parameter(format!("P[{a},{b},{c}] needs a <= b")));
    }
    Ok(())
}

/// Tilings of the halved hexagon `P_{a,b,c}`.
pub fn count_p(a: i64, b: i64, c: i64) -> Result<ExactCount, FormulaError> {
    check_halved(a, b, c)?;
    Ok(halved_product(a, b, c))
}

/// Weighted tilings of `P'_{a,b,c}`.
pub fn count_p_weighted(a: i64, b: i64, c: i64) -> Result<ExactCount, FormulaError> {
    check_halved(a, b, c)?;
    weighted_product(a, b, c)
}

fn half_floor(c: i64) -> i64 {
    (c + 1).div_euclid(2)
}

/// Factors of `M(B_{x,a,b,c})`, split on the parity of `b`.
pub fn b_factors(x: i64, a: i64, b: i64, c: i64) -> Vec<Factor> {
    let f = half_floor(c);
    let mut out = vec![num(Term::P(c, c, a))];
    if b.rem_euclid(2) == 1 {
        let h = (b + 3) / 2;
        out.extend([
            num(Term::V(2 * x + 2 * a + b + 2, c, f)),
            den(Term::V(2 * a + b + 2, c, f)),
            num(Term::T(x + 1, 2 * a + b + c, b)),
            num(Term::T(x + a + h, c - 1, f)),
            den(Term::T(1, 2 * a + b + c, b)),
            den(Term::T(a + h, c - 1, f)),
        ]);
    } else {
        let h = (b + 2) / 2;
        out.extend([
            num(Term::V(2 * x + 2 * a + b + 3, c - 1, f)),
            den(Term::V(2 * a + b + 3, c - 1, f)),
            num(Term::T(x + 1, 2 * a + b + c, b)),
            num(Term::T(x + a + h, c, f)),
            den(Term::T(1, 2 * a + b + c, b)),
            den(Term::T(a + h, c, f)),
        ]);
    }
    out
}

/// Factors of `M(B'_{x,a,b,c})`, split on the parity of `b`.
pub fn b_weighted_factors(x: i64, a: i64, b: i64, c: i64) -> Vec<Factor> {
    let f = half_floor(c);
    let mut out = vec![num(Term::PWeighted(c, c, a))];
    if b.rem_euclid(2) == 1 {
        let h = (b + 1) / 2;
        out.extend([
            num(Term::V(2 * x + 2 * a + b + 2, c - 1, f)),
            den(Term::V(2 * a + b + 2, c - 1, f)),
            num(Term::T(x + 1, 2 * a + b + c - 1, b)),
            num(Term::T(x + a + h, c, f)),
            den(Term::T(1, 2 * a + b + c - 1, b)),
            den(Term::T(a + h, c, f)),
        ]);
    } else {
        let h = (b + 2) / 2;
        out.extend([
            num(Term::V(2 * x + 2 * a + b + 1, c, f)),
            den(Term::V(2 * a + b + 1, c, f)),
            num(Term::T(x + 1, 2 * a + b + c - 1, b)),
            num(Term::T(x + a + h, c - 1, f)),
            den(Term::T(1, 2 * a + b + c - 1, b)),
            den(Term::T(a + h, c - 1, f)),
        ]);
    }
    out
}

fn check_nonneg(name: &str, vals: &[i64]) -> Result<(), FormulaError> {
    if vals.iter().any(|v| *v < 0) {
        return Err(FormulaError::Parameter(format!("{name}{vals:?} needs nonnegative parameters")));
    }
    Ok(())
}

pub fn count_b(x: i64, a: i64, b: i64, c: i64) -> Result<ExactCount, FormulaError> {
    check_nonneg("B", &[x, a, b, c])?;
    evaluate_factors(&b_factors(x, a, b, c))
}

pub fn count_b_weighted(x: i64, a: i64, b: i64, c: i64) -> Result<ExactCount, FormulaError> {
    check_nonneg("B'", &[x, a, b, c])?;
    evaluate_factors(&b_weighted_factors(x, a, b, c))
}

/// Parameters of the defected halved hexagons, in the matrix layout
/// `(x b c / m a d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct HParams {
    pub x: i64,
    pub b: i64,
    pub c: i64,
    pub m: i64,
    pub a: i64,
    pub d: i64,
}

impl HParams {
    pub const fn new(x: i64, b: i64, c: i64, m: i64, a: i64, d: i64) -> Self {
        HParams { x, b, c, m, a, d }
    }

    pub fn is_nonnegative(&self) -> bool {
        [self.x, self.b, self.c, self.m, self.a, self.d].iter().all(|v| *v >= 0)
    }
}

impl fmt::Display for HParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(x={} b={} c={} m={} a={} d={})",
            self.x, self.b, self.c, self.m, self.a, self.d
        )
    }
}

/// Factor list for family `H_i`, `i` in `1..=8`.
pub fn h_factors(i: u8, p: HParams) -> Result<Vec<Factor>, FormulaError> {
    let HParams { x, b, c, m, a, d } = p;
    let mn = a.min(m);
    let gap = c + (m - a).abs() - 1;
    let shared_t = |e: i64| {
        [
            num(Term::T(x + 1, c + d - 1, d)),
            den(Term::T(1, c + d - 1, d)),
            num(Term::T(x + b + d + 2 * m + 2 * a + e, c + d - 1, d)),
            den(Term::T(b + d + 2 * m + 2 * a + e, c + d - 1, d)),
        ]
    };
    // Ratio M(B_{d+x, a, k, b+c}) / M(B_{d, a, k, b+c}) times M(B_{d, a, k, b}).
    let b_triple = |k: i64, weighted: bool| {
        let mk = |x0: i64, c0: i64| {
            if weighted {
                Term::BWeighted(x0, a, k, c0)
            } else {
                Term::B(x0, a, k, c0)
            }
        };
        [num(mk(d, b)), num(mk(d + x, b + c)), den(mk(d, b + c))]
    };
    let min_terms = |e1: i64, e2: i64| {
        [
            num(Term::T(b + d + a + mn + e1, gap, m - a)),
            den(Term::T(x + b + d + a + mn + e1, gap, m - a)),
            num(Term::T(d + m + mn + e2, gap, m - a)),
            den(Term::T(x + d + m + mn + e2, gap, m - a)),
        ]
    };
    let mut out = Vec::new();
    match i {
        1 => {
            out.push(num(Term::P(c + d, c + d, m)));
            out.extend(b_triple(2 * m + 1, false));
            out.extend(shared_t(3));
            out.extend(min_terms(2, 2));
        }
        2 => {
            out.push(num(Term::P(c + d - 1, c + d - 1, m)));
            out.extend(b_triple(2 * m, false));
            out.extend(shared_t(2));
            out.extend(min_terms(2, 1));
        }
        3 => {
            out.push(num(Term::PWeighted(c + d, c + d, m)));
            out.extend(b_triple(2 * m, true));
            out.extend(shared_t(1));
            out.extend(min_terms(1, 1));
        }
        4 => {
            out.push(num(Term::PWeighted(c + d - 1, c + d - 1, m)));
            out.extend(b_triple(2 * m - 1, true));
            out.extend(shared_t(0));
            out.extend(min_terms(1, 0));
        }
        5 => {
            out.push(num(Term::P(c + d, c + d, m)));
            out.extend(b_triple(2 * m + 1, true));
            out.extend(mixed_terms(p, 3, b + c - 1, 2, b + c + 2 * a - 2 * m - 2, 2));
        }
        6 => {
            out.push(num(Term::P(c + d - 1, c + d - 1, m)));
            out.extend(b_triple(2 * m, true));
            out.extend(mixed_terms(p, 1, b + c, 1, b + c + 2 * a - 2 * m - 1, 1));
        }
        7 => {
            out.push(num(Term::PWeighted(c + d, c + d, m)));
            out.extend(b_triple(2 * m, false));
            out.extend(mixed_terms(p, 3, b + c - 1, 1, b + c + 2 * a - 2 * m, 2));
        }
        8 => {
            out.push(num(Term::PWeighted(c + d - 1, c + d - 1, m)));
            out.extend(b_triple(2 * m - 1, false));
            out.extend(mixed_terms(p, 1, b + c, 0, b + c + 2 * a - 2 * m + 1, 1));
        }
        _ => return Err(FormulaError::Parameter(format!("no family H{i}"))),
    }
    Ok(out)
}

/// The trapezoid part shared by the mixed-boundary families:
/// `V(2d+2m+2a+v0, vn, c) / V(2x+2d+2m+2a+v0, vn, c)`
/// `* T(x+1, c+d-1, d) / T(1, c+d-1, d)`
/// `* T(x+d+2m+t0, tn, c) / T(d+2m+t0, tn, c)`
/// `* T(x+b+d+2m+2a+e, c+d-1, d) / T(b+d+2m+2a+e, c+d-1, d)`.
fn mixed_terms(p: HParams, v0: i64, vn: i64, t0: i64, tn: i64, e: i64) -> Vec<Factor> {
    let HParams { x, b, c, m, a, d } = p;
    vec![
        num(Term::V(2 * d + 2 * m + 2 * a + v0, vn, c)),
        den(Term::V(2 * x + 2 * d + 2 * m + 2 * a + v0, vn, c)),
        num(Term::T(x + 1, c + d - 1, d)),
        den(Term::T(1, c + d - 1, d)),
        num(Term::T(x + d + 2 * m + t0, tn, c)),
        den(Term::T(d + 2 * m + t0, tn, c)),
        num(Term::T(x + b + d + 2 * m + 2 * a + e, c + d - 1, d)),
        den(Term::T(b + d + 2 * m + 2 * a + e, c + d - 1, d)),
    ]
}

/// Formula value for `H_i` with the given parameters. Parameters are not
/// range-checked here beyond the family index; see the regions module for
/// the geometric domain of each family.
pub fn count_h(i: u8, p: HParams) -> Result<ExactCount, FormulaError> {
    evaluate_factors(&h_factors(i, p)?)
}

/// Parameters `(x y z / m a b)` of the hexagon with a shamrock removed on its
/// symmetry axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct HsParams {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub m: i64,
    pub a: i64,
    pub b: i64,
}

impl HsParams {
    pub const fn new(x: i64, y: i64, z: i64, m: i64, a: i64, b: i64) -> Self {
        HsParams { x, y, z, m, a, b }
    }
}

impl fmt::Display for HsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(x={} y={} z={} m={} a={} b={})",
            self.x, self.y, self.z, self.m, self.a, self.b
        )
    }
}

/// The two halved-hexagon factors of the shamrock formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HsSplit {
    /// Which of the eight parity cases applies, labelled `a`..`d` with the
    /// parity of `x`.
    pub case: (char, bool),
    pub left: (u8, HParams),
    pub right: (u8, HParams),
    /// `M(HS) = 2^exponent * M_left * M_right`.
    pub exponent: i64,
}

/// Parity dispatch of the shamrock formula with the factor parameters as
/// printed. The first argument of every factor is off by its fourth one; the
/// oracle disagrees with this table, so it is kept only for comparison.
pub fn hs_split_printed(p: HsParams) -> Result<HsSplit, FormulaError> {
    let HsParams { x, y, z, m, a, b } = p;
    if [x, y, z, m, a, b].iter().any(|v| *v < 0) {
        return Err(FormulaError::Parameter(format!("HS{p} needs nonnegative parameters")));
    }
    if (x - z).rem_euclid(2) != 0 {
        return Err(FormulaError::Parameter(format!("HS{p}: x and z must have the same parity")));
    }
    let x_even = x % 2 == 0;
    let h = HParams::new;
    let (case, left, right) = match (a % 2 == 1, m % 2 == 1) {
        (true, true) => {
            let (l, r) = if x_even {
                (
                    h((x + m - 1) / 2, z / 2, y - z / 2, (m - 1) / 2, (a - 1) / 2, b),
                    h((x + m + 1) / 2, z / 2 - 1, y - z / 2, (m + 1) / 2, (a + 1) / 2, b),
                )
            } else {
                (
                    h((x + m) / 2, (z - 1) / 2, y - (z - 1) / 2 - 1, (m - 1) / 2, (a - 1) / 2, b),
                    h((x + m) / 2, (z - 1) / 2, y - (z - 1) / 2, (m + 1) / 2, (a + 1) / 2, b),
                )
            };
            ('a', (1, l), (4, r))
        }
        (false, false) => {
            let (l, r) = if x_even {
                (
                    h((x + m) / 2, z / 2 - 1, y - z / 2, m / 2, a / 2, b),
                    h((x + m) / 2, z / 2, y - z / 2, m / 2, a / 2, b),
                )
            } else {
                (
                    h((x + m - 1) / 2, (z - 1) / 2, y - (z - 1) / 2, m / 2, a / 2, b),
                    h((x + m + 1) / 2, (z - 1) / 2, y - (z - 1) / 2 - 1, m / 2, a / 2, b),
                )
            };
            ('b', (2, l), (3, r))
        }
        (false, true) => {
            let (l, r) = if x_even {
                (
                    h((x + m - 1) / 2, z / 2, y - z / 2, (m - 1) / 2, a / 2, b),
                    h((x + m + 1) / 2, z / 2 - 1, y - z / 2, (m + 1) / 2, a / 2, b),
                )
            } else {
                (
                    h((x + m) / 2, (z - 1) / 2, y - (z - 1) / 2 - 1, (m - 1) / 2, a / 2, b),
                    h((x + m) / 2, (z - 1) / 2, y - (z - 1) / 2, (m + 1) / 2, a / 2, b),
                )
            };
            ('c', (5, l), (8, r))
        }
        (true, false) => {
            let (l, r) = if x_even {
                (
                    h((x + m) / 2, z / 2 - 1, y - z / 2, m / 2, (a + 1) / 2, b),
                    h((x + m) / 2, z / 2, y - z / 2, m / 2, (a - 1) / 2, b),
                )
            } else {
                (
                    h((x + m - 1) / 2, (z - 1) / 2, y - (z - 1) / 2, m / 2, (a + 1) / 2, b),
                    h((x + m + 1) / 2, (z - 1) / 2, y - (z - 1) / 2 - 1, m / 2, (a - 1) / 2, b),
                )
            };
            ('d', (6, l), (7, r))
        }
    };
    Ok(HsSplit {
        case: (case, x_even),
        left,
        right,
        exponent: y + b,
    })
}

/// Parity dispatch of the shamrock formula: which `H_i` factors appear and
/// with what parameters.
///
/// Same case split as [`hs_split_printed`], with `m` subtracted from the
/// first argument of each factor. These are the parameters of the regions
/// the axis cut actually produces.
pub fn hs_split(p: HsParams) -> Result<HsSplit, FormulaError> {
    let mut s = hs_split_printed(p)?;
    for (_, h) in [&mut s.left, &mut s.right] {
        h.x -= h.m;
    }
    Ok(s)
}

/// `2^{y+b} * M_i(left) * M_j(right)` for the matching parity case.
pub fn count_hs(p: HsParams) -> Result<ExactCount, FormulaError> {
    let s = hs_split(p)?;
    let l = count_h(s.left.0, s.left.1)?;
    let r = count_h(s.right.0, s.right.1)?;
    Ok(ExactCount::pow2(s.exponent) * l * r)
}

/// Formula value for a spec. The plain hexagon has no product formula here.
pub fn formula_value(spec: &RegionSpec) -> Result<ExactCount, FormulaError> {
    let v = spec.values().map_err(|e| FormulaError::Parameter(e.to_string()))?;
    match spec.family {
        Family::Hexagon => Err(FormulaError::Parameter("no product formula for the plain hexagon".into())),
        Family::P => count_p(v[0], v[1], v[2]),
        Family::PWeighted => count_p_weighted(v[0], v[1], v[2]),
        Family::B => count_b(v[0], v[1], v[2], v[3]),
        Family::BWeighted => count_b_weighted(v[0], v[1], v[2], v[3]),
        Family::HS => count_hs(HsParams::new(v[0], v[1], v[2], v[3], v[4], v[5])),
        f => {
            let i = f.h_index().expect("H family");
            count_h(i, HParams::new(v[0], v[1], v[2], v[3], v[4], v[5]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ExactCount {
        ExactCount::from_int(n)
    }

    #[test]
    fn pochhammer_branches() {
        assert_eq!(pochhammer(&q(3), 2).unwrap(), q(12));
        assert_eq!(pochhammer(&q(7), 0).unwrap(), q(1));
        assert_eq!(pochhammer(&q(5), -2).unwrap(), ExactCount::ratio(1, 12));
        assert!(matches!(pochhammer(&q(1), -1), Err(FormulaError::ZeroFactor(_))));
    }

    #[test]
    fn skipped_pochhammer_branches() {
        assert_eq!(skipped_pochhammer(&q(3), 3).unwrap(), q(105));
        assert_eq!(skipped_pochhammer(&q(9), 0).unwrap(), q(1));
        assert_eq!(skipped_pochhammer(&q(4), -1).unwrap(), ExactCount::ratio(1, 2));
        assert!(skipped_pochhammer(&q(2), -1).is_err());
    }

    #[test]
    fn trapezoids() {
        assert_eq!(trapezoid_t(&q(1), 3, 2).unwrap(), q(12));
        assert_eq!(trapezoid_t(&q(4), 9, 0).unwrap(), q(1));
        assert_eq!(trapezoid_t(&q(1), 3, -2).unwrap(), ExactCount::ratio(1, 12));
        assert_eq!(trapezoid_v(&q(1), 4, 2).unwrap(), q(1575));
        assert_eq!(trapezoid_v(&q(4), 9, 0).unwrap(), q(1));
        assert_eq!(trapezoid_v(&q(1), 4, -2).unwrap(), ExactCount::ratio(1, 1575));
    }

    #[test]
    fn halved_small() {
        assert_eq!(count_p(0, 5, 5).unwrap(), q(1));
        assert_eq!(count_p(1, 1, 1).unwrap(), q(2));
        assert!(count_p(2, 1, 0).is_err());
        assert_eq!(count_p_weighted(0, 3, 2).unwrap(), q(1));
        assert_eq!(count_p_weighted(1, 1, 1).unwrap(), ExactCount::ratio(3, 2));
        assert!(count_p_weighted(3, 2, 0).is_err());
    }

    #[test]
    fn b_base_cases_reduce_to_halved() {
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(count_b(0, a, b, c).unwrap(), count_p(c, c, a).unwrap());
                    assert_eq!(count_b_weighted(0, a, b, c).unwrap(), count_p_weighted(c, c, a).unwrap());
                }
            }
        }
        for x in 0..4 {
            for a in 0..4 {
                for c in 0..4 {
                    assert_eq!(count_b(x, a, 0, c).unwrap(), count_p(c, c, x + a).unwrap());
                }
            }
        }
    }

    #[test]
    fn hs_exponent_and_parity() {
        let s = hs_split(HsParams::new(2, 3, 2, 1, 1, 1)).unwrap();
        assert_eq!(s.case, ('a', true));
        assert_eq!(s.left, (1, HParams::new(1, 1, 2, 0, 0, 1)));
        assert_eq!(s.right, (4, HParams::new(1, 0, 2, 1, 1, 1)));
        assert_eq!(s.exponent, 4);
        let printed = hs_split_printed(HsParams::new(2, 3, 2, 1, 1, 1)).unwrap();
        assert_eq!(printed.right, (4, HParams::new(2, 0, 2, 1, 1, 1)));
        assert!(hs_split(HsParams::new(1, 1, 0, 0, 0, 0)).is_err());
    }

    #[test]
    fn unknown_family() {
        assert!(h_factors(9, HParams::new(0, 0, 0, 0, 0, 0)).is_err());
    }
}
