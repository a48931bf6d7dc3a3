//! Fuzzy numbers in parametric form.
//!
//! A fuzzy number is a pair of functions `(lower(r), upper(r))` on the
//! membership level `r ∈ [0, 1]`. A *valid* fuzzy number has a
//! non-decreasing lower branch, a non-increasing upper branch and
//! `lower(r) <= upper(r)` everywhere.
//!
//! Three representations are supported:
//!
//! - [`FuzzyNumber::Crisp`]: a real number, `lower = upper = a`.
//! - [`FuzzyNumber::Triangular`]: `(a, c, b)` with `lower(r) = a + (c - a) r`
//!   and `upper(r) = b + (c - b) r`. Degenerate sides (`a == c` or `c == b`)
//!   are allowed.
//! - [`FuzzyNumber::Sampled`]: piecewise-linear branches on an [`RGrid`].
//!
//! Sampled profiles are structurally checked on construction (grid shape,
//! lengths, finiteness) but not for monotonicity: the solver produces
//! candidate profiles that may fail the fuzzy-number axioms, and those are
//! reported through [`is_valid_fuzzy`]. Jump discontinuities cannot be
//! represented.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Slack used when checking monotonicity and ordering of branches.
pub const VALIDITY_TOL: f64 = 1e-9;

/// Number of points on the default parameter grid.
pub const DEFAULT_GRID_POINTS: usize = 101;

/// Ordered discretization of the membership parameter `r`.
///
/// Always starts at 0, ends at 1 and is strictly increasing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RGrid {
    points: Vec<f64>,
}

impl RGrid {
    pub fn new(points: Vec<f64>) -> Result<Self, Error> {
        if points.len() < 2 {
            return Err(Error::domain(format!(
                "grid needs at least 2 points, got {}",
                points.len()
            )));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::domain("grid points must be finite"));
        }
        if points[0] != 0.0 || points[points.len() - 1] != 1.0 {
            return Err(Error::domain("grid must start at 0 and end at 1"));
        }
        for (i, w) in points.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::domain(format!(
                    "grid must be strictly increasing (points {} and {}: {} then {})",
                    i,
                    i + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(Self { points })
    }

    /// `count` equally spaced points, `r_i = i / (count - 1)`.
    pub fn uniform(count: usize) -> Result<Self, Error> {
        if count < 2 {
            return Err(Error::domain(format!(
                "grid needs at least 2 points, got {count}"
            )));
        }
        let last = (count - 1) as f64;
        let points = (0..count).map(|i| i as f64 / last).collect();
        Ok(Self { points })
    }

    /// The two-point grid `{0, 1}`.
    pub fn endpoints() -> Self {
        Self {
            points: vec![0.0, 1.0],
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sorted union of both grids, exact duplicates removed.
    pub fn union(&self, other: &RGrid) -> RGrid {
        let mut points = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.points, &other.points);
        while i < a.len() || j < b.len() {
            let next = if j == b.len() || (i < a.len() && a[i] <= b[j]) {
                i += 1;
                a[i - 1]
            } else {
                j += 1;
                b[j - 1]
            };
            if points.last() != Some(&next) {
                points.push(next);
            }
        }
        RGrid { points }
    }
}

impl Default for RGrid {
    fn default() -> Self {
        Self::uniform(DEFAULT_GRID_POINTS).expect("default grid size is valid")
    }
}

/// Piecewise-linear lower/upper branches sampled on a grid.
///
/// Only the structure is guaranteed; see [`is_valid_fuzzy`] for the fuzzy
/// number axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct Sampled {
    grid: RGrid,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Sampled {
    pub fn new(grid: RGrid, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, Error> {
        if lower.len() != grid.len() || upper.len() != grid.len() {
            return Err(Error::domain(format!(
                "sampled profile has {} grid points but {} lower and {} upper values",
                grid.len(),
                lower.len(),
                upper.len()
            )));
        }
        if let Some(i) = lower.iter().chain(&upper).position(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "sampled profile value {} is not finite",
                i % grid.len()
            )));
        }
        Ok(Self { grid, lower, upper })
    }

    pub fn grid(&self) -> &RGrid {
        &self.grid
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    fn eval(&self, r: f64) -> (f64, f64) {
        let pts = self.grid.points();
        // First index with pts[k] >= r; r in [0, 1] so k is in range.
        let k = pts.partition_point(|&p| p < r);
        if pts[k] == r {
            return (self.lower[k], self.upper[k]);
        }
        let (r0, r1) = (pts[k - 1], pts[k]);
        let t = (r - r0) / (r1 - r0);
        let lerp = |v: &[f64]| v[k - 1] + (v[k] - v[k - 1]) * t;
        (lerp(&self.lower), lerp(&self.upper))
    }
}

/// A fuzzy number (or unchecked lower/upper pair) in parametric form.
#[derive(Clone, Debug, PartialEq)]
pub enum FuzzyNumber {
    /// Left endpoint `a`, peak `c`, right endpoint `b`; `a <= c <= b`.
    Triangular {
        a: f64,
        c: f64,
        b: f64,
    },
    Crisp(f64),
    Sampled(Sampled),
}

/// Builds a triangular number, checking `a <= c <= b`.
pub fn make_triangular(a: f64, c: f64, b: f64) -> Result<FuzzyNumber, Error> {
    if !(a.is_finite() && c.is_finite() && b.is_finite()) {
        return Err(Error::domain(format!(
            "triangular number ({a}, {c}, {b}) has a non-finite entry"
        )));
    }
    if a > c {
        return Err(Error::domain(format!(
            "triangular number violates a <= c (a = {a}, c = {c})"
        )));
    }
    if c > b {
        return Err(Error::domain(format!(
            "triangular number violates c <= b (c = {c}, b = {b})"
        )));
    }
    Ok(FuzzyNumber::Triangular { a, c, b })
}

fn check_r(r: f64) -> Result<(), Error> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::domain(format!("r = {r} is outside [0, 1]")))
    }
}

impl FuzzyNumber {
    pub fn crisp(a: f64) -> Self {
        FuzzyNumber::Crisp(a)
    }

    /// `(lower(r), upper(r))`. Fails for `r` outside `[0, 1]`.
    pub fn eval(&self, r: f64) -> Result<(f64, f64), Error> {
        check_r(r)?;
        Ok(self.eval_unchecked(r))
    }

    pub(crate) fn eval_unchecked(&self, r: f64) -> (f64, f64) {
        match *self {
            FuzzyNumber::Crisp(a) => (a, a),
            FuzzyNumber::Triangular { a, c, b } => (a + (c - a) * r, b + (c - b) * r),
            FuzzyNumber::Sampled(ref s) => s.eval(r),
        }
    }

    /// True for Crisp and Triangular: both branches are affine in `r`.
    pub fn is_affine(&self) -> bool {
        !matches!(self, FuzzyNumber::Sampled(_))
    }

    /// The grid on which the branches are determined: the sample grid for
    /// Sampled, `{0, 1}` otherwise.
    pub fn natural_grid(&self) -> RGrid {
        match self {
            FuzzyNumber::Sampled(s) => s.grid.clone(),
            _ => RGrid::endpoints(),
        }
    }

    /// Sampled rendering on `grid` (exact for affine representations at the
    /// grid points).
    pub fn to_sampled(&self, grid: &RGrid) -> Sampled {
        let (lower, upper) = grid
            .points()
            .iter()
            .map(|&r| self.eval_unchecked(r))
            .unzip();
        Sampled {
            grid: grid.clone(),
            lower,
            upper,
        }
    }

    /// `upper(r) - lower(r)`.
    pub fn spread(&self, r: f64) -> Result<f64, Error> {
        let (lo, up) = self.eval(r)?;
        Ok(up - lo)
    }
}

impl fmt::Display for FuzzyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuzzyNumber::Crisp(a) => write!(f, "{a}"),
            FuzzyNumber::Triangular { a, c, b } => write!(f, "({a}, {c}, {b})"),
            FuzzyNumber::Sampled(s) => write!(f, "sampled[{} points]", s.grid.len()),
        }
    }
}

/// Pointwise sum of the lower branches and of the upper branches.
pub fn add(u: &FuzzyNumber, v: &FuzzyNumber) -> FuzzyNumber {
    use FuzzyNumber::*;
    match (u, v) {
        (Crisp(x), Crisp(y)) => Crisp(x + y),
        (Crisp(x), Triangular { a, c, b }) | (Triangular { a, c, b }, Crisp(x)) => Triangular {
            a: a + x,
            c: c + x,
            b: b + x,
        },
        (
            Triangular { a, c, b },
            Triangular {
                a: a2,
                c: c2,
                b: b2,
            },
        ) => Triangular {
            a: a + a2,
            c: c + c2,
            b: b + b2,
        },
        _ => {
            let grid = u.natural_grid().union(&v.natural_grid());
            let (lower, upper) = grid
                .points()
                .iter()
                .map(|&r| {
                    let (ul, uu) = u.eval_unchecked(r);
                    let (vl, vu) = v.eval_unchecked(r);
                    (ul + vl, uu + vu)
                })
                .unzip();
            Sampled(self::Sampled { grid, lower, upper })
        }
    }
}

/// Multiplication by a real scalar. Negative factors swap the branches,
/// zero gives `Crisp(0)`.
pub fn scale(k: f64, u: &FuzzyNumber) -> FuzzyNumber {
    use FuzzyNumber::*;
    if k == 0.0 {
        return Crisp(0.0);
    }
    match u {
        Crisp(a) => Crisp(k * a),
        &Triangular { a, c, b } if k > 0.0 => Triangular {
            a: k * a,
            c: k * c,
            b: k * b,
        },
        &Triangular { a, c, b } => Triangular {
            a: k * b,
            c: k * c,
            b: k * a,
        },
        Sampled(s) => {
            let lower: Vec<f64> = s.lower.iter().map(|v| k * v).collect();
            let upper: Vec<f64> = s.upper.iter().map(|v| k * v).collect();
            let (lower, upper) = if k > 0.0 {
                (lower, upper)
            } else {
                (upper, lower)
            };
            Sampled(self::Sampled {
                grid: s.grid.clone(),
                lower,
                upper,
            })
        }
    }
}

/// Equality at every point of `grid`, up to `tol` on each branch.
pub fn equals(u: &FuzzyNumber, v: &FuzzyNumber, grid: &RGrid, tol: f64) -> bool {
    grid.points().iter().all(|&r| {
        let (ul, uu) = u.eval_unchecked(r);
        let (vl, vu) = v.eval_unchecked(r);
        (ul - vl).abs() <= tol && (uu - vu).abs() <= tol
    })
}

/// Which fuzzy-number axiom failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    LowerDecreasing,
    UpperIncreasing,
    LowerAboveUpper,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::LowerDecreasing => "lower branch decreasing",
            ViolationKind::UpperIncreasing => "upper branch increasing",
            ViolationKind::LowerAboveUpper => "lower above upper",
        })
    }
}

/// A single failed check. For the monotonicity kinds `r` is the right end
/// of the offending grid interval and `first`/`second` are the branch
/// values at its two ends; for [`ViolationKind::LowerAboveUpper`] they are
/// `lower(r)` and `upper(r)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub r: f64,
    pub first: f64,
    pub second: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::LowerAboveUpper => write!(
                f,
                "{} at r = {}: lower = {}, upper = {}",
                self.kind, self.r, self.first, self.second
            ),
            _ => write!(
                f,
                "{} before r = {}: {} -> {}",
                self.kind, self.r, self.first, self.second
            ),
        }
    }
}

/// Validity report for one fuzzy number.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Validity {
    pub violations: Vec<Violation>,
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the fuzzy-number axioms at every point of `grid` with slack `tol`.
pub fn is_valid_fuzzy(u: &FuzzyNumber, grid: &RGrid, tol: f64) -> Validity {
    let values: Vec<(f64, f64)> = grid.points().iter().map(|&r| u.eval_unchecked(r)).collect();
    let pts = grid.points();
    let mut violations = Vec::new();
    for (k, &(lo, up)) in values.iter().enumerate() {
        if k > 0 {
            let (plo, pup) = values[k - 1];
            if lo < plo - tol {
                violations.push(Violation {
                    kind: ViolationKind::LowerDecreasing,
                    r: pts[k],
                    first: plo,
                    second: lo,
                });
            }
            if up > pup + tol {
                violations.push(Violation {
                    kind: ViolationKind::UpperIncreasing,
                    r: pts[k],
                    first: pup,
                    second: up,
                });
            }
        }
        if lo > up + tol {
            violations.push(Violation {
                kind: ViolationKind::LowerAboveUpper,
                r: pts[k],
                first: lo,
                second: up,
            });
        }
    }
    Validity { violations }
}
