//! Crisp solves of the embedded system.
//!
//! Two routes produce the same candidate when `S` is nonsingular:
//!
//! - [`solve_full`] solves `S y = (lower(b), -upper(b))` directly.
//! - [`solve_block`] solves `(B + C) d = lower(b) - upper(b)` and
//!   `(B - C) s = lower(b) + upper(b)`, then `lower(x) = (s + d) / 2` and
//!   `upper(x) = (s - d) / 2`. The first equation is the difference of the
//!   two block rows of `S y = b`, the second their sum.
//!
//! When the right-hand side is entirely Crisp/Triangular both branches of
//! `b` are affine in `r`, so the solution is affine as well and only
//! `r = 0` and `r = 1` are solved. Otherwise every point of the working
//! grid (the requested grid merged with the sample grids of `b`) is solved;
//! between those points the solution is linear, so the piecewise-linear
//! candidate is exact.

use crate::fuzzy::{FuzzyNumber, RGrid, Sampled};
use crate::linalg::{Lu, Matrix};
use crate::system::{assemble_s, embed_rhs, split, spread_vector, sum_vector, FuzzySystem};
use crate::{Error, MatrixRole};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinSolveConfig {
    /// Pivot threshold relative to the largest matrix entry.
    pub singularity_tolerance: f64,
}

impl Default for LinSolveConfig {
    fn default() -> Self {
        Self {
            singularity_tolerance: 1e-12,
        }
    }
}

impl LinSolveConfig {
    pub fn new(singularity_tolerance: f64) -> Result<Self, Error> {
        if singularity_tolerance.is_nan() || singularity_tolerance <= 0.0 {
            return Err(Error::domain(format!(
                "singularity tolerance must be positive, got {singularity_tolerance}"
            )));
        }
        Ok(Self {
            singularity_tolerance,
        })
    }

    pub(crate) fn factor(&self, m: &Matrix, role: MatrixRole) -> Result<Lu, Error> {
        Lu::factor(m, self.singularity_tolerance).map_err(|e| Error::singular(role, e))
    }
}

/// Solves `m y = v` by row-pivoted elimination.
pub fn solve_crisp(m: &Matrix, v: &[f64], cfg: &LinSolveConfig) -> Result<Vec<f64>, Error> {
    if v.len() != m.n() {
        return Err(Error::Dimension {
            expected: m.n(),
            actual: v.len(),
        });
    }
    Ok(cfg.factor(m, MatrixRole::Other)?.solve(v))
}

/// Outcome of three independent factorizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nonsingularity {
    pub a_ok: bool,
    pub b_plus_c_ok: bool,
    pub s_ok: bool,
}

impl Nonsingularity {
    /// The matrices the block route needs are both invertible.
    pub fn blocks_ok(&self) -> bool {
        self.a_ok && self.b_plus_c_ok
    }
}

pub fn check_nonsingularity(a: &Matrix, cfg: &LinSolveConfig) -> Nonsingularity {
    let sp = split(a);
    let tol = cfg.singularity_tolerance;
    Nonsingularity {
        a_ok: Lu::factor(a, tol).is_ok(),
        b_plus_c_ok: Lu::factor(&sp.sum(), tol).is_ok(),
        s_ok: Lu::factor(&assemble_s(&sp).s, tol).is_ok(),
    }
}

/// Per-variable lower/upper pairs from a crisp solve. Components are not
/// guaranteed to be fuzzy numbers: a weak solution has `lower > upper`
/// somewhere.
///
/// A component is [`FuzzyNumber::Triangular`] when the solution is affine
/// and its endpoints are ordered, otherwise [`FuzzyNumber::Sampled`] on the
/// working grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionCandidate {
    components: Vec<FuzzyNumber>,
    grid: RGrid,
    affine: bool,
}

impl SolutionCandidate {
    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[FuzzyNumber] {
        &self.components
    }

    /// Grid on which the candidate was solved.
    pub fn working_grid(&self) -> &RGrid {
        &self.grid
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    /// `(lower_i(r), upper_i(r))`.
    pub fn eval(&self, i: usize, r: f64) -> Result<(f64, f64), Error> {
        self.components
            .get(i)
            .ok_or(Error::Dimension {
                expected: self.n(),
                actual: i,
            })?
            .eval(r)
    }

    /// Wraps externally built components, e.g. a perturbed candidate.
    pub fn from_components(components: Vec<FuzzyNumber>, grid: RGrid) -> Self {
        let affine = components.iter().all(FuzzyNumber::is_affine);
        Self {
            components,
            grid,
            affine,
        }
    }

    fn from_samples(grid: RGrid, affine: bool, lower: Vec<Vec<f64>>, upper: Vec<Vec<f64>>) -> Self {
        let n = lower.first().map_or(0, Vec::len);
        let components = (0..n)
            .map(|i| {
                let lo: Vec<f64> = lower.iter().map(|row| row[i]).collect();
                let up: Vec<f64> = upper.iter().map(|row| row[i]).collect();
                if affine {
                    affine_component(lo[0], up[0], lo[1], up[1])
                } else {
                    FuzzyNumber::Sampled(
                        Sampled::new(grid.clone(), lo, up)
                            .expect("solution samples match the working grid"),
                    )
                }
            })
            .collect();
        Self {
            components,
            grid,
            affine,
        }
    }
}

fn affine_component(lo0: f64, up0: f64, lo1: f64, up1: f64) -> FuzzyNumber {
    // Round-off can leave a crisp component a few ulps out of order.
    let tol = 1e-12
        * lo0
            .abs()
            .max(up0.abs())
            .max(lo1.abs())
            .max(up1.abs())
            .max(1.0);
    if (lo1 - up1).abs() <= tol {
        let c = 0.5 * (lo1 + up1);
        if lo0 <= c + tol && c <= up0 + tol {
            return FuzzyNumber::Triangular {
                a: lo0.min(c),
                c,
                b: up0.max(c),
            };
        }
    }
    FuzzyNumber::Sampled(
        Sampled::new(RGrid::endpoints(), vec![lo0, lo1], vec![up0, up1])
            .expect("two samples on the endpoint grid"),
    )
}

pub(crate) fn working_grid(sys: &FuzzySystem, grid: &RGrid) -> (RGrid, bool) {
    if sys.is_affine() {
        return (RGrid::endpoints(), true);
    }
    let merged = sys
        .rhs()
        .iter()
        .filter(|b| !b.is_affine())
        .fold(grid.clone(), |g, b| g.union(&b.natural_grid()));
    (merged, false)
}

/// Solves the `2n × 2n` embedded system at every working-grid point.
pub fn solve_full(
    sys: &FuzzySystem,
    grid: &RGrid,
    cfg: &LinSolveConfig,
) -> Result<SolutionCandidate, Error> {
    let n = sys.n();
    let s = assemble_s(&split(sys.matrix())).s;
    let lu = cfg.factor(&s, MatrixRole::S)?;
    let (work, affine) = working_grid(sys, grid);
    let (mut lower, mut upper) = (Vec::new(), Vec::new());
    for &r in work.points() {
        let y = lu.solve(&embed_rhs(sys.rhs(), r)?);
        lower.push(y[..n].to_vec());
        upper.push(y[n..].iter().map(|v| -v).collect());
    }
    Ok(SolutionCandidate::from_samples(work, affine, lower, upper))
}

/// Solves through the difference system with `B + C` and the sum system
/// with `B - C`.
pub fn solve_block(
    sys: &FuzzySystem,
    grid: &RGrid,
    cfg: &LinSolveConfig,
) -> Result<SolutionCandidate, Error> {
    let sp = split(sys.matrix());
    let a_lu = cfg.factor(sys.matrix(), MatrixRole::A)?;
    let sum_lu = cfg.factor(&sp.sum(), MatrixRole::BPlusC)?;
    let (work, affine) = working_grid(sys, grid);
    let (mut lower, mut upper) = (Vec::new(), Vec::new());
    for &r in work.points() {
        let d = sum_lu.solve(&spread_vector(sys.rhs(), r)?);
        let s = a_lu.solve(&sum_vector(sys.rhs(), r)?);
        lower.push(s.iter().zip(&d).map(|(s, d)| 0.5 * (s + d)).collect());
        upper.push(s.iter().zip(&d).map(|(s, d)| 0.5 * (s - d)).collect());
    }
    Ok(SolutionCandidate::from_samples(work, affine, lower, upper))
}
