//! Residual check of a candidate solution against the fuzzy system.
//!
//! Each row `sum_j a_ij x_j` is rebuilt with fuzzy addition and scalar
//! multiplication only (negative coefficients swap branches) and compared
//! with `b_i` branch by branch. Nothing here touches the embedded matrix,
//! so the check is independent of the route that produced the candidate.
//! The arithmetic never requires `lower <= upper`, so weak candidates are
//! checked the same way.

use serde::Serialize;

use crate::fuzzy::{add, scale, FuzzyNumber, RGrid};
use crate::solver::SolutionCandidate;
use crate::system::FuzzySystem;
use crate::Error;

/// Default absolute residual tolerance, before scaling by the size of `b`.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    /// Per equation: `(max |lhs_lower - b_lower|, max |lhs_upper - b_upper|)`.
    pub per_equation: Vec<(f64, f64)>,
    pub max_residual: f64,
    /// `tol * max(1, max |b|)` over the checked grid.
    pub threshold: f64,
    pub pass: bool,
}

pub fn residual(
    sys: &FuzzySystem,
    candidate: &SolutionCandidate,
    grid: &RGrid,
    tol: f64,
) -> Result<ResidualReport, Error> {
    if candidate.n() != sys.n() {
        return Err(Error::domain(format!(
            "candidate has {} components but the system has {} unknowns",
            candidate.n(),
            sys.n()
        )));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::domain(format!(
            "residual tolerance must be nonnegative, got {tol}"
        )));
    }
    let check = sys
        .rhs()
        .iter()
        .map(FuzzyNumber::natural_grid)
        .fold(grid.union(candidate.working_grid()), |g, b| g.union(&b));

    let a = sys.matrix();
    let mut per_equation = Vec::with_capacity(sys.n());
    let mut b_max: f64 = 0.0;
    for (i, b) in sys.rhs().iter().enumerate() {
        let lhs = candidate
            .components()
            .iter()
            .enumerate()
            .fold(FuzzyNumber::crisp(0.0), |acc, (j, x)| {
                add(&acc, &scale(a[(i, j)], x))
            });
        let (mut lo_err, mut up_err) = (0.0f64, 0.0f64);
        for &r in check.points() {
            let (ll, lu) = lhs.eval_unchecked(r);
            let (bl, bu) = b.eval_unchecked(r);
            lo_err = lo_err.max((ll - bl).abs());
            up_err = up_err.max((lu - bu).abs());
            b_max = b_max.max(bl.abs()).max(bu.abs());
        }
        per_equation.push((lo_err, up_err));
    }
    let max_residual = per_equation
        .iter()
        .fold(0.0f64, |m, &(l, u)| m.max(l).max(u));
    let threshold = tol * b_max.max(1.0);
    Ok(ResidualReport {
        per_equation,
        max_residual,
        threshold,
        pass: max_residual <= threshold,
    })
}
