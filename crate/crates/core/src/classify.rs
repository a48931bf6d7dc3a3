//! Strong/weak classification of the crisp solution.
//!
//! With `A = B - C` and `B + C` nonsingular, the candidate satisfies
//! `lower(x) - upper(x) = (B + C)^{-1} (lower(b) - upper(b))`, so the
//! solution is strong exactly when that vector is nonpositive at every `r`.
//! When `(B + C)^{-1}` is entrywise nonnegative the condition holds for
//! every right-hand side; for a nonnegative nonsingular matrix this
//! happens only when it is monomial (one nonzero per row and column).

use serde::Serialize;

use crate::fuzzy::{is_valid_fuzzy, FuzzyNumber, RGrid, Violation, ViolationKind, VALIDITY_TOL};
use crate::linalg::{Lu, Matrix};
use crate::solver::{
    check_nonsingularity, solve_block, working_grid, LinSolveConfig, Nonsingularity,
    SolutionCandidate,
};
use crate::system::{split, spread_vector, FuzzySystem};
use crate::{Error, MatrixRole};

/// Slack on the nonnegativity of `(B + C)^{-1}` entries.
pub const INVERSE_NONNEG_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Strong,
    Weak,
    Singular,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Strong => "strong",
            Verdict::Weak => "weak",
            Verdict::Singular => "singular",
        }
    }
}

/// `(B + C)^{-1} (lower(b) - upper(b))` at each checked `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongCondition {
    pub holds: bool,
    pub vectors: Vec<(f64, Vec<f64>)>,
}

impl StrongCondition {
    pub fn max_component(&self) -> f64 {
        self.fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_component(&self) -> f64 {
        self.fold(f64::INFINITY, f64::min)
    }

    fn fold(&self, init: f64, f: fn(f64, f64) -> f64) -> f64 {
        self.vectors
            .iter()
            .flat_map(|(_, v)| v.iter().copied())
            .fold(init, f)
    }
}

/// Evaluates the strong-solution condition. For an all-affine right-hand
/// side the spread is affine in `r` and zero at `r = 1`, so `r = 0` and
/// `r = 1` decide it; otherwise every working-grid point is checked.
pub fn strong_condition(
    sys: &FuzzySystem,
    grid: &RGrid,
    cfg: &LinSolveConfig,
) -> Result<StrongCondition, Error> {
    let lu = cfg.factor(&split(sys.matrix()).sum(), MatrixRole::BPlusC)?;
    let (work, _) = working_grid(sys, grid);
    let mut vectors = Vec::with_capacity(work.len());
    for &r in work.points() {
        vectors.push((r, lu.solve(&spread_vector(sys.rhs(), r)?)));
    }
    // A component exactly at zero satisfies the non-strict inequality.
    let holds = vectors
        .iter()
        .all(|(_, v)| v.iter().all(|&x| x <= VALIDITY_TOL));
    Ok(StrongCondition { holds, vectors })
}

/// Component `index` (0-based) has `lower > upper`; `r` is where the gap
/// is largest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentViolation {
    pub index: usize,
    pub r: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonomialCheck {
    /// `B + C` is nonsingular and its inverse is entrywise `>= -1e-10`.
    pub flag: bool,
    /// Smallest entry of `(B + C)^{-1}`, absent when singular.
    pub inverse_min_entry: Option<f64>,
    /// `B + C` has exactly one nonzero entry in every row and column.
    pub structural: bool,
}

impl MonomialCheck {
    pub fn agrees(&self) -> bool {
        self.flag == self.structural
    }
}

/// Tests whether every right-hand side yields a strong solution, both
/// through the sign of `(B + C)^{-1}` and through the sparsity pattern.
pub fn is_monomial_case(a: &Matrix, cfg: &LinSolveConfig) -> MonomialCheck {
    let sum = split(a).sum();
    let n = sum.n();
    let row_ok = (0..n).all(|i| (0..n).filter(|&j| sum[(i, j)] != 0.0).count() == 1);
    let col_ok = (0..n).all(|j| (0..n).filter(|&i| sum[(i, j)] != 0.0).count() == 1);
    let structural = row_ok && col_ok;

    match Lu::factor(&sum, cfg.singularity_tolerance) {
        Ok(lu) => {
            let min = lu.inverse().entries().fold(f64::INFINITY, f64::min);
            MonomialCheck {
                flag: min >= -INVERSE_NONNEG_TOL,
                inverse_min_entry: Some(min),
                structural,
            }
        }
        Err(_) => MonomialCheck {
            flag: false,
            inverse_min_entry: None,
            structural,
        },
    }
}

/// Diagnostics available when the system is nonsingular.
#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    pub candidate: SolutionCandidate,
    pub condition: StrongCondition,
    pub violating_variables: Vec<ComponentViolation>,
    /// Monotonicity failures of each candidate component, by 0-based index.
    pub profile_violations: Vec<(usize, Vec<Violation>)>,
    pub monomial: MonomialCheck,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub nonsingularity: Nonsingularity,
    /// `None` exactly when the verdict is [`Verdict::Singular`].
    pub analysis: Option<Analysis>,
}

impl ClassificationReport {
    pub fn monomial_case(&self) -> bool {
        self.analysis.as_ref().is_some_and(|a| a.monomial.flag)
    }

    /// Strong, and every component also has monotone branches.
    pub fn is_fuzzy_solution(&self) -> bool {
        self.verdict == Verdict::Strong
            && self
                .analysis
                .as_ref()
                .is_some_and(|a| a.profile_violations.is_empty())
    }

    /// Which matrix made the system singular, if any.
    pub fn singular_role(&self) -> Option<MatrixRole> {
        let ns = &self.nonsingularity;
        if !ns.a_ok {
            Some(MatrixRole::A)
        } else if !ns.b_plus_c_ok {
            Some(MatrixRole::BPlusC)
        } else {
            None
        }
    }
}

fn singular(nonsingularity: Nonsingularity) -> ClassificationReport {
    ClassificationReport {
        verdict: Verdict::Singular,
        nonsingularity,
        analysis: None,
    }
}

/// Solves through the block route and classifies the result.
///
/// The verdict is Strong iff `lower_i(r) <= upper_i(r)` (with `1e-9`
/// slack) for all components and all `r`. Monotonicity of the candidate
/// branches is reported in [`Analysis::profile_violations`] and does not
/// affect the verdict; see [`ClassificationReport::is_fuzzy_solution`].
pub fn classify(sys: &FuzzySystem, grid: &RGrid, cfg: &LinSolveConfig) -> ClassificationReport {
    let nonsingularity = check_nonsingularity(sys.matrix(), cfg);
    if !nonsingularity.blocks_ok() {
        return singular(nonsingularity);
    }
    let (candidate, condition) = match (
        solve_block(sys, grid, cfg),
        strong_condition(sys, grid, cfg),
    ) {
        (Ok(c), Ok(s)) => (c, s),
        _ => return singular(nonsingularity),
    };

    let check_grid = candidate.working_grid().clone();
    let mut violating_variables = Vec::new();
    let mut profile_violations = Vec::new();
    for (i, x) in candidate.components().iter().enumerate() {
        let worst = check_grid
            .points()
            .iter()
            .map(|&r| (r, x.eval_unchecked(r)))
            .max_by(|a, b| (a.1 .0 - a.1 .1).total_cmp(&(b.1 .0 - b.1 .1)));
        if let Some((r, (lower, upper))) = worst {
            if lower > upper + VALIDITY_TOL {
                violating_variables.push(ComponentViolation {
                    index: i,
                    r,
                    lower,
                    upper,
                });
            }
        }
        let monotone: Vec<Violation> = is_valid_fuzzy(x, &check_grid, VALIDITY_TOL)
            .violations
            .into_iter()
            .filter(|v| v.kind != ViolationKind::LowerAboveUpper)
            .collect();
        if !monotone.is_empty() {
            profile_violations.push((i, monotone));
        }
    }

    let verdict = if condition.holds && violating_variables.is_empty() {
        Verdict::Strong
    } else {
        Verdict::Weak
    };
    ClassificationReport {
        verdict,
        nonsingularity,
        analysis: Some(Analysis {
            candidate,
            condition,
            violating_variables,
            profile_violations,
            monomial: is_monomial_case(sys.matrix(), cfg),
        }),
    }
}

/// The matrix of the two-variable reference system
/// `x1 - x2 = b1, x1 + 2 x2 = b2`.
pub fn reference_matrix() -> Matrix {
    Matrix::from_rows(&[vec![1.0, -1.0], vec![1.0, 2.0]]).expect("fixed 2x2 matrix")
}

/// For the reference system, the two spread inequalities equivalent to a
/// strong solution at level `r`, with `w_i = upper_i(r) - lower_i(r)`:
/// `w2 <= 2 w1` (x1 well ordered) and `w1 <= w2` (x2 well ordered).
pub fn reference_spread_inequalities(sys: &FuzzySystem, r: f64) -> Result<(bool, bool), Error> {
    if *sys.matrix() != reference_matrix() {
        return Err(Error::domain(
            "spread inequalities are only defined for the matrix [[1, -1], [1, 2]]",
        ));
    }
    let w1 = sys.rhs()[0].spread(r)?;
    let w2 = sys.rhs()[1].spread(r)?;
    Ok((w2 <= 2.0 * w1 + VALIDITY_TOL, w1 <= w2 + VALIDITY_TOL))
}

/// A right-hand side that makes the system weak, when one exists: picks a
/// column `j` of `(B + C)^{-1}` with a negative entry and gives `b_j` the
/// spread of `(-1, 0, 1)`, every other entry crisp zero.
pub fn weak_witness_rhs(a: &Matrix, cfg: &LinSolveConfig) -> Option<Vec<FuzzyNumber>> {
    let lu = Lu::factor(&split(a).sum(), cfg.singularity_tolerance).ok()?;
    let inv = lu.inverse();
    let n = a.n();
    let j = (0..n).find(|&j| (0..n).any(|i| inv[(i, j)] < -INVERSE_NONNEG_TOL))?;
    Some(
        (0..n)
            .map(|k| {
                if k == j {
                    FuzzyNumber::Triangular {
                        a: -1.0,
                        c: 0.0,
                        b: 1.0,
                    }
                } else {
                    FuzzyNumber::crisp(0.0)
                }
            })
            .collect(),
    )
}
