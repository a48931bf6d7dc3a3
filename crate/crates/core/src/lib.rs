#![forbid(unsafe_code)]

//! Fuzzy linear systems `A x = b` with a crisp `n × n` matrix `A` and a
//! right-hand side of fuzzy numbers in parametric form.
//!
//! The system is embedded into the `2n × 2n` crisp system `S x = b` with
//! `S = [[B, C], [C, B]]`, where `B` keeps the nonnegative entries of `A`
//! and `C` the magnitudes of its negative entries. Solutions are computed
//! either on the full embedded system or through the two `n × n` systems
//! with matrices `B - C` and `B + C`, and are classified as strong (every
//! component satisfies `lower <= upper`) or weak.
//!
//! ```
//! use fls_core::{classify, make_triangular, FuzzySystem, LinSolveConfig, Matrix, RGrid, Verdict};
//!
//! let a = Matrix::from_rows(&[vec![1.0, -1.0], vec![1.0, 2.0]]).unwrap();
//! let rhs = vec![
//!     make_triangular(0.0, 1.0, 2.0).unwrap(),
//!     make_triangular(1.0, 2.0, 3.0).unwrap(),
//! ];
//! let sys = FuzzySystem::new(a, rhs).unwrap();
//! let report = classify(&sys, &RGrid::default(), &LinSolveConfig::default());
//! assert_eq!(report.verdict, Verdict::Strong);
//! ```

pub mod classify;
pub mod document;
pub mod fuzzy;
pub mod linalg;
pub mod solver;
pub mod system;
pub mod verify;

use std::fmt;

pub use classify::{
    classify, is_monomial_case, reference_matrix, reference_spread_inequalities, strong_condition,
    weak_witness_rhs, Analysis, ClassificationReport, ComponentViolation, MonomialCheck,
    StrongCondition, Verdict,
};
pub use document::{parse_system, DocumentError, RhsEntry, SystemDocument};
pub use fuzzy::{
    add, equals, is_valid_fuzzy, make_triangular, scale, FuzzyNumber, RGrid, Sampled, Validity,
    Violation, ViolationKind, DEFAULT_GRID_POINTS, VALIDITY_TOL,
};
pub use linalg::{Lu, Matrix, SingularMatrix};
pub use solver::{
    check_nonsingularity, solve_block, solve_crisp, solve_full, LinSolveConfig, Nonsingularity,
    SolutionCandidate,
};
pub use system::{
    assemble_s, embed_rhs, split, spread_vector, sum_vector, EmbeddedMatrix, FuzzySystem,
    SplitMatrices,
};
pub use verify::{residual, ResidualReport, RESIDUAL_TOL};

/// Which matrix of the embedding a singularity was detected in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixRole {
    /// The coefficient matrix `A = B - C`.
    A,
    /// `B + C`.
    BPlusC,
    /// The embedded `2n × 2n` matrix.
    S,
    /// A matrix handed directly to the crisp solver.
    Other,
}

impl fmt::Display for MatrixRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixRole::A => "A = B-C",
            MatrixRole::BPlusC => "B+C",
            MatrixRole::S => "S",
            MatrixRole::Other => "matrix",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("{role} is singular (no usable pivot in column {pivot_col})")]
    Singular { role: MatrixRole, pivot_col: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn singular(role: MatrixRole, e: SingularMatrix) -> Self {
        Error::Singular {
            role,
            pivot_col: e.pivot_col,
        }
    }
}
