//! The fuzzy linear system and its crisp `2n × 2n` embedding.

use crate::fuzzy::{is_valid_fuzzy, FuzzyNumber, VALIDITY_TOL};
use crate::linalg::Matrix;
use crate::Error;

/// `A x = b` with crisp square `A` and fuzzy right-hand side `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzySystem {
    a: Matrix,
    rhs: Vec<FuzzyNumber>,
}

impl FuzzySystem {
    /// Fails if the lengths disagree or any right-hand side entry is not a
    /// valid fuzzy number on its own grid.
    pub fn new(a: Matrix, rhs: Vec<FuzzyNumber>) -> Result<Self, Error> {
        if rhs.len() != a.n() {
            return Err(Error::Dimension {
                expected: a.n(),
                actual: rhs.len(),
            });
        }
        for (i, b) in rhs.iter().enumerate() {
            let validity = is_valid_fuzzy(b, &b.natural_grid(), VALIDITY_TOL);
            if let Some(v) = validity.violations.first() {
                return Err(Error::domain(format!(
                    "right-hand side b{} is not a fuzzy number: {v}",
                    i + 1
                )));
            }
        }
        Ok(Self { a, rhs })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn rhs(&self) -> &[FuzzyNumber] {
        &self.rhs
    }

    /// True when every right-hand side entry is Crisp or Triangular.
    pub fn is_affine(&self) -> bool {
        self.rhs.iter().all(FuzzyNumber::is_affine)
    }
}

/// `A = B - C` with `B`, `C` entrywise nonnegative and disjointly supported.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitMatrices {
    pub b: Matrix,
    pub c: Matrix,
}

impl SplitMatrices {
    pub fn difference(&self) -> Matrix {
        self.b.zip_with(&self.c, |x, y| x - y)
    }

    pub fn sum(&self) -> Matrix {
        self.b.zip_with(&self.c, |x, y| x + y)
    }
}

/// The embedded matrix `S = [[B, C], [C, B]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedMatrix {
    pub s: Matrix,
}

/// Zero entries go to `B`.
pub fn split(a: &Matrix) -> SplitMatrices {
    SplitMatrices {
        b: a.zip_with(a, |x, _| if x >= 0.0 { x } else { 0.0 }),
        c: a.zip_with(a, |x, _| if x < 0.0 { -x } else { 0.0 }),
    }
}

pub fn assemble_s(split: &SplitMatrices) -> EmbeddedMatrix {
    let n = split.b.n();
    let s = Matrix::from_fn(2 * n, |i, j| {
        let same_block = (i < n) == (j < n);
        let (bi, bj) = (i % n, j % n);
        if same_block {
            split.b[(bi, bj)]
        } else {
            split.c[(bi, bj)]
        }
    });
    EmbeddedMatrix { s }
}

fn check_r(r: f64) -> Result<(), Error> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::domain(format!("r = {r} is outside [0, 1]")))
    }
}

/// `(lower_1(r), ..., lower_n(r), -upper_1(r), ..., -upper_n(r))`.
pub fn embed_rhs(rhs: &[FuzzyNumber], r: f64) -> Result<Vec<f64>, Error> {
    check_r(r)?;
    let values: Vec<(f64, f64)> = rhs.iter().map(|b| b.eval_unchecked(r)).collect();
    Ok(values
        .iter()
        .map(|&(lo, _)| lo)
        .chain(values.iter().map(|&(_, up)| -up))
        .collect())
}

/// `lower_i(r) - upper_i(r)` for each entry; nonpositive for fuzzy numbers.
pub fn spread_vector(rhs: &[FuzzyNumber], r: f64) -> Result<Vec<f64>, Error> {
    check_r(r)?;
    Ok(rhs
        .iter()
        .map(|b| {
            let (lo, up) = b.eval_unchecked(r);
            lo - up
        })
        .collect())
}

/// `lower_i(r) + upper_i(r)` for each entry.
pub fn sum_vector(rhs: &[FuzzyNumber], r: f64) -> Result<Vec<f64>, Error> {
    check_r(r)?;
    Ok(rhs
        .iter()
        .map(|b| {
            let (lo, up) = b.eval_unchecked(r);
            lo + up
        })
        .collect())
}
