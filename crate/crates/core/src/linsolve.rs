//! Exact Gauss-Jordan elimination over rationals, fed one equation at a time.

use num_rational::Ratio;
use num_traits::Zero;

use crate::scalar::Scalar;

/// Outcome of adding one equation to an [`IncrementalSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insert {
    /// The equation raised the rank.
    Independent,
    /// The equation is a combination of earlier ones and agrees with them.
    Redundant,
    /// The equation reduces to `0 = c` with `c != 0`; no solution exists.
    Inconsistent,
}

/// A linear system kept in reduced row echelon form as equations arrive.
#[derive(Debug, Clone)]
pub struct IncrementalSystem<T: Scalar> {
    unknowns: usize,
    // (pivot column, row of `unknowns + 1` entries with 1 at the pivot)
    rows: Vec<(usize, Vec<Ratio<T>>)>,
    inconsistent: bool,
}

impl<T: Scalar> IncrementalSystem<T> {
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            rows: Vec::new(),
            inconsistent: false,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn is_determined(&self) -> bool {
        !self.inconsistent && self.rows.len() == self.unknowns
    }

    /// Adds `coeffs · x = rhs`.
    ///
    /// # Panics
    /// If `coeffs.len()` differs from the number of unknowns.
    pub fn push(&mut self, coeffs: Vec<Ratio<T>>, rhs: Ratio<T>) -> Insert {
        assert_eq!(coeffs.len(), self.unknowns, "equation width");
        let mut row = coeffs;
        row.push(rhs);

        for (pcol, prow) in &self.rows {
            let factor = row[*pcol].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(prow) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }

        let Some(pcol) = row[..self.unknowns].iter().position(|x| !x.is_zero()) else {
            return if row[self.unknowns].is_zero() {
                Insert::Redundant
            } else {
                self.inconsistent = true;
                Insert::Inconsistent
            };
        };

        let lead = row[pcol].clone();
        for x in row.iter_mut() {
            *x = x.clone() / lead.clone();
        }
        for (_, other) in self.rows.iter_mut() {
            let factor = other[pcol].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, p) in other.iter_mut().zip(&row) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        self.rows.push((pcol, row));
        Insert::Independent
    }

    /// The unique solution, once the system is consistent with full rank.
    pub fn solution(&self) -> Option<Vec<Ratio<T>>> {
        if !self.is_determined() {
            return None;
        }
        let mut x = vec![Ratio::zero(); self.unknowns];
        for (pcol, row) in &self.rows {
            x[*pcol] = row[self.unknowns].clone();
        }
        Some(x)
    }
}

/// Solves a system given all at once. Returns `None` unless the solution is
/// unique.
pub fn solve<T: Scalar>(matrix: &[Vec<Ratio<T>>], rhs: &[Ratio<T>]) -> Option<Vec<Ratio<T>>> {
    let unknowns = matrix.first()?.len();
    let mut sys = IncrementalSystem::new(unknowns);
    for (row, b) in matrix.iter().zip(rhs) {
        if sys.push(row.clone(), b.clone()) == Insert::Inconsistent {
            return None;
        }
    }
    sys.solution()
}
