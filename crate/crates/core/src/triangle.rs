//! Triangle storage and the Pascal/Rascal generators.
//!
//! Four independent Rascal constructions live here: the multiplicative
//! diamond formula, the additive diamond formula, arithmetic progressions
//! along the constant-column diagonals, and the closed form
//! `k(n-k) + 1` used as the oracle for the other three.

use crate::cell::{Cell, DiamondNeighborhood};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Immutable dense triangular array; row `n` holds `n + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle<T> {
    name: String,
    rows: Vec<Vec<T>>,
}

/// One cell where two triangles disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch<T> {
    pub cell: Cell,
    pub left: T,
    pub right: T,
}

impl<T: Scalar> Triangle<T> {
    /// Validates shape: at least one row, and row `n` has exactly `n + 1`
    /// entries.
    pub fn from_rows(name: impl Into<String>, rows: Vec<Vec<T>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput("triangle has no rows"));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::Parse(format!(
                    "row {n} has {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            rows,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row < self.rows.len() && cell.col <= cell.row
    }

    pub fn get(&self, cell: Cell) -> Option<&T> {
        self.rows.get(cell.row).and_then(|r| r.get(cell.col))
    }

    pub fn entry(&self, cell: Cell) -> Result<&T> {
        self.get(cell).ok_or_else(|| Error::Position {
            cell,
            detail: format!("triangle stores rows 0..{}", self.rows.len()),
        })
    }

    /// Convenience for `entry(Cell { row, col })` that also rejects `col > row`.
    pub fn at(&self, row: usize, col: usize) -> Result<&T> {
        let cell = Cell { row, col };
        if col > row {
            return Err(Error::Position {
                cell,
                detail: "column exceeds row".into(),
            });
        }
        self.entry(cell)
    }

    pub fn row(&self, n: usize) -> Result<&[T]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or(Error::RowOutOfRange {
                row: n,
                rows: self.rows.len(),
            })
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.rows.len()).flat_map(|row| (0..=row).map(move |col| Cell { row, col }))
    }

    /// Interior cells (neither edge) in row-major order.
    pub fn interior_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells().filter(|c| !c.is_edge())
    }

    /// Cells where `self` and `other` differ, over their common rows, in
    /// row-major order.
    pub fn differences(&self, other: &Triangle<T>) -> Vec<Mismatch<T>> {
        self.rows
            .iter()
            .zip(&other.rows)
            .enumerate()
            .flat_map(|(row, (a, b))| {
                a.iter()
                    .zip(b)
                    .enumerate()
                    .filter(|(_, (x, y))| x != y)
                    .map(move |(col, (x, y))| Mismatch {
                        cell: Cell { row, col },
                        left: x.clone(),
                        right: y.clone(),
                    })
            })
            .collect()
    }

    pub fn renamed(self, name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            rows: self.rows,
        }
    }
}

fn require_rows(num_rows: usize) -> Result<()> {
    if num_rows == 0 {
        return Err(Error::EmptyInput("num_rows must be at least 1"));
    }
    Ok(())
}

/// Builds rows with 1s on both edges and `interior` filling every other cell
/// in row-major order from the rows above.
fn build_edged<T, F>(name: &str, num_rows: usize, mut interior: F) -> Result<Triangle<T>>
where
    T: Scalar,
    F: FnMut(&[Vec<T>], DiamondNeighborhood) -> Result<T>,
{
    require_rows(num_rows)?;
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(num_rows);
    for n in 0..num_rows {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let cell = Cell { row: n, col: k };
            let value = match DiamondNeighborhood::of(cell) {
                Some(d) => interior(&rows, d)?,
                None => T::one(),
            };
            row.push(value);
        }
        rows.push(row);
    }
    Triangle::from_rows(name, rows)
}

fn at<T>(rows: &[Vec<T>], c: Cell) -> &T {
    &rows[c.row][c.col]
}

/// Pascal's triangle: each interior entry is `west + east`.
pub fn build_pascal<T: Scalar>(num_rows: usize) -> Result<Triangle<T>> {
    build_edged("pascal", num_rows, |rows: &[Vec<T>], d| {
        at(rows, d.west)
            .checked_add(at(rows, d.east))
            .ok_or(Error::Overflow(d.south))
    })
}

/// Rascal triangle from `south = (east * west + 1) / north`.
///
/// Every division is checked for a zero remainder; a nonzero remainder
/// aborts with [`Error::Integrality`] naming the cell.
pub fn build_rascal_diamond<T: Scalar>(num_rows: usize) -> Result<Triangle<T>> {
    build_edged("rascal-diamond", num_rows, |rows: &[Vec<T>], d| {
        let numerator = at(rows, d.east)
            .checked_mul(at(rows, d.west))
            .and_then(|p| p.checked_add(&T::one()))
            .ok_or(Error::Overflow(d.south))?;
        let north = at(rows, d.north);
        if north.is_zero() {
            return Err(Error::Integrality {
                cell: d.south,
                value: format!("{numerator}/0"),
            });
        }
        let (q, r) = numerator.div_rem(north);
        if !r.is_zero() {
            return Err(Error::Integrality {
                cell: d.south,
                value: format!("{numerator}/{north}"),
            });
        }
        Ok(q)
    })
}

/// Rascal triangle from `south = east + west - north + 1`.
pub fn build_rascal_additive<T: Scalar>(num_rows: usize) -> Result<Triangle<T>> {
    build_edged("rascal-additive", num_rows, |rows: &[Vec<T>], d| {
        at(rows, d.east)
            .checked_add(at(rows, d.west))
            .and_then(|s| s.checked_sub(at(rows, d.north)))
            .and_then(|s| s.checked_add(&T::one()))
            .ok_or(Error::Overflow(d.south))
    })
}

/// Rascal triangle from arithmetic progressions.
///
/// The constant-column diagonal `c` starts with 1 at `(c, c)` on the right
/// edge and grows by `c` per row going down. Cells in the left half of each
/// row are written from their progression; the right half is filled by
/// mirroring.
pub fn build_rascal_diagonal<T: Scalar>(num_rows: usize) -> Result<Triangle<T>> {
    require_rows(num_rows)?;
    let mut rows: Vec<Vec<T>> = (0..num_rows).map(|n| vec![T::zero(); n + 1]).collect();
    for c in 0..num_rows {
        let step = T::from_index(c);
        let mut value = T::one();
        for n in c..num_rows {
            if 2 * c <= n {
                rows[n][c] = value.clone();
                rows[n][n - c] = value.clone();
            }
            value = value
                .checked_add(&step)
                .ok_or(Error::Overflow(Cell { row: n, col: c }))?;
        }
    }
    Triangle::from_rows("rascal-diagonal", rows)
}

/// Closed form of the Rascal entry at row `n`, column `k`: `k(n-k) + 1`.
pub fn rascal_entry<T: Scalar>(n: usize, k: usize) -> Result<T> {
    if k > n {
        return Err(Error::Position {
            cell: Cell { row: n, col: k },
            detail: "column exceeds row".into(),
        });
    }
    let k_t = T::from_index(k);
    let rest = T::from_index(n - k);
    k_t.checked_mul(&rest)
        .and_then(|p| p.checked_add(&T::one()))
        .ok_or(Error::Overflow(Cell { row: n, col: k }))
}

/// Rascal triangle straight from the closed form.
pub fn build_rascal_closed_form<T: Scalar>(num_rows: usize) -> Result<Triangle<T>> {
    require_rows(num_rows)?;
    let rows = (0..num_rows)
        .map(|n| {
            (0..=n)
                .map(|k| rascal_entry(n, k))
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Triangle::from_rows("rascal", rows)
}

/// Which generator to run. Names match the command-line spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Pascal,
    RascalDiamond,
    RascalAdditive,
    RascalDiagonal,
    RascalClosedForm,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::Pascal,
        Generator::RascalDiamond,
        Generator::RascalAdditive,
        Generator::RascalDiagonal,
        Generator::RascalClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Pascal => "pascal",
            Generator::RascalDiamond => "rascal-diamond",
            Generator::RascalAdditive => "rascal-additive",
            Generator::RascalDiagonal => "rascal-diagonal",
            Generator::RascalClosedForm => "rascal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == name)
    }

    pub fn build<T: Scalar>(self, num_rows: usize) -> Result<Triangle<T>> {
        match self {
            Generator::Pascal => build_pascal(num_rows),
            Generator::RascalDiamond => build_rascal_diamond(num_rows),
            Generator::RascalAdditive => build_rascal_additive(num_rows),
            Generator::RascalDiagonal => build_rascal_diagonal(num_rows),
            Generator::RascalClosedForm => build_rascal_closed_form(num_rows),
        }
    }
}
