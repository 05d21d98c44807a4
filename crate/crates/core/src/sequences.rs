//! Diagonal extraction, arithmetic-progression detection, and the
//! representable values of `a·x + b·y` over non-negative `x, y`.

use std::collections::BTreeSet;

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::triangle::Triangle;

/// Diagonal families, named by the coordinate that stays fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalFamily {
    /// Cells `(n, c)` for a fixed column `c`.
    ConstantCol,
    /// Cells `(d + i, i)` for a fixed `row - col = d`.
    ConstantAnti,
}

/// Stored cells of one diagonal, nearest the apex first.
pub fn diagonal_cells(num_rows: usize, family: DiagonalFamily, index: usize) -> Result<Vec<Cell>> {
    if index >= num_rows {
        return Err(Error::RowOutOfRange {
            row: index,
            rows: num_rows,
        });
    }
    Ok(match family {
        DiagonalFamily::ConstantCol => (index..num_rows)
            .map(|row| Cell { row, col: index })
            .collect(),
        DiagonalFamily::ConstantAnti => (0..num_rows - index)
            .map(|i| Cell {
                row: index + i,
                col: i,
            })
            .collect(),
    })
}

pub fn diagonal<T: Scalar>(
    t: &Triangle<T>,
    family: DiagonalFamily,
    index: usize,
) -> Result<Vec<T>> {
    diagonal_cells(t.num_rows(), family, index)?
        .into_iter()
        .map(|c| t.entry(c).cloned())
        .collect()
}

/// `term_i = start + i · difference`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApProfile<T> {
    pub start: T,
    pub difference: T,
}

impl<T: Scalar> ApProfile<T> {
    pub fn term(&self, i: usize) -> T {
        self.start.clone() + T::from_index(i) * self.difference.clone()
    }
}

/// The progression through `seq`, or `None` if the differences vary.
pub fn ap_profile<T: Scalar>(seq: &[T]) -> Result<Option<ApProfile<T>>> {
    if seq.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "an arithmetic progression needs at least 2 terms, got {}",
            seq.len()
        )));
    }
    let difference = seq[1].clone() - seq[0].clone();
    let constant = seq
        .windows(2)
        .all(|w| w[1].clone() - w[0].clone() == difference);
    Ok(constant.then(|| ApProfile {
        start: seq[0].clone(),
        difference,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representable {
    pub values: BTreeSet<u64>,
    /// Values in `0..=limit` that cannot be written as `a·x + b·y`.
    pub complement: Vec<u64>,
}

/// Every `v <= limit` with `v = a·x + b·y` for some non-negative `x, y`.
pub fn representable_values(a: u64, b: u64, limit: u64) -> Representable {
    let len = usize::try_from(limit).expect("limit fits in memory") + 1;
    let mut reachable = vec![false; len];
    reachable[0] = true;
    for v in 1..len {
        let via = |coef: u64| {
            let coef = coef as usize;
            coef != 0 && v >= coef && reachable[v - coef]
        };
        reachable[v] = via(a) || via(b);
    }
    let mut out = Representable {
        values: BTreeSet::new(),
        complement: Vec::new(),
    };
    for (v, r) in reachable.into_iter().enumerate() {
        if r {
            out.values.insert(v as u64);
        } else {
            out.complement.push(v as u64);
        }
    }
    out
}
