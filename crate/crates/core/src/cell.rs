use std::fmt;

use serde::{Deserialize, Serialize};

/// A position in a triangular array. Row `n` holds columns `0..=n`; the apex
/// is `(0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    /// Returns `None` when `col > row`.
    pub fn new(row: usize, col: usize) -> Option<Self> {
        (col <= row).then_some(Self { row, col })
    }

    /// Shift by a signed offset, returning `None` if the result leaves the
    /// infinite triangle (negative index or `col > row`).
    pub fn offset(self, drow: i64, dcol: i64) -> Option<Self> {
        let row = self.row as i64 + drow;
        let col = self.col as i64 + dcol;
        if row < 0 || col < 0 || col > row {
            return None;
        }
        Some(Self {
            row: row as usize,
            col: col as usize,
        })
    }

    pub fn is_edge(self) -> bool {
        self.col == 0 || self.col == self.row
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The four cells of an interior lattice diamond, named by compass point.
///
/// ```text
///         north
///     west     east
///         south
/// ```
///
/// With `south = (n, k)`: `north = (n-2, k-1)`, `west = (n-1, k-1)`,
/// `east = (n-1, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiamondNeighborhood {
    pub south: Cell,
    pub north: Cell,
    pub west: Cell,
    pub east: Cell,
}

impl DiamondNeighborhood {
    /// Defined for `row >= 2` and `1 <= col <= row - 1`.
    pub fn of(south: Cell) -> Option<Self> {
        if south.row < 2 || south.col == 0 || south.col >= south.row {
            return None;
        }
        let (n, k) = (south.row, south.col);
        Some(Self {
            south,
            north: Cell {
                row: n - 2,
                col: k - 1,
            },
            west: Cell {
                row: n - 1,
                col: k - 1,
            },
            east: Cell { row: n - 1, col: k },
        })
    }
}
