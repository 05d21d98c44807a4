//! Identities observed in the Rascal triangle, checked exactly.
//!
//! * T-Meg: `south = north + north_row[0] + north_row[1]`.
//! * Ashley: `south = west + east - nw - (k - 2)` with `nw = (n-3, k-1)`.
//! * Odd diamond rings: the `8m` cells on the boundary of a diamond with
//!   `2m + 1` cells per side sum to `8m` times the center.
//! * Even diamond rings: the `8m - 4` boundary cells of a diamond with `2m`
//!   cells per side, around a basic 4-cell diamond, sum to `2m - 1` times
//!   the inner diamond's sum.
//! * Hockey stick (Pascal): a diagonal prefix sums to the entry just below
//!   and to the right of its last element.
//!
//! Average statements are checked as integer multiples so nothing is
//! divided.

use std::fmt;

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::triangle::Triangle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub cell: Cell,
    pub expected: String,
    pub found: String,
    pub note: Option<String>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cell {}: expected {}, found {}",
            self.cell, self.expected, self.found
        )?;
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

/// Verdict of a pattern sweep. Counterexamples are in row-major order of
/// their anchor cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternReport {
    pub pattern: String,
    pub counterexamples: Vec<Counterexample>,
    pub cells_checked: usize,
}

impl PatternReport {
    fn new(pattern: &str) -> Self {
        Self {
            pattern: pattern.to_string(),
            counterexamples: Vec::new(),
            cells_checked: 0,
        }
    }

    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn record<T: Scalar>(&mut self, cell: Cell, expected: &T, found: &T, note: Option<String>) {
        self.cells_checked += 1;
        if expected != found {
            self.counterexamples.push(Counterexample {
                cell,
                expected: expected.to_string(),
                found: found.to_string(),
                note,
            });
        }
    }
}

fn value<T: Scalar>(t: &Triangle<T>, row: usize, col: usize) -> Result<T> {
    t.at(row, col).cloned()
}

/// `north + north_row[0] + north_row[1]` for `south = (n, k)`, `n >= 3`,
/// `1 <= k <= n - 1`.
pub fn tmeg_predict<T: Scalar>(t: &Triangle<T>, south: Cell) -> Result<T> {
    let (n, k) = (south.row, south.col);
    if n < 3 || k == 0 || k >= n {
        return Err(Error::PatternApplicability(format!(
            "T-Meg needs row >= 3 and 1 <= col <= row-1, got {south}"
        )));
    }
    Ok(value(t, n - 2, k - 1)? + value(t, n - 2, 0)? + value(t, n - 2, 1)?)
}

pub fn tmeg_verify<T: Scalar>(t: &Triangle<T>) -> Result<PatternReport> {
    if t.num_rows() < 4 {
        return Err(Error::PatternApplicability(
            "T-Meg verification needs at least 4 rows".into(),
        ));
    }
    let mut report = PatternReport::new("tmeg");
    for n in 3..t.num_rows() {
        for k in 1..n {
            let cell = Cell { row: n, col: k };
            report.record(cell, &tmeg_predict(t, cell)?, t.entry(cell)?, None);
        }
    }
    Ok(report)
}

/// `west + east - nw - (k - 2)` for `south = (n, k)`, `n >= 3`,
/// `1 <= k <= n - 2`, where `nw = (n-3, k-1)` and the subtracted factor
/// belongs to the constant-column diagonal `k`.
pub fn ashley_predict<T: Scalar>(t: &Triangle<T>, south: Cell) -> Result<T> {
    let (n, k) = (south.row, south.col);
    if n < 3 || k == 0 || k + 2 > n {
        return Err(Error::PatternApplicability(format!(
            "Ashley's rule needs row >= 3 and 1 <= col <= row-2, got {south}"
        )));
    }
    let factor = T::from_index(k) - T::from_index(2);
    Ok(value(t, n - 1, k - 1)? + value(t, n - 1, k)? - value(t, n - 3, k - 1)? - factor)
}

pub fn ashley_verify<T: Scalar>(t: &Triangle<T>) -> Result<PatternReport> {
    if t.num_rows() < 4 {
        return Err(Error::PatternApplicability(
            "Ashley verification needs at least 4 rows".into(),
        ));
    }
    let mut report = PatternReport::new("ashley");
    for n in 3..t.num_rows() {
        for k in 1..n - 1 {
            let cell = Cell { row: n, col: k };
            report.record(cell, &ashley_predict(t, cell)?, t.entry(cell)?, None);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    /// Centered on one cell; level `m` has `2m + 1` cells per side.
    Odd,
    /// Centered on a 4-cell diamond whose top cell is the anchor; level `m`
    /// has `2m` cells per side and level 1 is the inner diamond itself.
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingSpec {
    pub kind: RingKind,
    pub anchor: Cell,
    pub level: usize,
}

impl RingSpec {
    pub fn odd(center: Cell, level: usize) -> Self {
        Self {
            kind: RingKind::Odd,
            anchor: center,
            level,
        }
    }

    pub fn even(apex: Cell, level: usize) -> Self {
        Self {
            kind: RingKind::Even,
            anchor: apex,
            level,
        }
    }

    /// Steps along each side of the ring.
    pub fn side(&self) -> usize {
        match self.kind {
            RingKind::Odd => 2 * self.level,
            RingKind::Even => 2 * self.level - 1,
        }
    }

    pub fn len(&self) -> usize {
        4 * self.side()
    }

    pub fn is_empty(&self) -> bool {
        self.level == 0
    }

    /// Top corner as signed coordinates; may be off the triangle.
    fn top(&self) -> (i64, i64) {
        let (r, c) = (self.anchor.row as i64, self.anchor.col as i64);
        let m = self.level as i64;
        match self.kind {
            RingKind::Odd => (r - 2 * m, c - m),
            RingKind::Even => (r - 2 * (m - 1), c - (m - 1)),
        }
    }
}

const RING_DIRECTIONS: [(i64, i64); 4] = [(1, 0), (1, 1), (-1, 0), (-1, -1)];

/// Boundary cells of the ring, walked from the top corner: down the left
/// side, down the bottom-left side, up the right side, and back up to the
/// start. The start is listed once.
pub fn ring_cells<T: Scalar>(t: &Triangle<T>, spec: RingSpec) -> Result<Vec<Cell>> {
    if spec.level == 0 {
        return Err(Error::PatternApplicability(
            "ring level must be at least 1".into(),
        ));
    }
    let side = spec.side();
    let (mut r, mut c) = spec.top();
    let mut cells = Vec::with_capacity(spec.len());
    for (dr, dc) in RING_DIRECTIONS {
        for _ in 0..side {
            let cell = to_cell(t, r, c)?;
            cells.push(cell);
            r += dr;
            c += dc;
        }
    }
    Ok(cells)
}

fn to_cell<T: Scalar>(t: &Triangle<T>, r: i64, c: i64) -> Result<Cell> {
    // Negative coordinates clamp to 0 only for the error message.
    let cell = Cell {
        row: r.max(0) as usize,
        col: c.max(0) as usize,
    };
    if r < 0 || c < 0 || c > r || !t.contains(cell) {
        return Err(Error::Geometry { cell });
    }
    Ok(cell)
}

fn ring_sum<T: Scalar>(t: &Triangle<T>, spec: RingSpec) -> Result<(Vec<Cell>, T)> {
    let cells = ring_cells(t, spec)?;
    let sum = cells
        .iter()
        .map(|&c| t.get(c).expect("ring cells are inside").clone())
        .fold(T::zero(), |a, b| a + b);
    Ok((cells, sum))
}

/// One ring compared against its predicted sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCheck<T> {
    pub spec: RingSpec,
    pub cells: Vec<Cell>,
    pub ring_sum: T,
    pub expected_sum: T,
}

impl<T: Scalar> RingCheck<T> {
    pub fn holds(&self) -> bool {
        self.ring_sum == self.expected_sum
    }
}

/// Ring sum against `8m · center`.
pub fn odd_diamond_check<T: Scalar>(
    t: &Triangle<T>,
    center: Cell,
    level: usize,
) -> Result<RingCheck<T>> {
    let spec = RingSpec::odd(center, level);
    let (cells, ring_sum) = ring_sum(t, spec)?;
    let expected_sum = T::from_index(cells.len()) * t.entry(center)?.clone();
    Ok(RingCheck {
        spec,
        cells,
        ring_sum,
        expected_sum,
    })
}

/// Outer ring sum against `(2m - 1) · inner-diamond sum`, for `m >= 2`.
pub fn even_diamond_check<T: Scalar>(
    t: &Triangle<T>,
    apex: Cell,
    level: usize,
) -> Result<RingCheck<T>> {
    if level < 2 {
        return Err(Error::PatternApplicability(
            "even diamond outer ring needs level >= 2".into(),
        ));
    }
    let spec = RingSpec::even(apex, level);
    let (_, inner) = ring_sum(t, RingSpec::even(apex, 1))?;
    let (cells, outer) = ring_sum(t, spec)?;
    let expected_sum = T::from_index(2 * level - 1) * inner;
    Ok(RingCheck {
        spec,
        cells,
        ring_sum: outer,
        expected_sum,
    })
}

fn fits<T: Scalar>(t: &Triangle<T>, spec: RingSpec) -> bool {
    let (top_r, top_c) = spec.top();
    let s = spec.side() as i64;
    let n = t.num_rows() as i64;
    // Corners: top, left, bottom, right. Sides are straight so corners suffice.
    [
        (top_r, top_c),
        (top_r + s, top_c),
        (top_r + 2 * s, top_c + s),
        (top_r + s, top_c + s),
    ]
    .iter()
    .all(|&(r, c)| r >= 0 && c >= 0 && c <= r && r < n)
}

/// Every odd ring that fits inside `t`, anchors in row-major order and
/// levels ascending.
pub fn odd_diamond_sweep<T: Scalar>(t: &Triangle<T>) -> Result<PatternReport> {
    let mut report = PatternReport::new("odd-diamond");
    for center in t.cells() {
        for level in 1.. {
            let spec = RingSpec::odd(center, level);
            if !fits(t, spec) {
                break;
            }
            let check = odd_diamond_check(t, center, level)?;
            report.record(
                center,
                &check.expected_sum,
                &check.ring_sum,
                Some(format!("level {level}")),
            );
        }
    }
    Ok(report)
}

/// Every even outer ring (level >= 2) that fits inside `t`.
pub fn even_diamond_sweep<T: Scalar>(t: &Triangle<T>) -> Result<PatternReport> {
    let mut report = PatternReport::new("even-diamond");
    for apex in t.cells() {
        for level in 2.. {
            let spec = RingSpec::even(apex, level);
            if !fits(t, spec) {
                break;
            }
            let check = even_diamond_check(t, apex, level)?;
            report.record(
                apex,
                &check.expected_sum,
                &check.ring_sum,
                Some(format!("level {level}")),
            );
        }
    }
    Ok(report)
}

/// Wraps a single ring check as a one-line report.
pub fn ring_report<T: Scalar>(pattern: &str, check: &RingCheck<T>) -> PatternReport {
    let mut report = PatternReport::new(pattern);
    report.record(
        check.spec.anchor,
        &check.expected_sum,
        &check.ring_sum,
        Some(format!("level {}", check.spec.level)),
    );
    report
}

/// `Σ_{i < length} t(start_row + i, i) == t(start_row + length, length - 1)`.
pub fn hockey_stick_check<T: Scalar>(
    t: &Triangle<T>,
    start_row: usize,
    length: usize,
) -> Result<bool> {
    let (lhs, rhs) = hockey_stick_sums(t, start_row, length)?;
    Ok(lhs == rhs)
}

fn hockey_stick_sums<T: Scalar>(
    t: &Triangle<T>,
    start_row: usize,
    length: usize,
) -> Result<(T, T)> {
    if length == 0 {
        return Err(Error::PatternApplicability(
            "hockey stick needs length >= 1".into(),
        ));
    }
    let mut sum = T::zero();
    for i in 0..length {
        sum = sum + value(t, start_row + i, i)?;
    }
    Ok((sum, value(t, start_row + length, length - 1)?))
}

/// Every stick that fits in `t`, keyed by its first cell.
pub fn hockey_stick_sweep<T: Scalar>(t: &Triangle<T>) -> Result<PatternReport> {
    let mut report = PatternReport::new("hockey-stick");
    let rows = t.num_rows();
    for start_row in 0..rows {
        for length in 1..rows - start_row {
            let (lhs, rhs) = hockey_stick_sums(t, start_row, length)?;
            report.record(
                Cell {
                    row: start_row,
                    col: 0,
                },
                &rhs,
                &lhs,
                Some(format!("length {length}")),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::{build_pascal, build_rascal_additive, rascal_entry};

    fn rascal(n: usize) -> Triangle<i64> {
        build_rascal_additive(n).unwrap()
    }

    fn c(row: usize, col: usize) -> Cell {
        Cell { row, col }
    }

    fn values(t: &Triangle<i64>, cells: &[Cell]) -> Vec<i64> {
        cells.iter().map(|&c| *t.entry(c).unwrap()).collect()
    }

    #[test]
    fn tmeg_examples() {
        let t = rascal(12);
        assert_eq!(tmeg_predict(&t, c(8, 3)).unwrap(), 9 + 1 + 6);
        assert_eq!(tmeg_predict(&t, c(8, 3)).unwrap(), 16);
        assert_eq!(tmeg_predict(&t, c(8, 1)).unwrap(), 1 + 1 + 6);
        assert_eq!(
            tmeg_predict(&t, c(3, 1)).unwrap(),
            rascal_entry::<i64>(3, 1).unwrap()
        );
        for bad in [c(2, 1), c(5, 0), c(5, 5)] {
            assert!(matches!(
                tmeg_predict(&t, bad),
                Err(Error::PatternApplicability(_))
            ));
        }
    }

    #[test]
    fn tmeg_verify_small_and_negative() {
        let r = tmeg_verify(&rascal(4)).unwrap();
        assert!(r.holds());
        assert_eq!(r.cells_checked, 2);
        assert!(tmeg_verify(&rascal(3)).is_err());

        let p = tmeg_verify(&build_pascal::<i64>(20).unwrap()).unwrap();
        assert!(!p.holds());
        let first = &p.counterexamples[0];
        assert_eq!(first.cell, c(4, 2));
        assert_eq!(first.to_string(), "cell (4,2): expected 5, found 6");
    }

    #[test]
    fn ashley_examples() {
        let t = rascal(12);
        assert_eq!(ashley_predict(&t, c(9, 3)).unwrap(), 13 + 16 - 9 - 1);
        assert_eq!(ashley_predict(&t, c(9, 3)).unwrap(), 19);
        assert_eq!(ashley_predict(&t, c(3, 1)).unwrap(), 1 + 2 - 1 + 1);
        assert_eq!(ashley_predict(&t, c(9, 6)).unwrap(), 16 + 13 - 6 - 4);
        for bad in [c(2, 1), c(5, 0), c(5, 4)] {
            assert!(matches!(
                ashley_predict(&t, bad),
                Err(Error::PatternApplicability(_))
            ));
        }
    }

    #[test]
    fn ashley_verify_small_and_negative() {
        assert!(ashley_verify(&rascal(5)).unwrap().holds());
        assert!(!ashley_verify(&build_pascal::<i64>(20).unwrap())
            .unwrap()
            .holds());
    }

    #[test]
    fn ring_values_match_worked_diamonds() {
        let t = rascal(20);
        let odd = ring_cells(&t, RingSpec::odd(c(9, 4), 1)).unwrap();
        assert_eq!(values(&t, &odd), vec![13, 16, 19, 25, 31, 26, 21, 17]);

        let even = ring_cells(&t, RingSpec::even(c(9, 3), 2)).unwrap();
        assert_eq!(
            values(&t, &even),
            vec![11, 13, 15, 17, 25, 33, 41, 36, 31, 26, 21, 16]
        );

        let inner = ring_cells(&t, RingSpec::even(c(9, 3), 1)).unwrap();
        assert_eq!(values(&t, &inner), vec![19, 22, 29, 25]);

        let apex_ring = ring_cells(&t, RingSpec::odd(c(2, 1), 1)).unwrap();
        assert_eq!(
            apex_ring,
            vec![
                c(0, 0),
                c(1, 0),
                c(2, 0),
                c(3, 1),
                c(4, 2),
                c(3, 2),
                c(2, 2),
                c(1, 1)
            ]
        );
        // closed form k(n-k)+1 at those cells; the sum is 8 * r(2,1) = 16
        assert_eq!(values(&t, &apex_ring), vec![1, 1, 1, 3, 5, 3, 1, 1]);
        assert_eq!(values(&t, &apex_ring).iter().sum::<i64>(), 16);
    }

    #[test]
    fn ring_geometry_errors() {
        let t = rascal(10);
        assert!(matches!(
            ring_cells(&t, RingSpec::odd(c(1, 0), 1)),
            Err(Error::Geometry { .. })
        ));
        // bottom corner (11,5) is past row 9
        assert!(matches!(
            ring_cells(&t, RingSpec::odd(c(9, 4), 1)),
            Err(Error::Geometry { cell }) if cell == c(10, 4)
        ));
        assert!(ring_cells(&t, RingSpec::odd(c(4, 2), 0)).is_err());
        assert!(even_diamond_check(&t, c(4, 1), 1).is_err());
    }

    #[test]
    fn odd_and_even_checks() {
        let t = rascal(20);
        let one = odd_diamond_check(&t, c(9, 4), 1).unwrap();
        assert_eq!((one.ring_sum, one.expected_sum), (168, 8 * 21));
        let two = odd_diamond_check(&t, c(9, 4), 2).unwrap();
        assert_eq!((two.ring_sum, two.expected_sum), (336, 16 * 21));
        let small = odd_diamond_check(&t, c(5, 2), 1).unwrap();
        assert_eq!((small.ring_sum, small.expected_sum), (56, 8 * 7));

        let e2 = even_diamond_check(&t, c(9, 3), 2).unwrap();
        assert_eq!((e2.ring_sum, e2.expected_sum), (285, 3 * 95));
        let e3 = even_diamond_check(&t, c(9, 3), 3).unwrap();
        assert_eq!((e3.ring_sum, e3.expected_sum), (475, 5 * 95));
        let e4 = even_diamond_check(&t, c(4, 1), 2).unwrap();
        assert_eq!((e4.ring_sum, e4.expected_sum), (75, 3 * 25));
    }

    #[test]
    fn sweeps_pass_on_rascal_and_fail_on_pascal() {
        let t = rascal(30);
        assert!(odd_diamond_sweep(&t).unwrap().holds());
        assert!(even_diamond_sweep(&t).unwrap().holds());
        let p = build_pascal::<i64>(20).unwrap();
        assert!(!odd_diamond_sweep(&p).unwrap().holds());
        assert!(!even_diamond_sweep(&p).unwrap().holds());
    }

    #[test]
    fn hockey_sticks() {
        let p = build_pascal::<i64>(10).unwrap();
        assert!(hockey_stick_check(&p, 2, 3).unwrap());
        assert!(hockey_stick_check(&p, 3, 4).unwrap());
        assert!(hockey_stick_check(&p, 5, 1).unwrap());
        assert!(hockey_stick_check(&p, 9, 1).is_err());
        assert!(hockey_stick_check(&p, 2, 0).is_err());
        assert!(hockey_stick_sweep(&p).unwrap().holds());
        assert!(!hockey_stick_sweep(&rascal(10)).unwrap().holds());
    }
}
