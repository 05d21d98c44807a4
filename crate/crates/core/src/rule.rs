//! Affine neighborhood rules: apply, check, and infer.
//!
//! A rule predicts an interior cell from cells above it (or to its left on
//! the same row) as an exact rational affine combination:
//!
//! ```text
//! south = Σ coefficient · entry(south + offset) + constant
//! ```
//!
//! Edge cells are fixed at 1 and never evaluated.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::linsolve::{IncrementalSystem, Insert};
use crate::scalar::Scalar;
use crate::triangle::Triangle;

/// Offset from the predicted cell to one of its inputs. `drow <= 0` and the
/// offset is never `(0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelativeOffset {
    drow: i64,
    dcol: i64,
}

impl RelativeOffset {
    pub const EAST: Self = Self { drow: -1, dcol: 0 };
    pub const WEST: Self = Self { drow: -1, dcol: -1 };
    pub const NORTH: Self = Self { drow: -2, dcol: -1 };
    pub const NORTH_WEST: Self = Self { drow: -3, dcol: -1 };

    const NAMED: [(&'static str, Self); 4] = [
        ("E", Self::EAST),
        ("W", Self::WEST),
        ("N", Self::NORTH),
        ("NW", Self::NORTH_WEST),
    ];

    pub fn new(drow: i64, dcol: i64) -> Result<Self> {
        if drow > 0 || (drow == 0 && dcol == 0) {
            return Err(Error::RuleApplicability(format!(
                "offset ({drow},{dcol}) must point at a row above or a cell to the left"
            )));
        }
        Ok(Self { drow, dcol })
    }

    pub fn drow(self) -> i64 {
        self.drow
    }

    pub fn dcol(self) -> i64 {
        self.dcol
    }

    pub fn name(self) -> Option<&'static str> {
        Self::NAMED
            .iter()
            .find(|(_, o)| *o == self)
            .map(|(n, _)| *n)
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::NAMED
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, o)| *o)
    }

    /// True when the offset only reads cells that a row-major fill has
    /// already produced.
    pub fn is_causal(self) -> bool {
        self.drow < 0 || self.dcol < 0
    }

    pub fn apply(self, cell: Cell) -> Option<Cell> {
        cell.offset(self.drow, self.dcol)
    }
}

// Nearest row first, then rightmost: E, W, N, NW.
impl Ord for RelativeOffset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (Reverse(self.drow), Reverse(self.dcol)).cmp(&(Reverse(other.drow), Reverse(other.dcol)))
    }
}

impl PartialOrd for RelativeOffset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RelativeOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => f.write_str(n),
            None => write!(f, "({},{})", self.drow, self.dcol),
        }
    }
}

impl FromStr for RelativeOffset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(o) = Self::from_name(s) {
            return Ok(o);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown direction {s:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("offset {s:?} needs two components")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("offset component {v:?}: {e}")))
        };
        Self::new(parse(a)?, parse(b)?)
    }
}

/// Parses a comma-separated template such as `E,W,N`.
pub fn parse_template(s: &str) -> Result<Vec<RelativeOffset>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(s[start..i].parse()?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(s[start..].parse()?);
    }
    if out.is_empty() {
        return Err(Error::Parse("template is empty".into()));
    }
    Ok(out)
}

/// `south = Σ terms + constant` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineDiamondRule<T: Scalar> {
    terms: BTreeMap<RelativeOffset, Ratio<T>>,
    constant: Ratio<T>,
}

impl<T: Scalar> AffineDiamondRule<T> {
    /// Repeated offsets have their coefficients summed.
    pub fn new(
        terms: impl IntoIterator<Item = (RelativeOffset, Ratio<T>)>,
        constant: Ratio<T>,
    ) -> Result<Self> {
        let mut map: BTreeMap<RelativeOffset, Ratio<T>> = BTreeMap::new();
        for (o, c) in terms {
            let slot = map.entry(o).or_insert_with(Ratio::zero);
            *slot = slot.clone() + c;
        }
        if map.is_empty() && constant.is_zero() {
            return Err(Error::RuleApplicability(
                "rule needs at least one term or a nonzero constant".into(),
            ));
        }
        Ok(Self {
            terms: map,
            constant,
        })
    }

    /// Integer coefficients; the usual way to write the named rules.
    pub fn from_integers(terms: &[(RelativeOffset, i64)], constant: i64) -> Result<Self> {
        let int = |v: i64| Ratio::from_integer(T::from_i64(v).expect("i64 fits in scalar"));
        Self::new(terms.iter().map(|&(o, c)| (o, int(c))), int(constant))
    }

    /// `south = east + west`
    pub fn pascal() -> Self {
        Self::from_integers(&[(RelativeOffset::EAST, 1), (RelativeOffset::WEST, 1)], 0)
            .expect("non-empty rule")
    }

    /// `south = east + west - north + 1`
    pub fn rascal_additive() -> Self {
        Self::from_integers(
            &[
                (RelativeOffset::EAST, 1),
                (RelativeOffset::WEST, 1),
                (RelativeOffset::NORTH, -1),
            ],
            1,
        )
        .expect("non-empty rule")
    }

    pub fn terms(&self) -> impl Iterator<Item = (RelativeOffset, &Ratio<T>)> {
        self.terms.iter().map(|(o, c)| (*o, c))
    }

    pub fn offsets(&self) -> Vec<RelativeOffset> {
        self.terms.keys().copied().collect()
    }

    pub fn coefficient(&self, offset: RelativeOffset) -> Ratio<T> {
        self.terms.get(&offset).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn constant(&self) -> &Ratio<T> {
        &self.constant
    }

    /// Evaluates the rule at `cell`, reading inputs through `lookup`.
    /// Returns `None` if any input is unavailable.
    fn evaluate_with<'a, F>(&self, cell: Cell, lookup: F) -> Option<Ratio<T>>
    where
        F: Fn(Cell) -> Option<&'a T>,
    {
        let mut acc = self.constant.clone();
        for (offset, coef) in &self.terms {
            let v = lookup(offset.apply(cell)?)?;
            acc = acc + coef.clone() * Ratio::from_integer(v.clone());
        }
        Some(acc)
    }

    /// The rule's prediction at `cell` of `t`, or `None` if an input cell
    /// falls outside `t`.
    pub fn evaluate(&self, t: &Triangle<T>, cell: Cell) -> Option<Ratio<T>> {
        self.evaluate_with(cell, |c| t.get(c))
    }

    pub fn applies_at(&self, t: &Triangle<T>, cell: Cell) -> bool {
        !cell.is_edge()
            && t.contains(cell)
            && self
                .terms
                .keys()
                .all(|o| o.apply(cell).is_some_and(|c| t.contains(c)))
    }

    pub fn to_document(&self) -> RuleDocument {
        RuleDocument {
            terms: self
                .terms
                .iter()
                .map(|(o, c)| RuleTerm {
                    drow: o.drow,
                    dcol: o.dcol,
                    coefficient: c.to_string(),
                })
                .collect(),
            constant: self.constant.to_string(),
        }
    }

    pub fn from_document(doc: &RuleDocument) -> Result<Self> {
        let terms = doc
            .terms
            .iter()
            .map(|t| {
                Ok((
                    RelativeOffset::new(t.drow, t.dcol)?,
                    parse_ratio(&t.coefficient)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms, parse_ratio(&doc.constant)?)
    }
}

/// Text form: `a*E + b*W + c*N + d`, coefficients written `p` or `p/q`.
impl<T: Scalar> fmt::Display for AffineDiamondRule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (o, c) in &self.terms {
            write!(f, "{c}*{o} + ")?;
        }
        write!(f, "{}", self.constant)
    }
}

impl<T: Scalar> FromStr for AffineDiamondRule<T> {
    type Err = Error;

    /// Accepts the display form and shorthand such as `E+W-N+1`; a bare
    /// direction has coefficient 1 and bare numbers add to the constant.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty rule".into()));
        }
        let mut terms = Vec::new();
        let mut constant = Ratio::<T>::zero();
        for chunk in split_terms(&compact) {
            let (negative, body) = strip_signs(chunk);
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in rule {s:?}")));
            }
            let sign = |v: Ratio<T>| if negative { -v } else { v };
            if let Some((coef, dir)) = body.split_once('*') {
                let (neg_inner, coef) = strip_signs(coef);
                let c = parse_ratio::<T>(coef)?;
                let c = if neg_inner { -c } else { c };
                terms.push((dir.parse::<RelativeOffset>()?, sign(c)));
            } else if body.starts_with(|c: char| c.is_ascii_digit()) {
                constant = constant + sign(parse_ratio(body)?);
            } else {
                terms.push((body.parse::<RelativeOffset>()?, sign(Ratio::one())));
            }
        }
        Self::new(terms, constant)
    }
}

// Splits at top-level '+'/'-' that start a new term (not a sign directly
// after an operator, and not inside parentheses).
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    let mut prev: Option<char> = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 && i > 0 && !matches!(prev, Some('+' | '-' | '*' | '/')) => {
                out.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
        prev = Some(ch);
    }
    out.push(&s[start..]);
    out
}

fn strip_signs(s: &str) -> (bool, &str) {
    let mut negative = false;
    let mut rest = s;
    while let Some(c) = rest.chars().next() {
        match c {
            '+' => {}
            '-' => negative = !negative,
            _ => break,
        }
        rest = &rest[1..];
    }
    (negative, rest)
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_ratio<T: Scalar>(s: &str) -> Result<Ratio<T>> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: T = p.trim().parse().map_err(|_| bad())?;
            let q: T = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Ratio::new(p, q))
        }
        None => Ok(Ratio::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Structured rule: `(drow, dcol, coefficient)` triples plus a constant,
/// rationals as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDocument {
    pub terms: Vec<RuleTerm>,
    pub constant: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTerm {
    pub drow: i64,
    pub dcol: i64,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleViolation<T: Scalar> {
    pub cell: Cell,
    pub expected: Ratio<T>,
    pub actual: T,
}

impl<T: Scalar> fmt::Display for RuleViolation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cell {}: expected {}, found {}",
            self.cell, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport<T: Scalar> {
    pub violations: Vec<RuleViolation<T>>,
    pub cells_checked: usize,
}

impl<T: Scalar> RuleReport<T> {
    pub fn holds(&self) -> bool {
        self.cells_checked > 0 && self.violations.is_empty()
    }
}

/// Fills a triangle row by row: edges are 1, every interior cell comes from
/// `rule`.
pub fn generate_with_rule<T: Scalar>(
    rule: &AffineDiamondRule<T>,
    num_rows: usize,
) -> Result<Triangle<T>> {
    if num_rows == 0 {
        return Err(Error::EmptyInput("num_rows must be at least 1"));
    }
    if let Some(o) = rule.terms.keys().find(|o| !o.is_causal()) {
        return Err(Error::RuleApplicability(format!(
            "offset {o} reads a cell that is not yet filled"
        )));
    }
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(num_rows);
    for n in 0..num_rows {
        let mut row: Vec<T> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let cell = Cell { row: n, col: k };
            if cell.is_edge() {
                row.push(T::one());
                continue;
            }
            let value = rule
                .evaluate_with(cell, |c| {
                    if c.row == n {
                        row.get(c.col)
                    } else {
                        rows.get(c.row).and_then(|r| r.get(c.col))
                    }
                })
                .ok_or_else(|| {
                    Error::RuleApplicability(format!(
                        "rule reads outside the triangle at cell {cell}"
                    ))
                })?;
            if !value.is_integer() {
                return Err(Error::Integrality {
                    cell,
                    value: value.to_string(),
                });
            }
            row.push(value.to_integer());
        }
        rows.push(row);
    }
    Triangle::from_rows("rule", rows)
}

/// Interior cells of `t` at which every offset lands inside `t`, row-major.
fn applicable_cells<'a, T: Scalar>(
    t: &'a Triangle<T>,
    offsets: &'a [RelativeOffset],
) -> impl Iterator<Item = Cell> + 'a {
    t.interior_cells().filter(move |&cell| {
        offsets
            .iter()
            .all(|o| o.apply(cell).is_some_and(|c| t.contains(c)))
    })
}

/// Compares the rule's prediction with the stored value at every applicable
/// interior cell. Violations come back in row-major order.
pub fn check_rule<T: Scalar>(
    rule: &AffineDiamondRule<T>,
    t: &Triangle<T>,
) -> Result<RuleReport<T>> {
    let offsets = rule.offsets();
    let mut violations = Vec::new();
    let mut cells_checked = 0;
    for cell in applicable_cells(t, &offsets) {
        cells_checked += 1;
        let expected = rule.evaluate(t, cell).expect("cell is applicable");
        let actual = t.get(cell).expect("cell is inside");
        if expected != Ratio::from_integer(actual.clone()) {
            violations.push(RuleViolation {
                cell,
                expected,
                actual: actual.clone(),
            });
        }
    }
    if cells_checked == 0 {
        return Err(Error::RuleApplicability(format!(
            "no interior cell of a {}-row triangle has all inputs of {rule}",
            t.num_rows()
        )));
    }
    Ok(RuleReport {
        violations,
        cells_checked,
    })
}

/// How an inference attempt ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inference<T: Scalar> {
    /// Unique exact fit that also holds on every applicable cell.
    Found(AffineDiamondRule<T>),
    /// All applicable cells used and the fit is still not unique.
    Underdetermined { rank: usize, unknowns: usize },
    /// The sample cells admit no exact affine fit.
    Inconsistent { at: Cell },
    /// The unique fit to the samples fails somewhere else in the triangle.
    Rejected(AffineDiamondRule<T>, RuleReport<T>),
}

/// Solves for the coefficients of `template` (and a constant when
/// `use_constant`) from the triangle's own cells.
///
/// Equations are added from applicable cells in row-major order until the
/// system has full rank; the unique solution is then checked against every
/// applicable cell.
pub fn infer_affine_rule_detailed<T: Scalar>(
    t: &Triangle<T>,
    template: &[RelativeOffset],
    use_constant: bool,
) -> Result<Inference<T>> {
    let mut offsets: Vec<RelativeOffset> = template.to_vec();
    offsets.sort();
    offsets.dedup();
    if offsets.is_empty() {
        return Err(Error::RuleApplicability("template is empty".into()));
    }
    let unknowns = offsets.len() + usize::from(use_constant);
    let cells: Vec<Cell> = applicable_cells(t, &offsets).collect();
    if cells.len() < unknowns {
        return Err(Error::RuleApplicability(format!(
            "{} applicable cells, need at least {unknowns}",
            cells.len()
        )));
    }

    let mut system = IncrementalSystem::<T>::new(unknowns);
    for &cell in &cells {
        let mut row: Vec<Ratio<T>> = offsets
            .iter()
            .map(|o| {
                let src = o.apply(cell).expect("applicable");
                Ratio::from_integer(t.get(src).expect("inside").clone())
            })
            .collect();
        if use_constant {
            row.push(Ratio::one());
        }
        let rhs = Ratio::from_integer(t.get(cell).expect("inside").clone());
        if system.push(row, rhs) == Insert::Inconsistent {
            return Ok(Inference::Inconsistent { at: cell });
        }
        if system.is_determined() {
            break;
        }
    }

    let Some(solution) = system.solution() else {
        return Ok(Inference::Underdetermined {
            rank: system.rank(),
            unknowns,
        });
    };
    let constant = if use_constant {
        solution[offsets.len()].clone()
    } else {
        Ratio::zero()
    };
    let rule = AffineDiamondRule::new(offsets.iter().copied().zip(solution), constant)?;
    let report = check_rule(&rule, t)?;
    if report.holds() {
        Ok(Inference::Found(rule))
    } else {
        Ok(Inference::Rejected(rule, report))
    }
}

/// [`infer_affine_rule_detailed`] reduced to "the rule, if one validates".
pub fn infer_affine_rule<T: Scalar>(
    t: &Triangle<T>,
    template: &[RelativeOffset],
    use_constant: bool,
) -> Result<Option<AffineDiamondRule<T>>> {
    Ok(
        match infer_affine_rule_detailed(t, template, use_constant)? {
            Inference::Found(rule) => Some(rule),
            _ => None,
        },
    )
}
