//! Polygonal approaching arrangements with exact rational coordinates.
//!
//! A [`PolyArrangement`] stores, for every pseudo-line, its value at a
//! common list of helper columns plus the slopes of the two boundary rays.
//! Lines are indexed `0..n` top to bottom at left infinity; sequences built
//! from an arrangement use the labels `index + 1`.

mod ops;
mod triangles;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::seq::{AllowableSequence, Permutation, ValidationReport};

pub use ops::{perturb_lines_to_simple, perturb_to_simple, strictify, translate, truncate, Translated};
pub use triangles::{triangle_cells, verify_triangle_cell, TriangleCell};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyArrangement {
    columns: Vec<Rational>,
    y: Vec<Vec<Rational>>,
    left_slopes: Vec<Rational>,
    right_slopes: Vec<Rational>,
    colors: Option<Vec<String>>,
}

impl PolyArrangement {
    /// Checks shapes only; use [`validate_approaching`] for the geometry.
    pub fn new(
        columns: Vec<Rational>,
        y: Vec<Vec<Rational>>,
        left_slopes: Vec<Rational>,
        right_slopes: Vec<Rational>,
    ) -> Result<Self> {
        let n = y.len();
        let m = columns.len();
        if n == 0 || m == 0 {
            return Err(Error::Structure("arrangement needs a line and a column".into()));
        }
        if columns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Structure("columns must strictly increase".into()));
        }
        if y.iter().any(|row| row.len() != m) {
            return Err(Error::Structure(format!("every row needs {m} values")));
        }
        if left_slopes.len() != n || right_slopes.len() != n {
            return Err(Error::Structure(format!("need {n} slopes per side")));
        }
        Ok(Self {
            columns,
            y,
            left_slopes,
            right_slopes,
            colors: None,
        })
    }

    /// Straight lines `y = slope * x + intercept`, stored at `columns`.
    pub fn from_lines(lines: &[(Rational, Rational)], columns: Vec<Rational>) -> Result<Self> {
        let y = lines
            .iter()
            .map(|(a, b)| columns.iter().map(|x| a * x + b).collect())
            .collect();
        let slopes: Vec<Rational> = lines.iter().map(|(a, _)| a.clone()).collect();
        Self::new(columns, y, slopes.clone(), slopes)
    }

    pub fn with_colors(mut self, colors: Vec<String>) -> Result<Self> {
        if colors.len() != self.n() {
            return Err(Error::Structure("one color per line".into()));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn without_colors(mut self) -> Self {
        self.colors = None;
        self
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Rational] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.y
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.y[i]
    }

    pub fn left_slopes(&self) -> &[Rational] {
        &self.left_slopes
    }

    pub fn right_slopes(&self) -> &[Rational] {
        &self.right_slopes
    }

    pub fn colors(&self) -> Option<&[String]> {
        self.colors.as_deref()
    }

    pub fn into_parts(
        self,
    ) -> (
        Vec<Rational>,
        Vec<Vec<Rational>>,
        Vec<Rational>,
        Vec<Rational>,
        Option<Vec<String>>,
    ) {
        (self.columns, self.y, self.left_slopes, self.right_slopes, self.colors)
    }

    /// Value of line `i` at `x`: linear between columns, rays outside.
    pub fn evaluate(&self, i: usize, x: &Rational) -> Rational {
        let (cols, row) = (&self.columns, &self.y[i]);
        let m = cols.len();
        if x <= &cols[0] {
            return &row[0] + &self.left_slopes[i] * (x - &cols[0]);
        }
        if x >= &cols[m - 1] {
            return &row[m - 1] + &self.right_slopes[i] * (x - &cols[m - 1]);
        }
        let k = cols.partition_point(|c| c <= x) - 1;
        if &cols[k] == x {
            return row[k].clone();
        }
        let t = (x - &cols[k]) / (&cols[k + 1] - &cols[k]);
        &row[k] + t * (&row[k + 1] - &row[k])
    }

    /// Slope of line `i` immediately right of `x`.
    pub fn slope_right_of(&self, i: usize, x: &Rational) -> Rational {
        let cols = &self.columns;
        if x < &cols[0] {
            return self.left_slopes[i].clone();
        }
        if x >= &cols[cols.len() - 1] {
            return self.right_slopes[i].clone();
        }
        let k = cols.partition_point(|c| c <= x) - 1;
        self.segment_slope(i, k)
    }

    /// Slope of line `i` immediately left of `x`.
    pub fn slope_left_of(&self, i: usize, x: &Rational) -> Rational {
        let cols = &self.columns;
        if x <= &cols[0] {
            return self.left_slopes[i].clone();
        }
        if x > &cols[cols.len() - 1] {
            return self.right_slopes[i].clone();
        }
        let k = cols.partition_point(|c| c < x) - 1;
        self.segment_slope(i, k)
    }

    fn segment_slope(&self, i: usize, k: usize) -> Rational {
        (&self.y[i][k + 1] - &self.y[i][k]) / (&self.columns[k + 1] - &self.columns[k])
    }

    /// Same curves re-sampled at additional columns.
    pub fn with_columns(&self, extra: &[Rational]) -> Self {
        let mut cols: Vec<Rational> = self.columns.iter().chain(extra).cloned().collect();
        cols.sort();
        cols.dedup();
        let y = (0..self.n())
            .map(|i| cols.iter().map(|x| self.evaluate(i, x)).collect())
            .collect();
        Self {
            columns: cols,
            y,
            left_slopes: self.left_slopes.clone(),
            right_slopes: self.right_slopes.clone(),
            colors: self.colors.clone(),
        }
    }

    fn coincident(&self, i: usize, j: usize) -> bool {
        self.y[i] == self.y[j]
            && self.left_slopes[i] == self.left_slopes[j]
            && self.right_slopes[i] == self.right_slopes[j]
    }

    /// `d(c) = y_i(c) - y_j(c)` at every column.
    fn differences(&self, i: usize, j: usize) -> Vec<Rational> {
        self.y[i].iter().zip(&self.y[j]).map(|(a, b)| a - b).collect()
    }

    /// The unique x where lines `i < j` cross.
    pub fn crossing_x(&self, i: usize, j: usize) -> Result<Rational> {
        let (i, j) = (i.min(j), i.max(j));
        if self.coincident(i, j) {
            return Err(Error::DegenerateCrossing(i + 1, j + 1));
        }
        let d = self.differences(i, j);
        let cols = &self.columns;
        let m = cols.len();
        let Some(k) = d.iter().position(|v| !v.is_positive()) else {
            let rate = &self.right_slopes[i] - &self.right_slopes[j];
            if !rate.is_negative() {
                return Err(Error::DegenerateCrossing(i + 1, j + 1));
            }
            return Ok(&cols[m - 1] - &d[m - 1] / rate);
        };
        if d[k].is_zero() {
            if k + 1 < m && d[k + 1].is_zero() {
                return Err(Error::DegenerateCrossing(i + 1, j + 1));
            }
            return Ok(cols[k].clone());
        }
        if k == 0 {
            let rate = &self.left_slopes[i] - &self.left_slopes[j];
            if !rate.is_negative() {
                return Err(Error::DegenerateCrossing(i + 1, j + 1));
            }
            return Ok(&cols[0] - &d[0] / rate);
        }
        let t = &d[k - 1] / (&d[k - 1] - &d[k]);
        Ok(&cols[k - 1] + t * (&cols[k] - &cols[k - 1]))
    }

    /// The same arrangement with its lines listed in `order` (new index →
    /// old index). The caller is responsible for the slope order.
    pub fn reindexed(&self, order: &[usize]) -> Self {
        Self {
            columns: self.columns.clone(),
            y: order.iter().map(|&i| self.y[i].clone()).collect(),
            left_slopes: order.iter().map(|&i| self.left_slopes[i].clone()).collect(),
            right_slopes: order.iter().map(|&i| self.right_slopes[i].clone()).collect(),
            colors: self
                .colors
                .as_ref()
                .map(|c| order.iter().map(|&i| c[i].clone()).collect()),
        }
    }

    pub(crate) fn rows_mut(&mut self) -> &mut Vec<Vec<Rational>> {
        &mut self.y
    }

    /// Insert a line at index `at`; its color (if the arrangement is
    /// colored) copies the line it displaces or the last one.
    pub(crate) fn insert_line(
        &mut self,
        at: usize,
        row: Vec<Rational>,
        left: Rational,
        right: Rational,
    ) {
        if let Some(c) = self.colors.as_mut() {
            let tag = c.get(at).or(c.last()).cloned().unwrap_or_default();
            c.insert(at, tag);
        }
        self.y.insert(at, row);
        self.left_slopes.insert(at, left);
        self.right_slopes.insert(at, right);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrangementViolation {
    /// Lines listed with 1-based labels.
    DifferenceIncreases { i: usize, j: usize, column: usize },
    DifferenceConstant { i: usize, j: usize, column: usize },
    NotSurjective { i: usize, j: usize, side: Side },
    Coincident { i: usize, j: usize },
}

impl ArrangementViolation {
    /// The offending pair, as 1-based labels.
    pub fn lines(&self) -> (usize, usize) {
        match *self {
            ArrangementViolation::DifferenceIncreases { i, j, .. }
            | ArrangementViolation::DifferenceConstant { i, j, .. }
            | ArrangementViolation::NotSurjective { i, j, .. }
            | ArrangementViolation::Coincident { i, j } => (i, j),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for ArrangementViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DifferenceIncreases { i, j, column } => write!(
                f,
                "difference of lines {i},{j} increases between columns {column} and {}",
                column + 1
            ),
            Self::DifferenceConstant { i, j, column } => write!(
                f,
                "difference of lines {i},{j} is constant between columns {column} and {}",
                column + 1
            ),
            Self::NotSurjective { i, j, side } => write!(
                f,
                "difference of lines {i},{j} is not surjective ({side:?} ray slopes out of order)"
            ),
            Self::Coincident { i, j } => write!(f, "lines {i} and {j} coincide"),
        }
    }
}

/// Every violated approaching condition. Non-strict mode tolerates
/// constant differences and coincident copies.
pub fn validate_approaching(
    arr: &PolyArrangement,
    strict: bool,
) -> ValidationReport<ArrangementViolation> {
    let mut report = ValidationReport::default();
    let n = arr.n();
    for i in 0..n {
        for j in i + 1..n {
            let (li, lj) = (i + 1, j + 1);
            if arr.coincident(i, j) {
                if strict {
                    report.push(ArrangementViolation::Coincident { i: li, j: lj });
                }
                continue;
            }
            if arr.left_slopes[i] >= arr.left_slopes[j] {
                report.push(ArrangementViolation::NotSurjective {
                    i: li,
                    j: lj,
                    side: Side::Left,
                });
            }
            if arr.right_slopes[i] >= arr.right_slopes[j] {
                report.push(ArrangementViolation::NotSurjective {
                    i: li,
                    j: lj,
                    side: Side::Right,
                });
            }
            let d = arr.differences(i, j);
            for (c, w) in d.windows(2).enumerate() {
                if w[0] < w[1] {
                    report.push(ArrangementViolation::DifferenceIncreases {
                        i: li,
                        j: lj,
                        column: c + 1,
                    });
                } else if strict && w[0] == w[1] {
                    report.push(ArrangementViolation::DifferenceConstant {
                        i: li,
                        j: lj,
                        column: c + 1,
                    });
                }
            }
        }
    }
    report
}

pub fn is_approaching(arr: &PolyArrangement, strict: bool) -> bool {
    validate_approaching(arr, strict).is_ok()
}

/// Lines (0-based, sorted) meeting at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingEvent {
    pub lines: Vec<usize>,
    pub x: Rational,
    pub y: Rational,
}

impl CrossingEvent {
    pub fn point(&self) -> Point {
        Point::new(self.x.clone(), self.y.clone())
    }
}

/// All crossings, one event per crossing point, sorted by x (then top to
/// bottom).
pub fn crossings(arr: &PolyArrangement) -> Result<Vec<CrossingEvent>> {
    let report = validate_approaching(arr, false);
    if !report.is_ok() {
        return Err(Error::Precondition(format!("not approaching: {report}")));
    }
    let n = arr.n();
    let mut points: BTreeMap<(Rational, std::cmp::Reverse<Rational>), Vec<usize>> =
        BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let x = arr.crossing_x(i, j)?;
            let y = arr.evaluate(i, &x);
            let lines = points.entry((x, std::cmp::Reverse(y))).or_default();
            lines.push(i);
            lines.push(j);
        }
    }
    Ok(points
        .into_iter()
        .map(|((x, std::cmp::Reverse(y)), mut lines)| {
            lines.sort_unstable();
            lines.dedup();
            CrossingEvent { lines, x, y }
        })
        .collect())
}

/// The distinct crossing abscissae in increasing order.
pub fn crossing_abscissae(events: &[CrossingEvent]) -> Vec<Rational> {
    let mut xs: Vec<Rational> = events.iter().map(|e| e.x.clone()).collect();
    xs.dedup();
    xs
}

/// Top-to-bottom order of the lines just right of `x`.
pub fn order_right_of(arr: &PolyArrangement, x: &Rational) -> Permutation {
    let mut keyed: Vec<(Rational, Rational, usize)> = (0..arr.n())
        .map(|i| (arr.evaluate(i, x), arr.slope_right_of(i, x), i))
        .collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    Permutation::new(keyed.into_iter().map(|(_, _, i)| i + 1).collect()).expect("labels")
}

/// Top-to-bottom order at `x`, which must not be a crossing abscissa.
pub fn order_at(arr: &PolyArrangement, x: &Rational) -> Permutation {
    let mut keyed: Vec<(Rational, usize)> =
        (0..arr.n()).map(|i| (arr.evaluate(i, x), i)).collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    Permutation::new(keyed.into_iter().map(|(_, i)| i + 1).collect()).expect("labels")
}

/// The allowable sequence met by a vertical sweep.
pub fn sweep_sequence(arr: &PolyArrangement) -> Result<AllowableSequence> {
    let events = crossings(arr)?;
    let mut perms = vec![Permutation::identity(arr.n())];
    for x in crossing_abscissae(&events) {
        perms.push(order_right_of(arr, &x));
    }
    AllowableSequence::new(perms)
        .map_err(|e| Error::Verification(format!("sweep produced an invalid sequence: {e}")))
}

/// No crossing shared by three lines and no two crossings at one x.
pub fn is_x_simple(arr: &PolyArrangement) -> Result<bool> {
    Ok(sweep_sequence(arr)?.is_simple())
}

#[derive(Serialize, Deserialize)]
struct ArrangementFile {
    n: usize,
    #[serde(with = "rational::serde_str::vec")]
    columns: Vec<Rational>,
    #[serde(with = "rational::serde_str::matrix")]
    y: Vec<Vec<Rational>>,
    #[serde(with = "rational::serde_str::vec")]
    left_slopes: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    right_slopes: Vec<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    colors: Option<Vec<String>>,
}

impl PolyArrangement {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ArrangementFile {
            n: self.n(),
            columns: self.columns.clone(),
            y: self.y.clone(),
            left_slopes: self.left_slopes.clone(),
            right_slopes: self.right_slopes.clone(),
            colors: self.colors.clone(),
        })
        .expect("serializable")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let f: ArrangementFile =
            serde_json::from_value(v).map_err(|e| Error::Json(e.to_string()))?;
        if f.n != f.y.len() {
            return Err(Error::Structure(format!(
                "n = {} but {} rows",
                f.n,
                f.y.len()
            )));
        }
        let arr = Self::new(f.columns, f.y, f.left_slopes, f.right_slopes)?;
        match f.colors {
            Some(c) => arr.with_colors(c),
            None => Ok(arr),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json_value(v)
    }
}
