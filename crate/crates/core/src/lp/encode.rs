//! Linear encodings of sweep snapshots as constraint systems over the
//! values `y[i][c]` of each line at each helper column.

use std::fmt;

use num_traits::One;

use super::simplex::{Constraint, LinearSystem, Relation};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::seq::{validate_subcandidate, AllowableSequence, SubSequenceCandidate};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EncodingMode {
    /// Approaching constraints for every pair of lines.
    #[default]
    Full,
    /// Approaching constraints only for lines with consecutive indices; the
    /// rest follow by transitivity of `y[i][c+1] - y[i][c] <= y[i+1][c+1] - y[i+1][c]`.
    Reduced,
}

impl std::str::FromStr for EncodingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(EncodingMode::Full),
            "reduced" => Ok(EncodingMode::Reduced),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown encoding mode {s:?}"),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    Ordering,
    Coincidence,
    Approaching,
    Anchor,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConstraintKind::Ordering => "ordering",
            ConstraintKind::Coincidence => "coincidence",
            ConstraintKind::Approaching => "approaching",
            ConstraintKind::Anchor => "anchor",
        };
        f.write_str(s)
    }
}

/// The vertical order at one helper column: groups of lines (labels
/// `1..=n`) listed top to bottom. Lines in a group share one point;
/// consecutive groups are separated by at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSpec {
    pub groups: Vec<Vec<usize>>,
}

impl ColumnSpec {
    pub fn strict(order: &[usize]) -> Self {
        ColumnSpec {
            groups: order.iter().map(|&l| vec![l]).collect(),
        }
    }

    pub fn is_strict(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }
}

#[derive(Clone, Debug)]
pub struct Encoding {
    pub n: usize,
    pub columns: Vec<ColumnSpec>,
    pub system: LinearSystem,
    pub kinds: Vec<ConstraintKind>,
    pub mode: EncodingMode,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub variables: usize,
    pub ordering: usize,
    pub coincidence: usize,
    pub approaching: usize,
    pub anchor: usize,
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} variables, {} ordering, {} coincidence, {} approaching, {} anchor",
            self.variables, self.ordering, self.coincidence, self.approaching, self.anchor
        )
    }
}

impl Encoding {
    pub fn m(&self) -> usize {
        self.columns.len()
    }

    /// Index of the variable `y[line][column]`, both 0-based.
    pub fn var(&self, line: usize, column: usize) -> usize {
        line * self.m() + column
    }

    pub fn census(&self) -> Census {
        let mut c = Census {
            variables: self.system.num_vars(),
            ..Census::default()
        };
        for k in &self.kinds {
            match k {
                ConstraintKind::Ordering => c.ordering += 1,
                ConstraintKind::Coincidence => c.coincidence += 1,
                ConstraintKind::Approaching => c.approaching += 1,
                ConstraintKind::Anchor => c.anchor += 1,
            }
        }
        c
    }

    /// Unpack a witness into `y[line][column]`.
    pub fn values(&self, witness: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|i| (0..self.m()).map(|c| witness[self.var(i, c)].clone()).collect())
            .collect()
    }
}

/// Build the system for an arbitrary list of column layouts.
/// `approach_gap` is the right-hand side of each approaching constraint:
/// 0 for the plain encoding, 1 to force strictly approaching solutions.
pub fn encode_columns(
    n: usize,
    columns: Vec<ColumnSpec>,
    mode: EncodingMode,
    approach_gap: &Rational,
) -> Result<Encoding> {
    let m = columns.len();
    if n == 0 || m == 0 {
        return Err(Error::Structure("empty encoding".into()));
    }
    for (c, col) in columns.iter().enumerate() {
        let mut seen: Vec<usize> = col.groups.iter().flatten().copied().collect();
        seen.sort_unstable();
        if seen != (1..=n).collect::<Vec<_>>() {
            return Err(Error::Structure(format!("column {} is not an order of 1..{n}", c + 1)));
        }
    }
    let var = |i: usize, c: usize| i * m + c;
    let names = (0..n)
        .flat_map(|i| (0..m).map(move |c| format!("y[{}][{}]", i + 1, c + 1)))
        .collect();
    let mut system = LinearSystem::new(names);
    let mut kinds = Vec::new();
    let one = Rational::one();
    let minus = -Rational::one();

    for (c, col) in columns.iter().enumerate() {
        for g in &col.groups {
            for w in g.windows(2) {
                system.push(Constraint::eq(
                    vec![(var(w[0] - 1, c), one.clone()), (var(w[1] - 1, c), minus.clone())],
                    int(0),
                    format!("col {}: {} = {}", c + 1, w[0], w[1]),
                ));
                kinds.push(ConstraintKind::Coincidence);
            }
        }
        for w in col.groups.windows(2) {
            let (a, b) = (*w[0].last().unwrap(), w[1][0]);
            system.push(Constraint::ge(
                vec![(var(a - 1, c), one.clone()), (var(b - 1, c), minus.clone())],
                int(1),
                format!("col {}: {} above {}", c + 1, a, b),
            ));
            kinds.push(ConstraintKind::Ordering);
        }
    }

    for c in 0..m.saturating_sub(1) {
        let pairs: Vec<(usize, usize)> = match mode {
            EncodingMode::Full => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
            EncodingMode::Reduced => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        };
        for (i, j) in pairs {
            system.push(Constraint::ge(
                vec![
                    (var(i, c), one.clone()),
                    (var(j, c), minus.clone()),
                    (var(i, c + 1), minus.clone()),
                    (var(j, c + 1), one.clone()),
                ],
                approach_gap.clone(),
                format!("cols {}-{}: {} approaches {}", c + 1, c + 2, i + 1, j + 1),
            ));
            kinds.push(ConstraintKind::Approaching);
        }
    }

    system.push(Constraint::eq(vec![(var(0, 0), one)], int(0), "anchor y[1][1] = 0"));
    kinds.push(ConstraintKind::Anchor);

    debug_assert_eq!(kinds.len(), system.constraints.len());
    debug_assert!(kinds
        .iter()
        .zip(&system.constraints)
        .all(|(k, c)| (c.rel == Relation::Eq) == matches!(k, ConstraintKind::Coincidence | ConstraintKind::Anchor)));
    Ok(Encoding {
        n,
        columns,
        system,
        kinds,
        mode,
    })
}

/// Encode snapshots of a sweep (identity prepended when absent).
pub fn encode(sub: &SubSequenceCandidate, mode: EncodingMode) -> Result<Encoding> {
    encode_with_gap(sub, mode, &int(0))
}

/// As [`encode`], with every approaching constraint demanding a decrease of
/// at least `gap`; any positive gap selects strictly approaching solutions.
pub fn encode_with_gap(sub: &SubSequenceCandidate, mode: EncodingMode, gap: &Rational) -> Result<Encoding> {
    let report = validate_subcandidate(sub)?;
    if !report.is_ok() {
        return Err(Error::InvalidSequence(report.to_string()));
    }
    let cols = sub
        .with_identity()
        .iter()
        .map(|p| ColumnSpec::strict(p.as_slice()))
        .collect();
    encode_columns(sub.n(), cols, mode, gap)
}

/// Encode an allowable sequence exactly: one strict column per permutation
/// and, between consecutive ones, a column where each reversed block meets
/// in a point. Solutions are arrangements with exactly this sweep.
pub fn encode_allowable(seq: &AllowableSequence, mode: EncodingMode) -> Result<Encoding> {
    let perms = seq.perms();
    let mut cols = vec![ColumnSpec::strict(perms[0].as_slice())];
    for (k, step) in seq.steps().iter().enumerate() {
        let before = perms[k].as_slice();
        let mut groups = Vec::new();
        let mut pos = 0;
        for &(lo, hi) in &step.blocks {
            while pos + 1 < lo {
                groups.push(vec![before[pos]]);
                pos += 1;
            }
            groups.push(before[lo - 1..hi].to_vec());
            pos = hi;
        }
        while pos < before.len() {
            groups.push(vec![before[pos]]);
            pos += 1;
        }
        cols.push(ColumnSpec { groups });
        cols.push(ColumnSpec::strict(perms[k + 1].as_slice()));
    }
    encode_columns(seq.n(), cols, mode, &int(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::Permutation;

    fn sub(perms: &[&[usize]]) -> SubSequenceCandidate {
        SubSequenceCandidate::new(perms.iter().map(|p| Permutation::new(p.to_vec()).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn census_two_lines() {
        let e = encode(&sub(&[&[1, 2], &[2, 1]]), EncodingMode::Full).unwrap();
        let c = e.census();
        assert_eq!((c.variables, c.ordering, c.approaching, c.anchor), (4, 2, 1, 1));
    }

    #[test]
    fn census_pencil_three_lines() {
        let e = encode(&sub(&[&[1, 2, 3], &[3, 2, 1]]), EncodingMode::Full).unwrap();
        let c = e.census();
        assert_eq!((c.variables, c.ordering, c.approaching, c.anchor), (6, 4, 3, 1));
        let r = encode(&sub(&[&[1, 2, 3], &[3, 2, 1]]), EncodingMode::Reduced).unwrap();
        assert_eq!(r.census().approaching, 2);
    }

    #[test]
    fn identity_is_prepended() {
        let e = encode(&sub(&[&[2, 1, 3]]), EncodingMode::Full).unwrap();
        assert_eq!(e.m(), 2);
        assert_eq!(e.columns[0], ColumnSpec::strict(&[1, 2, 3]));
    }

    #[test]
    fn full_census_growth() {
        // n lines, m columns: n*m variables and C(n,2)*(m-1) approaching rows.
        let n = 5;
        let seq = AllowableSequence::from_word(n, &[1, 2, 1, 3, 2, 1, 4, 3, 2, 1]).unwrap();
        let e = encode(&seq.as_candidate(), EncodingMode::Full).unwrap();
        let m = 11;
        assert_eq!(e.census().variables, n * m);
        assert_eq!(e.census().approaching, 10 * (m - 1));
        assert_eq!(e.census().ordering, (n - 1) * m);
    }

    #[test]
    fn invalid_candidate_is_refused() {
        assert!(encode(&sub(&[&[1, 2, 3], &[3, 2, 1], &[2, 3, 1]]), EncodingMode::Full).is_err());
    }

    #[test]
    fn allowable_encoding_has_crossing_columns() {
        let seq = AllowableSequence::new(vec![
            Permutation::new(vec![1, 2, 3]).unwrap(),
            Permutation::new(vec![3, 2, 1]).unwrap(),
        ])
        .unwrap();
        let e = encode_allowable(&seq, EncodingMode::Full).unwrap();
        assert_eq!(e.m(), 3);
        assert_eq!(e.columns[1].groups, vec![vec![1, 2, 3]]);
        assert_eq!(e.census().coincidence, 2);
    }
}
