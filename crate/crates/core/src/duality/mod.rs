//! Generalized configurations of points (pseudo-lines through pairs of
//! marked points) and their correspondence with approaching arrangements.

mod primal;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrgeom::{crossings, is_approaching, sweep_sequence, Point, PolyArrangement};
use crate::error::{Error, Result};
use crate::lp::{decide_allowable, EncodingMode};
use crate::rational::{self, int, Rational};
use crate::seq::{AllowableSequence, Permutation, ValidationReport};

pub use primal::primalize;

/// Connecting pseudo-lines (indexed top to bottom at left infinity) and
/// marked points labeled `1..=n` by increasing x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub base: PolyArrangement,
    pub points: Vec<Point>,
    /// For each base line, the 1-based labels `(i, j)`, `i < j`, of the
    /// two points it connects.
    pub incidence: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigViolation {
    WrongLineCount { expected: usize, found: usize },
    BadPair { line: usize },
    PairRepeated { i: usize, j: usize },
    XNotIncreasing { point: usize },
    MissesPoint { line: usize, point: usize },
    WrongDegree { point: usize, lines: usize },
    MultipleCrossing { lines: Vec<usize>, at: Point },
    BaseInvalid(String),
}

impl fmt::Display for ConfigViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigViolation::WrongLineCount { expected, found } => {
                write!(f, "expected {expected} connecting lines, found {found}")
            }
            ConfigViolation::BadPair { line } => write!(f, "line {line} has a malformed point pair"),
            ConfigViolation::PairRepeated { i, j } => write!(f, "pair {{{i},{j}}} has two lines"),
            ConfigViolation::XNotIncreasing { point } => {
                write!(f, "point {point} does not lie strictly right of its predecessor")
            }
            ConfigViolation::MissesPoint { line, point } => {
                write!(f, "line {line} misses its point {point}")
            }
            ConfigViolation::WrongDegree { point, lines } => {
                write!(f, "{lines} lines pass through point {point}")
            }
            ConfigViolation::MultipleCrossing { lines, at } => {
                write!(f, "lines {lines:?} meet at {at}, which is not a marked point")
            }
            ConfigViolation::BaseInvalid(m) => write!(f, "connecting lines: {m}"),
        }
    }
}

impl GenConfig {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Straight-line configuration through the given points; the
    /// connecting lines are ordered by slope.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort();
        if pts.windows(2).any(|w| w[0].x == w[1].x) {
            return Err(Error::Precondition("points need distinct x-coordinates".into()));
        }
        let n = pts.len();
        let mut lines = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let s = (&pts[j].y - &pts[i].y) / (&pts[j].x - &pts[i].x);
                let b = &pts[i].y - &s * &pts[i].x;
                lines.push((s, b, (i + 1, j + 1)));
            }
        }
        lines.sort_by(|a, b| a.0.cmp(&b.0));
        if lines.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Precondition("two connecting lines are parallel".into()));
        }
        let columns = pts.iter().map(|p| p.x.clone()).collect();
        let sb: Vec<(Rational, Rational)> = lines.iter().map(|(s, b, _)| (s.clone(), b.clone())).collect();
        let base = PolyArrangement::from_lines(&sb, columns)?;
        Ok(GenConfig {
            base,
            points: pts,
            incidence: lines.into_iter().map(|(_, _, p)| p).collect(),
        })
    }

    pub fn to_json(&self) -> String {
        let file = ConfigFile {
            arrangement: self.base.to_json_value(),
            points: self.points.iter().map(|p| [p.x.clone(), p.y.clone()]).collect(),
            incidence: self.incidence.iter().map(|&(i, j)| [i, j]).collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: ConfigFile = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Ok(GenConfig {
            base: PolyArrangement::from_json_value(f.arrangement)?,
            points: f.points.into_iter().map(|[x, y]| Point::new(x, y)).collect(),
            incidence: f.incidence.into_iter().map(|[i, j]| (i, j)).collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ConfigFile {
    arrangement: serde_json::Value,
    #[serde(with = "point_list")]
    points: Vec<[Rational; 2]>,
    incidence: Vec<[usize; 2]>,
}

mod point_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[[Rational; 2]], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<[String; 2]> = v
            .iter()
            .map(|[x, y]| [rational::format(x), rational::format(y)])
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<[Rational; 2]>, D::Error> {
        let strs: Vec<[String; 2]> = Vec::deserialize(d)?;
        strs.into_iter()
            .map(|[x, y]| {
                Ok([
                    rational::parse(&x).map_err(serde::de::Error::custom)?,
                    rational::parse(&y).map_err(serde::de::Error::custom)?,
                ])
            })
            .collect()
    }
}

/// Check every configuration invariant and report all violations.
pub fn validate_config(cfg: &GenConfig) -> ValidationReport<ConfigViolation> {
    let mut report = ValidationReport::default();
    let n = cfg.n();
    let expected = n * n.saturating_sub(1) / 2;
    if cfg.base.n() != expected || cfg.incidence.len() != expected {
        report.push(ConfigViolation::WrongLineCount {
            expected,
            found: cfg.base.n().min(cfg.incidence.len()),
        });
    }
    for (k, w) in cfg.points.windows(2).enumerate() {
        if w[0].x >= w[1].x {
            report.push(ConfigViolation::XNotIncreasing { point: k + 2 });
        }
    }
    let mut seen = BTreeSet::new();
    for (g, &(i, j)) in cfg.incidence.iter().enumerate() {
        if !(1 <= i && i < j && j <= n) || g >= cfg.base.n() {
            report.push(ConfigViolation::BadPair { line: g + 1 });
            continue;
        }
        if !seen.insert((i, j)) {
            report.push(ConfigViolation::PairRepeated { i, j });
        }
        for k in [i, j] {
            let p = &cfg.points[k - 1];
            if cfg.base.evaluate(g, &p.x) != p.y {
                report.push(ConfigViolation::MissesPoint { line: g + 1, point: k });
            }
        }
    }
    for (k, p) in cfg.points.iter().enumerate() {
        let through = (0..cfg.base.n()).filter(|&g| cfg.base.evaluate(g, &p.x) == p.y).count();
        if through != n - 1 {
            report.push(ConfigViolation::WrongDegree { point: k + 1, lines: through });
        }
    }
    if !is_approaching(&cfg.base, false) {
        report.push(ConfigViolation::BaseInvalid("not an approaching arrangement".into()));
        return report;
    }
    match crossings(&cfg.base) {
        Ok(events) => {
            for e in events {
                let at = e.point();
                if e.lines.len() > 2 && !cfg.points.contains(&at) {
                    report.push(ConfigViolation::MultipleCrossing {
                        lines: e.lines.iter().map(|l| l + 1).collect(),
                        at,
                    });
                }
            }
        }
        Err(e) => report.push(ConfigViolation::BaseInvalid(e.to_string())),
    }
    report
}

/// The allowable sequence of point orders met while passing the connecting
/// lines in their order at left infinity.
pub fn config_sequence(cfg: &GenConfig) -> Result<AllowableSequence> {
    let report = validate_config(cfg);
    if !report.is_ok() {
        return Err(Error::Precondition(format!("invalid configuration: {report}")));
    }
    sequence_of_pairs(cfg.n(), &cfg.incidence)
}

fn sequence_of_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<AllowableSequence> {
    let mut cur = Permutation::identity(n);
    let mut perms = vec![cur.clone()];
    for (g, &(i, j)) in pairs.iter().enumerate() {
        let pos = cur.positions();
        if pos[i].abs_diff(pos[j]) != 1 {
            return Err(Error::InvalidSequence(format!(
                "line {} swaps {i} and {j}, which are not adjacent in {cur}",
                g + 1
            )));
        }
        cur = cur.swapped(pos[i].min(pos[j]));
        perms.push(cur.clone());
    }
    AllowableSequence::new(perms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualPath {
    /// Column values taken directly from the configuration.
    Direct,
    /// The direct values failed the sweep check; an LP realization of the
    /// sequence was used instead.
    LinearProgram,
}

#[derive(Clone, Debug)]
pub struct Dual {
    pub arrangement: PolyArrangement,
    pub path: DualPath,
}

/// Column values of the dual lines: at column `g` (one per connecting line,
/// in sweep order) point `k` gets `p_g(x_k) - y_k`, the height of line `g`
/// above the point. With `verbatim` the subtraction is omitted.
pub fn dual_values(cfg: &GenConfig, verbatim: bool) -> Result<Vec<Vec<Rational>>> {
    let seq = config_sequence(cfg)?;
    let h = seq.perms().len() - 1;
    Ok(cfg
        .points
        .iter()
        .map(|p| {
            (0..h)
                .map(|g| {
                    let v = cfg.base.evaluate(g, &p.x);
                    if verbatim {
                        v
                    } else {
                        v - &p.y
                    }
                })
                .collect()
        })
        .collect())
}

/// Approaching arrangement of `n` lines whose sweep is the configuration's
/// sequence. Columns sit at `x = 1..=h`; ray slopes are the point
/// x-coordinates.
pub fn dualize(cfg: &GenConfig) -> Result<Dual> {
    let seq = config_sequence(cfg)?;
    let h = seq.perms().len() - 1;
    if h == 0 {
        let arr = PolyArrangement::new(vec![int(0)], vec![vec![int(0)]], vec![int(0)], vec![int(0)])?;
        return Ok(Dual {
            arrangement: arr,
            path: DualPath::Direct,
        });
    }
    let y = dual_values(cfg, false)?;
    let slopes: Vec<Rational> = cfg.points.iter().map(|p| p.x.clone()).collect();
    let columns = (1..=h).map(|g| int(g as i64)).collect();
    let direct = PolyArrangement::new(columns, y, slopes.clone(), slopes)?;
    if is_approaching(&direct, false) && sweep_sequence(&direct).is_ok_and(|s| s == seq) {
        return Ok(Dual {
            arrangement: direct,
            path: DualPath::Direct,
        });
    }
    match decide_allowable(&seq, EncodingMode::Full)?.realization() {
        Some(r) => Ok(Dual {
            arrangement: r.arrangement.clone(),
            path: DualPath::LinearProgram,
        }),
        None => Err(Error::Verification(format!(
            "the sequence {seq} of a valid configuration has no approaching realization"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(int(x), int(y))).collect()
    }

    fn perms(v: &[&[usize]]) -> Vec<Permutation> {
        v.iter().map(|p| Permutation::new(p.to_vec()).unwrap()).collect()
    }

    #[test]
    fn worked_three_point_example() {
        let cfg = GenConfig::from_points(&pts(&[(0, 0), (1, 3), (2, 1)])).unwrap();
        assert!(validate_config(&cfg).is_ok());
        assert_eq!(cfg.incidence, vec![(2, 3), (1, 3), (1, 2)]);
        let seq = config_sequence(&cfg).unwrap();
        assert_eq!(seq.perms(), perms(&[&[1, 2, 3], &[1, 3, 2], &[3, 1, 2], &[3, 2, 1]]).as_slice());
        let vals = dual_values(&cfg, false).unwrap();
        // Columns in sweep order (p23, p13, p12); rows are points.
        let cols: Vec<Vec<Rational>> = (0..3).map(|g| vals.iter().map(|r| r[g].clone()).collect()).collect();
        assert_eq!(cols[0], vec![int(5), int(0), int(0)]);
        assert_eq!(cols[1], vec![int(0), ratio(-5, 2), int(0)]);
        assert_eq!(cols[2], vec![int(0), int(0), int(5)]);
        let dual = dualize(&cfg).unwrap();
        assert_eq!(dual.path, DualPath::Direct);
        assert_eq!(sweep_sequence(&dual.arrangement).unwrap(), seq);
    }

    #[test]
    fn two_points() {
        let cfg = GenConfig::from_points(&pts(&[(0, 0), (1, 1)])).unwrap();
        assert_eq!(config_sequence(&cfg).unwrap().perms().len(), 2);
        let dual = dualize(&cfg).unwrap().arrangement;
        assert_eq!(crossings(&dual).unwrap().len(), 1);
    }

    #[test]
    fn broken_configs_are_reported() {
        let mut cfg = GenConfig::from_points(&pts(&[(0, 0), (1, 3), (2, 1)])).unwrap();
        cfg.incidence.pop();
        assert!(!validate_config(&cfg).is_ok());
        assert!(GenConfig::from_points(&pts(&[(0, 0), (0, 3), (2, 1)])).is_err());
        let mut moved = GenConfig::from_points(&pts(&[(0, 0), (1, 3), (2, 1)])).unwrap();
        moved.points[1].y = int(4);
        assert!(!validate_config(&moved).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let cfg = GenConfig::from_points(&pts(&[(0, 0), (1, 3), (2, 1)])).unwrap();
        assert_eq!(GenConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }
}
