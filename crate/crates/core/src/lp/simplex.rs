//! Exact feasibility for systems `A x >= b` / `A x = b` over free rational
//! variables, with a Farkas certificate on infeasibility.
//!
//! Dictionary-form simplex with sparse rows. Free variables are pivoted into
//! the basis first and never leave; the remaining rows get an auxiliary
//! variable `t` and phase one minimizes it under Bland's rule.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub rel: Relation,
    pub rhs: Rational,
    pub label: String,
}

impl Constraint {
    pub fn ge(coeffs: Vec<(usize, Rational)>, rhs: Rational, label: impl Into<String>) -> Self {
        Constraint {
            coeffs,
            rel: Relation::Ge,
            rhs,
            label: label.into(),
        }
    }

    pub fn eq(coeffs: Vec<(usize, Rational)>, rhs: Rational, label: impl Into<String>) -> Self {
        Constraint {
            coeffs,
            rel: Relation::Eq,
            rhs,
            label: label.into(),
        }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (j, c)| acc + c * &x[*j])
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let v = self.lhs(x);
        match self.rel {
            Relation::Ge => v >= self.rhs,
            Relation::Eq => v == self.rhs,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.rel {
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        write!(f, "{} {op} {}", self.label, self.rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub var_names: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(var_names: Vec<String>) -> Self {
        LinearSystem {
            var_names,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn count(&self, rel: Relation) -> usize {
        self.constraints.iter().filter(|c| c.rel == rel).count()
    }

    /// True iff `x` satisfies every constraint exactly.
    pub fn check_witness(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars() && self.constraints.iter().all(|c| c.holds(x))
    }

    /// True iff `z` proves infeasibility: `z >= 0` on inequalities,
    /// `z^T A = 0` and `z^T b > 0`.
    pub fn check_farkas(&self, z: &[Rational]) -> bool {
        if z.len() != self.constraints.len() {
            return false;
        }
        let mut combo = vec![Rational::zero(); self.num_vars()];
        let mut rhs = Rational::zero();
        for (c, zi) in self.constraints.iter().zip(z) {
            if c.rel == Relation::Ge && zi.is_negative() {
                return false;
            }
            if zi.is_zero() {
                continue;
            }
            for (j, a) in &c.coeffs {
                combo[*j] += zi * a;
            }
            rhs += zi * &c.rhs;
        }
        combo.iter().all(Zero::is_zero) && rhs.is_positive()
    }
}

/// Solver-independent certificate check; errors only on a length mismatch.
pub fn verify_certificate(sys: &LinearSystem, z: &[Rational]) -> Result<bool> {
    if z.len() != sys.constraints.len() {
        return Err(Error::Structure(format!(
            "certificate has {} multipliers for {} constraints",
            z.len(),
            sys.constraints.len()
        )));
    }
    Ok(sys.check_farkas(z))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityOutcome {
    /// A point satisfying every constraint.
    Witness(Vec<Rational>),
    /// One multiplier per constraint, in input order.
    Certificate(Vec<Rational>),
}

type SparseRow = Vec<(usize, Rational)>;

struct Row {
    basic: usize,
    constant: Rational,
    coeffs: SparseRow,
}

fn coeff_of(row: &SparseRow, k: usize) -> Option<&Rational> {
    row.binary_search_by_key(&k, |(i, _)| *i)
        .ok()
        .map(|p| &row[p].1)
}

/// `row += factor * other`, both sorted by column.
fn axpy(row: &SparseRow, factor: &Rational, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut a, mut b) = (row.iter().peekable(), other.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((i, x)), Some((j, y))) => {
                if i < j {
                    out.push((*i, x.clone()));
                    a.next();
                } else if j < i {
                    out.push((*j, factor * y));
                    b.next();
                } else {
                    let v = x + factor * y;
                    if !v.is_zero() {
                        out.push((*i, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some((i, x)), None) => {
                out.push((*i, x.clone()));
                a.next();
            }
            (None, Some((j, y))) => {
                out.push((*j, factor * y));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

struct Dictionary {
    rows: Vec<Row>,
    /// Variables `0..free` are free; all others are nonnegative.
    free: usize,
}

impl Dictionary {
    /// Make nonbasic variable `e` basic in row `r`.
    fn pivot(&mut self, r: usize, e: usize) {
        let (alpha, mut coeffs, constant, leaving) = {
            let row = &mut self.rows[r];
            let alpha = coeff_of(&row.coeffs, e).expect("pivot on zero").clone();
            (alpha, std::mem::take(&mut row.coeffs), row.constant.clone(), row.basic)
        };
        // leaving = constant + alpha e + rest  =>  e = (leaving - constant - rest) / alpha
        let inv = alpha.recip();
        let neg_inv = -inv.clone();
        coeffs.retain(|(k, _)| *k != e);
        let mut new_coeffs: SparseRow = coeffs.into_iter().map(|(k, v)| (k, v * &neg_inv)).collect();
        let pos = new_coeffs
            .binary_search_by_key(&leaving, |(i, _)| *i)
            .unwrap_err();
        new_coeffs.insert(pos, (leaving, inv));
        let new_constant = &constant * &neg_inv;
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let c = match coeff_of(&row.coeffs, e) {
                Some(c) => c.clone(),
                None => continue,
            };
            row.coeffs.retain(|(k, _)| *k != e);
            row.coeffs = axpy(&row.coeffs, &c, &new_coeffs);
            row.constant += &c * &new_constant;
        }
        let row = &mut self.rows[r];
        row.basic = e;
        row.constant = new_constant;
        row.coeffs = new_coeffs;
    }

    fn is_free(&self, v: usize) -> bool {
        v < self.free
    }
}

/// Decide feasibility exactly. The returned witness or certificate is
/// re-checked before it is handed out.
pub fn solve_feasibility(sys: &LinearSystem) -> Result<FeasibilityOutcome> {
    let nv = sys.num_vars();
    // Expanded rows: (constraint index, sign).
    let mut origin = Vec::new();
    let mut rows = Vec::new();
    for (ci, c) in sys.constraints.iter().enumerate() {
        if c.coeffs.iter().any(|(j, _)| *j >= nv) {
            return Err(Error::Range(format!("constraint {} uses an unknown variable", c.label)));
        }
        let mut coeffs: SparseRow = Vec::new();
        let mut sorted = c.coeffs.clone();
        sorted.sort_by_key(|(j, _)| *j);
        for (j, a) in sorted {
            match coeffs.last_mut() {
                Some((k, v)) if *k == j => *v += a,
                _ => coeffs.push((j, a)),
            }
        }
        coeffs.retain(|(_, v)| !v.is_zero());
        let signs: &[i32] = match c.rel {
            Relation::Ge => &[1],
            Relation::Eq => &[1, -1],
        };
        for &s in signs {
            let slack = nv + rows.len();
            let (coeffs, constant) = if s > 0 {
                (coeffs.clone(), -c.rhs.clone())
            } else {
                (
                    coeffs.iter().map(|(j, v)| (*j, -v.clone())).collect(),
                    c.rhs.clone(),
                )
            };
            rows.push(Row {
                basic: slack,
                constant,
                coeffs,
            });
            origin.push((ci, s));
        }
    }
    let nrows = rows.len();
    let t = nv + nrows;
    let mut dict = Dictionary { rows, free: nv };

    // Free variables into the basis.
    for j in 0..nv {
        let best = dict
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !dict.is_free(r.basic) && coeff_of(&r.coeffs, j).is_some())
            .min_by_key(|(_, r)| r.coeffs.len())
            .map(|(i, _)| i);
        if let Some(r) = best {
            dict.pivot(r, j);
        }
    }

    let constrained: Vec<usize> = (0..nrows).filter(|&i| !dict.is_free(dict.rows[i].basic)).collect();
    let worst = constrained
        .iter()
        .copied()
        .filter(|&i| dict.rows[i].constant.is_negative())
        .min_by(|&a, &b| dict.rows[a].constant.cmp(&dict.rows[b].constant));

    if let Some(w) = worst {
        for &i in &constrained {
            let row = &mut dict.rows[i];
            row.coeffs.push((t, Rational::from_integer(1.into())));
        }
        dict.pivot(w, t);
        phase_one(&mut dict, &constrained, t);
    }

    let t_row = dict.rows.iter().position(|r| r.basic == t);
    let outcome = match t_row {
        Some(r) if dict.rows[r].constant.is_positive() => {
            let mut z = vec![Rational::zero(); sys.constraints.len()];
            for (k, d) in &dict.rows[r].coeffs {
                if *k >= nv && *k < t {
                    let (ci, s) = origin[*k - nv];
                    if s > 0 {
                        z[ci] += d;
                    } else {
                        z[ci] -= d;
                    }
                }
            }
            if !sys.check_farkas(&z) {
                return Err(Error::Verification("Farkas certificate failed its check".into()));
            }
            FeasibilityOutcome::Certificate(z)
        }
        _ => {
            let mut x = vec![Rational::zero(); nv];
            for row in &dict.rows {
                if row.basic < nv {
                    x[row.basic] = row.constant.clone();
                }
            }
            if !sys.check_witness(&x) {
                return Err(Error::Verification("feasible point failed its check".into()));
            }
            FeasibilityOutcome::Witness(x)
        }
    };
    Ok(outcome)
}

fn phase_one(dict: &mut Dictionary, constrained: &[usize], t: usize) {
    loop {
        let r_t = match dict.rows.iter().position(|r| r.basic == t) {
            Some(r) => r,
            None => return,
        };
        if dict.rows[r_t].constant.is_zero() {
            return;
        }
        let entering = dict.rows[r_t]
            .coeffs
            .iter()
            .filter(|(k, d)| !dict.is_free(*k) && d.is_negative())
            .map(|(k, _)| *k)
            .min();
        let e = match entering {
            Some(e) => e,
            None => return,
        };
        let mut best: Option<(Rational, usize, usize)> = None;
        for &i in constrained {
            let row = &dict.rows[i];
            if let Some(a) = coeff_of(&row.coeffs, e) {
                if a.is_negative() {
                    let ratio = &row.constant / -a;
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && row.basic < *b),
                    };
                    if better {
                        best = Some((ratio, i, row.basic));
                    }
                }
            }
        }
        let (_, r, _) = best.expect("t row bounds the ratio test");
        dict.pivot(r, e);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn c(v: &[(usize, i64)]) -> Vec<(usize, Rational)> {
        v.iter().map(|&(j, a)| (j, int(a))).collect()
    }

    #[test]
    fn empty_system_is_feasible() {
        let sys = LinearSystem::new(vec!["x".into()]);
        assert_eq!(solve_feasibility(&sys).unwrap(), FeasibilityOutcome::Witness(vec![int(0)]));
    }

    #[test]
    fn interval_feasible() {
        let mut sys = LinearSystem::new(vec!["x".into(), "y".into()]);
        sys.push(Constraint::ge(c(&[(0, 1)]), int(3), "x >= 3"));
        sys.push(Constraint::ge(c(&[(0, -1)]), int(-5), "x <= 5"));
        sys.push(Constraint::eq(c(&[(0, 1), (1, 1)]), int(0), "x + y = 0"));
        match solve_feasibility(&sys).unwrap() {
            FeasibilityOutcome::Witness(x) => assert!(sys.check_witness(&x)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn contradiction_gives_certificate() {
        let mut sys = LinearSystem::new(vec!["x".into(), "y".into()]);
        sys.push(Constraint::ge(c(&[(0, 1), (1, -1)]), int(1), "x - y >= 1"));
        sys.push(Constraint::ge(c(&[(1, 1), (0, -1)]), int(1), "y - x >= 1"));
        match solve_feasibility(&sys).unwrap() {
            FeasibilityOutcome::Certificate(z) => {
                assert!(sys.check_farkas(&z));
                assert_eq!(z, vec![int(1), int(1)]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn equality_contradiction() {
        let mut sys = LinearSystem::new(vec!["x".into()]);
        sys.push(Constraint::eq(c(&[(0, 1)]), int(0), "x = 0"));
        sys.push(Constraint::ge(c(&[(0, 1)]), int(1), "x >= 1"));
        assert!(matches!(solve_feasibility(&sys).unwrap(), FeasibilityOutcome::Certificate(_)));
    }

    #[test]
    fn cycle_of_strict_orders_is_infeasible() {
        let mut sys = LinearSystem::new((0..4).map(|i| format!("v{i}")).collect());
        for i in 0..4 {
            sys.push(Constraint::ge(c(&[(i, 1), ((i + 1) % 4, -1)]), int(1), "step"));
        }
        match solve_feasibility(&sys).unwrap() {
            FeasibilityOutcome::Certificate(z) => assert!(sys.check_farkas(&z)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn checkers_reject_bad_data() {
        let mut sys = LinearSystem::new(vec!["x".into()]);
        sys.push(Constraint::ge(c(&[(0, 1)]), int(1), "x >= 1"));
        assert!(!sys.check_witness(&[int(0)]));
        assert!(!sys.check_farkas(&[int(1)]));
        assert!(!sys.check_farkas(&[int(-1)]));
    }
}
