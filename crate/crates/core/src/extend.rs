//! Adding pseudo-lines to an approaching arrangement while keeping it
//! approaching.

use num_traits::{One, Signed, Zero};

use crate::arrgeom::{is_approaching, validate_approaching, Point, PolyArrangement};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extreme {
    /// New line first in the order at left infinity.
    Top,
    /// New line last in the order at left infinity.
    Bottom,
}

fn combine(u: &[Rational], a: &Rational, v: &[Rational], b: &Rational) -> Vec<Rational> {
    u.iter().zip(v).map(|(p, q)| p * a + q * b).collect()
}

/// Insert `lambda * l_i + (1 - lambda) * l_{i+1}` as the new line `i + 1`
/// (0-based indices).
pub fn convex_combination(arr: &PolyArrangement, i: usize, lambda: &Rational) -> Result<PolyArrangement> {
    if i + 1 >= arr.n() {
        return Err(Error::Range(format!("no line after line {}", i + 1)));
    }
    if lambda.is_negative() || lambda > &Rational::one() {
        return Err(Error::Range("lambda must lie in [0, 1]".into()));
    }
    if !is_approaching(arr, false) {
        return Err(Error::Precondition("arrangement is not approaching".into()));
    }
    let mu = Rational::one() - lambda;
    let row = combine(arr.row(i), lambda, arr.row(i + 1), &mu);
    let l = &arr.left_slopes()[i] * lambda + &arr.left_slopes()[i + 1] * &mu;
    let r = &arr.right_slopes()[i] * lambda + &arr.right_slopes()[i + 1] * &mu;
    let mut out = arr.clone();
    out.insert_line(i + 1, row, l, r);
    check(out)
}

/// Add `l_n + delta (l_n - l_{n-1})` below all lines, or its mirror
/// `l_1 + delta (l_1 - l_2)` above all lines.
pub fn extend_extreme(arr: &PolyArrangement, delta: &Rational, side: Extreme) -> Result<PolyArrangement> {
    if arr.n() < 2 {
        return Err(Error::Precondition("need at least two lines".into()));
    }
    if !delta.is_positive() {
        return Err(Error::Range("delta must be positive".into()));
    }
    if !is_approaching(arr, false) {
        return Err(Error::Precondition("arrangement is not approaching".into()));
    }
    let (edge, inner, at) = match side {
        Extreme::Bottom => (arr.n() - 1, arr.n() - 2, arr.n()),
        Extreme::Top => (0, 1, 0),
    };
    let a = Rational::one() + delta;
    let b = -delta.clone();
    let row = combine(arr.row(edge), &a, arr.row(inner), &b);
    let l = &arr.left_slopes()[edge] * &a + &arr.left_slopes()[inner] * &b;
    let r = &arr.right_slopes()[edge] * &a + &arr.right_slopes()[inner] * &b;
    let mut out = arr.clone();
    out.insert_line(at, row, l, r);
    check(out)
}

fn check(out: PolyArrangement) -> Result<PolyArrangement> {
    if !is_approaching(&out, false) {
        return Err(Error::Verification("extension is not approaching".into()));
    }
    Ok(out)
}

/// Add a pseudo-line through `p` and `q`. Every line is first translated
/// vertically through `p`; the new line is placed in that pencil so that it
/// hits `q`, then the translations are undone.
pub fn levi_extension(arr: &PolyArrangement, p: &Point, q: &Point) -> Result<PolyArrangement> {
    if p.x == q.x {
        return Err(Error::Precondition("p and q need different x-coordinates".into()));
    }
    if !is_approaching(arr, true) {
        return Err(Error::Precondition("arrangement must be strictly approaching".into()));
    }
    let (p, q) = if p.x < q.x { (p, q) } else { (q, p) };
    let base = arr.with_columns(&[p.x.clone(), q.x.clone()]);
    let n = base.n();
    let shifts: Vec<Rational> = (0..n).map(|i| &p.y - base.evaluate(i, &p.x)).collect();
    let mut pencil = base.clone();
    for (row, t) in pencil.rows_mut().iter_mut().zip(&shifts) {
        for v in row.iter_mut() {
            *v += t;
        }
    }
    // Right of p the pencil is ordered bottom to top by index.
    let at_q: Vec<Rational> = (0..n).map(|i| pencil.evaluate(i, &q.x)).collect();

    let mut copy_of = None;
    let (extended, k) = if n == 1 {
        let gap = &q.y - &at_q[0];
        if gap.is_zero() {
            copy_of = Some(0);
            (convex_duplicate(&pencil, 0), 1)
        } else {
            let s = &gap / (&q.x - &p.x);
            let row = pencil
                .columns()
                .iter()
                .zip(pencil.row(0))
                .map(|(x, v)| v + &s * (x - &p.x))
                .collect();
            let l = &pencil.left_slopes()[0] + &s;
            let r = &pencil.right_slopes()[0] + &s;
            let at = if s.is_positive() { 1 } else { 0 };
            let mut out = pencil.clone();
            out.insert_line(at, row, l, r);
            (out, at)
        }
    } else if let Some(i) = at_q.iter().position(|v| v == &q.y) {
        copy_of = Some(i);
        (convex_duplicate(&pencil, i), i + 1)
    } else if q.y > at_q[n - 1] {
        let delta = (&q.y - &at_q[n - 1]) / (&at_q[n - 1] - &at_q[n - 2]);
        (extend_extreme(&pencil, &delta, Extreme::Bottom)?, n)
    } else if q.y < at_q[0] {
        let delta = (&at_q[0] - &q.y) / (&at_q[1] - &at_q[0]);
        (extend_extreme(&pencil, &delta, Extreme::Top)?, 0)
    } else {
        let i = (0..n - 1)
            .find(|&i| at_q[i] < q.y && q.y < at_q[i + 1])
            .expect("q lies strictly between two pencil lines");
        let lambda = (&at_q[i + 1] - &q.y) / (&at_q[i + 1] - &at_q[i]);
        (convex_combination(&pencil, i, &lambda)?, i + 1)
    };

    // Undo the translations of the old lines; line k stays put.
    let mut out = extended;
    for (idx, row) in out.rows_mut().iter_mut().enumerate() {
        if idx == k {
            continue;
        }
        let old = if idx < k { idx } else { idx - 1 };
        for v in row.iter_mut() {
            *v -= &shifts[old];
        }
    }
    if out.evaluate(k, &p.x) != p.y || out.evaluate(k, &q.x) != q.y {
        return Err(Error::Verification("new line misses p or q".into()));
    }
    match copy_of {
        None => check(out),
        Some(i) => {
            // A copy is a vertical translate of line i and never meets it;
            // every other pair must still approach.
            let (a, b) = (i + 1, k + 1);
            let report = validate_approaching(&out, false);
            if report.violations.iter().all(|v| v.lines() == (a, b)) {
                Ok(out)
            } else {
                Err(Error::Verification("extension is not approaching".into()))
            }
        }
    }
}

fn convex_duplicate(arr: &PolyArrangement, i: usize) -> PolyArrangement {
    let mut out = arr.clone();
    out.insert_line(
        i + 1,
        arr.row(i).to_vec(),
        arr.left_slopes()[i].clone(),
        arr.right_slopes()[i].clone(),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn lines(defs: &[(Rational, Rational)]) -> PolyArrangement {
        PolyArrangement::from_lines(defs, vec![int(-2), int(0), int(2)]).unwrap()
    }

    fn slope_intercept(arr: &PolyArrangement, i: usize) -> (Rational, Rational) {
        let b = arr.evaluate(i, &int(0));
        (arr.evaluate(i, &int(1)) - &b, b)
    }

    #[test]
    fn midpoint_line() {
        let arr = lines(&[(int(0), int(0)), (int(2), int(0))]);
        let out = convex_combination(&arr, 0, &ratio(1, 2)).unwrap();
        assert_eq!(slope_intercept(&out, 1), (int(1), int(0)));
        let dup = convex_combination(&arr, 0, &int(0)).unwrap();
        assert_eq!(dup.row(1), arr.row(1));
        assert!(convex_combination(&arr, 0, &int(2)).is_err());
    }

    #[test]
    fn extreme_extensions() {
        let arr = lines(&[(int(-1), int(0)), (int(1), int(0))]);
        let bottom = extend_extreme(&arr, &int(1), Extreme::Bottom).unwrap();
        assert_eq!(slope_intercept(&bottom, 2), (int(3), int(0)));
        let top = extend_extreme(&arr, &int(1), Extreme::Top).unwrap();
        assert_eq!(slope_intercept(&top, 0), (int(-3), int(0)));
        assert!(extend_extreme(&arr, &int(0), Extreme::Top).is_err());
    }

    #[test]
    fn levi_copy_case() {
        let arr = lines(&[(int(-1), int(0)), (int(1), int(0))]);
        let p = Point::new(int(0), int(-2));
        let q = Point::new(int(2), int(0));
        let out = levi_extension(&arr, &p, &q).unwrap();
        assert_eq!(out.n(), 3);
        assert_eq!(slope_intercept(&out, 2), (int(1), int(-2)));
        assert!(!is_approaching(&out, false));
        assert_eq!(out.evaluate(2, &int(7)) - out.evaluate(1, &int(7)), int(-2));
    }

    #[test]
    fn levi_steeper_case() {
        let arr = lines(&[(int(-1), int(0)), (int(1), int(0))]);
        let p = Point::new(int(0), int(-2));
        let q = Point::new(int(2), int(1));
        let out = levi_extension(&arr, &p, &q).unwrap();
        assert_eq!(slope_intercept(&out, 2), (ratio(3, 2), int(-2)));
        assert!(is_approaching(&out, true));
        // Order of arguments does not matter.
        assert_eq!(levi_extension(&arr, &q, &p).unwrap(), out);
    }

    #[test]
    fn levi_between_and_below() {
        let arr = lines(&[(int(-1), int(0)), (int(0), int(1)), (int(1), int(0))]);
        for q in [Point::new(int(3), int(0)), Point::new(int(3), int(-20)), Point::new(int(-3), int(7))] {
            let p = Point::new(int(1), int(5));
            let out = levi_extension(&arr, &p, &q).unwrap();
            assert_eq!(out.n(), 4);
            assert!(is_approaching(&out, true));
        }
    }

    #[test]
    fn levi_single_line_and_equal_x() {
        let arr = lines(&[(int(0), int(0))]);
        let out = levi_extension(&arr, &Point::new(int(0), int(0)), &Point::new(int(1), int(1))).unwrap();
        assert_eq!(slope_intercept(&out, 1), (int(1), int(0)));
        assert!(levi_extension(&arr, &Point::new(int(0), int(0)), &Point::new(int(0), int(1))).is_err());
    }
}
