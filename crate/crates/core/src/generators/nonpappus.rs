//! The non-Pappus allowable sequence: the sweep of the dual of a Pappus
//! configuration, with the triple point of the Pappus line opened into a
//! small triangle.

use crate::arrgeom::{sweep_sequence, Point, PolyArrangement};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::seq::{AllowableSequence, Permutation};

fn meet(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Point {
    // Intersection of line p1p2 with line q1q2.
    let (a1, b1) = (&p2.y - &p1.y, &p1.x - &p2.x);
    let c1 = &a1 * &p1.x + &b1 * &p1.y;
    let (a2, b2) = (&q2.y - &q1.y, &q1.x - &q2.x);
    let c2 = &a2 * &q1.x + &b2 * &q1.y;
    let det = &a1 * &b2 - &a2 * &b1;
    Point::new((&c1 * &b2 - &c2 * &b1) / &det, (&a1 * &c2 - &a2 * &c1) / &det)
}

/// The nine points of a Pappus configuration: `A1..A3` on one line,
/// `B1..B3` on another, and `C_ij = A_iB_j ∩ A_jB_i` (collinear by
/// Pappus' theorem). Returned as `(A, B, C)` with `C = [C12, C13, C23]`.
pub fn pappus_points() -> ([Point; 3], [Point; 3], [Point; 3]) {
    let p = |x: i64, y: i64| Point::new(int(x), int(y));
    let a = [p(0, 0), p(5, 1), p(15, 3)];
    let b = [p(2, 9), p(7, 13), p(17, 21)];
    let c = |i: usize, j: usize| meet(&a[i], &b[j], &a[j], &b[i]);
    let cs = [c(0, 1), c(0, 2), c(1, 2)];
    (a, b, cs)
}

/// Labels `1..=9` of the points sorted by x, plus the labels of the three
/// `C` points.
fn labelled() -> (Vec<Point>, [usize; 3]) {
    let (a, b, c) = pappus_points();
    let mut pts: Vec<Point> = a.iter().chain(&b).chain(&c).cloned().collect();
    pts.sort();
    let label = |q: &Point| pts.iter().position(|p| p == q).unwrap() + 1;
    let cl = [label(&c[0]), label(&c[1]), label(&c[2])];
    (pts, cl)
}

/// Sweep of the dual lines `y = a x - b` of the Pappus points: nine triple
/// crossings, all other crossings simple and at distinct abscissae.
pub fn pappus_sequence() -> Result<AllowableSequence> {
    let (pts, _) = labelled();
    if pts.windows(2).any(|w| w[0].x == w[1].x) {
        return Err(Error::Verification("Pappus points share an x-coordinate".into()));
    }
    let lines: Vec<(Rational, Rational)> = pts.iter().map(|p| (p.x.clone(), -p.y.clone())).collect();
    let arr = PolyArrangement::from_lines(&lines, vec![int(0)])?;
    sweep_sequence(&arr)
}

/// The Pappus sweep with the triple crossing of the three `C` lines
/// replaced by three adjacent transpositions. No straight-line
/// arrangement has this sequence, since Pappus' theorem forces the
/// three lines to be concurrent.
pub fn non_pappus_sequence() -> Result<AllowableSequence> {
    let seq = pappus_sequence()?;
    let (_, c) = labelled();
    let mut target = c.to_vec();
    target.sort_unstable();
    let steps = seq.steps();
    let perms = seq.perms();
    let mut out: Vec<Permutation> = vec![perms[0].clone()];
    let mut found = false;
    for (k, step) in steps.iter().enumerate() {
        let before = &perms[k];
        let hit = step.blocks.iter().any(|&(lo, hi)| {
            let mut labels = before.as_slice()[lo - 1..hi].to_vec();
            labels.sort_unstable();
            labels == target
        });
        if hit {
            if step.blocks.len() != 1 {
                return Err(Error::Verification("Pappus triple shares its abscissa".into()));
            }
            let lo = step.blocks[0].0 - 1;
            let a = before.swapped(lo);
            let b = a.swapped(lo + 1);
            let c = b.swapped(lo);
            out.extend([a, b, c]);
            found = true;
        } else {
            out.push(perms[k + 1].clone());
        }
    }
    if !found {
        return Err(Error::Verification("no triple crossing for the Pappus line".into()));
    }
    AllowableSequence::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pappus_has_nine_triple_points() {
        let seq = pappus_sequence().unwrap();
        let steps = seq.steps();
        let triples = steps
            .iter()
            .flat_map(|s| s.blocks.iter())
            .filter(|&&(lo, hi)| hi - lo == 2)
            .count();
        assert_eq!(triples, 9);
        assert!(steps.iter().all(|s| s.blocks.len() == 1));
        assert!(steps.iter().flat_map(|s| s.blocks.iter()).all(|&(lo, hi)| hi - lo <= 2));
    }

    #[test]
    fn non_pappus_opens_one_triple() {
        let seq = non_pappus_sequence().unwrap();
        let triples = seq
            .steps()
            .iter()
            .flat_map(|s| s.blocks.clone())
            .filter(|&(lo, hi)| hi - lo == 2)
            .count();
        assert_eq!(triples, 8);
        assert_eq!(seq.n(), 9);
    }
}
