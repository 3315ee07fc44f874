use super::{is_approaching, is_x_simple, Point, PolyArrangement};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A triangular cell: three lines (0-based, sorted) and their pairwise
/// crossings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleCell {
    pub lines: [usize; 3],
    pub vertices: [Point; 3],
}

fn crossing_table(arr: &PolyArrangement) -> Result<Vec<Vec<Option<Rational>>>> {
    let n = arr.n();
    let mut xs = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = arr.crossing_x(i, j)?;
            xs[i][j] = Some(x.clone());
            xs[j][i] = Some(x);
        }
    }
    Ok(xs)
}

fn check_triple(
    arr: &PolyArrangement,
    xs: &[Vec<Option<Rational>>],
    a: usize,
    b: usize,
    c: usize,
) -> Option<TriangleCell> {
    let x = |i: usize, j: usize| xs[i][j].as_ref().expect("pair crossing");
    let pab = Point::new(x(a, b).clone(), arr.evaluate(a, x(a, b)));
    let pac = Point::new(x(a, c).clone(), arr.evaluate(a, x(a, c)));
    let pbc = Point::new(x(b, c).clone(), arr.evaluate(b, x(b, c)));
    if pab == pac || pab == pbc || pac == pbc {
        return None;
    }
    // Each edge: the owning line and the two other triangle lines.
    for (own, p, q) in [(a, b, c), (b, a, c), (c, a, b)] {
        let (lo, hi) = {
            let (u, v) = (x(own, p), x(own, q));
            if u < v {
                (u, v)
            } else {
                (v, u)
            }
        };
        let blocked = (0..arr.n())
            .filter(|&l| l != a && l != b && l != c)
            .any(|l| {
                let t = x(own, l);
                t > lo && t < hi
            });
        if blocked {
            return None;
        }
    }
    Some(TriangleCell {
        lines: [a, b, c],
        vertices: [pab, pac, pbc],
    })
}

/// Check that lines `a, b, c` bound a triangular cell: the three crossings
/// are distinct and no other line crosses the open edges (hence none enters
/// the interior). Works for non-simple arrangements as well.
pub fn verify_triangle_cell(
    arr: &PolyArrangement,
    a: usize,
    b: usize,
    c: usize,
) -> Result<Option<TriangleCell>> {
    let mut t = [a, b, c];
    t.sort_unstable();
    if t[0] == t[1] || t[1] == t[2] || t[2] >= arr.n() {
        return Err(Error::Range("need three distinct lines".into()));
    }
    let xs = crossing_table(arr)?;
    Ok(check_triple(arr, &xs, t[0], t[1], t[2]))
}

/// All triangular cells of a strictly approaching x-simple arrangement.
pub fn triangle_cells(arr: &PolyArrangement) -> Result<Vec<TriangleCell>> {
    if !is_approaching(arr, true) {
        return Err(Error::Precondition("needs a strictly approaching arrangement".into()));
    }
    if !is_x_simple(arr)? {
        return Err(Error::NotSimple);
    }
    let xs = crossing_table(arr)?;
    let n = arr.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Some(t) = check_triple(arr, &xs, a, b, c) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrgeom::perturb_to_simple;
    use crate::rational::int;

    fn lines(defs: &[(i64, i64)], cols: &[i64]) -> PolyArrangement {
        let l: Vec<_> = defs.iter().map(|&(a, b)| (int(a), int(b))).collect();
        PolyArrangement::from_lines(&l, cols.iter().map(|&c| int(c)).collect()).unwrap()
    }

    #[test]
    fn three_lines_one_triangle() {
        let arr = lines(&[(-1, 3), (0, 0), (2, 0)], &[0, 4]);
        let t = triangle_cells(&arr).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].lines, [0, 1, 2]);
    }

    #[test]
    fn pencil_needs_perturbation() {
        let pencil = lines(&[(-1, 0), (0, 0), (1, 0)], &[-1, 1]);
        assert_eq!(triangle_cells(&pencil), Err(Error::NotSimple));
        let p = perturb_to_simple(&pencil).unwrap();
        assert_eq!(triangle_cells(&p).unwrap().len(), 1);
    }

    #[test]
    fn blocked_triangle_is_rejected() {
        // y = 0, y = x, y = -x + 4 bound a triangle; y = 1 cuts through it.
        let arr = lines(&[(-1, 4), (0, 1), (0, 0), (1, 0)], &[0, 4]);
        let arr = {
            // give the two horizontals distinct slopes, keeping the order
            let (cols, mut y, mut l, mut r, _) = arr.into_parts();
            y[2] = cols.iter().map(|x| x.clone() * crate::rational::ratio(1, 100)).collect();
            l[2] = crate::rational::ratio(1, 100);
            r[2] = crate::rational::ratio(1, 100);
            PolyArrangement::new(cols, y, l, r).unwrap()
        };
        assert!(verify_triangle_cell(&arr, 0, 2, 3).unwrap().is_none());
    }
}
