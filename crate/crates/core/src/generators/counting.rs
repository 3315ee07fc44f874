//! The two counting families: independent above/below choices at
//! designated crossings, and independent crossing orders near each
//! integer abscissa.

use num_traits::Zero;

use crate::arrgeom::{is_approaching, PolyArrangement};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, sqrt_upper, Rational};
use crate::seq::Permutation;

/// Designated pairs `(i, j)` with `i, j >= 1`, `i + j <= n`.
pub fn bit_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n)
        .flat_map(|i| (1..=n - i).map(move |j| (i, j)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct BitArrangement {
    pub n: usize,
    pub arrangement: PolyArrangement,
    /// Designated pairs, in the order of the decision bits.
    pub pairs: Vec<(usize, usize)>,
}

impl BitArrangement {
    pub fn horizontal(&self, k: usize) -> usize {
        k - 1
    }

    pub fn parabola(&self, i: usize) -> usize {
        self.n + i - 1
    }

    pub fn vertical(&self, j: usize) -> usize {
        2 * self.n + j - 1
    }

    /// Name of line `idx`: `h<k>`, `p<i>` or `v<j>`.
    pub fn role(&self, idx: usize) -> String {
        let (tag, k) = match idx / self.n {
            0 => ('h', idx + 1),
            1 => ('p', idx - self.n + 1),
            _ => ('v', idx - 2 * self.n + 1),
        };
        format!("{tag}{k}")
    }
}

/// `3n` approaching pseudo-lines: almost horizontal lines near
/// `y = k^2`, polygonal parabolas near `y = (x + i)^2`, and steep lines
/// near `x = j`. For each designated pair the parabola `p_i` passes above
/// the crossing of `h_{i+j}` and `v_j` when its bit is set, below
/// otherwise.
pub fn bit_family(n: usize, bits: &[bool]) -> Result<BitArrangement> {
    let pairs = bit_pairs(n);
    if n == 0 || bits.len() != pairs.len() {
        return Err(Error::Structure(format!(
            "n = {n} needs {} decision bits, got {}",
            pairs.len(),
            bits.len()
        )));
    }
    let e = ratio(1, 4);
    let eps = &e * &e;
    let nn = n as i64;
    let mut columns = vec![int(0), int(nn + 1)];
    for j in 1..=nn {
        columns.extend([int(j) - &e, int(j), int(j) + &e]);
    }
    columns.sort();

    let tilt = &eps / int(16 * nn * (nn + 1));
    let mut y = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for k in 1..=nn {
        let sigma = &tilt * int(k);
        let base = int(k * k) - &eps / int(2);
        y.push(columns.iter().map(|x| &base + &sigma * x).collect());
        left.push(sigma.clone());
        right.push(sigma);
    }
    for i in 1..=nn {
        let row = columns
            .iter()
            .map(|x| {
                let above = x.is_integer()
                    && pairs.iter().zip(bits).any(|(&(pi, pj), &b)| {
                        b && pi as i64 == i && int(pj as i64) == *x
                    });
                let v = (x + int(i)) * (x + int(i));
                if above {
                    v
                } else {
                    v - &eps
                }
            })
            .collect();
        y.push(row);
        left.push(int(2 * i));
        right.push(int(2 * (nn + 1 + i)));
    }
    let steep = int(1024 * (nn + 1) * (2 * nn + 1) * (2 * nn + 1));
    for j in 1..=nn {
        let m = &steep + int(j);
        y.push(columns.iter().map(|x| &m * (x - int(j))).collect());
        left.push(m.clone());
        right.push(m);
    }
    let arrangement = PolyArrangement::new(columns, y, left, right)?;
    if !is_approaching(&arrangement, true) {
        return Err(Error::Verification("family member is not strictly approaching".into()));
    }
    Ok(BitArrangement {
        n,
        arrangement,
        pairs,
    })
}

/// Read the decision bits back: is `p_i` above the crossing of `h_{i+j}`
/// and `v_j`?
pub fn bit_decode(m: &BitArrangement) -> Result<Vec<bool>> {
    m.pairs
        .iter()
        .map(|&(i, j)| {
            let (h, v, p) = (m.horizontal(i + j), m.vertical(j), m.parabola(i));
            let x = m.arrangement.crossing_x(h, v)?;
            let y = m.arrangement.evaluate(h, &x);
            Ok(m.arrangement.evaluate(p, &x) > y)
        })
        .collect()
}

/// Every choice vector: one permutation of `[n - j]` for `j = 1..n-1`.
pub fn superfactorial_choices(n: usize) -> Vec<Vec<Permutation>> {
    fn perms_of(k: usize) -> Vec<Permutation> {
        fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if left.is_empty() {
                out.push(Permutation::new(cur.clone()).expect("permutation"));
                return;
            }
            for idx in 0..left.len() {
                let v = left.remove(idx);
                cur.push(v);
                rec(cur, left, out);
                cur.pop();
                left.insert(idx, v);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (1..=k).collect(), &mut out);
        out
    }
    let mut all = vec![Vec::new()];
    for j in 1..n {
        let options = perms_of(n - j);
        all = all
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    all
}

/// Horizontal lines `y = k^2` and polygonal parabolas `y = (x + i)^2 - eps`
/// where, near each `x = j`, `p_i` is replaced by a segment of slope
/// `2(i + j)` crossing `h_{i+j}` at `x = j - alpha_i`. The offsets follow
/// `choices[j - 1]`: `alpha` increases along the permutation.
pub fn superfactorial_family(n: usize, choices: &[Permutation]) -> Result<PolyArrangement> {
    if n == 0 || choices.len() != n - 1 {
        return Err(Error::Structure(format!("n = {n} needs {} permutations", n.saturating_sub(1))));
    }
    for (j, p) in choices.iter().enumerate() {
        if p.n() != n - (j + 1) {
            return Err(Error::Structure(format!(
                "choice {} must permute 1..{}",
                j + 1,
                n - j - 1
            )));
        }
    }
    let nn = n as i64;
    let eps = ratio(1, 16);
    let unit = Rational::new(1.into(), (32 * nn * (nn + 1)).into());
    // splice[i-1][j-1] = Some((half-width, alpha))
    let mut splice: Vec<Vec<Option<(Rational, Rational)>>> = vec![vec![None; n]; n];
    let mut columns: Vec<Rational> = (0..=nn + 1).map(int).collect();
    for (jdx, perm) in choices.iter().enumerate() {
        let j = jdx as i64 + 1;
        for (rank, &i) in perm.as_slice().iter().enumerate() {
            let s = int(2 * (i as i64 + j));
            let target = &unit * int(rank as i64 + 1);
            let w = sqrt_upper(&(&eps + &s * &target), 48);
            let alpha = (&w * &w - &eps) / &s;
            columns.push(int(j) - &w);
            columns.push(int(j) + &w);
            splice[i - 1][jdx] = Some((w, alpha));
        }
    }
    columns.sort();
    columns.dedup();

    let tilt = Rational::new(1.into(), (1024 * nn * nn).into());
    let mut y = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for k in 1..=nn {
        y.push(vec![int(k * k); columns.len()]);
        left.push(&tilt * int(k));
        right.push(&tilt * int(k));
    }
    let last = columns.last().unwrap().clone();
    for i in 1..=nn {
        let row = columns
            .iter()
            .map(|x| {
                for (jdx, s) in splice[i as usize - 1].iter().enumerate() {
                    if let Some((w, alpha)) = s {
                        let j = int(jdx as i64 + 1);
                        let u = x - &j;
                        if u >= -w.clone() && &u <= w {
                            let k = int(i + jdx as i64 + 1);
                            return &k * &k + int(2) * &k * (u + alpha);
                        }
                    }
                }
                (x + int(i)) * (x + int(i)) - &eps
            })
            .collect();
        y.push(row);
        left.push(int(2 * i));
        right.push(int(2) * (&last + int(i)));
    }
    let arr = PolyArrangement::new(columns, y, left, right)?;
    if !is_approaching(&arr, false) {
        return Err(Error::Verification("family member is not approaching".into()));
    }
    debug_assert!(splice.iter().flatten().flatten().all(|(_, a)| !a.is_zero()));
    Ok(arr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrgeom::sweep_sequence;
    use std::collections::HashSet;

    #[test]
    fn single_designated_crossing() {
        let below = bit_family(2, &[false]).unwrap();
        let above = bit_family(2, &[true]).unwrap();
        assert_eq!(bit_decode(&below).unwrap(), vec![false]);
        assert_eq!(bit_decode(&above).unwrap(), vec![true]);
        assert_eq!(below.role(4), "v1");
    }

    #[test]
    fn bits_round_trip_n3() {
        for mask in 0..8u32 {
            let bits: Vec<bool> = (0..3).map(|b| mask >> b & 1 == 1).collect();
            let m = bit_family(3, &bits).unwrap();
            assert_eq!(bit_decode(&m).unwrap(), bits);
        }
    }

    #[test]
    fn superfactorial_n3_two_sequences() {
        let all = superfactorial_choices(3);
        assert_eq!(all.len(), 2);
        let seqs: HashSet<String> = all
            .iter()
            .map(|c| sweep_sequence(&superfactorial_family(3, c).unwrap()).unwrap().to_string())
            .collect();
        assert_eq!(seqs.len(), 2);
    }

    #[test]
    fn bad_shapes_rejected() {
        assert!(bit_family(3, &[true]).is_err());
        assert!(superfactorial_family(3, &[]).is_err());
    }
}
