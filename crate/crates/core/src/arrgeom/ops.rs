//! Operations that move or reshape an arrangement while keeping it
//! approaching.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    crossing_abscissae, crossings, is_approaching, sweep_sequence, validate_approaching,
    ArrangementViolation, PolyArrangement,
};
use crate::error::{Error, Result};
use crate::rational::{half, int, Rational};
use crate::seq::{refines, ValidationReport};

#[derive(Clone, Debug)]
pub struct Translated {
    pub arrangement: PolyArrangement,
    /// Strictness violations of the input; non-empty means the translation
    /// may have merged curves over an interval.
    pub warnings: ValidationReport<ArrangementViolation>,
}

/// Shift line `i` vertically by `delta`.
pub fn translate(arr: &PolyArrangement, i: usize, delta: &Rational) -> Result<Translated> {
    if i >= arr.n() {
        return Err(Error::Range(format!("line {i} of {}", arr.n())));
    }
    let warnings = validate_approaching(arr, true);
    let mut out = arr.clone();
    for v in out.rows_mut()[i].iter_mut() {
        *v += delta;
    }
    if warnings.is_ok() && !is_approaching(&out, true) {
        return Err(Error::Verification(
            "translation of a strict arrangement lost strictness".into(),
        ));
    }
    Ok(Translated {
        arrangement: out,
        warnings,
    })
}

fn shifted(arr: &PolyArrangement, shifts: &[Rational]) -> PolyArrangement {
    let mut out = arr.clone();
    for (row, s) in out.rows_mut().iter_mut().zip(shifts) {
        for v in row.iter_mut() {
            *v += s;
        }
    }
    out
}

/// Half the smallest positive vertical gap between two lines, measured at
/// the columns and at every crossing abscissa.
fn clearance(arr: &PolyArrangement) -> Result<Rational> {
    let events = crossings(arr)?;
    let mut xs = crossing_abscissae(&events);
    xs.extend(arr.columns().iter().cloned());
    let mut best: Option<Rational> = None;
    for x in &xs {
        let vals: Vec<Rational> = (0..arr.n()).map(|i| arr.evaluate(i, x)).collect();
        for a in 0..vals.len() {
            for b in a + 1..vals.len() {
                let gap = (&vals[a] - &vals[b]).abs();
                if gap.is_positive() && best.as_ref().is_none_or(|g| &gap < g) {
                    best = Some(gap);
                }
            }
        }
    }
    Ok(best.unwrap_or_else(Rational::one) * half())
}

/// Break every degeneracy by small exact vertical translations. The
/// result is x-simple and its sweep refines the input's.
pub fn perturb_to_simple(arr: &PolyArrangement) -> Result<PolyArrangement> {
    perturb_lines_to_simple(arr, &(0..arr.n()).collect::<Vec<_>>())
}

/// As [`perturb_to_simple`] but only the listed lines move.
pub fn perturb_lines_to_simple(arr: &PolyArrangement, movable: &[usize]) -> Result<PolyArrangement> {
    if !is_approaching(arr, true) {
        return Err(Error::Precondition(
            "perturbation needs a strictly approaching arrangement".into(),
        ));
    }
    let original = sweep_sequence(arr)?;
    if original.is_simple() {
        return Ok(arr.clone());
    }
    let eps0 = clearance(arr)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..16 {
        let weights: Vec<Rational> = (0..arr.n())
            .map(|i| {
                if movable.contains(&i) {
                    Rational::new(rng.gen_range(1..=1000).into(), 1000.into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let mut eps = eps0.clone();
        for _ in 0..48 {
            let shifts: Vec<Rational> = weights.iter().map(|w| w * &eps).collect();
            let cand = shifted(arr, &shifts);
            if let Ok(seq) = sweep_sequence(&cand) {
                if seq.is_simple() && refines(&seq, &original) {
                    return Ok(cand);
                }
            }
            eps *= half();
        }
    }
    Err(Error::Verification(
        "no simple perturbation found (are the movable lines enough to break every degeneracy?)"
            .into(),
    ))
}

fn first_flat_slab(arr: &PolyArrangement) -> Option<usize> {
    let n = arr.n();
    (0..arr.m().saturating_sub(1)).find(|&k| {
        (0..n).any(|i| {
            (i + 1..n).any(|j| {
                let r = arr.rows();
                &r[i][k] - &r[j][k] == &r[i][k + 1] - &r[j][k + 1]
            })
        })
    })
}

/// Make an approaching arrangement with a simple sweep strictly
/// approaching without changing its sweep sequence. The left column of
/// each slab holding parallel segments is moved slightly left and the
/// lines are re-interpolated.
pub fn strictify(arr: &PolyArrangement) -> Result<PolyArrangement> {
    if !is_approaching(arr, false) {
        return Err(Error::Precondition("arrangement is not approaching".into()));
    }
    let target = sweep_sequence(arr)?;
    if !target.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut cur = arr.clone();
    while let Some(k) = first_flat_slab(&cur) {
        let v = cur.columns()[k].clone();
        let room = if k == 0 {
            int(1)
        } else {
            &v - &cur.columns()[k - 1]
        };
        let mut h = room * half();
        let mut done = false;
        for _ in 0..64 {
            let v_new = &v - &h;
            let mut cols = cur.columns().to_vec();
            cols[k] = v_new.clone();
            let y: Vec<Vec<Rational>> = (0..cur.n())
                .map(|i| {
                    let mut row = cur.row(i).to_vec();
                    row[k] = cur.evaluate(i, &v_new);
                    row
                })
                .collect();
            let cand = PolyArrangement {
                columns: cols,
                y,
                left_slopes: cur.left_slopes().to_vec(),
                right_slopes: cur.right_slopes().to_vec(),
                colors: cur.colors().map(|c| c.to_vec()),
            };
            let slab_ok = first_flat_slab(&cand).is_none_or(|k2| k2 > k);
            if slab_ok
                && is_approaching(&cand, false)
                && sweep_sequence(&cand).is_ok_and(|s| s == target)
            {
                cur = cand;
                done = true;
                break;
            }
            h *= half();
        }
        if !done {
            return Err(Error::Verification(format!(
                "could not straighten slab after column {}",
                k + 1
            )));
        }
    }
    if !is_approaching(&cur, true) {
        return Err(Error::Verification("strictify result is not strict".into()));
    }
    Ok(cur)
}

/// Clip the columns to `[vminus, vplus]` and re-attach the rays there.
pub fn truncate(arr: &PolyArrangement, vminus: &Rational, vplus: &Rational) -> Result<PolyArrangement> {
    if vminus >= vplus {
        return Err(Error::Range("truncation window is empty".into()));
    }
    let events = crossings(arr)?;
    if let Some(e) = events.iter().find(|e| &e.x <= vminus || &e.x >= vplus) {
        return Err(Error::Precondition(format!(
            "crossing at x = {} is not strictly inside the window",
            e.x
        )));
    }
    let mut cols: Vec<Rational> = arr
        .columns()
        .iter()
        .filter(|c| *c >= vminus && *c <= vplus)
        .cloned()
        .collect();
    if cols.is_empty() || &arr.columns()[0] < vminus {
        cols.push(vminus.clone());
    }
    if cols.len() < 2 && arr.columns().len() > 1 || &arr.columns()[arr.m() - 1] > vplus {
        cols.push(vplus.clone());
    }
    cols.sort();
    cols.dedup();
    let y = (0..arr.n())
        .map(|i| cols.iter().map(|x| arr.evaluate(i, x)).collect())
        .collect();
    let out = PolyArrangement {
        columns: cols,
        y,
        left_slopes: arr.left_slopes().to_vec(),
        right_slopes: arr.right_slopes().to_vec(),
        colors: arr.colors().map(|c| c.to_vec()),
    };
    if sweep_sequence(&out)? != sweep_sequence(arr)? {
        return Err(Error::Verification("truncation changed the sweep".into()));
    }
    Ok(out)
}
