//! Arrangement and sequence generators: baselines, counting families,
//! non-realizability witnesses and the non-Pappus sequence.

mod triples;
mod counting;
mod nonpappus;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrgeom::{crossings, perturb_to_simple, PolyArrangement};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

pub use triples::{triple_search, weak_order_pairs, wedge_augment, SearchReport, Witness};
pub use counting::{
    bit_decode, bit_family, bit_pairs, superfactorial_choices,
    superfactorial_family, BitArrangement,
};
pub use nonpappus::{non_pappus_sequence, pappus_points, pappus_sequence};

/// `n` lines through the origin with slopes `0, 1, ..., n-1`.
pub fn pencil(n: usize) -> Result<PolyArrangement> {
    if n == 0 {
        return Err(Error::Range("need at least one line".into()));
    }
    let lines: Vec<_> = (0..n).map(|i| (int(i as i64), int(0))).collect();
    PolyArrangement::from_lines(&lines, vec![int(-1), int(1)])
}

/// `n` lines with distinct random rational slopes and intercepts; columns
/// bracket all crossings.
pub fn random_lines(n: usize, seed: u64) -> Result<PolyArrangement> {
    if n == 0 {
        return Err(Error::Range("need at least one line".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slopes: Vec<Rational> = Vec::with_capacity(n);
    while slopes.len() < n {
        let s = Rational::new(rng.gen_range(-400..=400).into(), rng.gen_range(1..=20).into());
        if !slopes.contains(&s) {
            slopes.push(s);
        }
    }
    slopes.sort();
    let lines: Vec<(Rational, Rational)> = slopes
        .into_iter()
        .map(|s| (s, Rational::new(rng.gen_range(-400..=400).into(), rng.gen_range(1..=20).into())))
        .collect();
    let probe = PolyArrangement::from_lines(&lines, vec![int(0)])?;
    let xs: Vec<Rational> = crossings(&probe)?.into_iter().map(|e| e.x).collect();
    let lo = xs.iter().min().cloned().unwrap_or_else(|| int(0)) - int(1);
    let hi = xs.iter().max().cloned().unwrap_or_else(|| int(0)) + int(1);
    PolyArrangement::from_lines(&lines, vec![lo, hi])
}

/// A random strictly approaching polygonal arrangement: on each of `m - 1`
/// unit-width slabs the lines get random slopes, sorted so that they
/// increase with the line index. The result is perturbed to be x-simple.
pub fn random_approaching(n: usize, m: usize, seed: u64) -> Result<PolyArrangement> {
    if n == 0 || m == 0 {
        return Err(Error::Range("need lines and columns".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_sorted = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        let mut v: Vec<i64> = Vec::with_capacity(n);
        while v.len() < n {
            let s = rng.gen_range(-60..=60);
            if !v.contains(&s) {
                v.push(s);
            }
        }
        v.sort_unstable();
        v.into_iter().map(int).collect()
    };
    let left = draw_sorted(&mut rng);
    let mut y: Vec<Vec<Rational>> = (0..n).map(|_| vec![int(rng.gen_range(-40..=40))]).collect();
    for _ in 1..m {
        let slopes = draw_sorted(&mut rng);
        for (row, s) in y.iter_mut().zip(slopes) {
            let last = row.last().unwrap().clone();
            row.push(last + s);
        }
    }
    let right = draw_sorted(&mut rng);
    let columns = (0..m).map(|c| int(c as i64)).collect();
    let arr = PolyArrangement::new(columns, y, left, right)?;
    perturb_to_simple(&arr)
}

/// Color every line "red" or "blue" at random, making sure both occur.
pub fn random_coloring(arr: PolyArrangement, seed: u64) -> Result<PolyArrangement> {
    let n = arr.n();
    if n < 2 {
        return Err(Error::Range("need two lines for two colors".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    if colors.iter().all(|&c| c) || colors.iter().all(|&c| !c) {
        let k = rng.gen_range(0..n);
        colors[k] = !colors[k];
    }
    arr.with_colors(
        colors
            .into_iter()
            .map(|c| if c { "red".to_string() } else { "blue".to_string() })
            .collect(),
    )
}
