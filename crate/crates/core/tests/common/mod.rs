#![allow(dead_code)]

use approaching::arrgeom::{Point, PolyArrangement};
use approaching::seq::{AllowableSequence, Permutation, SubSequenceCandidate};
use approaching::Rational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

/// A uniformly random adjacent swap among the non-inverted adjacent pairs,
/// repeated until the reversal: a random simple allowable sequence.
pub fn random_simple_sequence<R: Rng>(n: usize, rng: &mut R) -> AllowableSequence {
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut word = Vec::new();
    loop {
        let open: Vec<usize> = (0..n - 1).filter(|&k| cur[k] < cur[k + 1]).collect();
        let Some(&k) = open.choose(rng) else { break };
        cur.swap(k, k + 1);
        word.push(k + 1);
    }
    AllowableSequence::from_word(n, &word).unwrap()
}

/// `k` snapshots taken in order from a random simple sequence.
pub fn random_chain<R: Rng>(n: usize, k: usize, rng: &mut R) -> SubSequenceCandidate {
    let seq = random_simple_sequence(n, rng);
    let perms = seq.perms();
    let mut idx: Vec<usize> = (1..perms.len()).collect();
    idx.shuffle(rng);
    let mut idx: Vec<usize> = idx.into_iter().take(k.min(perms.len() - 1)).collect();
    idx.sort_unstable();
    SubSequenceCandidate::new(idx.into_iter().map(|i| perms[i].clone()).collect()).unwrap()
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

/// Every simple allowable sequence on `n` lines (reduced words of the
/// reversal), by depth-first search.
pub fn all_simple_sequences(n: usize) -> Vec<AllowableSequence> {
    fn rec(cur: &mut Vec<usize>, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = cur.len();
        let mut any = false;
        for k in 0..n - 1 {
            if cur[k] < cur[k + 1] {
                any = true;
                cur.swap(k, k + 1);
                word.push(k + 1);
                rec(cur, word, out);
                word.pop();
                cur.swap(k, k + 1);
            }
        }
        if !any {
            out.push(word.clone());
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out.into_iter().map(|w| AllowableSequence::from_word(n, &w).unwrap()).collect()
}

/// Independent monotonicity oracle: some pair changes order more than once.
pub fn some_pair_recrosses(perms: &[Permutation]) -> bool {
    let n = perms[0].n();
    let mut all = vec![Permutation::identity(n)];
    all.extend(perms.iter().cloned());
    for a in 1..=n {
        for b in a + 1..=n {
            let flips = all.windows(2).filter(|w| w[0].above(a, b) != w[1].above(a, b)).count();
            if flips > 1 {
                return true;
            }
        }
    }
    false
}

/// Top-to-bottom order of straight lines `y = s x + c` at abscissa `x`,
/// ties broken by slope (the order just to the right).
pub fn line_order(lines: &[(Rational, Rational)], x: &Rational) -> Permutation {
    let mut idx: Vec<usize> = (0..lines.len()).collect();
    idx.sort_by(|&i, &j| {
        let yi = &lines[i].0 * x + &lines[i].1;
        let yj = &lines[j].0 * x + &lines[j].1;
        yj.cmp(&yi).then(lines[j].0.cmp(&lines[i].0))
    });
    Permutation::new(idx.into_iter().map(|i| i + 1).collect()).unwrap()
}

/// Sorted orders of straight lines over every slab between crossings.
pub fn line_orders(lines: &[(Rational, Rational)]) -> Vec<Permutation> {
    let mut xs = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i].0 != lines[j].0 {
                xs.push((&lines[j].1 - &lines[i].1) / (&lines[i].0 - &lines[j].0));
            }
        }
    }
    xs.sort();
    xs.dedup();
    let mut probes = Vec::new();
    match (xs.first(), xs.last()) {
        (Some(a), Some(b)) => {
            probes.push(a - Rational::from_integer(1.into()));
            for w in xs.windows(2) {
                probes.push((&w[0] + &w[1]) / Rational::from_integer(2.into()));
            }
            probes.push(b + Rational::from_integer(1.into()));
        }
        _ => probes.push(Rational::zero()),
    }
    probes.iter().map(|x| line_order(lines, x)).collect()
}

/// Triangle-cell oracle: lines `a, b, c` pairwise cross at three distinct
/// points and no other line crosses a side strictly between its vertices.
pub fn is_empty_triangle(arr: &PolyArrangement, t: [usize; 3]) -> bool {
    let v = |i: usize, j: usize| -> Point {
        let x = arr.crossing_x(i, j).unwrap();
        let y = arr.evaluate(i, &x);
        Point::new(x, y)
    };
    let [a, b, c] = t;
    let (ab, ac, bc) = (v(a, b), v(a, c), v(b, c));
    if ab == ac || ab == bc {
        return false;
    }
    let sides = [(a, &ab.x, &ac.x), (b, &ab.x, &bc.x), (c, &ac.x, &bc.x)];
    for k in 0..arr.n() {
        if t.contains(&k) {
            continue;
        }
        for &(line, x1, x2) in &sides {
            let (lo, hi) = if x1 < x2 { (x1, x2) } else { (x2, x1) };
            let x = arr.crossing_x(line, k).unwrap();
            if &x >= lo && &x <= hi {
                return false;
            }
        }
    }
    true
}
