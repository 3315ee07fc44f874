//! Triangle flips on simple allowable sequences and the graph they span on
//! commutation classes.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{decide_realizable, EncodingMode};
use crate::seq::{AllowableSequence, Permutation};

/// Canonical form of a commutation class: for every label, the labels it
/// crosses, in order from left to right.
pub type ClassKey = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlipMove {
    /// 1-based labels, increasing.
    pub labels: [usize; 3],
    /// 1-based step indices at which the pairs `(a,b)`, `(a,c)`, `(b,c)`
    /// cross in the sequence the move was found in.
    pub steps: [usize; 3],
}

pub fn class_key(seq: &AllowableSequence) -> Result<ClassKey> {
    if !seq.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut key = vec![Vec::new(); seq.n()];
    for step in seq.crossing_pairs() {
        let (a, b) = step[0];
        key[a - 1].push(b);
        key[b - 1].push(a);
    }
    Ok(key)
}

/// A sequence in the class described by `key`; fails when no arrangement
/// has these crossing orders.
pub fn sequence_from_key(key: &ClassKey) -> Result<AllowableSequence> {
    let n = key.len();
    let mut next = vec![0usize; n];
    let mut cur = Permutation::identity(n);
    let mut perms = vec![cur.clone()];
    for _ in 0..n * n.saturating_sub(1) / 2 {
        let s = cur.as_slice();
        let k = (0..n.saturating_sub(1)).find(|&k| {
            let (u, v) = (s[k], s[k + 1]);
            key[u - 1].get(next[u - 1]) == Some(&v) && key[v - 1].get(next[v - 1]) == Some(&u)
        });
        let Some(k) = k else {
            return Err(Error::InvalidSequence("crossing orders are inconsistent".into()));
        };
        let (u, v) = (s[k], s[k + 1]);
        next[u - 1] += 1;
        next[v - 1] += 1;
        cur = cur.swapped(k);
        perms.push(cur.clone());
    }
    AllowableSequence::new(perms)
}

fn adjacent(list: &[usize], x: usize, y: usize) -> bool {
    list.windows(2).any(|w| (w[0] == x && w[1] == y) || (w[0] == y && w[1] == x))
}

/// Every triangle (three lines whose mutual crossings are consecutive on
/// each of them) of a simple sequence.
pub fn enumerate_flips(seq: &AllowableSequence) -> Result<Vec<FlipMove>> {
    let key = class_key(seq)?;
    let n = seq.n();
    let mut when = HashMap::new();
    for (s, step) in seq.crossing_pairs().iter().enumerate() {
        when.insert(step[0], s + 1);
    }
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if adjacent(&key[a - 1], b, c) && adjacent(&key[b - 1], a, c) && adjacent(&key[c - 1], a, b) {
                    out.push(FlipMove {
                        labels: [a, b, c],
                        steps: [when[&(a, b)], when[&(a, c)], when[&(b, c)]],
                    });
                }
            }
        }
    }
    Ok(out)
}

fn swap_in(list: &mut [usize], x: usize, y: usize) {
    let i = list.iter().position(|&v| v == x).expect("partner present");
    let j = list.iter().position(|&v| v == y).expect("partner present");
    list.swap(i, j);
}

fn flipped_key(key: &ClassKey, labels: [usize; 3]) -> ClassKey {
    let [a, b, c] = labels;
    let mut k = key.clone();
    swap_in(&mut k[a - 1], b, c);
    swap_in(&mut k[b - 1], a, c);
    swap_in(&mut k[c - 1], a, b);
    k
}

/// Pass one of the three lines over the crossing of the other two.
pub fn apply_flip(seq: &AllowableSequence, mv: &FlipMove) -> Result<AllowableSequence> {
    let key = class_key(seq)?;
    let [a, b, c] = mv.labels;
    if !(adjacent(&key[a - 1], b, c) && adjacent(&key[b - 1], a, c) && adjacent(&key[c - 1], a, b)) {
        return Err(Error::Precondition(format!("{a}, {b}, {c} do not form a triangle")));
    }
    sequence_from_key(&flipped_key(&key, mv.labels))
}

/// Number of reduced words of the longest permutation, i.e. of simple
/// allowable sequences on `n` lines, by dynamic programming over the
/// weak order.
pub fn reduced_word_count(n: usize) -> u128 {
    fn count(p: &Permutation, memo: &mut HashMap<Permutation, u128>) -> u128 {
        let s = p.as_slice();
        if s.windows(2).all(|w| w[0] > w[1]) {
            return 1;
        }
        if let Some(&v) = memo.get(p) {
            return v;
        }
        let total = (0..s.len() - 1)
            .filter(|&k| s[k] < s[k + 1])
            .map(|k| count(&p.swapped(k), memo))
            .sum();
        memo.insert(p.clone(), total);
        total
    }
    if n <= 1 {
        return 1;
    }
    count(&Permutation::identity(n), &mut HashMap::new())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipFilter {
    All,
    /// Keep classes with a sequence realizable by approaching pseudo-lines.
    Approaching,
}

#[derive(Clone, Debug)]
pub struct FlipNode {
    pub key: ClassKey,
    pub sequence: AllowableSequence,
    pub feasible: bool,
}

#[derive(Clone, Debug)]
pub struct FlipGraph {
    pub n: usize,
    pub nodes: Vec<FlipNode>,
    /// Node indices and the flipped triple.
    pub edges: Vec<(usize, usize, [usize; 3])>,
    /// Connectivity of the subgraph induced by feasible nodes.
    pub connected: bool,
}

impl FlipGraph {
    pub fn feasible_count(&self) -> usize {
        self.nodes.iter().filter(|v| v.feasible).count()
    }
}

fn staircase(n: usize) -> Result<AllowableSequence> {
    let mut word = Vec::new();
    for k in 1..n {
        for j in (1..=k).rev() {
            word.push(j);
        }
    }
    AllowableSequence::from_word(n, &word)
}

/// All sequences in the class of `key`, up to `limit` of them.
fn class_members(key: &ClassKey, limit: usize) -> Vec<AllowableSequence> {
    let n = key.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut out = Vec::new();
    let mut perms = vec![Permutation::identity(n)];
    let mut next = vec![0usize; n];
    fn walk(
        key: &ClassKey,
        total: usize,
        perms: &mut Vec<Permutation>,
        next: &mut Vec<usize>,
        out: &mut Vec<AllowableSequence>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if perms.len() == total + 1 {
            if let Ok(seq) = AllowableSequence::new(perms.clone()) {
                out.push(seq);
            }
            return;
        }
        let cur = perms.last().unwrap().clone();
        let s = cur.as_slice();
        for k in 0..s.len() - 1 {
            let (u, v) = (s[k], s[k + 1]);
            if key[u - 1].get(next[u - 1]) == Some(&v) && key[v - 1].get(next[v - 1]) == Some(&u) {
                next[u - 1] += 1;
                next[v - 1] += 1;
                perms.push(cur.swapped(k));
                walk(key, total, perms, next, out, limit);
                perms.pop();
                next[u - 1] -= 1;
                next[v - 1] -= 1;
            }
        }
    }
    walk(key, total, &mut perms, &mut next, &mut out, limit);
    out
}

fn realizable(seq: &AllowableSequence) -> bool {
    decide_realizable(&seq.as_candidate(), EncodingMode::Full)
        .map(|d| d.is_realizable())
        .unwrap_or(false)
}

/// Breadth-first search over commutation classes of simple sequences on
/// `n` lines, starting at the staircase class.
pub fn flip_graph(n: usize, filter: FlipFilter) -> Result<FlipGraph> {
    if !(2..=7).contains(&n) {
        return Err(Error::Range(format!("flip graph for n = {n} is out of range")));
    }
    let start = staircase(n)?;
    let start_key = class_key(&start)?;
    let mut index: HashMap<ClassKey, usize> = HashMap::new();
    let mut nodes = vec![(start_key.clone(), start)];
    index.insert(start_key, 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let (key, seq) = nodes[u].clone();
        for mv in enumerate_flips(&seq)? {
            let k2 = flipped_key(&key, mv.labels);
            let v = match index.get(&k2) {
                Some(&v) => v,
                None => {
                    let s2 = sequence_from_key(&k2)?;
                    nodes.push((k2.clone(), s2));
                    index.insert(k2, nodes.len() - 1);
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            if u < v {
                edges.push((u, v, mv.labels));
            }
        }
    }
    let feasible: Vec<bool> = match filter {
        FlipFilter::All => vec![true; nodes.len()],
        FlipFilter::Approaching => nodes
            .par_iter()
            .map(|(key, seq)| realizable(seq) || class_members(key, 256).iter().any(realizable))
            .collect(),
    };
    let connected = induced_connected(nodes.len(), &edges, &feasible);
    Ok(FlipGraph {
        n,
        nodes: nodes
            .into_iter()
            .zip(feasible)
            .map(|((key, sequence), feasible)| FlipNode {
                key,
                sequence,
                feasible,
            })
            .collect(),
        edges,
        connected,
    })
}

fn induced_connected(count: usize, edges: &[(usize, usize, [usize; 3])], keep: &[bool]) -> bool {
    let mut adj = vec![Vec::new(); count];
    for &(u, v, _) in edges {
        if keep[u] && keep[v] {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let Some(s) = (0..count).find(|&v| keep[v]) else {
        return true;
    };
    let mut seen = vec![false; count];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    (0..count).all(|v| !keep[v] || seen[v])
}
