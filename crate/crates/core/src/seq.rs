//! Permutations, allowable and suballowable sequences.
//!
//! Labels are `1..=n`; a permutation lists them top to bottom along a
//! vertical sweep line.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    order: Vec<usize>,
}

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::Structure("empty permutation".into()));
        }
        let mut seen = vec![false; n + 1];
        for &l in &order {
            if l == 0 || l > n || seen[l] {
                return Err(Error::Structure(format!(
                    "{order:?} is not a permutation of 1..{n}"
                )));
            }
            seen[l] = true;
        }
        Ok(Self { order })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            order: (1..=n).collect(),
        }
    }

    pub fn reversal(n: usize) -> Self {
        Self {
            order: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order.iter().enumerate().all(|(k, &l)| l == k + 1)
    }

    /// `positions()[label]` is the 0-based position of `label`; index 0 unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.n() + 1];
        for (k, &l) in self.order.iter().enumerate() {
            pos[l] = k;
        }
        pos
    }

    /// True when label `a` is above label `b`.
    pub fn above(&self, a: usize, b: usize) -> bool {
        let pos = self.positions();
        pos[a] < pos[b]
    }

    /// Pairs `(i, j)`, `i < j`, with `j` above `i`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let pos = self.positions();
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if pos[j] < pos[i] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Apply the block reversals of `step`.
    pub fn apply(&self, step: &MoveStep) -> Result<Self> {
        let mut order = self.order.clone();
        for &(lo, hi) in &step.blocks {
            if lo == 0 || hi > order.len() || hi <= lo {
                return Err(Error::Structure(format!("block [{lo}..{hi}] out of range")));
            }
            order[lo - 1..hi].reverse();
        }
        Ok(Self { order })
    }

    /// Swap the labels at 0-based positions `k` and `k + 1`.
    pub fn swapped(&self, k: usize) -> Self {
        let mut order = self.order.clone();
        order.swap(k, k + 1);
        Self { order }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.order.iter().enumerate() {
            if k > 0 && self.order.len() > 9 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Disjoint 1-based inclusive position intervals reversed in one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveStep {
    pub blocks: Vec<(usize, usize)>,
}

impl MoveStep {
    pub fn is_adjacent_transposition(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].1 == self.blocks[0].0 + 1
    }
}

/// The block reversals taking `a` to `b`.
pub fn transposition_decomposition(a: &Permutation, b: &Permutation) -> Result<MoveStep> {
    if a.n() != b.n() {
        return Err(Error::Structure("permutations of different width".into()));
    }
    let (a, b) = (a.as_slice(), b.as_slice());
    let pos_a = {
        let mut p = vec![0; a.len() + 1];
        for (k, &l) in a.iter().enumerate() {
            p[l] = k;
        }
        p
    };
    let mut blocks = Vec::new();
    let mut k = 0;
    while k < a.len() {
        if a[k] == b[k] {
            k += 1;
            continue;
        }
        let l = pos_a[b[k]];
        let offending = || Error::NotBlockReversal(format!("first offending position {}", k + 1));
        if l <= k {
            return Err(offending());
        }
        if (k..=l).any(|t| b[t] != a[l - (t - k)]) {
            return Err(offending());
        }
        blocks.push((k + 1, l + 1));
        k = l + 1;
    }
    Ok(MoveStep { blocks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> Default for ValidationReport<V> {
    fn default() -> Self {
        Self {
            violations: Vec::new(),
        }
    }
}

impl<V> ValidationReport<V> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: V) {
        self.violations.push(v);
    }
}

impl<V: fmt::Display> fmt::Display for ValidationReport<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceViolation {
    BadStart,
    BadEnd,
    EmptyStep { step: usize },
    NotBlockStep { step: usize, detail: String },
    PairReversed { a: usize, b: usize, times: usize },
    PairRecrosses { a: usize, b: usize },
}

impl fmt::Display for SequenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BadStart => write!(f, "sequence does not start at the identity"),
            Self::BadEnd => write!(f, "sequence does not end at the full reversal"),
            Self::EmptyStep { step } => write!(f, "step {step} changes nothing"),
            Self::NotBlockStep { step, detail } => {
                write!(f, "step {step} is not a reversal of disjoint blocks ({detail})")
            }
            Self::PairReversed { a, b, times } => {
                write!(f, "pair {{{a},{b}}} reversed {times} times")
            }
            Self::PairRecrosses { a, b } => write!(f, "pair {{{a},{b}}} changes order more than once"),
        }
    }
}

fn check_widths(perms: &[Permutation]) -> Result<usize> {
    let first = perms
        .first()
        .ok_or_else(|| Error::Structure("no permutations".into()))?;
    let n = first.n();
    if let Some(p) = perms.iter().find(|p| p.n() != n) {
        return Err(Error::Structure(format!(
            "inconsistent widths: {} vs {}",
            n,
            p.n()
        )));
    }
    Ok(n)
}

/// Full report of every clause an allowable-sequence candidate violates.
pub fn validate_allowable(perms: &[Permutation]) -> Result<ValidationReport<SequenceViolation>> {
    let n = check_widths(perms)?;
    let mut report = ValidationReport::default();
    if !perms[0].is_identity() {
        report.push(SequenceViolation::BadStart);
    }
    let mut count = vec![vec![0usize; n + 1]; n + 1];
    for (s, w) in perms.windows(2).enumerate() {
        if w[0] == w[1] {
            report.push(SequenceViolation::EmptyStep { step: s + 1 });
            continue;
        }
        if let Err(e) = transposition_decomposition(&w[0], &w[1]) {
            report.push(SequenceViolation::NotBlockStep {
                step: s + 1,
                detail: e.to_string(),
            });
        }
        let (p, q) = (w[0].positions(), w[1].positions());
        for a in 1..=n {
            for b in a + 1..=n {
                if (p[a] < p[b]) != (q[a] < q[b]) {
                    count[a][b] += 1;
                }
            }
        }
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if count[a][b] != 1 {
                report.push(SequenceViolation::PairReversed {
                    a,
                    b,
                    times: count[a][b],
                });
            }
        }
    }
    if *perms.last().unwrap() != Permutation::reversal(n) {
        report.push(SequenceViolation::BadEnd);
    }
    Ok(report)
}

/// A validated allowable sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AllowableSequence {
    perms: Vec<Permutation>,
}

impl AllowableSequence {
    pub fn new(perms: Vec<Permutation>) -> Result<Self> {
        let report = validate_allowable(&perms)?;
        if !report.is_ok() {
            return Err(Error::InvalidSequence(report.to_string()));
        }
        Ok(Self { perms })
    }

    /// Build from a list of crossing pairs in sweep order; each pair must be
    /// adjacent when its turn comes.
    pub fn from_swaps(n: usize, swaps: &[(usize, usize)]) -> Result<Self> {
        let mut cur = Permutation::identity(n);
        let mut perms = vec![cur.clone()];
        for &(a, b) in swaps {
            let pos = cur.positions();
            let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
            if hi != lo + 1 {
                return Err(Error::InvalidSequence(format!(
                    "{a} and {b} are not adjacent in {cur}"
                )));
            }
            cur = cur.swapped(lo);
            perms.push(cur.clone());
        }
        Self::new(perms)
    }

    /// Build from a reduced word: letter `k` swaps positions `k` and `k+1` (1-based).
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut cur = Permutation::identity(n);
        let mut perms = vec![cur.clone()];
        for &k in word {
            if k == 0 || k >= n {
                return Err(Error::Range(format!("letter {k} for n = {n}")));
            }
            cur = cur.swapped(k - 1);
            perms.push(cur.clone());
        }
        Self::new(perms)
    }

    pub fn n(&self) -> usize {
        self.perms[0].n()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn into_perms(self) -> Vec<Permutation> {
        self.perms
    }

    pub fn steps(&self) -> Vec<MoveStep> {
        self.perms
            .windows(2)
            .map(|w| transposition_decomposition(&w[0], &w[1]).expect("validated"))
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.steps().iter().all(MoveStep::is_adjacent_transposition)
    }

    /// The word of a simple sequence (letters are 1-based positions).
    pub fn word(&self) -> Result<Vec<usize>> {
        self.steps()
            .iter()
            .map(|s| {
                if s.is_adjacent_transposition() {
                    Ok(s.blocks[0].0)
                } else {
                    Err(Error::NotSimple)
                }
            })
            .collect()
    }

    /// The unordered label pairs (smaller first) crossing at each step.
    pub fn crossing_pairs(&self) -> Vec<Vec<(usize, usize)>> {
        self.perms
            .windows(2)
            .zip(self.steps())
            .map(|(w, step)| {
                let mut pairs = Vec::new();
                for (lo, hi) in step.blocks {
                    let block = &w[0].as_slice()[lo - 1..hi];
                    for x in 0..block.len() {
                        for y in x + 1..block.len() {
                            let (a, b) = (block[x], block[y]);
                            pairs.push((a.min(b), a.max(b)));
                        }
                    }
                }
                pairs
            })
            .collect()
    }

    pub fn as_candidate(&self) -> SubSequenceCandidate {
        SubSequenceCandidate {
            perms: self.perms.clone(),
        }
    }
}

impl fmt::Display for AllowableSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perms.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn is_simple_sequence(perms: &[Permutation]) -> Result<bool> {
    Ok(AllowableSequence::new(perms.to_vec())?.is_simple())
}

/// A suballowable-sequence candidate: snapshots of some sweep, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubSequenceCandidate {
    pub perms: Vec<Permutation>,
}

impl SubSequenceCandidate {
    pub fn new(perms: Vec<Permutation>) -> Result<Self> {
        check_widths(&perms)?;
        Ok(Self { perms })
    }

    pub fn n(&self) -> usize {
        self.perms[0].n()
    }

    /// Snapshots with the identity prepended when absent.
    pub fn with_identity(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.perms.len() + 1);
        if !self.perms[0].is_identity() {
            out.push(Permutation::identity(self.n()));
        }
        out.extend(self.perms.iter().cloned());
        out
    }

    pub fn identity_prepended(&self) -> bool {
        !self.perms[0].is_identity()
    }
}

impl fmt::Display for SubSequenceCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perms.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Pairwise-monotonicity check: no pair changes its relative order twice.
pub fn validate_subcandidate(
    sub: &SubSequenceCandidate,
) -> Result<ValidationReport<SequenceViolation>> {
    let n = check_widths(&sub.perms)?;
    let mut report = ValidationReport::default();
    let positions: Vec<Vec<usize>> = sub.perms.iter().map(Permutation::positions).collect();
    for a in 1..=n {
        for b in a + 1..=n {
            let changes = positions
                .windows(2)
                .filter(|w| (w[0][a] < w[0][b]) != (w[1][a] < w[1][b]))
                .count();
            if changes > 1 {
                report.push(SequenceViolation::PairRecrosses { a, b });
            }
        }
    }
    Ok(report)
}

/// True when `snapshots` occur in order (repeats allowed) among `perms`.
pub fn contains_snapshots(perms: &[Permutation], snapshots: &[Permutation]) -> bool {
    let mut k = 0;
    for s in snapshots {
        match perms[k..].iter().position(|p| p == s) {
            Some(off) => k += off,
            None => return false,
        }
    }
    true
}

/// True when every permutation of `coarse` appears, in order, in `fine`.
pub fn refines(fine: &AllowableSequence, coarse: &AllowableSequence) -> bool {
    if fine.n() != coarse.n() {
        return false;
    }
    let mut k = 0;
    for p in coarse.perms() {
        match fine.perms()[k..].iter().position(|q| q == p) {
            Some(off) => k += off + 1,
            None => return false,
        }
    }
    true
}

/// Adjacent swaps (as label pairs) taking `from` to `to` by bubble sort;
/// each swapped pair is out of order relative to `to`.
pub fn swaps_towards(from: &Permutation, to: &Permutation) -> Vec<(usize, usize)> {
    let target = to.positions();
    let mut cur = from.as_slice().to_vec();
    let mut out = Vec::new();
    loop {
        let Some(k) = (0..cur.len().saturating_sub(1)).find(|&k| target[cur[k]] > target[cur[k + 1]])
        else {
            break;
        };
        out.push((cur[k].min(cur[k + 1]), cur[k].max(cur[k + 1])));
        cur.swap(k, k + 1);
    }
    out
}

/// Parse the `.perms` text format.
pub fn parse_perms(text: &str) -> Result<Vec<Permutation>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let nums = |ln: usize, s: &str| -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    line: ln + 1,
                    msg: format!("not an integer: {t:?}"),
                })
            })
            .collect()
    };
    let head = nums(hl, header)?;
    if head.len() != 2 {
        return Err(Error::Parse {
            line: hl + 1,
            msg: "header must be `n m`".into(),
        });
    }
    let (n, m) = (head[0], head[1]);
    let mut perms = Vec::with_capacity(m);
    for (ln, l) in lines {
        let order = nums(ln, l)?;
        if order.len() != n {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("expected {n} labels"),
            });
        }
        perms.push(Permutation::new(order).map_err(|e| Error::Parse {
            line: ln + 1,
            msg: e.to_string(),
        })?);
    }
    if perms.len() != m {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header announces {m} permutations, found {}", perms.len()),
        });
    }
    Ok(perms)
}

pub fn format_perms(perms: &[Permutation]) -> String {
    let n = perms.first().map_or(0, Permutation::n);
    let mut s = format!("{n} {}\n", perms.len());
    for p in perms {
        let labels: Vec<String> = p.as_slice().iter().map(|l| l.to_string()).collect();
        s.push_str(&labels.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::new(s.bytes().map(|b| (b - b'0') as usize).collect()).unwrap()
    }

    fn ps(v: &[&str]) -> Vec<Permutation> {
        v.iter().map(|s| p(s)).collect()
    }

    #[test]
    fn staircase_is_valid_and_simple() {
        let perms = ps(&["123", "213", "231", "321"]);
        assert!(validate_allowable(&perms).unwrap().is_ok());
        assert!(is_simple_sequence(&perms).unwrap());
    }

    #[test]
    fn pencil_is_valid_not_simple() {
        let perms = ps(&["123", "321"]);
        assert!(validate_allowable(&perms).unwrap().is_ok());
        assert!(!is_simple_sequence(&perms).unwrap());
        assert!(is_simple_sequence(&ps(&["12", "21"])).unwrap());
    }

    #[test]
    fn double_reversal_reported() {
        let perms = ps(&["123", "213", "123", "321"]);
        let r = validate_allowable(&perms).unwrap();
        assert!(r
            .violations
            .contains(&SequenceViolation::PairReversed { a: 1, b: 2, times: 3 }));
        assert!(is_simple_sequence(&perms).is_err());
    }

    #[test]
    fn mixed_widths_are_structural() {
        let perms = vec![p("12"), p("321")];
        assert!(validate_allowable(&perms).is_err());
    }

    #[test]
    fn subcandidates() {
        let ok = SubSequenceCandidate::new(ps(&["123", "213"])).unwrap();
        assert!(validate_subcandidate(&ok).unwrap().is_ok());
        let bad = SubSequenceCandidate::new(ps(&["123", "321", "231"])).unwrap();
        assert_eq!(
            validate_subcandidate(&bad).unwrap().violations,
            vec![SequenceViolation::PairRecrosses { a: 2, b: 3 }]
        );
        let ok2 = SubSequenceCandidate::new(ps(&["123", "132", "312", "321"])).unwrap();
        assert!(validate_subcandidate(&ok2).unwrap().is_ok());
    }

    #[test]
    fn decompositions() {
        assert_eq!(
            transposition_decomposition(&p("123"), &p("213")).unwrap().blocks,
            vec![(1, 2)]
        );
        assert_eq!(
            transposition_decomposition(&p("1234"), &p("2143")).unwrap().blocks,
            vec![(1, 2), (3, 4)]
        );
        assert_eq!(
            transposition_decomposition(&p("123"), &p("321")).unwrap().blocks,
            vec![(1, 3)]
        );
        let err = transposition_decomposition(&p("123"), &p("312")).unwrap_err();
        assert!(err.to_string().contains("position 1"));
    }

    #[test]
    fn perms_text_round_trip() {
        let text = "3 4\n1 2 3\n2 1 3\n2 3 1\n3 2 1\n";
        let perms = parse_perms(text).unwrap();
        assert_eq!(format_perms(&perms), text);
        let commented = "# staircase\n3 2\n1 2 3\n# last\n3 2 1\n";
        assert_eq!(parse_perms(commented).unwrap().len(), 2);
        assert!(parse_perms("3 2\n1 2 3\n").is_err());
        assert!(parse_perms("3 1\n1 1 3\n").is_err());
    }

    #[test]
    fn refinement_and_snapshots() {
        let fine = AllowableSequence::new(ps(&["123", "213", "231", "321"])).unwrap();
        let coarse = AllowableSequence::new(ps(&["123", "321"])).unwrap();
        assert!(refines(&fine, &coarse));
        assert!(!refines(&coarse, &fine));
        assert!(contains_snapshots(fine.perms(), &ps(&["213", "213", "321"])));
        assert!(!contains_snapshots(fine.perms(), &ps(&["231", "213"])));
    }

    #[test]
    fn words_and_swaps() {
        let s = AllowableSequence::from_word(3, &[1, 2, 1]).unwrap();
        assert_eq!(s.to_string(), "(123),(213),(231),(321)");
        assert_eq!(s.word().unwrap(), vec![1, 2, 1]);
        assert_eq!(s.crossing_pairs(), vec![vec![(1, 2)], vec![(1, 3)], vec![(2, 3)]]);
        let swaps = swaps_towards(&p("123"), &p("312"));
        let t = AllowableSequence::from_swaps(3, &[swaps.clone(), vec![(1, 2)]].concat()).unwrap();
        assert!(t.perms().contains(&p("312")));
    }
}
