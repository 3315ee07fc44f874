//! Search for three-snapshot candidates `(id, π₁, π₂)` that no approaching
//! arrangement realizes, and the wedge augmentation that turns such a
//! candidate into a full simple sequence.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{decide_realizable, Certificate, Decision, EncodingMode, NotRealizable};
use crate::seq::{swaps_towards, validate_subcandidate, AllowableSequence, Permutation, SubSequenceCandidate};

#[derive(Clone, Debug)]
pub struct Witness {
    pub pi1: Permutation,
    pub pi2: Permutation,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: usize,
    pub examined: usize,
    pub total: usize,
    pub infeasible: Vec<Witness>,
}

impl SearchReport {
    pub fn exhaustive(&self) -> bool {
        self.examined == self.total
    }
}

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation::new(cur.clone()).expect("valid"));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Pairs with `inv(π₁) ⊊ inv(π₂)` and `π₁ ≠ id`, in lexicographic order.
/// These are exactly the three-snapshot candidates passing the pairwise
/// monotonicity check, minus the trivially realizable ones.
pub fn weak_order_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let perms = all_perms(n);
    let pos: Vec<Vec<usize>> = perms.iter().map(Permutation::positions).collect();
    let inverted = |p: &[usize], a: usize, b: usize| p[b] < p[a];
    let mut out = Vec::new();
    for (i, p1) in perms.iter().enumerate() {
        if p1.is_identity() {
            continue;
        }
        for (j, p2) in perms.iter().enumerate() {
            if i == j {
                continue;
            }
            let contained = (1..=n).all(|a| {
                (a + 1..=n).all(|b| !inverted(&pos[i], a, b) || inverted(&pos[j], a, b))
            });
            if contained {
                out.push((p1.clone(), p2.clone()));
            }
        }
    }
    out
}

/// Decide every candidate `(id, π₁, π₂)` from [`weak_order_pairs`], up to
/// `budget` instances. Returned witnesses carry verified certificates.
pub fn triple_search(n: usize, budget: Option<usize>, mode: EncodingMode) -> Result<SearchReport> {
    if n < 2 {
        return Err(Error::Range("need at least two lines".into()));
    }
    let pairs = weak_order_pairs(n);
    let total = pairs.len();
    let take = budget.map_or(total, |b| b.min(total));
    let found: Vec<Option<Witness>> = pairs[..take]
        .par_iter()
        .map(|(p1, p2)| -> Result<Option<Witness>> {
            let sub = SubSequenceCandidate::new(vec![p1.clone(), p2.clone()])?;
            match decide_realizable(&sub, mode)? {
                Decision::Realizable(_) => Ok(None),
                Decision::NotRealizable(NotRealizable::Farkas(cert)) => {
                    if !cert.verify() {
                        return Err(Error::Verification("certificate failed to verify".into()));
                    }
                    Ok(Some(Witness { pi1: p1.clone(), pi2: p2.clone(), certificate: *cert }))
                }
                Decision::NotRealizable(NotRealizable::Combinatorial(_)) => {
                    Err(Error::Verification("weak-order pair failed the monotonicity check".into()))
                }
            }
        })
        .collect::<Result<_>>()?;
    Ok(SearchReport {
        n,
        examined: take,
        total,
        infeasible: found.into_iter().flatten().collect(),
    })
}

/// Four extra pseudo-lines pinning `π₁` and `π₂`: a wedge `U1, D1` whose
/// apex sits just after the lines show `π₁`, and a wedge `U2, D2` for `π₂`.
///
/// Output labels, top to bottom at the left: `D2, D1, 3..=n+2` (the input
/// lines shifted by two), `U1, U2`. The returned sequence is simple, and
/// any sweep with the same sequence shows `π₁` while `U1` is above and `D1`
/// below the input lines, and likewise `π₂` for the second wedge.
pub fn wedge_augment(sub: &SubSequenceCandidate) -> Result<AllowableSequence> {
    let with_id = sub.with_identity();
    if with_id.len() != 3 {
        return Err(Error::Structure("expected the identity and two more snapshots".into()));
    }
    if !validate_subcandidate(sub)?.is_ok() {
        return Err(Error::Precondition("snapshots are not pairwise monotone".into()));
    }
    let n = sub.n();
    let (d2, d1, u1, u2) = (1, 2, n + 3, n + 4);
    let shift = |p: &Permutation| -> Vec<usize> { p.as_slice().iter().map(|l| l + 2).collect() };
    let (pi1, pi2) = (&with_id[1], &with_id[2]);
    let rev = Permutation::reversal(n);

    let mut swaps: Vec<(usize, usize)> = Vec::new();
    let inner = |from: &Permutation, to: &Permutation| -> Vec<(usize, usize)> {
        swaps_towards(from, to).into_iter().map(|(a, b)| (a + 2, b + 2)).collect()
    };
    swaps.extend(inner(&Permutation::identity(n), pi1));
    // U1 rises through the lines, which read π₁ bottom to top
    swaps.extend(shift(pi1).iter().rev().map(|&l| (l, u1)));
    swaps.push((d1, u1));
    swaps.extend(shift(pi1).iter().map(|&l| (d1, l)));
    swaps.push((d2, u1));
    swaps.push((d1, u2));
    swaps.extend(inner(pi1, pi2));
    swaps.extend(shift(pi2).iter().rev().map(|&l| (l, u2)));
    swaps.push((d2, u2));
    swaps.extend(shift(pi2).iter().map(|&l| (d2, l)));
    swaps.push((u1, u2));
    swaps.push((d2, d1));
    swaps.extend(inner(pi2, &rev));
    AllowableSequence::from_swaps(n + 4, &swaps)
}
