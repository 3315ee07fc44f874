mod common;

use approaching::seq::*;
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Definition-level oracle: consecutive permutations differ by reversing
/// disjoint blocks of consecutive positions, and every pair reverses
/// exactly once overall.
fn oracle_allowable(perms: &[Permutation]) -> bool {
    let n = perms[0].n();
    if !perms[0].is_identity() || perms.last() != Some(&Permutation::reversal(n)) {
        return false;
    }
    for w in perms.windows(2) {
        let (a, b) = (w[0].as_slice(), w[1].as_slice());
        if a == b {
            return false;
        }
        let mut k = 0;
        while k < n {
            if a[k] == b[k] {
                k += 1;
                continue;
            }
            // maximal block where b reverses a
            let mut ok = false;
            for end in (k + 1..n).rev() {
                let rev: Vec<usize> = a[k..=end].iter().rev().copied().collect();
                if rev == b[k..=end] {
                    k = end + 1;
                    ok = true;
                    break;
                }
            }
            if !ok {
                return false;
            }
        }
    }
    for x in 1..=n {
        for y in x + 1..=n {
            let flips = perms.windows(2).filter(|w| w[0].above(x, y) != w[1].above(x, y)).count();
            if flips != 1 {
                return false;
            }
        }
    }
    true
}

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for v in (1..=n).filter(|v| !p.contains(v)) {
                let mut q: Vec<usize> = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out.into_iter().map(|p| Permutation::new(p).unwrap()).collect()
}

#[test]
fn validation_matches_oracle_exhaustively_for_short_lists() {
    for n in 2..=3 {
        let perms = all_perms(n);
        let id = Permutation::identity(n);
        // identity followed by up to three further permutations
        let mut lists: Vec<Vec<Permutation>> = vec![vec![id.clone()]];
        for _ in 0..3 {
            let next: Vec<Vec<Permutation>> = lists
                .iter()
                .flat_map(|l| perms.iter().map(move |p| [l.clone(), vec![p.clone()]].concat()))
                .collect();
            lists.extend(next.into_iter().filter(|l| l.len() <= 4));
            lists.sort();
            lists.dedup();
        }
        for l in &lists {
            let ours = validate_allowable(l).map(|r| r.is_ok()).unwrap_or(false);
            assert_eq!(ours, oracle_allowable(l), "{l:?}");
        }
    }
}

#[test]
fn simple_sequence_counts() {
    // reduced words of the longest element: 1, 2, 16, 768
    for (n, count) in [(2, 1), (3, 2), (4, 16), (5, 768)] {
        let all = all_simple_sequences(n);
        assert_eq!(all.len(), count);
        assert!(all.iter().all(|s| s.is_simple() && oracle_allowable(s.perms())));
    }
}

#[test]
fn validation_matches_oracle_on_random_n4_lists() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..2000 {
        let seq = random_simple_sequence(4, &mut rng);
        let mut perms = seq.perms().to_vec();
        match rng.gen_range(0..3) {
            0 => {}
            1 => {
                let k = rng.gen_range(1..perms.len() - 1);
                perms.remove(k);
            }
            _ => {
                let k = rng.gen_range(1..perms.len() - 1);
                perms[k] = random_perm(4, &mut rng);
            }
        }
        let ours = validate_allowable(&perms).map(|r| r.is_ok()).unwrap_or(false);
        assert_eq!(ours, oracle_allowable(&perms), "{perms:?}");
    }
}

proptest! {
    #[test]
    fn word_round_trip(seed in 0u64..10_000, n in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seq = random_simple_sequence(n, &mut rng);
        let word = seq.word().unwrap();
        prop_assert_eq!(word.len(), n * (n - 1) / 2);
        prop_assert_eq!(AllowableSequence::from_word(n, &word).unwrap(), seq);
    }

    #[test]
    fn perms_text_round_trip(seed in 0u64..10_000, n in 2usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seq = random_simple_sequence(n, &mut rng);
        let text = format_perms(seq.perms());
        prop_assert_eq!(parse_perms(&text).unwrap(), seq.perms().to_vec());
    }

    #[test]
    fn chains_pass_monotonicity(seed in 0u64..10_000, n in 2usize..7, k in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sub = random_chain(n, k, &mut rng);
        prop_assert!(validate_subcandidate(&sub).unwrap().is_ok());
        prop_assert!(!some_pair_recrosses(&sub.perms));
    }

    #[test]
    fn merging_steps_stays_allowable(seed in 0u64..10_000, n in 3usize..7) {
        // deleting a permutation whose neighbours differ by disjoint
        // blocks keeps the sequence allowable exactly when the oracle says so
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seq = random_simple_sequence(n, &mut rng);
        let mut perms = seq.perms().to_vec();
        let k = 1 + (seed as usize) % (perms.len() - 2).max(1);
        if k < perms.len() - 1 {
            perms.remove(k);
        }
        let ours = validate_allowable(&perms).map(|r| r.is_ok()).unwrap_or(false);
        prop_assert_eq!(ours, oracle_allowable(&perms));
    }
}
