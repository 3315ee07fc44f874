mod common;

use std::collections::HashSet;

use approaching::arrgeom::*;
use approaching::dynamics::*;
use approaching::extend::*;
use approaching::generators::{pencil, random_approaching, random_coloring};
use approaching::Rational;
use approaching::Error;
use common::*;
use proptest::prelude::*;

#[test]
fn reduced_word_counts_match_enumeration() {
    for n in 2..=5 {
        assert_eq!(reduced_word_count(n) as usize, all_simple_sequences(n).len());
    }
}

#[test]
fn unfiltered_flip_graphs_cover_all_classes() {
    for n in 3..=5 {
        let g = flip_graph(n, FlipFilter::All).unwrap();
        let oracle: HashSet<ClassKey> = all_simple_sequences(n).iter().map(|s| class_key(s).unwrap()).collect();
        assert_eq!(g.nodes.len(), oracle.len());
        assert!(g.connected);
    }
}

#[test]
fn flips_are_involutions() {
    for seq in all_simple_sequences(5).into_iter().take(100) {
        for mv in enumerate_flips(&seq).unwrap() {
            let out = apply_flip(&seq, &mv).unwrap();
            assert_ne!(class_key(&out).unwrap(), class_key(&seq).unwrap());
            let back = enumerate_flips(&out)
                .unwrap()
                .into_iter()
                .map(|m| apply_flip(&out, &m).unwrap())
                .any(|s| class_key(&s).unwrap() == class_key(&seq).unwrap());
            assert!(back);
        }
    }
}

#[test]
fn pencil_has_no_bichromatic_triangle() {
    let arr = random_coloring(pencil(4).unwrap(), 1).unwrap();
    assert!(matches!(bichromatic_triangle(&arr), Err(Error::Pencil(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn found_triangles_are_cells(seed in 0u64..100_000, n in 3usize..9) {
        let arr = random_approaching(n, 2, seed).unwrap();
        let arr = if is_approaching(&arr, true) { arr } else { strictify(&arr).unwrap() };
        let arr = random_coloring(arr, seed).unwrap();
        let cell = bichromatic_triangle(&arr).unwrap();
        prop_assert!(is_empty_triangle(&arr, cell.lines));
        let colors = arr.colors().unwrap();
        let [a, b, c] = cell.lines;
        prop_assert!(!(colors[a] == colors[b] && colors[b] == colors[c]));
    }

    #[test]
    fn extensions_stay_approaching(seed in 0u64..100_000, n in 2usize..7, num in 0i64..=8) {
        let arr = random_approaching(n, 3, seed).unwrap();
        let lambda = Rational::new(num.into(), 8.into());
        let cc = convex_combination(&arr, (seed as usize) % (n - 1), &lambda).unwrap();
        prop_assert_eq!(cc.n(), n + 1);
        prop_assert!(is_approaching(&cc, false));
        let delta = Rational::new((num + 1).into(), 4.into());
        for side in [Extreme::Top, Extreme::Bottom] {
            let ext = extend_extreme(&arr, &delta, side).unwrap();
            prop_assert!(is_approaching(&ext, false));
        }
    }
}
