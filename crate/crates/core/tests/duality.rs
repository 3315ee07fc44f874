mod common;

use approaching::arrgeom::{sweep_sequence, Point};
use approaching::duality::*;
use approaching::Rational;
use common::*;
use proptest::prelude::*;

fn points(raw: &[(i64, i64)]) -> Option<Vec<Point>> {
    let mut pts: Vec<Point> = raw
        .iter()
        .map(|&(x, y)| Point::new(Rational::from_integer(x.into()), Rational::from_integer(y.into())))
        .collect();
    pts.sort();
    pts.dedup_by(|a, b| a.x == b.x);
    (pts.len() == raw.len()).then_some(pts)
}

#[test]
fn two_points_give_two_crossing_lines() {
    let cfg = GenConfig::from_points(&points(&[(0, 0), (1, 1)]).unwrap()).unwrap();
    let dual = dualize(&cfg).unwrap();
    assert_eq!(dual.arrangement.n(), 2);
    assert_eq!(sweep_sequence(&dual.arrangement).unwrap().perms().len(), 2);
}

#[test]
fn config_json_round_trip() {
    let cfg = GenConfig::from_points(&points(&[(0, 0), (1, 3), (2, 1)]).unwrap()).unwrap();
    let back = GenConfig::from_json(&cfg.to_json()).unwrap();
    assert_eq!(config_sequence(&back).unwrap(), config_sequence(&cfg).unwrap());
    assert!(validate_config(&back).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Classical duality: point (a, b) to line y = a x - b.
    #[test]
    fn dual_matches_classical_duality(raw in proptest::collection::vec((-20i64..20, -20i64..20), 2..6)) {
        let Some(pts) = points(&raw) else { return Ok(()) };
        let Ok(cfg) = GenConfig::from_points(&pts) else { return Ok(()) };
        let seq = config_sequence(&cfg).unwrap();
        let classical: Vec<(Rational, Rational)> = pts.iter().map(|p| (p.x.clone(), -p.y.clone())).collect();
        let oracle = line_orders(&classical);
        prop_assert_eq!(seq.perms(), oracle.as_slice());
        let dual = dualize(&cfg).unwrap();
        prop_assert_eq!(sweep_sequence(&dual.arrangement).unwrap(), seq);
    }
}
