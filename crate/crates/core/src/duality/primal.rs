//! From an approaching arrangement to a configuration of points with the
//! same sequence, by one linear program.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{config_sequence, validate_config, GenConfig};
use crate::arrgeom::{is_approaching, sweep_sequence, Point, PolyArrangement};
use crate::error::{Error, Result};
use crate::lp::{solve_feasibility, Constraint, FeasibilityOutcome, LinearSystem};
use crate::rational::{int, Rational};

/// Points at `x = 1..=n` and one connecting pseudo-line per crossing of
/// `arr`, sampled at `x = 0..=n+1`. Point heights and line values are LP
/// variables; the system asks for
/// - each line through its two points,
/// - the lines in sweep order at `x = 0`,
/// - every pair of lines approaching,
/// - every other point strictly on the side of each line that the sweep
///   dictates (points listed before the swapped pair lie below the line).
///
/// Right-hand sides get small random offsets until the solution is a
/// configuration without extra multiple crossings.
pub fn primalize(arr: &PolyArrangement) -> Result<GenConfig> {
    if !is_approaching(arr, true) {
        return Err(Error::Precondition("needs a strictly approaching arrangement".into()));
    }
    let seq = sweep_sequence(arr)?;
    if !seq.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = arr.n();
    let swaps: Vec<(usize, usize)> = seq
        .crossing_pairs()
        .into_iter()
        .map(|step| step[0])
        .collect();
    let h = swaps.len();
    if h == 0 {
        return Err(Error::Precondition("a single line has no connecting lines".into()));
    }
    let cols = n + 2;
    let point_var = |k: usize| k; // k is 0-based
    let line_var = |g: usize, c: usize| n + g * cols + c;
    let mut names: Vec<String> = (1..=n).map(|k| format!("y[p{k}]")).collect();
    for g in 0..h {
        for c in 0..cols {
            names.push(format!("Y[{}][{c}]", g + 1));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut last_problem = String::new();
    for attempt in 0..24 {
        let mut jitter = |base: i64| -> Rational {
            if attempt == 0 {
                int(base)
            } else {
                int(base) + Rational::new(rng.gen_range(0..1000).into(), 997.into())
            }
        };
        let one = Rational::one();
        let mut sys = LinearSystem::new(names.clone());
        let perms = seq.perms();
        for (g, &(i, j)) in swaps.iter().enumerate() {
            for k in [i, j] {
                sys.push(Constraint::eq(
                    vec![(line_var(g, k), one.clone()), (point_var(k - 1), -one.clone())],
                    int(0),
                    format!("line {} through point {k}", g + 1),
                ));
            }
            let before = &perms[g];
            let pos = before.positions();
            let lo = pos[i].min(pos[j]);
            for (p, &k) in before.as_slice().iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let (sign, label) = if p < lo {
                    (1, "below")
                } else {
                    (-1, "above")
                };
                // sign * (Y_g(x_k) - y_k) >= gap
                sys.push(Constraint::ge(
                    vec![
                        (line_var(g, k), int(sign)),
                        (point_var(k - 1), int(-sign)),
                    ],
                    jitter(1),
                    format!("point {k} {label} line {}", g + 1),
                ));
            }
        }
        for g in 0..h.saturating_sub(1) {
            sys.push(Constraint::ge(
                vec![(line_var(g, 0), one.clone()), (line_var(g + 1, 0), -one.clone())],
                jitter(1),
                format!("line {} above line {} at x = 0", g + 1, g + 2),
            ));
        }
        for c in 0..cols - 1 {
            for g in 0..h {
                for f in g + 1..h {
                    sys.push(Constraint::ge(
                        vec![
                            (line_var(g, c), one.clone()),
                            (line_var(f, c), -one.clone()),
                            (line_var(g, c + 1), -one.clone()),
                            (line_var(f, c + 1), one.clone()),
                        ],
                        jitter(1),
                        format!("lines {} and {} approach after x = {c}", g + 1, f + 1),
                    ));
                }
            }
        }
        sys.push(Constraint::eq(vec![(point_var(0), one.clone())], int(0), "anchor"));

        let x = match solve_feasibility(&sys)? {
            FeasibilityOutcome::Witness(x) => x,
            FeasibilityOutcome::Certificate(_) => {
                last_problem = "the primal system is infeasible".into();
                continue;
            }
        };
        let columns: Vec<Rational> = (0..cols).map(|c| int(c as i64)).collect();
        let y: Vec<Vec<Rational>> = (0..h)
            .map(|g| (0..cols).map(|c| x[line_var(g, c)].clone()).collect())
            .collect();
        let slopes: Vec<Rational> = (0..h).map(|g| int(g as i64)).collect();
        let base = PolyArrangement::new(columns, y, slopes.clone(), slopes)?;
        let cfg = GenConfig {
            base,
            points: (0..n).map(|k| Point::new(int(k as i64 + 1), x[point_var(k)].clone())).collect(),
            incidence: swaps.clone(),
        };
        let report = validate_config(&cfg);
        if !report.is_ok() {
            last_problem = report.to_string();
            continue;
        }
        if config_sequence(&cfg)? != seq {
            return Err(Error::Verification("primal configuration has a different sequence".into()));
        }
        return Ok(cfg);
    }
    Err(Error::Verification(format!("primalization failed: {last_problem}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn three_generic_lines() {
        let l = vec![(int(-1), int(3)), (int(0), int(0)), (int(2), int(0))];
        let arr = PolyArrangement::from_lines(&l, vec![int(0), int(4)]).unwrap();
        let cfg = primalize(&arr).unwrap();
        assert_eq!(cfg.n(), 3);
        assert_eq!(config_sequence(&cfg).unwrap(), sweep_sequence(&arr).unwrap());
    }

    #[test]
    fn two_lines() {
        let l = vec![(int(-1), int(0)), (int(1), int(0))];
        let arr = PolyArrangement::from_lines(&l, vec![int(0)]).unwrap();
        let cfg = primalize(&arr).unwrap();
        assert_eq!(cfg.points.len(), 2);
        assert_eq!(cfg.incidence, vec![(1, 2)]);
    }
}
