//! Realizability decisions: encode, solve, and turn the answer into either
//! a verified arrangement or a verified certificate.

use num_traits::{One, Signed, Zero};

use super::encode::{encode_allowable, encode_with_gap, Encoding, EncodingMode};
use super::simplex::{solve_feasibility, FeasibilityOutcome};
use crate::arrgeom::{
    crossing_abscissae, crossings, is_approaching, strictify, sweep_sequence, PolyArrangement,
};
use crate::error::{Error, Result};
use crate::rational::{half, int, Rational};
use crate::seq::{
    validate_subcandidate, AllowableSequence, Permutation, SequenceViolation, SubSequenceCandidate,
    ValidationReport,
};

#[derive(Clone, Debug)]
pub struct Realization {
    pub arrangement: PolyArrangement,
    /// One abscissa per input snapshot where the sweep shows it.
    pub snapshot_x: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub encoding: Encoding,
    pub multipliers: Vec<Rational>,
}

impl Certificate {
    pub fn verify(&self) -> bool {
        self.encoding.system.check_farkas(&self.multipliers)
    }
}

#[derive(Clone, Debug)]
pub enum NotRealizable {
    /// Some pair changes order twice; no LP is needed.
    Combinatorial(ValidationReport<SequenceViolation>),
    Farkas(Box<Certificate>),
}

#[derive(Clone, Debug)]
pub enum Decision {
    Realizable(Box<Realization>),
    NotRealizable(NotRealizable),
}

impl Decision {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Decision::Realizable(_))
    }

    pub fn realization(&self) -> Option<&Realization> {
        match self {
            Decision::Realizable(r) => Some(r),
            Decision::NotRealizable(_) => None,
        }
    }
}

/// Build the arrangement described by a witness: column `c` at `x = c`,
/// rays with slope equal to the line index on both sides.
pub fn realization_from_witness(enc: &Encoding, witness: &[Rational]) -> Result<PolyArrangement> {
    if !enc.system.check_witness(witness) {
        return Err(Error::Verification("witness does not satisfy the system".into()));
    }
    let columns = (1..=enc.m()).map(|c| int(c as i64)).collect();
    let slopes: Vec<Rational> = (0..enc.n).map(|i| int(i as i64)).collect();
    let arr = PolyArrangement::new(columns, enc.values(witness), slopes.clone(), slopes)?;
    if !is_approaching(&arr, false) {
        return Err(Error::Verification("witness arrangement is not approaching".into()));
    }
    Ok(arr)
}

/// Abscissae, one inside each open interval between consecutive crossing
/// abscissae (and one on either side), paired with the order seen there.
pub fn sweep_samples(arr: &PolyArrangement) -> Result<Vec<(Rational, Permutation)>> {
    let seq = sweep_sequence(arr)?;
    let xs = crossing_abscissae(&crossings(arr)?);
    let mut out = Vec::with_capacity(seq.perms().len());
    for (k, p) in seq.perms().iter().enumerate() {
        let x = if xs.is_empty() {
            arr.columns()[0].clone()
        } else if k == 0 {
            &xs[0] - Rational::one()
        } else if k == xs.len() {
            &xs[k - 1] + Rational::one()
        } else {
            (&xs[k - 1] + &xs[k]) * half()
        };
        out.push((x, p.clone()));
    }
    Ok(out)
}

/// Abscissae where the sweep of `arr` shows each snapshot in turn.
pub fn locate_snapshots(arr: &PolyArrangement, snapshots: &[Permutation]) -> Result<Option<Vec<Rational>>> {
    let samples = sweep_samples(arr)?;
    let mut k = 0;
    let mut out = Vec::with_capacity(snapshots.len());
    for s in snapshots {
        match samples[k..].iter().position(|(_, p)| p == s) {
            Some(off) => {
                k += off;
                out.push(samples[k].0.clone());
            }
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

fn finish(
    enc: Encoding,
    outcome: FeasibilityOutcome,
    snapshots: &[Permutation],
    tidy: bool,
) -> Result<Decision> {
    match outcome {
        FeasibilityOutcome::Witness(w) => {
            let mut arr = realization_from_witness(&enc, &w)?;
            if tidy && !is_approaching(&arr, true) && sweep_sequence(&arr)?.is_simple() {
                arr = strictify(&arr)?;
            }
            let snapshot_x = locate_snapshots(&arr, snapshots)?.ok_or_else(|| {
                Error::Verification("realization does not show the requested snapshots".into())
            })?;
            Ok(Decision::Realizable(Box::new(Realization {
                arrangement: arr,
                snapshot_x,
            })))
        }
        FeasibilityOutcome::Certificate(z) => {
            let cert = Certificate {
                encoding: enc,
                multipliers: z,
            };
            if !cert.verify() {
                return Err(Error::Verification("certificate failed its check".into()));
            }
            Ok(Decision::NotRealizable(NotRealizable::Farkas(Box::new(cert))))
        }
    }
}

/// Decide whether some approaching arrangement shows `sub` as snapshots of
/// its sweep. Simple realizations are returned strictly approaching.
pub fn decide_realizable(sub: &SubSequenceCandidate, mode: EncodingMode) -> Result<Decision> {
    decide_with_gap(sub, mode, &Rational::zero())
}

/// As [`decide_realizable`]; a positive `gap` asks for a strictly
/// approaching realization directly from the LP.
pub fn decide_with_gap(sub: &SubSequenceCandidate, mode: EncodingMode, gap: &Rational) -> Result<Decision> {
    let report = validate_subcandidate(sub)?;
    if !report.is_ok() {
        return Ok(Decision::NotRealizable(NotRealizable::Combinatorial(report)));
    }
    let enc = encode_with_gap(sub, mode, gap)?;
    let outcome = solve_feasibility(&enc.system)?;
    finish(enc, outcome, &sub.perms, !gap.is_positive())
}

/// Decide whether some approaching arrangement has exactly the sweep `seq`
/// (crossings of each block at one point, in this order).
pub fn decide_allowable(seq: &AllowableSequence, mode: EncodingMode) -> Result<Decision> {
    let enc = encode_allowable(seq, mode)?;
    let outcome = solve_feasibility(&enc.system)?;
    let decision = finish(enc, outcome, seq.perms(), false)?;
    if let Decision::Realizable(r) = &decision {
        if &sweep_sequence(&r.arrangement)? != seq {
            return Err(Error::Verification("realization has a different sweep".into()));
        }
    }
    Ok(decision)
}

/// Straight lines through the points of `arr` above `v1` and `v2`.
/// Requires the slopes obtained this way to increase strictly, which holds
/// when `arr` is strictly approaching between the two abscissae.
pub fn lines_from_three_snapshots(
    arr: &PolyArrangement,
    v1: &Rational,
    v2: &Rational,
) -> Result<Vec<(Rational, Rational)>> {
    if v1 >= v2 {
        return Err(Error::Range("snapshot abscissae must increase".into()));
    }
    let dx = v2 - v1;
    let lines: Vec<(Rational, Rational)> = (0..arr.n())
        .map(|i| {
            let (a, b) = (arr.evaluate(i, v1), arr.evaluate(i, v2));
            let slope = (&b - &a) / &dx;
            let intercept = a - &slope * v1;
            (slope, intercept)
        })
        .collect();
    if lines.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::Precondition(
            "slopes do not increase strictly; strictify the arrangement first".into(),
        ));
    }
    Ok(lines)
}

/// Decide a three-snapshot candidate and, when realizable, return straight
/// lines showing the same snapshots.
pub fn three_snapshot_lines(
    sub: &SubSequenceCandidate,
) -> Result<Option<Vec<(Rational, Rational)>>> {
    let with_id = sub.with_identity();
    if with_id.len() != 3 {
        return Err(Error::Structure("expected the identity and two more snapshots".into()));
    }
    let decision = decide_with_gap(sub, EncodingMode::Full, &Rational::one())?;
    let Some(r) = decision.realization() else {
        return Ok(None);
    };
    let k = r.snapshot_x.len();
    let lines = lines_from_three_snapshots(&r.arrangement, &r.snapshot_x[k - 2], &r.snapshot_x[k - 1])?;
    let (x1, x2) = (&r.snapshot_x[k - 2], &r.snapshot_x[k - 1]);
    let straight = PolyArrangement::from_lines(&lines, vec![x1.clone(), x2.clone()])?;
    let ok = |x: &Rational, p: &Permutation| {
        crate::arrgeom::order_at(&straight, x) == *p
    };
    if !(ok(x1, &with_id[1]) && ok(x2, &with_id[2])) {
        return Err(Error::Verification("straight lines lost a snapshot".into()));
    }
    Ok(Some(lines))
}

/// Columnwise convex combination `(1 - t) A + t B` of two column-aligned
/// realizations of the same sweep.
pub fn interpolate_realizations(
    a: &PolyArrangement,
    b: &PolyArrangement,
    t: &Rational,
) -> Result<PolyArrangement> {
    if t.is_negative() || t > &Rational::one() {
        return Err(Error::Range("t must lie in [0, 1]".into()));
    }
    if a.n() != b.n() || a.m() != b.m() {
        return Err(Error::Structure("arrangements differ in shape".into()));
    }
    let seq = sweep_sequence(a)?;
    if sweep_sequence(b)? != seq {
        return Err(Error::Precondition("arrangements have different sweeps".into()));
    }
    let s = Rational::one() - t;
    let mix = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        u.iter().zip(v).map(|(p, q)| p * &s + q * t).collect()
    };
    let y = (0..a.n()).map(|i| mix(a.row(i), b.row(i))).collect();
    let out = PolyArrangement::new(
        mix(a.columns(), b.columns()),
        y,
        mix(a.left_slopes(), b.left_slopes()),
        mix(a.right_slopes(), b.right_slopes()),
    )?;
    if !is_approaching(&out, false) || sweep_sequence(&out)? != seq {
        return Err(Error::Verification(
            "interpolation left the common sweep; the realizations are not column-aligned".into(),
        ));
    }
    Ok(out)
}
