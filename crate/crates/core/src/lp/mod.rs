mod encode;
mod realize;
mod simplex;

pub use encode::{
    encode, encode_allowable, encode_columns, encode_with_gap, Census, ColumnSpec,
    ConstraintKind, Encoding, EncodingMode,
};
pub use realize::{
    decide_allowable, decide_realizable, decide_with_gap, interpolate_realizations,
    lines_from_three_snapshots, locate_snapshots, realization_from_witness, sweep_samples,
    three_snapshot_lines, Certificate, Decision, NotRealizable, Realization,
};
pub use simplex::{
    solve_feasibility, verify_certificate, Constraint, FeasibilityOutcome, LinearSystem, Relation,
};
