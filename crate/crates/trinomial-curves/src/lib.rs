//! Exact arithmetic for plane trinomial curves.
//!
//! Given an irreducible homogeneous trinomial `h` in `x, y, z`, this crate
//! classifies the curve (irregular vs. regular with a Type I / Type II normal
//! form), computes its integer invariants, and evaluates the congruence-class
//! map that controls the Frobenius semistability of the curve's syzygy
//! bundles. From that map it derives exact Hilbert-Kunz multiplicities
//! `3dn²/4 + c²/(4d·p^{2s})` and Harder-Narasimhan slope data, all in exact
//! integer/rational arithmetic — no floats anywhere.
//!
//! The crate keeps two independent solvers for the core lattice inequality
//! (a direct big-rational search and a fast modular-residue path) plus a set
//! of closed-form special-case values, so every computed number can be
//! cross-checked against an independently derived one.

pub mod arith;
pub mod classify;
pub mod closed_forms;
pub mod delta;
pub mod hk;
pub mod invariants;
pub mod poly;
pub mod report;
pub mod taxicab;

pub use classify::{
    classify, coordinate_multiplicity, Axis, Classification, ClassifyError, NormalFormKind,
    RegularNormalForm,
};
pub use closed_forms::{
    crosscheck, klein_delta, klein_fermat_ehk, klein_hn_gap, symmetric_delta_class1,
    symmetric_delta_lambda_pm2, CheckStatus, CheckValue, ClosedEhk, ClosedFormError,
    CrosscheckOutcome, KleinClassValue, KleinEhkCase,
};
pub use delta::{delta, delta_table, multiplicative_order, DeltaError, DeltaRow, DeltaTable, DeltaValue};
pub use hk::{decimal_string, ehk_formula, ehk_value, format_rational, HkError, HKFormula, HKValue};
pub use invariants::{invariants, reduce, Invariants, InvariantsError, ReducedInvariants};
pub use poly::{
    format_trinomial, parse_exponent_form, parse_trinomial, Monomial, ParseError, Trinomial,
};
pub use report::{report, report_by_class, IrregularCase, ReportError, SemistabilityReport, Verdict};
pub use taxicab::{
    nearest_odd_sum, residue_point, td_solution_direct, td_solution_residue, OddLatticePoint,
    ResiduePoint, TdSolution,
};
