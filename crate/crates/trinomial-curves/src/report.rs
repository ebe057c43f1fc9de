//! Frobenius-semistability reports for the syzygy bundle `V_n` of a
//! trinomial curve: the destabilizing level, the Harder–Narasimhan slope
//! gap, and (when the destabilizing line bundle is defined over the prime
//! field) its exact degree.
//!
//! The class-to-characteristic dictionary is proved for `d ≥ 4` and
//! `p ≥ max{n, d²}`; outside that window [`report`] refuses unless `force`
//! is set, in which case the result is marked conjectural via
//! `preconditions_ok = false`.

use crate::arith::is_prime;
use crate::classify::{classify, Classification, ClassifyError};
use crate::delta::{delta, DeltaError, DeltaValue};
use crate::invariants::{invariants, reduce, Invariants, InvariantsError};
use crate::poly::Trinomial;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use thiserror::Error;

/// Outcome of the Frobenius-semistability question for one curve, `n`, and
/// congruence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every Frobenius pull-back of `V_n` is semistable.
    StronglySemistable,
    /// The `s`-th Frobenius pull-back is the first unstable one
    /// (`s = 0` means `V_n` itself is unstable).
    UnstableAt { s: u32 },
}

/// Extra data for irregular curves (a coordinate point of multiplicity
/// `r ≥ d/2`), where the answer is independent of both `p` and the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrregularCase {
    pub two_r_eq_d: bool,
    /// slope excess `μ(L) − μ(V_n) = (2r−d)²n²/(4d)` of the destabilizing
    /// line bundle; zero exactly when `2r = d`
    pub gap: BigRational,
}

/// A full semistability report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemistabilityReport {
    pub verdict: Verdict,
    /// Harder–Narasimhan slope gap `λ(1−td)/2` at the destabilizing level
    /// (`None` when strongly semistable)
    pub hn_gap: Option<BigRational>,
    /// degree of the destabilizing line bundle, available when `V_n` itself
    /// is unstable (`s = 0`) and the class is `±1`
    pub deg_l: Option<BigRational>,
    /// whether the proved window `d ≥ 4`, `p ≥ max{n, d²}` holds; `false`
    /// means the report was forced and is conjectural
    pub preconditions_ok: bool,
    /// smallest characteristic the dictionary is proved for
    pub min_valid_p: u64,
    pub irregular_case: Option<IrregularCase>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("outside the proved range: {reason}")]
    OutOfTheoremRange { reason: String },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("class {l} is not coprime to the modulus {m}")]
    NotCoprime { l: u64, m: u64 },
    #[error("class-based queries need a regular curve")]
    NotRegular,
    #[error(transparent)]
    Unclassifiable(#[from] ClassifyError),
    #[error(transparent)]
    Internal(#[from] InvariantsError),
}

impl From<DeltaError> for ReportError {
    fn from(e: DeltaError) -> Self {
        match e {
            DeltaError::NotCoprime { l, m } => ReportError::NotCoprime { l, m },
        }
    }
}

fn irregular_report(
    d: u32,
    r: u32,
    n: u64,
    preconditions_ok: bool,
    min_valid_p: u64,
) -> SemistabilityReport {
    let excess = BigInt::from(2 * r as u64) - BigInt::from(d as u64);
    let gap = BigRational::new(
        &excess * &excess * BigInt::from(n) * BigInt::from(n),
        BigInt::from(4 * d as u64),
    );
    let two_r_eq_d = 2 * r == d;
    SemistabilityReport {
        verdict: if two_r_eq_d {
            Verdict::StronglySemistable
        } else {
            Verdict::UnstableAt { s: 0 }
        },
        hn_gap: (!two_r_eq_d).then(|| gap.clone()),
        deg_l: None,
        preconditions_ok,
        min_valid_p,
        irregular_case: Some(IrregularCase { two_r_eq_d, gap }),
    }
}

fn regular_report(
    inv: &Invariants,
    n: u64,
    l: u64,
    preconditions_ok: bool,
    min_valid_p: u64,
) -> Result<SemistabilityReport, ReportError> {
    let red = reduce(inv, n);
    let two_lh = 2 * red.lambda_h;
    let l = l % two_lh;
    match delta(inv, n, l)? {
        DeltaValue::StronglySemistable => Ok(SemistabilityReport {
            verdict: Verdict::StronglySemistable,
            hn_gap: None,
            deg_l: None,
            preconditions_ok,
            min_valid_p,
            irregular_case: None,
        }),
        DeltaValue::Finite { td, ds } => {
            let gap = BigRational::from(BigInt::from(inv.lambda)) * (BigRational::one() - &td)
                / BigRational::from(BigInt::from(2));
            let deg_l = (ds == 0 && (l == 1 || l == two_lh - 1)).then(|| {
                let slope_vn = BigRational::new(
                    -BigInt::from(3u32) * BigInt::from(inv.d) * BigInt::from(n),
                    BigInt::from(2),
                );
                slope_vn + &gap
            });
            Ok(SemistabilityReport {
                verdict: Verdict::UnstableAt { s: ds },
                hn_gap: Some(gap),
                deg_l,
                preconditions_ok,
                min_valid_p,
                irregular_case: None,
            })
        }
    }
}

/// Report for the concrete characteristic `p`. Outside the proved window
/// this fails with [`ReportError::OutOfTheoremRange`] unless `force` is set.
pub fn report(
    t: &Trinomial,
    n: u64,
    p: u64,
    force: bool,
) -> Result<SemistabilityReport, ReportError> {
    if !is_prime(p) {
        return Err(ReportError::NotPrime { p });
    }
    let d = t.degree();
    let min_valid_p = n.max(d as u64 * d as u64);
    let window = d >= 4 && p >= min_valid_p;
    if !window && !force {
        let reason = if d < 4 {
            format!("degree {d} is below 4")
        } else {
            format!("p = {p} is below max(n, d^2) = {min_valid_p}")
        };
        return Err(ReportError::OutOfTheoremRange { reason });
    }
    match classify(t)? {
        Classification::Irregular { r, .. } => {
            Ok(irregular_report(d, r, n, window, min_valid_p))
        }
        Classification::Regular { normal_form } => {
            let inv = invariants(&normal_form)?;
            let red = reduce(&inv, n);
            regular_report(&inv, n, p % (2 * red.lambda_h), window, min_valid_p)
        }
    }
}

/// Report for a congruence class `l` modulo `2λ_h`, covering every prime
/// `p ≡ ±l (mod 2λ_h)` with `p ≥ min_valid_p`. Regular curves of degree
/// `≥ 4` only.
pub fn report_by_class(t: &Trinomial, n: u64, l: u64) -> Result<SemistabilityReport, ReportError> {
    let d = t.degree();
    if d < 4 {
        return Err(ReportError::OutOfTheoremRange {
            reason: format!("degree {d} is below 4"),
        });
    }
    match classify(t)? {
        Classification::Irregular { .. } => Err(ReportError::NotRegular),
        Classification::Regular { normal_form } => {
            let inv = invariants(&normal_form)?;
            let min_valid_p = n.max(d as u64 * d as u64);
            regular_report(&inv, n, l, true, min_valid_p)
        }
    }
}
