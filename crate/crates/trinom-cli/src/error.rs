//! Mapping from library errors to stable machine-readable error codes.
//!
//! Every failure the binary can hit is funneled into [`AppError`]: a stable
//! `code` string (part of the CLI contract, never reworded), a human-readable
//! message, and a flag separating domain errors (bad input or out-of-range
//! requests, exit status 2) from internal faults (exit status 1).

use std::fmt;

use trinomial_curves::{
    ClassifyError, ClosedFormError, DeltaError, HkError, InvariantsError, ParseError, ReportError,
};

#[derive(Debug)]
pub struct AppError {
    pub code: &'static str,
    pub message: String,
    internal: bool,
}

impl AppError {
    pub fn domain(code: &'static str, message: impl Into<String>) -> Self {
        AppError {
            code,
            message: message.into(),
            internal: false,
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        AppError {
            code: "internal",
            message: message.into(),
            internal: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.internal {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        let code = match &e {
            ParseError::NotTrinomial { .. } => "not_trinomial",
            ParseError::DuplicateMonomial { .. } => "duplicate_monomial",
            ParseError::NotHomogeneous { .. } => "not_homogeneous",
            ParseError::ZeroCoefficient { .. } => "zero_coefficient",
            ParseError::SyntaxError { .. } => "syntax_error",
        };
        AppError::domain(code, e.to_string())
    }
}

impl From<ClassifyError> for AppError {
    fn from(e: ClassifyError) -> Self {
        AppError::domain("unclassifiable", e.to_string())
    }
}

impl From<InvariantsError> for AppError {
    fn from(e: InvariantsError) -> Self {
        AppError::internal(e.to_string())
    }
}

impl From<DeltaError> for AppError {
    fn from(e: DeltaError) -> Self {
        AppError::domain("not_coprime", e.to_string())
    }
}

impl From<HkError> for AppError {
    fn from(e: HkError) -> Self {
        let code = match &e {
            HkError::PBelowN { .. } => "p_below_n",
            HkError::NotCoprime { .. } => "not_coprime",
            HkError::NotPrime { .. } => "not_prime",
            HkError::ClassRequired => "class_required",
            HkError::Unclassifiable(_) => "unclassifiable",
            HkError::Internal(_) => return AppError::internal(e.to_string()),
        };
        AppError::domain(code, e.to_string())
    }
}

impl From<ReportError> for AppError {
    fn from(e: ReportError) -> Self {
        let code = match &e {
            ReportError::OutOfTheoremRange { .. } => "out_of_theorem_range",
            ReportError::NotPrime { .. } => "not_prime",
            ReportError::NotCoprime { .. } => "not_coprime",
            ReportError::NotRegular => "not_regular",
            ReportError::Unclassifiable(_) => "unclassifiable",
            ReportError::Internal(_) => return AppError::internal(e.to_string()),
        };
        AppError::domain(code, e.to_string())
    }
}

impl From<ClosedFormError> for AppError {
    fn from(e: ClosedFormError) -> Self {
        let code = match &e {
            ClosedFormError::NotSymmetric => "not_symmetric",
            ClosedFormError::HypothesisNotMet => "hypothesis_not_met",
        };
        AppError::domain(code, e.to_string())
    }
}
