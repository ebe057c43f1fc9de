//! Exact Hilbert–Kunz multiplicities for trinomial curves.
//!
//! For a regular curve with invariants `(d, α, β, ν, λ)` and a class `l`
//! with Δ-value `(td, s)`, the multiplicity of the cone over the curve in
//! characteristic `p ≡ ±l (mod 2λ_h)` is
//!
//! ```text
//! e_HK = 3·d·n²/4 + c² / (4·d·p^{2s})      with c = λ(1 − td),
//! ```
//!
//! an exact rational number; strongly semistable classes have no correction
//! term. Irregular curves get the p-independent value
//! `3·d·n²/4 + (2r−d)²·n²/(4d)` instead.

use crate::classify::{classify, Classification, ClassifyError};
use crate::delta::{delta, DeltaError, DeltaValue};
use crate::invariants::{invariants, reduce, InvariantsError};
use crate::poly::Trinomial;
use crate::arith::is_prime;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

/// A Hilbert–Kunz multiplicity as a closed formula in the characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HKFormula {
    pub d: u32,
    pub n: u64,
    /// the semistable part `3·d·n²/4`
    pub base: BigRational,
    /// `λ(1 − td)` for a finite Δ-value; `0` when strongly semistable or
    /// irregular
    pub c: u64,
    /// the Frobenius level of the first solution, when one exists
    pub s: Option<u32>,
    /// the p-independent correction `(2r−d)²·n²/(4d)` of an irregular curve
    pub irregular_term: Option<BigRational>,
}

/// A Hilbert–Kunz multiplicity evaluated at a concrete characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HKValue {
    pub value: BigRational,
    /// 12-significant-digit decimal rendering (display only; `value` is
    /// authoritative)
    pub decimal: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HkError {
    #[error("p = {p} is below n = {n}; the dictionary needs p >= n")]
    PBelowN { p: u64, n: u64 },
    #[error("class {l} is not coprime to the modulus {m}")]
    NotCoprime { l: u64, m: u64 },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("a congruence class is required for a regular curve")]
    ClassRequired,
    #[error(transparent)]
    Unclassifiable(#[from] ClassifyError),
    #[error(transparent)]
    Internal(#[from] InvariantsError),
}

impl From<DeltaError> for HkError {
    fn from(e: DeltaError) -> Self {
        match e {
            DeltaError::NotCoprime { l, m } => HkError::NotCoprime { l, m },
        }
    }
}

fn big_ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// Renders a rational as `num` or `num/den` (lowest terms, the crate's
/// canonical machine form).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl HKFormula {
    /// The exact multiplicity at characteristic `p` (no validity checks; the
    /// caller chooses a `p` matching the class the formula was built for).
    pub fn evaluate(&self, p: u64) -> BigRational {
        let mut value = self.base.clone();
        if let Some(term) = &self.irregular_term {
            value += term;
        }
        if self.c > 0 {
            let s = self.s.expect("finite delta value carries a level");
            let c2 = BigInt::from(self.c) * BigInt::from(self.c);
            let den = BigInt::from(4 * self.d as u64) * BigInt::from(p).pow(2 * s);
            value += big_ratio(c2, den);
        }
        value
    }

    /// Symbolic rendering, e.g. `3 + 1/p^2` or `15/4 + 49/(20*p^6)`.
    /// Formulas without a p-dependent term collapse to a single rational.
    pub fn symbolic(&self) -> String {
        let p_independent = self.c == 0 || self.s == Some(0);
        if p_independent {
            // any p evaluates to the same number
            return format_rational(&self.evaluate(2));
        }
        let s = self.s.expect("finite delta value carries a level");
        let coeff = big_ratio(
            BigInt::from(self.c) * BigInt::from(self.c),
            BigInt::from(4 * self.d as u64),
        );
        let term = if coeff.denom().is_one() {
            format!("{}/p^{}", coeff.numer(), 2 * s)
        } else {
            format!("{}/({}*p^{})", coeff.numer(), coeff.denom(), 2 * s)
        };
        format!("{} + {}", format_rational(&self.base), term)
    }
}

/// Builds the Hilbert–Kunz formula for a trinomial at multiplier `n`.
/// Regular curves need the congruence class `l`; irregular curves ignore it.
pub fn ehk_formula(t: &Trinomial, n: u64, l: Option<u64>) -> Result<HKFormula, HkError> {
    let d = t.degree();
    let base = big_ratio(
        BigInt::from(3u32) * BigInt::from(d) * BigInt::from(n) * BigInt::from(n),
        BigInt::from(4u32),
    );
    match classify(t)? {
        Classification::Irregular { r, .. } => {
            let excess = BigInt::from(2 * r as u64) - BigInt::from(d as u64);
            let term = big_ratio(
                &excess * &excess * BigInt::from(n) * BigInt::from(n),
                BigInt::from(4 * d as u64),
            );
            Ok(HKFormula {
                d,
                n,
                base,
                c: 0,
                s: None,
                irregular_term: Some(term),
            })
        }
        Classification::Regular { normal_form } => {
            let inv = invariants(&normal_form)?;
            let l = l.ok_or(HkError::ClassRequired)?;
            match delta(&inv, n, l)? {
                DeltaValue::StronglySemistable => Ok(HKFormula {
                    d,
                    n,
                    base,
                    c: 0,
                    s: None,
                    irregular_term: None,
                }),
                DeltaValue::Finite { td, ds } => {
                    // c = λ(1 − td) = λ − a_n·(numerator of td over λ_{h,n})
                    let c_rat =
                        BigRational::from(BigInt::from(inv.lambda)) * (BigRational::one() - &td);
                    assert!(
                        c_rat.is_integer() && c_rat.is_positive(),
                        "λ(1 − td) must be a positive integer"
                    );
                    let c = u64::try_from(c_rat.to_integer()).expect("c fits in u64");
                    Ok(HKFormula {
                        d,
                        n,
                        base,
                        c,
                        s: Some(ds),
                        irregular_term: None,
                    })
                }
            }
        }
    }
}

/// The exact Hilbert–Kunz multiplicity at a concrete prime `p ≥ n`,
/// together with a 12-significant-digit decimal rendering.
pub fn ehk_value(t: &Trinomial, n: u64, p: u64) -> Result<HKValue, HkError> {
    if !is_prime(p) {
        return Err(HkError::NotPrime { p });
    }
    if p < n {
        return Err(HkError::PBelowN { p, n });
    }
    let l = match classify(t)? {
        Classification::Irregular { .. } => None,
        Classification::Regular { normal_form } => {
            let inv = invariants(&normal_form)?;
            let red = reduce(&inv, n);
            Some(p % (2 * red.lambda_h))
        }
    };
    let formula = ehk_formula(t, n, l)?;
    let value = formula.evaluate(p);
    let decimal = decimal_string(&value, 12);
    Ok(HKValue { value, decimal })
}

/// Decimal rendering of a rational with exactly `sig` significant digits,
/// rounding half-up on the last digit.
pub fn decimal_string(r: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.numer().abs();
    let b = r.denom().abs();

    // e = decimal exponent of the leading significant digit (0 for 1..10)
    let int_part = &a / &b;
    let mut e: i64 = if int_part.is_zero() {
        let mut scaled = a.clone() * 10;
        let mut z: i64 = 0;
        while scaled < b {
            scaled *= 10;
            z += 1;
        }
        -(z + 1)
    } else {
        int_part.to_string().len() as i64 - 1
    };

    // m = the sig leading digits of |r|, rounded half-up at the last place
    let round_div = |num: &BigInt, den: &BigInt| -> BigInt { (num * 2 + den) / (den * 2) };
    let t = e - sig as i64 + 1; // |r| ≈ m · 10^t
    let mut m = if t <= 0 {
        round_div(&(&a * BigInt::from(10u32).pow((-t) as u32)), &b)
    } else {
        round_div(&a, &(&b * BigInt::from(10u32).pow(t as u32)))
    };
    let ten_sig = BigInt::from(10u32).pow(sig as u32);
    if m == ten_sig {
        // rounding carried into a new leading digit (e.g. 0.999… → 1.000…)
        m /= 10;
        e += 1;
    }

    let digits = m.to_string();
    debug_assert_eq!(digits.len(), sig);
    let sign = if neg { "-" } else { "" };
    if e >= sig as i64 - 1 {
        let zeros = "0".repeat((e + 1 - sig as i64) as usize);
        format!("{sign}{digits}{zeros}")
    } else if e >= 0 {
        let split = (e + 1) as usize;
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    } else {
        let zeros = "0".repeat((-e - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}
