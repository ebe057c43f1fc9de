//! Integer invariants `(d, α, β, ν, λ)` of a regular normal form and their
//! gcd reductions `(a, λ_h, α₁, β₁, ν₁)` and `(a_n, λ_{h,n})`.
//!
//! Every value is cross-checked before being returned: the triangle
//! inequalities, the bound `2λ ≥ α+β+ν`, and the determinant identity
//! `λ·d = |det A|` for the normal form's exponent matrix. A failure signals a
//! normalization bug (never a user error) and is reported as
//! `InternalInconsistency`.

use crate::classify::{NormalFormKind, RegularNormalForm};
use num::integer::gcd;
use thiserror::Error;

/// The Monsky invariants of a regular trinomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariants {
    pub d: u32,
    pub alpha: u64,
    pub beta: u64,
    pub nu: u64,
    pub lambda: u64,
}

impl Invariants {
    /// `true` when α = β = ν (the fully symmetric case).
    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta && self.beta == self.nu
    }
}

/// Gcd-reduced invariants; the `n`-dependent fields are for the `n` recorded
/// in the struct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedInvariants {
    /// gcd(α, β, ν, λ)
    pub a: u64,
    /// λ / a (congruence classes live modulo 2λ_h)
    pub lambda_h: u64,
    pub alpha1: u64,
    pub beta1: u64,
    pub nu1: u64,
    /// the multiplier these reductions were taken for
    pub n: u64,
    /// gcd(αn, βn, νn, λ)
    pub a_n: u64,
    /// λ / a_n; always divides λ_h
    pub lambda_hn: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("internal inconsistency while deriving invariants: {0}")]
    InternalInconsistency(String),
}

fn det3(m: [[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Computes `(d, α, β, ν, λ)` from a normal form, verifying the determinant
/// identity and the inequality constraints before returning.
pub fn invariants(nf: &RegularNormalForm) -> Result<Invariants, InvariantsError> {
    let d = nf.d as i128;
    let (alpha, beta, nu, lambda, matrix) = match nf.kind {
        NormalFormKind::TypeI {
            a1,
            a2,
            b1,
            b2,
            c1,
            c2,
        } => {
            let (a1, a2, b1, b2, c1, c2) = (
                a1 as i128, a2 as i128, b1 as i128, b2 as i128, c1 as i128, c2 as i128,
            );
            (
                a1 + b1 - d,
                a1 + c1 - d,
                b1 + c1 - d,
                a1 * b1 + a2 * c2 - b1 * c2,
                [[a1, a2, 0], [0, b1, b2], [c2, 0, c1]],
            )
        }
        NormalFormKind::TypeII { a1, a2, a3, b, c } => {
            let (a1, a2, a3, b, c) = (a1 as i128, a2 as i128, a3 as i128, b as i128, c as i128);
            (
                a2,
                c,
                a2 + c - d,
                a2 * c - a3 * b,
                [[d, 0, 0], [a1, a2, a3], [0, b, c]],
            )
        }
    };

    let fail = |msg: String| Err(InvariantsError::InternalInconsistency(msg));
    if alpha <= 0 || beta <= 0 || nu <= 0 || lambda <= 0 {
        return fail(format!(
            "nonpositive invariant: alpha={alpha} beta={beta} nu={nu} lambda={lambda}"
        ));
    }
    if alpha >= beta + nu || beta >= alpha + nu || nu >= alpha + beta {
        return fail(format!(
            "triangle inequality violated: alpha={alpha} beta={beta} nu={nu}"
        ));
    }
    if 2 * lambda < alpha + beta + nu {
        return fail(format!(
            "2*lambda >= alpha+beta+nu violated: alpha={alpha} beta={beta} nu={nu} lambda={lambda}"
        ));
    }
    // implied by the two checks above, but cheap and load-bearing downstream
    if alpha >= lambda || beta >= lambda || nu >= lambda {
        return fail(format!(
            "invariant not below lambda: alpha={alpha} beta={beta} nu={nu} lambda={lambda}"
        ));
    }
    let det = det3(matrix).abs();
    if lambda * d != det {
        return fail(format!("determinant cross-check failed: lambda*d={} |det|={det}", lambda * d));
    }

    Ok(Invariants {
        d: nf.d,
        alpha: alpha as u64,
        beta: beta as u64,
        nu: nu as u64,
        lambda: lambda as u64,
    })
}

fn gcd4(a: u128, b: u128, c: u128, d: u128) -> u128 {
    gcd(gcd(a, b), gcd(c, d))
}

/// Reduces the invariants by `a = gcd(α,β,ν,λ)` and, for the given `n ≥ 1`,
/// by `a_n = gcd(αn,βn,νn,λ)`.
pub fn reduce(inv: &Invariants, n: u64) -> ReducedInvariants {
    assert!(n >= 1, "reduce requires n >= 1");
    let (alpha, beta, nu, lambda) = (
        inv.alpha as u128,
        inv.beta as u128,
        inv.nu as u128,
        inv.lambda as u128,
    );
    let a = gcd4(alpha, beta, nu, lambda) as u64;
    let a_n = gcd4(alpha * n as u128, beta * n as u128, nu * n as u128, lambda) as u64;
    ReducedInvariants {
        a,
        lambda_h: inv.lambda / a,
        alpha1: inv.alpha / a,
        beta1: inv.beta / a,
        nu1: inv.nu / a,
        n,
        a_n,
        lambda_hn: inv.lambda / a_n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, Classification};
    use crate::poly::parse_trinomial;

    pub(crate) fn invariants_of(text: &str) -> Invariants {
        let t = parse_trinomial(text).unwrap();
        match classify(&t).unwrap() {
            Classification::Regular { normal_form } => invariants(&normal_form).unwrap(),
            other => panic!("expected regular, got {other:?}"),
        }
    }

    #[test]
    fn fermat_quartic_invariants() {
        let inv = invariants_of("x^4 + y^4 + z^4");
        assert_eq!(
            inv,
            Invariants {
                d: 4,
                alpha: 4,
                beta: 4,
                nu: 4,
                lambda: 16
            }
        );
        assert!(inv.is_symmetric());
    }

    #[test]
    fn klein_quartic_invariants() {
        let inv = invariants_of("x^3*y + y^3*z + z^3*x");
        assert_eq!(
            inv,
            Invariants {
                d: 4,
                alpha: 2,
                beta: 2,
                nu: 2,
                lambda: 7
            }
        );
    }

    #[test]
    fn klein_quintic_invariants() {
        let inv = invariants_of("x^4*y + y^4*z + z^4*x");
        assert_eq!(
            inv,
            Invariants {
                d: 5,
                alpha: 3,
                beta: 3,
                nu: 3,
                lambda: 13
            }
        );
    }

    #[test]
    fn asymmetric_type_i_invariants() {
        // canonical labeling is y^4*z^2 + z^4*x^2 + x^5*y (lex-smallest tuple),
        // so alpha=4+4-6=2, beta=4+5-6=3, nu=4+5-6=3, lambda=16+2-4=14
        let inv = invariants_of("x^5*y + y^4*z^2 + z^4*x^2");
        assert_eq!(
            inv,
            Invariants {
                d: 6,
                alpha: 2,
                beta: 3,
                nu: 3,
                lambda: 14
            }
        );
    }

    #[test]
    fn reductions() {
        let fermat = invariants_of("x^4 + y^4 + z^4");
        let red1 = reduce(&fermat, 1);
        assert_eq!(red1.a, 4);
        assert_eq!(red1.lambda_h, 4);
        assert_eq!((red1.alpha1, red1.beta1, red1.nu1), (1, 1, 1));
        assert_eq!(red1.a_n, 4);
        assert_eq!(red1.lambda_hn, 4);
        let red2 = reduce(&fermat, 2);
        assert_eq!(red2.a_n, 8);
        assert_eq!(red2.lambda_hn, 2);
        let red4 = reduce(&fermat, 4);
        assert_eq!(red4.lambda_hn, 1);

        let klein = invariants_of("x^3*y + y^3*z + z^3*x");
        let red = reduce(&klein, 1);
        assert_eq!(red.a, 1);
        assert_eq!(red.lambda_h, 7);
        assert_eq!(red.lambda_hn, 7);
    }

    #[test]
    fn inconsistent_normal_form_is_rejected() {
        // a hand-built form violating a1 > d/2 makes alpha = 0
        let bad = RegularNormalForm {
            d: 4,
            kind: NormalFormKind::TypeI {
                a1: 2,
                a2: 2,
                b1: 2,
                b2: 2,
                c1: 2,
                c2: 2,
            },
            permutation: crate::classify::Axis::ALL,
        };
        assert!(matches!(
            invariants(&bad),
            Err(InvariantsError::InternalInconsistency(_))
        ));
    }
}
