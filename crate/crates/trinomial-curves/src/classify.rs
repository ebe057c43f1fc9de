//! Regular/irregular dichotomy and canonical Type I / Type II normal forms.
//!
//! A trinomial curve is *irregular* when some coordinate point of the plane
//! has multiplicity `r` with `2r ≥ d` on the curve; otherwise it is *regular*
//! and some variable permutation rewrites it as
//!
//! * Type I:  `x^{a1} y^{a2} + y^{b1} z^{b2} + z^{c1} x^{c2}` with
//!   `a1, b1, c1 > d/2`, or
//! * Type II: `x^d + x^{a1} y^{a2} z^{a3} + y^b z^c` with `a2, c > d/2`.
//!
//! The canonical form is chosen deterministically: every match over the six
//! variable permutations and six monomial orderings is enumerated, Type II is
//! preferred when both kinds match, and the lexicographically smallest
//! exponent tuple wins.

use crate::poly::Trinomial;
use thiserror::Error;

/// A coordinate direction / variable of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Exponents of a normal form; names follow the shapes above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalFormKind {
    TypeI {
        a1: u32,
        a2: u32,
        b1: u32,
        b2: u32,
        c1: u32,
        c2: u32,
    },
    TypeII {
        a1: u32,
        a2: u32,
        a3: u32,
        b: u32,
        c: u32,
    },
}

/// A normal form together with the permutation that reached it:
/// `permutation[i]` is the input variable playing the role of the i-th
/// normal-form variable (x, y, z in that order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularNormalForm {
    pub d: u32,
    pub kind: NormalFormKind,
    pub permutation: [Axis; 3],
}

/// Outcome of the dichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Some coordinate point has multiplicity `r` with `2r ≥ d`; the axis of
    /// the largest such multiplicity is reported (ties: X before Y before Z).
    Irregular { axis: Axis, r: u32 },
    Regular { normal_form: RegularNormalForm },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(
        "no coordinate point has multiplicity >= d/2 and no variable permutation \
         matches a normal form; the input lies outside the regular/irregular \
         dichotomy (it is likely reducible)"
    )]
    Unclassifiable,
}

/// Multiplicity of the curve at the coordinate point on `axis`: the minimum
/// over monomials of the total exponent of the other two variables. Zero
/// means the point is not on the curve.
pub fn coordinate_multiplicity(t: &Trinomial, axis: Axis) -> u32 {
    let i = axis.index();
    t.monomials()
        .iter()
        .map(|m| m.degree() - m.exponent(i))
        .min()
        .expect("a trinomial has monomials")
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Decides irregular vs. regular and, for regular input, the canonical
/// normal form.
pub fn classify(t: &Trinomial) -> Result<Classification, ClassifyError> {
    let d = t.degree();

    // Irregular check first: the largest coordinate multiplicity with 2r >= d.
    let mut best: Option<(Axis, u32)> = None;
    for axis in Axis::ALL {
        let r = coordinate_multiplicity(t, axis);
        if 2 * r >= d && best.is_none_or(|(_, br)| r > br) {
            best = Some((axis, r));
        }
    }
    if let Some((axis, r)) = best {
        return Ok(Classification::Irregular { axis, r });
    }

    // exps[m][v] = exponent of input variable v in monomial m
    let exps: Vec<[u32; 3]> = t
        .monomials()
        .iter()
        .map(|m| [m.ex, m.ey, m.ez])
        .collect();

    let mut best_ii: Option<([u32; 5], [Axis; 3])> = None;
    let mut best_i: Option<([u32; 6], [Axis; 3])> = None;
    for perm in PERMS {
        let axes = [
            Axis::ALL[perm[0]],
            Axis::ALL[perm[1]],
            Axis::ALL[perm[2]],
        ];
        for order in PERMS {
            let e = |mon: usize, var: usize| exps[order[mon]][perm[var]];
            // Type II: x^d + x^{a1} y^{a2} z^{a3} + y^b z^c, a2 > d/2, c > d/2
            if e(0, 0) == d && e(2, 0) == 0 && 2 * e(1, 1) > d && 2 * e(2, 2) > d {
                let tuple = [e(1, 0), e(1, 1), e(1, 2), e(2, 1), e(2, 2)];
                if best_ii.is_none_or(|(bt, _)| tuple < bt) {
                    best_ii = Some((tuple, axes));
                }
            }
            // Type I: x^{a1} y^{a2} + y^{b1} z^{b2} + z^{c1} x^{c2}, a1,b1,c1 > d/2
            if e(0, 2) == 0
                && e(1, 0) == 0
                && e(2, 1) == 0
                && 2 * e(0, 0) > d
                && 2 * e(1, 1) > d
                && 2 * e(2, 2) > d
            {
                let tuple = [e(0, 0), e(0, 1), e(1, 1), e(1, 2), e(2, 2), e(2, 0)];
                if best_i.is_none_or(|(bt, _)| tuple < bt) {
                    best_i = Some((tuple, axes));
                }
            }
        }
    }

    // Type II preferred when both kinds match.
    if let Some(([a1, a2, a3, b, c], permutation)) = best_ii {
        return Ok(Classification::Regular {
            normal_form: RegularNormalForm {
                d,
                kind: NormalFormKind::TypeII { a1, a2, a3, b, c },
                permutation,
            },
        });
    }
    if let Some(([a1, a2, b1, b2, c1, c2], permutation)) = best_i {
        return Ok(Classification::Regular {
            normal_form: RegularNormalForm {
                d,
                kind: NormalFormKind::TypeI {
                    a1,
                    a2,
                    b1,
                    b2,
                    c1,
                    c2,
                },
                permutation,
            },
        });
    }
    Err(ClassifyError::Unclassifiable)
}
