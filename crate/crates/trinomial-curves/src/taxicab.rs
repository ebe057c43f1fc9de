//! Taxicab distance from a rational point to the odd lattice
//! `L = { u ∈ Z³ : u₁+u₂+u₃ odd }`, and two independent ways to decide
//! whether the scaled point `q = l^s·n/λ · (α, β, ν)` lies at distance
//! below 1 from `L`:
//!
//! * [`td_solution_direct`] — exact big-rational arithmetic straight from the
//!   definition (rounding plus a parity fix-up). Slow but transparent; used
//!   as the oracle in tests.
//! * [`td_solution_residue`] — integer arithmetic modulo `2·λ_{h,n}`. The
//!   point `q` only depends on `l^s mod 2λ_{h,n}` up to even integer shifts,
//!   which never change taxicab distance to `L`; this path needs no big
//!   integers and is what the production code calls.
//!
//! Both return the distance only when it is `< 1` (a "solution"); otherwise
//! `None`. At most one of the four sign patterns can produce a solution, so
//! the result is well defined.

use crate::arith::mod_pow;
use crate::invariants::{Invariants, ReducedInvariants};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed};

/// A point of the odd lattice `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddLatticePoint {
    pub u: [BigInt; 3],
}

/// A witness that the scaled invariant point lies at taxicab distance `< 1`
/// from the odd lattice, together with that distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdSolution {
    pub u: OddLatticePoint,
    pub td: BigRational,
}

/// Residues `(w₁, w₂, w₃)` modulo `2λ_{h,n}` of `u − m·δ` for a solution
/// found by the residue path, where `m = λ_{h,n}` and `δ` is the sign
/// pattern that produced the hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResiduePoint {
    pub w: [u64; 3],
}

fn round_half_up(q: &BigRational) -> BigInt {
    // floor(q + 1/2)
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (q + half).floor().to_integer()
}

/// Nearest point of the odd lattice `L` under taxicab distance, with the
/// distance itself.
///
/// Each coordinate is rounded half-up to the nearest integer. If the
/// resulting sum is even, the single coordinate where a one-step move is
/// cheapest is flipped to its second-nearest integer (ties go to the lowest
/// index; exact integers flip up).
pub fn nearest_odd_sum(q: &[BigRational; 3]) -> (OddLatticePoint, BigRational) {
    let r: [BigInt; 3] = core::array::from_fn(|i| round_half_up(&q[i]));
    let sum_odd = (&r[0] + &r[1] + &r[2]).is_odd();
    if sum_odd {
        let dist: BigRational = (0..3).map(|i| (&q[i] - &r[i]).abs()).sum();
        return (OddLatticePoint { u: r }, dist);
    }
    // flipping coordinate i to the second-nearest integer costs
    // 1 - |q_i - r_i| extra unless q_i is an integer, where it costs 1
    let mut best = 0usize;
    let mut best_cost: Option<BigRational> = None;
    let mut flipped: [BigInt; 3] = r.clone();
    for i in 0..3 {
        let frac = &q[i] - &r[i];
        let cost = BigRational::one() - frac.abs();
        if best_cost.as_ref().is_none_or(|b| &cost < b) {
            best_cost = Some(cost);
            best = i;
        }
    }
    let frac = &q[best] - &r[best];
    // the flip goes to the second-nearest integer: the neighbor on the same
    // side as the fractional part (so exact halves, which round up, flip
    // down); exact integers flip up
    if frac.is_negative() {
        flipped[best] = &r[best] - 1;
    } else {
        flipped[best] = &r[best] + 1;
    }
    let dist: BigRational = (0..3).map(|i| (&q[i] - &flipped[i]).abs()).sum();
    (OddLatticePoint { u: flipped }, dist)
}

/// Direct (big-rational) test for a taxicab solution at level `s`:
/// computes `q = l^s·n/λ·(α,β,ν)` exactly, finds the nearest odd-sum
/// lattice point and keeps the answer only when the distance is below 1.
pub fn td_solution_direct(inv: &Invariants, n: u64, l: u64, s: u32) -> Option<TdSolution> {
    let scale = BigInt::from(l).pow(s) * BigInt::from(n);
    let lambda = BigInt::from(inv.lambda);
    let q: [BigRational; 3] = [
        BigRational::new(&scale * BigInt::from(inv.alpha), lambda.clone()),
        BigRational::new(&scale * BigInt::from(inv.beta), lambda.clone()),
        BigRational::new(&scale * BigInt::from(inv.nu), lambda),
    ];
    let (u, td) = nearest_odd_sum(&q);
    (td < BigRational::one()).then_some(TdSolution { u, td })
}

/// The four sign patterns: all-odd target, or exactly one odd coordinate.
pub(crate) const SIGN_PATTERNS: [[u8; 3]; 4] = [[1, 1, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// Shared state for the residue path: `m = λ_{h,n}` and the residues
/// `A_i = α_i·n/a_n mod 2m`.
pub(crate) struct ResidueProbe {
    pub m: u64,
    pub a: [u64; 3],
}

impl ResidueProbe {
    pub fn new(red: &ReducedInvariants) -> Self {
        // rescale the already a-reduced data by g = gcd(α₁n, β₁n, ν₁n, λ_h);
        // then m = λ_h/g = λ_{h,n} and A_i = α₁n/g
        let n = red.n as u128;
        let coords = [
            red.alpha1 as u128 * n,
            red.beta1 as u128 * n,
            red.nu1 as u128 * n,
        ];
        let mut g = red.lambda_h as u128;
        for c in coords {
            g = num::integer::gcd(g, c);
        }
        let m = (red.lambda_h as u128 / g) as u64;
        debug_assert_eq!(m, red.lambda_hn);
        let two_m = 2 * m as u128;
        ResidueProbe {
            m,
            a: core::array::from_fn(|i| (coords[i] / g % two_m) as u64),
        }
    }

    /// Residues `g_i = v·A_i mod 2m` for a given scaling residue `v`.
    pub fn point(&self, v: u64) -> [u64; 3] {
        let two_m = 2 * self.m as u128;
        core::array::from_fn(|i| ((v as u128 * self.a[i] as u128) % two_m) as u64)
    }

    /// Scaled distance `S = m·td` for sign pattern `delta` at residues `g`,
    /// which counts only when `S < m`.
    fn scaled_distance(&self, g: &[u64; 3], delta: &[u8; 3]) -> u64 {
        let m = self.m;
        let mut s = 0u64;
        for i in 0..3 {
            s += if delta[i] == 0 {
                // distance to the nearest even multiple of m: min(g, 2m - g)
                g[i].min(2 * m - g[i])
            } else {
                // distance to the nearest odd multiple of m: |g - m|
                g[i].abs_diff(m)
            };
        }
        s
    }

    /// If some sign pattern gives `S < m`, returns `(S, pattern)`.
    pub fn check(&self, v: u64) -> Option<(u64, [u8; 3])> {
        let g = self.point(v);
        SIGN_PATTERNS
            .iter()
            .find_map(|delta| {
                let s = self.scaled_distance(&g, delta);
                (s < self.m).then_some((s, *delta))
            })
    }
}

/// Residue-arithmetic test for a taxicab solution at level `s`. Agrees with
/// [`td_solution_direct`] on the distance whenever either reports one.
pub fn td_solution_residue(red: &ReducedInvariants, n: u64, l: u64, s: u32) -> Option<BigRational> {
    assert_eq!(red.n, n, "reduction was taken for a different n");
    let probe = ResidueProbe::new(red);
    let two_m = 2 * probe.m;
    let v = mod_pow(l % two_m, s as u64, two_m);
    probe
        .check(v)
        .map(|(num, _)| BigRational::new(BigInt::from(num), BigInt::from(probe.m)))
}

/// Residues of the solution point relative to the hitting sign pattern
/// `delta`: `w_i = (g_i − m·δ_i) mod 2m`.
pub fn residue_point(
    red: &ReducedInvariants,
    n: u64,
    l: u64,
    s: u32,
    delta: [u8; 3],
) -> ResiduePoint {
    assert_eq!(red.n, n, "reduction was taken for a different n");
    let probe = ResidueProbe::new(red);
    let two_m = 2 * probe.m;
    let v = mod_pow(l % two_m, s as u64, two_m);
    let g = probe.point(v);
    ResiduePoint {
        w: core::array::from_fn(|i| (g[i] + two_m - probe.m * delta[i] as u64) % two_m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, Classification};
    use crate::invariants::{invariants, reduce};
    use crate::poly::parse_trinomial;

    fn inv_of(text: &str) -> Invariants {
        let t = parse_trinomial(text).unwrap();
        match classify(&t).unwrap() {
            Classification::Regular { normal_form } => invariants(&normal_form).unwrap(),
            other => panic!("expected regular, got {other:?}"),
        }
    }

    fn q3(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> [BigRational; 3] {
        [
            BigRational::new(BigInt::from(a.0), BigInt::from(a.1)),
            BigRational::new(BigInt::from(b.0), BigInt::from(b.1)),
            BigRational::new(BigInt::from(c.0), BigInt::from(c.1)),
        ]
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(u: &OddLatticePoint) -> [i64; 3] {
        core::array::from_fn(|i| i64::try_from(&u.u[i]).unwrap())
    }

    #[test]
    fn nearest_point_for_three_quarters() {
        let (u, d) = nearest_odd_sum(&q3((3, 4), (3, 4), (3, 4)));
        assert_eq!(ints(&u), [1, 1, 1]);
        assert_eq!(d, rat(3, 4));
    }

    #[test]
    fn nearest_point_at_origin_flips_first_coordinate_up() {
        let (u, d) = nearest_odd_sum(&q3((0, 1), (0, 1), (0, 1)));
        assert_eq!(ints(&u), [1, 0, 0]);
        assert_eq!(d, rat(1, 1));
    }

    #[test]
    fn nearest_point_beyond_one() {
        let (u, d) = nearest_odd_sum(&q3((10, 7), (10, 7), (10, 7)));
        assert_eq!(ints(&u), [1, 1, 1]);
        assert_eq!(d, rat(9, 7));
    }

    #[test]
    fn half_integers_round_up_then_flip_down() {
        // rounding gives (1, 1, 0): sum even; all flips cost 1/2 extra except
        // the integer coordinate, so the tie between indices 0 and 1 picks 0,
        // and a half rounded up moves down
        let (u, d) = nearest_odd_sum(&q3((1, 2), (1, 2), (0, 1)));
        assert_eq!(ints(&u), [0, 1, 0]);
        assert_eq!(d, rat(1, 1));
    }

    #[test]
    fn negative_coordinates() {
        let (u, d) = nearest_odd_sum(&q3((-3, 4), (0, 1), (0, 1)));
        assert_eq!(ints(&u), [-1, 0, 0]);
        assert_eq!(d, rat(1, 4));
    }

    #[test]
    fn integer_point_with_even_sum_flips_up() {
        let (u, d) = nearest_odd_sum(&q3((2, 1), (4, 1), (6, 1)));
        assert_eq!(ints(&u), [3, 4, 6]);
        assert_eq!(d, rat(1, 1));
    }

    #[test]
    fn fermat_direct_solutions() {
        let inv = inv_of("x^4 + y^4 + z^4");
        // s = 0: q_i = 1·4/16 = 1/4 each; nearest odd point (1,0,0) costs 5/4
        assert_eq!(td_solution_direct(&inv, 1, 3, 0), None);
        // s = 1: q_i = 3/4; u = (1,1,1), td = 3/4
        let sol = td_solution_direct(&inv, 1, 3, 1).unwrap();
        assert_eq!(ints(&sol.u), [1, 1, 1]);
        assert_eq!(sol.td, rat(3, 4));
    }

    #[test]
    fn klein_direct_solution() {
        let inv = inv_of("x^3*y + y^3*z + z^3*x");
        // l=5, s=2: q_i = 25·2/7 = 50/7; round to 7 each, sum odd
        let sol = td_solution_direct(&inv, 1, 5, 2).unwrap();
        assert_eq!(ints(&sol.u), [7, 7, 7]);
        assert_eq!(sol.td, rat(3, 7));
        assert_eq!(td_solution_direct(&inv, 1, 5, 0), None);
        assert_eq!(td_solution_direct(&inv, 1, 5, 1), None);
        assert_eq!(td_solution_direct(&inv, 1, 1, 0), None);
    }

    #[test]
    fn residue_path_matches_direct_on_examples() {
        let inv = inv_of("x^3*y + y^3*z + z^3*x");
        let red = reduce(&inv, 1);
        assert_eq!(td_solution_residue(&red, 1, 5, 2), Some(rat(3, 7)));
        assert_eq!(td_solution_residue(&red, 1, 5, 1), None);
        assert_eq!(td_solution_residue(&red, 1, 5, 0), None);

        let fermat = inv_of("x^4 + y^4 + z^4");
        let fred = reduce(&fermat, 1);
        assert_eq!(td_solution_residue(&fred, 1, 3, 1), Some(rat(3, 4)));
        assert_eq!(td_solution_residue(&fred, 1, 3, 0), None);
    }

    #[test]
    fn klein_residue_point() {
        let inv = inv_of("x^3*y + y^3*z + z^3*x");
        let red = reduce(&inv, 1);
        // v = 25 mod 14 = 11; g_i = 11·2 mod 14 = 8; pattern (1,1,1)
        let probe = ResidueProbe::new(&red);
        assert_eq!(probe.point(11), [8, 8, 8]);
        assert_eq!(probe.check(11), Some((3, [1, 1, 1])));
        let w = residue_point(&red, 1, 5, 2, [1, 1, 1]);
        assert_eq!(w.w, [1, 1, 1]);
    }

    #[test]
    fn probe_handles_collapsed_modulus() {
        // Fermat at n=4: a_n = 16, λ_{h,n} = 1 and every class hits with td 0
        let inv = inv_of("x^4 + y^4 + z^4");
        let red = reduce(&inv, 4);
        assert_eq!(red.lambda_hn, 1);
        assert_eq!(td_solution_residue(&red, 4, 3, 0), Some(rat(0, 1)));
        // direct path: q = 4·(4,4,4)/16 = (1,1,1), already an odd-sum point
        assert_eq!(
            td_solution_direct(&inv, 4, 3, 0).map(|s| s.td),
            Some(rat(0, 1))
        );
    }
}
