//! The congruence-class map Δ: for a regular trinomial with invariants
//! `(d, α, β, ν, λ)`, a multiplier `n ≥ 1` and a class `l` coprime to
//! `2λ_h`, decide whether some Frobenius level `s` produces a taxicab
//! solution, and report the first one.
//!
//! The probe state at level `s` is `l^s mod 2λ_{h,n}`, so scanning one full
//! multiplicative period of `l` decides the question exactly: if no level in
//! `0..ord(l, 2λ_{h,n})` hits, none ever does and the class is strongly
//! semistable.

use crate::arith::{self, mod_mul};
use crate::invariants::{reduce, Invariants};
use crate::taxicab::ResidueProbe;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::integer::gcd;
use thiserror::Error;

/// Value of Δ at one congruence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaValue {
    /// No Frobenius level produces a solution; the syzygy bundle stays
    /// semistable under every Frobenius pull-back.
    StronglySemistable,
    /// First solution: taxicab distance `td < 1` at level `ds`.
    Finite { td: BigRational, ds: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    #[error("class {l} is not coprime to the modulus {m}")]
    NotCoprime { l: u64, m: u64 },
}

/// Multiplicative order of `l` modulo `m` (`m ≥ 1`).
pub fn multiplicative_order(l: u64, m: u64) -> Result<u64, DeltaError> {
    if m == 0 {
        return Err(DeltaError::NotCoprime { l, m });
    }
    if gcd(l % m, m) != 1 {
        return Err(DeltaError::NotCoprime { l, m });
    }
    Ok(arith::multiplicative_order_unchecked(l, m))
}

/// Evaluates Δ for the class of `l` modulo `2λ_h`.
pub fn delta(inv: &Invariants, n: u64, l: u64) -> Result<DeltaValue, DeltaError> {
    let red = reduce(inv, n);
    let two_lh = 2 * red.lambda_h;
    if gcd(l % two_lh, two_lh) != 1 {
        return Err(DeltaError::NotCoprime { l, m: two_lh });
    }
    let probe = ResidueProbe::new(&red);
    let two_m = 2 * probe.m;
    let l_red = l % two_m;
    let bound = arith::multiplicative_order_unchecked(l_red, two_m);
    let mut v = 1 % two_m;
    for s in 0..bound {
        if let Some((num, _)) = probe.check(v) {
            return Ok(DeltaValue::Finite {
                td: BigRational::new(BigInt::from(num), BigInt::from(probe.m)),
                ds: u32::try_from(s).expect("level fits in u32"),
            });
        }
        v = mod_mul(v, l_red, two_m);
    }
    Ok(DeltaValue::StronglySemistable)
}

/// One row of a Δ table: the pair of mirror classes `{l, 2λ_h − l}` (which
/// always share the same value) and that value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaRow {
    pub class_lo: u64,
    pub class_hi: u64,
    pub value: DeltaValue,
}

/// Δ on every congruence class modulo `2λ_h`, one row per mirror pair,
/// sorted by the smaller representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTable {
    pub modulus: u64,
    pub rows: Vec<DeltaRow>,
}

/// Tabulates Δ over all `φ(2λ_h)/2` mirror pairs for the given `n`.
pub fn delta_table(inv: &Invariants, n: u64) -> DeltaTable {
    let red = reduce(inv, n);
    let two_lh = 2 * red.lambda_h;
    let rows = (1..=red.lambda_h)
        .filter(|l| gcd(*l, two_lh) == 1)
        .map(|l| DeltaRow {
            class_lo: l,
            class_hi: two_lh - l,
            value: delta(inv, n, l).expect("class coprime by construction"),
        })
        .collect();
    DeltaTable {
        modulus: two_lh,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, Classification};
    use crate::invariants::invariants;
    use crate::poly::parse_trinomial;

    fn inv_of(text: &str) -> Invariants {
        let t = parse_trinomial(text).unwrap();
        match classify(&t).unwrap() {
            Classification::Regular { normal_form } => invariants(&normal_form).unwrap(),
            other => panic!("expected regular, got {other:?}"),
        }
    }

    fn finite(n: i64, d: i64, ds: u32) -> DeltaValue {
        DeltaValue::Finite {
            td: BigRational::new(BigInt::from(n), BigInt::from(d)),
            ds,
        }
    }

    #[test]
    fn order_basics() {
        assert_eq!(multiplicative_order(3, 8), Ok(2));
        assert_eq!(multiplicative_order(1, 1), Ok(1));
        assert_eq!(
            multiplicative_order(2, 8),
            Err(DeltaError::NotCoprime { l: 2, m: 8 })
        );
    }

    #[test]
    fn fermat_quartic_classes() {
        let inv = inv_of("x^4 + y^4 + z^4");
        assert_eq!(delta(&inv, 1, 1), Ok(DeltaValue::StronglySemistable));
        assert_eq!(delta(&inv, 1, 7), Ok(DeltaValue::StronglySemistable));
        assert_eq!(delta(&inv, 1, 3), Ok(finite(3, 4, 1)));
        assert_eq!(delta(&inv, 1, 5), Ok(finite(3, 4, 1)));
        assert_eq!(
            delta(&inv, 1, 2),
            Err(DeltaError::NotCoprime { l: 2, m: 8 })
        );
        // classes are read modulo 2λ_h = 8
        assert_eq!(delta(&inv, 1, 11), Ok(finite(3, 4, 1)));
    }

    #[test]
    fn fermat_quartic_table() {
        let inv = inv_of("x^4 + y^4 + z^4");
        let table = delta_table(&inv, 1);
        assert_eq!(table.modulus, 8);
        assert_eq!(table.rows.len(), 2);
        assert_eq!(
            table.rows[0],
            DeltaRow {
                class_lo: 1,
                class_hi: 7,
                value: DeltaValue::StronglySemistable
            }
        );
        assert_eq!(
            table.rows[1],
            DeltaRow {
                class_lo: 3,
                class_hi: 5,
                value: finite(3, 4, 1)
            }
        );
    }

    #[test]
    fn fermat_quartic_all_classes_semistable_at_n2() {
        // at n = 2 every coordinate of the scaled point is an odd multiple of
        // 1/2 at every level, so the distance is always 3/2
        let inv = inv_of("x^4 + y^4 + z^4");
        let table = delta_table(&inv, 2);
        assert_eq!(table.modulus, 8);
        for row in &table.rows {
            assert_eq!(row.value, DeltaValue::StronglySemistable);
        }
    }

    #[test]
    fn fermat_quartic_distance_zero_at_n4() {
        let inv = inv_of("x^4 + y^4 + z^4");
        assert_eq!(delta(&inv, 4, 3), Ok(finite(0, 1, 0)));
        assert_eq!(delta(&inv, 4, 1), Ok(finite(0, 1, 0)));
    }

    #[test]
    fn klein_quartic_table() {
        let inv = inv_of("x^3*y + y^3*z + z^3*x");
        let table = delta_table(&inv, 1);
        assert_eq!(table.modulus, 14);
        let expected = [
            (1, 13, DeltaValue::StronglySemistable),
            (3, 11, finite(3, 7, 1)),
            (5, 9, finite(3, 7, 2)),
        ];
        assert_eq!(table.rows.len(), expected.len());
        for (row, (lo, hi, value)) in table.rows.iter().zip(expected) {
            assert_eq!((row.class_lo, row.class_hi), (lo, hi));
            assert_eq!(row.value, value);
        }
    }

    #[test]
    fn klein_quintic_class_11() {
        let inv = inv_of("x^4*y + y^4*z + z^4*x");
        assert_eq!(delta(&inv, 1, 11), Ok(finite(6, 13, 3)));
    }

    #[test]
    fn klein_quartic_hits_level_zero_at_n3() {
        let inv = inv_of("x^3*y + y^3*z + z^3*x");
        assert_eq!(delta(&inv, 3, 1), Ok(finite(3, 7, 0)));
    }

    #[test]
    fn mirror_classes_agree() {
        let inv = inv_of("x^5*y + y^4*z^2 + z^4*x^2");
        let red = crate::invariants::reduce(&inv, 1);
        let two_lh = 2 * red.lambda_h;
        for l in 1..=red.lambda_h {
            if gcd(l, two_lh) != 1 {
                continue;
            }
            assert_eq!(delta(&inv, 1, l), delta(&inv, 1, two_lh - l));
        }
    }
}
