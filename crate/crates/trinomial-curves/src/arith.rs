//! Modular arithmetic helpers on machine integers: overflow-safe mulmod and
//! powmod, deterministic 64-bit primality, trial-division factoring, Euler's
//! totient, and multiplicative orders.

use num::integer::gcd;

/// `a * b mod m` without intermediate overflow; `m ≥ 1`.
pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by binary exponentiation; `m ≥ 1`.
pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin primality test; the fixed witness set decides every `u64`
/// input exactly, so this is deterministic, not probabilistic.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // n is odd and > 37; write n - 1 = d * 2^r with d odd.
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    'witness: for a in MR_WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factors `n ≥ 1` by trial division; returns `(prime, exponent)` pairs in
/// increasing prime order. Suited to the moduli used here (≤ ~10¹³).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Euler's totient of `n ≥ 1`.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Least `k ≥ 1` with `l^k ≡ 1 (mod m)`; caller guarantees `gcd(l, m) = 1`.
pub(crate) fn multiplicative_order_unchecked(l: u64, m: u64) -> u64 {
    debug_assert_eq!(gcd(l, m), 1, "order of a non-unit requested");
    if m == 1 {
        return 1;
    }
    let phi = euler_phi(m);
    let mut order = phi;
    for (p, e) in factorize(phi) {
        for _ in 0..e {
            if order.is_multiple_of(p) && mod_pow(l, order / p, m) == 1 {
                order /= p;
            } else {
                break;
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_mul_handles_large_operands() {
        let m = u64::MAX - 58; // large odd modulus
        assert_eq!(mod_mul(m - 1, m - 1, m), 1);
        assert_eq!(mod_mul(0, 12345, m), 0);
    }

    #[test]
    fn mod_pow_small_cases() {
        assert_eq!(mod_pow(3, 4, 100), 81);
        assert_eq!(mod_pow(2, 10, 1000), 24);
        assert_eq!(mod_pow(7, 0, 13), 1);
        assert_eq!(mod_pow(5, 117, 1), 0);
    }

    #[test]
    fn primality_known_values() {
        let primes = [2u64, 3, 5, 17, 19, 97, 997, 9901, 2_147_483_647, (1 << 61) - 1];
        for p in primes {
            assert!(is_prime(p), "{p} is prime");
        }
        let composites = [
            0u64,
            1,
            4,
            561,                 // Carmichael
            3_215_031_751,       // strong pseudoprime to bases 2,3,5,7
            9_901 * 9_901,
            u64::MAX,
        ];
        for c in composites {
            assert!(!is_prime(c), "{c} is composite");
        }
    }

    #[test]
    fn primality_agrees_with_sieve_below_10k() {
        let limit = 10_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &expected) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), expected, "disagreement at {n}");
        }
    }

    #[test]
    fn factorize_and_phi() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(9900), vec![(2, 2), (3, 2), (5, 2), (11, 1)]);
        assert_eq!(factorize(19802), vec![(2, 1), (9901, 1)]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(14), 6);
        assert_eq!(euler_phi(19802), 9900);
    }

    #[test]
    fn orders_match_brute_force() {
        for m in 1u64..=60 {
            for l in 1..=m {
                if gcd(l, m) != 1 {
                    continue;
                }
                let mut k = 1;
                let mut acc = l % m;
                while acc != 1 % m {
                    acc = mod_mul(acc, l, m);
                    k += 1;
                }
                assert_eq!(multiplicative_order_unchecked(l, m), k, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn orders_spot_values() {
        assert_eq!(multiplicative_order_unchecked(3, 8), 2);
        assert_eq!(multiplicative_order_unchecked(5, 14), 6);
        assert_eq!(multiplicative_order_unchecked(1, 997), 1);
    }

    #[test]
    fn inverses_match_brute_force() {
        for m in 1u64..=60 {
            for a in 0..=2 * m {
                let inv = mod_inverse(a, m);
                if gcd(a % m.max(1), m) == 1 {
                    let inv = inv.expect("unit must have an inverse");
                    assert!(inv < m.max(1));
                    assert_eq!(mod_mul(a % m, inv, m), 1 % m, "a={a} m={m}");
                } else {
                    assert_eq!(inv, None, "a={a} m={m}");
                }
            }
        }
    }
}
