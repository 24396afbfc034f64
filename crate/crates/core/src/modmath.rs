//! Exact modular arithmetic and primality utilities.
//!
//! Everything here is exact 64-bit integer arithmetic (128-bit widening for
//! products); the only floating-point output is the root-of-unity evaluation
//! `e_q`, which reduces its argument mod q before a single trig call so the
//! phase error is independent of the argument size.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Witness set that makes Miller-Rabin deterministic for all n < 2^64;
/// discovered by Jim Sinclair, see miller-rabin.appspot.com.
const MR_WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

#[inline(always)]
pub fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for n <= 2^63. No probabilistic acceptance:
/// the witness set above is complete for 64-bit inputs.
pub fn is_prime(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::domain(format!("is_prime requires n >= 2, got {n}")));
    }
    if n % 2 == 0 {
        return Ok(n == 2);
    }
    if n % 3 == 0 {
        return Ok(n == 3);
    }
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    'witness: for &w in MR_WITNESSES.iter() {
        let a = w % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// A prime modulus q together with the primitive q-th root of unity e(1/q).
///
/// Residues handed out by this type are always canonical, in [0, q-1].
#[derive(Debug, Clone, Serialize)]
pub struct PrimeModulus {
    q: u64,
    /// (cos 2π/q, sin 2π/q)
    unit_root_seed: (f64, f64),
}

impl PrimeModulus {
    /// Certifies primality at construction; q = 2 is allowed but the
    /// workbench is only interesting for odd q.
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q)? {
            return Err(Error::domain(format!("{q} is not prime")));
        }
        let theta = 2.0 * std::f64::consts::PI / q as f64;
        Ok(PrimeModulus {
            q,
            unit_root_seed: (theta.cos(), theta.sin()),
        })
    }

    #[inline(always)]
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn unit_root(&self) -> Complex64 {
        Complex64::new(self.unit_root_seed.0, self.unit_root_seed.1)
    }

    /// Canonical residue of a signed integer.
    #[inline(always)]
    pub fn reduce(&self, t: i64) -> u64 {
        t.rem_euclid(self.q as i64) as u64
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.q)
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.q)
    }

    /// x̄ with x·x̄ ≡ 1 (mod q), in [1, q-1]. Extended Euclid.
    pub fn inverse(&self, x: i64) -> Result<u64> {
        let a = self.reduce(x);
        if a == 0 {
            return Err(Error::domain(format!(
                "non-invertible: {} divides {}",
                self.q, x
            )));
        }
        let (mut old_r, mut r) = (a as i128, self.q as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let quot = old_r / r;
            (old_r, r) = (r, old_r - quot * r);
            (old_s, s) = (s, old_s - quot * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(old_s.rem_euclid(self.q as i128) as u64)
    }

    /// Inverses of 1..q-1 in one O(q) pass, via inv(i) = -(q/i)·inv(q mod i).
    /// Index 0 is unused and left as 0.
    pub fn inverse_table(&self) -> Vec<u64> {
        let q = self.q;
        let mut inv = vec![0u64; q as usize];
        if q >= 2 {
            inv[1] = 1;
            for i in 2..q {
                let r = (q % i) as usize;
                inv[i as usize] = self.mul(q - q / i, inv[r]);
            }
        }
        inv
    }

    /// e(t/q) = exp(2πi t/q), with t reduced mod q before evaluation.
    pub fn e_q(&self, t: i64) -> Complex64 {
        e_fraction(t, self.q)
    }
}

/// e(t/q) for any modulus q >= 1; the argument is reduced mod q first so the
/// phase error does not grow with |t|.
pub fn e_fraction(t: i64, q: u64) -> Complex64 {
    let r = t.rem_euclid(q as i64) as u64;
    let theta = 2.0 * std::f64::consts::PI * (r as f64 / q as f64);
    Complex64::from_polar(1.0, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(97).unwrap());
        assert!(!is_prime(91).unwrap()); // 7 * 13
        assert!(is_prime(1_000_000_007).unwrap());
        assert!(is_prime_trial(1_000_000_007));
        assert!(is_prime(1).is_err());
    }

    #[test]
    fn is_prime_matches_trial_division() {
        for n in 2..5000u64 {
            assert_eq!(is_prime(n).unwrap(), is_prime_trial(n), "n = {n}");
        }
    }

    #[test]
    fn is_prime_hard_cases() {
        // primes bracketing 2^32
        assert!(is_prime(4294967291).unwrap());
        assert!(is_prime(4294967311).unwrap());
        // 3215031751 = 151 * 751 * 28351, strong pseudoprime to bases 2,3,5,7
        assert!(!is_prime(3215031751).unwrap());
        // 3825123056546413051 = 149491 * 747451 * 34233211, the smallest
        // strong pseudoprime to all bases 2..23
        assert!(!is_prime(3825123056546413051).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let q5 = PrimeModulus::new(5).unwrap();
        assert_eq!(q5.inverse(2).unwrap(), 3);
        assert_eq!(q5.inverse(1).unwrap(), 1);
        let q = PrimeModulus::new(1_000_003).unwrap();
        let v = q.inverse(123_456).unwrap();
        assert_eq!(q.mul(123_456, v), 1);
        // extended-Euclid oracle, independent route via Fermat
        assert_eq!(v, q.pow(123_456, q.q() - 2));
        assert!(q.inverse(0).is_err());
    }

    #[test]
    fn inverse_involution_and_fermat() {
        let q = PrimeModulus::new(10007).unwrap();
        let mut rng = SplitMix64::new(1);
        for _ in 0..10_000 {
            let x = rng.next_range(1, q.q() - 1);
            let xi = q.inverse(x as i64).unwrap();
            assert_eq!(q.inverse(xi as i64).unwrap(), x);
            assert_eq!(q.pow(x, q.q() - 1), 1);
        }
    }

    #[test]
    fn mul_mod_matches_wide_arithmetic() {
        let q = PrimeModulus::new(0x7fff_ffff_ffff_ffe7).unwrap(); // largest prime < 2^63
        let mut rng = SplitMix64::new(2);
        for _ in 0..10_000 {
            let a = rng.next_u64() % q.q();
            let b = rng.next_u64() % q.q();
            let expect = ((a as u128 * b as u128) % q.q() as u128) as u64;
            assert_eq!(q.mul(a, b), expect);
        }
    }

    #[test]
    fn inverse_table_agrees() {
        let q = PrimeModulus::new(1009).unwrap();
        let inv = q.inverse_table();
        for x in 1..q.q() {
            assert_eq!(inv[x as usize], q.inverse(x as i64).unwrap());
        }
    }

    #[test]
    fn e_q_examples() {
        let q = PrimeModulus::new(101).unwrap();
        let one = q.e_q(0);
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((q.e_q(101) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // quarter turn
        assert!((e_fraction(1, 4) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let q5 = PrimeModulus::new(5).unwrap();
        assert!((q5.e_q(7) - q5.e_q(2)).norm() < 1e-15);
        for t in -20..20 {
            assert!((q.e_q(t).norm() - 1.0).abs() < 1e-12);
        }
    }
}
