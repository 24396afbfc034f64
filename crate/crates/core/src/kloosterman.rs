//! Single and batch evaluation of Kloosterman sums S(m,n;q) and their
//! normalized form Kl(z,q) = S(z,1;q)/sqrt(q), with Weil-bound checking.
//!
//! The batch table exploits that a ↦ S(a,1;q) is the order-q discrete
//! Fourier transform of x ↦ e(x̄/q), so one prime-length FFT (Bluestein
//! under the hood) produces all q values in O(q log q).

use std::io::{Read, Write};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::PrimeModulus;
use crate::rng::SplitMix64;

/// Default cap on table length; a table stores q doubles plus the transient
/// complex FFT buffer, so this keeps construction under ~2.5 GiB.
pub const DEFAULT_TABLE_CAP: u64 = 100_000_000;

/// Imaginary parts of S(m,n;q) beyond this multiple of sqrt(q) indicate a
/// phase bug and are a hard assertion, not a silent truncation.
const IMAG_TOL: f64 = 1e-6;

/// Pairwise (tree) summation; error grows like log(n) in the term count.
fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        2 => v[0] + v[1],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// Real-valued pairwise summation, shared by the moment routines.
pub fn pairwise_sum_real(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        2 => v[0] + v[1],
        n => pairwise_sum_real(&v[..n / 2]) + pairwise_sum_real(&v[n / 2..]),
    }
}

/// Direct O(q)-per-sum evaluator with cached inverse and root-of-unity
/// tables. This is the independent route the FFT table is checked against.
pub struct DirectKloosterman {
    q: PrimeModulus,
    inv: Vec<u64>,
    roots: Vec<Complex64>,
}

impl DirectKloosterman {
    pub fn new(q: &PrimeModulus) -> Self {
        let inv = q.inverse_table();
        let roots = (0..q.q()).map(|m| q.e_q(m as i64)).collect();
        DirectKloosterman {
            q: q.clone(),
            inv,
            roots,
        }
    }

    /// S(m,n;q) = Σ_{x mod q, (x,q)=1} e((mx + n·x̄)/q) by direct summation
    /// with pairwise accumulation.
    ///
    /// The sum is real for any m, n (x ↦ -x conjugates it onto itself); the
    /// imaginary part is asserted below `1e-6·sqrt(q)` and then discarded.
    pub fn eval(&self, m: i64, n: i64) -> f64 {
        let q = &self.q;
        let mr = q.reduce(m);
        let nr = q.reduce(n);
        let mut terms = Vec::with_capacity(q.q() as usize - 1);
        for x in 1..q.q() {
            let mut phase = q.mul(mr, x) + q.mul(nr, self.inv[x as usize]);
            if phase >= q.q() {
                phase -= q.q();
            }
            terms.push(self.roots[phase as usize]);
        }
        let s = pairwise_sum(&terms);
        assert!(
            s.im.abs() <= IMAG_TOL * (q.q() as f64).sqrt(),
            "imaginary part {} of S({m},{n};{}) exceeds tolerance",
            s.im,
            q.q()
        );
        s.re
    }

    /// Kl(z,q) = S(z,1;q)/sqrt(q).
    pub fn kl(&self, z: i64) -> f64 {
        self.eval(z, 1) / (self.q.q() as f64).sqrt()
    }
}

/// One-shot S(m,n;q); builds the cached evaluator internally.
pub fn kloosterman_direct(m: i64, n: i64, q: &PrimeModulus) -> f64 {
    DirectKloosterman::new(q).eval(m, n)
}

/// Kl(z,q) = S(z,1;q)/sqrt(q). |Kl| <= 2 for q ∤ z by the Weil bound.
pub fn kl(z: i64, q: &PrimeModulus) -> f64 {
    kloosterman_direct(z, 1, q) / (q.q() as f64).sqrt()
}

/// All normalized values Kl(a,q) for a mod q, as a dense real array.
#[derive(Debug, Clone)]
pub struct KloostermanTable {
    q: PrimeModulus,
    values: Vec<f64>,
}

impl KloostermanTable {
    /// Batch evaluation via one inverse FFT of length q of x ↦ e(x̄/q).
    pub fn build(q: &PrimeModulus) -> Result<Self> {
        Self::build_with_cap(q, DEFAULT_TABLE_CAP)
    }

    pub fn build_with_cap(q: &PrimeModulus, cap: u64) -> Result<Self> {
        if q.q() > cap {
            return Err(Error::resource(format!(
                "table for q = {} exceeds memory cap {}",
                q.q(),
                cap
            )));
        }
        let len = q.q() as usize;
        let inv = q.inverse_table();
        let mut buf = vec![Complex64::new(0.0, 0.0); len];
        for x in 1..len {
            buf[x] = q.e_q(inv[x] as i64);
        }
        // unnormalized inverse transform: out[a] = Σ_x buf[x] e(+ax/q)
        FftPlanner::new().plan_fft_inverse(len).process(&mut buf);
        let root_q = (q.q() as f64).sqrt();
        let mut values = Vec::with_capacity(len);
        for (a, v) in buf.iter().enumerate() {
            assert!(
                v.im.abs() <= IMAG_TOL * root_q,
                "imaginary part {} at a = {a} exceeds tolerance",
                v.im
            );
            values.push(v.re / root_q);
        }
        Ok(KloostermanTable {
            q: q.clone(),
            values,
        })
    }

    pub fn q(&self) -> &PrimeModulus {
        &self.q
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Kl(z, q) by table lookup, for any signed z.
    #[inline(always)]
    pub fn kl(&self, z: i64) -> f64 {
        self.values[self.q.reduce(z) as usize]
    }

    /// Binary export: magic "KLTABLE\0", q as u64 LE, then q doubles LE.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b"KLTABLE\0")?;
        w.write_all(&self.q.q().to_le_bytes())?;
        for v in &self.values {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)
            .map_err(|e| Error::domain(format!("table read: {e}")))?;
        if &magic != b"KLTABLE\0" {
            return Err(Error::domain("bad table magic"));
        }
        let mut qb = [0u8; 8];
        r.read_exact(&mut qb)
            .map_err(|e| Error::domain(format!("table read: {e}")))?;
        let qv = u64::from_le_bytes(qb);
        let q = PrimeModulus::new(qv)?;
        let mut values = Vec::with_capacity(qv as usize);
        let mut vb = [0u8; 8];
        for _ in 0..qv {
            r.read_exact(&mut vb)
                .map_err(|e| Error::domain(format!("table read: {e}")))?;
            values.push(f64::from_le_bytes(vb));
        }
        Ok(KloostermanTable { q, values })
    }

    /// CSV export with header `a,kl`.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "a,kl")?;
        for (a, v) in self.values.iter().enumerate() {
            writeln!(w, "{a},{v:.17e}")?;
        }
        Ok(())
    }
}

/// Result of a randomized Weil-bound scan.
#[derive(Debug, Clone, Serialize)]
pub struct WeilReport {
    pub q: u64,
    pub trials: u64,
    /// max over sampled (m,n), q ∤ mn, of |S(m,n;q)| / (2 sqrt(q))
    pub max_ratio: f64,
    pub argmax: (u64, u64),
}

/// Checks |S(m,n;q)| <= 2 sqrt(q) on `trials` random pairs with q ∤ mn.
pub fn weil_check(q: &PrimeModulus, trials: u64, seed: u64) -> Result<WeilReport> {
    if trials < 1 {
        return Err(Error::domain("weil_check requires trials >= 1"));
    }
    let mut rng = SplitMix64::new(seed);
    let direct = DirectKloosterman::new(q);
    let bound = 2.0 * (q.q() as f64).sqrt();
    let mut max_ratio = 0.0f64;
    let mut argmax = (0, 0);
    for _ in 0..trials {
        let m = rng.next_range(1, q.q() - 1);
        let n = rng.next_range(1, q.q() - 1);
        let s = direct.eval(m as i64, n as i64);
        let ratio = s.abs() / bound;
        assert!(ratio <= 1.0 + 1e-9, "Weil bound violated at ({m},{n})");
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = (m, n);
        }
    }
    Ok(WeilReport {
        q: q.q(),
        trials,
        max_ratio,
        argmax,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(q: u64) -> PrimeModulus {
        PrimeModulus::new(q).unwrap()
    }

    #[test]
    fn direct_examples() {
        let q5 = pm(5);
        assert!((kloosterman_direct(0, 0, &q5) - 4.0).abs() < 1e-12);
        let q7 = pm(7);
        assert!((kloosterman_direct(3, 0, &q7) - (-1.0)).abs() < 1e-12);
        // S(1,1;5) = 2 + 2 cos(4π/5), from the 4-term sum paired as
        // e(2/5)+e(3/5) = 2cos(6π/5)... frozen via the closed form:
        let expect = 2.0 + 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos();
        assert!((kloosterman_direct(1, 1, &q5) - expect).abs() < 1e-12);
        assert!((expect - 0.3819660112501051).abs() < 1e-12);
    }

    #[test]
    fn kl_examples() {
        let q5 = pm(5);
        assert!((kl(0, &q5) - (-1.0 / 5f64.sqrt())).abs() < 1e-12);
        assert!((kl(1, &q5) - 0.17082039324993692).abs() < 1e-12);
        // periodicity
        let q = pm(101);
        let mut rng = SplitMix64::new(3);
        for _ in 0..50 {
            let z = rng.next_u64() as i64 % 100_000;
            assert!((kl(z, &q) - kl(z.rem_euclid(101), &q)).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetry_and_scaling() {
        let q = pm(101);
        let mut rng = SplitMix64::new(4);
        for _ in 0..40 {
            let m = rng.next_range(0, 100) as i64;
            let n = rng.next_range(0, 100) as i64;
            let c = rng.next_range(1, 100);
            // S(m,n;q) = S(n,m;q)
            assert!(
                (kloosterman_direct(m, n, &q) - kloosterman_direct(n, m, &q)).abs() < 1e-9
            );
            // S(m,n;q) = S(mc, n c̄; q)
            let ci = q.inverse(c as i64).unwrap();
            let mc = q.mul(q.reduce(m), c) as i64;
            let nc = q.mul(q.reduce(n), ci) as i64;
            assert!(
                (kloosterman_direct(m, n, &q) - kloosterman_direct(mc, nc, &q)).abs() < 1e-9
            );
        }
    }

    #[test]
    fn table_small_matches_direct() {
        let q = pm(5);
        let table = KloostermanTable::build(&q).unwrap();
        for a in 0..5 {
            assert!((table.kl(a) - kl(a, &q)).abs() < 1e-12);
        }
        assert!((table.kl(0) - (-1.0 / 5f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn table_weil_and_second_moment() {
        for qv in [101u64, 1009] {
            let q = pm(qv);
            let table = KloostermanTable::build(&q).unwrap();
            for a in 1..qv {
                assert!(table.kl(a as i64).abs() <= 2.0 + 1e-6);
            }
            let sq: f64 = table.values().iter().map(|v| v * v).sum();
            assert!(
                ((sq - (qv - 1) as f64) / (qv - 1) as f64).abs() < 1e-6,
                "second moment off at q = {qv}: {sq}"
            );
        }
    }

    #[test]
    fn table_random_spot_check_q10007() {
        let q = pm(10007);
        let table = KloostermanTable::build(&q).unwrap();
        let mut rng = SplitMix64::new(5);
        for _ in 0..64 {
            let a = rng.next_range(0, q.q() - 1) as i64;
            assert!((table.kl(a) - kl(a, &q)).abs() < 1e-9);
        }
    }

    #[test]
    fn weil_report() {
        let q = pm(101);
        let rep = weil_check(&q, 100, 11).unwrap();
        assert!(rep.max_ratio <= 1.0);
        assert!(rep.max_ratio > 0.3); // sums of this size do get close
        // Ramanujan degenerate case
        assert!((kloosterman_direct(0, 1, &q) - (-1.0)).abs() < 1e-9);
    }

    #[test]
    fn binary_roundtrip() {
        let q = pm(1009);
        let table = KloostermanTable::build(&q).unwrap();
        let mut buf = Vec::new();
        table.write_binary(&mut buf).unwrap();
        assert_eq!(buf.len(), 16 + 8 * 1009);
        let back = KloostermanTable::read_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(back.q().q(), 1009);
        assert_eq!(back.values(), table.values());
    }

    #[test]
    fn table_cap_enforced() {
        let q = pm(10007);
        assert!(matches!(
            KloostermanTable::build_with_cap(&q, 1000),
            Err(Error::Resource(_))
        ));
    }
}
