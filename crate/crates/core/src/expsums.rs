//! The exponential-sum engine: the quintilinear Kloosterman sum, the
//! bilinear remainder form R(M,N), the oscillatory kernel Φ̃, the averaged
//! sum Σ with its shifted rewriting, the (b,c)-multiplicity census, and the
//! complete-sum moment apparatus.
//!
//! Range conventions, used consistently below: `n ∼ N` means the dyadic
//! block n ∈ (N, 2N] (exactly N integers), while `h ⩽ H` means h ∈ [1, H].
//! All Kloosterman evaluations go through one shared [`KloostermanTable`]
//! via the reduction S(u, k; q) = √q · Kl(uk, q), valid whenever q ∤ k;
//! truncations keep |k| < q/2 so that is never violated.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kloosterman::KloostermanTable;
use crate::modmath::PrimeModulus;
use crate::quad::{integrate_checked, panels_for};
use crate::rng::SplitMix64;
use crate::smoothweight::{EdgeProfile, SmoothWeight, TentWeight};

/// Default cap on enumeration cardinality for the census/moment routines.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000_000;

/// Smooth majorant W of the indicator of [1, 2]: identically 1 on [1, 2],
/// supported on (0.9, 2.1), with C^∞ edges from the shared edge profile.
pub fn plateau_window(u: f64) -> f64 {
    if u <= 0.9 || u >= 2.1 {
        0.0
    } else if u < 1.0 {
        EdgeProfile::value((u - 0.9) / 0.1)
    } else if u <= 2.0 {
        1.0
    } else {
        EdgeProfile::value((2.1 - u) / 0.1)
    }
}

/// Ramanujan sum Σ_{(x,q)=1} e(ux/q) for prime q: q-1 when q | u, else -1.
fn ramanujan(u: u64, q: u64) -> f64 {
    if u % q == 0 {
        (q - 1) as f64
    } else {
        -1.0
    }
}

/// Configuration for the quintilinear/averaged sums: modulus, residue,
/// ranges, and the bounded coefficient arrays.
#[derive(Debug, Clone)]
pub struct QuintConfig {
    pub q: PrimeModulus,
    /// residue a with (a, q) = 1
    pub a: u64,
    pub big_h: u64,
    pub big_k: u64,
    pub big_m: u64,
    pub big_n: u64,
    /// α_m for m ∈ (M, 2M], |α_m| ⩽ 1
    pub alpha: Vec<Complex64>,
    /// β_n for n ∈ (N, 2N], |β_n| ⩽ 1
    pub beta: Vec<Complex64>,
    pub seed: u64,
}

impl QuintConfig {
    pub fn new(
        q: PrimeModulus,
        a: u64,
        big_h: u64,
        big_k: u64,
        big_m: u64,
        big_n: u64,
        alpha: Vec<Complex64>,
        beta: Vec<Complex64>,
        seed: u64,
    ) -> Result<Self> {
        if a % q.q() == 0 {
            return Err(Error::domain(format!("gcd(a, q) > 1 for a = {a}")));
        }
        if 2 * big_k >= q.q() {
            return Err(Error::domain(format!(
                "truncation K = {big_k} must satisfy K < q/2 = {}/2",
                q.q()
            )));
        }
        if alpha.len() != big_m as usize || beta.len() != big_n as usize {
            return Err(Error::domain(format!(
                "coefficient arrays must cover the dyadic blocks: |alpha| = {} vs M = {big_m}, \
                 |beta| = {} vs N = {big_n}",
                alpha.len(),
                beta.len()
            )));
        }
        for c in alpha.iter().chain(beta.iter()) {
            if c.norm() > 1.0 + 1e-12 {
                return Err(Error::domain(format!("coefficient {c} exceeds modulus 1")));
            }
        }
        Ok(QuintConfig {
            q,
            a,
            big_h,
            big_k,
            big_m,
            big_n,
            alpha,
            beta,
            seed,
        })
    }

    /// Seeded random unimodular coefficients on both dyadic blocks.
    pub fn with_random_coeffs(
        q: PrimeModulus,
        a: u64,
        big_h: u64,
        big_k: u64,
        big_m: u64,
        big_n: u64,
        seed: u64,
    ) -> Result<Self> {
        let mut rng = SplitMix64::new(seed);
        let alpha = (0..big_m).map(|_| rng.next_unimodular()).collect();
        let beta = (0..big_n).map(|_| rng.next_unimodular()).collect();
        Self::new(q, a, big_h, big_k, big_m, big_n, alpha, beta, seed)
    }

    /// β_n for n ∈ (N, 2N].
    #[inline]
    pub fn beta(&self, n: u64) -> Complex64 {
        self.beta[(n - self.big_n - 1) as usize]
    }

    /// α_m for m ∈ (M, 2M].
    #[inline]
    pub fn alpha(&self, m: u64) -> Complex64 {
        self.alpha[(m - self.big_m - 1) as usize]
    }
}

/// Shift-averaging parameters: r ∼ R, s₁, s₂ ∼ S with 4RS = H, and the
/// unimodular coefficients θ_r (default all ones).
#[derive(Debug, Clone)]
pub struct ShiftConfig {
    pub big_r: u64,
    pub big_s: u64,
    /// θ_r for r ∈ (R, 2R], |θ_r| = 1
    pub theta: Vec<Complex64>,
}

impl ShiftConfig {
    pub fn new(big_r: u64, big_s: u64, big_h: u64) -> Result<Self> {
        if big_r < 1 || big_s < 1 {
            return Err(Error::domain("shift ranges require R, S >= 1"));
        }
        if 4 * big_r * big_s != big_h {
            return Err(Error::domain(format!(
                "shift ranges must satisfy 4RS = H: 4*{big_r}*{big_s} != {big_h}"
            )));
        }
        Ok(ShiftConfig {
            big_r,
            big_s,
            theta: vec![Complex64::new(1.0, 0.0); big_r as usize],
        })
    }

    pub fn with_random_theta(mut self, seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        self.theta = (0..self.big_r).map(|_| rng.next_unimodular()).collect();
        self
    }

    /// Ranges for a census only, where r never enters and the averaging
    /// relation 4RS = H is not required to hold.
    pub fn for_census(big_r: u64, big_s: u64) -> Result<Self> {
        if big_r < 1 || big_s < 1 {
            return Err(Error::domain("shift ranges require R, S >= 1"));
        }
        Ok(ShiftConfig {
            big_r,
            big_s,
            theta: vec![Complex64::new(1.0, 0.0); big_r as usize],
        })
    }
}

/// Σ_{k⩽K} ΣΣ_{n₁,n₂∼N} β_{n₁}β̄_{n₂} ΣΣ_{h₁,h₂⩽H} S(a(h₁n̄₁−h₂n̄₂), k; q),
/// every S evaluated as √q·Kl(uk, q) from the shared table.
///
/// Each Kloosterman value is real, but the one-sided k-range makes the
/// quadratic form in β non-Hermitian, so the sum is complex for general
/// coefficients; it is real when every β_n is real.
pub fn quint_sum_sharp(cfg: &QuintConfig, table: &KloostermanTable) -> Result<Complex64> {
    let q = &cfg.q;
    if 2 * cfg.big_n >= q.q() || 2 * cfg.big_h >= q.q() {
        return Err(Error::domain(format!(
            "quint_sum_sharp requires 2N < q and 2H < q, got N = {}, H = {}, q = {}",
            cfg.big_n,
            cfg.big_h,
            q.q()
        )));
    }
    let inv = q.inverse_table();
    let sqrt_q = (q.q() as f64).sqrt();
    let a = cfg.a % q.q();
    let mut acc = Complex64::new(0.0, 0.0);
    for n1 in cfg.big_n + 1..=2 * cfg.big_n {
        for n2 in cfg.big_n + 1..=2 * cfg.big_n {
            let coeff = cfg.beta(n1) * cfg.beta(n2).conj();
            let (i1, i2) = (inv[(n1 % q.q()) as usize], inv[(n2 % q.q()) as usize]);
            let mut inner = 0.0;
            for h1 in 1..=cfg.big_h {
                for h2 in 1..=cfg.big_h {
                    // u = a(h1 n̄1 - h2 n̄2) mod q
                    let u = q.reduce((q.mul(h1, i1) as i64 - q.mul(h2, i2) as i64) * a as i64);
                    for k in 1..=cfg.big_k {
                        inner += sqrt_q * table.kl(q.mul(u, k) as i64);
                    }
                }
            }
            acc += coeff * inner;
        }
    }
    Ok(acc)
}

/// Φ̃(k; h₁, h₂, n₁, n₂, q) =
/// ∫ W(t/M) Φ̂(h₁/(tn₁q)) conj(Φ̂(h₂/(tn₂q))) e(-kt/q) dt,
/// integrated over the window support [0.9M, 2.1M].
pub fn phi_tilde(
    k: i64,
    h1: i64,
    h2: i64,
    n1: u64,
    n2: u64,
    big_m: u64,
    q: u64,
    w: &SmoothWeight,
) -> Result<Complex64> {
    let m = big_m as f64;
    let qf = q as f64;
    let f = |t: f64| {
        let a1 = w.phi_hat(h1 as f64 / (t * n1 as f64 * qf));
        let a2 = w.phi_hat(h2 as f64 / (t * n2 as f64 * qf)).conj();
        plateau_window(t / m) * a1 * a2 * Complex64::from_polar(1.0, -2.0 * PI * k as f64 * t / qf)
    };
    let cycles = (k as f64).abs() * 1.2 * m / qf;
    let panels = panels_for(cycles, 16);
    let scale = w.x() * w.x() * m;
    integrate_checked(
        &f,
        0.9 * m,
        2.1 * m,
        panels,
        w.quadrature_tolerance() * scale,
        panels * 256,
    )
}

/// R(M,N) = Σ_{m∼M} Σ_{n∼N} (α_m β_n / mn) Σ_{h⩽H} Φ̂(h/(mnq)) e(ah·conj(mn)/q),
/// the bilinear remainder form before any averaging.
pub fn r_weighted(cfg: &QuintConfig, w: &SmoothWeight) -> Result<Complex64> {
    let q = &cfg.q;
    let inv = q.inverse_table();
    let mut acc = Complex64::new(0.0, 0.0);
    for m in cfg.big_m + 1..=2 * cfg.big_m {
        if m % q.q() == 0 {
            continue;
        }
        for n in cfg.big_n + 1..=2 * cfg.big_n {
            if n % q.q() == 0 {
                continue;
            }
            let coeff = cfg.alpha(m) * cfg.beta(n) / (m as f64 * n as f64);
            let mn_inv = inv[q.mul(m % q.q(), n % q.q()) as usize];
            let mut inner = Complex64::new(0.0, 0.0);
            for h in 1..=cfg.big_h {
                let xi = h as f64 / (m as f64 * n as f64 * q.q() as f64);
                let phase = q.e_q(q.mul(q.mul(cfg.a % q.q(), h % q.q()), mn_inv) as i64);
                inner += w.phi_hat(xi) * phase;
            }
            acc += coeff * inner;
        }
    }
    Ok(acc)
}

/// The Cauchy-Schwarz majorant (1/M) Σ_m W(m/M) |inner(m)|² with
/// inner(m) = Σ_{h⩽H} Σ_{n∼N} (β_n/n) Φ̂(h/(mnq)) e(ah·conj(mn)/q),
/// summed directly over the integer support of W. This is the quantity the
/// averaged Σ reconstructs through Poisson summation in m, so it doubles as
/// an independent oracle for the whole Φ̃/Kloosterman pipeline.
pub fn cauchy_schwarz_majorant(cfg: &QuintConfig, w: &SmoothWeight) -> f64 {
    let q = &cfg.q;
    let inv = q.inverse_table();
    let m_lo = (0.9 * cfg.big_m as f64).ceil() as u64;
    let m_hi = (2.1 * cfg.big_m as f64).floor() as u64;
    let mut acc = 0.0;
    for m in m_lo..=m_hi {
        if m % q.q() == 0 {
            continue;
        }
        let window = plateau_window(m as f64 / cfg.big_m as f64);
        if window == 0.0 {
            continue;
        }
        let mut inner = Complex64::new(0.0, 0.0);
        for n in cfg.big_n + 1..=2 * cfg.big_n {
            let coeff = cfg.beta(n) / n as f64;
            let mn_inv = inv[q.mul(m % q.q(), n % q.q()) as usize];
            for h in 1..=cfg.big_h {
                let xi = h as f64 / (m as f64 * n as f64 * q.q() as f64);
                let phase = q.e_q(q.mul(q.mul(cfg.a % q.q(), h % q.q()), mn_inv) as i64);
                inner += coeff * w.phi_hat(xi) * phase;
            }
        }
        acc += window * inner.norm_sqr();
    }
    acc / cfg.big_m as f64
}

/// Σ truncated at 1 ⩽ |k| ⩽ k_max:
/// (1/(√q·M)) ΣΣΣΣ (β_{n₁}β̄_{n₂}/(n₁n₂)) Σ_k Φ̃(k;…) Kl(ak(h₁n̄₁−h₂n̄₂), q).
pub fn sigma_truncated(
    cfg: &QuintConfig,
    w: &SmoothWeight,
    table: &KloostermanTable,
    k_max: u64,
) -> Result<Complex64> {
    let q = &cfg.q;
    if 2 * k_max >= q.q() {
        return Err(Error::domain(format!(
            "k truncation {k_max} must stay below q/2 = {}/2",
            q.q()
        )));
    }
    let inv = q.inverse_table();
    let a = cfg.a % q.q();
    let mut acc = Complex64::new(0.0, 0.0);
    for n1 in cfg.big_n + 1..=2 * cfg.big_n {
        for n2 in cfg.big_n + 1..=2 * cfg.big_n {
            let coeff = cfg.beta(n1) * cfg.beta(n2).conj() / (n1 as f64 * n2 as f64);
            let (i1, i2) = (inv[(n1 % q.q()) as usize], inv[(n2 % q.q()) as usize]);
            // parallel over the h-pairs; ordered collect keeps the reduction
            // deterministic
            let pairs: Vec<(u64, u64)> = (1..=cfg.big_h)
                .flat_map(|h1| (1..=cfg.big_h).map(move |h2| (h1, h2)))
                .collect();
            let partial: Result<Vec<Complex64>> = pairs
                .par_iter()
                .map(|&(h1, h2)| {
                    let u = q.reduce((q.mul(h1, i1) as i64 - q.mul(h2, i2) as i64) * a as i64);
                    let mut s = Complex64::new(0.0, 0.0);
                    for k in 1..=k_max as i64 {
                        for signed_k in [k, -k] {
                            let kl = table.kl(q.mul(u, q.reduce(signed_k)) as i64);
                            let pt = phi_tilde(signed_k, h1 as i64, h2 as i64, n1, n2, cfg.big_m, q.q(), w)?;
                            s += pt * kl;
                        }
                    }
                    Ok(s)
                })
                .collect();
            acc += coeff * partial?.into_iter().sum::<Complex64>();
        }
    }
    Ok(acc / ((q.q() as f64).sqrt() * cfg.big_m as f64))
}

/// Report for the averaged sum Σ with its k = 0 discard.
#[derive(Debug, Clone, Serialize)]
pub struct SigmaReport {
    pub sigma: f64,
    /// truncation actually used, K = floor(q^{1+ε}/M)
    pub big_k: u64,
    pub eps: f64,
    /// the discarded k = 0 contribution to the Cauchy-Schwarz majorant
    pub k_zero_term: f64,
    /// its recorded bound x^{2}·H·N^{-1}(q^{-1}HN + 1) (ε-factor set to 1)
    pub k_zero_bound: f64,
}

/// Evaluates Σ with the truncation K := floor(M^{-1}q^{1+ε}), guarded by
/// M > 2q^ε (which forces K < q/2), and reports the k = 0 discard.
pub fn sigma_weighted(
    cfg: &QuintConfig,
    w: &SmoothWeight,
    table: &KloostermanTable,
    eps: f64,
) -> Result<SigmaReport> {
    let q = &cfg.q;
    let q_eps = (q.q() as f64).powf(eps);
    if cfg.big_m as f64 <= 2.0 * q_eps {
        return Err(Error::domain(format!(
            "sigma_weighted requires M > 2q^eps: M = {}, 2q^eps = {:.3}",
            cfg.big_m,
            2.0 * q_eps
        )));
    }
    let big_k = ((q.q() as f64 * q_eps) / cfg.big_m as f64).floor() as u64;
    if big_k < 1 {
        return Err(Error::domain("derived truncation K < 1; enlarge eps or shrink M"));
    }
    let sigma = sigma_truncated(cfg, w, table, big_k)?;
    // k = 0 term of the Poisson expansion of the majorant: the Kloosterman
    // sum degenerates to a Ramanujan sum
    let inv = q.inverse_table();
    let a = cfg.a % q.q();
    let mut k0 = Complex64::new(0.0, 0.0);
    for n1 in cfg.big_n + 1..=2 * cfg.big_n {
        for n2 in cfg.big_n + 1..=2 * cfg.big_n {
            let coeff = cfg.beta(n1) * cfg.beta(n2).conj() / (n1 as f64 * n2 as f64);
            let (i1, i2) = (inv[(n1 % q.q()) as usize], inv[(n2 % q.q()) as usize]);
            for h1 in 1..=cfg.big_h {
                for h2 in 1..=cfg.big_h {
                    let u = q.reduce((q.mul(h1, i1) as i64 - q.mul(h2, i2) as i64) * a as i64);
                    let pt = phi_tilde(0, h1 as i64, h2 as i64, n1, n2, cfg.big_m, q.q(), w)?;
                    k0 += coeff * pt * ramanujan(u, q.q());
                }
            }
        }
    }
    let x = w.x();
    let (h, n) = (cfg.big_h as f64, cfg.big_n as f64);
    let k_zero_bound = x * x * h / n * (h * n / q.q() as f64 + 1.0);
    let scale = x * x * cfg.big_m as f64;
    if sigma.im.abs() > 1e-6 * scale {
        return Err(Error::numerical(format!(
            "sigma picked up a non-real part {:.3e} (scale {:.3e})",
            sigma.im, scale
        )));
    }
    Ok(SigmaReport {
        sigma: sigma.re,
        big_k,
        eps,
        k_zero_term: k0.re / (q.q() as f64 * cfg.big_m as f64),
        k_zero_bound,
    })
}

/// Verifies that the φ-weighted Σ is invariant under the reindexing
/// (h₁, h₂) ↦ (h₁ + rs₁, h₂ + rs₂): both sides are evaluated by genuinely
/// different loops (sharing only the cached Φ̃ values, which are accessed at
/// identical argument tuples) and the max absolute discrepancy over the
/// supplied shifts is returned, together with the base value.
pub fn shift_identity_check(
    cfg: &QuintConfig,
    w: &SmoothWeight,
    table: &KloostermanTable,
    tent: &TentWeight,
    shifts: &[(i64, i64, i64)],
) -> Result<(f64, f64)> {
    let q = &cfg.q;
    let inv = q.inverse_table();
    let a = cfg.a % q.q();
    let big_h = tent.h() as i64;
    let norm = 1.0 / ((q.q() as f64).sqrt() * cfg.big_m as f64);
    let mut cache: HashMap<(i64, i64, i64, u64, u64), Complex64> = HashMap::new();
    let mut tilde = |k: i64, h1: i64, h2: i64, n1: u64, n2: u64, w: &SmoothWeight| -> Result<Complex64> {
        if let Some(&v) = cache.get(&(k, h1, h2, n1, n2)) {
            return Ok(v);
        }
        let v = phi_tilde(k, h1, h2, n1, n2, cfg.big_m, q.q(), w)?;
        cache.insert((k, h1, h2, n1, n2), v);
        Ok(v)
    };

    // unshifted: h over the integer support of the tent
    let mut base = Complex64::new(0.0, 0.0);
    for n1 in cfg.big_n + 1..=2 * cfg.big_n {
        for n2 in cfg.big_n + 1..=2 * cfg.big_n {
            let coeff = cfg.beta(n1) * cfg.beta(n2).conj() / (n1 as f64 * n2 as f64);
            let (i1, i2) = (inv[(n1 % q.q()) as usize], inv[(n2 % q.q()) as usize]);
            for k in 1..=cfg.big_k as i64 {
                for sk in [k, -k] {
                    for h1 in 1..big_h {
                        for h2 in 1..big_h {
                            let u = q.reduce(
                                (q.mul(h1 as u64, i1) as i64 - q.mul(h2 as u64, i2) as i64)
                                    * a as i64,
                            );
                            let kl = table.kl(q.mul(u, q.reduce(sk)) as i64);
                            let weight = tent.value(h1 as f64) * tent.value(h2 as f64);
                            base += coeff * weight * kl * tilde(sk, h1, h2, n1, n2, w)?;
                        }
                    }
                }
            }
        }
    }
    base *= norm;

    let mut max_disc: f64 = 0.0;
    for &(r, s1, s2) in shifts {
        let mut shifted = Complex64::new(0.0, 0.0);
        for n1 in cfg.big_n + 1..=2 * cfg.big_n {
            for n2 in cfg.big_n + 1..=2 * cfg.big_n {
                let coeff = cfg.beta(n1) * cfg.beta(n2).conj() / (n1 as f64 * n2 as f64);
                let (i1, i2) = (inv[(n1 % q.q()) as usize], inv[(n2 % q.q()) as usize]);
                for k in 1..=cfg.big_k as i64 {
                    for sk in [k, -k] {
                        // h ranges so that h + rs stays inside the support
                        for h1 in 1 - r * s1..big_h - r * s1 {
                            for h2 in 1 - r * s2..big_h - r * s2 {
                                let (g1, g2) = (h1 + r * s1, h2 + r * s2);
                                let weight = tent.value(g1 as f64) * tent.value(g2 as f64);
                                if weight == 0.0 {
                                    continue;
                                }
                                let u = q.reduce(
                                    (q.mul(q.reduce(g1), i1) as i64
                                        - q.mul(q.reduce(g2), i2) as i64)
                                        * a as i64,
                                );
                                let kl = table.kl(q.mul(u, q.reduce(sk)) as i64);
                                shifted += coeff * weight * kl * tilde(sk, g1, g2, n1, n2, w)?;
                            }
                        }
                    }
                }
            }
        }
        shifted *= norm;
        max_disc = max_disc.max((shifted - base).norm());
    }
    Ok((max_disc, base.norm()))
}

/// Moment census report for the multiplicity function ρ(b, c).
#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub sigma1: f64,
    pub sigma2: f64,
    pub sigma3: f64,
    pub bound1: f64,
    pub bound2: f64,
    pub bound3: f64,
    pub ratios: [f64; 3],
    /// number of (b, c) pairs with ρ(b, c) > 0
    pub rho_support: u64,
}

/// The exact multiplicity census: ρ(b, c) counts tuples
/// (h₁, h₂ ⩽ H; n₁, n₂ ∼ N; s₁, s₂ ∼ S; k ⩽ K) with
/// ak(h₁n̄₁ − h₂n̄₂) ≡ b, ak(s₁n̄₁ − s₂n̄₂) ≡ c (mod q), subject to
/// (c, q) = 1 and h₁n₂ ≠ h₂n₁.
pub fn rho_map(
    cfg: &QuintConfig,
    shift: &ShiftConfig,
    budget: u64,
) -> Result<HashMap<(u64, u64), u64>> {
    let q = &cfg.q;
    let tuples = cfg.big_h * cfg.big_h * cfg.big_n * cfg.big_n * shift.big_s * shift.big_s
        * cfg.big_k;
    if tuples > budget {
        return Err(Error::resource(format!(
            "rho census needs {tuples} tuples, budget is {budget}"
        )));
    }
    let inv = q.inverse_table();
    let a = cfg.a % q.q();
    let mut rho: HashMap<(u64, u64), u64> = HashMap::new();
    for n1 in cfg.big_n + 1..=2 * cfg.big_n {
        for n2 in cfg.big_n + 1..=2 * cfg.big_n {
            let (i1, i2) = (inv[(n1 % q.q()) as usize], inv[(n2 % q.q()) as usize]);
            for h1 in 1..=cfg.big_h {
                for h2 in 1..=cfg.big_h {
                    if h1 * n2 == h2 * n1 {
                        continue;
                    }
                    let ub = q.reduce((q.mul(h1, i1) as i64 - q.mul(h2, i2) as i64) * a as i64);
                    for s1 in shift.big_s + 1..=2 * shift.big_s {
                        for s2 in shift.big_s + 1..=2 * shift.big_s {
                            let uc =
                                q.reduce((q.mul(s1, i1) as i64 - q.mul(s2, i2) as i64) * a as i64);
                            if uc == 0 {
                                continue; // (c, q) = 1 fails for every k
                            }
                            for k in 1..=cfg.big_k {
                                let b = q.mul(ub, k);
                                let c = q.mul(uc, k);
                                *rho.entry((b, c)).or_insert(0) += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rho)
}

/// Σ₁ = Σρ and Σ₂ = Σρ² with their recorded bounds: Σ₁ ⩽ H²N²S²K trivially,
/// Σ₂ against the census lemma RHS
/// (1 + HN³K/q)(1 + SN³K/q)(1 + H/N)(1 + S/N)(HNS)²K (ε-factor 1).
/// The σ₃ slots are left at zero; fill them from [`sigma3_shifted`].
pub fn rho_census(cfg: &QuintConfig, shift: &ShiftConfig, budget: u64) -> Result<MomentReport> {
    let rho = rho_map(cfg, shift, budget)?;
    let sigma1: u64 = rho.values().sum();
    let sigma2: u64 = rho.values().map(|&v| v * v).sum();
    let (h, n, s, k, qf) = (
        cfg.big_h as f64,
        cfg.big_n as f64,
        shift.big_s as f64,
        cfg.big_k as f64,
        cfg.q.q() as f64,
    );
    let bound1 = h * h * n * n * s * s * k;
    let bound2 = (1.0 + h * n.powi(3) * k / qf)
        * (1.0 + s * n.powi(3) * k / qf)
        * (1.0 + h / n)
        * (1.0 + s / n)
        * (h * n * s).powi(2)
        * k;
    Ok(MomentReport {
        sigma1: sigma1 as f64,
        sigma2: sigma2 as f64,
        sigma3: 0.0,
        bound1,
        bound2,
        bound3: 0.0,
        ratios: [sigma1 as f64 / bound1, sigma2 as f64 / bound2, 0.0],
        rho_support: rho.len() as u64,
    })
}

/// 𝔄(𝐦) = Σ_{b mod q} Σ_{(c,q)=1} Π_j Kl((b + m_j)c, q), the complete
/// sum-product moment over q(q-1) pairs.
pub fn sum_product_a(m: &[i64], table: &KloostermanTable) -> Result<f64> {
    if m.len() > 12 || m.is_empty() || m.len() % 2 != 0 {
        return Err(Error::domain(format!(
            "tuple length must be even and at most 12, got {}",
            m.len()
        )));
    }
    let q = table.q();
    let qq = q.q();
    let reduced: Vec<u64> = m.iter().map(|&mj| q.reduce(mj)).collect();
    let partial: Vec<f64> = (1..qq)
        .into_par_iter()
        .map(|c| {
            let mut row = 0.0;
            for b in 0..qq {
                let mut prod = 1.0;
                for &mj in &reduced {
                    prod *= table.kl(q.mul((b + mj) % qq, c) as i64);
                }
                row += prod;
            }
            row
        })
        .collect();
    Ok(crate::kloosterman::pairwise_sum_real(&partial))
}

/// Report for a complete-sum 2ν-th moment.
#[derive(Debug, Clone, Serialize)]
pub struct Sigma3Report {
    pub value: f64,
    pub bound: f64,
    pub ratio: f64,
    pub nu: u32,
    pub big_m: u64,
}

/// Σ_{b mod q} Σ_{(c,q)=1} |Σ_j coeff_j · Kl((b + (lo+j)c), q)|^{2ν}: the
/// 2ν-th moment of a coefficient sum over the translated range
/// lo+1 ..= lo+len. `lo = 0` gives the m ⩽ M normalization; `lo = R` gives
/// the r ∼ R shifted sum.
pub fn sigma3_shifted(
    table: &KloostermanTable,
    lo: u64,
    coeffs: &[Complex64],
    nu: u32,
) -> Result<f64> {
    if nu < 1 {
        return Err(Error::domain("moment order nu must be >= 1"));
    }
    let q = table.q();
    let qq = q.q();
    let partial: Vec<f64> = (1..qq)
        .into_par_iter()
        .map(|c| {
            let mut row = 0.0;
            for b in 0..qq {
                let mut s = Complex64::new(0.0, 0.0);
                for (j, coeff) in coeffs.iter().enumerate() {
                    let arg = (b + q.mul(lo + 1 + j as u64, c)) % qq;
                    s += coeff * table.kl(arg as i64);
                }
                row += s.norm_sqr().powi(nu as i32);
            }
            row
        })
        .collect();
    Ok(crate::kloosterman::pairwise_sum_real(&partial))
}

/// Σ₃ = Σ_{b,(c,q)=1} |Σ_{m⩽M} α_m Kl(b + mc, q)|^{2ν}, with the ratio
/// against the moment bound q²Mᵛ + qM^{2ν}.
pub fn sigma3_moment(
    table: &KloostermanTable,
    big_m: u64,
    nu: u32,
    alpha: &[Complex64],
    budget: u64,
) -> Result<Sigma3Report> {
    let q = table.q();
    if big_m < 1 || alpha.len() != big_m as usize {
        return Err(Error::domain(format!(
            "alpha must cover m = 1..M, got {} coefficients for M = {big_m}",
            alpha.len()
        )));
    }
    for c in alpha {
        if c.norm() > 1.0 + 1e-12 {
            return Err(Error::domain(format!("coefficient {c} exceeds modulus 1")));
        }
    }
    let cost = q.q() * q.q() * big_m;
    if cost > budget {
        return Err(Error::resource(format!(
            "moment needs {cost} table lookups, budget is {budget}"
        )));
    }
    let value = sigma3_shifted(table, 0, alpha, nu)?;
    let (qf, mf) = (q.q() as f64, big_m as f64);
    let bound = qf * qf * mf.powi(nu as i32) + qf * mf.powi(2 * nu as i32);
    Ok(Sigma3Report {
        value,
        bound,
        ratio: value / bound,
        nu,
        big_m,
    })
}

/// Stratification thresholds: V-like when |𝔄| > c₂·q^{3/2}, W-like when
/// c₁·q < |𝔄| ⩽ c₂·q^{3/2}, generic otherwise.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StrataThresholds {
    pub c1: f64,
    pub c2: f64,
}

impl Default for StrataThresholds {
    fn default() -> Self {
        StrataThresholds { c1: 10.0, c2: 1.0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StrataReport {
    pub v_like: u64,
    pub w_like: u64,
    pub generic: u64,
    pub total: u64,
    pub nu: u32,
    pub big_m: u64,
    /// v_like / M^ν and w_like / M^{3ν/2}
    pub v_ratio: f64,
    pub w_ratio: f64,
}

/// Classifies every tuple 𝐦 ∈ [1, M]^{2ν} by the size of |𝔄(𝐦)|.
pub fn strata_census(
    table: &KloostermanTable,
    big_m: u64,
    nu: u32,
    thresholds: StrataThresholds,
    budget: u64,
) -> Result<StrataReport> {
    if nu < 1 || 2 * nu > 12 {
        return Err(Error::domain("strata census requires 1 <= nu <= 6"));
    }
    let q = table.q();
    let tuples = big_m.pow(2 * nu);
    let cost = tuples.saturating_mul(q.q()).saturating_mul(q.q());
    if cost > budget {
        return Err(Error::resource(format!(
            "strata census needs {cost} table lookups, budget is {budget}"
        )));
    }
    let qf = q.q() as f64;
    let (v_cut, w_cut) = (thresholds.c2 * qf.powf(1.5), thresholds.c1 * qf);
    let (mut v_like, mut w_like, mut generic) = (0u64, 0u64, 0u64);
    let dim = (2 * nu) as usize;
    let mut m = vec![1i64; dim];
    loop {
        let a = sum_product_a(&m, table)?;
        if a.abs() > v_cut {
            v_like += 1;
        } else if a.abs() > w_cut {
            w_like += 1;
        } else {
            generic += 1;
        }
        // odometer over [1, M]^{2ν}
        let mut j = 0;
        while j < dim {
            if m[j] < big_m as i64 {
                m[j] += 1;
                break;
            }
            m[j] = 1;
            j += 1;
        }
        if j == dim {
            break;
        }
    }
    let mf = big_m as f64;
    Ok(StrataReport {
        v_like,
        w_like,
        generic,
        total: tuples,
        nu,
        big_m,
        v_ratio: v_like as f64 / mf.powi(nu as i32),
        w_ratio: w_like as f64 / mf.powf(1.5 * nu as f64),
    })
}
