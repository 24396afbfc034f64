//! Explicit constants for the prime-counting bound and the parameter
//! planner, with an optimizer over the moment order ν.
//!
//! All headline constants are computed in exact rational arithmetic when the
//! input exponent ϖ is rational; floating point appears only in the planner
//! (which works in log space) and in convenience accessors for plotting.

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath;

/// Default search cap for the ν-optimizer: δ_ν → 0 as ν grows, so the
/// constant only deteriorates beyond small ν.
pub const DEFAULT_NU_CAP: u32 = 200;

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// δ_ν(ϖ) = (2ν − (3ν+4)ϖ) / (ν(2ν−1)).
pub fn delta_exact(nu: u32, varpi: Rational64) -> Rational64 {
    let nu = nu as i64;
    (rat(2 * nu, 1) - rat(3 * nu + 4, 1) * varpi) / rat(nu * (2 * nu - 1), 1)
}

/// Upper end of the admissible ϖ-range: ν(2ν+1) / (4ν² + ν + 4).
pub fn range_hi_exact(nu: u32) -> Rational64 {
    let nu = nu as i64;
    rat(nu * (2 * nu + 1), 4 * nu * nu + nu + 4)
}

/// 8 / (6 − 7ϖ): the classical constant, with a flag marking whether ϖ lies
/// in its validity range [9/20, 2/3). The value is still computed outside
/// that range (useful for comparison curves); only 7ϖ ⩾ 6 is a hard error.
pub fn c_iwaniec_exact(varpi: Rational64) -> Result<(Rational64, bool)> {
    let denom = rat(6, 1) - rat(7, 1) * varpi;
    if denom <= Rational64::zero() {
        return Err(Error::domain(format!(
            "c_iwaniec undefined for 7*varpi >= 6 (varpi = {varpi})"
        )));
    }
    let in_range = varpi >= rat(9, 20) && varpi < rat(2, 3);
    Ok((rat(8, 1) / denom, in_range))
}

/// Floating-point convenience wrapper around [`c_iwaniec_exact`].
pub fn c_iwaniec(varpi: f64) -> Result<f64> {
    if 7.0 * varpi >= 6.0 {
        return Err(Error::domain(format!(
            "c_iwaniec undefined for 7*varpi >= 6 (varpi = {varpi})"
        )));
    }
    Ok(8.0 / (6.0 - 7.0 * varpi))
}

/// The sharpened constant together with its ingredients at (ν, ϖ).
#[derive(Debug, Clone, Serialize)]
pub struct ExponentPlan {
    pub varpi: f64,
    pub nu: u32,
    /// δ_ν(ϖ), the gain over the classical denominator
    pub delta: f64,
    /// C = 8 / (6 − 7ϖ + δ_ν(ϖ))
    pub c: f64,
    /// admissible range endpoint ν(2ν+1)/(4ν²+ν+4)
    pub range_hi: f64,
    /// exact value of C as "p/q"
    pub rational_form: String,
}

/// Exact C(ϖ) = 8 / (6 − 7ϖ + δ_ν(ϖ)) for ν ⩾ 5 and ϖ ∈ [1/2, range_hi(ν)).
pub fn c_new_exact(nu: u32, varpi: Rational64) -> Result<Rational64> {
    if nu < 5 {
        return Err(Error::domain(format!(
            "moment order nu = {nu} rejected: nu >= 5 is required for the \
             shift ranges to be admissible"
        )));
    }
    let hi = range_hi_exact(nu);
    if !(varpi >= rat(1, 2) && varpi < hi) {
        return Err(Error::domain(format!(
            "varpi = {varpi} outside the admissible range [1/2, {hi}) for nu = {nu}"
        )));
    }
    let denom = rat(6, 1) - rat(7, 1) * varpi + delta_exact(nu, varpi);
    Ok(rat(8, 1) / denom)
}

/// Fully populated [`ExponentPlan`] at a rational ϖ.
pub fn c_new(nu: u32, varpi: Rational64) -> Result<ExponentPlan> {
    let c = c_new_exact(nu, varpi)?;
    let delta = delta_exact(nu, varpi);
    Ok(ExponentPlan {
        varpi: varpi.to_f64().unwrap(),
        nu,
        delta: delta.to_f64().unwrap(),
        c: c.to_f64().unwrap(),
        range_hi: range_hi_exact(nu).to_f64().unwrap(),
        rational_form: format!("{}/{}", c.numer(), c.denom()),
    })
}

/// Minimizes C(ϖ) over ν ∈ [5, nu_max] subject to ϖ < range_hi(ν); ties go
/// to the smallest ν. `None` when no ν admits ϖ.
pub fn optimize_nu(varpi: Rational64, nu_max: u32) -> Result<Option<(u32, ExponentPlan)>> {
    if varpi < rat(1, 2) {
        return Err(Error::domain(format!(
            "optimizer requires varpi >= 1/2, got {varpi}"
        )));
    }
    if nu_max < 5 {
        return Err(Error::domain("optimizer requires nu_max >= 5"));
    }
    let mut best: Option<(u32, Rational64)> = None;
    for nu in 5..=nu_max {
        if varpi >= range_hi_exact(nu) {
            continue;
        }
        let c = c_new_exact(nu, varpi)?;
        if best.map_or(true, |(_, bc)| c < bc) {
            best = Some((nu, c));
        }
    }
    match best {
        None => Ok(None),
        Some((nu, _)) => Ok(Some((nu, c_new(nu, varpi)?))),
    }
}

/// Constraint verdicts for a parameter plan; every violation is reported by
/// name rather than silently dropped.
#[derive(Debug, Clone, Serialize)]
pub struct PlanFlags {
    /// H > 4q^{1/ν}
    pub h_above_shift_floor: bool,
    /// M > 2q^ε
    pub m_above_window_floor: bool,
    /// K < q/2
    pub k_below_half_modulus: bool,
    /// ε′ > 0 (the plan degenerates at ε′ = 0)
    pub eps_prime_positive: bool,
}

impl PlanFlags {
    pub fn all_pass(&self) -> bool {
        self.h_above_shift_floor
            && self.m_above_window_floor
            && self.k_below_half_modulus
            && self.eps_prime_positive
    }

    /// Names of the violated constraints.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if !self.h_above_shift_floor {
            v.push("H > 4q^(1/nu)");
        }
        if !self.m_above_window_floor {
            v.push("M > 2q^eps");
        }
        if !self.k_below_half_modulus {
            v.push("K < q/2");
        }
        if !self.eps_prime_positive {
            v.push("eps_prime > 0");
        }
        v
    }
}

/// The derived working parameters at scale (x, q): dyadic ranges M, N, the
/// level D = MN, the Poisson truncations H and K, and the shift ranges R, S.
#[derive(Debug, Clone, Serialize)]
pub struct ParameterPlan {
    pub x: f64,
    pub q: u64,
    pub nu: u32,
    pub eps: f64,
    pub eps_prime: f64,
    pub m: f64,
    pub n: f64,
    /// which branch of the min-form produced N: "balanced" is the
    /// x^{(2ν−1)/(2(2ν−3))} branch, "simplified" the x^{ν/(2ν−1)} branch
    pub n_branch: &'static str,
    pub d: f64,
    pub h: f64,
    pub k: f64,
    pub r: f64,
    pub s: f64,
    /// relative disagreement between D = MN and its closed form
    pub d_consistency: f64,
    pub flags: PlanFlags,
}

/// Computes the §-parameterization in log space:
/// M = x^{1−ε′}/q, N by the min-form, D = MN, H = x^{ε−1}MNq,
/// K = q^{1+ε}/M, R = q^{1/ν}, S = H/(4R). All constraints are evaluated
/// into flags; see [`parameter_plan_strict`] for the erroring variant.
pub fn parameter_plan(x: f64, q: u64, nu: u32, eps: f64, eps_prime: f64) -> Result<ParameterPlan> {
    if nu < 5 {
        return Err(Error::domain(format!(
            "moment order nu = {nu} rejected: nu >= 5 is required"
        )));
    }
    if !(x > 3.0) || eps <= 0.0 || eps_prime < 0.0 {
        return Err(Error::domain(format!(
            "plan requires x > 3, eps > 0, eps_prime >= 0; got x = {x}, eps = {eps}, \
             eps_prime = {eps_prime}"
        )));
    }
    if !modmath::is_prime(q)? {
        return Err(Error::domain(format!("modulus {q} is not prime")));
    }
    let nuf = nu as f64;
    let (lx, lq) = (x.ln(), (q as f64).ln());
    let m = ((1.0 - eps_prime) * lx - lq).exp();
    // min-form for N, both branches in log space
    let balanced =
        (2.0 * nuf - 1.0) / (2.0 * (2.0 * nuf - 3.0)) * lx
            - (3.0 * nuf * nuf - nuf + 2.0) / (2.0 * nuf * (2.0 * nuf - 3.0)) * lq;
    let simplified = nuf / (2.0 * nuf - 1.0) * lx
        - (3.0 * nuf * nuf + 2.0) / (2.0 * nuf * (2.0 * nuf - 1.0)) * lq;
    let (log_n, n_branch) = if balanced < simplified {
        (balanced, "balanced")
    } else {
        (simplified, "simplified")
    };
    let n = (log_n - eps_prime * lx).exp();
    let d = m * n;
    // closed form of D for the simplified branch, as a consistency check
    let d_closed = ((3.0 * nuf - 1.0) / (2.0 * nuf - 1.0) * lx - 2.0 * eps_prime * lx
        - (7.0 * nuf * nuf - 2.0 * nuf + 2.0) / (2.0 * nuf * (2.0 * nuf - 1.0)) * lq)
        .exp();
    let d_consistency = if n_branch == "simplified" {
        (d - d_closed).abs() / d_closed
    } else {
        0.0
    };
    let h = (eps - 1.0) * lx + d.ln() + lq;
    let h = h.exp();
    let k = ((1.0 + eps) * lq).exp() / m;
    let r = (lq / nuf).exp();
    let s = h / (4.0 * r);
    let flags = PlanFlags {
        h_above_shift_floor: h > 4.0 * r,
        m_above_window_floor: m > 2.0 * (eps * lq).exp(),
        k_below_half_modulus: k < q as f64 / 2.0,
        eps_prime_positive: eps_prime > 0.0,
    };
    Ok(ParameterPlan {
        x,
        q,
        nu,
        eps,
        eps_prime,
        m,
        n,
        n_branch,
        d,
        h,
        k,
        r,
        s,
        d_consistency,
        flags,
    })
}

/// Like [`parameter_plan`] but turns any violated constraint into a domain
/// error naming it.
pub fn parameter_plan_strict(
    x: f64,
    q: u64,
    nu: u32,
    eps: f64,
    eps_prime: f64,
) -> Result<ParameterPlan> {
    let plan = parameter_plan(x, q, nu, eps, eps_prime)?;
    let violations = plan.flags.violations();
    if !violations.is_empty() {
        return Err(Error::domain(format!(
            "parameter constraints violated: {}",
            violations.join(", ")
        )));
    }
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_constant_examples() {
        let (v, flag) = c_iwaniec_exact(rat(1, 2)).unwrap();
        assert_eq!(v, rat(16, 5));
        assert!(flag);
        let (v, flag) = c_iwaniec_exact(rat(0, 1)).unwrap();
        assert_eq!(v, rat(4, 3));
        assert!(!flag); // below the validity range, still computed
        let (v, _) = c_iwaniec_exact(rat(9, 20)).unwrap();
        assert_eq!(v, rat(160, 57));
        assert!(c_iwaniec_exact(rat(6, 7)).is_err());
        assert!(c_iwaniec(0.9).is_err());
        assert!((c_iwaniec(0.5).unwrap() - 3.2).abs() < 1e-15);
    }

    #[test]
    fn sharpened_constant_headline_values() {
        let plan = c_new(8, rat(1, 2)).unwrap();
        assert_eq!(plan.rational_form, "480/151");
        assert!((plan.c - 480.0 / 151.0).abs() < 1e-15);
        assert_eq!(range_hi_exact(8), rat(34, 67));
        assert!((plan.range_hi - 34.0 / 67.0).abs() < 1e-15);
        // domain guards
        assert!(c_new_exact(4, rat(1, 2)).is_err());
        assert!(c_new_exact(8, rat(34, 67)).is_err());
        assert!(c_new_exact(8, rat(49, 100)).is_err());
    }

    #[test]
    fn nu8_closed_form_identity() {
        // C(8, varpi) = 240/(184 - 217 varpi) as exact rationals across the
        // admissible range, sampled at 1000 grid points
        let lo = rat(1, 2);
        let hi = rat(34, 67);
        let step = (hi - lo) / rat(1000, 1);
        for i in 0..1000i64 {
            let varpi = lo + step * rat(i, 1);
            let c = c_new_exact(8, varpi).unwrap();
            let closed = rat(240, 1) / (rat(184, 1) - rat(217, 1) * varpi);
            assert_eq!(c, closed, "varpi = {varpi}");
            let diff = (c.to_f64().unwrap() - closed.to_f64().unwrap()).abs();
            assert!(diff < 1e-12);
        }
    }

    #[test]
    fn strict_improvement_over_classical() {
        // delta > 0 and c_new < c_iwaniec throughout [1/2, range_hi) for
        // nu in [5, 50]
        for nu in 5..=50u32 {
            let hi = range_hi_exact(nu);
            assert!(hi > rat(1, 2), "range_hi({nu}) <= 1/2");
            let span = hi - rat(1, 2);
            for i in 0..20i64 {
                let varpi = rat(1, 2) + span * rat(i, 20);
                let delta = delta_exact(nu, varpi);
                assert!(delta > Rational64::zero(), "delta({nu}, {varpi}) <= 0");
                let c = c_new_exact(nu, varpi).unwrap();
                let (ci, _) = c_iwaniec_exact(varpi).unwrap();
                assert!(c < ci, "no improvement at nu = {nu}, varpi = {varpi}");
            }
        }
    }

    #[test]
    fn optimizer_picks_eight() {
        let (nu, plan) = optimize_nu(rat(1, 2), DEFAULT_NU_CAP).unwrap().unwrap();
        assert_eq!(nu, 8);
        assert_eq!(plan.rational_form, "480/151");
        // independent oracle: at varpi = 1/2, delta = (nu-4)/(2 nu (2nu-1));
        // enumerate and confirm nu = 8 maximizes it
        let mut best = (0u32, rat(0, 1));
        for nu in 5..=200u32 {
            let d = delta_exact(nu, rat(1, 2));
            assert_eq!(d, rat(nu as i64 - 4, 2 * nu as i64 * (2 * nu as i64 - 1)));
            if d > best.1 {
                best = (nu, d);
            }
        }
        assert_eq!(best.0, 8);
        // an off-center varpi: the optimizer result is the enumeration min
        let varpi = rat(507, 1000);
        let (nu_star, plan) = optimize_nu(varpi, 60).unwrap().unwrap();
        let mut oracle: Option<(u32, Rational64)> = None;
        for nu in 5..=60u32 {
            if varpi < range_hi_exact(nu) {
                let c = c_new_exact(nu, varpi).unwrap();
                if oracle.map_or(true, |(_, bc)| c < bc) {
                    oracle = Some((nu, c));
                }
            }
        }
        let (onu, oc) = oracle.unwrap();
        assert_eq!(nu_star, onu);
        assert!((plan.c - oc.to_f64().unwrap()).abs() < 1e-15);
        // infeasible varpi
        assert!(optimize_nu(rat(3, 5), DEFAULT_NU_CAP).unwrap().is_none());
        assert!(optimize_nu(rat(1, 4), 10).is_err());
    }

    #[test]
    fn range_hi_peaks_at_eight() {
        let peak = range_hi_exact(8);
        assert_eq!(peak, rat(34, 67));
        for nu in 5..=10_000u32 {
            if nu != 8 {
                assert!(range_hi_exact(nu) <= peak, "nu = {nu} beats 8");
            }
        }
    }

    #[test]
    fn plan_consistency_and_flags() {
        // a scale where every constraint is satisfiable
        let plan = parameter_plan_strict(1.0e12, 1_000_003, 8, 0.01, 0.01).unwrap();
        assert!(plan.flags.all_pass());
        assert!(plan.d_consistency < 1e-9);
        assert!((plan.h - 4.0 * plan.r * plan.s).abs() < 1e-9 * plan.h);
        assert!((plan.d - plan.m * plan.n).abs() < 1e-12 * plan.d);
        // the desk-scale example: H falls below the shift floor 4q^{1/nu},
        // which the flags must report (strict mode refuses)
        let small = parameter_plan(1.0e8, 10007, 8, 0.01, 0.01).unwrap();
        assert!(!small.flags.h_above_shift_floor);
        assert!(small.flags.m_above_window_floor);
        assert!(small.flags.k_below_half_modulus);
        let err = parameter_plan_strict(1.0e8, 10007, 8, 0.01, 0.01).unwrap_err();
        assert!(err.to_string().contains("H > 4q^(1/nu)"));
        // degenerate eps_prime is a flag, not an error
        let degenerate = parameter_plan(1.0e12, 1_000_003, 8, 0.01, 0.0).unwrap();
        assert!(!degenerate.flags.eps_prime_positive);
        assert_eq!(degenerate.flags.violations(), vec!["eps_prime > 0"]);
        // hard domain errors
        assert!(parameter_plan(1.0e8, 10007, 4, 0.01, 0.01).is_err());
        assert!(parameter_plan(1.0e8, 10006, 8, 0.01, 0.01).is_err());
        assert!(parameter_plan(1.0e8, 10007, 8, 0.0, 0.01).is_err());
    }
}
