//! The smooth cutoff Φ for (x, y) and the piecewise-linear tent weight φ,
//! with their Fourier transforms.
//!
//! Φ rises from 0 to 1 on [y, 2y] through a genuine C^∞ bump primitive,
//! holds 1 on the plateau [2y, x], and falls back on [x, x+y]. All-orders
//! derivative bounds Φ^{(j)} ≪ y^{-j} hold because the edge profile is the
//! normalized primitive of exp(-1/(s(1-s))), which is antisymmetric about
//! the edge midpoint.
//!
//! Fourier transforms use the convention ĝ(ξ) = ∫ g(t) e(-ξt) dt with
//! e(t) = exp(2πit). The transform of Φ is evaluated as an exact plateau
//! term plus two edge terms, each reduced to the fixed profile transform
//! P(θ) = ∫₀¹ p(u) e(-θu) du; only that one smooth unit-interval integral
//! is done numerically.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quad::{integrate_checked, integrate_panels, integrate_panels_real, panels_for};

/// e^{iθ} - 1, stable for small θ (avoids cancellation in 1 - cos).
fn expi_m1(theta: f64) -> Complex64 {
    let half = 0.5 * theta;
    Complex64::new(-2.0 * half.sin() * half.sin(), theta.sin())
}

/// ∫₀^L e(-ηt) dt, stable for all η.
fn box_hat(length: f64, eta: f64) -> Complex64 {
    if eta == 0.0 {
        return Complex64::new(length, 0.0);
    }
    // (e^{-2πiηL} - 1)/(-2πiη)
    expi_m1(-2.0 * PI * eta * length) / Complex64::new(0.0, -2.0 * PI * eta)
}

/// The fixed C^∞ edge profile p: [0,1] -> [0,1].
pub struct EdgeProfile;

impl EdgeProfile {
    /// Unnormalized bump density exp(-1/(s(1-s))) on (0,1).
    pub fn density(s: f64) -> f64 {
        if s <= 0.0 || s >= 1.0 {
            0.0
        } else {
            (-1.0 / (s * (1.0 - s))).exp()
        }
    }

    /// ∫₀¹ density, computed once.
    pub fn norm() -> f64 {
        static NORM: OnceLock<f64> = OnceLock::new();
        *NORM.get_or_init(|| integrate_panels_real(&Self::density, 0.0, 1.0, 64))
    }

    /// p(u) = (∫₀ᵘ density)/norm; antisymmetric: p(u) + p(1-u) = 1.
    pub fn value(u: f64) -> f64 {
        if u <= 0.0 {
            0.0
        } else if u >= 1.0 {
            1.0
        } else if u > 0.5 {
            // evaluate on [0, 1/2] where the density is smallest
            1.0 - Self::value(1.0 - u)
        } else {
            integrate_panels_real(&Self::density, 0.0, u, 24) / Self::norm()
        }
    }

    /// B(θ) = ∫₀¹ p'(u) e(-θu) du, the transform of the normalized density.
    /// |B| decays faster than any power of θ.
    pub fn density_hat(theta: f64) -> Complex64 {
        let w = -2.0 * PI * theta;
        let v = integrate_panels(
            &|u| Self::density(u) * Complex64::from_polar(1.0, w * u),
            0.0,
            1.0,
            panels_for(theta, 8),
        );
        v / Self::norm()
    }

    /// P(θ) = ∫₀¹ p(u) e(-θu) du via integration by parts against B(θ).
    pub fn profile_hat(theta: f64) -> Complex64 {
        if theta.abs() < 1e-4 {
            // direct quadrature; the IBP form loses precision as θ -> 0
            let w = -2.0 * PI * theta;
            return integrate_panels(
                &|u| Self::value(u) * Complex64::from_polar(1.0, w * u),
                0.0,
                1.0,
                12,
            );
        }
        let b = Self::density_hat(theta);
        let e = Complex64::from_polar(1.0, -2.0 * PI * theta);
        (b - e) / Complex64::new(0.0, 2.0 * PI * theta)
    }
}

/// The smooth weight Φ: plateau [2y, x], support [y, x+y], 0 ≤ Φ ≤ 1.
///
/// ∫Φ = x - y exactly (the symmetric edges each carry mass y/2); the mass
/// is exposed as `mass()` and used wherever an expected main term is needed.
#[derive(Debug, Clone, Serialize)]
pub struct SmoothWeight {
    x: f64,
    y: f64,
    /// absolute quadrature error target for `phi_hat`, relative to x
    quadrature_tolerance: f64,
}

impl SmoothWeight {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && y > 0.0 && x > 4.0 * y) {
            return Err(Error::domain(format!(
                "smooth weight requires x > 4y > 0, got x = {x}, y = {y}"
            )));
        }
        Ok(SmoothWeight {
            x,
            y,
            quadrature_tolerance: 1e-9,
        })
    }

    /// y = x (log x)^{-3}, the scaling the sieve pipeline uses.
    pub fn with_standard_width(x: f64) -> Result<Self> {
        Self::new(x, x / x.ln().powi(3))
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// ∫Φ = x - y, exact for the antisymmetric edge profile.
    pub fn mass(&self) -> f64 {
        self.x - self.y
    }

    pub fn quadrature_tolerance(&self) -> f64 {
        self.quadrature_tolerance
    }

    pub fn set_quadrature_tolerance(&mut self, tol: f64) {
        self.quadrature_tolerance = tol;
    }

    /// Pointwise Φ(t).
    pub fn phi(&self, t: f64) -> f64 {
        let (x, y) = (self.x, self.y);
        if t <= y || t >= x + y {
            0.0
        } else if t < 2.0 * y {
            EdgeProfile::value((t - y) / y)
        } else if t <= x {
            1.0
        } else {
            EdgeProfile::value((x + y - t) / y)
        }
    }

    /// Φ̂(ξ) = ∫Φ(t) e(-ξt) dt: exact plateau term plus two profile-transform
    /// edge terms. Absolute error ≤ quadrature_tolerance · x.
    pub fn phi_hat(&self, xi: f64) -> Complex64 {
        let (x, y) = (self.x, self.y);
        if xi == 0.0 {
            return Complex64::new(self.mass(), 0.0);
        }
        // plateau [2y, x]
        let plateau = Complex64::from_polar(1.0, -2.0 * PI * xi * 2.0 * y) * box_hat(x - 2.0 * y, xi);
        // rising edge [y, 2y] and falling edge [x, x+y]
        let p = EdgeProfile::profile_hat(xi * y);
        let rising = y * Complex64::from_polar(1.0, -2.0 * PI * xi * y) * p;
        let falling = y * Complex64::from_polar(1.0, -2.0 * PI * xi * (x + y)) * p.conj();
        plateau + rising + falling
    }

    /// Independent slow route: panel quadrature straight over the support.
    /// Used as the oracle against the composed fast path.
    pub fn phi_hat_quadrature(&self, xi: f64) -> Result<Complex64> {
        let (x, y) = (self.x, self.y);
        let cycles = xi.abs() * (x + 0.0);
        integrate_checked(
            &|t| self.phi(t) * Complex64::from_polar(1.0, -2.0 * PI * xi * t),
            y,
            x + y,
            panels_for(cycles, 16),
            self.quadrature_tolerance * x,
            1 << 22,
        )
    }
}

/// The piecewise-linear tent weight: unit ramps around a plateau at height 1,
/// supported on [0, H]. Realized as the autocorrelation-style convolution
/// box[0,a] * box[0,b] with a = min(1, H/2), b = H - a, which makes the
/// closed-form transform a product of two box transforms.
///
/// For H ≥ 2 this is min{λ, 1, H-λ}: mass H - 1, value 1 at every integer
/// 1..H-1. For H < 2 it degenerates to a triangle of height H/2.
#[derive(Debug, Clone, Serialize)]
pub struct TentWeight {
    h: f64,
    ramp: f64,
}

impl TentWeight {
    pub fn new(h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::domain(format!("tent weight requires H > 0, got {h}")));
        }
        Ok(TentWeight {
            h,
            ramp: (0.5 * h).min(1.0),
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// φ(λ) = max(0, min{λ, ramp, H-λ}) clamped at 1.
    pub fn value(&self, lambda: f64) -> f64 {
        lambda.min(self.h - lambda).min(self.ramp).max(0.0)
    }

    /// ∫φ = ramp · (H - ramp).
    pub fn mass(&self) -> f64 {
        self.ramp * (self.h - self.ramp)
    }

    /// Closed-form φ̂(η), exact (no quadrature).
    pub fn hat(&self, eta: f64) -> Complex64 {
        box_hat(self.ramp, eta) * box_hat(self.h - self.ramp, eta)
    }

    /// Constants (c1, c2) with |φ̂(η)| ≤ min{H, c1/|η|, c2/η²}.
    pub fn decay_constants(&self) -> (f64, f64) {
        ((self.h - self.ramp) / PI, 1.0 / (PI * PI))
    }
}
