//! Reference kernel H, the composite kernel γ(s, x) = H(s/ζ(x))/ζ(x)², and
//! the quantities derived from them.
//!
//! Moments are taken over the half line:
//! `m0 = ∫H`, `m1 = ∫yH` (must be 1), `m2 = ∫y²H`.
//! The jump decay rate is `k(x) = ∫γ(s, x) ds = m0 / ζ(x)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::horizon::{HorizonField, Reach};
use crate::quadrature;

/// Tail mass of yH(y) left outside the effective support.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;

const NORMALIZATION_TOLERANCE: f64 = 1e-10;
const MOMENT_TOLERANCE: f64 = 1e-14;

/// A smooth, fast-decaying profile on y ≥ 0.
pub trait Profile: Send + Sync + fmt::Debug {
    fn value(&self, y: f64) -> f64;
    fn derivative(&self, y: f64) -> f64;
}

/// `amplitude · exp(-rate · y²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianProfile {
    pub amplitude: f64,
    pub rate: f64,
}

impl GaussianProfile {
    /// 20 e^{-10 y²}, normalized so that ∫₀^∞ yH = 1.
    pub const fn standard() -> Self {
        Self {
            amplitude: 20.0,
            rate: 10.0,
        }
    }
}

impl Profile for GaussianProfile {
    fn value(&self, y: f64) -> f64 {
        self.amplitude * (-self.rate * y * y).exp()
    }

    fn derivative(&self, y: f64) -> f64 {
        -2.0 * self.rate * y * self.value(y)
    }
}

#[derive(Debug, Clone)]
pub struct ReferenceKernel {
    profile: Arc<dyn Profile>,
    m0: f64,
    m1: f64,
    m2: f64,
    support_radius: f64,
}

impl ReferenceKernel {
    /// Computes the moments and the effective support once. Profiles that
    /// are negative or not normalized are rejected, never rescaled.
    pub fn new(profile: impl Profile + 'static) -> Result<Self> {
        let profile: Arc<dyn Profile> = Arc::new(profile);
        for i in 0..=400 {
            let y = i as f64 * 0.025;
            let v = profile.value(y);
            if v.is_nan() || v < 0.0 {
                return Err(Error::KernelNegative { y });
            }
        }
        let moment = |p: i32| {
            let f = |y: f64| y.powi(p) * profile.value(y);
            quadrature::integrate_to_infinity(&f, 0.0, MOMENT_TOLERANCE)
        };
        let (m0, m1, m2) = (moment(0), moment(1), moment(2));
        for (name, value) in [("m0", m0), ("m1", m1), ("m2", m2)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::KernelMoment { name, value });
            }
        }
        if (m1 - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::KernelNotNormalized { m1 });
        }
        let mut kernel = Self {
            profile,
            m0,
            m1,
            m2,
            support_radius: f64::NAN,
        };
        kernel.support_radius = kernel.support_radius_for(DEFAULT_TAIL_TOLERANCE);
        Ok(kernel)
    }

    /// H(s) = 20 e^{-10 s²}.
    pub fn standard() -> Self {
        Self::new(GaussianProfile::standard()).expect("the standard profile is normalized")
    }

    pub fn value(&self, y: f64) -> f64 {
        self.profile.value(y)
    }

    pub fn derivative(&self, y: f64) -> f64 {
        self.profile.derivative(y)
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    /// S_max: the radius used for all truncation, at the default tolerance.
    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    /// ∫_S^∞ yH(y) dy.
    pub fn first_moment_tail(&self, from: f64) -> f64 {
        let f = |y: f64| y * self.profile.value(y);
        quadrature::integrate_to_infinity(&f, from, 1e-15)
    }

    /// Smallest S (to bisection precision) with ∫_S^∞ yH < tol.
    pub fn support_radius_for(&self, tol: f64) -> f64 {
        let mut hi = 1.0;
        while self.first_moment_tail(hi) >= tol {
            hi *= 2.0;
            assert!(hi < 1e6, "profile tail does not decay");
        }
        let mut lo = 0.0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.first_moment_tail(mid) < tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// γ(s, x) = H(s/ζ)/ζ².
    pub fn gamma(&self, horizon: &HorizonField, s: f64, x: f64) -> Result<f64> {
        let zeta = nonlocal_zeta(horizon, x)?;
        Ok(self.value(s / zeta) / (zeta * zeta))
    }

    /// k(x) = ∫₀^∞ γ(s, x) ds = m0 / ζ(x).
    pub fn decay_rate(&self, horizon: &HorizonField, x: f64) -> Result<f64> {
        let zeta = nonlocal_zeta(horizon, x)?;
        Ok(self.m0 / zeta)
    }

    /// 2ζ H(s/ζ) + s H'(s/ζ): the bracket of ∂γ/∂x = -ζ'/ζ⁴ · (…).
    pub fn gamma_x_bracket(&self, horizon: &HorizonField, s: f64, x: f64) -> Result<f64> {
        let zeta = nonlocal_zeta(horizon, x)?;
        Ok(self.gamma_x_bracket_at(zeta, s))
    }

    pub(crate) fn gamma_x_bracket_at(&self, zeta: f64, s: f64) -> f64 {
        let y = s / zeta;
        2.0 * zeta * self.value(y) + s * self.derivative(y)
    }
}

fn nonlocal_zeta(horizon: &HorizonField, x: f64) -> Result<f64> {
    match horizon.reach(x) {
        Reach::Nonlocal { zeta } => Ok(zeta),
        Reach::Local => Err(Error::LocalPoint { x }),
    }
}
