//! Parameter types, validation and phase arithmetic.
//!
//! Every quantity is Γ-normalized: rates and Rabi frequencies in units of Γ,
//! optical depth dimensionless. Phases live on the complex amplitudes; the
//! relative phase φ_r = φ_p − φ_c + φ_d − φ_s is always derived from them.

use core::f64::consts::TAU;

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Complex double used for all amplitudes.
pub type C64 = Complex<f64>;

/// Default bound on |ρ_ij| above which the weak-probe approximation is
/// considered violated.
pub const WEAK_FIELD_BOUND: f64 = 0.1;

/// Atomic and pump constants of the double-Λ model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Optical depth α (α_p = α_s).
    pub alpha: f64,
    /// Signal detuning Δ.
    pub delta: f64,
    /// Optical coherence decay of |3⟩.
    pub gamma31: f64,
    /// Optical coherence decay of |4⟩.
    pub gamma41: f64,
    /// Ground-state dephasing.
    pub gamma21: f64,
    /// Coupling Rabi frequency Ω_c (carries φ_c).
    pub omega_c: C64,
    /// Driving Rabi frequency Ω_d (carries φ_d).
    pub omega_d: C64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self::balanced(0.0, 0.0)
    }
}

impl SystemParams {
    /// Ideal regime: γ31 = γ41 = 1, γ21 = 0, Ω_c = Ω_d = 1 (real).
    pub fn balanced(alpha: f64, delta: f64) -> Self {
        Self {
            alpha,
            delta,
            gamma31: 1.0,
            gamma41: 1.0,
            gamma21: 0.0,
            omega_c: C64::new(1.0, 0.0),
            omega_d: C64::new(1.0, 0.0),
        }
    }

    /// Single-Λ EIT medium (driving field off).
    pub fn single_lambda(alpha: f64, omega_c: f64, gamma21: f64, gamma31: f64) -> Self {
        Self {
            alpha,
            delta: 0.0,
            gamma31,
            gamma41: gamma31,
            gamma21,
            omega_c: C64::new(omega_c, 0.0),
            omega_d: C64::new(0.0, 0.0),
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_decays(mut self, gamma21: f64, gamma31: f64, gamma41: f64) -> Self {
        self.gamma21 = gamma21;
        self.gamma31 = gamma31;
        self.gamma41 = gamma41;
        self
    }

    pub fn with_pumps(mut self, omega_c: C64, omega_d: C64) -> Self {
        self.omega_c = omega_c;
        self.omega_d = omega_d;
        self
    }

    /// True when the closed-form steady state applies: γ21 = 0 and
    /// γ31 = γ41 = 1.
    pub fn is_closed_form(&self) -> bool {
        self.gamma21 == 0.0 && self.gamma31 == 1.0 && self.gamma41 == 1.0
    }

    /// Closed-form regime with |Ω_c| = |Ω_d|.
    pub fn is_balanced(&self) -> bool {
        self.is_closed_form() && (self.omega_c.norm() - self.omega_d.norm()).abs() <= 1e-12 * self.omega_c.norm()
    }

    /// Validation that allows Ω_d = 0 (single-Λ operations).
    pub fn validate_single_lambda(&self) -> Result<()> {
        check_finite(self.alpha, "alpha")?;
        check_finite(self.delta, "delta")?;
        check_finite(self.gamma31, "gamma31")?;
        check_finite(self.gamma41, "gamma41")?;
        check_finite(self.gamma21, "gamma21")?;
        if !(self.omega_c.re.is_finite() && self.omega_c.im.is_finite()) {
            return Err(Error::NonFinite("omega_c"));
        }
        if !(self.omega_d.re.is_finite() && self.omega_d.im.is_finite()) {
            return Err(Error::NonFinite("omega_d"));
        }
        if self.alpha < 0.0 {
            return Err(Error::AlphaNegative);
        }
        if self.gamma31 <= 0.0 {
            return Err(Error::Gamma31Nonpositive);
        }
        if self.gamma41 <= 0.0 {
            return Err(Error::Gamma41Nonpositive);
        }
        if self.gamma21 < 0.0 {
            return Err(Error::Gamma21Negative);
        }
        if self.omega_c.norm() == 0.0 {
            return Err(Error::CouplingFieldZero);
        }
        Ok(())
    }

    /// Full double-Λ validation; see [`validate`].
    pub fn validate(&self) -> Result<()> {
        self.validate_single_lambda()?;
        if self.omega_d.norm() == 0.0 {
            return Err(Error::DrivingFieldZero);
        }
        Ok(())
    }

    /// Largest rate entering the coherence equations, used for the
    /// explicit-integrator stability bound.
    pub fn max_rate(&self) -> f64 {
        [
            self.gamma31,
            self.gamma41,
            self.delta.abs(),
            self.omega_c.norm(),
            self.omega_d.norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn check_finite(x: f64, name: &'static str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(name))
    }
}

/// Returns the params unchanged when every double-Λ invariant holds,
/// otherwise the first violated one.
pub fn validate(params: SystemParams) -> Result<SystemParams> {
    params.validate()?;
    Ok(params)
}

/// Probe and signal amplitudes at one propagation coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldPair {
    pub omega_p: C64,
    pub omega_s: C64,
}

impl FieldPair {
    pub fn new(omega_p: C64, omega_s: C64) -> Self {
        Self { omega_p, omega_s }
    }

    /// Unit-magnitude inputs realizing `phi_r` for the given pumps, with the
    /// probe phase fixed at zero.
    pub fn unit_with_relative_phase(params: &SystemParams, phi_r: RelativePhase) -> Self {
        let phi_s = params.omega_d.arg() - params.omega_c.arg() - phi_r.value();
        Self {
            omega_p: C64::new(1.0, 0.0),
            omega_s: C64::from_polar(1.0, phi_s),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.omega_p.re.is_finite()
            && self.omega_p.im.is_finite()
            && self.omega_s.re.is_finite()
            && self.omega_s.im.is_finite()
    }
}

/// Relative phase φ_r of the four fields, kept in [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RelativePhase(f64);

impl RelativePhase {
    pub fn new(theta: f64) -> Result<Self> {
        canonical_phase(theta).map(Self)
    }

    /// φ_p − φ_c + φ_d − φ_s. Zero-amplitude fields contribute phase 0.
    pub fn from_fields(params: &SystemParams, fields: &FieldPair) -> Self {
        let theta = fields.omega_p.arg() - params.omega_c.arg() + params.omega_d.arg() - fields.omega_s.arg();
        Self(wrap_tau(theta))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Slowly varying coherences ρ21, ρ31, ρ41.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Coherences {
    pub rho21: C64,
    pub rho31: C64,
    pub rho41: C64,
}

impl Coherences {
    pub fn max_norm(&self) -> f64 {
        self.rho21.norm().max(self.rho31.norm()).max(self.rho41.norm())
    }

    /// Whether all magnitudes sit below `bound` (use [`WEAK_FIELD_BOUND`]
    /// for the default). Exceeding it is a warning, not an error.
    pub fn is_weak_field(&self, bound: f64) -> bool {
        self.max_norm() < bound
    }
}

/// θ mod 2π in [0, 2π).
pub fn canonical_phase(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    Ok(wrap_tau(theta))
}

pub(crate) fn wrap_tau(theta: f64) -> f64 {
    let r = theta % TAU;
    let r = if r < 0.0 { r + TAU } else { r };
    // the shift can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wraps an angle into (−π, π].
pub fn wrap_pi(theta: f64) -> f64 {
    let r = wrap_tau(theta);
    if r > core::f64::consts::PI {
        r - TAU
    } else {
        r
    }
}
