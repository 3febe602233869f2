//! Phase-diagram traces, phase-jump constants, the π-shift relative phase and
//! the cross-phase-modulation metric.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::model::{wrap_pi, FieldPair, RelativePhase, SystemParams, C64};
use crate::steady_state::{
    balanced_decay_factor, propagate, propagate_balanced, transmission_phase, Propagator, TransmissionPhase,
};
use crate::{Error, Result};

/// Amplitude below which a trace is considered to pass through the origin;
/// phase unwrapping restarts after such a sample.
pub const ORIGIN_RADIUS: f64 = 1e-9;

/// Default number of depth samples used to accumulate a phase along ζ.
pub const ACCUMULATION_SAMPLES: usize = 2048;

/// One point of a phase-diagram curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    pub zeta: f64,
    pub probe: C64,
    pub signal: C64,
}

/// Output/input ratios of both fields sampled along the optical depth.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTrace {
    pub samples: Vec<TraceSample>,
    pub phi_r: RelativePhase,
    pub delta: f64,
}

impl PhaseTrace {
    pub fn probe_phases(&self) -> Vec<Option<f64>> {
        unwrap_phases(self.samples.iter().map(|s| s.probe))
    }

    pub fn signal_phases(&self) -> Vec<Option<f64>> {
        unwrap_phases(self.samples.iter().map(|s| s.signal))
    }

    pub fn terminal(&self) -> &TraceSample {
        self.samples.last().expect("trace has at least two samples")
    }
}

/// Nearest-branch phase continuation. Samples closer than [`ORIGIN_RADIUS`]
/// to the origin have no phase and restart the continuation.
pub fn unwrap_phases(ratios: impl IntoIterator<Item = C64>) -> Vec<Option<f64>> {
    let mut prev: Option<f64> = None;
    ratios
        .into_iter()
        .map(|r| {
            if r.norm() < ORIGIN_RADIUS {
                prev = None;
                return None;
            }
            let a = r.arg();
            let u = match prev {
                Some(p) => a + TAU * ((p - a) / TAU).round(),
                None => a,
            };
            prev = Some(u);
            Some(u)
        })
        .collect()
}

/// Samples the balanced closed form on `n_samples` uniformly spaced depths
/// in [0, alpha_max].
pub fn phase_trace(phi_r: RelativePhase, delta: f64, alpha_max: f64, n_samples: usize) -> Result<PhaseTrace> {
    if !(alpha_max > 0.0) || n_samples < 2 || !delta.is_finite() || !alpha_max.is_finite() {
        return Err(Error::InvalidTrace);
    }
    let step = alpha_max / (n_samples - 1) as f64;
    let samples = (0..n_samples)
        .map(|k| {
            let zeta = if k + 1 == n_samples { alpha_max } else { k as f64 * step };
            let (probe, signal) = propagate_balanced(phi_r, zeta, delta);
            TraceSample { zeta, probe, signal }
        })
        .collect();
    Ok(PhaseTrace { samples, phi_r, delta })
}

/// Phases of (probe, signal) at depth ζ relative to their inputs, continued
/// along the propagation so that shifts beyond ±π are kept. `None` for a
/// zero input or an output at the origin.
pub fn accumulated_phases(
    params: &SystemParams,
    fields: &FieldPair,
    zeta: f64,
    n_samples: usize,
) -> Result<(Option<f64>, Option<f64>)> {
    if !(zeta >= 0.0) || n_samples < 2 {
        return Err(Error::InvalidTrace);
    }
    let prop = Propagator::new(params)?;
    let outs: Vec<FieldPair> = (0..n_samples)
        .map(|k| {
            let z = zeta * k as f64 / (n_samples - 1) as f64;
            prop.at(z).apply(fields)
        })
        .collect();
    let relative = |input: C64, pick: fn(&FieldPair) -> C64| -> Option<f64> {
        if input.norm() == 0.0 {
            return None;
        }
        *unwrap_phases(outs.iter().map(|o| pick(o) / input)).last()?
    };
    Ok((
        relative(fields.omega_p, |o| o.omega_p),
        relative(fields.omega_s, |o| o.omega_s),
    ))
}

/// (R, I) with e^{R − iI} the absorbing-mode factor of the balanced closed
/// form: R = −(α/2)/(Δ²+1), I = (α/2)Δ/(Δ²+1).
pub fn exponents(alpha: f64, delta: f64) -> (f64, f64) {
    let denom = delta * delta + 1.0;
    (-0.5 * alpha / denom, 0.5 * alpha * delta / denom)
}

/// Critical constants of the n-th phase-jump branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpParameters {
    /// R at the critical depth.
    pub r_exponent: f64,
    /// I at the critical depth, ±nπ/2 (sign of Δ).
    pub i_exponent: f64,
    pub n: i32,
    pub alpha_c: f64,
    pub phi_pj: f64,
    pub phi_sj: f64,
}

fn check_branch(delta: f64, n: i32) -> Result<()> {
    if !delta.is_finite() {
        return Err(Error::NonFinite("delta"));
    }
    if delta == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    if n <= 0 || n % 2 == 0 {
        return Err(Error::InvalidBranch(n));
    }
    Ok(())
}

/// Depth at which the balanced probe field of branch `n` is extinguished:
/// nπ(Δ²+1)/|Δ|.
pub fn critical_depth(delta: f64, n: i32) -> Result<f64> {
    check_branch(delta, n)?;
    Ok(n as f64 * PI * (delta * delta + 1.0) / delta.abs())
}

/// Relative phases (φ_pj, φ_sj) at which the probe (signal) trace passes
/// through the origin, both in [0, 2π).
pub fn jump_phases(delta: f64, n: i32) -> Result<(f64, f64)> {
    check_branch(delta, n)?;
    // for Δ < 0 the same depth is reached on the branch −n
    let m = if delta > 0.0 { n } else { -n };
    // sin(mπ/2) for odd m, exactly
    let sin_half = if (m - 1).rem_euclid(4) == 0 { 1.0 } else { -1.0 };
    let growth = (m as f64 * PI / (2.0 * delta)).exp();
    let phi_pj = 2.0 * (-sin_half * growth).atan();
    let phi_sj = 2.0 * (sin_half * growth).atan();
    Ok((crate::model::wrap_tau(phi_pj), crate::model::wrap_tau(phi_sj)))
}

pub fn jump_parameters(delta: f64, n: i32) -> Result<JumpParameters> {
    let alpha_c = critical_depth(delta, n)?;
    let (phi_pj, phi_sj) = jump_phases(delta, n)?;
    let (r_exponent, _) = exponents(alpha_c, delta);
    Ok(JumpParameters {
        r_exponent,
        i_exponent: delta.signum() * n as f64 * PI / 2.0,
        n,
        alpha_c,
        phi_pj,
        phi_sj,
    })
}

/// Relative phase putting the balanced probe output on the negative real
/// axis (a π phase shift).
pub fn pi_phase_relative(alpha: f64, delta: f64) -> Result<RelativePhase> {
    let (r, i) = exponents(alpha, delta);
    let s = i.sin();
    if s.abs() < 1e-12 {
        return Err(Error::SingularPhaseCondition { alpha, delta });
    }
    let phi = RelativePhase::new(2.0 * ((i.cos() - (-r).exp()) / s).atan())?;
    let (probe, _) = propagate_balanced(phi, alpha, delta);
    // the boundary case lands on the origin, which is accepted
    if probe.re > ORIGIN_RADIUS {
        return Err(Error::TargetUnreachable { alpha, delta });
    }
    Ok(phi)
}

/// Relative phase putting the balanced probe output on the negative
/// imaginary axis (a −π/2 shift). Of the two solutions the one with the
/// larger transmission is returned.
pub fn half_pi_phase_relative(alpha: f64, delta: f64) -> Result<RelativePhase> {
    // output = A + B e^{−iφ}: a circle of radius |B| about A
    let e = balanced_decay_factor(alpha, delta);
    let one = C64::new(1.0, 0.0);
    let a = (one + e) * 0.5;
    let b = (one - e) * 0.5;
    let radius = b.norm();
    if radius < 1e-15 {
        return Err(Error::TargetUnreachable { alpha, delta });
    }
    let c = -a.re / radius;
    if c.abs() > 1.0 {
        return Err(Error::TargetUnreachable { alpha, delta });
    }
    let beta = b.arg();
    let spread = c.acos();
    let best = [beta - spread, beta + spread]
        .into_iter()
        .filter_map(|phi| {
            let phi = RelativePhase::new(phi).ok()?;
            let (probe, _) = propagate_balanced(phi, alpha, delta);
            (probe.im < 0.0).then_some((phi, probe.norm_sqr()))
        })
        .max_by(|x, y| x.1.total_cmp(&y.1));
    best.map(|(phi, _)| phi).ok_or(Error::TargetUnreachable { alpha, delta })
}

/// Probe response with and without the signal input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XpmMetric {
    pub with_signal: TransmissionPhase,
    pub without_signal: TransmissionPhase,
    /// |φ_with − φ_without| folded into [0, π].
    pub delta_phi_xpm: Option<f64>,
}

/// Cross-phase modulation of the probe at depth `alpha`: the probe phase
/// with both inputs on minus the phase with Ω_s(0) = 0. Pump phases and
/// the probe input stay fixed; only the signal is switched off.
pub fn xpm_metric(params: &SystemParams, alpha: f64, phi_r: RelativePhase) -> Result<XpmMetric> {
    let p = params.with_alpha(alpha);
    p.validate()?;
    let fields = FieldPair::unit_with_relative_phase(&p, phi_r);
    let with = propagate(&p, &fields, alpha)?;
    let without = propagate(&p, &FieldPair::new(fields.omega_p, C64::new(0.0, 0.0)), alpha)?;
    let with_signal = transmission_phase(with.omega_p / fields.omega_p);
    let without_signal = transmission_phase(without.omega_p / fields.omega_p);
    let delta_phi_xpm = match (with_signal.phase, without_signal.phase) {
        (Some(a), Some(b)) => Some(wrap_pi(a - b).abs()),
        _ => None,
    };
    Ok(XpmMetric { with_signal, without_signal, delta_phi_xpm })
}
