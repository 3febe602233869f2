//! Steady-state coherences and propagation of the probe/signal pair.
//!
//! With the time derivatives set to zero the coherences are linear in the
//! local fields, so propagation in ζ is a constant-coefficient 2×2 linear
//! system. In the ideal regime (γ21 = 0, γ31 = γ41 = 1) it has the closed
//! form used by [`transfer_matrix`]; otherwise the coupling matrix is built
//! from a 3×3 solve and exponentiated.
//!
//! The single-Λ spectrum adds a probe detuning δ_p as `+iδ_p` on the ρ31 and
//! ρ21 equations, the same sign pattern as the signal detuning on ρ41.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::{Float, Zero};

use crate::linalg::{solve3, ExpDecomposition, Mat2};
use crate::model::{Coherences, FieldPair, RelativePhase, SystemParams, C64};
use crate::{Error, Result};

/// Amplitude ratio below which a phase is reported as undefined.
pub const ZERO_AMPLITUDE: f64 = 1e-12;

const I: C64 = Complex { re: 0.0, im: 1.0 };
const HALF_I: C64 = Complex { re: 0.0, im: 0.5 };

/// Right-hand sides of the three weak-probe Bloch equations,
/// d/dt (ρ21, ρ31, ρ41).
pub fn obe_rhs(params: &SystemParams, fields: &FieldPair, rho: &Coherences) -> [C64; 3] {
    let p = params;
    let d21 = HALF_I * p.omega_c.conj() * rho.rho31 + HALF_I * p.omega_d.conj() * rho.rho41 - rho.rho21 * (p.gamma21 / 2.0);
    let d31 = HALF_I * fields.omega_p + HALF_I * p.omega_c * rho.rho21 - rho.rho31 * (p.gamma31 / 2.0);
    let d41 = HALF_I * fields.omega_s + HALF_I * p.omega_d * rho.rho21 + rho.rho41 * C64::new(-p.gamma41 / 2.0, p.delta);
    [d21, d31, d41]
}

/// Constants of the closed-form propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationConstants {
    /// |Ω|² = |Ω_c|² + |Ω_d|².
    pub omega_sq: f64,
    /// ξ = i + 2|Ω_c|²Δ/(|Ω|²γ31).
    pub xi: C64,
}

impl PropagationConstants {
    pub fn new(params: &SystemParams) -> Self {
        let oc2 = params.omega_c.norm_sqr();
        let omega_sq = oc2 + params.omega_d.norm_sqr();
        let xi = C64::new(2.0 * oc2 * params.delta / (omega_sq * params.gamma31), 1.0);
        Self { omega_sq, xi }
    }

    /// exp(−iζ/(2ξ)): the factor picked up by the absorbing eigenmode.
    pub fn decay_factor(&self, zeta: f64) -> C64 {
        (-I * zeta / (self.xi * 2.0)).exp()
    }
}

/// Closed-form steady-state coherences. Needs γ21 = 0, γ31 = γ41 = 1.
pub fn coherences(params: &SystemParams, fields: &FieldPair) -> Result<Coherences> {
    params.validate_single_lambda()?;
    if !params.is_closed_form() {
        return Err(Error::NotClosedForm);
    }
    let (oc, od) = (params.omega_c, params.omega_d);
    let (op, os) = (fields.omega_p, fields.omega_s);
    let d = -(I * od.norm_sqr() + C64::new(2.0 * params.delta, 1.0) * oc.norm_sqr());
    if d.is_zero() {
        return Err(Error::SingularDenominator);
    }
    Ok(Coherences {
        rho21: (op * oc.conj() * C64::new(2.0 * params.delta, 1.0) + os * od.conj() * I) / d,
        rho31: (op * od.norm_sqr() - os * oc * od.conj()) / d,
        rho41: (os * oc.norm_sqr() - op * oc.conj() * od) / d,
    })
}

/// Steady-state coherences for arbitrary decay rates (3×3 linear solve).
pub fn coherences_general(params: &SystemParams, fields: &FieldPair) -> Result<Coherences> {
    params.validate_single_lambda()?;
    let p = params;
    // unknowns ordered (ρ21, ρ31, ρ41)
    let a = [
        [-C64::from(p.gamma21 / 2.0), HALF_I * p.omega_c.conj(), HALF_I * p.omega_d.conj()],
        [HALF_I * p.omega_c, -C64::from(p.gamma31 / 2.0), C64::zero()],
        [HALF_I * p.omega_d, C64::zero(), C64::new(-p.gamma41 / 2.0, p.delta)],
    ];
    let b = [C64::zero(), -HALF_I * fields.omega_p, -HALF_I * fields.omega_s];
    let x = solve3(a, b).ok_or(Error::SingularSystem {
        alpha: p.alpha,
        delta: p.delta,
        gamma21: p.gamma21,
        gamma31: p.gamma31,
        gamma41: p.gamma41,
    })?;
    Ok(Coherences { rho21: x[0], rho31: x[1], rho41: x[2] })
}

/// d/dζ (Ω_p, Ω_s) = M (Ω_p, Ω_s), from the steady-state coherences.
pub fn coupling_matrix(params: &SystemParams) -> Result<Mat2> {
    let one = C64::new(1.0, 0.0);
    let from_p = coherences_general(params, &FieldPair::new(one, C64::zero()))?;
    let from_s = coherences_general(params, &FieldPair::new(C64::zero(), one))?;
    let gp = HALF_I * params.gamma31;
    let gs = HALF_I * params.gamma41;
    Ok(Mat2([
        [gp * from_p.rho31, gp * from_s.rho31],
        [gs * from_p.rho41, gs * from_s.rho41],
    ]))
}

/// Linear map from the entrance fields to the fields at depth ζ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m: Mat2,
}

impl TransferMatrix {
    pub fn apply(&self, fields: &FieldPair) -> FieldPair {
        let [p, s] = self.m.apply([fields.omega_p, fields.omega_s]);
        FieldPair::new(p, s)
    }

    pub fn compose(&self, earlier: &TransferMatrix) -> TransferMatrix {
        TransferMatrix { m: self.m.mul(&earlier.m) }
    }
}

/// Precomputed propagation for one parameter set; evaluates the transfer
/// matrix at any depth.
#[derive(Debug, Clone, Copy)]
pub enum Propagator {
    ClosedForm {
        constants: PropagationConstants,
        omega_c: C64,
        omega_d: C64,
    },
    General(ExpDecomposition),
}

impl Propagator {
    pub fn new(params: &SystemParams) -> Result<Self> {
        params.validate_single_lambda()?;
        if params.is_closed_form() {
            Ok(Self::ClosedForm {
                constants: PropagationConstants::new(params),
                omega_c: params.omega_c,
                omega_d: params.omega_d,
            })
        } else {
            Ok(Self::General(coupling_matrix(params)?.exp_decomposition()))
        }
    }

    pub fn at(&self, zeta: f64) -> TransferMatrix {
        match *self {
            Self::ClosedForm { constants, omega_c, omega_d } => {
                let e = constants.decay_factor(zeta);
                let one_minus = C64::new(1.0, 0.0) - e;
                let (c2, d2) = (omega_c.norm_sqr(), omega_d.norm_sqr());
                let cd = omega_c * omega_d.conj();
                let m = Mat2([
                    [e * d2 + c2, cd * one_minus],
                    [cd.conj() * one_minus, e * c2 + d2],
                ]);
                TransferMatrix { m: m.scale(C64::from(1.0 / constants.omega_sq)) }
            }
            Self::General(decomp) => TransferMatrix { m: decomp.exp(zeta) },
        }
    }
}

/// Transfer matrix from the entrance to depth ζ ≥ 0.
pub fn transfer_matrix(params: &SystemParams, zeta: f64) -> Result<TransferMatrix> {
    if !(zeta >= 0.0) {
        return Err(Error::NegativeDepth(zeta));
    }
    Ok(Propagator::new(params)?.at(zeta))
}

/// Fields after propagating `fields` through depth ζ.
pub fn propagate(params: &SystemParams, fields: &FieldPair, zeta: f64) -> Result<FieldPair> {
    Ok(transfer_matrix(params, zeta)?.apply(fields))
}

/// Output/input ratios (probe, signal) in the balanced ideal regime:
/// |Ω_c| = |Ω_d|, |Ω_p(0)| = |Ω_s(0)|, γ21 = 0, γ31 = γ41 = 1.
///
/// Evaluated as e^{∓iφ/2}[cos(φ/2) ± i sin(φ/2) E] with the half-angle
/// trig taken in units of π, so φ_r = π gives exactly cos(φ/2) = 0.
pub fn propagate_balanced(phi_r: RelativePhase, alpha: f64, delta: f64) -> (C64, C64) {
    let e = balanced_decay_factor(alpha, delta);
    let (s, c) = sin_cos_pi(phi_r.value() / TAU);
    let half = C64::new(c, -s);
    let probe = half * (C64::new(c, 0.0) + I * e * s);
    let signal = half.conj() * (C64::new(c, 0.0) - I * e * s);
    (probe, signal)
}

/// (sin πx, cos πx), exact at multiples of 1/2.
fn sin_cos_pi(x: f64) -> (f64, f64) {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 {
        (0.0, 1.0)
    } else if r == 0.5 {
        (1.0, 0.0)
    } else if r == -0.5 {
        (-1.0, 0.0)
    } else if r.abs() == 1.0 {
        (0.0, -1.0)
    } else {
        (PI * r).sin_cos()
    }
}

/// exp(−iα/(2ξ)) with ξ = i + Δ, i.e. e^{R − iI} with
/// R = −(α/2)/(Δ²+1) and I = (α/2)Δ/(Δ²+1).
pub fn balanced_decay_factor(alpha: f64, delta: f64) -> C64 {
    let denom = delta * delta + 1.0;
    C64::from_polar((-0.5 * alpha / denom).exp(), -0.5 * alpha * delta / denom)
}

/// Transmission and phase of an output/input amplitude ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionPhase {
    pub transmission: f64,
    /// Four-quadrant phase; `None` when the amplitude has vanished.
    pub phase: Option<f64>,
}

pub fn transmission_phase(ratio: C64) -> TransmissionPhase {
    let phase = if ratio.norm() < ZERO_AMPLITUDE { None } else { Some(ratio.arg()) };
    TransmissionPhase { transmission: ratio.norm_sqr(), phase }
}

/// Single-Λ steady-state ρ31 per unit probe amplitude at probe detuning δ_p.
pub fn eit_susceptibility(params: &SystemParams, probe_detuning: f64) -> C64 {
    let d31 = C64::new(-params.gamma31 / 2.0, probe_detuning);
    let d21 = C64::new(-params.gamma21 / 2.0, probe_detuning);
    let denom = d31 * d21 + params.omega_c.norm_sqr() / 4.0;
    -HALF_I * d21 / denom
}

/// Complex output/input ratio of the single-Λ medium at probe detuning δ_p.
pub fn eit_response(params: &SystemParams, probe_detuning: f64) -> Result<C64> {
    params.validate_single_lambda()?;
    if params.omega_d.norm() != 0.0 {
        return Err(Error::NotSingleLambda);
    }
    let chi = eit_susceptibility(params, probe_detuning);
    Ok((HALF_I * params.gamma31 * params.alpha * chi).exp())
}

/// Probe transmission spectrum (δ_p, T) of the single-Λ medium.
pub fn eit_spectrum(params: &SystemParams, probe_detunings: &[f64]) -> Result<Vec<(f64, f64)>> {
    probe_detunings
        .iter()
        .map(|&dp| eit_response(params, dp).map(|r| (dp, r.norm_sqr())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn residual(params: &SystemParams, fields: &FieldPair, rho: &Coherences) -> f64 {
        obe_rhs(params, fields, rho).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn rphase(x: f64) -> RelativePhase {
        RelativePhase::new(x).unwrap()
    }

    #[test]
    fn zero_fields_give_zero_coherences() {
        let p = SystemParams::balanced(10.0, 3.0);
        let rho = coherences(&p, &FieldPair::default()).unwrap();
        assert_eq!(rho, Coherences::default());
    }

    #[test]
    fn transparency_mode_has_no_optical_coherence() {
        let p = SystemParams::balanced(10.0, 0.0);
        let f = FieldPair::new(c(0.01, 0.0), c(0.01, 0.0));
        let rho = coherences(&p, &f).unwrap();
        assert!(rho.rho31.norm() < 1e-18 && rho.rho41.norm() < 1e-18);
        assert!(rho.is_weak_field(crate::model::WEAK_FIELD_BOUND));
    }

    #[test]
    fn closed_form_needs_ideal_regime() {
        let p = SystemParams::balanced(1.0, 0.0).with_decays(0.001, 1.25, 1.25);
        assert_eq!(coherences(&p, &FieldPair::default()), Err(Error::NotClosedForm));
    }

    #[test]
    fn single_lambda_line_center_coherence() {
        let (g21, g31, oc) = (0.01, 1.25, 0.7);
        let p = SystemParams::single_lambda(52.0, oc, g21, g31);
        let op = c(0.02, -0.01);
        let rho = coherences_general(&p, &FieldPair::new(op, C64::zero())).unwrap();
        let want = I * op * g21 / (g21 * g31 + oc * oc);
        assert!((rho.rho31 - want).norm() < 1e-15);
        assert!(residual(&p, &FieldPair::new(op, C64::zero()), &rho) < 1e-15);
    }

    #[test]
    fn fig_main2_parameters_finite_small_absorption() {
        let p = SystemParams::single_lambda(52.0, 0.7, 0.001, 1.25);
        let f = FieldPair::new(c(1.0, 0.0), C64::zero());
        let rho = coherences_general(&p, &f).unwrap();
        assert!(rho.rho31.re.abs() < 1e-12 && rho.rho31.im > 0.0 && rho.rho31.im < 0.01);
        assert!(residual(&p, &f, &rho) < 1e-12);
    }

    #[test]
    fn transfer_matrix_identity_at_zero_depth() {
        for p in [
            SystemParams::balanced(50.0, 3.0),
            SystemParams::balanced(50.0, 13.0).with_decays(0.001, 1.25, 1.25),
        ] {
            let t = transfer_matrix(&p, 0.0).unwrap();
            assert!(t.m.max_abs_diff(&Mat2::identity()) < 1e-14);
        }
        assert!(transfer_matrix(&SystemParams::balanced(1.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn resonant_probe_only_splits_evenly() {
        let p = SystemParams::balanced(200.0, 0.0).with_pumps(c(1.0, 0.0), C64::from_polar(1.0, 0.7));
        let out = propagate(&p, &FieldPair::new(c(1.0, 0.0), C64::zero()), 200.0).unwrap();
        assert!((out.omega_p - c(0.5, 0.0)).norm() < 1e-12);
        let want_s = C64::from_polar(0.5, p.omega_d.arg() - p.omega_c.arg());
        assert!((out.omega_s - want_s).norm() < 1e-12);
        assert!((out.omega_p.norm_sqr() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn balanced_limits() {
        let (p, s) = propagate_balanced(rphase(0.0), 73.0, 12.0);
        assert_eq!((p, s), (c(1.0, 0.0), c(1.0, 0.0)));
        let (p, _) = propagate_balanced(rphase(PI), 100.0, 0.0);
        assert!((p.norm_sqr() / (-100.0f64).exp() - 1.0).abs() < 1e-9);
        assert_eq!(p.im, 0.0);
        // exact jump inputs
        let delta: f64 = 16.5;
        let alpha_c = PI * (delta * delta + 1.0) / delta;
        let phi_pj = 2.0 * (-(PI / (2.0 * delta)).exp()).atan();
        let (p, _) = propagate_balanced(rphase(phi_pj), alpha_c, delta);
        assert!(p.norm() < 1e-6);
    }

    #[test]
    fn transmission_phase_examples() {
        assert_eq!(transmission_phase(c(1.0, 0.0)), TransmissionPhase { transmission: 1.0, phase: Some(0.0) });
        let tp = transmission_phase(c(0.0, 0.5));
        assert!((tp.transmission - 0.25).abs() < 1e-15);
        assert!((tp.phase.unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(transmission_phase(C64::zero()).phase, None);
    }

    #[test]
    fn eit_line_center() {
        let p = SystemParams::single_lambda(52.0, 0.7, 0.0, 1.25);
        assert_eq!(eit_response(&p, 0.0).unwrap(), c(1.0, 0.0));
        let p = SystemParams::single_lambda(52.0, 0.7, 0.001, 1.25);
        let t = eit_spectrum(&p, &[0.0, 1e5]).unwrap();
        let oracle = (-52.0 * 0.001 * 1.25 / (0.001 * 1.25 + 0.49f64)).exp();
        assert!((t[0].1 - oracle).abs() < 1e-12);
        assert!((t[0].1 - 0.876).abs() < 1e-3);
        assert!((t[1].1 - 1.0).abs() < 1e-6);
        assert_eq!(eit_response(&SystemParams::balanced(1.0, 0.0), 0.0), Err(Error::NotSingleLambda));
    }

    fn random_params() -> impl Strategy<Value = (SystemParams, FieldPair)> {
        (
            0.0f64..200.0,
            -40.0f64..40.0,
            (0.0f64..0.1, 0.2f64..3.0, 0.2f64..3.0),
            (0.1f64..3.0, 0.0f64..6.3, 0.1f64..3.0, 0.0f64..6.3),
            (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0),
        )
            .prop_map(|(alpha, delta, (g21, g31, g41), (mc, pc, md, pd), (a, b, cc, d))| {
                let params = SystemParams::balanced(alpha, delta)
                    .with_decays(g21, g31, g41)
                    .with_pumps(C64::from_polar(mc, pc), C64::from_polar(md, pd));
                (params, FieldPair::new(c(a, b), c(cc, d)))
            })
    }

    proptest! {
        #[test]
        fn general_coherences_solve_the_bloch_equations((p, f) in random_params()) {
            let rho = coherences_general(&p, &f).unwrap();
            prop_assert!(residual(&p, &f, &rho) < 1e-12);
        }

        #[test]
        fn closed_and_general_coherences_agree((p, f) in random_params()) {
            let p = p.with_decays(0.0, 1.0, 1.0);
            let a = coherences(&p, &f).unwrap();
            let b = coherences_general(&p, &f).unwrap();
            let scale = 1.0 + a.max_norm();
            prop_assert!((a.rho21 - b.rho21).norm() < 1e-12 * scale);
            prop_assert!((a.rho31 - b.rho31).norm() < 1e-12 * scale);
            prop_assert!((a.rho41 - b.rho41).norm() < 1e-12 * scale);
            prop_assert!(residual(&p, &f, &a) < 1e-12);
        }

        #[test]
        fn closed_form_matches_matrix_exponential((p, f) in random_params()) {
            let p = p.with_decays(0.0, 1.0, 1.0).with_alpha(p.alpha.min(100.0));
            let closed = transfer_matrix(&p, p.alpha).unwrap();
            let general = coupling_matrix(&p).unwrap().exp_decomposition().exp(p.alpha);
            prop_assert!(closed.m.max_abs_diff(&general) < 1e-9, "{:?} vs {:?}", closed.m, general);
            let _ = f;
        }

        #[test]
        fn transfer_matrix_semigroup((p, _f) in random_params(), z1 in 0.0f64..60.0, z2 in 0.0f64..60.0) {
            let t12 = transfer_matrix(&p, z1 + z2).unwrap();
            let t = transfer_matrix(&p, z2).unwrap().compose(&transfer_matrix(&p, z1).unwrap());
            prop_assert!(t12.m.max_abs_diff(&t.m) < 1e-10);
        }

        #[test]
        fn passive_eigenvalues((p, _f) in random_params(), zeta in 0.0f64..300.0) {
            let t = transfer_matrix(&p, zeta).unwrap();
            for l in t.m.eigenvalues() {
                prop_assert!(l.norm() <= 1.0 + 1e-12);
            }
        }

        #[test]
        fn balanced_matches_transfer_matrix(alpha in 0.0f64..150.0, delta in -40.0f64..40.0, phi in 0.0f64..TAU, pc in 0.0f64..TAU) {
            let p = SystemParams::balanced(alpha, delta).with_pumps(C64::from_polar(1.0, pc), c(1.0, 0.0));
            let f = FieldPair::unit_with_relative_phase(&p, rphase(phi));
            let out = propagate(&p, &f, alpha).unwrap();
            let (rp, rs) = propagate_balanced(rphase(phi), alpha, delta);
            prop_assert!((out.omega_p / f.omega_p - rp).norm() < 1e-12);
            prop_assert!((out.omega_s / f.omega_s - rs).norm() < 1e-12);
        }

        #[test]
        fn balanced_passivity(alpha in 0.0f64..300.0, delta in -60.0f64..60.0, phi in 0.0f64..TAU) {
            let (p, s) = propagate_balanced(rphase(phi), alpha, delta);
            prop_assert!(p.norm_sqr() + s.norm_sqr() <= 2.0 + 1e-12);
        }

        #[test]
        fn probe_signal_mirror_symmetry(alpha in 0.0f64..150.0, delta in -40.0f64..40.0, phi in 0.01f64..6.27) {
            let (p, _) = propagate_balanced(rphase(phi), alpha, delta);
            let (_, s) = propagate_balanced(rphase(2.0 * PI - phi), alpha, delta);
            prop_assert!((p.norm_sqr() - s.norm_sqr()).abs() < 1e-12);
            prop_assert!((p - s).norm() < 1e-12);
        }

        #[test]
        fn resonant_transmissions_equal(alpha in 0.0f64..150.0, phi in 0.0f64..TAU) {
            let (p, s) = propagate_balanced(rphase(phi), alpha, 0.0);
            prop_assert!((p.norm_sqr() - s.norm_sqr()).abs() < 1e-12);
            prop_assert!((p - s.conj()).norm() < 1e-12);
        }
    }
}
