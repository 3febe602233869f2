#![allow(dead_code)]

use dlambda_core::dynamics::{plateau_extract, simulate, Plateau, PulseRecord, PulseSpec, SimGrid};
use dlambda_core::steady_state::propagate;
use dlambda_core::{FieldPair, RelativePhase, SystemParams, C64};

/// Weak-field input amplitude used by every pulse test.
pub const AMPLITUDE: f64 = 0.01;

pub fn fig_s6_params() -> SystemParams {
    SystemParams::balanced(100.0, 34.2)
}

pub fn fig_main4_params() -> SystemParams {
    SystemParams::balanced(50.0, 13.0)
        .with_decays(0.001, 1.25, 1.25)
        .with_pumps(C64::new(0.7, 0.0), C64::new(0.7, 0.0))
}

/// Square probe and signal pulses on [0, t_off] carrying relative phase φ_r.
pub fn square_pair(params: &SystemParams, phi_r: f64, t_off: f64) -> (PulseSpec, PulseSpec) {
    let f = FieldPair::unit_with_relative_phase(params, RelativePhase::new(phi_r).unwrap());
    (
        PulseSpec::square(f.omega_p * AMPLITUDE, 0.0, t_off),
        PulseSpec::square(f.omega_s * AMPLITUDE, 0.0, t_off),
    )
}

pub fn run_square(params: &SystemParams, phi_r: f64, grid: &SimGrid) -> PulseRecord {
    let (p, s) = square_pair(params, phi_r, grid.t_end);
    simulate(params, &p, &s, grid).unwrap()
}

/// Steady-state exit/entrance ratios for unit inputs at φ_r.
pub fn steady_ratios(params: &SystemParams, phi_r: f64) -> (C64, C64) {
    let f = FieldPair::unit_with_relative_phase(params, RelativePhase::new(phi_r).unwrap());
    let out = propagate(params, &f, params.alpha).unwrap();
    (out.omega_p / f.omega_p, out.omega_s / f.omega_s)
}

pub fn plateau(params: &SystemParams, phi_r: f64, grid: &SimGrid) -> Plateau {
    plateau_extract(&run_square(params, phi_r, grid), 0.1).unwrap()
}

/// 1% agreement, relative for ratios of order one or larger and absolute
/// (against unit input) below that.
pub fn within_percent(dynamic: C64, steady: C64) -> bool {
    (dynamic - steady).norm() <= 0.01 * steady.norm().max(1.0)
}

pub fn transmissions_within_percent(dynamic: C64, steady: C64) -> bool {
    let (a, b) = (dynamic.norm_sqr(), steady.norm_sqr());
    (a - b).abs() <= 0.01 * b.max(1.0)
}
