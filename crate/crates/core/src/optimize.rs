//! Parameter searches over the balanced closed form and general sweeps.
//!
//! Objectives jump at the phase-jump branches, so every search is a coarse
//! grid followed by derivative-free refinement (golden section in one
//! dimension, a shrinking compass search in two). With the `parallel`
//! feature the grid stages run on rayon; results do not depend on it.

use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;

use crate::model::{wrap_pi, FieldPair, RelativePhase, SystemParams, C64};
use crate::phase_analysis::{accumulated_phases, half_pi_phase_relative, pi_phase_relative};
use crate::steady_state::{propagate, propagate_balanced, transmission_phase};
use crate::{Error, Result};

/// Probe phase the optimizer aims for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseTarget {
    /// Terminal point on the negative real axis.
    Pi,
    /// Terminal point on the negative imaginary axis.
    HalfPi,
}

impl PhaseTarget {
    /// φ_r realizing the target at (α, Δ), if any.
    pub fn relative_phase(self, alpha: f64, delta: f64) -> Result<RelativePhase> {
        match self {
            Self::Pi => pi_phase_relative(alpha, delta),
            Self::HalfPi => half_pi_phase_relative(alpha, delta),
        }
    }
}

/// Which propagation model a scan evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// Ideal balanced closed form; only (α, Δ, φ_r) matter.
    Balanced,
    /// Full model; α and Δ of the template are replaced by the scan values.
    General(SystemParams),
}

impl Regime {
    pub fn params(&self, alpha: f64, delta: f64) -> SystemParams {
        match self {
            Self::Balanced => SystemParams::balanced(alpha, delta),
            Self::General(template) => template.with_alpha(alpha).with_delta(delta),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::Balanced => "balanced",
            Self::General(_) => "general",
        }
    }
}

/// Quantity a scan row reports as its objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Objective {
    #[default]
    ProbeTransmission,
    SignalTransmission,
    Xpm,
}

/// One evaluated parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanResult {
    pub alpha: f64,
    pub delta: f64,
    pub phi_r: f64,
    pub regime: &'static str,
    pub t_p: f64,
    pub t_s: f64,
    /// Principal-value phases, `None` at zero amplitude.
    pub phi_p: Option<f64>,
    pub phi_s: Option<f64>,
    /// Phases continued along ζ (only when requested).
    pub phi_p_accumulated: Option<f64>,
    pub phi_s_accumulated: Option<f64>,
    /// Probe transmission and phase with the signal input off.
    pub t_p_without: f64,
    pub phi_p_without: Option<f64>,
    pub phi_p_without_accumulated: Option<f64>,
    /// |Δφ_p^XPM| in [0, π].
    pub xpm: Option<f64>,
    /// Share of the total (equal-magnitude) input fluence leaving in the
    /// signal, T_s / 2. `t_s` is always reported beside it.
    pub efficiency: f64,
    pub objective: f64,
}

/// Evaluates one point. `accumulate` gives the number of ζ samples used to
/// continue phases beyond ±π; `None` skips that (cheaper) step.
pub fn evaluate(
    alpha: f64,
    delta: f64,
    phi_r: f64,
    regime: &Regime,
    objective: Objective,
    accumulate: Option<usize>,
) -> Result<ScanResult> {
    let phi = RelativePhase::new(phi_r)?;
    let params = regime.params(alpha, delta);
    params.validate()?;
    let fields = FieldPair::unit_with_relative_phase(&params, phi);
    let probe_only = FieldPair::new(fields.omega_p, C64::new(0.0, 0.0));
    let (rp, rs) = match regime {
        Regime::Balanced => propagate_balanced(phi, alpha, delta),
        Regime::General(_) => {
            let out = propagate(&params, &fields, alpha)?;
            (out.omega_p / fields.omega_p, out.omega_s / fields.omega_s)
        }
    };
    let without = propagate(&params, &probe_only, alpha)?.omega_p / fields.omega_p;
    let (tp, ts, tw) = (transmission_phase(rp), transmission_phase(rs), transmission_phase(without));
    let xpm = match (tp.phase, tw.phase) {
        (Some(a), Some(b)) => Some(wrap_pi(a - b).abs()),
        _ => None,
    };
    let (acc_p, acc_s, acc_w) = match accumulate {
        Some(n) => {
            let (p, s) = accumulated_phases(&params, &fields, alpha, n)?;
            let (w, _) = accumulated_phases(&params, &probe_only, alpha, n)?;
            (p, s, w)
        }
        None => (None, None, None),
    };
    let value = match objective {
        Objective::ProbeTransmission => tp.transmission,
        Objective::SignalTransmission => ts.transmission,
        Objective::Xpm => xpm.unwrap_or(f64::NAN),
    };
    Ok(ScanResult {
        alpha,
        delta,
        phi_r: phi.value(),
        regime: regime.tag(),
        t_p: tp.transmission,
        t_s: ts.transmission,
        phi_p: tp.phase,
        phi_s: ts.phase,
        phi_p_accumulated: acc_p,
        phi_s_accumulated: acc_s,
        t_p_without: tw.transmission,
        phi_p_without: tw.phase,
        phi_p_without_accumulated: acc_w,
        xpm,
        efficiency: ts.transmission / 2.0,
        objective: value,
    })
}

/// Best point of a search plus how it was bracketed.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub best: ScanResult,
    /// Coarse grid steps, (Δ) or (Δ, φ_r).
    pub coarse_steps: Vec<f64>,
    /// Final refinement resolution per axis.
    pub resolution: Vec<f64>,
    pub refinement_iterations: usize,
    pub evaluations: usize,
    /// Objective values at the last evaluated neighbours of the optimum.
    pub neighbor_objectives: Vec<f64>,
}

/// Search window and resolution for [`optimize_phase_target_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetuningSearch {
    pub delta_max: f64,
    pub coarse_step: f64,
    pub tolerance: f64,
}

impl Default for DetuningSearch {
    fn default() -> Self {
        Self { delta_max: 60.0, coarse_step: 0.1, tolerance: 1e-3 }
    }
}

/// Maximizes `f` on [lo, hi] by golden-section search down to `tol`.
/// Returns (argmax, max, iterations).
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64, usize) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iterations = 0;
    while (b - a) > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }
    if fc >= fd {
        (c, fc, iterations)
    } else {
        (d, fd, iterations)
    }
}

#[cfg(feature = "parallel")]
fn map_indices<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_indices<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Maximum probe transmission over Δ at fixed α, with φ_r pinned by the
/// phase target. Uses the default [`DetuningSearch`].
pub fn optimize_phase_target(alpha: f64, target: PhaseTarget) -> Result<Optimum> {
    optimize_phase_target_with(alpha, target, DetuningSearch::default())
}

pub fn optimize_phase_target_with(alpha: f64, target: PhaseTarget, search: DetuningSearch) -> Result<Optimum> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::NoFeasibleDetuning { lo: 0.0, hi: search.delta_max });
    }
    let objective = |delta: f64| -> f64 {
        match target.relative_phase(alpha, delta) {
            Ok(phi) => propagate_balanced(phi, alpha, delta).0.norm_sqr(),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let steps = (search.delta_max / search.coarse_step).round() as usize;
    let coarse = map_indices(steps, |k| {
        let delta = (k + 1) as f64 * search.coarse_step;
        (delta, objective(delta))
    });
    let (delta0, f0) = coarse
        .iter()
        .copied()
        .fold((f64::NAN, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    if !f0.is_finite() {
        return Err(Error::NoFeasibleDetuning { lo: search.coarse_step, hi: search.delta_max });
    }
    let lo = (delta0 - search.coarse_step).max(search.coarse_step * 1e-3);
    let hi = delta0 + search.coarse_step;
    let (delta_g, f_g, iterations) = golden_section_max(objective, lo, hi, search.tolerance);
    let (delta_star, f_star) = if f_g >= f0 { (delta_g, f_g) } else { (delta0, f0) };
    let phi = target.relative_phase(alpha, delta_star)?;
    let best = evaluate(alpha, delta_star, phi.value(), &Regime::Balanced, Objective::ProbeTransmission, None)?;
    debug_assert!((best.t_p - f_star).abs() <= 1e-12 * f_star.max(1.0));
    let neighbor_objectives = [-search.coarse_step, -search.tolerance, search.tolerance, search.coarse_step]
        .iter()
        .map(|d| objective(delta_star + d))
        .collect();
    Ok(Optimum {
        best,
        coarse_steps: alloc::vec![search.coarse_step],
        resolution: alloc::vec![search.tolerance],
        refinement_iterations: iterations,
        evaluations: steps + iterations + 2,
        neighbor_objectives,
    })
}

/// Grid for [`optimize_amplification_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationSearch {
    pub delta_max: f64,
    pub delta_step: f64,
    pub phi_step: f64,
    /// Compass search stops once both steps fall below these.
    pub delta_tolerance: f64,
    pub phi_tolerance: f64,
}

impl Default for AmplificationSearch {
    fn default() -> Self {
        Self { delta_max: 60.0, delta_step: 0.2, phi_step: 0.01, delta_tolerance: 1e-6, phi_tolerance: 1e-7 }
    }
}

/// Maximum signal transmission over (Δ, φ_r) at fixed α.
pub fn optimize_amplification(alpha: f64) -> Result<Optimum> {
    optimize_amplification_with(alpha, AmplificationSearch::default())
}

pub fn optimize_amplification_with(alpha: f64, search: AmplificationSearch) -> Result<Optimum> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::NegativeDepth(alpha));
    }
    let ts = |delta: f64, phi: f64| -> f64 {
        match RelativePhase::new(phi) {
            Ok(phi) => propagate_balanced(phi, alpha, delta).1.norm_sqr(),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let n_delta = (search.delta_max / search.delta_step).round() as usize + 1;
    let n_phi = (TAU / search.phi_step).ceil() as usize;
    let rows = map_indices(n_delta, |i| {
        let delta = i as f64 * search.delta_step;
        (0..n_phi)
            .map(|j| {
                let phi = j as f64 * search.phi_step;
                (delta, phi, ts(delta, phi))
            })
            .fold((0.0, 0.0, f64::NEG_INFINITY), |best, cur| if cur.2 > best.2 { cur } else { best })
    });
    let (mut delta, mut phi, mut value) =
        rows.into_iter().fold((0.0, 0.0, f64::NEG_INFINITY), |best, cur| if cur.2 > best.2 { cur } else { best });

    let (mut sd, mut sp) = (search.delta_step, search.phi_step);
    let mut iterations = 0;
    let mut evaluations = n_delta * n_phi;
    let mut neighbor_objectives = Vec::new();
    loop {
        iterations += 1;
        neighbor_objectives.clear();
        let mut moved = false;
        for (dd, dp) in [(-1.0, 0.0), (1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)] {
            let (d, p) = ((delta + dd * sd).clamp(0.0, search.delta_max), phi + dp * sp);
            let v = ts(d, p);
            evaluations += 1;
            neighbor_objectives.push(v);
            if v > value {
                delta = d;
                phi = p;
                value = v;
                moved = true;
            }
        }
        if !moved {
            if sd < search.delta_tolerance && sp < search.phi_tolerance {
                break;
            }
            sd *= 0.5;
            sp *= 0.5;
        }
        if iterations > 10_000 {
            break;
        }
    }
    let best = evaluate(alpha, delta, phi, &Regime::Balanced, Objective::SignalTransmission, None)?;
    Ok(Optimum {
        best,
        coarse_steps: alloc::vec![search.delta_step, search.phi_step],
        resolution: alloc::vec![sd, sp],
        refinement_iterations: iterations,
        evaluations,
        neighbor_objectives,
    })
}

/// A grid over (α, Δ, φ_r).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub alpha: Vec<f64>,
    pub delta: Vec<f64>,
    pub phi_r: Vec<f64>,
    pub regime: Regime,
    pub objective: Objective,
    /// Depth samples for accumulated phases; `None` skips them.
    pub accumulate: Option<usize>,
}

impl SweepSpec {
    pub fn point(alpha: f64, delta: f64, phi_r: f64, regime: Regime) -> Self {
        Self {
            alpha: alloc::vec![alpha],
            delta: alloc::vec![delta],
            phi_r: alloc::vec![phi_r],
            regime,
            objective: Objective::default(),
            accumulate: None,
        }
    }

    pub fn len(&self) -> usize {
        self.alpha.len() * self.delta.len() * self.phi_r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `n` evenly spaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![start],
        _ => (0..n).map(|k| start + (end - start) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` evenly spaced values on [start, end), e.g. a full φ_r period.
pub fn half_open(start: f64, end: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| start + (end - start) * k as f64 / n as f64).collect()
}

/// Evaluates every grid point; rows come back in lexicographic
/// (α, Δ, φ_r) order.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<ScanResult>> {
    if spec.is_empty() {
        return Err(Error::InvalidSweep("empty axis"));
    }
    let all = spec.alpha.iter().chain(&spec.delta).chain(&spec.phi_r);
    if all.clone().any(|x| !x.is_finite()) {
        return Err(Error::InvalidSweep("non-finite grid value"));
    }
    if spec.alpha.iter().any(|&a| a < 0.0) {
        return Err(Error::InvalidSweep("negative optical depth"));
    }
    let (nd, np) = (spec.delta.len(), spec.phi_r.len());
    map_indices(spec.len(), |k| {
        let (ia, rest) = (k / (nd * np), k % (nd * np));
        let (id, ip) = (rest / np, rest % np);
        evaluate(spec.alpha[ia], spec.delta[id], spec.phi_r[ip], &spec.regime, spec.objective, spec.accumulate)
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx, _) = golden_section_max(|x| -(x - 0.3) * (x - 0.3), -1.0, 2.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-8 && fx.abs() < 1e-15);
    }

    #[test]
    fn pi_target_at_alpha_100() {
        let opt = optimize_phase_target(100.0, PhaseTarget::Pi).unwrap();
        let b = opt.best;
        assert!((16.0..=17.0).contains(&b.delta), "{}", b.delta);
        assert!((b.t_p - 0.68).abs() < 0.02);
        assert!((b.t_p_without - 0.01).abs() < 0.005);
        assert!((b.xpm.unwrap() - 2.62).abs() < 0.05);
        assert!(opt.neighbor_objectives.iter().all(|&v| v <= b.objective));
    }

    #[test]
    fn half_pi_target_at_alpha_100() {
        let b = optimize_phase_target(100.0, PhaseTarget::HalfPi).unwrap().best;
        assert!((b.t_p - 1.40).abs() < 0.03);
        assert!((b.t_p_without - 0.19).abs() < 0.02);
        assert!((b.xpm.unwrap() - 0.57).abs() < 0.03);
        assert!(b.phi_p.unwrap() < 0.0);
    }

    #[test]
    fn vanishing_medium_is_infeasible() {
        assert!(matches!(optimize_phase_target(1e-6, PhaseTarget::Pi), Err(Error::NoFeasibleDetuning { .. })));
        assert!(optimize_phase_target(0.0, PhaseTarget::Pi).is_err());
    }

    #[test]
    fn amplification_without_medium() {
        let opt = optimize_amplification(0.0).unwrap();
        assert!((opt.best.t_s - 1.0).abs() < 1e-14);
        assert!((opt.best.efficiency - 0.5).abs() < 1e-14);
    }

    #[test]
    fn amplification_optimum_is_local_max() {
        let opt = optimize_amplification(100.0).unwrap();
        assert!(opt.neighbor_objectives.iter().all(|&v| v <= opt.best.objective));
        assert!((opt.best.delta - 34.2).abs() < 0.5, "{}", opt.best.delta);
        assert!((opt.best.phi_r - 4.76).abs() < 0.02, "{}", opt.best.phi_r);
    }

    #[test]
    fn pi_optimum_monotone_in_depth() {
        let mut prev: Option<ScanResult> = None;
        for alpha in [25.0, 50.0, 75.0, 100.0] {
            let b = optimize_phase_target(alpha, PhaseTarget::Pi).unwrap().best;
            if let Some(p) = prev {
                assert!(b.t_p >= p.t_p, "T with signal at {alpha}");
                assert!(b.t_p_without <= p.t_p_without, "T without signal at {alpha}");
            }
            prev = Some(b);
        }
    }

    #[test]
    fn sweep_order_and_errors() {
        let spec = SweepSpec {
            alpha: alloc::vec![10.0, 20.0],
            delta: alloc::vec![0.0, 5.0],
            phi_r: alloc::vec![1.0, 2.0, 3.0],
            regime: Regime::Balanced,
            objective: Objective::ProbeTransmission,
            accumulate: None,
        };
        let rows = sweep(&spec).unwrap();
        assert_eq!(rows.len(), 12);
        let keys: Vec<_> = rows.iter().map(|r| (r.alpha, r.delta, r.phi_r)).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
        let bad = SweepSpec { phi_r: Vec::new(), ..spec.clone() };
        assert_eq!(sweep(&bad), Err(Error::InvalidSweep("empty axis")));
        let bad = SweepSpec { alpha: alloc::vec![-1.0], ..spec };
        assert!(sweep(&bad).is_err());
    }

    #[test]
    fn single_point_sweep_matches_direct_call() {
        let rows = sweep(&SweepSpec::point(70.0, 12.0, 2.5, Regime::Balanced)).unwrap();
        let (p, s) = propagate_balanced(RelativePhase::new(2.5).unwrap(), 70.0, 12.0);
        assert_eq!(rows[0].t_p, p.norm_sqr());
        assert_eq!(rows[0].t_s, s.norm_sqr());
        assert_eq!(rows[0].phi_p, Some(p.arg()));
    }

    #[test]
    fn resonant_sweep_has_equal_curves() {
        let spec = SweepSpec {
            alpha: alloc::vec![100.0],
            delta: alloc::vec![0.0],
            phi_r: half_open(0.0, TAU, 64),
            regime: Regime::Balanced,
            objective: Objective::ProbeTransmission,
            accumulate: None,
        };
        let rows = sweep(&spec).unwrap();
        for r in &rows {
            assert!((r.t_p - r.t_s).abs() < 1e-12);
        }
        let at_pi = &rows[32];
        assert!((at_pi.t_p / (-100.0f64).exp() - 1.0).abs() < 1e-6);
        let min = rows.iter().map(|r| r.t_p).fold(f64::INFINITY, f64::min);
        assert_eq!(min, at_pi.t_p);
    }

    #[test]
    fn sweep_rows_recompute_bit_identically() {
        let template = SystemParams::balanced(50.0, 13.0)
            .with_decays(0.001, 1.25, 1.25)
            .with_pumps(C64::new(0.7, 0.0), C64::new(0.7, 0.0));
        let spec = SweepSpec {
            alpha: alloc::vec![50.0],
            delta: alloc::vec![13.0],
            phi_r: half_open(0.0, TAU, 16),
            regime: Regime::General(template),
            objective: Objective::Xpm,
            accumulate: Some(512),
        };
        let rows = sweep(&spec).unwrap();
        for r in &rows {
            let again = evaluate(r.alpha, r.delta, r.phi_r, &spec.regime, spec.objective, spec.accumulate).unwrap();
            assert_eq!(*r, again);
        }
    }
}
