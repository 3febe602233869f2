//! Named figure scenarios and the tables they produce.

use std::f64::consts::{PI, TAU};
use std::fmt;

use dlambda_core::dynamics::{group_delay, plateau_extract, simulate, PulseRecord, PulseSpec, SimGrid};
use dlambda_core::model::WEAK_FIELD_BOUND;
use dlambda_core::optimize::{
    evaluate, half_open, linspace, optimize_amplification, optimize_phase_target_with, sweep, DetuningSearch,
    Objective, PhaseTarget, Regime, SweepSpec,
};
use dlambda_core::phase_analysis::{
    critical_depth, jump_phases, phase_trace, pi_phase_relative, unwrap_phases, ACCUMULATION_SAMPLES,
};
use dlambda_core::steady_state::{eit_response, propagate, propagate_balanced, Propagator};
use dlambda_core::{Error as CoreError, FieldPair, RelativePhase, SystemParams, C64};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::settings::{Settings, Value};
use crate::table::{opt, PlotSpec, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioName {
    FigS2,
    FigS3,
    FigS4,
    FigS5,
    FigS6,
    FigMain2,
    FigMain3,
    FigMain4,
    Custom,
}

impl ScenarioName {
    pub const ALL: [Self; 9] = [
        Self::FigS2,
        Self::FigS3,
        Self::FigS4,
        Self::FigS5,
        Self::FigS6,
        Self::FigMain2,
        Self::FigMain3,
        Self::FigMain4,
        Self::Custom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::FigS2 => "fig-s2",
            Self::FigS3 => "fig-s3",
            Self::FigS4 => "fig-s4",
            Self::FigS5 => "fig-s5",
            Self::FigS6 => "fig-s6",
            Self::FigMain2 => "fig-main2",
            Self::FigMain3 => "fig-main3",
            Self::FigMain4 => "fig-main4",
            Self::Custom => "custom",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|s| s.as_str() == name).ok_or_else(|| {
            let known: Vec<&str> = Self::ALL.iter().map(|s| s.as_str()).collect();
            CliError::Usage(format!("unknown scenario '{name}' (expected one of {})", known.join(", ")))
        })
    }

    /// Caption parameters of the figure the scenario reproduces.
    pub fn defaults(self) -> Settings {
        use Value::{Count, List, Real};
        let pulse = |alpha, delta, phis: Vec<f64>, amplitude, t_off, t_end| {
            vec![
                ("alpha", Real(alpha)),
                ("delta", Real(delta)),
                ("phi_r", List(phis)),
                ("amplitude", Real(amplitude)),
                ("t_on", Real(0.0)),
                ("t_off", Real(t_off)),
                ("edge_time", Real(PulseSpec::DEFAULT_EDGE)),
                ("n_z", Count(200)),
                ("dt", Real(0.01)),
                ("t_end", Real(t_end)),
                ("record_every", Count(100)),
                ("window_fraction", Real(0.1)),
            ]
        };
        let general = |alpha, delta, omega, gamma21, gamma| {
            vec![
                ("alpha", Real(alpha)),
                ("delta", Real(delta)),
                ("omega_c", Real(omega)),
                ("omega_d", Real(omega)),
                ("gamma21", Real(gamma21)),
                ("gamma31", Real(gamma)),
                ("gamma41", Real(gamma)),
            ]
        };
        let entries = match self {
            Self::FigS2 => vec![
                ("alpha", Real(100.0)),
                ("delta", Real(0.0)),
                ("phi_r", List(vec![1.0, 2.0, 3.0, PI, 4.0, 5.0, 6.0])),
                ("n_phi", Count(360)),
                ("trace_samples", Count(401)),
            ],
            Self::FigS3 => vec![
                ("alpha", Real(100.0)),
                ("delta", Real(16.5)),
                ("phi_r", List(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0])),
                ("n_phi", Count(720)),
                ("trace_samples", Count(401)),
            ],
            Self::FigS4 => vec![
                ("alpha", Real(100.0)),
                ("delta", Real(16.5)),
                ("phi_r", List(vec![4.67, 4.57])),
                ("trace_samples", Count(2001)),
            ],
            Self::FigS5 => vec![
                ("alpha", Real(100.0)),
                ("n_alpha", Count(20)),
                ("delta_max", Real(60.0)),
                ("delta_step", Real(0.1)),
                ("tolerance", Real(1e-3)),
            ],
            Self::FigS6 => {
                let mut e = pulse(100.0, 34.2, vec![1.53, 4.76], 0.01, 600.0, 900.0);
                e.insert(1, ("n_alpha", Count(20)));
                e
            }
            Self::FigMain2 => vec![
                ("alpha", Real(52.0)),
                ("omega_c", Real(0.7)),
                ("gamma21", Real(0.001)),
                ("gamma31", Real(1.25)),
                ("delta_p_max", Real(10.0)),
                ("n_delta_p", Count(2001)),
            ],
            Self::FigMain3 => {
                let mut e = pulse(46.0, 13.0, vec![1.5, 4.5], 0.016, 400.0, 700.0);
                let g = general(46.0, 13.0, 0.7, 0.001, 1.25);
                e.splice(2..2, g.into_iter().skip(2));
                e
            }
            Self::FigMain4 => {
                let mut e = general(50.0, 13.0, 0.7, 0.001, 1.25);
                e.push(("n_phi", Count(360)));
                e.push(("phi_r_report", Real(4.4)));
                e
            }
            Self::Custom => {
                let mut e = general(50.0, 0.0, 1.0, 0.0, 1.0);
                e.push(("phi_r", List(vec![PI])));
                e.push(("n_phi", Count(360)));
                e.push(("trace_samples", Count(401)));
                e
            }
        };
        Settings::new(entries)
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: ScenarioName,
    pub settings: Settings,
}

impl Scenario {
    pub fn new(name: &str, overrides: &[String]) -> Result<Self> {
        let name = ScenarioName::parse(name)?;
        let mut settings = name.defaults();
        for o in overrides {
            settings.apply(o)?;
        }
        Ok(Self { name, settings })
    }

    /// Header lines shared by every output file. No timestamps, so repeated
    /// runs produce identical bytes.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut meta = vec![
            ("scenario".to_owned(), self.name.to_string()),
            ("tool".to_owned(), format!("dlambda {}", env!("CARGO_PKG_VERSION"))),
            ("units".to_owned(), "rates in Gamma, times in 1/Gamma, phases in rad".to_owned()),
        ];
        meta.extend(self.settings.entries().iter().map(|(k, v)| ((*k).to_owned(), v.to_string())));
        let overridden = self.settings.overridden();
        let list = if overridden.is_empty() { "none".to_owned() } else { overridden.join(",") };
        meta.push(("overrides".to_owned(), list));
        meta
    }
}

/// Tables plus human-readable summary lines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub summary: Vec<String>,
}

pub fn compute(scenario: &Scenario) -> Result<Outcome> {
    let s = &scenario.settings;
    match scenario.name {
        ScenarioName::FigS2 | ScenarioName::FigS3 => balanced_maps(s, scenario.name == ScenarioName::FigS3),
        ScenarioName::FigS4 => jump_profiles(s),
        ScenarioName::FigS5 => phase_targets(s),
        ScenarioName::FigS6 => amplification(s),
        ScenarioName::FigMain2 => eit_spectrum(s),
        ScenarioName::FigMain3 => {
            let params = general_params(s);
            let mut out = Outcome::default();
            pulses(s, &params, &mut out)?;
            Ok(out)
        }
        ScenarioName::FigMain4 => general_sweep(s),
        ScenarioName::Custom => custom(s),
    }
}

fn count(s: &Settings, key: &'static str, min: usize) -> Result<usize> {
    let n = s.count(key);
    if n < min {
        return Err(CoreError::InvalidSweep(key).into());
    }
    Ok(n)
}

fn general_params(s: &Settings) -> SystemParams {
    SystemParams::balanced(s.real("alpha"), s.real("delta"))
        .with_decays(s.real("gamma21"), s.real("gamma31"), s.real("gamma41"))
        .with_pumps(C64::new(s.real("omega_c"), 0.0), C64::new(s.real("omega_d"), 0.0))
}

fn rp(phi: f64) -> Result<RelativePhase> {
    Ok(RelativePhase::new(phi)?)
}

fn balanced_sweep_table(alpha: f64, delta: f64, n_phi: usize) -> Result<Table> {
    let rows = sweep(&SweepSpec {
        alpha: vec![alpha],
        delta: vec![delta],
        phi_r: half_open(0.0, TAU, n_phi),
        regime: Regime::Balanced,
        objective: Objective::ProbeTransmission,
        accumulate: (alpha > 0.0).then_some(ACCUMULATION_SAMPLES),
    })?;
    let mut t = Table::new("sweep", &["phi_r", "t_p", "t_s", "phi_p", "phi_s", "phi_p_acc", "phi_s_acc"])
        .with_plot(PlotSpec::new("transmission", "Transmission vs relative phase", "phi_r", &["t_p", "t_s"]))
        .with_plot(PlotSpec::new("phase", "Phase shift vs relative phase", "phi_r", &["phi_p_acc", "phi_s_acc"]));
    t.note("phase_columns", "phi_*: principal value; phi_*_acc: continued along the medium");
    for r in rows {
        let acc = |x: Option<f64>, principal: Option<f64>| opt(if alpha > 0.0 { x } else { principal });
        t.push(vec![
            r.phi_r,
            r.t_p,
            r.t_s,
            opt(r.phi_p),
            opt(r.phi_s),
            acc(r.phi_p_accumulated, r.phi_p),
            acc(r.phi_s_accumulated, r.phi_s),
        ]);
    }
    Ok(t)
}

fn trace_table(delta: f64, alpha: f64, phis: &[f64], samples: usize) -> Result<Table> {
    let mut t = Table::new("traces", &["phi_r", "zeta", "re_p", "im_p", "re_s", "im_s", "phase_p", "phase_s"])
        .with_plot(PlotSpec::new("traces_probe", "Probe phase diagram", "re_p", &["im_p"]).grouped("phi_r"))
        .with_plot(PlotSpec::new("traces_signal", "Signal phase diagram", "re_s", &["im_s"]).grouped("phi_r"));
    for &phi in phis {
        let trace = phase_trace(rp(phi)?, delta, alpha, samples)?;
        let (pp, ps) = (trace.probe_phases(), trace.signal_phases());
        for ((sample, p), s) in trace.samples.iter().zip(pp).zip(ps) {
            t.push(vec![
                phi,
                sample.zeta,
                sample.probe.re,
                sample.probe.im,
                sample.signal.re,
                sample.signal.im,
                opt(p),
                opt(s),
            ]);
        }
    }
    Ok(t)
}

fn balanced_maps(s: &Settings, with_jumps: bool) -> Result<Outcome> {
    let (alpha, delta) = (s.real("alpha"), s.real("delta"));
    let mut out = Outcome::default();
    let mut phis = s.list("phi_r").to_vec();
    if with_jumps && delta != 0.0 {
        let (pj, sj) = jump_phases(delta, 1)?;
        out.summary.push(format!(
            "jump phases at delta={delta}: phi_pj={pj:.4}, phi_sj={sj:.4}, alpha_c={:.3}",
            critical_depth(delta, 1)?
        ));
        phis.extend([sj, pj]);
        phis.sort_by(f64::total_cmp);
    }
    let mut sweep = balanced_sweep_table(alpha, delta, count(s, "n_phi", 1)?)?;
    if with_jumps && delta != 0.0 {
        let (pj, sj) = jump_phases(delta, 1)?;
        sweep.note("phi_pj", pj);
        sweep.note("phi_sj", sj);
    }
    let t_min = sweep.column("t_p").unwrap().into_iter().fold(f64::INFINITY, f64::min);
    out.summary.push(format!("sweep: {} rows, min T_p = {t_min:.4e}", sweep.rows.len()));
    out.tables.push(sweep);
    if alpha > 0.0 {
        out.tables.push(trace_table(delta, alpha, &phis, count(s, "trace_samples", 2)?)?);
    } else {
        out.summary.push("alpha = 0: no medium, phase traces skipped".to_owned());
    }
    Ok(out)
}

fn jump_profiles(s: &Settings) -> Result<Outcome> {
    let (alpha, delta) = (s.real("alpha"), s.real("delta"));
    let samples = count(s, "trace_samples", 2)?;
    let mut t = Table::new("profiles", &["phi_r", "zeta", "t_p", "t_s", "phase_p", "phase_s"])
        .with_plot(PlotSpec::new("phase", "Accumulated phase vs depth", "zeta", &["phase_p", "phase_s"]).grouped("phi_r"))
        .with_plot(PlotSpec::new("transmission", "Transmission vs depth", "zeta", &["t_p", "t_s"]).grouped("phi_r"));
    let mut out = Outcome::default();
    if delta != 0.0 {
        let (pj, sj) = jump_phases(delta, 1)?;
        let alpha_c = critical_depth(delta, 1)?;
        t.note("alpha_c", alpha_c);
        t.note("phi_pj", pj);
        t.note("phi_sj", sj);
        out.summary.push(format!("alpha_c={alpha_c:.3}, phi_pj={pj:.4}, phi_sj={sj:.4}"));
    }
    for &phi in s.list("phi_r") {
        let trace = phase_trace(rp(phi)?, delta, alpha, samples)?;
        let (pp, ps) = (trace.probe_phases(), trace.signal_phases());
        for ((sample, p), q) in trace.samples.iter().zip(&pp).zip(&ps) {
            t.push(vec![phi, sample.zeta, sample.probe.norm_sqr(), sample.signal.norm_sqr(), opt(*p), opt(*q)]);
        }
        let last = trace.terminal();
        out.summary.push(format!(
            "phi_r={phi}: terminal probe phase {:.3} rad, T_p={:.4}",
            opt(*pp.last().unwrap()),
            last.probe.norm_sqr()
        ));
    }
    out.tables.push(t);
    Ok(out)
}

fn phase_targets(s: &Settings) -> Result<Outcome> {
    let alpha_max = s.real("alpha");
    let n = count(s, "n_alpha", 1)?;
    let search = DetuningSearch { delta_max: s.real("delta_max"), coarse_step: s.real("delta_step"), tolerance: s.real("tolerance") };
    if !(search.delta_max > 0.0 && search.coarse_step > 0.0 && search.tolerance > 0.0) {
        return Err(CoreError::InvalidSweep("delta_max, delta_step and tolerance must be positive").into());
    }
    if !(alpha_max >= 0.0) {
        return Err(CoreError::NegativeDepth(alpha_max).into());
    }
    let alphas = linspace(alpha_max / n as f64, alpha_max, n);
    let columns = ["alpha", "delta_opt", "phi_r", "T_with", "T_without", "xpm_rad"];
    let mut out = Outcome::default();
    for (name, target) in [("pi", PhaseTarget::Pi), ("half_pi", PhaseTarget::HalfPi)] {
        let results: Vec<_> = alphas.par_iter().map(|&a| optimize_phase_target_with(a, target, search)).collect();
        let mut t = Table::new(name, &columns)
            .with_plot(PlotSpec::new(&format!("{name}_transmission"), "Optimized probe transmission", "alpha", &["T_with", "T_without"]))
            .with_plot(PlotSpec::new(&format!("{name}_xpm"), "Cross-phase modulation", "alpha", &["xpm_rad"]));
        t.note("target", name);
        for (a, r) in alphas.iter().zip(results) {
            match r {
                Ok(o) => {
                    let b = o.best;
                    t.push(vec![*a, b.delta, b.phi_r, b.t_p, b.t_p_without, opt(b.xpm)]);
                }
                Err(CoreError::NoFeasibleDetuning { .. }) => t.push(vec![*a, f64::NAN, f64::NAN, f64::NAN, f64::NAN, f64::NAN]),
                Err(e) => return Err(e.into()),
            }
        }
        if let Some(last) = t.rows.last() {
            out.summary.push(format!(
                "{name} target at alpha={}: delta_opt={:.3}, T_with={:.4}, T_without={:.4}, xpm={:.4} rad",
                last[0], last[1], last[3], last[4], last[5]
            ));
        }
        out.tables.push(t);
    }
    let mut inset = Table::new("inset", &["delta", "phi_r", "t_p"])
        .with_plot(PlotSpec::new("inset", "Probe transmission at a pi shift vs detuning", "delta", &["t_p"]));
    inset.note("inset_alpha", alpha_max);
    let steps = (search.delta_max / search.coarse_step).round() as usize;
    for k in 1..=steps {
        let delta = k as f64 * search.coarse_step;
        match pi_phase_relative(alpha_max, delta) {
            Ok(phi) => inset.push(vec![delta, phi.value(), propagate_balanced(phi, alpha_max, delta).0.norm_sqr()]),
            Err(_) => inset.push(vec![delta, f64::NAN, f64::NAN]),
        }
    }
    out.tables.push(inset);
    Ok(out)
}

fn pulse_grid(s: &Settings) -> SimGrid {
    SimGrid {
        n_z: s.count("n_z"),
        dt: s.real("dt"),
        t_end: s.real("t_end"),
        record_every: s.count("record_every"),
        coherence_nodes: Vec::new(),
    }
}

/// Pulse simulations at every φ_r of the settings, with the plateau
/// cross-check against the steady state.
fn pulses(s: &Settings, params: &SystemParams, out: &mut Outcome) -> Result<()> {
    let grid = pulse_grid(s);
    let (amp, t_on, t_off, edge) = (s.real("amplitude"), s.real("t_on"), s.real("t_off"), s.real("edge_time"));
    let window = s.real("window_fraction");
    let phis = s.list("phi_r").to_vec();
    let runs: Vec<Result<(f64, FieldPair, PulseRecord)>> = phis
        .par_iter()
        .map(|&phi| {
            let f = FieldPair::unit_with_relative_phase(params, rp(phi)?);
            let probe = PulseSpec::square(f.omega_p * amp, t_on, t_off).with_edge(edge);
            let signal = PulseSpec::square(f.omega_s * amp, t_on, t_off).with_edge(edge);
            Ok((phi, f, simulate(params, &probe, &signal, &grid)?))
        })
        .collect();

    let mut intensity = Table::new("pulses", &["phi_r", "t", "in_p", "in_s", "out_p", "out_s"])
        .with_plot(PlotSpec::new("pulses", "Input and exit intensities", "t", &["in_p", "out_p", "out_s"]).grouped("phi_r"));
    intensity.note("intensity_unit", "|Omega|^2 / amplitude^2");
    let mut record = Table::new("record", &["phi_r", "t", "zeta", "re_p", "im_p", "re_s", "im_s"]);
    record.note("nodes", "entrance and exit");
    let mut check = Table::new(
        "steady_check",
        &["phi_r", "t_p_dynamic", "t_p_steady", "t_s_dynamic", "t_s_steady", "probe_delay", "signal_delay", "deviation", "agree"],
    );
    check.note("agreement", "|r_dyn - r_ss| <= 0.01 max(|r_ss|, 1) for both fields");
    let mut weak = true;
    for run in runs {
        let (phi, fields, rec) = run?;
        weak &= rec.is_weak_field(WEAK_FIELD_BOUND);
        let exit = rec.exit_node();
        for ti in 0..rec.n_times() {
            let (a, b) = (rec.fields_at(ti, 0), rec.fields_at(ti, exit));
            let scale = amp * amp;
            intensity.push(vec![
                phi,
                rec.times[ti],
                a.omega_p.norm_sqr() / scale,
                a.omega_s.norm_sqr() / scale,
                b.omega_p.norm_sqr() / scale,
                b.omega_s.norm_sqr() / scale,
            ]);
            for (zi, f) in [(0, a), (exit, b)] {
                record.push(vec![phi, rec.times[ti], rec.zeta[zi], f.omega_p.re, f.omega_p.im, f.omega_s.re, f.omega_s.im]);
            }
        }
        let plateau = plateau_extract(&rec, window)?;
        let steady = propagate(params, &fields, params.alpha)?;
        let (sp, ss) = (steady.omega_p / fields.omega_p, steady.omega_s / fields.omega_s);
        let (dp, ds) = (plateau.probe_ratio.unwrap_or_default(), plateau.signal_ratio.unwrap_or_default());
        let deviation = ((dp - sp).norm() / sp.norm().max(1.0)).max((ds - ss).norm() / ss.norm().max(1.0));
        let (delay_p, delay_s) = group_delay(&rec)?;
        let agree = deviation <= 0.01;
        check.push(vec![
            phi,
            dp.norm_sqr(),
            sp.norm_sqr(),
            ds.norm_sqr(),
            ss.norm_sqr(),
            opt(delay_p),
            opt(delay_s),
            deviation,
            if agree { 1.0 } else { 0.0 },
        ]);
        out.summary.push(format!(
            "phi_r={phi}: plateau T_p={:.4} (steady {:.4}), T_s={:.4} (steady {:.4}), deviation {deviation:.2e} [{}]",
            dp.norm_sqr(),
            sp.norm_sqr(),
            ds.norm_sqr(),
            ss.norm_sqr(),
            if agree { "agree" } else { "DISAGREE" }
        ));
    }
    check.note("weak_field", weak);
    if !weak {
        out.summary.push(format!("warning: coherences exceeded the weak-field bound {WEAK_FIELD_BOUND}"));
    }
    out.tables.extend([intensity, record, check]);
    Ok(())
}

fn amplification(s: &Settings) -> Result<Outcome> {
    let alpha_max = s.real("alpha");
    let n = count(s, "n_alpha", 1)?;
    if !(alpha_max >= 0.0) {
        return Err(CoreError::NegativeDepth(alpha_max).into());
    }
    let alphas = linspace(alpha_max / n as f64, alpha_max, n);
    let results: Vec<_> = alphas.par_iter().map(|&a| optimize_amplification(a)).collect();
    let mut t = Table::new("amplification", &["alpha", "delta_opt", "phi_r", "t_p", "t_s", "efficiency"])
        .with_plot(PlotSpec::new("amplification", "Optimal signal amplification", "alpha", &["t_p", "t_s"]));
    t.note("efficiency", "t_s / 2");
    let mut out = Outcome::default();
    for (a, r) in alphas.iter().zip(results) {
        let b = r?.best;
        t.push(vec![*a, b.delta, b.phi_r, b.t_p, b.t_s, b.efficiency]);
    }
    if let Some(last) = t.rows.last() {
        out.summary.push(format!(
            "amplification at alpha={}: delta={:.2}, phi_r={:.3}, T_s={:.4}, efficiency (T_s/2)={:.4}",
            last[0], last[1], last[2], last[4], last[5]
        ));
    }
    out.tables.push(t);
    let params = SystemParams::balanced(s.real("alpha"), s.real("delta"));
    pulses(s, &params, &mut out)?;
    Ok(out)
}

fn eit_spectrum(s: &Settings) -> Result<Outcome> {
    let params = SystemParams::single_lambda(s.real("alpha"), s.real("omega_c"), s.real("gamma21"), s.real("gamma31"));
    let n = count(s, "n_delta_p", 2)?;
    let span = s.real("delta_p_max");
    let mut t = Table::new("spectrum", &["delta_p", "t", "phase"])
        .with_plot(PlotSpec::new("spectrum", "EIT transmission", "delta_p", &["t"]));
    let mut responses = Vec::with_capacity(n);
    for dp in linspace(-span, span, n) {
        let r = eit_response(&params, dp)?;
        responses.push((dp, r));
    }
    let phases = unwrap_phases(responses.iter().map(|(_, r)| *r));
    for ((dp, r), ph) in responses.iter().zip(phases) {
        t.push(vec![*dp, r.norm_sqr(), opt(ph)]);
    }
    let centre = eit_response(&params, 0.0)?.norm_sqr();
    let (g21, g31, oc) = (params.gamma21, params.gamma31, params.omega_c.norm_sqr());
    let oracle = (-params.alpha * g21 * g31 / (g21 * g31 + oc)).exp();
    t.note("line_centre_transmission", centre);
    let mut out = Outcome::default();
    out.summary.push(format!("line-centre T={centre:.5} (closed form {oracle:.5})"));
    out.tables.push(t);
    Ok(out)
}

fn general_sweep_table(params: &SystemParams, n_phi: usize) -> Result<Table> {
    let rows = sweep(&SweepSpec {
        alpha: vec![params.alpha],
        delta: vec![params.delta],
        phi_r: half_open(0.0, TAU, n_phi),
        regime: Regime::General(*params),
        objective: Objective::ProbeTransmission,
        accumulate: Some(ACCUMULATION_SAMPLES),
    })?;
    let mut t = Table::new(
        "sweep",
        &["phi_r", "t_p", "phi_p", "phi_p_acc", "t_p_without", "phi_p_without_acc", "t_s", "phi_s", "xpm_rad"],
    )
    .with_plot(PlotSpec::new("transmission", "Probe transmission vs relative phase", "phi_r", &["t_p", "t_p_without", "t_s"]))
    .with_plot(PlotSpec::new("phase", "Accumulated probe phase vs relative phase", "phi_r", &["phi_p_acc", "phi_p_without_acc"]));
    t.note("regime", "general");
    for r in rows {
        t.push(vec![
            r.phi_r,
            r.t_p,
            opt(r.phi_p),
            opt(r.phi_p_accumulated),
            r.t_p_without,
            opt(r.phi_p_without_accumulated),
            r.t_s,
            opt(r.phi_s),
            opt(r.xpm),
        ]);
    }
    Ok(t)
}

fn general_sweep(s: &Settings) -> Result<Outcome> {
    let params = general_params(s);
    let table = general_sweep_table(&params, count(s, "n_phi", 1)?)?;
    let phi = s.real("phi_r_report");
    let r = evaluate(params.alpha, params.delta, phi, &Regime::General(params), Objective::ProbeTransmission, Some(ACCUMULATION_SAMPLES))?;
    let mut out = Outcome::default();
    out.summary.push(format!(
        "phi_r={phi}: T_p={:.4}, accumulated probe phase {:.3} rad (without signal {:.3} rad)",
        r.t_p,
        opt(r.phi_p_accumulated),
        opt(r.phi_p_without_accumulated)
    ));
    out.tables.push(table);
    Ok(out)
}

fn custom(s: &Settings) -> Result<Outcome> {
    let params = general_params(s);
    let mut out = Outcome::default();
    out.tables.push(general_sweep_table(&params, count(s, "n_phi", 1)?)?);
    if params.alpha > 0.0 {
        let samples = count(s, "trace_samples", 2)?;
        let propagator = Propagator::new(&params)?;
        let mut t = Table::new("traces", &["phi_r", "zeta", "re_p", "im_p", "re_s", "im_s"])
            .with_plot(PlotSpec::new("traces_probe", "Probe phase diagram", "re_p", &["im_p"]).grouped("phi_r"))
            .with_plot(PlotSpec::new("traces_signal", "Signal phase diagram", "re_s", &["im_s"]).grouped("phi_r"));
        for &phi in s.list("phi_r") {
            let f = FieldPair::unit_with_relative_phase(&params, rp(phi)?);
            for zeta in linspace(0.0, params.alpha, samples) {
                let o = propagator.at(zeta).apply(&f);
                let (p, q) = (o.omega_p / f.omega_p, o.omega_s / f.omega_s);
                t.push(vec![phi, zeta, p.re, p.im, q.re, q.im]);
            }
        }
        out.tables.push(t);
    }
    out.summary.push(format!("custom sweep over {} relative phases", s.count("n_phi")));
    Ok(out)
}
