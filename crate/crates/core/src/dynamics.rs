//! Time-domain propagation of probe and signal pulses in the co-moving frame.
//!
//! The state is the set of coherences (ρ21, ρ31, ρ41) at `n_z` depth nodes
//! spanning ζ ∈ [0, α]. Each classical RK4 stage rebuilds the fields from
//! the entrance boundary with the trapezoid rule,
//!
//! ```text
//! Ω_p(ζ_j) = Ω_p(0, t) + Σ_k (h/2) · iγ31/2 · (ρ31[k−1] + ρ31[k])
//! ```
//!
//! and likewise for Ω_s with γ41 and ρ41, then evaluates the Bloch
//! equations node by node. The retardation term (1/c)∂/∂t is dropped.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::{Float, Zero};

use crate::model::{Coherences, FieldPair, SystemParams, C64};
use crate::phase_analysis::unwrap_phases;
use crate::{Error, Result};

/// Largest allowed dt · max(γ31, γ41, |Δ|, |Ω_c|, |Ω_d|).
pub const STABILITY_LIMIT: f64 = 0.5;

/// Relative std-dev above which a plateau window is rejected.
pub const PLATEAU_TOLERANCE: f64 = 0.05;

/// Temporal envelope family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseShape {
    /// Flat top with error-function edges.
    Square,
    /// Gaussian centred in [t_on, t_off], σ = (t_off − t_on)/12.
    Gaussian,
}

/// Input pulse imposed at ζ = 0.
///
/// Both shapes vanish identically outside [t_on, t_off]. A square pulse
/// rises as ½[1 + erf((t − t_on − 2τ)/(τ/2))] with τ = `edge_time` and
/// falls symmetrically before t_off; it is flat on
/// [t_on + 4τ, t_off − 4τ].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub shape: PulseShape,
    pub amplitude: C64,
    pub t_on: f64,
    pub t_off: f64,
    pub edge_time: f64,
}

impl PulseSpec {
    pub const DEFAULT_EDGE: f64 = 5.0;

    pub fn square(amplitude: C64, t_on: f64, t_off: f64) -> Self {
        Self { shape: PulseShape::Square, amplitude, t_on, t_off, edge_time: Self::DEFAULT_EDGE }
    }

    pub fn gaussian(amplitude: C64, t_on: f64, t_off: f64) -> Self {
        Self { shape: PulseShape::Gaussian, amplitude, t_on, t_off, edge_time: Self::DEFAULT_EDGE }
    }

    pub fn zero(t_on: f64, t_off: f64) -> Self {
        Self::square(C64::zero(), t_on, t_off)
    }

    pub fn with_edge(mut self, edge_time: f64) -> Self {
        self.edge_time = edge_time;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_on.is_finite() && self.t_off.is_finite() && self.edge_time.is_finite()) {
            return Err(Error::InvalidPulse("non-finite timing"));
        }
        if !(self.amplitude.re.is_finite() && self.amplitude.im.is_finite()) {
            return Err(Error::InvalidPulse("non-finite amplitude"));
        }
        if self.t_off <= self.t_on {
            return Err(Error::InvalidPulse("t_off must exceed t_on"));
        }
        if self.edge_time <= 0.0 {
            return Err(Error::InvalidPulse("edge_time must be positive"));
        }
        if self.shape == PulseShape::Square && !self.is_zero() && 8.0 * self.edge_time > self.t_off - self.t_on {
            return Err(Error::InvalidPulse("pulse shorter than its edges"));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude.is_zero()
    }

    /// Complex amplitude at time t.
    pub fn at(&self, t: f64) -> C64 {
        if t < self.t_on || t > self.t_off || self.is_zero() {
            return C64::zero();
        }
        let envelope = match self.shape {
            PulseShape::Square => {
                let w = self.edge_time / 2.0;
                let rise = 0.5 * (1.0 + libm::erf((t - self.t_on - 2.0 * self.edge_time) / w));
                let fall = 0.5 * (1.0 + libm::erf((self.t_off - 2.0 * self.edge_time - t) / w));
                rise * fall
            }
            PulseShape::Gaussian => {
                let centre = 0.5 * (self.t_on + self.t_off);
                let sigma = (self.t_off - self.t_on) / 12.0;
                let x = (t - centre) / sigma;
                (-0.5 * x * x).exp()
            }
        };
        self.amplitude * envelope
    }

    /// Interval over which the envelope is flat (square) or near its peak
    /// (Gaussian: centre ± σ).
    pub fn flat_interval(&self) -> (f64, f64) {
        match self.shape {
            PulseShape::Square => (self.t_on + 4.0 * self.edge_time, self.t_off - 4.0 * self.edge_time),
            PulseShape::Gaussian => {
                let centre = 0.5 * (self.t_on + self.t_off);
                let sigma = (self.t_off - self.t_on) / 12.0;
                (centre - sigma, centre + sigma)
            }
        }
    }
}

/// Discretization of depth and time.
#[derive(Debug, Clone, PartialEq)]
pub struct SimGrid {
    /// Depth nodes over [0, α], entrance and exit included.
    pub n_z: usize,
    pub dt: f64,
    pub t_end: f64,
    /// Record every this many steps.
    pub record_every: usize,
    /// Nodes whose coherences are kept in the record.
    pub coherence_nodes: Vec<usize>,
}

impl Default for SimGrid {
    fn default() -> Self {
        Self { n_z: 200, dt: 0.01, t_end: 1000.0, record_every: 100, coherence_nodes: Vec::new() }
    }
}

impl SimGrid {
    pub fn with_t_end(t_end: f64) -> Self {
        Self { t_end, ..Self::default() }
    }

    pub fn validate(&self, params: &SystemParams) -> Result<()> {
        if self.n_z < 2 {
            return Err(Error::InvalidGrid("n_z must be at least 2"));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidGrid("dt must be positive"));
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidGrid("t_end must be positive"));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidGrid("record_every must be at least 1"));
        }
        if self.coherence_nodes.iter().any(|&n| n >= self.n_z) {
            return Err(Error::InvalidGrid("coherence node out of range"));
        }
        let product = self.dt * params.max_rate();
        if product > STABILITY_LIMIT {
            return Err(Error::StabilityBound(product));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).ceil() as usize
    }
}

/// Coherences at one node over the recorded times.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceTrace {
    pub node: usize,
    pub values: Vec<Coherences>,
}

/// Space–time samples of the simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseRecord {
    pub params: SystemParams,
    pub probe_in: PulseSpec,
    pub signal_in: PulseSpec,
    pub times: Vec<f64>,
    pub zeta: Vec<f64>,
    /// Row-major, `times.len()` × `zeta.len()`.
    pub probe: Vec<C64>,
    pub signal: Vec<C64>,
    pub coherences: Vec<CoherenceTrace>,
    /// Largest |ρ_ij| met at any recorded sample.
    pub peak_coherence: f64,
}

impl PulseRecord {
    pub fn n_times(&self) -> usize {
        self.times.len()
    }

    pub fn n_z(&self) -> usize {
        self.zeta.len()
    }

    pub fn probe_at(&self, ti: usize, zi: usize) -> C64 {
        self.probe[ti * self.n_z() + zi]
    }

    pub fn signal_at(&self, ti: usize, zi: usize) -> C64 {
        self.signal[ti * self.n_z() + zi]
    }

    pub fn fields_at(&self, ti: usize, zi: usize) -> FieldPair {
        FieldPair::new(self.probe_at(ti, zi), self.signal_at(ti, zi))
    }

    /// Fields at node `zi` for every recorded time.
    pub fn node_series(&self, zi: usize) -> impl Iterator<Item = FieldPair> + '_ {
        (0..self.n_times()).map(move |ti| self.fields_at(ti, zi))
    }

    pub fn exit_node(&self) -> usize {
        self.n_z() - 1
    }

    /// Whether |ρ| stayed under the weak-probe bound.
    pub fn is_weak_field(&self, bound: f64) -> bool {
        self.peak_coherence < bound
    }
}

const HALF_I: C64 = Complex { re: 0.0, im: 0.5 };

struct Stepper<'a> {
    params: &'a SystemParams,
    probe_in: &'a PulseSpec,
    signal_in: &'a PulseSpec,
    h: f64,
    probe: Vec<C64>,
    signal: Vec<C64>,
}

impl Stepper<'_> {
    /// Rebuilds the fields at time t from the coherences.
    fn fields(&mut self, t: f64, rho: &[[C64; 3]]) {
        let kp = HALF_I * self.params.gamma31 * (0.5 * self.h);
        let ks = HALF_I * self.params.gamma41 * (0.5 * self.h);
        self.probe[0] = self.probe_in.at(t);
        self.signal[0] = self.signal_in.at(t);
        for j in 1..rho.len() {
            self.probe[j] = self.probe[j - 1] + kp * (rho[j - 1][1] + rho[j][1]);
            self.signal[j] = self.signal[j - 1] + ks * (rho[j - 1][2] + rho[j][2]);
        }
    }

    fn derivs(&mut self, t: f64, rho: &[[C64; 3]], out: &mut [[C64; 3]]) {
        self.fields(t, rho);
        let p = self.params;
        let oc = HALF_I * p.omega_c;
        let od = HALF_I * p.omega_d;
        let occ = HALF_I * p.omega_c.conj();
        let odc = HALF_I * p.omega_d.conj();
        let g21 = -p.gamma21 / 2.0;
        let g31 = -p.gamma31 / 2.0;
        let d41 = C64::new(-p.gamma41 / 2.0, p.delta);
        for (j, (r, d)) in rho.iter().zip(out.iter_mut()).enumerate() {
            let [r21, r31, r41] = *r;
            d[0] = occ * r31 + odc * r41 + r21 * g21;
            d[1] = HALF_I * self.probe[j] + oc * r21 + r31 * g31;
            d[2] = HALF_I * self.signal[j] + od * r21 + d41 * r41;
        }
    }
}

fn axpy(out: &mut [[C64; 3]], base: &[[C64; 3]], k: &[[C64; 3]], s: f64) {
    for ((o, b), k) in out.iter_mut().zip(base).zip(k) {
        for c in 0..3 {
            o[c] = b[c] + k[c] * s;
        }
    }
}

/// Integrates the coupled Bloch/propagation equations from an empty medium
/// (all atoms in |1⟩, ρ = 0) with the given entrance pulses.
///
/// A driving field of zero is accepted when the signal input is also zero
/// (single-Λ EIT).
pub fn simulate(params: &SystemParams, probe_in: &PulseSpec, signal_in: &PulseSpec, grid: &SimGrid) -> Result<PulseRecord> {
    if signal_in.is_zero() {
        params.validate_single_lambda()?;
    } else {
        params.validate()?;
    }
    probe_in.validate()?;
    signal_in.validate()?;
    grid.validate(params)?;

    let n = grid.n_z;
    let h = params.alpha / (n - 1) as f64;
    let zeta: Vec<f64> = (0..n).map(|j| if j + 1 == n { params.alpha } else { j as f64 * h }).collect();
    let mut stepper = Stepper {
        params,
        probe_in,
        signal_in,
        h,
        probe: vec![C64::zero(); n],
        signal: vec![C64::zero(); n],
    };

    let steps = grid.steps();
    let n_records = steps / grid.record_every + 1;
    let mut record = PulseRecord {
        params: *params,
        probe_in: *probe_in,
        signal_in: *signal_in,
        times: Vec::with_capacity(n_records),
        zeta,
        probe: Vec::with_capacity(n_records * n),
        signal: Vec::with_capacity(n_records * n),
        coherences: grid
            .coherence_nodes
            .iter()
            .map(|&node| CoherenceTrace { node, values: Vec::with_capacity(n_records) })
            .collect(),
        peak_coherence: 0.0,
    };

    let zero = [C64::zero(); 3];
    let mut rho = vec![zero; n];
    let mut k1 = vec![zero; n];
    let mut k2 = vec![zero; n];
    let mut k3 = vec![zero; n];
    let mut k4 = vec![zero; n];
    let mut tmp = vec![zero; n];
    let dt = grid.dt;

    let push = |record: &mut PulseRecord, stepper: &mut Stepper, t: f64, rho: &[[C64; 3]]| {
        stepper.fields(t, rho);
        record.times.push(t);
        record.probe.extend_from_slice(&stepper.probe);
        record.signal.extend_from_slice(&stepper.signal);
        for trace in &mut record.coherences {
            let [rho21, rho31, rho41] = rho[trace.node];
            trace.values.push(Coherences { rho21, rho31, rho41 });
        }
        let peak = rho
            .iter()
            .flat_map(|r| r.iter())
            .map(|z| z.norm_sqr())
            .fold(0.0, f64::max)
            .sqrt();
        record.peak_coherence = record.peak_coherence.max(peak);
    };

    push(&mut record, &mut stepper, 0.0, &rho);
    for step in 1..=steps {
        let t = (step - 1) as f64 * dt;
        stepper.derivs(t, &rho, &mut k1);
        axpy(&mut tmp, &rho, &k1, 0.5 * dt);
        stepper.derivs(t + 0.5 * dt, &tmp, &mut k2);
        axpy(&mut tmp, &rho, &k2, 0.5 * dt);
        stepper.derivs(t + 0.5 * dt, &tmp, &mut k3);
        axpy(&mut tmp, &rho, &k3, dt);
        stepper.derivs(t + dt, &tmp, &mut k4);
        for j in 0..n {
            for c in 0..3 {
                rho[j][c] += (k1[j][c] + (k2[j][c] + k3[j][c]) * 2.0 + k4[j][c]) * (dt / 6.0);
            }
        }
        let last = rho[n - 1];
        if !last.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Divergence { step, time: step as f64 * dt });
        }
        if step % grid.record_every == 0 {
            let t_now = step as f64 * dt;
            push(&mut record, &mut stepper, t_now, &rho);
            let bad = record.probe[record.probe.len() - n..]
                .iter()
                .chain(&record.signal[record.signal.len() - n..])
                .any(|z| !(z.re.is_finite() && z.im.is_finite()));
            if bad {
                return Err(Error::Divergence { step, time: t_now });
            }
        }
    }
    Ok(record)
}

/// Steady exit fields averaged over the tail of the pulse plateau.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plateau {
    pub exit: FieldPair,
    /// Exit/entrance ratio; `None` when that input is off.
    pub probe_ratio: Option<C64>,
    pub signal_ratio: Option<C64>,
    /// Exit phases relative to the inputs, continued along ζ at the last
    /// window sample so shifts beyond ±π survive.
    pub probe_phase_accumulated: Option<f64>,
    pub signal_phase_accumulated: Option<f64>,
    pub window: (f64, f64),
}

/// Complex mean of the exit fields over the trailing `window_fraction` of
/// the common flat part of the input pulses.
pub fn plateau_extract(record: &PulseRecord, window_fraction: f64) -> Result<Plateau> {
    if !(window_fraction > 0.0 && window_fraction <= 1.0) {
        return Err(Error::InvalidGrid("window_fraction must lie in (0, 1]"));
    }
    let active: Vec<&PulseSpec> = [&record.probe_in, &record.signal_in].into_iter().filter(|p| !p.is_zero()).collect();
    let (start, end) = if active.is_empty() {
        record.probe_in.flat_interval()
    } else {
        active.iter().map(|p| p.flat_interval()).fold((f64::NEG_INFINITY, f64::INFINITY), |(a, b), (c, d)| (a.max(c), b.min(d)))
    };
    let start = end - window_fraction * (end - start);
    let last = record.times.last().copied().unwrap_or(0.0);
    if end > last + 1e-9 || start > end {
        return Err(Error::WindowOutOfRange { start, end });
    }
    let exit = record.exit_node();
    let window: Vec<FieldPair> = record
        .times
        .iter()
        .enumerate()
        .filter(|(_, &t)| t >= start - 1e-9 && t <= end + 1e-9)
        .map(|(ti, _)| record.fields_at(ti, exit))
        .collect();
    if window.is_empty() {
        return Err(Error::WindowOutOfRange { start, end });
    }
    let count = window.len() as f64;
    let mean = |pick: fn(&FieldPair) -> C64| window.iter().map(pick).sum::<C64>() / count;
    let mean_p = mean(|f| f.omega_p);
    let mean_s = mean(|f| f.omega_s);
    let rel_std = |pick: fn(&FieldPair) -> C64, m: C64, input: C64| -> f64 {
        let var = window.iter().map(|f| (pick(f) - m).norm_sqr()).sum::<f64>() / count;
        let floor = 1e-3 * input.norm();
        let denom = m.norm().max(floor);
        if denom == 0.0 {
            if var == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            var.sqrt() / denom
        }
    };
    let worst = rel_std(|f| f.omega_p, mean_p, record.probe_in.amplitude)
        .max(rel_std(|f| f.omega_s, mean_s, record.signal_in.amplitude));
    if worst > PLATEAU_TOLERANCE {
        return Err(Error::PlateauNotSettled(worst));
    }
    let ratio = |m: C64, spec: &PulseSpec| (!spec.is_zero()).then(|| m / spec.amplitude);
    let last_ti = record
        .times
        .iter()
        .rposition(|&t| t <= end + 1e-9)
        .ok_or(Error::WindowOutOfRange { start, end })?;
    let along = |spec: &PulseSpec, pick: fn(&FieldPair) -> C64| -> Option<f64> {
        if spec.is_zero() {
            return None;
        }
        let input = spec.at(record.times[last_ti]);
        let profile = (0..record.n_z()).map(|zi| pick(&record.fields_at(last_ti, zi)) / input);
        *unwrap_phases(profile).last()?
    };
    Ok(Plateau {
        exit: FieldPair::new(mean_p, mean_s),
        probe_ratio: ratio(mean_p, &record.probe_in),
        signal_ratio: ratio(mean_s, &record.signal_in),
        probe_phase_accumulated: along(&record.probe_in, |f| f.omega_p),
        signal_phase_accumulated: along(&record.signal_in, |f| f.omega_s),
        window: (start, end),
    })
}

fn centroid(times: &[f64], series: impl Iterator<Item = C64>) -> Option<f64> {
    let (mut num, mut den) = (0.0, 0.0);
    for (t, z) in times.iter().zip(series) {
        let w = z.norm_sqr();
        num += t * w;
        den += w;
    }
    (den > 0.0).then(|| num / den)
}

/// Exit-minus-entrance centroid of |Ω|² for (probe, signal); `None` for a
/// field whose input is off.
pub fn group_delay(record: &PulseRecord) -> Result<(Option<f64>, Option<f64>)> {
    let exit = record.exit_node();
    let delay = |spec: &PulseSpec, pick: fn(&FieldPair) -> C64| -> Result<Option<f64>> {
        if spec.is_zero() {
            return Ok(None);
        }
        let t_in = centroid(&record.times, record.node_series(0).map(|f| pick(&f))).ok_or(Error::ZeroEnergy)?;
        let t_out = centroid(&record.times, record.node_series(exit).map(|f| pick(&f))).ok_or(Error::ZeroEnergy)?;
        Ok(Some(t_out - t_in))
    };
    Ok((delay(&record.probe_in, |f| f.omega_p)?, delay(&record.signal_in, |f| f.omega_s)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn square_pulse_support_and_plateau() {
        let p = PulseSpec::square(c(0.01, 0.0), 10.0, 110.0);
        assert_eq!(p.at(9.999), C64::zero());
        assert_eq!(p.at(110.001), C64::zero());
        assert!(p.at(10.0).norm() < 1e-10);
        assert!((p.at(60.0) - c(0.01, 0.0)).norm() < 1e-15);
        let (a, b) = p.flat_interval();
        assert!((p.at(a).norm() - 0.01).abs() < 1e-10 && (p.at(b).norm() - 0.01).abs() < 1e-10);
        assert!(PulseSpec::square(c(1.0, 0.0), 0.0, 30.0).validate().is_err());
        assert!(PulseSpec::square(c(1.0, 0.0), 5.0, 5.0).validate().is_err());
        assert!(PulseSpec::square(c(1.0, 0.0), 0.0, 100.0).with_edge(0.0).validate().is_err());
    }

    #[test]
    fn grid_validation() {
        let p = SystemParams::balanced(10.0, 34.2);
        assert!(SimGrid::default().validate(&p).is_ok());
        let g = SimGrid { dt: 0.02, ..SimGrid::default() };
        assert!(matches!(g.validate(&p), Err(Error::StabilityBound(_))));
        let g = SimGrid { n_z: 1, ..SimGrid::default() };
        assert!(g.validate(&p).is_err());
        let g = SimGrid { coherence_nodes: vec![200], ..SimGrid::default() };
        assert!(g.validate(&p).is_err());
    }

    #[test]
    fn zero_inputs_give_zero_record() {
        let p = SystemParams::balanced(20.0, 3.0);
        let pulse = PulseSpec::zero(0.0, 100.0);
        let grid = SimGrid { n_z: 20, t_end: 50.0, record_every: 10, coherence_nodes: vec![0, 19], ..SimGrid::default() };
        let r = simulate(&p, &pulse, &pulse, &grid).unwrap();
        assert!(r.probe.iter().chain(&r.signal).all(|z| z.is_zero()));
        assert_eq!(r.n_times(), 501);
        assert_eq!(r.coherences[1].values.len(), 501);
        let plateau = plateau_extract(&r, 0.1);
        assert!(matches!(plateau, Err(Error::WindowOutOfRange { .. })));
        let grid = SimGrid { t_end: 100.0, ..grid };
        let r = simulate(&p, &pulse, &pulse, &grid).unwrap();
        let plateau = plateau_extract(&r, 0.1).unwrap();
        assert_eq!(plateau.exit, FieldPair::default());
        assert_eq!(plateau.probe_ratio, None);
    }

    #[test]
    fn entrance_equals_input_and_exit_is_causal() {
        let p = SystemParams::balanced(40.0, 5.0).with_pumps(c(1.0, 0.0), C64::from_polar(1.0, 2.0));
        let probe = PulseSpec::square(c(0.01, 0.0), 20.0, 200.0);
        let signal = PulseSpec::square(C64::from_polar(0.01, 0.4), 20.0, 200.0);
        let grid = SimGrid { n_z: 50, t_end: 150.0, record_every: 10, ..SimGrid::default() };
        let r = simulate(&p, &probe, &signal, &grid).unwrap();
        for (ti, &t) in r.times.iter().enumerate() {
            assert_eq!(r.probe_at(ti, 0), probe.at(t));
            assert_eq!(r.signal_at(ti, 0), signal.at(t));
            if t < 20.0 {
                assert!(r.probe_at(ti, r.exit_node()).is_zero());
                assert!(r.signal_at(ti, r.exit_node()).is_zero());
            }
        }
        assert!(r.is_weak_field(crate::model::WEAK_FIELD_BOUND));
    }

    #[test]
    fn stability_bound_is_enforced() {
        let p = SystemParams::balanced(10.0, 60.0);
        let pulse = PulseSpec::square(c(0.01, 0.0), 0.0, 100.0);
        let err = simulate(&p, &pulse, &pulse, &SimGrid::default()).unwrap_err();
        assert!(matches!(err, Error::StabilityBound(_)));
    }

    #[test]
    fn no_medium_no_delay() {
        let p = SystemParams::balanced(0.0, 0.0);
        let pulse = PulseSpec::gaussian(c(0.01, 0.0), 0.0, 120.0);
        let grid = SimGrid { n_z: 5, t_end: 120.0, record_every: 10, ..SimGrid::default() };
        let r = simulate(&p, &pulse, &pulse, &grid).unwrap();
        let (dp, ds) = group_delay(&r).unwrap();
        assert!(dp.unwrap().abs() < 1e-12 && ds.unwrap().abs() < 1e-12);
        let quiet = PulseSpec::zero(0.0, 120.0);
        let r = simulate(&p.with_pumps(c(1.0, 0.0), C64::zero()), &pulse, &quiet, &grid).unwrap();
        assert_eq!(group_delay(&r).unwrap().1, None);
    }
}
