use thiserror::Error;

/// Everything that can go wrong in the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alpha negative")]
    AlphaNegative,
    #[error("gamma31 nonpositive")]
    Gamma31Nonpositive,
    #[error("gamma41 nonpositive")]
    Gamma41Nonpositive,
    #[error("gamma21 negative")]
    Gamma21Negative,
    #[error("omega_c zero")]
    CouplingFieldZero,
    #[error("omega_d zero")]
    DrivingFieldZero,
    #[error("{0} not finite")]
    NonFinite(&'static str),
    #[error("closed-form coherences need gamma21 = 0 and gamma31 = gamma41 = 1")]
    NotClosedForm,
    #[error("operation needs a single-lambda system (omega_d = 0)")]
    NotSingleLambda,
    #[error("steady-state denominator vanishes (both pumps off)")]
    SingularDenominator,
    #[error("singular steady-state system at alpha={alpha}, delta={delta}, gamma21={gamma21}, gamma31={gamma31}, gamma41={gamma41}")]
    SingularSystem {
        alpha: f64,
        delta: f64,
        gamma21: f64,
        gamma31: f64,
        gamma41: f64,
    },
    #[error("optical depth must be nonnegative, got {0}")]
    NegativeDepth(f64),
    #[error("trace needs alpha_max > 0 and at least 2 samples")]
    InvalidTrace,
    #[error("zero detuning has no finite critical depth")]
    ZeroDetuning,
    #[error("branch index must be odd and positive, got {0}")]
    InvalidBranch(i32),
    #[error("sin(I) vanishes at alpha={alpha}, delta={delta}")]
    SingularPhaseCondition { alpha: f64, delta: f64 },
    #[error("phase target not reachable at alpha={alpha}, delta={delta}")]
    TargetUnreachable { alpha: f64, delta: f64 },
    #[error("no feasible detuning in [{lo}, {hi}]")]
    NoFeasibleDetuning { lo: f64, hi: f64 },
    #[error("invalid pulse: {0}")]
    InvalidPulse(&'static str),
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    #[error("time step violates the explicit stability bound: dt*rate = {0} > 0.5")]
    StabilityBound(f64),
    #[error("simulation diverged at step {step} (t = {time})")]
    Divergence { step: usize, time: f64 },
    #[error("plateau window not settled: relative std-dev {0} exceeds 5%")]
    PlateauNotSettled(f64),
    #[error("plateau window [{start}, {end}] outside the recorded time span")]
    WindowOutOfRange { start: f64, end: f64 },
    #[error("exit pulse carries no energy")]
    ZeroEnergy,
    #[error("invalid sweep: {0}")]
    InvalidSweep(&'static str),
}
