use analytics::{ft_fusion_stats, pauli_meas_stats};
use mc_harness::{enumerate_small, simulate, Mode, TrialConfig};
use ring_codes::RingCodeSpec;
use serde::Serialize;

use crate::CliError;

/// One code, channel and operation to estimate.
#[derive(Clone, Copy, Debug)]
pub struct Query {
    pub spec: RingCodeSpec,
    pub eta: f64,
    pub lambda: f64,
    pub mode: Mode,
    pub trials: u64,
    pub seed: u64,
}

/// Transmission probability, and error and detection probabilities given
/// transmission.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub estimator: &'static str,
    pub transmitted: f64,
    pub error: f64,
    pub detected: f64,
    /// Binomial standard errors of the three values, for sampled estimates.
    pub stderr: Option<[f64; 3]>,
}

pub trait Estimator: Send + Sync {
    fn name(&self) -> &'static str;
    fn estimate(&self, q: &Query) -> Result<Estimate, CliError>;
}

struct Analytic;

impl Estimator for Analytic {
    fn name(&self) -> &'static str {
        "analytic"
    }

    fn estimate(&self, q: &Query) -> Result<Estimate, CliError> {
        if q.spec.n != 4 {
            return Err(CliError::Usage(format!("analytic statistics need n = 4, got {}", q.spec.n)));
        }
        let (transmitted, error, detected) = match q.mode {
            Mode::Fusion => {
                let s = ft_fusion_stats(q.eta, q.lambda, q.spec.depth, q.spec.switch_layer)?;
                (s.p_s, s.eps, s.eps_d)
            }
            Mode::Pauli(_) => {
                let s = pauli_meas_stats(q.eta, q.lambda, q.spec.depth)?;
                (s.eta_bar, s.eps, s.eps_d)
            }
        };
        Ok(Estimate { estimator: self.name(), transmitted, error, detected, stderr: None })
    }
}

struct MonteCarlo;

impl Estimator for MonteCarlo {
    fn name(&self) -> &'static str {
        "monte-carlo"
    }

    fn estimate(&self, q: &Query) -> Result<Estimate, CliError> {
        let cfg = TrialConfig { spec: q.spec, eta: q.eta, lambda: q.lambda, trials: q.trials, seed: q.seed };
        let s = simulate(&cfg, q.mode)?;
        let (t, ts) = s.transmission_rate();
        let (e, es) = s.error_rate();
        let (d, ds) = s.detection_rate();
        Ok(Estimate { estimator: self.name(), transmitted: t, error: e, detected: d, stderr: Some([ts, es, ds]) })
    }
}

struct Exact;

impl Estimator for Exact {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn estimate(&self, q: &Query) -> Result<Estimate, CliError> {
        let d = enumerate_small(&q.spec, q.eta, q.lambda, q.mode)?;
        let t = d.transmitted();
        let cond = |x: f64| if t > 0.0 { x / t } else { 0.0 };
        Ok(Estimate {
            estimator: self.name(),
            transmitted: t,
            error: cond(d.error),
            detected: cond(d.detected),
            stderr: None,
        })
    }
}

/// Estimators by name.
pub struct EstimatorRegistry {
    entries: Vec<Box<dyn Estimator>>,
}

impl EstimatorRegistry {
    pub fn empty() -> Self {
        EstimatorRegistry { entries: Vec::new() }
    }

    /// Replaces any estimator of the same name.
    pub fn register(&mut self, e: Box<dyn Estimator>) {
        self.entries.retain(|x| x.name() != e.name());
        self.entries.push(e);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Estimator> {
        self.entries.iter().find(|e| e.name() == name).map(|e| e.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn lookup(&self, name: &str) -> Result<&dyn Estimator, CliError> {
        self.get(name)
            .ok_or_else(|| CliError::Usage(format!("unknown estimator {name:?}; known: {}", self.names().join(", "))))
    }
}

impl Default for EstimatorRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Analytic));
        r.register(Box::new(MonteCarlo));
        r.register(Box::new(Exact));
        r
    }
}
