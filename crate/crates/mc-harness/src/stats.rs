use std::io::Write;

use serde::{Deserialize, Serialize};

/// Class of a trial. Fusions end in one of the `fail_*` classes when only
/// one parity (or none, for `loss`) was recovered; `error` and `detected`
/// refine trials whose requested operators were all recovered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Error,
    Detected,
    FailX,
    FailY,
    FailZ,
    Loss,
}

impl Outcome {
    pub const ALL: [Outcome; 7] = [
        Outcome::Success,
        Outcome::Error,
        Outcome::Detected,
        Outcome::FailX,
        Outcome::FailY,
        Outcome::FailZ,
        Outcome::Loss,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::Error => "error",
            Outcome::Detected => "detected",
            Outcome::FailX => "fail_x",
            Outcome::FailY => "fail_y",
            Outcome::FailZ => "fail_z",
            Outcome::Loss => "loss",
        }
    }

    /// The requested operators were recovered (correctly or not).
    pub fn transmitted(self) -> bool {
        matches!(self, Outcome::Success | Outcome::Error | Outcome::Detected)
    }
}

/// One value per outcome class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ByOutcome<T> {
    pub success: T,
    pub error: T,
    pub detected: T,
    pub fail_x: T,
    pub fail_y: T,
    pub fail_z: T,
    pub loss: T,
}

impl<T: Copy> ByOutcome<T> {
    pub fn get(&self, o: Outcome) -> T {
        match o {
            Outcome::Success => self.success,
            Outcome::Error => self.error,
            Outcome::Detected => self.detected,
            Outcome::FailX => self.fail_x,
            Outcome::FailY => self.fail_y,
            Outcome::FailZ => self.fail_z,
            Outcome::Loss => self.loss,
        }
    }

    pub fn get_mut(&mut self, o: Outcome) -> &mut T {
        match o {
            Outcome::Success => &mut self.success,
            Outcome::Error => &mut self.error,
            Outcome::Detected => &mut self.detected,
            Outcome::FailX => &mut self.fail_x,
            Outcome::FailY => &mut self.fail_y,
            Outcome::FailZ => &mut self.fail_z,
            Outcome::Loss => &mut self.loss,
        }
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> ByOutcome<U> {
        ByOutcome {
            success: f(self.success),
            error: f(self.error),
            detected: f(self.detected),
            fail_x: f(self.fail_x),
            fail_y: f(self.fail_y),
            fail_z: f(self.fail_z),
            loss: f(self.loss),
        }
    }
}

impl ByOutcome<u64> {
    pub fn total(&self) -> u64 {
        Outcome::ALL.iter().map(|&o| self.get(o)).sum()
    }

    pub fn add(&mut self, other: &ByOutcome<u64>) {
        for o in Outcome::ALL {
            *self.get_mut(o) += other.get(o);
        }
    }
}

impl ByOutcome<f64> {
    pub fn total(&self) -> f64 {
        Outcome::ALL.iter().map(|&o| self.get(o)).sum()
    }

    pub fn transmitted(&self) -> f64 {
        self.success + self.error + self.detected
    }
}

/// Outcome counts of a batch of trials with rates and binomial standard errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalStats {
    pub n: usize,
    pub depth: usize,
    pub switch_layer: usize,
    pub eta: f64,
    pub lambda: f64,
    pub trials: u64,
    pub seed: u64,
    pub counts: ByOutcome<u64>,
    pub rates: ByOutcome<f64>,
    pub stderr: ByOutcome<f64>,
}

/// Binomial standard error of `k` successes in `n` trials.
pub fn binomial_stderr(k: u64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let p = k as f64 / n as f64;
    (p * (1.0 - p) / n as f64).sqrt()
}

impl EmpiricalStats {
    pub(crate) fn from_counts(cfg: &crate::TrialConfig, counts: ByOutcome<u64>) -> Self {
        debug_assert_eq!(counts.total(), cfg.trials);
        let n = cfg.trials;
        EmpiricalStats {
            n: cfg.spec.n,
            depth: cfg.spec.depth,
            switch_layer: cfg.spec.switch_layer,
            eta: cfg.eta,
            lambda: cfg.lambda,
            trials: n,
            seed: cfg.seed,
            counts,
            rates: counts.map(|k| k as f64 / n as f64),
            stderr: counts.map(|k| binomial_stderr(k, n)),
        }
    }

    pub fn transmitted(&self) -> u64 {
        self.counts.success + self.counts.error + self.counts.detected
    }

    pub fn transmission_rate(&self) -> (f64, f64) {
        let k = self.transmitted();
        (k as f64 / self.trials as f64, binomial_stderr(k, self.trials))
    }

    /// Undetected error rate among transmitted trials.
    pub fn error_rate(&self) -> (f64, f64) {
        self.conditional(self.counts.error)
    }

    /// Detection rate among transmitted trials.
    pub fn detection_rate(&self) -> (f64, f64) {
        self.conditional(self.counts.detected)
    }

    fn conditional(&self, k: u64) -> (f64, f64) {
        let n = self.transmitted();
        if n == 0 {
            return (0.0, 0.0);
        }
        (k as f64 / n as f64, binomial_stderr(k, n))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }

    pub const CSV_HEADER: [&'static str; 8] = ["depth", "eta", "lambda", "trials", "outcome", "count", "rate", "stderr"];

    /// One row per outcome class.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(Self::CSV_HEADER)?;
        for o in Outcome::ALL {
            out.write_record([
                self.depth.to_string(),
                self.eta.to_string(),
                self.lambda.to_string(),
                self.trials.to_string(),
                o.name().to_string(),
                self.counts.get(o).to_string(),
                self.rates.get(o).to_string(),
                self.stderr.get(o).to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}
