//! Exhaustive search over station count and code shape for the cheapest
//! repeater chain.

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;
use repeater_rates::{ring_rate, ChannelParams, RateError, RateReport, TimingParams, MIN_SPACING_KM};
use ring_codes::RingCodeSpec;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OptimizerError {
    #[error("{0}")]
    InvalidBounds(String),
    #[error(transparent)]
    Rate(#[from] RateError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Detector efficiency and attenuation length shared by every link.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fibre {
    pub eta_d: f64,
    pub l_att_km: f64,
}

impl Default for Fibre {
    fn default() -> Self {
        Fibre { eta_d: 0.95, l_att_km: 20.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub ring_size: usize,
    pub n_max: usize,
    pub l0_min_km: f64,
    /// Cap on the station count; `None` allows every spacing above `l0_min_km`.
    pub m_max: Option<u64>,
    pub switch_min: usize,
    /// Cap on the switch layer; `None` allows up to the depth.
    pub switch_max: Option<usize>,
    pub keep_trace: bool,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            ring_size: 4,
            n_max: 7,
            l0_min_km: MIN_SPACING_KM,
            m_max: None,
            switch_min: 1,
            switch_max: None,
            keep_trace: false,
        }
    }
}

impl SearchBounds {
    pub fn validate(&self) -> Result<(), OptimizerError> {
        let bad = |s: String| Err(OptimizerError::InvalidBounds(s));
        if self.ring_size < 3 {
            return bad(format!("ring size {} < 3", self.ring_size));
        }
        if self.n_max < 1 {
            return bad("n_max must be at least 1".into());
        }
        if !(self.l0_min_km >= MIN_SPACING_KM && self.l0_min_km.is_finite()) {
            return bad(format!("l0_min = {} km below {MIN_SPACING_KM} km", self.l0_min_km));
        }
        if self.switch_min < 1 || self.switch_max.is_some_and(|s| s < self.switch_min) {
            return bad(format!("switch range {}..={:?} is empty", self.switch_min, self.switch_max));
        }
        Ok(())
    }

    /// Station counts searched at distance `l_km`. The cost vanishes for a
    /// direct link whatever its rate, so `m = 0` is only searched when no
    /// station fits.
    pub fn m_range(&self, l_km: f64) -> Option<(u64, u64)> {
        let fit = (l_km / self.l0_min_km).floor();
        if !(fit >= 1.0) {
            return None;
        }
        let m = self.m_max.map_or(fit as u64 - 1, |cap| (fit as u64 - 1).min(cap));
        Some((m.min(1), m))
    }

    fn shapes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for depth in 1..=self.n_max {
            let hi = self.switch_max.map_or(depth, |s| s.min(depth));
            for sw in self.switch_min..=hi {
                out.push((depth, sw));
            }
        }
        out
    }
}

/// Cost per secret bit in matter-qubit-station units; infinite when no key
/// is produced.
pub fn cost(report: &RateReport, channel: &ChannelParams, timing: &TimingParams) -> f64 {
    if report.r_hz <= 0.0 {
        return f64::INFINITY;
    }
    let tau_gen = timing.tau_gen * 1e-9;
    (report.n_e as f64 * report.m as f64 * channel.l_att_km) / (report.r_hz * tau_gen * channel.l_km)
}

/// One evaluated configuration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub report: RateReport,
    pub cost: f64,
}

impl GridPoint {
    /// Total order: cost, then smaller depth, smaller m, larger switch layer.
    pub fn rank(&self, other: &GridPoint) -> Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then(self.report.depth.cmp(&other.report.depth))
            .then(self.report.m.cmp(&other.report.m))
            .then(other.report.switch_layer.cmp(&self.report.switch_layer))
    }

    pub fn feasible(&self) -> bool {
        self.cost.is_finite()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub l_km: f64,
    pub lambda: f64,
    /// `None` when no configuration yields a positive rate.
    pub best: Option<GridPoint>,
    pub evaluated: usize,
    pub trace: Vec<GridPoint>,
}

impl OptimizationResult {
    pub fn cost(&self) -> f64 {
        self.best.map_or(f64::INFINITY, |b| b.cost)
    }

    pub fn feasible(&self) -> bool {
        self.best.is_some()
    }
}

/// Evaluates one configuration.
pub fn evaluate(
    l_km: f64,
    m: u64,
    spec: &RingCodeSpec,
    lambda: f64,
    fibre: &Fibre,
    timing: &TimingParams,
) -> Result<GridPoint, OptimizerError> {
    let channel = ChannelParams::new(l_km, m, fibre.eta_d, fibre.l_att_km)?;
    let report = ring_rate(&channel, timing, spec, lambda)?;
    Ok(GridPoint { cost: cost(&report, &channel, timing), report })
}

/// Every configuration within the bounds at one distance.
pub fn evaluate_grid(
    l_km: f64,
    lambda: f64,
    fibre: &Fibre,
    timing: &TimingParams,
    bounds: &SearchBounds,
) -> Result<Vec<GridPoint>, OptimizerError> {
    bounds.validate()?;
    timing.validate()?;
    let Some((m_lo, m_hi)) = bounds.m_range(l_km) else {
        return Ok(Vec::new());
    };
    let specs: Vec<RingCodeSpec> = bounds
        .shapes()
        .into_iter()
        .map(|(d, s)| RingCodeSpec::new(bounds.ring_size, d, s))
        .collect::<Result<_, _>>()
        .map_err(RateError::from)?;
    specs
        .par_iter()
        .flat_map(|spec| (m_lo..=m_hi).into_par_iter().map(move |m| evaluate(l_km, m, spec, lambda, fibre, timing)))
        .collect()
}

/// Minimum-cost configuration at one distance.
pub fn optimize(
    l_km: f64,
    lambda: f64,
    fibre: &Fibre,
    timing: &TimingParams,
    bounds: &SearchBounds,
) -> Result<OptimizationResult, OptimizerError> {
    let grid = evaluate_grid(l_km, lambda, fibre, timing, bounds)?;
    let best = grid.iter().filter(|p| p.feasible()).min_by(|a, b| a.rank(b)).copied();
    Ok(OptimizationResult {
        l_km,
        lambda,
        best,
        evaluated: grid.len(),
        trace: if bounds.keep_trace { grid } else { Vec::new() },
    })
}

/// One optimization per (distance, noise) cell, distances outermost.
pub fn sweep(
    l_list: &[f64],
    lambda_list: &[f64],
    fibre: &Fibre,
    timing: &TimingParams,
    bounds: &SearchBounds,
) -> Result<Vec<OptimizationResult>, OptimizerError> {
    if l_list.is_empty() || lambda_list.is_empty() {
        return Err(OptimizerError::InvalidBounds("empty distance or noise list".into()));
    }
    let mut out = Vec::with_capacity(l_list.len() * lambda_list.len());
    for &l in l_list {
        for &lambda in lambda_list {
            out.push(optimize(l, lambda, fibre, timing, bounds)?);
        }
    }
    Ok(out)
}

pub const CSV_HEADER: [&str; 13] =
    ["L_km", "lambda", "m", "N", "Ntilde", "L0_km", "R_hz", "q", "mu", "eps_d", "tau0_s", "NE", "cost"];

/// One row per result; infeasible cells leave the configuration blank.
pub fn write_csv<W: Write>(results: &[OptimizationResult], w: W) -> Result<(), OptimizerError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for res in results {
        let mut row = vec![res.l_km.to_string(), res.lambda.to_string()];
        match res.best {
            Some(GridPoint { report: r, cost }) => row.extend([
                r.m.to_string(),
                r.depth.to_string(),
                r.switch_layer.to_string(),
                r.l0_km.to_string(),
                r.r_hz.to_string(),
                r.q.to_string(),
                r.mu.to_string(),
                r.eps_d.to_string(),
                r.tau0_s.to_string(),
                r.n_e.to_string(),
                cost.to_string(),
            ]),
            None => {
                row.extend(std::iter::repeat(String::new()).take(4));
                row.push("0".into());
                row.extend(std::iter::repeat(String::new()).take(5));
                row.push("inf".into());
            }
        }
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}
