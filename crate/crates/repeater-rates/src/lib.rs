//! Figures of merit of a one-way ring-code repeater chain.

use analytics::{ft_fusion_stats, AnalyticsError};
use ring_codes::{resource_counts, CodeError, RingCodeSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest allowed station spacing (km).
pub const MIN_SPACING_KM: f64 = 1.0;

#[derive(Debug, Error)]
pub enum RateError {
    #[error("{0}")]
    InvalidParams(String),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Chain of `m` equally spaced stations over `l_km`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub l_km: f64,
    pub m: u64,
    pub eta_d: f64,
    pub l_att_km: f64,
}

impl ChannelParams {
    pub fn new(l_km: f64, m: u64, eta_d: f64, l_att_km: f64) -> Result<Self, RateError> {
        let c = ChannelParams { l_km, m, eta_d, l_att_km };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), RateError> {
        if !(self.l_km.is_finite() && self.l_km > 0.0) {
            return Err(RateError::InvalidParams(format!("distance {} km must be positive", self.l_km)));
        }
        if !(self.l_att_km.is_finite() && self.l_att_km > 0.0) {
            return Err(RateError::InvalidParams(format!("attenuation length {} km must be positive", self.l_att_km)));
        }
        if !(self.eta_d > 0.0 && self.eta_d <= 1.0) {
            return Err(RateError::InvalidParams(format!("eta_d = {} outside (0, 1]", self.eta_d)));
        }
        if self.l0_km() < MIN_SPACING_KM {
            return Err(RateError::InvalidParams(format!(
                "station spacing {} km below {MIN_SPACING_KM} km",
                self.l0_km()
            )));
        }
        Ok(())
    }

    pub fn l0_km(&self) -> f64 {
        self.l_km / (self.m + 1) as f64
    }

    /// Fibre transmission of one link.
    pub fn eta_t(&self) -> f64 {
        (-self.l0_km() / self.l_att_km).exp()
    }

    /// Per-photon transmission of one link including detection.
    pub fn eta(&self) -> f64 {
        self.eta_t() * self.eta_d
    }
}

/// Gate and emission times in ns.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingParams {
    pub tau_gen: f64,
    pub tau_cz: f64,
    pub tau_m: f64,
}

impl TimingParams {
    pub fn new(tau_gen: f64, tau_cz: f64, tau_m: f64) -> Result<Self, RateError> {
        let t = TimingParams { tau_gen, tau_cz, tau_m };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), RateError> {
        for (name, v) in [("tau_gen", self.tau_gen), ("tau_cz", self.tau_cz), ("tau_m", self.tau_m)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(RateError::InvalidParams(format!("{name} = {v} ns must be positive")));
            }
        }
        Ok(())
    }
}

/// Rate of one chain configuration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub r_hz: f64,
    pub q: f64,
    pub mu: f64,
    pub p_b: f64,
    pub tau0_s: f64,
    pub m: u64,
    pub depth: usize,
    pub switch_layer: usize,
    pub n_e: usize,
    pub l0_km: f64,
    pub eta: f64,
    pub p_s: f64,
    pub eps_s: f64,
    pub eps_d: f64,
}

impl RateReport {
    pub const CSV_HEADER: [&'static str; 14] = [
        "R_hz", "q", "mu", "P_B", "tau0_s", "m", "N", "Ntilde", "NE", "L0_km", "eta", "p_s", "eps_s", "eps_d",
    ];

    pub fn csv_row(&self) -> [String; 14] {
        [
            self.r_hz.to_string(),
            self.q.to_string(),
            self.mu.to_string(),
            self.p_b.to_string(),
            self.tau0_s.to_string(),
            self.m.to_string(),
            self.depth.to_string(),
            self.switch_layer.to_string(),
            self.n_e.to_string(),
            self.l0_km.to_string(),
            self.eta.to_string(),
            self.p_s.to_string(),
            self.eps_s.to_string(),
            self.eps_d.to_string(),
        ]
    }
}

fn check_prob(name: &str, p: f64) -> Result<(), RateError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(RateError::InvalidParams(format!("{name} = {p} outside [0, 1]")))
    }
}

/// Probability that all `m + 1` links succeed.
pub fn bell_probability(p_s_link: f64, m: u64) -> f64 {
    p_s_link.powf((m + 1) as f64)
}

fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

/// Six-state secret fraction, clamped at 0.
pub fn secret_fraction(q: f64) -> Result<f64, RateError> {
    if !(0.0..1.0).contains(&q) {
        return Err(RateError::InvalidParams(format!("q = {q} outside [0, 1)")));
    }
    let inner = ((1.0 - 1.5 * q) / (1.0 - q)).clamp(0.0, 1.0);
    let mu = 1.0 - binary_entropy(q) - q - (1.0 - q) * binary_entropy(inner);
    Ok(mu.max(0.0))
}

/// Bell-pair error after `m + 1` independent links.
pub fn end_to_end_error(eps_s: f64, m: u64) -> f64 {
    1.0 - (1.0 - eps_s).powf((m + 1) as f64)
}

/// Time to generate one station's line of two code blocks, in seconds.
/// The join costs a Hadamard at the CZ time, two CZ and one measurement.
pub fn generation_time(spec: &RingCodeSpec, timing: &TimingParams) -> Result<f64, RateError> {
    spec.validate()?;
    timing.validate()?;
    let c = resource_counts(spec);
    let block = c.photons as f64 * timing.tau_gen + c.cz as f64 * timing.tau_cz + c.measurements as f64 * timing.tau_m;
    let join = 3.0 * timing.tau_cz + timing.tau_m;
    Ok((2.0 * block + join) * 1e-9)
}

fn rate(channel: &ChannelParams, timing: &TimingParams, spec: &RingCodeSpec, lambda: f64, detect: bool) -> Result<RateReport, RateError> {
    channel.validate()?;
    let eta = channel.eta();
    let ft = ft_fusion_stats(eta, lambda, spec.depth, spec.switch_layer)?;
    let tau0 = generation_time(spec, timing)?;
    let m = channel.m;
    let p_b = bell_probability(ft.p_s, m);
    let q = end_to_end_error(ft.eps, m);
    // Fully randomised pairs carry no key.
    let mu = if q < 1.0 { secret_fraction(q)? } else { 0.0 };
    let kept = if detect { (1.0 - ft.eps_d).powf((m + 1) as f64) } else { 1.0 };
    Ok(RateReport {
        r_hz: kept * mu * p_b / tau0,
        q,
        mu,
        p_b,
        tau0_s: tau0,
        m,
        depth: spec.depth,
        switch_layer: spec.switch_layer,
        n_e: spec.depth + 1,
        l0_km: channel.l0_km(),
        eta,
        p_s: ft.p_s,
        eps_s: ft.eps,
        eps_d: ft.eps_d,
    })
}

/// Secret key rate with detected errors discarded at every link.
pub fn ring_rate(
    channel: &ChannelParams,
    timing: &TimingParams,
    spec: &RingCodeSpec,
    lambda: f64,
) -> Result<RateReport, RateError> {
    check_prob("lambda", lambda)?;
    rate(channel, timing, spec, lambda, true)
}

/// Secret key rate that ignores error detection.
pub fn standard_rate(
    channel: &ChannelParams,
    timing: &TimingParams,
    spec: &RingCodeSpec,
    lambda: f64,
) -> Result<RateReport, RateError> {
    check_prob("lambda", lambda)?;
    rate(channel, timing, spec, lambda, false)
}
