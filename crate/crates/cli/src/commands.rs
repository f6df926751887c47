use analytics::{concat_fusion_distribution, ft_fusion_stats, pauli_meas_stats};
use mc_harness::{simulate, EmpiricalStats, Mode, TrialConfig};
use optimizer::{sweep, write_csv, Fibre, SearchBounds};
use repeater_rates::TimingParams;
use ring_codes::{generation_sequence, line_generation_sequence, resource_counts, GenerationSequence, RingCodeSpec};
use serde_json::{json, Value};

use crate::args::{
    Format, FtFusionArgs, FusionSuccessArgs, ModeArg, OptimizeArgs, PauliStatsArgs, ResourcesArgs, TrialArgs,
};
use crate::estimator::{Estimate, EstimatorRegistry, Query};
use crate::grid::{linspace, Grid};
use crate::table::Table;
use crate::CliError;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Rendered result of a command.
pub struct Output {
    pub default_format: Format,
    pub json: Value,
    pub csv: Option<Vec<u8>>,
}

impl Output {
    fn table(t: Table) -> Result<Self, CliError> {
        Ok(Output { default_format: Format::Csv, json: t.to_json(), csv: Some(t.to_csv()?) })
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn unit(name: &str, x: f64) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(usage(format!("{name} = {x} outside [0, 1]")))
    }
}

fn grid(name: &str, g: Option<Grid>, default: &str) -> Result<Vec<f64>, CliError> {
    let g = match g {
        Some(g) => g,
        None => default.parse().map_err(usage)?,
    };
    if g.0.is_empty() {
        return Err(usage(format!("{name} is empty")));
    }
    Ok(g.0)
}

fn ring_n(n: Option<usize>) -> Result<usize, CliError> {
    match n.unwrap_or(4) {
        4 => Ok(4),
        n => Err(usage(format!("analytic statistics need n = 4, got {n}"))),
    }
}

pub fn fusion_success(a: FusionSuccessArgs) -> Result<Output, CliError> {
    ring_n(a.n)?;
    let depth = a.depth.unwrap_or(5);
    let (lo, hi) = (unit("eta_min", a.eta_min.unwrap_or(0.0))?, unit("eta_max", a.eta_max.unwrap_or(1.0))?);
    let steps = a.steps.unwrap_or(100);
    if depth < 1 || steps < 1 || lo > hi {
        return Err(usage("need depth >= 1, steps >= 1 and eta_min <= eta_max"));
    }
    let mut t = Table::new(&["depth", "eta", "loss", "p_success", "p_x", "p_y", "p_z", "p_loss", "standard_fusion"]);
    for d in 1..=depth {
        for eta in linspace(lo, hi, steps) {
            let f = concat_fusion_distribution(eta, d)?;
            t.push(vec![
                d.into(),
                eta.into(),
                (1.0 - eta).into(),
                f.p_s.into(),
                f.p_x.into(),
                f.p_y.into(),
                f.p_z.into(),
                f.p_l.into(),
                (eta * eta / 2.0).into(),
            ]);
        }
    }
    Output::table(t)
}

pub fn pauli_stats(a: PauliStatsArgs) -> Result<Output, CliError> {
    let depth = a.depth.unwrap_or(1);
    let etas = grid("eta_grid", a.eta_grid, "0.7:1:31")?;
    let lambdas = grid("lambda_grid", a.lambda_grid, "0:0.05:11")?;
    let mut t = Table::new(&["depth", "eta", "lambda", "eta_bar", "eps", "eps_d", "zeta", "conditional_error"]);
    for &eta in &etas {
        for &lambda in &lambdas {
            let s = pauli_meas_stats(eta, lambda, depth)?;
            t.push(vec![
                depth.into(),
                eta.into(),
                lambda.into(),
                s.eta_bar.into(),
                s.eps.into(),
                s.eps_d.into(),
                s.zeta.into(),
                s.conditional_error().into(),
            ]);
        }
    }
    Output::table(t)
}

pub fn ft_fusion(a: FtFusionArgs) -> Result<Output, CliError> {
    let depth = a.depth.unwrap_or(8);
    let sw = a.switch_layer.unwrap_or(3.min(depth));
    let etas = grid("eta_grid", a.eta_grid, "0.7:1:31")?;
    let lambdas = grid("lambda_grid", a.lambda_grid, "0:0.05:11")?;
    let mut t = Table::new(&[
        "depth",
        "switch_layer",
        "eta",
        "lambda",
        "p_s",
        "eps",
        "eps_d",
        "zeta",
        "conditional_error",
    ]);
    for &eta in &etas {
        for &lambda in &lambdas {
            let s = ft_fusion_stats(eta, lambda, depth, sw)?;
            t.push(vec![
                depth.into(),
                sw.into(),
                eta.into(),
                lambda.into(),
                s.p_s.into(),
                s.eps.into(),
                s.eps_d.into(),
                s.zeta.into(),
                s.conditional_error().into(),
            ]);
        }
    }
    Output::table(t)
}

fn query(a: &TrialArgs, seed: Option<u64>) -> Result<Query, CliError> {
    let depth = a.depth.unwrap_or(1);
    let spec = RingCodeSpec::new(a.n.unwrap_or(4), depth, a.switch_layer.unwrap_or(depth))?;
    let mode = match a.mode.unwrap_or(ModeArg::Fusion) {
        ModeArg::Fusion => Mode::Fusion,
        ModeArg::Pauli => Mode::Pauli(a.basis.map_or(ring_codes::Basis::X, Into::into)),
    };
    let trials = a.trials.unwrap_or(100_000);
    if trials == 0 {
        return Err(usage("trials must be at least 1"));
    }
    Ok(Query {
        spec,
        eta: unit("eta", a.eta.unwrap_or(1.0))?,
        lambda: unit("lambda", a.lambda.unwrap_or(0.0))?,
        mode,
        trials,
        seed: seed.unwrap_or(DEFAULT_SEED),
    })
}

fn mode_json(mode: Mode) -> Value {
    match mode {
        Mode::Fusion => json!({ "mode": "fusion" }),
        Mode::Pauli(b) => json!({ "mode": "pauli", "basis": format!("{b:?}").to_lowercase() }),
    }
}

/// Signed distance in binomial standard deviations at the reference value;
/// `None` when the reference is deterministic and missed.
fn sigma(empirical: f64, reference: f64, n: u64) -> Option<f64> {
    let sd = (reference * (1.0 - reference) / n as f64).sqrt();
    if sd > 0.0 {
        Some((empirical - reference) / sd)
    } else if (empirical - reference).abs() < 1e-15 {
        Some(0.0)
    } else {
        None
    }
}

fn comparison(stats: &EmpiricalStats, reference: &Estimate) -> Value {
    let (t, ts) = stats.transmission_rate();
    let (e, es) = stats.error_rate();
    let (d, ds) = stats.detection_rate();
    let kept = stats.transmitted().max(1);
    let row = |name: &str, emp: f64, se: f64, r: f64, n: u64| {
        json!({ "statistic": name, "empirical": emp, "stderr": se, "reference": r, "sigma": sigma(emp, r, n) })
    };
    json!([
        row("transmitted", t, ts, reference.transmitted, stats.trials),
        row("error", e, es, reference.error, kept),
        row("detected", d, ds, reference.detected, kept),
    ])
}

pub fn simulate_cmd(a: TrialArgs, seed: Option<u64>, registry: &EstimatorRegistry) -> Result<Output, CliError> {
    let q = query(&a, seed)?;
    let reference = registry.lookup(a.estimator.as_deref().unwrap_or("analytic"))?;
    let cfg = TrialConfig { spec: q.spec, eta: q.eta, lambda: q.lambda, trials: q.trials, seed: q.seed };
    let stats = simulate(&cfg, q.mode)?;
    let r = reference.estimate(&q)?;
    let mut csv = Vec::new();
    stats.write_csv(&mut csv)?;
    let json = json!({
        "operation": mode_json(q.mode),
        "stats": stats,
        "reference": r,
        "comparison": comparison(&stats, &r),
    });
    Ok(Output { default_format: Format::Json, json, csv: Some(csv) })
}

pub fn estimate_cmd(a: TrialArgs, seed: Option<u64>, registry: &EstimatorRegistry) -> Result<Output, CliError> {
    let q = query(&a, seed)?;
    let e = registry.lookup(a.estimator.as_deref().unwrap_or("analytic"))?.estimate(&q)?;
    let mut t = Table::new(&["estimator", "n", "depth", "switch_layer", "eta", "lambda", "transmitted", "error", "detected"]);
    t.push(vec![
        e.estimator.into(),
        q.spec.n.into(),
        q.spec.depth.into(),
        q.spec.switch_layer.into(),
        q.eta.into(),
        q.lambda.into(),
        e.transmitted.into(),
        e.error.into(),
        e.detected.into(),
    ]);
    let json = json!({ "operation": mode_json(q.mode), "spec": q.spec, "estimate": e });
    Ok(Output { default_format: Format::Json, json, csv: Some(t.to_csv()?) })
}

pub fn optimize_cmd(a: OptimizeArgs) -> Result<Output, CliError> {
    let ls = match a.l_grid {
        Some(g) if g.0.is_empty() => return Err(usage("distance grid is empty")),
        g => grid("l_grid", g, "100,200,500,1000,2000,5000,10000")?,
    };
    let lambdas = grid("lambda_list", a.lambda_list, "0.0015")?;
    let timing = TimingParams::new(a.tau_gen.unwrap_or(1.0), a.tau_cz.unwrap_or(10.0), a.tau_m.unwrap_or(10.0))?;
    let fibre = Fibre { eta_d: a.eta_d.unwrap_or(0.95), l_att_km: a.l_att.unwrap_or(20.0) };
    let defaults = SearchBounds::default();
    let bounds = SearchBounds {
        n_max: a.n_max.unwrap_or(defaults.n_max),
        l0_min_km: a.l0_min.unwrap_or(defaults.l0_min_km),
        m_max: a.m_max,
        ..defaults
    };
    let results = sweep(&ls, &lambdas, &fibre, &timing, &bounds)?;
    let mut csv = Vec::new();
    write_csv(&results, &mut csv)?;
    let json = json!({ "timing_ns": timing, "fibre": fibre, "bounds": bounds, "results": results });
    Ok(Output { default_format: Format::Csv, json, csv: Some(csv) })
}

fn sequence_summary(s: &GenerationSequence) -> Value {
    let c = s.counts();
    json!({
        "cz": c.cz,
        "measurements": c.measurements,
        "photons": c.photons,
        "hadamards": c.hadamards,
        "num_spins": s.num_spins,
        "num_records": s.num_records,
        "ops": s.ops.len(),
    })
}

pub fn resources(a: ResourcesArgs) -> Result<Output, CliError> {
    let spec = RingCodeSpec::loss_only(a.n.unwrap_or(4), a.depth.unwrap_or(2))?;
    let c = resource_counts(&spec);
    let seq = generation_sequence(&spec)?;
    let line = line_generation_sequence(&spec)?;
    let mut json = json!({
        "n": spec.n,
        "depth": spec.depth,
        "counts": c,
        "sequence": sequence_summary(&seq),
        "line_sequence": sequence_summary(&line),
    });
    if a.sequence.unwrap_or(false) {
        json["ops"] = serde_json::to_value(&seq.ops).expect("ops serialize");
    }
    let mut t = Table::new(&["n", "depth", "cz", "measurements", "photons"]);
    t.push(vec![spec.n.into(), spec.depth.into(), c.cz.into(), c.measurements.into(), c.photons.into()]);
    Ok(Output { default_format: Format::Json, json, csv: Some(t.to_csv()?) })
}
