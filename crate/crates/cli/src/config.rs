use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::args::{
    Command, Format, FtFusionArgs, FusionSuccessArgs, GlobalArgs, OptimizeArgs, Overlay, PauliStatsArgs,
    ResourcesArgs, TrialArgs,
};
use crate::CliError;

pub const CONFIG_VERSION: u32 = 1;

/// File form of a run: global options plus one optional section per command.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub fusion_success: Option<FusionSuccessArgs>,
    #[serde(default)]
    pub pauli_stats: Option<PauliStatsArgs>,
    #[serde(default)]
    pub ft_fusion: Option<FtFusionArgs>,
    #[serde(default)]
    pub simulate: Option<TrialArgs>,
    #[serde(default)]
    pub estimate: Option<TrialArgs>,
    #[serde(default)]
    pub optimize: Option<OptimizeArgs>,
    #[serde(default)]
    pub resources: Option<ResourcesArgs>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        if cfg.version != CONFIG_VERSION {
            return Err(CliError::Usage(format!(
                "config version {} unsupported (expected {CONFIG_VERSION})",
                cfg.version
            )));
        }
        Ok(cfg)
    }

    /// Fills unset flags from this configuration.
    pub fn apply(&self, global: &mut GlobalArgs, command: &mut Command) {
        global.format = global.format.or(self.format);
        if global.out.is_none() {
            global.out.clone_from(&self.out);
        }
        global.seed = global.seed.or(self.seed);
        global.threads = global.threads.or(self.threads);
        fn fill<T: Overlay>(flags: &mut T, file: &Option<T>) {
            if let Some(f) = file {
                flags.overlay(f);
            }
        }
        match command {
            Command::FusionSuccess(a) => fill(a, &self.fusion_success),
            Command::PauliStats(a) => fill(a, &self.pauli_stats),
            Command::FtFusion(a) => fill(a, &self.ft_fusion),
            Command::Simulate(a) => fill(a, &self.simulate),
            Command::Estimate(a) => fill(a, &self.estimate),
            Command::Optimize(a) => fill(a, &self.optimize),
            Command::Resources(a) => fill(a, &self.resources),
        }
    }
}
