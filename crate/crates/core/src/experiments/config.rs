use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::chaos::LogBase;
use crate::classical::ClassicalOrbitMode;
use crate::error::{Error, Result};
use crate::numeric::{random_bitstring, BitString, RandomBitSource};

/// Stream of the seed used for the continuation digits in extended mode. The
/// initial string is drawn from stream 0.
pub const CONTINUATION_STREAM: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ClassicalModeKind {
    #[default]
    Truncated,
    Extended,
}

impl ClassicalModeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassicalModeKind::Truncated => "truncated",
            ClassicalModeKind::Extended => "extended",
        }
    }
}

impl std::str::FromStr for ClassicalModeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "truncated" => Ok(ClassicalModeKind::Truncated),
            "extended" => Ok(ClassicalModeKind::Extended),
            other => Err(Error::Config(format!(
                "classical mode must be truncated or extended, got {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "format must be csv or json, got {other:?}"
            ))),
        }
    }
}

/// Parameters of an orbit or chaos-degree run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_qubits: usize,
    pub seed: u64,
    /// Last time step `n_max`.
    pub steps: u64,
    pub window: usize,
    pub bins: usize,
    pub log_base: LogBase,
    pub classical_mode: ClassicalModeKind,
    pub n_sweep: Vec<usize>,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub gnuplot: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_qubits: 500,
            seed: 0,
            steps: 1000,
            window: 100,
            bins: 100,
            log_base: LogBase::Two,
            classical_mode: ClassicalModeKind::Truncated,
            n_sweep: vec![100, 300, 500, 700],
            out_dir: PathBuf::from("out"),
            format: OutputFormat::Csv,
            gnuplot: false,
        }
    }
}

/// Values given on the command line; each one replaces the file value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigOverrides {
    pub n_qubits: Option<usize>,
    pub seed: Option<u64>,
    pub steps: Option<u64>,
    pub window: Option<usize>,
    pub bins: Option<usize>,
    pub log_base: Option<LogBase>,
    pub classical_mode: Option<ClassicalModeKind>,
    pub n_sweep: Option<Vec<usize>>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub gnuplot: bool,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// File (or defaults) first, then the overrides.
    pub fn load(path: Option<&Path>, overrides: &ConfigOverrides) -> Result<Self> {
        let mut config = match path {
            Some(p) => Self::from_file(p)?,
            None => Self::default(),
        };
        config.apply(overrides);
        Ok(config)
    }

    pub fn apply(&mut self, o: &ConfigOverrides) {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = &o.$field {
                    self.$field = v.clone();
                })*
            };
        }
        take!(
            n_qubits,
            seed,
            steps,
            window,
            bins,
            log_base,
            classical_mode,
            n_sweep,
            out_dir,
            format
        );
        self.gnuplot |= o.gnuplot;
    }

    /// Requirements shared by every run.
    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 {
            return Err(Error::Config("n_qubits must be at least 1".into()));
        }
        if self.n_sweep.contains(&0) {
            return Err(Error::Config(
                "every n_sweep entry must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Additional requirements of the chaos-degree runs: `n_max ≥ W ≥ 1`,
    /// `K ≥ 2`, and a non-empty sweep.
    pub fn validate_chaos(&self) -> Result<()> {
        self.validate()?;
        if self.window == 0 {
            return Err(Error::Config("window must be at least 1".into()));
        }
        if self.steps < self.window as u64 {
            return Err(Error::Config(format!(
                "steps ({}) must be at least the window ({})",
                self.steps, self.window
            )));
        }
        if self.bins < 2 {
            return Err(Error::Config("bins must be at least 2".into()));
        }
        if self.n_sweep.is_empty() {
            return Err(Error::Config("n_sweep must not be empty".into()));
        }
        Ok(())
    }

    /// The seeded initial string on `n` qubits.
    pub fn initial_string(&self, n: usize) -> Result<BitString> {
        random_bitstring(n, &mut RandomBitSource::new(self.seed))
    }

    pub fn classical_orbit_mode(&self) -> ClassicalOrbitMode {
        match self.classical_mode {
            ClassicalModeKind::Truncated => ClassicalOrbitMode::Truncated,
            ClassicalModeKind::Extended => ClassicalOrbitMode::Extended(
                RandomBitSource::with_stream(self.seed, CONTINUATION_STREAM),
            ),
        }
    }

    /// `key = value` lines for every parameter that affects computed values.
    /// The output location is left out so the files do not depend on it.
    pub fn header_lines(&self) -> Vec<String> {
        let sweep: Vec<String> = self.n_sweep.iter().map(ToString::to_string).collect();
        vec![
            format!("n_qubits = {}", self.n_qubits),
            format!("seed = {}", self.seed),
            format!("steps = {}", self.steps),
            format!("window = {}", self.window),
            format!("bins = {}", self.bins),
            format!("log_base = {}", self.log_base),
            format!("classical_mode = {}", self.classical_mode.as_str()),
            format!("n_sweep = [{}]", sweep.join(", ")),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip_and_partial_files() {
        let cfg = ExperimentConfig::from_toml_str(
            "n_qubits = 12\nlog_base = \"e\"\nclassical_mode = \"extended\"\n",
        )
        .unwrap();
        assert_eq!(cfg.n_qubits, 12);
        assert_eq!(cfg.log_base, LogBase::E);
        assert_eq!(cfg.classical_mode, ClassicalModeKind::Extended);
        assert_eq!(cfg.window, 100);
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_toml_str(&text).unwrap(), cfg);
        assert!(ExperimentConfig::from_toml_str("qubits = 3").is_err());
    }

    #[test]
    fn overrides_win() {
        let file = ExperimentConfig::from_toml_str("seed = 4\nsteps = 50").unwrap();
        let mut cfg = file.clone();
        cfg.apply(&ConfigOverrides {
            seed: Some(9),
            ..Default::default()
        });
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.steps, 50);
    }

    #[test]
    fn validation() {
        let ok = ExperimentConfig::default();
        ok.validate_chaos().unwrap();
        let bad = |f: fn(&mut ExperimentConfig)| {
            let mut c = ExperimentConfig::default();
            f(&mut c);
            c.validate_chaos().is_err()
        };
        assert!(bad(|c| c.n_qubits = 0));
        assert!(bad(|c| c.window = 0));
        assert!(bad(|c| c.steps = 10));
        assert!(bad(|c| c.bins = 1));
        assert!(bad(|c| c.n_sweep = vec![]));
        assert!(bad(|c| c.n_sweep = vec![10, 0]));
        let single_step = ExperimentConfig {
            steps: 0,
            ..Default::default()
        };
        single_step.validate().unwrap();
    }

    #[test]
    fn initial_string_is_seeded() {
        let cfg = ExperimentConfig::default();
        assert_eq!(
            cfg.initial_string(40).unwrap(),
            cfg.initial_string(40).unwrap()
        );
        let other = ExperimentConfig {
            seed: 1,
            ..cfg.clone()
        };
        assert_ne!(
            cfg.initial_string(64).unwrap(),
            other.initial_string(64).unwrap()
        );
    }
}
