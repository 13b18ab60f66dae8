//! Experiment configuration: defaults per experiment, a `key = value`
//! file format and command-line overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracles::{TimeBehavior, BENCHMARK_DELAY};
use crate::plan::{Method, SamplingStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentId {
    /// Step boundary data, samples chosen per output time.
    A,
    /// Step boundary data, one shared sample vector.
    B,
    /// `cos 4t` boundary data, shared samples.
    C,
    /// Step delayed to `t = 0.08`, shared samples.
    D,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 4] = [ExperimentId::A, ExperimentId::B, ExperimentId::C, ExperimentId::D];

    pub fn behavior(self) -> TimeBehavior {
        match self {
            ExperimentId::A | ExperimentId::B => TimeBehavior::Heaviside,
            ExperimentId::C => TimeBehavior::Cosine4t,
            ExperimentId::D => TimeBehavior::DelayedStep(BENCHMARK_DELAY),
        }
    }

    pub fn strategy(self) -> SamplingStrategy {
        match self {
            ExperimentId::A => SamplingStrategy::PerTimeOptimal,
            _ => SamplingStrategy::SharedGlobal,
        }
    }

    pub fn default_terms(self) -> usize {
        match self {
            ExperimentId::A => 9,
            _ => 51,
        }
    }

    pub fn default_methods(self) -> Vec<Method> {
        Method::ALL.into_iter().filter(|m| m.supports(self.strategy())).collect()
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentId::A => "A",
            ExperimentId::B => "B",
            ExperimentId::C => "C",
            ExperimentId::D => "D",
        })
    }
}

impl FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(ExperimentId::A),
            "B" | "b" => Ok(ExperimentId::B),
            "C" | "c" => Ok(ExperimentId::C),
            "D" | "d" => Ok(ExperimentId::D),
            other => Err(Error::InvalidArgument(format!("unknown experiment '{other}' (expected A, B, C or D)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    pub methods: Vec<Method>,
    /// Samples per group (per time for experiment A).
    pub terms: usize,
    pub n_times: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub observation: [f64; 2],
    /// Boundary elements per unit length.
    pub mesh_density: usize,
    pub diffusivity: f64,
    pub out: Option<PathBuf>,
    pub gnuplot: bool,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentId) -> Self {
        ExperimentConfig {
            experiment,
            methods: experiment.default_methods(),
            terms: experiment.default_terms(),
            n_times: 15,
            t_min: 0.01,
            t_max: 10.0,
            observation: [1.0 / 3.0, 1.0],
            mesh_density: 8,
            diffusivity: 1.0,
            out: None,
            gnuplot: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidArgument("no methods selected".into()));
        }
        let strategy = self.experiment.strategy();
        if let Some(m) = self.methods.iter().find(|m| !m.supports(strategy)) {
            return Err(Error::InvalidStrategy { method: *m, strategy });
        }
        if self.terms == 0 || self.n_times == 0 || self.mesh_density == 0 {
            return Err(Error::InvalidArgument("terms, times and mesh density must be >= 1".into()));
        }
        if !(self.t_min > 0.0 && self.t_min <= self.t_max && self.t_max.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad time range [{}, {}]", self.t_min, self.t_max)));
        }
        Ok(())
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::InvalidArgument(format!("invalid {what} '{value}'"));
        match key.trim().replace('-', "_").as_str() {
            "experiment" => {
                // Switching experiments resets the experiment-specific defaults.
                let id: ExperimentId = value.parse()?;
                if id != self.experiment {
                    self.experiment = id;
                    self.methods = id.default_methods();
                    self.terms = id.default_terms();
                }
            }
            "methods" => self.methods = parse_methods(value)?,
            "terms" => self.terms = value.trim().parse().map_err(|_| bad("terms"))?,
            "times" => self.n_times = value.trim().parse().map_err(|_| bad("times"))?,
            "t_range" => {
                let (a, b) = parse_pair(value).ok_or_else(|| bad("t-range"))?;
                self.t_min = a;
                self.t_max = b;
            }
            "t_min" => self.t_min = value.trim().parse().map_err(|_| bad("t_min"))?,
            "t_max" => self.t_max = value.trim().parse().map_err(|_| bad("t_max"))?,
            "x" => self.observation[0] = parse_number(value).ok_or_else(|| bad("x"))?,
            "y" => self.observation[1] = parse_number(value).ok_or_else(|| bad("y"))?,
            "mesh_density" => self.mesh_density = value.trim().parse().map_err(|_| bad("mesh density"))?,
            "diffusivity" => self.diffusivity = value.trim().parse().map_err(|_| bad("diffusivity"))?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "gnuplot" => self.gnuplot = parse_bool(value).ok_or_else(|| bad("gnuplot flag"))?,
            other => return Err(Error::InvalidArgument(format!("unknown setting '{other}'"))),
        }
        Ok(())
    }

    /// Parses a config file; `experiment` must come first if present.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config: Option<ExperimentConfig> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config { line: n + 1, message: format!("expected key = value, got '{line}'") })?;
            let cfg = config.get_or_insert_with(|| ExperimentConfig::new(ExperimentId::A));
            cfg.set(key, value).map_err(|e| Error::Config { line: n + 1, message: e.to_string() })?;
        }
        Ok(config.unwrap_or_else(|| ExperimentConfig::new(ExperimentId::A)))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

pub fn parse_methods(value: &str) -> Result<Vec<Method>> {
    if value.trim().eq_ignore_ascii_case("all") {
        return Ok(Method::ALL.to_vec());
    }
    value.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => Some(a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?),
        None => s.parse().ok(),
    }
}

fn parse_pair(s: &str) -> Option<(f64, f64)> {
    let (a, b) = s.split_once(',').or_else(|| s.split_once(':'))?;
    Some((parse_number(a)?, parse_number(b)?))
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Some(true),
        "0" | "false" | "no" | "off" => Some(false),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let a = ExperimentConfig::new(ExperimentId::A);
        assert_eq!(a.terms, 9);
        assert_eq!(a.methods.len(), 5);
        let b = ExperimentConfig::new(ExperimentId::B);
        assert_eq!(b.terms, 51);
        assert!(!b.methods.contains(&Method::Stehfest));
    }

    #[test]
    fn parses_files() {
        let cfg = ExperimentConfig::parse(
            "# shared samples\nexperiment = C\nmethods = dehoog, talbot\nterms = 41\nt_range = 0.1, 5\nx = 1/3\ngnuplot = yes\n",
        )
        .unwrap();
        assert_eq!(cfg.experiment, ExperimentId::C);
        assert_eq!(cfg.methods, vec![Method::DeHoog, Method::Talbot]);
        assert_eq!(cfg.terms, 41);
        assert_eq!((cfg.t_min, cfg.t_max), (0.1, 5.0));
        assert!((cfg.observation[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!(cfg.gnuplot);
    }

    #[test]
    fn reports_line_numbers() {
        match ExperimentConfig::parse("experiment = B\n\nterms = many\n") {
            Err(Error::Config { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(ExperimentConfig::parse("nonsense"), Err(Error::Config { line: 1, .. })));
    }

    #[test]
    fn stehfest_only_in_a() {
        let mut cfg = ExperimentConfig::new(ExperimentId::D);
        cfg.methods = vec![Method::Stehfest];
        assert!(matches!(cfg.validate(), Err(Error::InvalidStrategy { .. })));
        cfg.set("experiment", "A").unwrap();
        assert!(cfg.validate().is_ok());
    }
}
