//! Experiment configuration: a flat `key = value` file merged with
//! command-line overrides.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Parser;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Purify,
    Teleport,
    Twirl,
    Bounds,
    Share,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Purify => "purify",
            Command::Teleport => "teleport",
            Command::Twirl => "twirl",
            Command::Bounds => "bounds",
            Command::Share => "share",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "purify" => Ok(Command::Purify),
            "teleport" => Ok(Command::Teleport),
            "twirl" => Ok(Command::Twirl),
            "bounds" => Ok(Command::Bounds),
            "share" => Ok(Command::Share),
            other => Err(CliError::Config(format!("unknown command `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Fully resolved settings for one run. List-valued fields form a grid;
/// empty lists fall back to per-command defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub seed: u64,
    pub trials: Option<u64>,
    pub code: String,
    pub p: Vec<f64>,
    pub d: Vec<usize>,
    pub fidelity: Vec<f64>,
    pub m: Vec<usize>,
    pub n: Vec<usize>,
    pub eps: Vec<f64>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            seed: 0,
            trials: None,
            code: "steane".into(),
            p: Vec::new(),
            d: Vec::new(),
            fidelity: Vec::new(),
            m: Vec::new(),
            n: Vec::new(),
            eps: Vec::new(),
            output: None,
            format: Format::Csv,
            workers: None,
        }
    }

    /// Builds a config from `key → value` pairs. Keys match the long flag
    /// names; list values are comma-separated.
    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self, CliError> {
        let command = pairs
            .get("command")
            .ok_or_else(|| CliError::Config("missing `command`".into()))?
            .parse()?;
        let mut cfg = Self::new(command);
        for (key, value) in pairs {
            match key.as_str() {
                "command" => {}
                "seed" => cfg.seed = scalar(key, value)?,
                "trials" => {
                    let t: u64 = scalar(key, value)?;
                    if t == 0 {
                        return Err(CliError::Config("trials must be at least 1".into()));
                    }
                    cfg.trials = Some(t);
                }
                "code" => cfg.code = value.clone(),
                "p" => cfg.p = probabilities(key, value)?,
                "d" => cfg.d = list(key, value)?,
                "f" => cfg.fidelity = probabilities(key, value)?,
                "m" => cfg.m = list(key, value)?,
                "n" => cfg.n = list(key, value)?,
                "eps" => cfg.eps = probabilities(key, value)?,
                "output" => cfg.output = Some(PathBuf::from(value)),
                "format" => cfg.format = value.parse()?,
                "workers" => {
                    let w: usize = scalar(key, value)?;
                    if w == 0 {
                        return Err(CliError::Config("workers must be at least 1".into()));
                    }
                    cfg.workers = Some(w);
                }
                other => return Err(CliError::Config(format!("unknown key `{other}`"))),
            }
        }
        if cfg.d.iter().any(|&d| d < 2) {
            return Err(CliError::Config("every d must be at least 2".into()));
        }
        if cfg.m.contains(&0) {
            return Err(CliError::Config("every m must be at least 1".into()));
        }
        Ok(cfg)
    }
}

fn scalar<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("invalid value `{value}` for `{key}`")))
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError> {
    value.split(',').map(|v| scalar(key, v)).collect()
}

fn probabilities(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    let xs: Vec<f64> = list(key, value)?;
    if let Some(x) = xs.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(CliError::Config(format!("`{key}` value {x} outside [0, 1]")));
    }
    Ok(xs)
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", i + 1)))?;
        out.insert(normalize_key(key.trim()), value.trim().to_string());
    }
    Ok(out)
}

fn normalize_key(key: &str) -> String {
    key.to_ascii_lowercase()
}

/// Command-line interface of the `entshare` binary.
#[derive(Debug, Parser)]
#[command(name = "entshare", version, about = "Entanglement purification and sharing experiments")]
pub struct Cli {
    /// purify, teleport, twirl, bounds or share
    #[arg(long)]
    pub command: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub trials: Option<String>,
    /// `steane` or a path to a code file
    #[arg(long)]
    pub code: Option<String>,
    /// Depolarizing rate(s)
    #[arg(long)]
    pub p: Option<String>,
    /// Local dimension(s)
    #[arg(long)]
    pub d: Option<String>,
    /// Isotropic fidelity value(s)
    #[arg(long = "F")]
    pub fidelity: Option<String>,
    /// Number of teleported qubits
    #[arg(long)]
    pub m: Option<String>,
    /// GHZ size
    #[arg(long = "N")]
    pub n: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub output: Option<String>,
    /// csv or json
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub workers: Option<String>,
    /// Flat key = value file; flags override its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Cli {
    pub fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let mut pairs = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                parse_config_text(&text)?
            }
            None => BTreeMap::new(),
        };
        let flags = [
            ("command", &self.command),
            ("seed", &self.seed),
            ("trials", &self.trials),
            ("code", &self.code),
            ("p", &self.p),
            ("d", &self.d),
            ("f", &self.fidelity),
            ("m", &self.m),
            ("n", &self.n),
            ("eps", &self.eps),
            ("output", &self.output),
            ("format", &self.format),
            ("workers", &self.workers),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                pairs.insert(key.to_string(), v.clone());
            }
        }
        ExperimentConfig::from_pairs(&pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let pairs = parse_config_text("# run\ncommand = purify\nseed=7\nP = 0.01, 0.02\n\ntrials = 100 # short\n").unwrap();
        let cfg = ExperimentConfig::from_pairs(&pairs).unwrap();
        assert_eq!(cfg.command, Command::Purify);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.p, vec![0.01, 0.02]);
        assert_eq!(cfg.trials, Some(100));

        let cli = Cli::try_parse_from(["entshare", "--command", "share", "--N", "4", "--F", "0.9"]).unwrap();
        let cfg = cli.resolve().unwrap();
        assert_eq!((cfg.command, cfg.n.clone(), cfg.fidelity.clone()), (Command::Share, vec![4], vec![0.9]));
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |text: &str| ExperimentConfig::from_pairs(&parse_config_text(text).unwrap()).is_err();
        assert!(bad("seed = 1"));
        assert!(bad("command = nope"));
        assert!(bad("command = purify\ntrials = 0"));
        assert!(bad("command = purify\np = 1.5"));
        assert!(bad("command = teleport\nd = 1"));
        assert!(bad("command = purify\ncolour = red"));
        assert!(bad("command = purify\nformat = xml"));
        assert!(parse_config_text("just words").is_err());
    }
}
