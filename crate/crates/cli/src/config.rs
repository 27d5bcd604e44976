//! Optional JSON config file: the same options the flags cover, as
//! defaults. Explicit flags always override file values; built-in defaults
//! fill whatever neither supplies.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

/// Top-level config file shape. Unknown keys are rejected so typos fail
/// loudly instead of silently running defaults.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub mab: Option<MabSection>,
    pub tournament: Option<TournamentSection>,
    pub play: Option<PlaySection>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MabSection {
    pub policies: Option<Vec<String>>,
    pub problems: Option<u64>,
    pub k: Option<usize>,
    pub budgets: Option<Vec<u64>>,
    pub time_budgets_ms: Option<Vec<f64>>,
    pub c: Option<f64>,
    pub literal_ucb: Option<bool>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TournamentSection {
    pub games: Option<Vec<String>>,
    pub agents: Option<Vec<String>>,
    pub n: Option<u64>,
    pub iters: Option<Vec<u64>>,
    pub time_ms: Option<f64>,
    pub c: Option<f64>,
    pub game_log: Option<PathBuf>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlaySection {
    pub game: Option<String>,
    pub agents: Option<Vec<String>>,
    pub iters: Option<u64>,
    pub time_ms: Option<f64>,
    pub c: Option<f64>,
    pub details: Option<bool>,
    pub quiet: Option<bool>,
}

pub fn load(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("bad config file {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn full_config_round_trips() {
        let f = write_temp(
            r#"{
                "seed": 9,
                "jobs": 4,
                "mab": {"policies": ["ucb1"], "problems": 5, "budgets": [100, 200]},
                "tournament": {"games": ["tictactoe"], "n": 10},
                "play": {"game": "hex-5", "agents": ["uct", "random"], "details": true}
            }"#,
        );
        let cfg = load(f.path()).unwrap();
        assert_eq!(cfg.seed, Some(9));
        assert_eq!(cfg.jobs, Some(4));
        assert_eq!(cfg.mab.as_ref().unwrap().problems, Some(5));
        assert_eq!(cfg.tournament.as_ref().unwrap().n, Some(10));
        assert_eq!(cfg.play.as_ref().unwrap().details, Some(true));
    }

    #[test]
    fn unknown_keys_are_usage_errors() {
        let f = write_temp(r#"{"sead": 9}"#);
        let err = load(f.path()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn malformed_json_is_a_usage_error() {
        let f = write_temp("{");
        assert_eq!(load(f.path()).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn missing_file_is_a_usage_error() {
        let err = load(Path::new("/nonexistent/rootbandit.json")).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
