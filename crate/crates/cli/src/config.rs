//! Key-value config for the verification suite, with the number grammar
//! embedded. One `corpus =` line per value; `#` starts a comment.

use std::fmt;
use std::path::PathBuf;

use cfred::Quad;
use thiserror::Error;

use crate::grammar::parse_number;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Invalid { line: usize, msg: String },
    #[error("corpus must not be empty")]
    EmptyCorpus,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

/// Inputs for one suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub corpus: Vec<Quad>,
    pub height_bound: i64,
    pub depth: usize,
    pub slow_steps: usize,
    pub gamma_height: i64,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut corpus = Vec::new();
        let mut height_bound: i64 = 25;
        let mut depth: usize = 12;
        let mut slow_steps: usize = 400;
        let mut gamma_height: i64 = 10;
        let mut output = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or(ConfigError::Invalid {
                line,
                msg: "expected 'key = value'".into(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let int = |v: &str, line: usize| {
                v.parse::<i64>().map_err(|e| ConfigError::Invalid {
                    line,
                    msg: e.to_string(),
                })
            };
            match key {
                "corpus" => corpus.push(parse_number(value).map_err(|e| ConfigError::Invalid {
                    line,
                    msg: e.to_string(),
                })?),
                "height_bound" => height_bound = int(value, line)?,
                "depth" => depth = int(value, line)? as usize,
                "slow_steps" => slow_steps = int(value, line)? as usize,
                "gamma_height" => gamma_height = int(value, line)?,
                "output" => output = Some(PathBuf::from(value)),
                other => {
                    return Err(ConfigError::Invalid {
                        line,
                        msg: format!("unknown key '{}'", other),
                    })
                }
            }
        }
        if corpus.is_empty() {
            return Err(ConfigError::EmptyCorpus);
        }
        for (name, v) in [
            ("height_bound", height_bound),
            ("depth", depth as i64),
            ("slow_steps", slow_steps as i64),
            ("gamma_height", gamma_height),
        ] {
            if v <= 0 {
                return Err(ConfigError::NonPositive(name));
            }
        }
        Ok(RunConfig {
            corpus,
            height_bound,
            depth,
            slow_steps,
            gamma_height,
            output,
        })
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "height_bound = {}", self.height_bound)?;
        writeln!(f, "depth = {}", self.depth)?;
        writeln!(f, "slow_steps = {}", self.slow_steps)?;
        writeln!(f, "gamma_height = {}", self.gamma_height)?;
        if let Some(path) = &self.output {
            writeln!(f, "output = {}", path.display())?;
        }
        for x in &self.corpus {
            writeln!(f, "corpus = {}", x)?;
        }
        Ok(())
    }
}
