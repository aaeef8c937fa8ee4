use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::MapperParams;
use crate::error::{Error, Result};
use crate::reeb::ReebParams;

/// A graph-recovery method the harness can run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    /// Diffusion-Reeb on the raw cloud (no condensation).
    Screeb,
    /// Diffusion-Reeb over a condensation tower.
    ScreebTower,
    Mapper,
    /// Emits the latent graph; an upper bound used as a self-test.
    Oracle,
    /// Copies `<dir>/<sample_id>/graph.json` produced by a third-party tool.
    External(PathBuf),
}

impl Method {
    /// Directory name under a run directory.
    pub fn dir_name(&self) -> String {
        match self {
            Method::Screeb => "screeb".into(),
            Method::ScreebTower => "screebtower".into(),
            Method::Mapper => "mapper".into(),
            Method::Oracle => "oracle".into(),
            Method::External(dir) => {
                let base = dir
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "graphs".into());
                let clean: String = base
                    .chars()
                    .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
                    .collect();
                format!("external-{clean}")
            }
        }
    }

    pub fn parse_list(list: &str) -> Result<Vec<Method>> {
        let mut out: Vec<Method> = Vec::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let m: Method = name.parse()?;
            if out.iter().any(|o| o.dir_name() == m.dir_name()) {
                return Err(Error::config("methods", format!("`{name}` listed twice")));
            }
            out.push(m);
        }
        if out.is_empty() {
            return Err(Error::config("methods", "no methods given"));
        }
        Ok(out)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "screeb" => Ok(Method::Screeb),
            "screebtower" => Ok(Method::ScreebTower),
            "mapper" => Ok(Method::Mapper),
            "oracle" => Ok(Method::Oracle),
            _ => match s.strip_prefix("external:") {
                Some(dir) if !dir.is_empty() => Ok(Method::External(PathBuf::from(dir))),
                _ => Err(Error::config(
                    "methods",
                    format!("unknown method `{s}` (expected screeb, screebtower, mapper, oracle or external:<dir>)"),
                )),
            },
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::External(dir) => write!(f, "external:{}", dir.display()),
            m => f.write_str(&m.dir_name()),
        }
    }
}

/// Per-method parameter overrides, read from JSON.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MethodParams {
    pub reeb: ReebParams,
    pub mapper: MapperParams,
}

impl MethodParams {
    pub fn from_file(path: &Path) -> Result<Self> {
        let p: MethodParams = super::read_json(path)?;
        p.reeb.validate()?;
        p.mapper.validate()?;
        Ok(p)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub bench: PathBuf,
    pub methods: Vec<Method>,
    pub params: MethodParams,
    /// Tower level scored for `screebtower` (default: last).
    pub level: Option<usize>,
    pub workers: Option<usize>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(bench: impl Into<PathBuf>, methods: Vec<Method>, out: impl Into<PathBuf>) -> Self {
        RunConfig {
            bench: bench.into(),
            methods,
            params: MethodParams::default(),
            level: None,
            workers: None,
            out: out.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::config("methods", "no methods given"));
        }
        self.params.reeb.validate()?;
        self.params.mapper.validate()?;
        if let Some(l) = self.level {
            if l > self.params.reeb.levels {
                return Err(Error::config(
                    "level",
                    format!("level {l} exceeds the tower height {}", self.params.reeb.levels),
                ));
            }
        }
        for m in &self.methods {
            if let Method::External(dir) = m {
                if !dir.is_dir() {
                    return Err(Error::config("methods", format!("{} is not a directory", dir.display())));
                }
            }
        }
        if self.workers == Some(0) {
            return Err(Error::config("workers", "must be at least 1"));
        }
        Ok(())
    }

    pub fn scored_level(&self) -> usize {
        self.level.unwrap_or(self.params.reeb.levels)
    }
}
