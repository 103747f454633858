//! Run configuration and the optional `key=value` config file.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use ifoi_core::cases::{get_case, CaseId, CaseSpec};
use ifoi_core::fracops::Scheme;
use ifoi_core::ifoi::Spacing;
use ifoi_core::shooting::BoundaryCondition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Fdm,
    Ifoi,
    Both,
}

impl FromStr for MethodChoice {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fdm" => Ok(MethodChoice::Fdm),
            "ifoi" => Ok(MethodChoice::Ifoi),
            "both" => Ok(MethodChoice::Both),
            other => bail!("unknown method `{other}` (expected fdm, ifoi or both)"),
        }
    }
}

/// Boundary constants for case 3: `u(0) = a`, `u'(1) + b·u(1) = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case3Constants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Default for Case3Constants {
    fn default() -> Self {
        Self {
            a: 5.0,
            b: 200.0,
            c: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: CaseId,
    pub method: MethodChoice,
    pub n: usize,
    pub m: usize,
    pub spacing: Spacing,
    pub scheme: Scheme,
    pub repeats: usize,
    pub output_dir: Option<PathBuf>,
    pub emit_trace: bool,
    pub case3: Case3Constants,
}

impl RunConfig {
    /// Both methods with the case's own defaults.
    pub fn for_case(case: CaseId) -> Self {
        let spec = get_case(case);
        Self {
            case,
            method: MethodChoice::Both,
            n: spec.default_n,
            m: spec.default_partition.stage_count(),
            spacing: spec.default_partition.spacing(),
            scheme: spec.default_scheme,
            repeats: 1,
            output_dir: None,
            emit_trace: false,
            case3: Case3Constants::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repeats == 0 {
            bail!("repeats must be at least 1");
        }
        if self.m == 0 {
            bail!("m must be at least 1");
        }
        Ok(())
    }

    pub fn case_spec(&self) -> Result<CaseSpec> {
        case_spec(self.case, self.case3)
    }
}

/// The registry case, with the case-3 constants applied.
pub fn case_spec(case: CaseId, case3: Case3Constants) -> Result<CaseSpec> {
    let spec = get_case(case);
    if case != CaseId::Case3 || case3 == Case3Constants::default() {
        return Ok(spec);
    }
    let right = BoundaryCondition::robin(case3.b, case3.c)?;
    Ok(spec.with_boundary(BoundaryCondition::dirichlet(case3.a), right)?)
}

/// Parsed `key = value` lines. Blank lines and `#` comments are skipped.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

const KNOWN_KEYS: [&str; 12] = [
    "case",
    "method",
    "n",
    "m",
    "alpha-spacing",
    "scheme",
    "repeats",
    "trace",
    "out",
    "a3",
    "b3",
    "c3",
];

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", lineno + 1))?;
            let key = key.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                bail!("line {}: unknown key `{key}`", lineno + 1);
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn get<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        self.entries
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| anyhow!("config key `{key}`: {e}"))
            })
            .transpose()
    }

    pub fn get_bool(&self, key: &str) -> Result<Option<bool>> {
        match self.entries.get(key).map(String::as_str) {
            None => Ok(None),
            Some("true" | "yes" | "1") => Ok(Some(true)),
            Some("false" | "no" | "0") => Ok(Some(false)),
            Some(other) => bail!("config key `{key}`: expected a boolean, got `{other}`"),
        }
    }
}
