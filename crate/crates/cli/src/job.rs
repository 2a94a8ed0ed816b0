//! A fully parsed request, independent of how it arrived.

use dwpf_core::checks::Suite;
use dwpf_core::numerics::Mode;
use dwpf_core::Error;
use serde::{Deserialize, Serialize};

use crate::number::{canonical, canonical_list, parse_list, parse_number};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Pf,
    Verify,
    Gamma,
    Coeffs,
    Bethe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Perm,
    Det,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Numbers are kept as literals; [`JobSpec::canonicalize`] rewrites them
/// into canonical form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_s: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub epsilons: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rapidities: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub occupation: Option<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl JobSpec {
    pub fn new(command: Command, mode: Mode) -> Self {
        JobSpec {
            command,
            mode,
            two_s: None,
            epsilons: Vec::new(),
            rapidities: Vec::new(),
            z: None,
            order: None,
            method: None,
            suite: None,
            n: None,
            m: None,
            trials: None,
            seed: None,
            g: None,
            occupation: None,
            format: None,
            out: None,
        }
    }

    /// Re-parses every literal in `self.mode` and writes it back canonically.
    /// Fails on literals the mode does not accept.
    pub fn canonicalize(&self) -> Result<JobSpec, Error> {
        let list = |v: &[String]| -> Result<Vec<String>, Error> {
            let parsed = parse_list(&v.join(","), self.mode)?;
            Ok(canonical_list(&parsed).split(',').filter(|s| !s.is_empty()).map(str::to_owned).collect())
        };
        let one = |s: &Option<String>| -> Result<Option<String>, Error> {
            s.as_deref().map(|x| parse_number(x, self.mode).map(|v| canonical(&v))).transpose()
        };
        Ok(JobSpec {
            epsilons: list(&self.epsilons)?,
            rapidities: list(&self.rapidities)?,
            z: one(&self.z)?,
            g: one(&self.g)?,
            ..self.clone()
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("job specs always serialize")
    }

    pub fn from_json(text: &str) -> Result<JobSpec, Error> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("job spec: {e}")))
    }
}
