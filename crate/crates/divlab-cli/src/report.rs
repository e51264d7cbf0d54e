//! Machine-readable report emitted by `audit` and `bounds`.
//!
//! One schema covers both commands; every field is always present, with
//! `null` for the parts the command does not use. Numbers rely on
//! serde_json's shortest round-trip formatting, so re-parsing a report
//! reproduces the exact f64 values.

use divlab::bounds::{BoundCertificate, GridSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub generated_at: String,
    pub config: Config,
    pub chains: Vec<ChainReport>,
    pub certificates: Vec<CertificateReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    pub command: String,
    pub seed: Option<u64>,
    pub pairs: Option<u64>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub skew: Option<f64>,
    pub chains: Option<Vec<String>>,
    pub ratios: Option<Vec<String>>,
    pub grid: Option<GridSpec>,
}

impl Config {
    pub fn empty(command: &str) -> Self {
        Self {
            command: command.to_string(),
            seed: None,
            pairs: None,
            n_min: None,
            n_max: None,
            skew: None,
            chains: None,
            ratios: None,
            grid: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainReport {
    pub id: String,
    pub pairs: u64,
    pub min_slack: f64,
    pub violations: Vec<ViolationRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub pair: u64,
    pub chain: String,
    pub link: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub num: String,
    pub den: String,
    pub kind: String,
    pub estimate: f64,
    pub attaining_x: f64,
    pub analytic: Option<f64>,
    pub verified: bool,
}

impl From<&BoundCertificate> for CertificateReport {
    fn from(cert: &BoundCertificate) -> Self {
        Self {
            num: cert.numerator.clone(),
            den: cert.denominator.clone(),
            kind: cert.kind.key().to_string(),
            estimate: cert.estimate,
            attaining_x: cert.attaining_x,
            analytic: cert.analytic,
            verified: cert.verified,
        }
    }
}

impl Report {
    pub fn new(config: Config) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            generated_at: chrono::Utc::now().to_rfc3339(),
            config,
            chains: Vec::new(),
            certificates: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
