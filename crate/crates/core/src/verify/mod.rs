//! Reproducible verification suites.
//!
//! Each suite draws its inputs from a ChaCha stream keyed by the run seed,
//! the suite name and the case index, so a report depends only on
//! `(seed, grid)` and never on thread scheduling. Every case carries its
//! own tolerance. The suite's `max_violation` expresses all case
//! violations in units of the suite tolerance, so `pass` is simply
//! `max_violation ≤ tolerance`.

mod checks;
pub mod random;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub use checks::{
    curvature_scale_estimate, ellipse_sum_energy, ellipse_sum_test, jacobian_circle, kernels_compare,
    minkowski_extended_test, minkowski_pair, quasi_iso_point, CurvatureEstimate, ExtendedResidual, KernelValues,
    QuasiIsoPoint,
};
pub use suites::{kernel_grid, normalized_gram_det, quasi_iso_suite, CURVATURE_S, ELLIPSE_SUM_SEPARATION, EMPIRICAL_SAMPLES, GRAM_SEPARATION};

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::supportfn::DEFAULT_GRID;

/// One checked case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub case: usize,
    pub label: String,
    /// First 16 hex digits of the SHA-256 of the case inputs.
    pub inputs_digest: String,
    pub values: BTreeMap<String, f64>,
    pub violation: f64,
    pub tolerance: f64,
}

impl CaseRecord {
    pub fn new(case: usize, label: &str, inputs: &str) -> Self {
        CaseRecord {
            case,
            label: label.to_string(),
            inputs_digest: digest16(inputs),
            values: BTreeMap::new(),
            violation: 0.0,
            tolerance: 1.0,
        }
    }

    pub fn value(mut self, name: &str, v: f64) -> Self {
        self.values.insert(name.to_string(), v);
        self
    }

    pub fn check(mut self, violation: f64, tolerance: f64) -> Self {
        self.violation = violation;
        self.tolerance = tolerance;
        self
    }

    pub fn passed(&self) -> bool {
        self.violation <= self.tolerance
    }
}

fn digest16(text: &str) -> String {
    let d = Sha256::digest(text.as_bytes());
    hex::encode(&d[..8])
}

/// Report of one suite run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub grid: usize,
    pub cases: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub records: Vec<CaseRecord>,
}

impl SuiteReport {
    pub fn from_records(suite: Suite, cfg: &SuiteConfig, tolerance: f64, records: Vec<CaseRecord>) -> Self {
        let max_violation = records
            .iter()
            .map(|r| {
                let v = r.violation * tolerance / r.tolerance;
                if v.is_nan() {
                    f64::INFINITY
                } else {
                    v
                }
            })
            .fold(0.0, f64::max);
        SuiteReport {
            suite: suite.name().to_string(),
            seed: cfg.seed,
            grid: cfg.grid,
            cases: records.len(),
            max_violation,
            tolerance,
            pass: max_violation <= tolerance,
            records,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Records that failed their own tolerance.
    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.records.iter().filter(|r| !r.passed())
    }
}

/// Available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Minkowski,
    Extended,
    Wirtinger,
    Encadrement,
    Curvature,
    QuasiIso,
    Kernels,
    Dimension,
    EllipseSum,
    GramRank,
    Equivariance,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Minkowski,
        Suite::Extended,
        Suite::Wirtinger,
        Suite::Encadrement,
        Suite::Curvature,
        Suite::QuasiIso,
        Suite::Kernels,
        Suite::Dimension,
        Suite::EllipseSum,
        Suite::GramRank,
        Suite::Equivariance,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Minkowski => "minkowski",
            Suite::Extended => "extended",
            Suite::Wirtinger => "wirtinger",
            Suite::Encadrement => "encadrement",
            Suite::Curvature => "curvature",
            Suite::QuasiIso => "quasiiso",
            Suite::Kernels => "kernels",
            Suite::Dimension => "dimension",
            Suite::EllipseSum => "ellipse-sum",
            Suite::GramRank => "gram-rank",
            Suite::Equivariance => "equivariance",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// Run parameters shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub grid: usize,
    pub exec: Execution,
    /// Reject unresolved spectra instead of logging them.
    pub strict: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            grid: DEFAULT_GRID,
            exec: Execution::default(),
            strict: false,
        }
    }
}

/// Random stream of one case.
pub fn case_rng(seed: u64, suite: Suite, case: usize) -> ChaCha8Rng {
    let d = Sha256::digest(format!("{}:{case}", suite.name()).as_bytes());
    let mut key = [0u8; 8];
    key.copy_from_slice(&d[..8]);
    ChaCha8Rng::seed_from_u64(seed ^ u64::from_le_bytes(key))
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    crate::supportfn::check_grid(cfg.grid)?;
    suites::run(suite, cfg)
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|s| run_suite(*s, cfg)).collect()
}
