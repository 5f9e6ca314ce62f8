use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cache fractions closer than this to a scheme's defining cache point are
/// treated as sitting on it.
pub const CACHE_POINT_TOLERANCE: f64 = 1e-9;

/// One operating point of an M-EN, K-user fog network with an N-file
/// library, fractional cache `mu` and fronthaul power-scaling rate `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkConfig {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub mu: f64,
    pub r: f64,
}

impl NetworkConfig {
    pub fn new(m: usize, k: usize, n: usize, mu: f64, r: f64) -> Result<Self> {
        let cfg = Self { m, k, n, mu, r };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidConfig("M must be at least 1".into()));
        }
        if self.k == 0 {
            return Err(Error::InvalidConfig("K must be at least 1".into()));
        }
        if self.n < self.k {
            return Err(Error::InvalidConfig(format!(
                "N = {} must be at least K = {}",
                self.n, self.k
            )));
        }
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(Error::InvalidConfig(format!(
                "mu = {} must lie in [0, 1]",
                self.mu
            )));
        }
        if self.r.is_nan() || self.r < 0.0 || self.r.is_infinite() {
            return Err(Error::InvalidConfig(format!(
                "r = {} must be a finite value >= 0",
                self.r
            )));
        }
        Ok(())
    }

    pub fn with_mu(self, mu: f64) -> Self {
        Self { mu, ..self }
    }

    pub fn with_r(self, r: f64) -> Self {
        Self { r, ..self }
    }

    pub fn min_mk(&self) -> usize {
        self.m.min(self.k)
    }

    pub fn max_mk(&self) -> usize {
        self.m.max(self.k)
    }

    /// The cache fraction at which the library is split disjointly across ENs.
    pub fn partition_point(&self) -> f64 {
        1.0 / self.m as f64
    }

    pub fn mu_is(&self, point: f64) -> bool {
        (self.mu - point).abs() <= CACHE_POINT_TOLERANCE
    }
}
