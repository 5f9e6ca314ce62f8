//! Fronthaul-rate breakpoints and the best pipelined scheme at mu = 1/M.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::ndt::Ndt;
use crate::scheme::{scheme_ndt, SchemeId};

/// Fronthaul rates at which the best pipelined scheme at mu = 1/M changes.
///
/// Below `r1` interference alignment wins, between `r1` and `r2` coded
/// multicast is fronthaul-limited, between `r2` and `r3` it is edge-limited,
/// and above `r3` cloud-aided delivery is as good as anything cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

pub fn regime_thresholds(m: usize, k: usize) -> RegimeThresholds {
    let min = m.min(k);
    RegimeThresholds {
        r1: (k * (m - 1)) as f64 / (m + k - 1) as f64,
        r2: ((m - 1) * min) as f64 / m as f64,
        r3: min as f64,
    }
}

impl RegimeThresholds {
    pub fn for_config(cfg: &NetworkConfig) -> Self {
        regime_thresholds(cfg.m, cfg.k)
    }
}

/// Which term of the pipelined NDT is active at mu = 1/M.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PipelinedBranch {
    /// Edge NDT of interference alignment.
    #[serde(rename = "E_IA")]
    EdgeIa,
    /// Fronthaul NDT of coded multicast.
    #[serde(rename = "F_CC")]
    FronthaulCc,
    /// Edge NDT of coded multicast.
    #[serde(rename = "E_CC")]
    EdgeCc,
    /// Edge NDT of cloud-aided delivery.
    #[serde(rename = "E_CA")]
    EdgeCa,
}

impl PipelinedBranch {
    pub fn label(self) -> &'static str {
        match self {
            PipelinedBranch::EdgeIa => "E_IA",
            PipelinedBranch::FronthaulCc => "F_CC",
            PipelinedBranch::EdgeCc => "E_CC",
            PipelinedBranch::EdgeCa => "E_CA",
        }
    }

    pub fn scheme(self) -> SchemeId {
        match self {
            PipelinedBranch::EdgeIa => SchemeId::InterferenceAlignment,
            PipelinedBranch::FronthaulCc | PipelinedBranch::EdgeCc => SchemeId::CodedMulticast,
            PipelinedBranch::EdgeCa => SchemeId::CloudAided,
        }
    }

    /// Branch active at rate `r`; a rate sitting on a breakpoint belongs to
    /// the lower interval.
    pub fn at_rate(r: f64, th: &RegimeThresholds) -> Self {
        if r <= th.r1 {
            PipelinedBranch::EdgeIa
        } else if r <= th.r2 {
            PipelinedBranch::FronthaulCc
        } else if r <= th.r3 {
            PipelinedBranch::EdgeCc
        } else {
            PipelinedBranch::EdgeCa
        }
    }
}

impl fmt::Display for PipelinedBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BestPipelined {
    pub scheme: SchemeId,
    pub branch: PipelinedBranch,
    pub value: Ndt,
}

/// Smallest pipelined NDT among IA, CC and CA when each EN caches a disjoint
/// 1/M share of the library, together with the branch that attains it.
pub fn best_pipelined_at_cache_one_over_m(cfg: &NetworkConfig) -> Result<BestPipelined> {
    cfg.validate()?;
    if cfg.m < 2 {
        return Err(Error::TooFewEdgeNodes {
            required: 2,
            actual: cfg.m,
        });
    }
    let required = cfg.partition_point();
    if !cfg.mu_is(required) {
        return Err(Error::CachePrecondition {
            scheme: SchemeId::CodedMulticast,
            required,
            actual: cfg.mu,
        });
    }

    let mut value = Ndt::INFINITY;
    for scheme in [
        SchemeId::InterferenceAlignment,
        SchemeId::CodedMulticast,
        SchemeId::CloudAided,
    ] {
        value = value.min(scheme_ndt(scheme, cfg)?.pipelined());
    }

    let branch = PipelinedBranch::at_rate(cfg.r, &RegimeThresholds::for_config(cfg));
    Ok(BestPipelined {
        scheme: branch.scheme(),
        branch,
        value,
    })
}
