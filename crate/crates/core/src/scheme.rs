//! Per-scheme fronthaul/edge NDTs and time sharing between two policies.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::ndt::{Ndt, NdtPair};

/// The four delivery schemes that make up the achievable envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SchemeId {
    /// Cache-aided zero forcing: every EN holds the whole library (mu = 1).
    #[serde(rename = "ZF")]
    ZeroForcing,
    /// Cache-aided interference alignment over a disjoint split (mu = 1/M).
    #[serde(rename = "IA")]
    InterferenceAlignment,
    /// Cloud-aided: all requested bits cross the fronthaul, ZF at the edge.
    #[serde(rename = "CA")]
    CloudAided,
    /// XOR-coded multicast of adjacent subfiles over the fronthaul (mu = 1/M).
    #[serde(rename = "CC")]
    CodedMulticast,
}

impl SchemeId {
    pub const ALL: [SchemeId; 4] = [
        SchemeId::ZeroForcing,
        SchemeId::InterferenceAlignment,
        SchemeId::CloudAided,
        SchemeId::CodedMulticast,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SchemeId::ZeroForcing => "ZF",
            SchemeId::InterferenceAlignment => "IA",
            SchemeId::CloudAided => "CA",
            SchemeId::CodedMulticast => "CC",
        }
    }

    /// The only cache fraction at which the scheme is defined, if it has one.
    pub fn cache_point(self, m: usize) -> Option<f64> {
        match self {
            SchemeId::ZeroForcing => Some(1.0),
            SchemeId::InterferenceAlignment | SchemeId::CodedMulticast => Some(1.0 / m as f64),
            SchemeId::CloudAided => None,
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Fronthaul and edge NDT of `scheme` at `cfg`.
///
/// ZF, IA and CC exist only at their own cache point; asking for them
/// anywhere else is an error. CA ignores the cache.
pub fn scheme_ndt(scheme: SchemeId, cfg: &NetworkConfig) -> Result<NdtPair> {
    cfg.validate()?;
    if let Some(required) = scheme.cache_point(cfg.m) {
        if !cfg.mu_is(required) {
            return Err(Error::CachePrecondition {
                scheme,
                required,
                actual: cfg.mu,
            });
        }
    }

    let (m, k) = (cfg.m as f64, cfg.k as f64);
    let edge_zf = Ndt::ratio(k, cfg.min_mk() as f64);
    let pair = match scheme {
        SchemeId::ZeroForcing => NdtPair::new(Ndt::ZERO, edge_zf),
        SchemeId::InterferenceAlignment => NdtPair::new(Ndt::ZERO, Ndt::ratio(m + k - 1.0, m)),
        SchemeId::CloudAided => NdtPair::new(Ndt::ratio(k, cfg.r), edge_zf),
        // K(M-1) subfiles of L/M bits each
        SchemeId::CodedMulticast => NdtPair::new(
            Ndt::ratio(k * (m - 1.0), m * cfg.r),
            edge_zf,
        ),
    };
    Ok(pair)
}

/// Pipelined NDT of `scheme` evaluated at the scheme's own cache point
/// (CA keeps `cfg.mu`).
pub fn native_pipelined_ndt(scheme: SchemeId, cfg: &NetworkConfig) -> Result<Ndt> {
    let at = match scheme.cache_point(cfg.m) {
        Some(mu) => cfg.with_mu(mu),
        None => *cfg,
    };
    Ok(scheme_ndt(scheme, &at)?.pipelined())
}

/// Result of mixing two policies over complementary time fractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeShare {
    /// Fraction of time spent on the first policy.
    pub alpha: f64,
    pub delta: Ndt,
}

/// Runs the policy at cache `mu1` for a fraction `alpha` of the time and the
/// one at `mu2` for the rest, with `alpha` chosen so the mixture uses cache
/// `mu`.
pub fn time_share(delta1: Ndt, mu1: f64, delta2: Ndt, mu2: f64, mu: f64) -> Result<TimeShare> {
    if mu1 == mu2 {
        return Err(Error::DegenerateAnchors(mu1));
    }
    let (lo, hi) = if mu1 < mu2 { (mu1, mu2) } else { (mu2, mu1) };
    // float noise on branch points like 1/M is absorbed, anything larger is not
    let slack = 1e-12 * hi.abs().max(1.0);
    if !(mu >= lo - slack && mu <= hi + slack) {
        return Err(Error::CacheOutOfRange { mu, lo, hi });
    }

    let alpha = if mu == mu1 {
        1.0
    } else if mu == mu2 {
        0.0
    } else {
        ((mu - mu2) / (mu1 - mu2)).clamp(0.0, 1.0)
    };
    let delta = delta1.scale(alpha) + delta2.scale(1.0 - alpha);
    Ok(TimeShare { alpha, delta })
}
