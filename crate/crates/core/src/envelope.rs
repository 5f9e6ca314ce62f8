//! Achievable NDT for arbitrary cache fractions.
//!
//! Two routes to the same number: [`achievable_ndt`] evaluates the piecewise
//! closed form, [`achievable_plan`] builds it by time sharing between the
//! schemes defined at mu = 0, 1/M and 1. Tests hold them against each other.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::error::Result;
use crate::ndt::Ndt;
use crate::regime::RegimeThresholds;
use crate::scheme::{scheme_ndt, time_share, SchemeId};

/// Fronthaul-rate regime of an operating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "LOW")]
    Low,
    #[serde(rename = "MID_I")]
    MidI,
    #[serde(rename = "MID_II")]
    MidII,
    #[serde(rename = "HIGH")]
    High,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Low => "LOW",
            Regime::MidI => "MID_I",
            Regime::MidII => "MID_II",
            Regime::High => "HIGH",
        }
    }

    /// Scheme operated at mu = 1/M in this regime.
    fn partition_scheme(self) -> SchemeId {
        match self {
            Regime::Low => SchemeId::InterferenceAlignment,
            Regime::MidI | Regime::MidII => SchemeId::CodedMulticast,
            Regime::High => SchemeId::CloudAided,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Classifies `cfg.r`; rates on a breakpoint go to the lower regime.
pub fn regime_of(cfg: &NetworkConfig) -> Regime {
    let th = RegimeThresholds::for_config(cfg);
    if cfg.r <= th.r1 {
        Regime::Low
    } else if cfg.r <= th.r2 {
        Regime::MidI
    } else if cfg.r <= th.r3 {
        Regime::MidII
    } else {
        Regime::High
    }
}

// mu exactly at 1/M uses the small-cache form
fn small_cache(cfg: &NetworkConfig) -> bool {
    cfg.mu * cfg.m as f64 <= 1.0
}

/// Closed-form achievable NDT of pipelined delivery with time sharing.
pub fn achievable_ndt(cfg: &NetworkConfig) -> Result<Ndt> {
    cfg.validate()?;
    if cfg.m == 1 {
        return single_en_plan(cfg).map(|plan| plan.value);
    }

    let (m, k, r, mu) = (cfg.m as f64, cfg.k as f64, cfg.r, cfg.mu);
    let (min, max) = (cfg.min_mk() as f64, cfg.max_mk() as f64);
    let edge_floor = k / min;
    // bits of the requested files that no EN holds; only the small-cache
    // branches call this, where it is nonnegative
    let uncached = (k * (1.0 - mu * m)).max(0.0);

    let value = match (regime_of(cfg), small_cache(cfg)) {
        (Regime::Low, true) => Ndt::ratio(mu * (m + k - 1.0), 1.0) + Ndt::ratio(uncached, r),
        (Regime::Low, false) => {
            Ndt::ratio(m + k - 1.0 - mu * (min - 1.0) - edge_floor, m - 1.0)
        }
        (Regime::MidI, true) => Ndt::ratio(k * (1.0 - mu), r),
        (Regime::MidI, false) => {
            Ndt::ratio(k * (mu * m - 1.0), (m - 1.0) * min) + Ndt::ratio(k * (1.0 - mu), r)
        }
        (Regime::MidII, true) => Ndt::ratio(mu * max, 1.0) + Ndt::ratio(uncached, r),
        (Regime::MidII, false) | (Regime::High, _) => Ndt::ratio(k, min),
    };
    Ok(value)
}

/// One end of a time-sharing mixture: a scheme run at a given cache fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub scheme: SchemeId,
    pub mu: f64,
}

/// Constructive description of how the achievable NDT is reached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeliveryPlan {
    pub anchor1: Anchor,
    pub anchor2: Anchor,
    /// Fraction of time spent on `anchor1`.
    pub alpha: f64,
    pub regime: Regime,
    pub value: Ndt,
    /// Set for M = 1, where the plan is ZF/CA sharing instead of the
    /// regime's usual pairing.
    pub single_en: bool,
}

impl DeliveryPlan {
    /// Cache fraction the mixture uses, `alpha * mu1 + (1 - alpha) * mu2`.
    pub fn mu(&self) -> f64 {
        self.alpha * self.anchor1.mu + (1.0 - self.alpha) * self.anchor2.mu
    }
}

fn pipelined_at(scheme: SchemeId, cfg: &NetworkConfig, mu: f64) -> Result<Ndt> {
    Ok(scheme_ndt(scheme, &cfg.with_mu(mu))?.pipelined())
}

fn share(
    cfg: &NetworkConfig,
    regime: Regime,
    first: Anchor,
    second: Anchor,
    single_en: bool,
) -> Result<DeliveryPlan> {
    let ts = time_share(
        pipelined_at(first.scheme, cfg, first.mu)?,
        first.mu,
        pipelined_at(second.scheme, cfg, second.mu)?,
        second.mu,
        cfg.mu,
    )?;
    Ok(DeliveryPlan {
        anchor1: first,
        anchor2: second,
        alpha: ts.alpha,
        regime,
        value: ts.delta,
        single_en,
    })
}

fn single_en_plan(cfg: &NetworkConfig) -> Result<DeliveryPlan> {
    share(
        cfg,
        regime_of(cfg),
        Anchor {
            scheme: SchemeId::ZeroForcing,
            mu: 1.0,
        },
        Anchor {
            scheme: SchemeId::CloudAided,
            mu: 0.0,
        },
        true,
    )
}

/// Time-sharing plan whose value is the achievable NDT at `cfg`.
///
/// Below mu = 1/M the regime's scheme at 1/M is mixed with cloud-aided
/// delivery at mu = 0; above it, with zero forcing at mu = 1. In the high
/// regime the cache goes unused and the plan is pure cloud-aided delivery.
pub fn achievable_plan(cfg: &NetworkConfig) -> Result<DeliveryPlan> {
    cfg.validate()?;
    if cfg.m == 1 {
        return single_en_plan(cfg);
    }

    let regime = regime_of(cfg);
    if regime == Regime::High {
        let cloud = pipelined_at(SchemeId::CloudAided, cfg, cfg.mu)?;
        return Ok(DeliveryPlan {
            anchor1: Anchor {
                scheme: SchemeId::CloudAided,
                mu: cfg.mu,
            },
            anchor2: Anchor {
                scheme: SchemeId::CloudAided,
                mu: 0.0,
            },
            alpha: 1.0,
            regime,
            value: cloud,
            single_en: false,
        });
    }

    let partition = Anchor {
        scheme: regime.partition_scheme(),
        mu: cfg.partition_point(),
    };
    let other = if small_cache(cfg) {
        Anchor {
            scheme: SchemeId::CloudAided,
            mu: 0.0,
        }
    } else {
        Anchor {
            scheme: SchemeId::ZeroForcing,
            mu: 1.0,
        }
    };
    share(cfg, regime, partition, other, false)
}
