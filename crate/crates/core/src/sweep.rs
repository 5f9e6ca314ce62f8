//! Parameter grids and per-point evaluation rows.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::lower_bound;
use crate::config::NetworkConfig;
use crate::envelope::{achievable_ndt, regime_of, Regime};
use crate::error::{Error, Result};
use crate::ndt::Ndt;
use crate::scheme::{native_pipelined_ndt, SchemeId};

/// A grid coordinate that may depend on the network size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Number(f64),
    /// `1/M`, exact for every M in the grid.
    OneOverM,
    /// `c * min(M, K)`.
    TimesMin(f64),
}

impl Scalar {
    pub fn resolve(self, m: usize, k: usize) -> f64 {
        match self {
            Scalar::Number(v) => v,
            Scalar::OneOverM => 1.0 / m as f64,
            Scalar::TimesMin(c) => c * m.min(k) as f64,
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidSweep(format!("cannot parse value {s:?}"));
        if s == "1/M" {
            return Ok(Scalar::OneOverM);
        }
        if let Some(coef) = s.strip_suffix("min") {
            let coef = coef.trim().trim_end_matches('*').trim();
            let c = if coef.is_empty() {
                1.0
            } else {
                coef.parse().map_err(|_| bad())?
            };
            return Ok(Scalar::TimesMin(c));
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0.0 {
                return Err(bad());
            }
            return Ok(Scalar::Number(num / den));
        }
        s.parse().map(Scalar::Number).map_err(|_| bad())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Number(v) => write!(f, "{v}"),
            Scalar::OneOverM => f.write_str("1/M"),
            Scalar::TimesMin(c) => write!(f, "{c}min"),
        }
    }
}

/// One entry of a `mu_values` / `r_values` list: a single value or an
/// inclusive `start:stop:step` range.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(try_from = "ValueRepr")]
pub enum ValueSpec {
    Single(Scalar),
    Range { start: Scalar, stop: Scalar, step: f64 },
}

impl ValueSpec {
    pub fn number(v: f64) -> Self {
        ValueSpec::Single(Scalar::Number(v))
    }

    pub fn one_over_m() -> Self {
        ValueSpec::Single(Scalar::OneOverM)
    }

    pub fn range(start: Scalar, stop: Scalar, step: f64) -> Self {
        ValueSpec::Range { start, stop, step }
    }

    fn check(&self) -> Result<()> {
        if let ValueSpec::Range { step, .. } = self {
            if step.is_nan() || *step <= 0.0 || !step.is_finite() {
                return Err(Error::InvalidSweep(format!("range step {step} must be > 0")));
            }
        }
        Ok(())
    }

    /// Concrete values for an (M, K) pair. Range points are `start + i*step`
    /// rounded to 12 decimals so that e.g. `12 * 0.1` lands on 1.2.
    pub fn expand(&self, m: usize, k: usize) -> Result<Vec<f64>> {
        self.check()?;
        match *self {
            ValueSpec::Single(s) => Ok(vec![s.resolve(m, k)]),
            ValueSpec::Range { start, stop, step } => {
                let (start, stop) = (start.resolve(m, k), stop.resolve(m, k));
                if stop < start {
                    return Err(Error::InvalidSweep(format!(
                        "range {start}:{stop} is empty"
                    )));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                Ok((0..=n)
                    .map(|i| snap(start + i as f64 * step))
                    .collect())
            }
        }
    }
}

fn snap(v: f64) -> f64 {
    (v * 1e12).round() / 1e12
}

impl FromStr for ValueSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let spec = match parts.as_slice() {
            [single] => ValueSpec::Single(single.parse()?),
            [start, stop, step] => ValueSpec::Range {
                start: start.parse()?,
                stop: stop.parse()?,
                step: step
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidSweep(format!("bad range step in {s:?}")))?,
            },
            _ => {
                return Err(Error::InvalidSweep(format!(
                    "expected a value or start:stop:step, got {s:?}"
                )))
            }
        };
        spec.check()?;
        Ok(spec)
    }
}

impl fmt::Display for ValueSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueSpec::Single(s) => write!(f, "{s}"),
            ValueSpec::Range { start, stop, step } => write!(f, "{start}:{stop}:{step}"),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<ScalarRepr> for Scalar {
    type Error = Error;

    fn try_from(repr: ScalarRepr) -> Result<Self> {
        match repr {
            ScalarRepr::Number(v) => Ok(Scalar::Number(v)),
            ScalarRepr::Text(s) => s.parse(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ValueRepr {
    Number(f64),
    Text(String),
    Range {
        start: ScalarRepr,
        stop: ScalarRepr,
        step: f64,
    },
}

impl TryFrom<ValueRepr> for ValueSpec {
    type Error = Error;

    fn try_from(repr: ValueRepr) -> Result<Self> {
        let spec = match repr {
            ValueRepr::Number(v) => ValueSpec::number(v),
            ValueRepr::Text(s) => return s.parse(),
            ValueRepr::Range { start, stop, step } => ValueSpec::Range {
                start: start.try_into()?,
                stop: stop.try_into()?,
                step,
            },
        };
        spec.check()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Achievable,
    LowerBound,
    Gap,
    PerScheme,
}

fn default_quantities() -> Vec<Quantity> {
    vec![Quantity::Achievable, Quantity::LowerBound, Quantity::Gap]
}

/// A cartesian grid over (M, K, mu, r).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(rename = "M_values")]
    pub m_values: Vec<usize>,
    #[serde(rename = "K_values")]
    pub k_values: Vec<usize>,
    pub mu_values: Vec<ValueSpec>,
    pub r_values: Vec<ValueSpec>,
    #[serde(default = "default_quantities")]
    pub quantities: Vec<Quantity>,
    /// Library size; NDTs do not depend on it, so it defaults to K.
    #[serde(default, rename = "N")]
    pub n_files: Option<usize>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            m_values: Vec::new(),
            k_values: Vec::new(),
            mu_values: Vec::new(),
            r_values: Vec::new(),
            quantities: default_quantities(),
            n_files: None,
        }
    }
}

impl SweepSpec {
    /// M, K in 2..=6, mu in 0..=1 step 0.05, r in 0.1..=2 min(M, K) step 0.1.
    pub fn standard_grid() -> Self {
        Self {
            m_values: (2..=6).collect(),
            k_values: (2..=6).collect(),
            mu_values: vec![ValueSpec::range(Scalar::Number(0.0), Scalar::Number(1.0), 0.05)],
            r_values: vec![ValueSpec::range(Scalar::Number(0.1), Scalar::TimesMin(2.0), 0.1)],
            ..Self::default()
        }
    }

    /// NDT against fronthaul rate for M = 3, mu = 1/3, K in {2, 3, 4}.
    pub fn rate_sweep_figure() -> Self {
        Self {
            m_values: vec![3],
            k_values: vec![2, 3, 4],
            mu_values: vec![ValueSpec::one_over_m()],
            r_values: vec![ValueSpec::range(Scalar::Number(0.25), Scalar::Number(4.0), 0.25)],
            ..Self::default()
        }
    }

    /// NDT against cache fraction for M = 2, r = 1, K in {2, 3, 4}.
    pub fn cache_sweep_figure() -> Self {
        Self {
            m_values: vec![2],
            k_values: vec![2, 3, 4],
            mu_values: vec![ValueSpec::range(Scalar::Number(0.0), Scalar::Number(1.0), 0.05)],
            r_values: vec![ValueSpec::number(1.0)],
            ..Self::default()
        }
    }

    pub fn wants(&self, q: Quantity) -> bool {
        self.quantities.contains(&q)
    }

    /// Every grid point, validated, in lexicographic (M, K, mu, r) order.
    pub fn points(&self) -> Result<Vec<NetworkConfig>> {
        if self.m_values.is_empty()
            || self.k_values.is_empty()
            || self.mu_values.is_empty()
            || self.r_values.is_empty()
        {
            return Err(Error::EmptyGrid);
        }

        let mut ms = self.m_values.clone();
        ms.sort_unstable();
        ms.dedup();
        let mut ks = self.k_values.clone();
        ks.sort_unstable();
        ks.dedup();

        let mut points = Vec::new();
        for &m in &ms {
            for &k in &ks {
                let mus = expand_all(&self.mu_values, m, k)?;
                let rs = expand_all(&self.r_values, m, k)?;
                let n = self.n_files.unwrap_or(k);
                for &mu in &mus {
                    for &r in &rs {
                        points.push(NetworkConfig::new(m, k, n, mu, r)?);
                    }
                }
            }
        }
        Ok(points)
    }

    /// Evaluates every grid point; row order follows [`SweepSpec::points`].
    pub fn rows(&self) -> Result<Vec<SweepRow>> {
        let per_scheme = self.wants(Quantity::PerScheme);
        self.points()?
            .par_iter()
            .map(|cfg| evaluate_point(cfg, per_scheme))
            .collect()
    }
}

fn expand_all(specs: &[ValueSpec], m: usize, k: usize) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for spec in specs {
        values.extend(spec.expand(m, k)?);
    }
    values.sort_by(f64::total_cmp);
    values.dedup();
    Ok(values)
}

/// Pipelined NDT of each scheme at its own cache point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerSchemeNdt {
    #[serde(rename = "pl_ZF")]
    pub zero_forcing: Ndt,
    #[serde(rename = "pl_IA")]
    pub interference_alignment: Ndt,
    #[serde(rename = "pl_CA")]
    pub cloud_aided: Ndt,
    #[serde(rename = "pl_CC")]
    pub coded_multicast: Ndt,
}

impl PerSchemeNdt {
    pub fn get(&self, scheme: SchemeId) -> Ndt {
        match scheme {
            SchemeId::ZeroForcing => self.zero_forcing,
            SchemeId::InterferenceAlignment => self.interference_alignment,
            SchemeId::CloudAided => self.cloud_aided,
            SchemeId::CodedMulticast => self.coded_multicast,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub mu: f64,
    pub r: f64,
    pub regime: Regime,
    pub achievable: Ndt,
    pub lower_bound: Ndt,
    /// `achievable / lower_bound`, infinite when `achievable` is.
    pub gap: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_scheme: Option<PerSchemeNdt>,
}

pub fn evaluate_point(cfg: &NetworkConfig, per_scheme: bool) -> Result<SweepRow> {
    let achievable = achievable_ndt(cfg)?;
    let lower = lower_bound(cfg)?.best;
    let per_scheme = if per_scheme {
        Some(PerSchemeNdt {
            zero_forcing: native_pipelined_ndt(SchemeId::ZeroForcing, cfg)?,
            interference_alignment: native_pipelined_ndt(SchemeId::InterferenceAlignment, cfg)?,
            cloud_aided: native_pipelined_ndt(SchemeId::CloudAided, cfg)?,
            coded_multicast: native_pipelined_ndt(SchemeId::CodedMulticast, cfg)?,
        })
    } else {
        None
    };
    Ok(SweepRow {
        m: cfg.m,
        k: cfg.k,
        mu: cfg.mu,
        r: cfg.r,
        regime: regime_of(cfg),
        achievable,
        lower_bound: lower,
        gap: if achievable.is_finite() {
            achievable.get() / lower.get()
        } else {
            f64::INFINITY
        },
        per_scheme,
    })
}
