//! Lower bounds on the minimum NDT and the multiplicative gap audit.
//!
//! Two families bound every feasible policy from below: the edge bound
//! `K / min(M, K)` (even with the whole library cached everywhere, the edge
//! channel supports at most `min(M, K)` streams) and, for each integer
//! `l <= min(M, K)`, a cut-set bound in which a decoder sees `l` edge outputs,
//! the fronthaul, and the caches of the other `M - l` ENs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::envelope::achievable_ndt;
use crate::error::{Error, Result};
use crate::ndt::Ndt;
use crate::sweep::SweepSpec;

/// Ratios above `GAP_FACTOR + GAP_TOLERANCE` count as violations.
pub const GAP_FACTOR: f64 = 3.0;
pub const GAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutSetTerm {
    pub l: usize,
    pub value: Ndt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundBreakdown {
    pub edge_bound: Ndt,
    pub cutset_terms: Vec<CutSetTerm>,
    pub best: Ndt,
    /// Cut-set index attaining `best`, or `None` when the edge bound does.
    pub argmax_l: Option<usize>,
}

/// Cut-set bound `(K - (K-l)(M-l) mu) / (l + r)`, clamped at zero.
pub fn lower_bound_term(cfg: &NetworkConfig, l: usize) -> Result<Ndt> {
    let max = cfg.min_mk();
    if l > max {
        return Err(Error::CutIndexOutOfRange { l, max });
    }
    let (m, k) = (cfg.m as f64, cfg.k as f64);
    let l_f = l as f64;
    let numerator = k - (k - l_f) * (m - l_f) * cfg.mu;
    Ok(Ndt::ratio(numerator, l_f + cfg.r))
}

pub fn lower_bound(cfg: &NetworkConfig) -> Result<BoundBreakdown> {
    cfg.validate()?;
    let edge_bound = Ndt::ratio(cfg.k as f64, cfg.min_mk() as f64);
    let cutset_terms = (0..=cfg.min_mk())
        .map(|l| lower_bound_term(cfg, l).map(|value| CutSetTerm { l, value }))
        .collect::<Result<Vec<_>>>()?;

    let mut best = edge_bound;
    let mut argmax_l = None;
    for term in &cutset_terms {
        if term.value > best {
            best = term.value;
            argmax_l = Some(term.l);
        }
    }
    Ok(BoundBreakdown {
        edge_bound,
        cutset_terms,
        best,
        argmax_l,
    })
}

/// `achievable / lower bound`; infinite when the achievable NDT is.
pub fn optimality_gap(cfg: &NetworkConfig) -> Result<f64> {
    let achievable = achievable_ndt(cfg)?;
    if !achievable.is_finite() {
        return Ok(f64::INFINITY);
    }
    let bound = lower_bound(cfg)?.best;
    Ok(achievable.get() / bound.get())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapViolation {
    pub point: NetworkConfig,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub max_ratio: f64,
    pub argmax: Option<NetworkConfig>,
    /// Grid points with a finite achievable NDT, i.e. the ones audited.
    pub n_points: usize,
    /// Points whose achievable NDT is infinite (r = 0 with mu M < 1).
    pub skipped: Vec<NetworkConfig>,
    pub violations: Vec<GapViolation>,
}

impl GapReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the optimality gap over every point of `grid`.
///
/// Points are visited in the grid's lexicographic order, so ties for the
/// maximum resolve to the smallest configuration regardless of how the work
/// is scheduled.
pub fn gap_audit(grid: &SweepSpec) -> Result<GapReport> {
    let points = grid.points()?;
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let ratios = points
        .par_iter()
        .map(optimality_gap)
        .collect::<Result<Vec<_>>>()?;

    let mut report = GapReport {
        max_ratio: 0.0,
        argmax: None,
        n_points: 0,
        skipped: Vec::new(),
        violations: Vec::new(),
    };
    for (point, ratio) in points.into_iter().zip(ratios) {
        if !ratio.is_finite() {
            report.skipped.push(point);
            continue;
        }
        report.n_points += 1;
        if report.argmax.is_none() || ratio > report.max_ratio {
            report.max_ratio = ratio;
            report.argmax = Some(point);
        }
        if ratio > GAP_FACTOR + GAP_TOLERANCE {
            report.violations.push(GapViolation { point, ratio });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::ValueSpec;

    fn cfg(m: usize, k: usize, mu: f64, r: f64) -> NetworkConfig {
        NetworkConfig::new(m, k, k, mu, r).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
    }

    #[test]
    fn term_examples() {
        assert!(close(lower_bound_term(&cfg(3, 3, 1.0 / 3.0, 1.0), 1).unwrap().get(), 5.0 / 6.0));
        assert_eq!(lower_bound_term(&cfg(3, 3, 1.0 / 3.0, 1.0), 0).unwrap(), Ndt::ZERO);
        assert!(close(lower_bound_term(&cfg(2, 2, 0.0, 1.0), 0).unwrap().get(), 2.0));
    }

    #[test]
    fn term_at_zero_rate_and_zero_l() {
        assert_eq!(lower_bound_term(&cfg(2, 2, 0.0, 0.0), 0).unwrap(), Ndt::INFINITY);
        assert_eq!(lower_bound_term(&cfg(2, 2, 0.5, 0.0), 0).unwrap(), Ndt::ZERO);
    }

    #[test]
    fn term_index_out_of_range() {
        assert_eq!(
            lower_bound_term(&cfg(3, 2, 0.5, 1.0), 3),
            Err(Error::CutIndexOutOfRange { l: 3, max: 2 })
        );
    }

    #[test]
    fn breakdown_examples() {
        let b = lower_bound(&cfg(3, 3, 1.0 / 3.0, 1.0)).unwrap();
        assert_eq!(b.best, Ndt::new(1.0).unwrap());
        assert_eq!(b.argmax_l, None);
        let expected = [0.0, 5.0 / 6.0, 8.0 / 9.0, 0.75];
        assert_eq!(b.cutset_terms.len(), 4);
        for (term, want) in b.cutset_terms.iter().zip(expected) {
            assert!(close(term.value.get(), want), "{term:?} vs {want}");
        }

        let b = lower_bound(&cfg(2, 2, 0.0, 1.0)).unwrap();
        assert!(close(b.best.get(), 2.0));
        assert_eq!(b.argmax_l, Some(0));
    }

    #[test]
    fn full_cache_meets_edge_bound() {
        for m in 1..=6 {
            for k in 1..=6 {
                for r in [0.0, 0.5, 1.0, 3.0, 10.0] {
                    let c = cfg(m, k, 1.0, r);
                    let b = lower_bound(&c).unwrap();
                    assert_eq!(b.best, b.edge_bound, "M={m} K={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn gap_examples() {
        assert!(close(optimality_gap(&cfg(3, 3, 1.0 / 3.0, 1.0)).unwrap(), 5.0 / 3.0));
        assert!(close(optimality_gap(&cfg(3, 3, 1.0, 5.0)).unwrap(), 1.0));
        assert!(close(optimality_gap(&cfg(2, 2, 0.0, 1.0)).unwrap(), 1.0));
        assert_eq!(optimality_gap(&cfg(2, 2, 0.0, 0.0)).unwrap(), f64::INFINITY);
    }

    fn single(m: usize, k: usize, mu: ValueSpec, r: f64) -> SweepSpec {
        SweepSpec {
            m_values: vec![m],
            k_values: vec![k],
            mu_values: vec![mu],
            r_values: vec![ValueSpec::number(r)],
            ..SweepSpec::default()
        }
    }

    #[test]
    fn audit_single_points() {
        let report = gap_audit(&single(3, 3, ValueSpec::one_over_m(), 1.0)).unwrap();
        assert!(close(report.max_ratio, 5.0 / 3.0));
        assert_eq!(report.n_points, 1);
        assert!(report.passed());

        let report = gap_audit(&single(2, 2, ValueSpec::number(1.0), 3.0)).unwrap();
        assert!(close(report.max_ratio, 1.0));
    }

    #[test]
    fn audit_skips_unbounded_points() {
        let mut spec = single(2, 2, ValueSpec::number(0.0), 0.0);
        spec.r_values.push(ValueSpec::number(1.0));
        let report = gap_audit(&spec).unwrap();
        assert_eq!(report.skipped.len(), 1);
        assert_eq!(report.n_points, 1);
        assert!(report.passed());
    }

    #[test]
    fn audit_rejects_empty_grid() {
        let spec = SweepSpec {
            m_values: vec![],
            ..single(2, 2, ValueSpec::number(0.0), 1.0)
        };
        assert!(gap_audit(&spec).is_err());
    }

    #[test]
    fn audit_argmax_prefers_smallest_point_on_ties() {
        // both points sit on the edge bound with ratio 1
        let mut spec = single(2, 2, ValueSpec::number(1.0), 3.0);
        spec.r_values.insert(0, ValueSpec::number(4.0));
        let report = gap_audit(&spec).unwrap();
        assert_eq!(report.argmax.unwrap().r, 3.0);
    }
}
