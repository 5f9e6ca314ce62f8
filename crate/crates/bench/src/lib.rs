//! Shared inputs for the criterion benches.

use fog_ndt::{NetworkConfig, SweepSpec};

/// Every point of the standard audit grid.
pub fn standard_points() -> Vec<NetworkConfig> {
    SweepSpec::standard_grid()
        .points()
        .expect("standard grid is valid")
}

/// (M, K) pairs used for the delivery benchmarks, with N = K + 2 and mu = 1/M.
pub fn delivery_configs(r: f64) -> Vec<NetworkConfig> {
    [(2, 2), (3, 3), (4, 6), (6, 6)]
        .into_iter()
        .map(|(m, k)| NetworkConfig::new(m, k, k + 2, 1.0 / m as f64, r).expect("valid"))
        .collect()
}
