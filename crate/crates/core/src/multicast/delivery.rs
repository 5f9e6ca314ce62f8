use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::library::Library;
use super::protocol::{decode_at_en, encode_fronthaul, split_and_cache};
use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::ndt::Ndt;
use crate::scheme::{scheme_ndt, SchemeId};

/// Outcome of one simulated coded-multicast delivery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeliveryReport {
    /// Requested file per user, counted from 1.
    pub demand: Vec<usize>,
    pub fronthaul_bits: u64,
    /// `fronthaul_bits / (L r)` with L the (padded) file length.
    pub implied_delta_f: Ndt,
    pub per_en_reconstruction: Vec<bool>,
    /// Edge NDT of zero forcing once every EN holds the demanded files.
    pub edge_delta_e: Ndt,
}

impl DeliveryReport {
    pub fn all_reconstructed(&self) -> bool {
        self.per_en_reconstruction.iter().all(|&ok| ok)
    }
}

/// Generates a library of `cfg.n` files of `file_bits` bits from `seed`, runs
/// caching, encoding and decoding, and checks every EN against the library.
///
/// `demand` lists one file per user; when absent, K distinct files are drawn
/// from the same seeded generator. A failed reconstruction shows up as a
/// `false` entry in the report rather than an error.
pub fn simulate_delivery(
    cfg: &NetworkConfig,
    file_bits: usize,
    demand: Option<&[usize]>,
    seed: u64,
) -> Result<DeliveryReport> {
    cfg.validate()?;
    if cfg.r <= 0.0 {
        return Err(Error::ZeroFronthaulRate);
    }
    if file_bits == 0 {
        return Err(Error::InvalidLibrary("files must have at least one bit".into()));
    }
    // fails unless mu = 1/M
    let edge_delta_e = scheme_ndt(SchemeId::CodedMulticast, cfg)?.delta_e;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let library = Library::random(cfg.n, file_bits, &mut rng).padded_to_multiple(cfg.m);
    let demand = match demand {
        Some(d) => {
            if d.len() != cfg.k {
                return Err(Error::InvalidDemand(format!(
                    "{} requests for K = {} users",
                    d.len(),
                    cfg.k
                )));
            }
            d.to_vec()
        }
        None => sample(&mut rng, cfg.n, cfg.k)
            .into_iter()
            .map(|i| i + 1)
            .collect(),
    };

    let (table, caches) = split_and_cache(&library, cfg.m)?;
    let messages = encode_fronthaul(&demand, &table)?;
    let fronthaul_bits: u64 = messages.iter().map(|m| m.payload.len() as u64).sum();

    let per_en_reconstruction = caches
        .iter()
        .map(|cache| match decode_at_en(cache, &messages, &demand) {
            Ok(recovered) => recovered.iter().all(|(&file, parts)| {
                let original = library.file(file).expect("demand validated");
                parts.len() == cfg.m
                    && parts.iter().map(|p| p.len()).sum::<usize>() == original.len()
                    && parts
                        .iter()
                        .flat_map(|p| p.iter().by_vals())
                        .eq(original.iter().by_vals())
            }),
            Err(_) => false,
        })
        .collect();

    let padded_len = library.file_len() as f64;
    Ok(DeliveryReport {
        demand,
        fronthaul_bits,
        implied_delta_f: Ndt::ratio(fronthaul_bits as f64, padded_len * cfg.r),
        per_en_reconstruction,
        edge_delta_e,
    })
}

/// [`simulate_delivery`], failing with [`Error::ProtocolViolation`] if any EN
/// did not recover every demanded file exactly.
pub fn run_delivery(
    cfg: &NetworkConfig,
    file_bits: usize,
    demand: Option<&[usize]>,
    seed: u64,
) -> Result<DeliveryReport> {
    let report = simulate_delivery(cfg, file_bits, demand, seed)?;
    let failed: Vec<usize> = report
        .per_en_reconstruction
        .iter()
        .enumerate()
        .filter(|(_, &ok)| !ok)
        .map(|(i, _)| i + 1)
        .collect();
    if failed.is_empty() {
        Ok(report)
    } else {
        Err(Error::ProtocolViolation { ens: failed })
    }
}
