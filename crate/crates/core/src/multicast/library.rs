use bitvec::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Bits = BitVec<u8, Msb0>;

/// N equal-length files. Files may carry trailing zero padding so that their
/// length splits evenly; `original_len` records the unpadded length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Library {
    files: Vec<Bits>,
    original_len: usize,
}

impl Library {
    pub fn from_files(files: Vec<Bits>) -> Result<Self> {
        let len = files
            .first()
            .map(|f| f.len())
            .ok_or_else(|| Error::InvalidLibrary("no files".into()))?;
        if let Some(i) = files.iter().position(|f| f.len() != len) {
            return Err(Error::InvalidLibrary(format!(
                "file {} has {} bits, expected {len}",
                i + 1,
                files[i].len()
            )));
        }
        Ok(Self {
            files,
            original_len: len,
        })
    }

    /// `n_files` files of `bits` uniformly random bits each.
    pub fn random<R: Rng + ?Sized>(n_files: usize, bits: usize, rng: &mut R) -> Self {
        let files = (0..n_files)
            .map(|_| (0..bits).map(|_| rng.gen::<bool>()).collect())
            .collect();
        Self {
            files,
            original_len: bits,
        }
    }

    /// Seeded random library padded to a multiple of `parts` bits.
    pub fn generate(n_files: usize, bits: usize, parts: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random(n_files, bits, &mut rng).padded_to_multiple(parts)
    }

    /// Appends zero bits to every file until its length divides by `parts`.
    pub fn padded_to_multiple(mut self, parts: usize) -> Self {
        let len = self.file_len();
        let target = len.div_ceil(parts.max(1)) * parts.max(1);
        for file in &mut self.files {
            file.resize(target, false);
        }
        self
    }

    pub fn n_files(&self) -> usize {
        self.files.len()
    }

    /// Current (possibly padded) file length in bits.
    pub fn file_len(&self) -> usize {
        self.files.first().map_or(0, |f| f.len())
    }

    pub fn original_len(&self) -> usize {
        self.original_len
    }

    /// File `index`, counted from 1.
    pub fn file(&self, index: usize) -> Option<&BitSlice<u8, Msb0>> {
        index
            .checked_sub(1)
            .and_then(|i| self.files.get(i))
            .map(|f| f.as_bitslice())
    }
}
