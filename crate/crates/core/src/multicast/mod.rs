//! Bit-exact execution of the coded-multicast fronthaul protocol.
//!
//! Each file is cut into M contiguous parts and EN m caches part m of every
//! file. For a demand the cloud multicasts `F[i][j] ^ F[i][j+1]` for every
//! demanded file and every adjacent pair of parts; each EN peels the chain
//! outward from its cached part and ends up holding every demanded file.

mod delivery;
mod library;
mod protocol;

pub use delivery::{run_delivery, simulate_delivery, DeliveryReport};
pub use library::{Bits, Library};
pub use protocol::{
    decode_at_en, encode_fronthaul, split_and_cache, CacheContents, FronthaulMessage, SubfileId,
    SubfileTable,
};
