use std::collections::{BTreeMap, BTreeSet, HashMap};

use bitvec::prelude::*;

use super::library::{Bits, Library};
use crate::error::{Error, Result};

/// Part `part` of file `file`, both counted from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubfileId {
    pub file: usize,
    pub part: usize,
}

/// Every file of a library cut into `M` contiguous, equal-length parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfileTable {
    parts: Vec<Vec<Bits>>,
    n_parts: usize,
    part_len: usize,
}

impl SubfileTable {
    pub fn n_files(&self) -> usize {
        self.parts.len()
    }

    pub fn n_parts(&self) -> usize {
        self.n_parts
    }

    pub fn part_len(&self) -> usize {
        self.part_len
    }

    pub fn get(&self, id: SubfileId) -> Option<&BitSlice<u8, Msb0>> {
        let file = self.parts.get(id.file.checked_sub(1)?)?;
        file.get(id.part.checked_sub(1)?).map(|p| p.as_bitslice())
    }

    fn part(&self, file: usize, part: usize) -> &Bits {
        &self.parts[file - 1][part - 1]
    }
}

/// What EN `en` stores: part `en` of every file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheContents {
    pub en: usize,
    pub n_ens: usize,
    pub stored: BTreeMap<usize, Bits>,
}

impl CacheContents {
    pub fn bits(&self) -> usize {
        self.stored.values().map(|b| b.len()).sum()
    }
}

/// Splits every file into `m` parts and places part `j` in the cache of EN `j`.
pub fn split_and_cache(library: &Library, m: usize) -> Result<(SubfileTable, Vec<CacheContents>)> {
    if m == 0 {
        return Err(Error::InvalidConfig("M must be at least 1".into()));
    }
    let len = library.file_len();
    if !len.is_multiple_of(m) {
        return Err(Error::NotDivisible { len, parts: m });
    }
    let part_len = len / m;

    let parts: Vec<Vec<Bits>> = (1..=library.n_files())
        .map(|i| {
            let file = library.file(i).expect("index in range");
            file.chunks(part_len.max(1))
                .take(m)
                .map(|c| c.to_bitvec())
                .chain(std::iter::repeat_with(Bits::new))
                .take(m)
                .collect()
        })
        .collect();

    let caches = (1..=m)
        .map(|en| CacheContents {
            en,
            n_ens: m,
            stored: parts
                .iter()
                .enumerate()
                .map(|(i, file)| (i + 1, file[en - 1].clone()))
                .collect(),
        })
        .collect();

    Ok((
        SubfileTable {
            parts,
            n_parts: m,
            part_len,
        },
        caches,
    ))
}

/// `F[file][chain] ^ F[file][chain + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FronthaulMessage {
    pub file: usize,
    pub chain: usize,
    pub payload: Bits,
}

fn distinct_files(demand: &[usize], n_files: usize) -> Result<BTreeSet<usize>> {
    if let Some(&bad) = demand.iter().find(|&&i| i == 0 || i > n_files) {
        return Err(Error::InvalidDemand(format!(
            "file index {bad} outside 1..={n_files}"
        )));
    }
    Ok(demand.iter().copied().collect())
}

/// Coded multicast for `demand`: one XOR of adjacent parts per chain link of
/// every distinct demanded file, ordered by (file, chain).
pub fn encode_fronthaul(demand: &[usize], table: &SubfileTable) -> Result<Vec<FronthaulMessage>> {
    let files = distinct_files(demand, table.n_files())?;
    let mut messages = Vec::with_capacity(files.len() * table.n_parts().saturating_sub(1));
    for &file in &files {
        for chain in 1..table.n_parts() {
            let mut payload = table.part(file, chain).clone();
            payload ^= table.part(file, chain + 1).as_bitslice();
            messages.push(FronthaulMessage {
                file,
                chain,
                payload,
            });
        }
    }
    Ok(messages)
}

/// Recovers all parts of every demanded file at one EN.
///
/// Starting from the cached part `m`, parts below are peeled with
/// `F[j] = F[j+1] ^ msg(j)` and parts above with `F[j] = F[j-1] ^ msg(j-1)`.
/// The result maps each distinct demanded file to its parts in order.
pub fn decode_at_en(
    cache: &CacheContents,
    messages: &[FronthaulMessage],
    demand: &[usize],
) -> Result<BTreeMap<usize, Vec<Bits>>> {
    let files = distinct_files(demand, cache.stored.len())?;
    let by_link: HashMap<(usize, usize), &Bits> = messages
        .iter()
        .map(|msg| ((msg.file, msg.chain), &msg.payload))
        .collect();
    let m = cache.n_ens;
    let own = cache.en;

    let mut recovered = BTreeMap::new();
    for file in files {
        let mut parts: Vec<Option<Bits>> = vec![None; m];
        parts[own - 1] = Some(cache.stored[&file].clone());

        for part in (1..own).rev() {
            let link = by_link.get(&(file, part)).ok_or(Error::DecodeFailure {
                file,
                part,
                chain: part,
            })?;
            let mut bits = parts[part].clone().expect("filled on previous step");
            bits ^= link.as_bitslice();
            parts[part - 1] = Some(bits);
        }
        for part in own + 1..=m {
            let link = by_link.get(&(file, part - 1)).ok_or(Error::DecodeFailure {
                file,
                part,
                chain: part - 1,
            })?;
            let mut bits = parts[part - 2].clone().expect("filled on previous step");
            bits ^= link.as_bitslice();
            parts[part - 1] = Some(bits);
        }

        recovered.insert(file, parts.into_iter().map(Option::unwrap).collect());
    }
    Ok(recovered)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn library(files: &[&str]) -> Library {
        Library::from_files(
            files
                .iter()
                .map(|s| s.chars().map(|c| c == '1').collect())
                .collect(),
        )
        .unwrap()
    }

    fn bits(s: &str) -> Bits {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn split_is_contiguous() {
        let (table, caches) = split_and_cache(&library(&["101100"]), 3).unwrap();
        assert_eq!(table.get(SubfileId { file: 1, part: 1 }).unwrap(), bits("10").as_bitslice());
        assert_eq!(table.get(SubfileId { file: 1, part: 2 }).unwrap(), bits("11").as_bitslice());
        assert_eq!(table.get(SubfileId { file: 1, part: 3 }).unwrap(), bits("00").as_bitslice());
        assert_eq!(caches[1].stored[&1], bits("11"));
    }

    #[test]
    fn cache_holds_n_l_over_m() {
        let lib = Library::generate(4, 12, 3, 1);
        let (_, caches) = split_and_cache(&lib, 3).unwrap();
        assert!(caches.iter().all(|c| c.bits() == 16));
    }

    #[test]
    fn single_en_caches_whole_file() {
        let (table, caches) = split_and_cache(&library(&["1011"]), 1).unwrap();
        assert_eq!(table.get(SubfileId { file: 1, part: 1 }).unwrap(), bits("1011").as_bitslice());
        assert_eq!(caches.len(), 1);
        assert_eq!(caches[0].bits(), 4);
        assert!(encode_fronthaul(&[1], &table).unwrap().is_empty());
    }

    #[test]
    fn split_requires_divisible_length() {
        assert_eq!(
            split_and_cache(&library(&["10110"]), 3).unwrap_err(),
            Error::NotDivisible { len: 5, parts: 3 }
        );
    }

    #[test]
    fn encode_counts() {
        let lib = Library::generate(2, 12, 3, 5);
        let (table, _) = split_and_cache(&lib, 3).unwrap();
        let msgs = encode_fronthaul(&[1, 2], &table).unwrap();
        assert_eq!(msgs.len(), 4);
        assert_eq!(msgs.iter().map(|m| m.payload.len()).sum::<usize>(), 16);
        let order: Vec<_> = msgs.iter().map(|m| (m.file, m.chain)).collect();
        assert_eq!(order, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
    }

    #[test]
    fn encode_single_xor() {
        let (table, _) = split_and_cache(&library(&["1100"]), 2).unwrap();
        let msgs = encode_fronthaul(&[1], &table).unwrap();
        assert_eq!(msgs, vec![FronthaulMessage { file: 1, chain: 1, payload: bits("11") }]);
    }

    #[test]
    fn duplicate_demands_are_sent_once() {
        let lib = Library::generate(3, 12, 3, 2);
        let (table, _) = split_and_cache(&lib, 3).unwrap();
        let msgs = encode_fronthaul(&[1, 1, 2], &table).unwrap();
        assert_eq!(msgs.len(), 2 * 2);
    }

    #[test]
    fn encode_rejects_unknown_files() {
        let lib = Library::generate(2, 4, 2, 2);
        let (table, _) = split_and_cache(&lib, 2).unwrap();
        assert!(matches!(encode_fronthaul(&[3], &table), Err(Error::InvalidDemand(_))));
        assert!(matches!(encode_fronthaul(&[0], &table), Err(Error::InvalidDemand(_))));
    }

    #[test]
    fn middle_en_walks_both_ways() {
        let lib = library(&["100111"]);
        let (table, caches) = split_and_cache(&lib, 3).unwrap();
        let msgs = encode_fronthaul(&[1], &table).unwrap();
        let got = decode_at_en(&caches[1], &msgs, &[1]).unwrap();
        assert_eq!(got[&1], vec![bits("10"), bits("01"), bits("11")]);
    }

    #[test]
    fn two_en_xor_involution() {
        let lib = library(&["0110"]);
        let (table, caches) = split_and_cache(&lib, 2).unwrap();
        let msgs = encode_fronthaul(&[1], &table).unwrap();
        let got = decode_at_en(&caches[0], &msgs, &[1]).unwrap();
        assert_eq!(got[&1][1], bits("10"));
    }

    #[test]
    fn missing_link_is_reported() {
        let lib = Library::generate(2, 12, 3, 3);
        let (table, caches) = split_and_cache(&lib, 3).unwrap();
        let mut msgs = encode_fronthaul(&[1, 2], &table).unwrap();
        msgs.retain(|m| !(m.file == 2 && m.chain == 2));
        assert_eq!(
            decode_at_en(&caches[0], &msgs, &[1, 2]).unwrap_err(),
            Error::DecodeFailure { file: 2, part: 3, chain: 2 }
        );
        // EN 3 reaches part 2 only through the dropped link
        assert!(decode_at_en(&caches[2], &msgs, &[1, 2]).is_err());
    }
}
