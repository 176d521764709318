//! Zimin patterns and the morphisms that witness their embeddings.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::word::Word;

/// Largest supported pattern rank; `Z_k` has `2^k - 1` symbols, so position
/// arithmetic stays inside `u64` for ranks up to 63.
pub const MAX_RANK: u32 = 63;

/// The rank-`k` Zimin pattern `Z_k`, defined by `Z_1 = x_1` and
/// `Z_k = Z_{k-1} x_k Z_{k-1}`.
///
/// The symbol sequence is not materialized: position `i` (1-based) carries
/// variable `v(i) + 1` where `v` is the 2-adic valuation, which the
/// `symbols` iterator produces on demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZiminPattern {
    rank: u32,
}

impl ZiminPattern {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge {
                rank,
                max: MAX_RANK,
            });
        }
        Ok(ZiminPattern { rank })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `2^k - 1`.
    pub fn len(&self) -> u64 {
        (1u64 << self.rank) - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Variable indices in pattern order, `1..=rank`.
    pub fn symbols(&self) -> impl Iterator<Item = u32> {
        (1..=self.len()).map(|i| i.trailing_zeros() + 1)
    }

    /// Materialized symbol sequence; meant for small ranks.
    pub fn to_vec(&self) -> Vec<u32> {
        self.symbols().collect()
    }
}

/// `Z_k` as a pattern value.
pub fn zimin_word(k: u32) -> Result<ZiminPattern> {
    ZiminPattern::new(k)
}

/// A non-erasing morphism on pattern variables: variable `x_j` maps to the
/// non-empty word `images[j-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        for (j, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::EmptyImage {
                    variable: j as u32 + 1,
                });
            }
        }
        Ok(Morphism { images })
    }

    /// Number of variables with images.
    pub fn rank(&self) -> u32 {
        self.images.len() as u32
    }

    /// Image of `x_var`, if defined.
    pub fn image(&self, var: u32) -> Option<&Word> {
        if var == 0 {
            None
        } else {
            self.images.get(var as usize - 1)
        }
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Applies the morphism to a pattern by concatenating images in pattern
    /// order. Fails if the pattern uses a variable without an image.
    pub fn apply(&self, pattern: &ZiminPattern) -> Result<Word> {
        if pattern.rank() > self.rank() {
            return Err(Error::MissingImage {
                variable: self.rank() + 1,
            });
        }
        let mut out = Vec::new();
        for var in pattern.symbols() {
            out.extend_from_slice(self.images[var as usize - 1].as_bytes());
        }
        Ok(Word::new(out))
    }
}

/// `h(p)` for a Zimin pattern `p`.
pub fn apply_morphism(pattern: &ZiminPattern, h: &Morphism) -> Result<Word> {
    h.apply(pattern)
}

/// Length-`len` prefix of the fixed point of a symbol morphism that is
/// prolongable on `seed` (the image of `seed` starts with `seed` and is
/// longer). All rules must be non-erasing and every reachable symbol needs a
/// rule.
pub fn iterate_morphism(rules: &BTreeMap<u8, Vec<u8>>, seed: u8, len: usize) -> Result<Word> {
    for (&sym, image) in rules {
        if image.is_empty() {
            return Err(Error::ErasingRule(sym as char));
        }
    }
    let seed_image = rules.get(&seed).ok_or(Error::MissingRule(seed as char))?;
    if seed_image.len() < 2 || seed_image[0] != seed {
        return Err(Error::NonProlongable(seed as char));
    }

    // The fixed point is image(g[1]) image(g[2]) ...; grow the buffer by
    // expanding one already-generated symbol at a time. The read cursor can
    // never catch up with the write end because every rule appends at least
    // one symbol.
    let mut buf: Vec<u8> = seed_image.clone();
    let mut read = 1;
    while buf.len() < len {
        let c = buf[read];
        read += 1;
        let image = rules.get(&c).ok_or(Error::MissingRule(c as char))?;
        buf.extend_from_slice(image);
    }
    buf.truncate(len);
    Ok(Word::new(buf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules(pairs: &[(u8, &str)]) -> BTreeMap<u8, Vec<u8>> {
        pairs
            .iter()
            .map(|&(c, w)| (c, w.as_bytes().to_vec()))
            .collect()
    }

    #[test]
    fn zimin_word_shapes() {
        assert_eq!(zimin_word(1).unwrap().to_vec(), vec![1]);
        assert_eq!(zimin_word(3).unwrap().to_vec(), vec![1, 2, 1, 3, 1, 2, 1]);
        assert_eq!(zimin_word(4).unwrap().len(), 15);
        assert!(zimin_word(0).is_err());
        assert!(zimin_word(64).is_err());
    }

    #[test]
    fn variable_occurrence_counts() {
        // x_j occurs exactly 2^{k-j} times in Z_k.
        let pattern = zimin_word(5).unwrap();
        let mut counts = [0u64; 6];
        for v in pattern.symbols() {
            counts[v as usize] += 1;
        }
        for (j, &count) in counts.iter().enumerate().skip(1) {
            assert_eq!(count, 1 << (5 - j));
        }
    }

    #[test]
    fn apply_examples() {
        let h = Morphism::new(vec!["ad".into(), "b".into()]).unwrap();
        assert_eq!(
            apply_morphism(&zimin_word(2).unwrap(), &h).unwrap(),
            "adbad"
        );

        let h3 = Morphism::new(vec!["ad".into(), "b".into(), "cccc".into()]).unwrap();
        assert_eq!(
            apply_morphism(&zimin_word(3).unwrap(), &h3).unwrap(),
            "adbadccccadbad"
        );

        let h1 = Morphism::new(vec!["a".into()]).unwrap();
        assert_eq!(apply_morphism(&zimin_word(1).unwrap(), &h1).unwrap(), "a");
    }

    #[test]
    fn morphism_validation() {
        assert_eq!(
            Morphism::new(vec!["a".into(), Word::empty()]).unwrap_err(),
            Error::EmptyImage { variable: 2 }
        );
        let h = Morphism::new(vec!["a".into()]).unwrap();
        assert_eq!(
            h.apply(&zimin_word(2).unwrap()).unwrap_err(),
            Error::MissingImage { variable: 2 }
        );
    }

    #[test]
    fn iterate_morphism_examples() {
        let g = rules(&[(b'a', "abaa"), (b'b', "abab")]);
        assert_eq!(iterate_morphism(&g, b'a', 8).unwrap(), "abaaabab");

        let fib = rules(&[(b'a', "ab"), (b'b', "a")]);
        assert_eq!(iterate_morphism(&fib, b'a', 5).unwrap(), "abaab");

        let doubling = rules(&[(b'a', "aa")]);
        assert_eq!(iterate_morphism(&doubling, b'a', 4).unwrap(), "aaaa");
    }

    #[test]
    fn iterate_morphism_rejects_bad_rules() {
        assert_eq!(
            iterate_morphism(&rules(&[(b'a', "ba")]), b'a', 4).unwrap_err(),
            Error::NonProlongable('a')
        );
        assert_eq!(
            iterate_morphism(&rules(&[(b'a', "a")]), b'a', 4).unwrap_err(),
            Error::NonProlongable('a')
        );
        assert_eq!(
            iterate_morphism(&rules(&[(b'a', "ab"), (b'b', "")]), b'a', 4).unwrap_err(),
            Error::ErasingRule('b')
        );
        assert_eq!(
            iterate_morphism(&rules(&[(b'a', "ab")]), b'a', 4).unwrap_err(),
            Error::MissingRule('b')
        );
    }
}
