//! Brute-force reference implementations, for validation only.
//!
//! `ztype_brute` follows the definition directly: it maximizes over *all*
//! short-border decompositions `w = z v z` instead of committing to the
//! longest short border, so it shares nothing with the fast recurrence and
//! can catch a misreading of it. `pattern_embeds_brute` searches arbitrary
//! patterns by trying image-length assignments; the embedding problem is
//! NP-complete in general, so everything here carries hard size caps.

use crate::error::{Error, Result};
use crate::pattern::Morphism;
use crate::word::Word;

pub const ZTYPE_CAP: usize = 64;
pub const EMBED_CAP: usize = 40;
pub const PATTERN_WORD_CAP: usize = 30;
pub const PATTERN_LEN_CAP: usize = 15;

/// Zimin type by definition, memoized over prefixes: the type of a non-empty
/// word is `1 + max ztype(z)` over all its borders `z` with `2|z| < |w|`
/// (the empty border always qualifies).
pub fn ztype_brute(w: &[u8]) -> Result<u32> {
    if w.len() > ZTYPE_CAP {
        return Err(Error::LengthCapExceeded { cap: ZTYPE_CAP });
    }
    let mut memo = vec![0u32; w.len() + 1];
    for len in 1..=w.len() {
        let mut best = 0;
        for j in 1..len {
            if 2 * j < len && w[..j] == w[len - j..len] {
                best = best.max(memo[j]);
            }
        }
        memo[len] = 1 + best;
    }
    Ok(memo[w.len()])
}

/// `tbl[start][len]` = brute Zimin type of `w[start..start+len]`. Borders of
/// a factor are shorter factors at the same start, so the table fills by
/// increasing length.
fn factor_type_table(w: &[u8]) -> Vec<Vec<u32>> {
    let n = w.len();
    let mut tbl = vec![vec![0u32; n + 1]; n + 1];
    for len in 1..=n {
        for start in 0..=n - len {
            let f = &w[start..start + len];
            let mut best = 0;
            for j in 1..len {
                if 2 * j < len && f[..j] == f[len - j..] {
                    best = best.max(tbl[start][j]);
                }
            }
            tbl[start][len] = 1 + best;
        }
    }
    tbl
}

/// Maximum brute Zimin type over all factors of `w`.
pub fn max_factor_ztype_brute(w: &[u8]) -> Result<u32> {
    if w.len() > EMBED_CAP {
        return Err(Error::LengthCapExceeded { cap: EMBED_CAP });
    }
    let tbl = factor_type_table(w);
    let best = (0..w.len())
        .flat_map(|start| (1..=w.len() - start).map(move |len| (start, len)))
        .map(|(start, len)| tbl[start][len])
        .max()
        .unwrap_or(0);
    Ok(best)
}

/// Ground truth for the Zimin search problem: does some factor of `w` have
/// brute Zimin type at least `k`?
pub fn embeds_zimin_brute(w: &[u8], k: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(max_factor_ztype_brute(w)? >= k)
}

/// Searches a non-erasing morphism embedding an arbitrary pattern in `w`.
///
/// Factors are tried longest first (start ascending within a length) and,
/// inside a factor, image-length tuples in lexicographic order; the first
/// witness found is returned. Pattern variables must be exactly `1..=r`.
pub fn pattern_embeds_brute(pattern: &[u32], w: &[u8]) -> Result<Option<Morphism>> {
    if pattern.is_empty() {
        return Err(Error::InvalidPattern("pattern is empty".into()));
    }
    if pattern.len() > PATTERN_LEN_CAP {
        return Err(Error::LengthCapExceeded {
            cap: PATTERN_LEN_CAP,
        });
    }
    if w.len() > PATTERN_WORD_CAP {
        return Err(Error::LengthCapExceeded {
            cap: PATTERN_WORD_CAP,
        });
    }
    let rank = *pattern.iter().max().unwrap() as usize;
    let mut mult = vec![0usize; rank + 1];
    for &v in pattern {
        if v == 0 {
            return Err(Error::InvalidPattern("variable indices start at 1".into()));
        }
        mult[v as usize] += 1;
    }
    if mult[1..].contains(&0) {
        return Err(Error::InvalidPattern(
            "variables must be contiguous 1..=r".into(),
        ));
    }

    for len in (pattern.len()..=w.len()).rev() {
        for start in 0..=w.len() - len {
            let factor = &w[start..start + len];
            let mut lens = vec![0usize; rank];
            if assign(pattern, &mult, factor, &mut lens, 1, len) {
                let mut images: Vec<Option<&[u8]>> = vec![None; rank];
                let mut pos = 0;
                for &v in pattern {
                    let l = lens[v as usize - 1];
                    images[v as usize - 1].get_or_insert(&factor[pos..pos + l]);
                    pos += l;
                }
                let images = images
                    .into_iter()
                    .map(|img| Word::from(img.expect("every variable occurs")))
                    .collect();
                return Ok(Some(Morphism::new(images)?));
            }
        }
    }
    Ok(None)
}

/// Tries image lengths for variable `var` and beyond so that the images
/// concatenate to exactly `remaining` more symbols; checks the candidate
/// once all lengths are fixed.
fn assign(
    pattern: &[u32],
    mult: &[usize],
    factor: &[u8],
    lens: &mut [usize],
    var: usize,
    remaining: usize,
) -> bool {
    if var > lens.len() {
        return remaining == 0 && matches(pattern, factor, lens);
    }
    let reserved: usize = mult[var + 1..].iter().sum();
    if remaining < reserved + mult[var] {
        return false;
    }
    let max_len = (remaining - reserved) / mult[var];
    for l in 1..=max_len {
        lens[var - 1] = l;
        if assign(
            pattern,
            mult,
            factor,
            lens,
            var + 1,
            remaining - mult[var] * l,
        ) {
            return true;
        }
    }
    false
}

fn matches(pattern: &[u32], factor: &[u8], lens: &[usize]) -> bool {
    let mut images: Vec<Option<&[u8]>> = vec![None; lens.len()];
    let mut pos = 0;
    for &v in pattern {
        let l = lens[v as usize - 1];
        let piece = &factor[pos..pos + l];
        match images[v as usize - 1] {
            Some(img) if img != piece => return false,
            Some(_) => {}
            None => images[v as usize - 1] = Some(piece),
        }
        pos += l;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ztype::ztype;

    #[test]
    fn brute_examples() {
        assert_eq!(ztype_brute(b"adbadccccadbad").unwrap(), 3);
        assert_eq!(ztype_brute(b"").unwrap(), 0);
        assert_eq!(ztype_brute(b"aaaaaaa").unwrap(), 3);
    }

    #[test]
    fn embedding_examples() {
        assert!(embeds_zimin_brute(b"ccccadbadccccadbadccccc", 3).unwrap());
        assert!(!embeds_zimin_brute(b"aaabbaabbaa", 3).unwrap());
        assert!(!embeds_zimin_brute(b"", 1).unwrap());
        assert!(embeds_zimin_brute(b"aaabbaabbaa", 2).unwrap());
    }

    #[test]
    fn caps_are_enforced() {
        assert!(ztype_brute(&[b'a'; 65]).is_err());
        assert!(max_factor_ztype_brute(&[b'a'; 41]).is_err());
        assert!(pattern_embeds_brute(&[1], &[b'a'; 31]).is_err());
        assert!(pattern_embeds_brute(&[1; 16], b"abc").is_err());
        assert!(embeds_zimin_brute(b"ab", 0).is_err());
    }

    #[test]
    fn pattern_search_examples() {
        let h = pattern_embeds_brute(&[1, 2, 1], b"adbad").unwrap().unwrap();
        assert_eq!(h.image(1).unwrap(), &"ad");
        assert_eq!(h.image(2).unwrap(), &"b");

        let h = pattern_embeds_brute(&[1, 2, 1], b"xadbady")
            .unwrap()
            .unwrap();
        assert_eq!(h.image(1).unwrap(), &"ad");
        assert_eq!(h.image(2).unwrap(), &"b");

        let h = pattern_embeds_brute(&[1, 1], b"abab").unwrap().unwrap();
        assert_eq!(h.image(1).unwrap(), &"ab");

        assert!(pattern_embeds_brute(&[1, 1], b"abc").unwrap().is_none());
    }

    #[test]
    fn pattern_validation() {
        assert!(pattern_embeds_brute(&[], b"ab").is_err());
        assert!(pattern_embeds_brute(&[1, 3], b"ab").is_err());
        assert!(pattern_embeds_brute(&[0, 1], b"ab").is_err());
    }

    #[test]
    fn brute_agrees_with_fast_path_on_small_binary_words() {
        for len in 0..=12usize {
            for mask in 0..1u32 << len {
                let w: Vec<u8> = (0..len).map(|i| b'a' + ((mask >> i) & 1) as u8).collect();
                assert_eq!(ztype_brute(&w).unwrap(), ztype(&w), "w={w:?}");
            }
        }
    }
}
