//! Zimin types of words and prefixes, and witness reconstruction.
//!
//! The Zimin type of a word `w` is the largest `k` such that `w = h(Z_k)`
//! for a non-erasing morphism `h`; the empty word has type 0. It satisfies
//! `Ztype(w) = 1 + Ztype(ShortBord(w))`, which the online border scanner
//! evaluates in a single linear pass.

use crate::borders::{short_border_array, BorderState};
use crate::error::{Error, Result};
use crate::pattern::Morphism;

/// Zimin type of `w` in `O(|w|)` time.
pub fn ztype(w: &[u8]) -> u32 {
    let mut state = BorderState::new();
    for &c in w {
        state.push(c);
    }
    state.ztype()
}

/// `Ztype[0..=n]`: entry `j` is the Zimin type of the length-`j` prefix.
pub fn ztype_prefixes(w: &[u8]) -> Vec<u32> {
    let mut state = BorderState::new();
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(0);
    for &c in w {
        out.push(state.push(c).ztype);
    }
    out
}

/// A morphism `h` with `h(Z_k) = w`, for any `1 <= k <= ztype(w)`.
///
/// The witness is canonical: the image of `x_1` is reached by descending the
/// longest-short-border chain `k - 1` times, and each `x_j` image is the
/// middle part left between two copies of the level-`(j-1)` border. For
/// `k < ztype(w)` the image of `x_k` absorbs the whole middle.
pub fn decompose(w: &[u8], k: u32) -> Result<Morphism> {
    if k == 0 {
        return Err(Error::ZeroRank);
    }
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let sb = short_border_array(w);
    let full_type = {
        // Ztype along the chain: recompute cheaply from the SB array.
        let mut types = vec![0u32; w.len() + 1];
        for j in 1..=w.len() {
            types[j] = types[sb[j - 1]] + 1;
        }
        types[w.len()]
    };
    if k > full_type {
        return Err(Error::RankExceedsType {
            rank: k,
            ztype: full_type,
        });
    }

    // chain[j] = length of the level-j word, chain[k] = |w|.
    let mut chain = vec![0usize; k as usize + 1];
    chain[k as usize] = w.len();
    for j in (1..k as usize).rev() {
        chain[j] = sb[chain[j + 1] - 1];
    }

    let mut images = Vec::with_capacity(k as usize);
    images.push(w[..chain[1]].to_vec().into());
    for j in 2..=k as usize {
        images.push(w[chain[j - 1]..chain[j] - chain[j - 1]].to_vec().into());
    }
    Morphism::new(images)
}

/// The `i`-th term of the dominating sequence `1^2 2^4 3^8 ... n^{2^n} ...`:
/// the unique `n` with `2^n - 1 <= i <= 2^{n+1} - 2`. Bit-length arithmetic
/// only; `max_sequence_value(0) = 0` by convention, matching `Ztype[0]`.
pub fn max_sequence_value(i: u64) -> u32 {
    (i + 1).ilog2()
}
