//! Searching Zimin patterns inside a word: given `w` and `k`, decide whether
//! `Z_k` embeds in `w` (some factor of `w` is an image of `Z_k`) and report a
//! witness. One online scan per suffix gives quadratic time in linear space.

use crate::borders::BorderState;
use crate::error::{Error, Result};
use crate::pattern::Morphism;
use crate::ztype::decompose;

/// A factor `w[start..=end]` (1-based, inclusive) that is an image of
/// `Z_rank` under `witness`.
#[derive(Debug, Clone)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
    pub rank: u32,
    pub witness: Morphism,
}

/// Finds an embedding of `Z_k` in `w`, or `None` when no factor has Zimin
/// type at least `k`. Deterministic: among all qualifying factors the one
/// with the smallest start and then the smallest end is returned.
pub fn search_zimin(w: &[u8], k: u32) -> Result<Option<Occurrence>> {
    if k == 0 {
        return Err(Error::ZeroRank);
    }
    for start in 0..w.len() {
        let mut state = BorderState::new();
        for (offset, &c) in w[start..].iter().enumerate() {
            let step = state.push(c);
            if step.ztype >= k {
                let factor = &w[start..=start + offset];
                let witness = decompose(factor, k)?;
                return Ok(Some(Occurrence {
                    start: start + 1,
                    end: start + offset + 1,
                    rank: k,
                    witness,
                }));
            }
        }
    }
    Ok(None)
}

/// Maximum Zimin type over all factors of `w`, with one witness occurrence
/// chosen by the same smallest-start, smallest-end rule; `(0, None)` for the
/// empty word.
pub fn max_factor_ztype(w: &[u8]) -> (u32, Option<Occurrence>) {
    let mut best_rank = 0u32;
    let mut best_span = None;
    for start in 0..w.len() {
        let mut state = BorderState::new();
        for (offset, &c) in w[start..].iter().enumerate() {
            let step = state.push(c);
            if step.ztype > best_rank {
                best_rank = step.ztype;
                best_span = Some((start, start + offset));
            }
        }
    }
    match best_span {
        None => (0, None),
        Some((start, end)) => {
            let witness = decompose(&w[start..=end], best_rank)
                .expect("factor attains the rank it was scanned at");
            (
                best_rank,
                Some(Occurrence {
                    start: start + 1,
                    end: end + 1,
                    rank: best_rank,
                    witness,
                }),
            )
        }
    }
}
