//! The infinite Fibonacci word `F` and its Zimin types.
//!
//! Fibonacci words satisfy `F_n = F_{n-1} F_{n-2}` with `F_0 = a` and
//! `F_{-1} = b`; their lengths are the Fibonacci numbers `Phi_n`. Writing a
//! position `n` in the Zeckendorf (Fibonacci) numeration system answers
//! prefix queries without materializing the word: the short border of the
//! length-`n` prefix drops a fixed digit pattern from the representation, and
//! the Zimin type `ZFib[n]` equals `psi(n)`, the number of blocks in the
//! factorization of the digit string as `1 {00,001,01}* {empty,0}`. Both
//! queries run in time linear in the digit count, i.e. `O(log n)`.

use crate::error::{Error, Result};
use crate::pattern::Morphism;
use crate::word::Word;

/// Default cap on materialized symbols (and array entries): 2^28.
pub const DEFAULT_BUDGET: usize = 1 << 28;

/// `Phi_index` = |F_index| for `index >= -2`, with `Phi_{-2} = 0` and
/// `Phi_{-1} = Phi_0 = 1`.
pub fn phi(index: i32) -> Result<u64> {
    assert!(index >= -2, "Fibonacci lengths are defined for index >= -2");
    let (mut prev, mut cur) = (0u64, 1u64); // Phi_{-2}, Phi_{-1}
    for _ in -1..index {
        let next = prev.checked_add(cur).ok_or(Error::Overflow("phi"))?;
        prev = cur;
        cur = next;
    }
    Ok(if index == -2 { 0 } else { cur })
}

/// The Zeckendorf representation of a positive integer: the unique digit
/// string `w` with no two adjacent ones such that `n` is the sum of `Phi_j`
/// over the one-digits (most significant first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibRep {
    digits: String,
    value: u64,
}

impl FibRep {
    /// Validates and evaluates a digit string.
    pub fn parse(digits: &str) -> Result<Self> {
        let bytes = digits.as_bytes();
        if bytes.is_empty() {
            return Err(Error::InvalidDigits("empty digit string".into()));
        }
        if bytes[0] != b'1' {
            return Err(Error::InvalidDigits("leading digit must be 1".into()));
        }
        if let Some(&b) = bytes.iter().find(|&&b| b != b'0' && b != b'1') {
            return Err(Error::InvalidDigits(format!(
                "digit {:?} is not 0 or 1",
                b as char
            )));
        }
        if bytes.windows(2).any(|w| w == b"11") {
            return Err(Error::InvalidDigits("adjacent ones".into()));
        }
        if bytes.len() > 92 {
            // The leading digit alone would stand for Phi_92 > u64::MAX.
            return Err(Error::Overflow("from_fib"));
        }
        let mut value = 0u128;
        let (mut cur, mut next) = (1u128, 2u128); // Phi_0, Phi_1
        for (idx, &b) in bytes.iter().rev().enumerate() {
            if idx > 0 {
                (cur, next) = (next, cur + next);
            }
            if b == b'1' {
                value += cur;
            }
        }
        let value = u64::try_from(value).map_err(|_| Error::Overflow("from_fib"))?;
        Ok(FibRep {
            digits: digits.to_string(),
            value,
        })
    }

    pub fn digits(&self) -> &str {
        &self.digits
    }

    pub fn value(&self) -> u64 {
        self.value
    }
}

fn zeckendorf_counting(n: u64) -> Result<(FibRep, u64)> {
    if n == 0 {
        return Err(Error::ZeroValue);
    }
    if n == 1 {
        return Ok((
            FibRep {
                digits: "1".into(),
                value: 1,
            },
            1,
        ));
    }
    let n = n as u128;
    let mut ops = 0u64;

    // Ascend until Phi_k exceeds n; only the last two numbers are kept.
    let (mut below, mut cur) = (1u128, 2u128); // Phi_0, Phi_1
    let mut k = 1usize;
    while cur <= n {
        let next = below + cur;
        below = cur;
        cur = next;
        k += 1;
        ops += 1;
    }

    // k digits; leading one stands for Phi_{k-1} = below.
    let mut digits = vec![b'0'; k];
    digits[0] = b'1';
    let mut rem = n - below;
    let (mut cur, mut below) = (below, cur - below); // Phi_{k-1}, Phi_{k-2}
    for pos in (0..k - 1).rev() {
        let lower = cur - below;
        cur = below;
        below = lower;
        ops += 1;
        if cur <= rem {
            digits[k - 1 - pos] = b'1';
            rem -= cur;
        }
        if rem == 0 {
            break;
        }
    }
    debug_assert_eq!(rem, 0);
    let rep = FibRep {
        digits: String::from_utf8(digits).expect("binary digits"),
        value: n as u64,
    };
    Ok((rep, ops))
}

/// Zeckendorf representation of `n >= 1`, computed greedily most significant
/// digit first in `O(log n)` time and space.
pub fn zeckendorf(n: u64) -> Result<FibRep> {
    Ok(zeckendorf_counting(n)?.0)
}

/// Value of a Zeckendorf digit string; inverse of [`zeckendorf`].
pub fn from_fib(digits: &str) -> Result<u64> {
    Ok(FibRep::parse(digits)?.value())
}

fn psi_counting(rep: &FibRep) -> (u32, u64) {
    let rest = &rep.digits.as_bytes()[1..];
    let mut k = 1u32;
    let mut ops = 1u64;
    let mut i = 0;
    while i < rest.len() {
        ops += 1;
        if rest.len() - i == 1 {
            debug_assert_eq!(rest[i], b'0');
            break; // trailing z = 0
        }
        let step = if rest[i..].starts_with(b"01") {
            2
        } else if rest[i..].starts_with(b"001") {
            3
        } else {
            debug_assert!(rest[i..].starts_with(b"00"));
            2
        };
        i += step;
        k += 1;
    }
    (k, ops)
}

/// The block count `k` in the unique factorization of the digit string as
/// `1 x_1 .. x_{k-1} z` with `x_i` in `{00, 001, 01}` and `z` in `{empty, 0}`.
pub fn psi(rep: &FibRep) -> u32 {
    psi_counting(rep).0
}

/// Zimin type of `F[1..n]`, computed as `psi(zeckendorf(n))` without
/// materializing any word.
pub fn zfib(n: u64) -> Result<u32> {
    Ok(zfib_counting(n)?.0)
}

/// `zfib` plus the number of elementary steps taken (Fibonacci ladder moves
/// and digit-parse moves), for checking the logarithmic cost claim.
pub fn zfib_counting(n: u64) -> Result<(u32, u64)> {
    let (rep, ops) = zeckendorf_counting(n)?;
    let (k, parse_ops) = psi_counting(&rep);
    Ok((k, ops + parse_ops))
}

/// `|ShortBord(F[1..n])|`. For `n >= 3` the Zeckendorf digits of `n` start
/// with `101`, `1001`, or `100` followed by nothing or a zero, and dropping
/// that prefix down to a single leading one yields the Zeckendorf digits of
/// the answer. `F[1..1]` and `F[1..2]` have no non-empty border at all.
pub fn sb_fib(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroValue);
    }
    if n < 3 {
        return Ok(0);
    }
    let rep = zeckendorf(n)?;
    let d = rep.digits().as_bytes();
    let tail = if d[2] == b'1' {
        &d[3..] // 101 alpha
    } else if d.len() > 3 && d[3] == b'1' {
        &d[4..] // 1001 alpha
    } else {
        &d[3..] // 100 alpha with alpha empty or starting with 0
    };
    let mut digits = Vec::with_capacity(tail.len() + 1);
    digits.push(b'1');
    digits.extend_from_slice(tail);
    from_fib(std::str::from_utf8(&digits).expect("binary digits"))
}

/// `F[1..len]` under the default memory budget.
pub fn fib_prefix(len: usize) -> Result<Word> {
    fib_prefix_with_budget(len, DEFAULT_BUDGET)
}

pub fn fib_prefix_with_budget(len: usize, budget: usize) -> Result<Word> {
    if len > budget {
        return Err(Error::BudgetExceeded {
            requested: len as u64,
            budget: budget as u64,
        });
    }
    let mut prev = b"b".to_vec(); // F_{-1}
    let mut cur = b"a".to_vec(); // F_0
    while cur.len() < len {
        let mut next = Vec::with_capacity(cur.len() + prev.len());
        next.extend_from_slice(&cur);
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur.truncate(len);
    Ok(Word::new(cur))
}

/// The finite Fibonacci word `F_index` for `index >= -1`.
pub fn fib_word(index: i32, budget: usize) -> Result<Word> {
    assert!(index >= -1, "Fibonacci words are defined for index >= -1");
    let len = phi(index)?;
    if len > budget as u64 {
        return Err(Error::BudgetExceeded {
            requested: len,
            budget: budget as u64,
        });
    }
    if index == -1 {
        return Ok(Word::from("b"));
    }
    fib_prefix_with_budget(len as usize, budget)
}

/// `ZFib[1..=n]` built with block copies and block increments only.
///
/// For `n` in `[Phi_k, Phi_{k+1})` the short border lands in one of three
/// ranges, each a shifted copy of an earlier stretch of positions, so the
/// whole array is assembled from `copy a block` + `increment a block`
/// operations without evaluating `psi` per element.
pub fn zfib_array(n: usize) -> Result<Vec<u32>> {
    zfib_array_with_budget(n, DEFAULT_BUDGET)
}

pub fn zfib_array_with_budget(n: usize, budget: usize) -> Result<Vec<u32>> {
    if n > budget {
        return Err(Error::BudgetExceeded {
            requested: n as u64,
            budget: budget as u64,
        });
    }
    let mut zf = vec![0u32; n + 1]; // index 0 is the empty prefix
    if n >= 1 {
        zf[1] = 1;
    }
    if n >= 2 {
        zf[2] = 1;
    }
    let mut k = 2i32;
    while phi(k)? <= n as u64 {
        let phi_k = phi(k)? as usize;
        let src_top = phi(k - 2)? as usize;
        let len_top = phi(k - 3)? as usize;
        let src_mid = phi(k - 3)? as usize;
        let len_mid = phi(k - 4)? as usize;
        copy_block_incremented(&mut zf, src_top, phi_k, len_top);
        copy_block_incremented(&mut zf, src_mid, phi_k + src_mid, len_mid);
        copy_block_incremented(&mut zf, src_top, phi_k + src_top, len_top);
        k += 1;
    }
    zf.remove(0);
    Ok(zf)
}

/// `zf[dst..dst+len] = zf[src..src+len]`, then increment the copied block;
/// the tail beyond the array end is dropped. Source blocks always lie
/// strictly before their destinations.
fn copy_block_incremented(zf: &mut [u32], src: usize, dst: usize, len: usize) {
    if dst >= zf.len() {
        return;
    }
    let len = len.min(zf.len() - dst);
    let (lo, hi) = zf.split_at_mut(dst);
    hi[..len].copy_from_slice(&lo[src..src + len]);
    for v in &mut hi[..len] {
        *v += 1;
    }
}

/// A Fibonacci word referenced by index instead of by content.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FibWordRef {
    pub index: i32,
    pub len: u64,
}

impl FibWordRef {
    pub fn new(index: i32) -> Result<Self> {
        Ok(FibWordRef {
            index,
            len: phi(index)?,
        })
    }

    pub fn materialize(&self, budget: usize) -> Result<Word> {
        fib_word(self.index, budget)
    }
}

/// A maximal-rank Zimin embedding into a Fibonacci prefix, with images kept
/// symbolic: `x_1 -> F_0 = a`, `x_2 -> F_{-1} = b`, and `x_j -> F_{2j-5}`.
/// The image of the whole pattern is the prefix `F_{2(rank-1)}`.
#[derive(Debug, Clone)]
pub struct FibEmbedding {
    pub rank: u32,
    pub images: Vec<FibWordRef>,
}

impl FibEmbedding {
    /// Length of `h(Z_rank)` = `Phi_{2(rank-1)}`.
    pub fn embedded_prefix_len(&self) -> u64 {
        phi(2 * (self.rank as i32 - 1)).expect("rank was derived from a u64 length")
    }

    /// Materializes the images into a concrete morphism.
    pub fn to_morphism(&self, budget: usize) -> Result<Morphism> {
        let total: u64 = self.images.iter().map(|r| r.len).sum();
        if total > budget as u64 {
            return Err(Error::BudgetExceeded {
                requested: total,
                budget: budget as u64,
            });
        }
        let images = self
            .images
            .iter()
            .map(|r| r.materialize(budget))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(images)
    }
}

/// Maximal rank of a Zimin pattern embeddable in `F[1..n]`, together with a
/// witness morphism, in `O(log n)` time: the rank is the `k` with
/// `Phi_{2(k-1)} <= n < Phi_{2k}`, attained on the prefix `F_{2(k-1)}`.
pub fn fib_embedding(n: u64) -> Result<FibEmbedding> {
    Ok(fib_embedding_counting(n)?.0)
}

/// `fib_embedding` plus the elementary step count.
pub fn fib_embedding_counting(n: u64) -> Result<(FibEmbedding, u64)> {
    if n == 0 {
        return Err(Error::ZeroValue);
    }
    let n = n as u128;
    let mut ops = 0u64;
    // Walk Phi_0, Phi_2, Phi_4, ... until it passes n.
    let (mut even, mut odd) = (1u128, 2u128); // Phi_0, Phi_1
    let mut rank = 1u32;
    loop {
        // advance two indices
        let a = even + odd; // Phi_{2r}
        let b = odd + a;
        ops += 1;
        if a > n {
            break;
        }
        even = a;
        odd = b;
        rank += 1;
    }
    let mut images = Vec::with_capacity(rank as usize);
    images.push(FibWordRef::new(0)?); // x_1 -> a
    if rank >= 2 {
        images.push(FibWordRef::new(-1)?); // x_2 -> b
    }
    for j in 3..=rank as i32 {
        images.push(FibWordRef::new(2 * j - 5)?);
        ops += 1;
    }
    Ok((FibEmbedding { rank, images }, ops))
}

/// `ZFib[n] / log_phi(n)` for `n >= 2`; the sequence has lim sup 1/2 (along
/// `Phi_i`) and lim inf 1/3 (along `(1(001)^i)_Fib`).
pub fn fib_ratio(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("fib_ratio requires n >= 2".into()));
    }
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    Ok(zfib(n)? as f64 * golden.ln() / (n as f64).ln())
}
