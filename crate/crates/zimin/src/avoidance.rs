//! Length bounds for the unavoidability of Zimin patterns.
//!
//! `f(n,k)` is the least length such that every `k`-ary word of that length
//! has a factor of Zimin type at least `n`; `m(n,k)` counts the `k`-ary
//! *minimal* words of type `n` (words whose proper factors all have type
//! below `n`), over the fixed labeled alphabet `a, b, c, ...`.
//!
//! Exact values come from an exhaustive depth-first search over avoiding
//! words. Appending a symbol can only create a high-type factor ending at the
//! new position, so the search keeps one online border tracker per suffix and
//! classifies each extension in amortized `O(depth)` time.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::thread;

use crate::borders::BorderState;
use crate::error::{Error, Result};
use crate::search::max_factor_ztype;
use crate::word::Word;
use crate::ztype::ztype;

/// Enumeration alphabets are spelled with lowercase letters.
pub const MAX_ALPHABET: u32 = 26;

/// Upper bound on `len_cap`: the search recurses one frame per symbol, and
/// nothing at desk scale survives anywhere near this depth.
pub const MAX_LEN_CAP: usize = 4096;

/// Caps for the exhaustive search. The search fails loudly when a cap is
/// reached instead of running unbounded; `f(4,2)` alone is known to be out of
/// desk reach.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    /// Longest avoiding word the search may build before giving up.
    pub len_cap: usize,
    /// Maximum number of attempted extensions.
    pub node_cap: u64,
    /// Worker threads; 1 means fully sequential.
    pub threads: usize,
    /// Depth at which the prefix tree is split across workers.
    pub split_depth: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            len_cap: 64,
            node_cap: 1_000_000_000,
            threads: 1,
            split_depth: 8,
        }
    }
}

/// Result of an avoidance computation.
#[derive(Debug, Clone)]
pub struct AvoidanceStats {
    pub rank: u32,
    pub alphabet: u32,
    /// `f(rank, alphabet)`: exact when `exact` is set, an upper bound
    /// otherwise.
    pub f: u64,
    pub exact: bool,
    /// `m(rank, alphabet)` when the computation produced it.
    pub minimal_count: Option<u64>,
    /// A longest avoiding word (length `f - 1`), lexicographically least.
    pub witness: Option<Word>,
}

fn alphabet(k: u32) -> Result<Vec<u8>> {
    if k == 0 || k > MAX_ALPHABET {
        return Err(Error::InvalidAlphabet { size: k });
    }
    Ok((0..k as u8).map(|i| b'a' + i).collect())
}

/// True iff `w` has Zimin type at least `n` while both maximal proper
/// factors stay below `n`; factor type is monotone under factor inclusion,
/// so this covers every proper factor.
pub fn is_minimal(w: &[u8], n: u32) -> bool {
    if n == 0 || ztype(w) < n {
        return false;
    }
    max_factor_ztype(&w[..w.len() - 1]).0 < n && max_factor_ztype(&w[1..]).0 < n
}

#[derive(Debug, Default, Clone)]
struct SearchOutcome {
    max_len: usize,
    /// Lexicographically least avoiding word of length `max_len`.
    best: Vec<u8>,
    minimal_count: u64,
    minimals: Vec<Word>,
}

impl SearchOutcome {
    fn absorb_best(&mut self, max_len: usize, best: &[u8]) {
        if max_len > self.max_len || (max_len == self.max_len && best < &self.best[..]) {
            self.max_len = max_len;
            self.best = best.to_vec();
        }
    }
}

enum Step {
    /// The extended word still has no factor of type `rank`.
    Avoiding,
    /// The extended word is a minimal word of type `rank`.
    Minimal,
    /// The extended word has a high-type factor but is not minimal.
    Embeds,
}

enum Phase1Event {
    Minimal(Word),
    Frontier(Vec<u8>),
}

struct Explorer<'a> {
    rank: u32,
    letters: &'a [u8],
    len_cap: usize,
    node_cap: u64,
    nodes: &'a AtomicU64,
    collect: bool,
    word: Vec<u8>,
    /// `trackers[p]` scans the suffix starting at position `p` (0-based).
    trackers: Vec<BorderState>,
    out: SearchOutcome,
}

impl<'a> Explorer<'a> {
    fn new(
        rank: u32,
        letters: &'a [u8],
        limits: &SearchLimits,
        nodes: &'a AtomicU64,
        collect: bool,
    ) -> Self {
        Explorer {
            rank,
            letters,
            len_cap: limits.len_cap,
            node_cap: limits.node_cap,
            nodes,
            collect,
            word: Vec::new(),
            trackers: Vec::new(),
            out: SearchOutcome::default(),
        }
    }

    fn extend(&mut self, c: u8) -> Step {
        self.word.push(c);
        let mut full = false;
        let mut proper = false;
        for (p, tracker) in self.trackers.iter_mut().enumerate() {
            if tracker.push(c).ztype >= self.rank {
                if p == 0 {
                    full = true;
                } else {
                    proper = true;
                }
            }
        }
        let mut fresh = BorderState::new();
        if fresh.push(c).ztype >= self.rank {
            if self.word.len() == 1 {
                full = true;
            } else {
                proper = true;
            }
        }
        self.trackers.push(fresh);
        if full && !proper {
            Step::Minimal
        } else if full || proper {
            Step::Embeds
        } else {
            Step::Avoiding
        }
    }

    fn retract(&mut self) {
        self.word.pop();
        self.trackers.pop();
        for tracker in &mut self.trackers {
            tracker.pop();
        }
    }

    fn note_node(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.node_cap {
            return Err(Error::NodeCapExceeded { cap: self.node_cap });
        }
        Ok(())
    }

    /// Records the current (avoiding) word; an avoiding word at the length
    /// cap means `f` cannot be certified under these limits.
    fn record_avoiding(&mut self) -> Result<()> {
        let len = self.word.len();
        self.out.absorb_best(len, &self.word);
        if len >= self.len_cap {
            return Err(Error::LengthCapExceeded { cap: self.len_cap });
        }
        Ok(())
    }

    fn record_minimal(&mut self) {
        self.out.minimal_count += 1;
        if self.collect {
            self.out.minimals.push(Word::new(self.word.clone()));
        }
    }

    /// Full depth-first search below the current (avoiding) word.
    fn run(&mut self) -> Result<()> {
        for i in 0..self.letters.len() {
            let c = self.letters[i];
            self.note_node()?;
            match self.extend(c) {
                Step::Minimal => {
                    self.record_minimal();
                    self.retract();
                }
                Step::Embeds => self.retract(),
                Step::Avoiding => {
                    let res = self.record_avoiding().and_then(|()| self.run());
                    self.retract();
                    res?;
                }
            }
        }
        Ok(())
    }

    /// Like `run`, but stops at `split` symbols and records the avoiding
    /// words of that exact length as frontier entries, in search order.
    fn run_to_frontier(&mut self, split: usize, events: &mut Vec<Phase1Event>) -> Result<()> {
        for i in 0..self.letters.len() {
            let c = self.letters[i];
            self.note_node()?;
            match self.extend(c) {
                Step::Minimal => {
                    events.push(Phase1Event::Minimal(Word::new(self.word.clone())));
                    self.retract();
                }
                Step::Embeds => self.retract(),
                Step::Avoiding => {
                    let res = self.record_avoiding().and_then(|()| {
                        if self.word.len() == split {
                            events.push(Phase1Event::Frontier(self.word.clone()));
                            Ok(())
                        } else {
                            self.run_to_frontier(split, events)
                        }
                    });
                    self.retract();
                    res?;
                }
            }
        }
        Ok(())
    }
}

fn explore_block(
    rank: u32,
    letters: &[u8],
    limits: &SearchLimits,
    nodes: &AtomicU64,
    collect: bool,
    prefix: &[u8],
) -> Result<SearchOutcome> {
    let mut explorer = Explorer::new(rank, letters, limits, nodes, collect);
    for &c in prefix {
        let step = explorer.extend(c);
        debug_assert!(matches!(step, Step::Avoiding));
    }
    explorer.out.absorb_best(prefix.len(), prefix);
    explorer.run()?;
    Ok(explorer.out)
}

/// Runs the avoidance search for rank `n` over `k` letters.
///
/// With `threads > 1` the tree is split at `split_depth` and the blocks are
/// handed to workers; counts are summed, witness selection applies the
/// canonical (longest, then lexicographically least) rule to the merged
/// results, and minimal words are re-assembled in search order, so the
/// output does not depend on scheduling.
fn run_search(n: u32, k: u32, limits: &SearchLimits, collect: bool) -> Result<SearchOutcome> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let letters = alphabet(k)?;
    if limits.len_cap == 0 {
        return Err(Error::LengthCapExceeded { cap: 0 });
    }
    if limits.len_cap > MAX_LEN_CAP {
        return Err(Error::InvalidArgument(format!(
            "len_cap {} exceeds the supported maximum {MAX_LEN_CAP}",
            limits.len_cap
        )));
    }
    let nodes = AtomicU64::new(0);

    if limits.threads <= 1 {
        let mut explorer = Explorer::new(n, &letters, limits, &nodes, collect);
        explorer.run()?;
        return Ok(explorer.out);
    }

    let split = limits.split_depth.clamp(1, limits.len_cap);
    let mut events = Vec::new();
    let mut phase1 = Explorer::new(n, &letters, limits, &nodes, collect);
    phase1.run_to_frontier(split, &mut events)?;
    let mut merged = phase1.out;

    let frontier: Vec<&Vec<u8>> = events
        .iter()
        .filter_map(|e| match e {
            Phase1Event::Frontier(w) => Some(w),
            Phase1Event::Minimal(_) => None,
        })
        .collect();

    let next = AtomicUsize::new(0);
    let mut results: Vec<Option<Result<SearchOutcome>>> = Vec::new();
    results.resize_with(frontier.len(), || None);
    let result_slots: Vec<std::sync::Mutex<Option<Result<SearchOutcome>>>> =
        results.into_iter().map(std::sync::Mutex::new).collect();

    thread::scope(|scope| {
        for _ in 0..limits.threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= frontier.len() {
                    break;
                }
                let out = explore_block(n, &letters, limits, &nodes, collect, frontier[i]);
                *result_slots[i].lock().unwrap() = Some(out);
            });
        }
    });

    let mut block_index = 0;
    for event in &events {
        match event {
            Phase1Event::Minimal(w) => {
                merged.minimal_count += 1;
                if collect {
                    merged.minimals.push(w.clone());
                }
            }
            Phase1Event::Frontier(_) => {
                let block = result_slots[block_index]
                    .lock()
                    .unwrap()
                    .take()
                    .expect("worker filled its slot")?;
                block_index += 1;
                merged.absorb_best(block.max_len, &block.best);
                merged.minimal_count += block.minimal_count;
                if collect {
                    merged.minimals.extend(block.minimals);
                }
            }
        }
    }
    Ok(merged)
}

/// Exact `f(n,k)` by exhaustive backtracking: one more than the length of
/// the longest `k`-ary word with no factor of type `n`. The returned stats
/// carry the lexicographically least longest witness and the count of
/// minimal words encountered along the way.
pub fn f_exact(n: u32, k: u32, limits: &SearchLimits) -> Result<AvoidanceStats> {
    let out = run_search(n, k, limits, false)?;
    Ok(AvoidanceStats {
        rank: n,
        alphabet: k,
        f: out.max_len as u64 + 1,
        exact: true,
        minimal_count: Some(out.minimal_count),
        witness: Some(Word::new(out.best)),
    })
}

/// Emits every `k`-ary minimal word of type `n` exactly once, in
/// lexicographic order, and returns the count `m(n,k)`.
pub fn enumerate_minimal<F: FnMut(&Word)>(
    n: u32,
    k: u32,
    limits: &SearchLimits,
    mut sink: F,
) -> Result<u64> {
    let out = run_search(n, k, limits, true)?;
    for w in &out.minimals {
        sink(w);
    }
    Ok(out.minimal_count)
}

/// `m(n,k)` without materializing the words.
pub fn count_minimal(n: u32, k: u32, limits: &SearchLimits) -> Result<u64> {
    Ok(run_search(n, k, limits, false)?.minimal_count)
}

/// All `k`-ary minimal words of type `n`, in lexicographic order.
pub fn minimal_words(n: u32, k: u32, limits: &SearchLimits) -> Result<Vec<Word>> {
    Ok(run_search(n, k, limits, true)?.minimals)
}

/// `f(2,k) = 2k + 1` by the closed form: `a1 a1 a2 a2 ... ak ak` is the
/// longest `k`-ary word in which no letter recurs non-consecutively.
pub fn f2_closed(k: u32) -> Result<AvoidanceStats> {
    let letters = alphabet(k)?;
    let mut witness = Vec::with_capacity(2 * k as usize);
    for c in letters {
        witness.push(c);
        witness.push(c);
    }
    Ok(AvoidanceStats {
        rank: 2,
        alphabet: k,
        f: 2 * k as u64 + 1,
        exact: true,
        minimal_count: None,
        witness: Some(Word::new(witness)),
    })
}

/// `m(2,k) = k! * sum_{i=0}^{k-1} 2^{k-1-i} / i!`, in exact integer
/// arithmetic (each summand `2^{k-1-i} * k!/i!` is an integer).
pub fn m2_formula(k: u32) -> Result<u128> {
    if k == 0 {
        return Err(Error::InvalidAlphabet { size: 0 });
    }
    let mut total: u128 = 0;
    for i in 0..k {
        let mut term: u128 = 1u128
            .checked_shl(k - 1 - i)
            .ok_or(Error::Overflow("m2_formula"))?;
        for j in i + 1..=k {
            term = term
                .checked_mul(j as u128)
                .ok_or(Error::Overflow("m2_formula"))?;
        }
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow("m2_formula"))?;
    }
    Ok(total)
}

/// Right-hand side of the recursion `f(n+1,k) <= (f(n,k)+1) m(n,k) + f(n,k)`,
/// evaluated for `n + 1 = n_next`.
pub fn f_upper_bound(n_next: u32, f_prev: u128, m_prev: u128) -> Result<u128> {
    if n_next < 3 || f_prev == 0 || m_prev == 0 {
        return Err(Error::InvalidArgument(
            "the bound recursion needs rank >= 3 and positive f, m inputs".into(),
        ));
    }
    f_prev
        .checked_add(1)
        .and_then(|x| x.checked_mul(m_prev))
        .and_then(|x| x.checked_add(f_prev))
        .ok_or(Error::Overflow("f_upper_bound"))
}

/// The general rank-3 bound `ceil(sqrt(e) * 2^r * (r+1)!) + 2r + 1`,
/// computed from the series `sqrt(e) * 2^r (r+1)! = sum_n 2^{r-n} (r+1)!/n!`
/// in fixed-point arithmetic with certified lower and upper rounding, so the
/// ceiling is exact.
pub fn f3_general_bound(r: u32) -> Result<u128> {
    if r < 2 {
        return Err(Error::InvalidArgument(
            "the general rank-3 bound is stated for alphabets of size >= 2".into(),
        ));
    }
    const SCALE: u32 = 32;
    let mut head: u128 = 1u128
        .checked_shl(r + SCALE)
        .ok_or(Error::Overflow("f3_general_bound"))?;
    for j in 2..=(r as u128 + 1) {
        head = head
            .checked_mul(j)
            .ok_or(Error::Overflow("f3_general_bound"))?;
    }

    let (mut low_sum, mut high_sum) = (head, head);
    let (mut low_term, mut high_term) = (head, head);
    let mut n: u128 = 1;
    loop {
        let d = 2 * n;
        low_term /= d;
        high_term = high_term.div_ceil(d);
        low_sum += low_term;
        high_sum += high_term;
        if high_term <= 1 {
            // Terms at least halve, so the tail is bounded by the last term.
            high_sum += high_term;
            break;
        }
        n += 1;
    }

    let floor = low_sum >> SCALE;
    if floor != high_sum >> SCALE {
        return Err(Error::Overflow("f3_general_bound precision"));
    }
    // sqrt(e) times a positive integer is irrational, so ceil = floor + 1.
    (floor + 1)
        .checked_add(2 * r as u128 + 1)
        .ok_or(Error::Overflow("f3_general_bound"))
}
