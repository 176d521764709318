//! Border and short-border arrays, maintained online one symbol at a time.
//!
//! A border of a word `w` is a word that is both a proper prefix and a proper
//! suffix of `w`; it is *short* when its length is strictly below `|w|/2`.
//! `B[i]` and `SB[i]` hold the lengths of the longest border and the longest
//! short border of the length-`i` prefix. The Zimin type of every prefix
//! follows from the recurrence `Ztype[i] = 1 + Ztype[SB[i]]`.

/// Values reported for the prefix that ends at the freshly pushed symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PushStep {
    /// 1-based position of the pushed symbol.
    pub position: usize,
    /// `B[position]`.
    pub border: usize,
    /// `SB[position]`.
    pub short_border: usize,
    /// `Ztype[position]`.
    pub ztype: u32,
}

/// Online scanner maintaining `B`, `SB` and `Ztype` for the consumed prefix.
///
/// A `BorderState` is a single-owner mutable value; moving it between threads
/// in between pushes is fine, concurrent mutation is not. Amortized cost of a
/// push is constant: every cursor decrement is paid for by an earlier
/// increment, which the `cursor_increments`/`cursor_decrements` counters make
/// checkable.
#[derive(Debug, Clone)]
pub struct BorderState {
    text: Vec<u8>,
    // b[0] is a placeholder; B[0] = -1 is encoded in `border_of`.
    b: Vec<u32>,
    sb: Vec<u32>,
    zt: Vec<u32>,
    t: i64,
    s: i64,
    incs: u64,
    decs: u64,
}

impl Default for BorderState {
    fn default() -> Self {
        Self::new()
    }
}

impl BorderState {
    pub fn new() -> Self {
        BorderState {
            text: Vec::new(),
            b: vec![0],
            sb: vec![0],
            zt: vec![0],
            t: 0,
            s: 0,
            incs: 0,
            decs: 0,
        }
    }

    /// Number of symbols consumed so far.
    pub fn position(&self) -> usize {
        self.text.len()
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// `B[j]` for `0 <= j <= position()`; `B[0] = -1`.
    pub fn border(&self, j: usize) -> i64 {
        if j == 0 {
            -1
        } else {
            self.b[j] as i64
        }
    }

    /// `SB[j]` for `1 <= j <= position()`.
    pub fn short_border(&self, j: usize) -> usize {
        self.sb[j] as usize
    }

    /// `Ztype[j]` for `0 <= j <= position()`; `Ztype[0] = 0`.
    pub fn ztype_at(&self, j: usize) -> u32 {
        self.zt[j]
    }

    /// Zimin type of the full consumed prefix.
    pub fn ztype(&self) -> u32 {
        *self.zt.last().unwrap()
    }

    /// Total `t := t + 1` / `s := s + 1` steps performed.
    pub fn cursor_increments(&self) -> u64 {
        self.incs
    }

    /// Total `t := B[t]` / `s := B[s]` steps performed. Never exceeds
    /// `cursor_increments`, hence never exceeds twice the number of pushes.
    pub fn cursor_decrements(&self) -> u64 {
        self.decs
    }

    #[inline]
    fn symbol(&self, j: i64) -> u8 {
        // 1-based access into the consumed text.
        self.text[(j - 1) as usize]
    }

    #[inline]
    fn border_of(&self, j: i64) -> i64 {
        if j == 0 {
            -1
        } else {
            self.b[j as usize] as i64
        }
    }

    /// Consumes one symbol and returns `(B, SB, Ztype)` at the new position.
    pub fn push(&mut self, c: u8) -> PushStep {
        self.text.push(c);
        let i = self.text.len();
        assert!(i < u32::MAX as usize, "word too long for the tracker");
        if i == 1 {
            self.b.push(0);
            self.sb.push(0);
            self.zt.push(1);
            self.t = 0;
            self.s = 0;
            return PushStep {
                position: 1,
                border: 0,
                short_border: 0,
                ztype: 1,
            };
        }
        let i = i as i64;

        // B[i]: classical Morris-Pratt failure-function extension.
        while self.t >= 0 && self.symbol(self.t + 1) != c {
            self.t = self.border_of(self.t);
            self.decs += 1;
        }
        self.t += 1;
        self.incs += 1;
        self.b.push(self.t as u32);

        // SB[i]: like above, but a candidate border of length s+1 is also
        // disqualified when it would not be short, i.e. when 2(s+1) >= i.
        while self.s >= 0 && (2 * (self.s + 1) >= i || self.symbol(self.s + 1) != c) {
            self.s = self.border_of(self.s);
            self.decs += 1;
        }
        self.s += 1;
        self.incs += 1;
        self.sb.push(self.s as u32);

        let ztype = self.zt[self.s as usize] + 1;
        self.zt.push(ztype);

        PushStep {
            position: i as usize,
            border: self.t as usize,
            short_border: self.s as usize,
            ztype,
        }
    }

    /// Removes the most recently pushed symbol and restores the cursors.
    /// Used by the avoidance search to backtrack.
    pub(crate) fn pop(&mut self) -> Option<u8> {
        let c = self.text.pop()?;
        self.b.pop();
        self.sb.pop();
        self.zt.pop();
        let i = self.text.len();
        self.t = if i == 0 { 0 } else { self.b[i] as i64 };
        self.s = if i == 0 { 0 } else { self.sb[i] as i64 };
        Some(c)
    }
}

/// `B[0..=n]` with `B[0] = -1`; `B[j]` is the length of the longest border of
/// the length-`j` prefix.
pub fn border_array(w: &[u8]) -> Vec<i64> {
    let mut state = BorderState::new();
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(-1);
    for &c in w {
        out.push(state.push(c).border as i64);
    }
    out
}

/// `SB[1..=n]` as a vector of length `n`; `SB[j]` is the length of the
/// longest border of the length-`j` prefix that is strictly shorter than
/// `j/2`, or 0 when only the empty short border exists.
pub fn short_border_array(w: &[u8]) -> Vec<usize> {
    let mut state = BorderState::new();
    w.iter().map(|&c| state.push(c).short_border).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Longest border of w by definition: direct prefix/suffix comparison.
    fn bord_def(w: &[u8]) -> usize {
        (0..w.len())
            .rev()
            .find(|&j| w[..j] == w[w.len() - j..])
            .unwrap_or(0)
    }

    // Longest short border of w by definition.
    fn shortbord_def(w: &[u8]) -> usize {
        (0..w.len())
            .rev()
            .filter(|&j| 2 * j < w.len())
            .find(|&j| w[..j] == w[w.len() - j..])
            .unwrap_or(0)
    }

    #[test]
    fn fresh_tracker() {
        let state = BorderState::new();
        assert_eq!(state.position(), 0);
        assert_eq!(state.border(0), -1);
        assert_eq!(state.ztype_at(0), 0);
        assert_eq!(state.ztype(), 0);
    }

    #[test]
    fn default_is_a_fresh_tracker() {
        let mut state = BorderState::default();
        assert_eq!(state.ztype(), 0);
        for &c in b"aba" {
            state.push(c);
        }
        assert_eq!(
            (state.border(3), state.short_border(3), state.ztype()),
            (1, 1, 2)
        );
    }

    #[test]
    fn first_pushes() {
        let mut state = BorderState::new();
        let step = state.push(b'a');
        assert_eq!(
            step,
            PushStep {
                position: 1,
                border: 0,
                short_border: 0,
                ztype: 1
            }
        );
        let step = state.push(b'b');
        assert_eq!(step.short_border, 0);
        assert_eq!(step.ztype, 1);
    }

    #[test]
    fn square_of_single_letter_is_still_type_one() {
        // "aa" has border "a" of length 1, but 1 is not < 2/2, so SB = 0.
        let mut state = BorderState::new();
        state.push(b'a');
        let step = state.push(b'a');
        assert_eq!(step.border, 1);
        assert_eq!(step.short_border, 0);
        assert_eq!(step.ztype, 1);
    }

    #[test]
    fn example_word_adbadccccadbad() {
        let mut state = BorderState::new();
        let mut last = None;
        for &c in b"adbadccccadbad" {
            last = Some(state.push(c));
        }
        assert_eq!(last.unwrap().ztype, 3);
    }

    #[test]
    fn example_word_with_second_longest_short_border() {
        let w = b"aabaabcaabaabaabcaabaab";
        let mut state = BorderState::new();
        let mut last = None;
        for &c in w {
            last = Some(state.push(c));
        }
        let last = last.unwrap();
        assert_eq!(last.border, 13);
        assert_eq!(last.short_border, 6);
        assert_eq!(last.ztype, 2);
    }

    #[test]
    fn short_border_of_square_drops_to_border_of_half() {
        // For ababa*ababa the length-4 short border of the length-9 prefix
        // extends to length 5 at position 10 but is then no longer short;
        // SB[10] falls back to |Bord(ababa)| = 3.
        let w = b"ababaababa";
        let sb = short_border_array(w);
        assert_eq!(sb[8], 4);
        assert_eq!(sb[9], 3);
    }

    #[test]
    fn border_array_examples() {
        assert_eq!(border_array(b""), vec![-1]);
        assert_eq!(border_array(b"aaaa"), vec![-1, 0, 1, 2, 3]);
        assert_eq!(border_array(b"aabaabcaabaabaabcaabaab")[23], 13);
    }

    #[test]
    fn short_border_array_examples() {
        assert_eq!(short_border_array(b"ab"), vec![0, 0]);
        assert_eq!(short_border_array(b"aabaabcaabaabaabcaabaab")[22], 6);
    }

    #[test]
    fn agrees_with_definition_exhaustively() {
        // All binary words of length <= 12: online arrays match the
        // definitional borders, and every prefix with a short border of
        // length k > 0 shrinks to a short border of length k-1 one step back.
        for len in 0..=12usize {
            for mask in 0..1u32 << len {
                let w: Vec<u8> = (0..len).map(|i| b'a' + ((mask >> i) & 1) as u8).collect();
                let b = border_array(&w);
                let sb = short_border_array(&w);
                for j in 1..=len {
                    assert_eq!(b[j], bord_def(&w[..j]) as i64);
                    assert_eq!(sb[j - 1], shortbord_def(&w[..j]));
                    let k = sb[j - 1];
                    if k > 0 {
                        let prev = &w[..j - 1];
                        assert_eq!(prev[..k - 1], prev[prev.len() - (k - 1)..]);
                        assert!(2 * (k - 1) < prev.len());
                    }
                }
            }
        }
    }

    #[test]
    fn pop_restores_state() {
        let w = b"abaababaabaab";
        let mut state = BorderState::new();
        for &c in &w[..8] {
            state.push(c);
        }
        let snapshot = (state.border(8), state.short_border(8), state.ztype());
        for &c in &w[8..] {
            state.push(c);
        }
        for _ in 8..w.len() {
            state.pop();
        }
        assert_eq!(state.position(), 8);
        assert_eq!(
            (state.border(8), state.short_border(8), state.ztype()),
            snapshot
        );
        // Pushing again after pops must agree with a fresh scan.
        for &c in &w[8..] {
            state.push(c);
        }
        let fresh = short_border_array(w);
        for j in 1..=w.len() {
            assert_eq!(state.short_border(j), fresh[j - 1]);
        }
    }

    #[test]
    fn decrements_never_exceed_increments() {
        let mut state = BorderState::new();
        let mut x: u64 = 0x2545f4914f6cdd1d;
        for _ in 0..20_000 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            state.push(b'a' + (x % 3) as u8);
        }
        assert!(state.cursor_decrements() <= state.cursor_increments());
        assert!(state.cursor_increments() <= 2 * state.position() as u64);
    }
}
