//! Cyclic and linear symbol strings, bad-pair accounting and `w_k(s)`.
//!
//! A pair of positions `i != j` at distance at most `k` is *bad* when both hold
//! the same symbol and *good* otherwise. In cyclic mode the distance is
//! `min(|i-j|, s-|i-j|)` and every unordered pair is counted once, even when both
//! ways around the cycle are short.

use std::fmt;

use rayon::prelude::*;

use crate::debruijn::{self, DeBruijnGraph, OptimalCycle, MAX_ALPHABET};
use crate::error::{invalid_param, Error, Result};
use crate::Mode;

/// Largest number of strings `wk_exact` will enumerate.
pub const BRUTE_LIMIT: u64 = 1 << 26;
/// `Auto` prefers enumeration below this many strings.
pub const AUTO_BRUTE_LIMIT: u64 = 1 << 20;
/// Cap on `V * s * E` relaxations for the walk method.
pub const WALK_LIMIT: u64 = 1 << 34;

/// Bipartition class of a vertex; `X` maps to symbol 0 and `Y` to symbol 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolString {
    symbols: Vec<u8>,
    alphabet: usize,
    mode: Mode,
}

impl SymbolString {
    pub fn new(symbols: Vec<u8>, alphabet: usize, mode: Mode) -> Result<Self> {
        if !(2..=MAX_ALPHABET).contains(&alphabet) {
            return Err(invalid_param(format!("alphabet size must be in 2..={MAX_ALPHABET}")));
        }
        if let Some(pos) = symbols.iter().position(|&s| usize::from(s) >= alphabet) {
            return Err(Error::InvalidInput(format!(
                "symbol {} at position {} outside alphabet of size {alphabet}",
                symbols[pos],
                pos + 1
            )));
        }
        Ok(Self { symbols, alphabet, mode })
    }

    pub fn binary(symbols: &[u8], mode: Mode) -> Result<Self> {
        Self::new(symbols.to_vec(), 2, mode)
    }

    /// Parses digits `0..t-1` (base 36), e.g. `"0011"`.
    pub fn parse(text: &str, alphabet: usize, mode: Mode) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidInput(format!("'{c}' is not a symbol")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(symbols, alphabet, mode)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn distance(&self, i: usize, j: usize) -> usize {
        let d = i.abs_diff(j);
        match self.mode {
            Mode::Linear => d,
            Mode::Cyclic => d.min(self.len() - d),
        }
    }
}

impl fmt::Display for SymbolString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&debruijn::symbols_to_string(&self.symbols))
    }
}

/// Parses the sequence text format: one string per line, `#` starts a comment.
pub fn parse_sequences(text: &str, alphabet: usize, mode: Mode) -> Result<Vec<SymbolString>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let seq = SymbolString::parse(line, alphabet, mode).map_err(|e| Error::Parse {
            line: no + 1,
            message: e.to_string(),
        })?;
        out.push(seq);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPairReport {
    pub bad: u64,
    pub good: u64,
    /// Number of bad pairs containing each position.
    pub per_index_bad: Vec<u32>,
}

/// Counts bad and good pairs of `seq` within distance `k`.
pub fn count_bad_pairs(seq: &SymbolString, k: usize) -> BadPairReport {
    let s = seq.len();
    let sym = seq.symbols();
    let mut per_index_bad = vec![0u32; s];
    let (mut bad, mut good) = (0u64, 0u64);
    let mut tally = |i: usize, j: usize| {
        if sym[i] == sym[j] {
            bad += 1;
            per_index_bad[i] += 1;
            per_index_bad[j] += 1;
        } else {
            good += 1;
        }
    };
    for i in 0..s {
        for d in 1..=k.min(s.saturating_sub(1)) {
            match seq.mode() {
                Mode::Linear => {
                    if i + d < s {
                        tally(i, i + d);
                    }
                }
                Mode::Cyclic => {
                    let j = (i + d) % s;
                    // The pair {i, j} is also offset s-d from j; count it from one side.
                    if d < s - d || (d == s - d && i < j) {
                        tally(i, j);
                    }
                }
            }
        }
    }
    BadPairReport { bad, good, per_index_bad }
}

/// Maps a vertex sequence to its characteristic string (`X -> 0`, `Y -> 1`).
pub fn characteristic<T: fmt::Debug>(
    seq: &[T],
    side_of: impl Fn(&T) -> Option<Side>,
) -> Result<SymbolString> {
    let symbols = seq
        .iter()
        .enumerate()
        .map(|(i, v)| match side_of(v) {
            Some(Side::X) => Ok(0),
            Some(Side::Y) => Ok(1),
            None => Err(Error::InvalidInput(format!(
                "item {} ({v:?}) is not assigned to a side",
                i + 1
            ))),
        })
        .collect::<Result<Vec<u8>>>()?;
    SymbolString::new(symbols, 2, Mode::Cyclic)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WkMethod {
    #[default]
    Auto,
    Brute,
    Walk,
}

impl std::str::FromStr for WkMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "brute" => Ok(Self::Brute),
            "walk" => Ok(Self::Walk),
            other => Err(invalid_param(format!("unknown method '{other}' (auto|brute|walk)"))),
        }
    }
}

fn string_count(alphabet: usize, s: usize) -> Option<u64> {
    (0..s).try_fold(1u64, |acc, _| acc.checked_mul(alphabet as u64))
}

fn walk_cost(k: usize, s: usize, alphabet: usize) -> Option<u64> {
    let v = string_count(alphabet, k)?;
    v.checked_mul(v)?.checked_mul(alphabet as u64)?.checked_mul(s as u64)
}

/// `w_k(s)`: the least number of bad pairs over cyclic strings of length `s`.
///
/// `Brute` enumerates strings (first symbol fixed to 0, which loses nothing
/// since relabeling symbols preserves bad pairs). `Walk` finds a minimum-weight
/// closed walk of length `s` in `B_k`; it needs `s >= k + 1`. `Auto` runs both
/// when both are cheap and fails loudly if they disagree.
pub fn wk_exact(k: usize, s: usize, alphabet: usize, method: WkMethod) -> Result<u64> {
    if k == 0 || s == 0 {
        return Err(invalid_param("k and s must be positive"));
    }
    if !(2..=MAX_ALPHABET).contains(&alphabet) {
        return Err(invalid_param(format!("alphabet size must be in 2..={MAX_ALPHABET}")));
    }
    let strings = string_count(alphabet, s);
    let brute_ok = |limit: u64| strings.is_some_and(|n| n <= limit);
    let walk_ok = s > k && walk_cost(k, s, alphabet).is_some_and(|c| c <= WALK_LIMIT);
    match method {
        WkMethod::Brute => {
            if !brute_ok(BRUTE_LIMIT) {
                return Err(Error::Budget(format!(
                    "{alphabet}^{s} strings exceed the enumeration limit {BRUTE_LIMIT}"
                )));
            }
            Ok(wk_brute(k, s, alphabet, Mode::Cyclic)?.0)
        }
        WkMethod::Walk => {
            if s <= k {
                return Err(Error::Budget(format!("walk method needs s >= k + 1 (s={s}, k={k})")));
            }
            if !walk_ok {
                return Err(Error::Budget(format!("closed-walk DP for k={k}, s={s} exceeds {WALK_LIMIT}")));
            }
            wk_walk(k, s, alphabet)
        }
        WkMethod::Auto => match (brute_ok(AUTO_BRUTE_LIMIT), walk_ok) {
            (true, true) => {
                let brute = wk_brute(k, s, alphabet, Mode::Cyclic)?.0;
                let walk = wk_walk(k, s, alphabet)?;
                if brute != walk {
                    return Err(Error::InvalidInput(format!(
                        "w_{k}({s}) cross-check failed: enumeration {brute}, closed walk {walk}"
                    )));
                }
                Ok(brute)
            }
            (false, true) => wk_walk(k, s, alphabet),
            _ if brute_ok(BRUTE_LIMIT) => Ok(wk_brute(k, s, alphabet, Mode::Cyclic)?.0),
            _ => Err(Error::Budget(format!(
                "w_{k}({s}) is outside both the enumeration and the closed-walk budgets"
            ))),
        },
    }
}

/// Exhaustive minimum of bad pairs with a witness string, in either mode.
pub fn wk_brute(k: usize, s: usize, alphabet: usize, mode: Mode) -> Result<(u64, SymbolString)> {
    if s == 0 {
        return Err(invalid_param("s must be positive"));
    }
    let free = string_count(alphabet, s - 1)
        .filter(|&n| n.saturating_mul(alphabet as u64) <= BRUTE_LIMIT)
        .ok_or_else(|| Error::Budget(format!("{alphabet}^{s} strings exceed {BRUTE_LIMIT}")))?;
    let (bad, code) = if alphabet == 2 {
        (0..free)
            .into_par_iter()
            .map(|b| (binary_bad_pairs(b, s, k, mode), b))
            .min()
            .expect("at least one string")
    } else {
        (0..free)
            .into_par_iter()
            .map(|code| {
                let seq = SymbolString {
                    symbols: decode_symbols(code, s, alphabet),
                    alphabet,
                    mode,
                };
                (count_bad_pairs(&seq, k).bad, code)
            })
            .min()
            .expect("at least one string")
    };
    let symbols = if alphabet == 2 {
        (0..s).map(|i| ((code >> (s - 1 - i)) & 1) as u8).collect()
    } else {
        decode_symbols(code, s, alphabet)
    };
    Ok((bad, SymbolString::new(symbols, alphabet, mode)?))
}

fn decode_symbols(mut code: u64, s: usize, alphabet: usize) -> Vec<u8> {
    let mut out = vec![0u8; s];
    for slot in out.iter_mut().rev() {
        *slot = (code % alphabet as u64) as u8;
        code /= alphabet as u64;
    }
    out
}

/// Bad pairs of a binary string packed into the low `s` bits of `b`.
fn binary_bad_pairs(b: u64, s: usize, k: usize, mode: Mode) -> u64 {
    let mask = if s == 64 { u64::MAX } else { (1u64 << s) - 1 };
    let mut bad = 0u64;
    match mode {
        Mode::Linear => {
            for d in 1..=k.min(s - 1) {
                let window = (1u64 << (s - d)) - 1;
                let diff = ((b ^ (b >> d)) & window).count_ones() as u64;
                bad += (s - d) as u64 - diff;
            }
        }
        Mode::Cyclic => {
            for d in 1..=k.min(s - 1) {
                if 2 * d > s {
                    break;
                }
                let rot = ((b >> d) | (b << (s - d))) & mask;
                let same = s as u64 - (b ^ rot).count_ones() as u64;
                bad += if 2 * d == s { same / 2 } else { same };
            }
        }
    }
    bad
}

/// Edge weights for closed walks of length `s`, doubled so that offsets
/// equal to `s/2` can contribute half a pair. For `s > 2k` this is `2 * t_k`.
fn folded_weights(g: &DeBruijnGraph, s: usize) -> Vec<u64> {
    let k = g.k();
    let below_half = k.min(s.div_ceil(2) - 1);
    let half = (s % 2 == 0 && s / 2 <= k).then_some(s / 2);
    g.edges()
        .map(|e| {
            let w = g.edge_word(e);
            let strict = (1..=below_half).filter(|&j| w[j] == w[0]).count() as u64;
            let mid = half.is_some_and(|h| w[h] == w[0]) as u64;
            2 * strict + mid
        })
        .collect()
}

/// Minimum weight of a closed walk of length `s` in `B_k`, over all start vertices.
///
/// Position `i` of the string is the edge leaving the `i`-th vertex of the walk;
/// it accounts for pairs `(i, i + j)` with `j < s/2` (and half of `j = s/2`), so
/// each unordered cyclic pair is counted exactly once even when `s <= 2k`.
pub fn wk_walk(k: usize, s: usize, alphabet: usize) -> Result<u64> {
    let g = DeBruijnGraph::new(k, alphabet)?;
    if s <= k {
        return Err(Error::Budget(format!("walk method needs s >= k + 1 (s={s}, k={k})")));
    }
    let weights = folded_weights(&g, s);
    let n = g.vertex_count();
    let best = (0..n)
        .into_par_iter()
        .map(|start| {
            let mut cur = vec![u64::MAX; n];
            let mut next = vec![u64::MAX; n];
            cur[start] = 0;
            for _ in 0..s {
                next.fill(u64::MAX);
                for (u, &du) in cur.iter().enumerate() {
                    if du == u64::MAX {
                        continue;
                    }
                    for d in 0..alphabet {
                        let e = g.out_edge(u, d);
                        let v = g.target(e);
                        next[v] = next[v].min(du + weights[e]);
                    }
                }
                std::mem::swap(&mut cur, &mut next);
            }
            cur[start]
        })
        .min()
        .unwrap_or(u64::MAX);
    debug_assert!(best % 2 == 0 && best != u64::MAX);
    Ok(best / 2)
}

/// A cyclic binary string with few bad pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowBadString {
    pub string: SymbolString,
    pub bad: u64,
}

/// Repeats the optimal cycle of `B_k` `s / l` times and inserts `s mod l` zeros at position 0.
pub fn construct_low_bad(k: usize, s: usize) -> Result<LowBadString> {
    construct_low_bad_with(&debruijn::optimal_cycle(k, 2)?, s)
}

pub fn construct_low_bad_with(cycle: &OptimalCycle, s: usize) -> Result<LowBadString> {
    let l = cycle.len();
    if s < l {
        return Err(invalid_param(format!(
            "unsupported length: s={s} is shorter than the optimal cycle length {l}"
        )));
    }
    let (q, r) = (s / l, s % l);
    let mut symbols = vec![0u8; r];
    for _ in 0..q {
        symbols.extend_from_slice(&cycle.word);
    }
    let string = SymbolString::new(symbols, cycle.alphabet, Mode::Cyclic)?;
    let bad = count_bad_pairs(&string, cycle.k).bad;
    Ok(LowBadString { string, bad })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str) -> SymbolString {
        SymbolString::parse(s, 2, Mode::Cyclic).unwrap()
    }

    /// Direct enumeration over unordered index pairs.
    fn pair_oracle(seq: &SymbolString, k: usize) -> (u64, u64) {
        let s = seq.len();
        let (mut bad, mut good) = (0, 0);
        for i in 0..s {
            for j in i + 1..s {
                if seq.distance(i, j) <= k {
                    if seq.symbols()[i] == seq.symbols()[j] {
                        bad += 1;
                    } else {
                        good += 1;
                    }
                }
            }
        }
        (bad, good)
    }

    #[test]
    fn bad_pair_examples() {
        assert_eq!(count_bad_pairs(&cyc("0101"), 1).bad, 0);
        let r = count_bad_pairs(&cyc("0011"), 2);
        assert_eq!((r.bad, r.good), (2, 4));
        assert_eq!(count_bad_pairs(&cyc("00000"), 2).bad, 10);
    }

    #[test]
    fn counts_match_pair_oracle() {
        for text in ["0", "01", "000", "0110", "0010111", "00110011001", "012210", "0120"] {
            for mode in [Mode::Cyclic, Mode::Linear] {
                let seq = SymbolString::parse(text, 3, mode).unwrap();
                for k in 1..=6 {
                    let r = count_bad_pairs(&seq, k);
                    assert_eq!((r.bad, r.good), pair_oracle(&seq, k), "{text} {mode:?} k={k}");
                    let sum: u64 = r.per_index_bad.iter().map(|&x| u64::from(x)).sum();
                    assert_eq!(sum, 2 * r.bad);
                }
            }
        }
    }

    #[test]
    fn binary_fast_path_matches_counter() {
        for s in 1..=10usize {
            for b in 0..(1u64 << s) {
                let symbols: Vec<u8> = (0..s).map(|i| ((b >> (s - 1 - i)) & 1) as u8).collect();
                for mode in [Mode::Cyclic, Mode::Linear] {
                    let seq = SymbolString::binary(&symbols, mode).unwrap();
                    for k in 1..=5 {
                        assert_eq!(binary_bad_pairs(b, s, k, mode), count_bad_pairs(&seq, k).bad);
                    }
                }
            }
        }
    }

    #[test]
    fn wk_examples() {
        assert_eq!(wk_exact(1, 7, 2, WkMethod::Auto).unwrap(), 1);
        assert_eq!(wk_exact(1, 6, 2, WkMethod::Auto).unwrap(), 0);
        assert_eq!(wk_exact(2, 4, 2, WkMethod::Brute).unwrap(), 2);
        assert_eq!(wk_exact(2, 5, 2, WkMethod::Brute).unwrap(), 4);
        assert_eq!(wk_exact(2, 5, 2, WkMethod::Walk).unwrap(), 4);
    }

    #[test]
    fn small_s_uses_count_once_convention() {
        // Three positions are pairwise adjacent, so some pair is bad, but only one.
        assert_eq!(wk_exact(2, 3, 2, WkMethod::Brute).unwrap(), 1);
        assert_eq!(wk_exact(2, 3, 2, WkMethod::Walk).unwrap(), 1);
        assert!(matches!(wk_exact(3, 3, 2, WkMethod::Walk), Err(Error::Budget(_))));
        assert_eq!(wk_exact(3, 3, 2, WkMethod::Auto).unwrap(), 1);
    }

    #[test]
    fn wk_errors() {
        assert!(wk_exact(0, 4, 2, WkMethod::Auto).is_err());
        assert!(wk_exact(2, 0, 2, WkMethod::Auto).is_err());
        assert!(matches!(wk_exact(2, 40, 2, WkMethod::Brute), Err(Error::Budget(_))));
        assert!(matches!(wk_exact(4, 4, 2, WkMethod::Walk), Err(Error::Budget(_))));
    }

    #[test]
    fn ternary_wk_is_consistent() {
        for k in 1..=2 {
            for s in k + 1..=8 {
                let brute = wk_exact(k, s, 3, WkMethod::Brute).unwrap();
                assert_eq!(brute, wk_exact(k, s, 3, WkMethod::Walk).unwrap(), "k={k} s={s}");
            }
        }
        // Three symbols avoid every bad pair at k = 2 on lengths divisible by 3.
        assert_eq!(wk_exact(2, 6, 3, WkMethod::Auto).unwrap(), 0);
    }

    #[test]
    fn low_bad_examples() {
        let c = construct_low_bad(2, 8).unwrap();
        assert_eq!((c.string.to_string().as_str(), c.bad), ("00110011", 4));
        let c = construct_low_bad(2, 9).unwrap();
        assert_eq!(c.bad, count_bad_pairs(&c.string, 2).bad);
        assert!(c.bad <= 16);
        let c = construct_low_bad(1, 6).unwrap();
        assert_eq!((c.string.to_string().as_str(), c.bad), ("010101", 0));
        assert!(construct_low_bad(2, 3).is_err());
    }

    #[test]
    fn characteristic_examples() {
        let side = |v: &&str| match *v {
            "x1" | "x2" => Some(Side::X),
            "y1" | "y2" => Some(Side::Y),
            _ => None,
        };
        assert_eq!(characteristic(&["x1", "y1", "x2"], side).unwrap().to_string(), "010");
        assert!(characteristic::<&str>(&[], side).unwrap().is_empty());
        assert_eq!(characteristic(&["y1", "y2"], side).unwrap().to_string(), "11");
        assert!(matches!(characteristic(&["x1", "z"], side), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn sequence_file_format() {
        let seqs = parse_sequences("# header\n0011\n\n0101 # trailing\r\n", 2, Mode::Cyclic).unwrap();
        assert_eq!(seqs.len(), 2);
        assert_eq!(seqs[1].to_string(), "0101");
        let err = parse_sequences("01\n012\n", 2, Mode::Cyclic).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
