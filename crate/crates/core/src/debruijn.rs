//! Weighted de Bruijn graphs and their minimum normalized-weight cycles.
//!
//! Vertices of `B_k` over a `t`-symbol alphabet are the `t^k` words of length
//! `k`, encoded as integers with the first symbol most significant. Edges are
//! the `t^(k+1)` words of length `k + 1`; edge `e` runs from its `k`-prefix
//! (`e / t`) to its `k`-suffix (`e % t^k`), so edge indices enumerate edge words
//! in lexicographic order. The weight of an edge word is the number of its last
//! `k` symbols equal to its first symbol.
//!
//! A cyclic string of length `s` is a closed walk of length `s`, and for
//! `s > 2k` its number of bad pairs equals the walk weight. The minimum
//! normalized weight over simple cycles is the constant `a_k` (for `t = 2`).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{invalid_param, Error, Result};
use crate::{binom2, Rational};

/// Largest edge count [`DeBruijnGraph::new`] will encode (binary `k <= 24`).
pub const MAX_ENCODED_EDGES: usize = 1 << 25;

/// Default vertex cap for the exact cycle computation (binary `k <= 14`).
pub const DEFAULT_MAX_VERTICES: usize = 1 << 14;

/// Largest supported alphabet; symbols print as base-36 digits.
pub const MAX_ALPHABET: usize = 36;

const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeBruijnGraph {
    k: usize,
    alphabet: usize,
    vertices: usize,
}

impl DeBruijnGraph {
    pub fn new(k: usize, alphabet: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid_param("k must be positive"));
        }
        if !(2..=MAX_ALPHABET).contains(&alphabet) {
            return Err(invalid_param(format!(
                "alphabet size must be in 2..={MAX_ALPHABET}, got {alphabet}"
            )));
        }
        let vertices = checked_pow(alphabet, k)
            .filter(|&v| v.checked_mul(alphabet).is_some_and(|e| e <= MAX_ENCODED_EDGES))
            .ok_or_else(|| {
                Error::Budget(format!(
                    "de Bruijn graph with k={k}, t={alphabet} exceeds {MAX_ENCODED_EDGES} edges"
                ))
            })?;
        Ok(Self { k, alphabet, vertices })
    }

    /// The binary graph `B_k`.
    pub fn binary(k: usize) -> Result<Self> {
        Self::new(k, 2)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices * self.alphabet
    }

    /// Edge indices in lexicographic order of their words.
    pub fn edges(&self) -> std::ops::Range<usize> {
        0..self.edge_count()
    }

    pub fn source(&self, edge: usize) -> usize {
        edge / self.alphabet
    }

    pub fn target(&self, edge: usize) -> usize {
        edge % self.vertices
    }

    /// Outgoing edge of `vertex` that appends `symbol`.
    pub fn out_edge(&self, vertex: usize, symbol: usize) -> usize {
        vertex * self.alphabet + symbol
    }

    /// Incoming edge of `vertex` whose word starts with `symbol`.
    pub fn in_edge(&self, vertex: usize, symbol: usize) -> usize {
        symbol * self.vertices + vertex
    }

    /// First symbol of a vertex word.
    pub fn leading_symbol(&self, vertex: usize) -> u8 {
        (vertex / (self.vertices / self.alphabet)) as u8
    }

    pub fn vertex_word(&self, vertex: usize) -> Vec<u8> {
        decode(vertex, self.k, self.alphabet)
    }

    pub fn edge_word(&self, edge: usize) -> Vec<u8> {
        decode(edge, self.k + 1, self.alphabet)
    }

    pub fn weight(&self, edge: usize) -> u32 {
        let first = edge / self.vertices;
        let mut rest = edge % self.vertices;
        let mut count = 0;
        for _ in 0..self.k {
            if rest % self.alphabet == first {
                count += 1;
            }
            rest /= self.alphabet;
        }
        count
    }

    /// Encodes a word of length `k` as a vertex index.
    pub fn vertex_of(&self, word: &[u8]) -> Result<usize> {
        if word.len() != self.k {
            return Err(invalid_param(format!(
                "vertex word must have length {}, got {}",
                self.k,
                word.len()
            )));
        }
        encode(word, self.alphabet)
    }

    fn weight_table(&self) -> Vec<i64> {
        self.edges().map(|e| i64::from(self.weight(e))).collect()
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

fn decode(mut index: usize, len: usize, alphabet: usize) -> Vec<u8> {
    let mut word = vec![0u8; len];
    for slot in word.iter_mut().rev() {
        *slot = (index % alphabet) as u8;
        index /= alphabet;
    }
    word
}

fn encode(word: &[u8], alphabet: usize) -> Result<usize> {
    word.iter().try_fold(0usize, |acc, &s| {
        if usize::from(s) >= alphabet {
            Err(invalid_param(format!("symbol {s} outside alphabet of size {alphabet}")))
        } else {
            Ok(acc * alphabet + usize::from(s))
        }
    })
}

/// Weight of an edge word: how many of its last `k` symbols repeat the first.
pub fn edge_weight(edge_word: &[u8]) -> Result<u32> {
    match edge_word.split_first() {
        Some((first, rest)) if !rest.is_empty() => {
            Ok(rest.iter().filter(|&s| s == first).count() as u32)
        }
        _ => Err(invalid_param("edge word must have length k + 1 >= 2")),
    }
}

/// Formats symbols as base-36 digits.
pub fn symbols_to_string(symbols: &[u8]) -> String {
    symbols
        .iter()
        .map(|&s| char::from_digit(u32::from(s), 36).unwrap_or('?'))
        .collect()
}

/// A closed walk in `B_k` described by its cyclic symbol string of one period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalCycle {
    pub k: usize,
    pub alphabet: usize,
    pub word: Vec<u8>,
    pub total_weight: u64,
    pub normalized: Rational,
}

impl OptimalCycle {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word_string(&self) -> String {
        symbols_to_string(&self.word)
    }

    /// Recomputes the weight from the word and checks that the walk is a simple cycle.
    pub fn verify(&self) -> Result<()> {
        let walk = evaluate_closed_walk(self.k, self.alphabet, &self.word)?;
        if !walk.simple {
            return Err(Error::InvalidInput(format!(
                "cycle word {} repeats a vertex of B_{}",
                self.word_string(),
                self.k
            )));
        }
        if walk.total_weight != self.total_weight || walk.normalized != self.normalized {
            return Err(Error::InvalidInput(format!(
                "cycle word {} has weight {}, not the reported {}",
                self.word_string(),
                walk.total_weight,
                self.total_weight
            )));
        }
        Ok(())
    }
}

/// Weight statistics of the closed walk spelled by a cyclic word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWalk {
    pub total_weight: u64,
    pub normalized: Rational,
    /// No vertex of `B_k` is visited twice.
    pub simple: bool,
}

/// Evaluates the closed walk of `B_k` read off a cyclic word: the `i`-th edge is
/// the window of `k + 1` symbols starting at position `i`, read cyclically.
pub fn evaluate_closed_walk(k: usize, alphabet: usize, word: &[u8]) -> Result<ClosedWalk> {
    if k == 0 {
        return Err(invalid_param("k must be positive"));
    }
    if word.is_empty() {
        return Err(invalid_param("cycle word must be non-empty"));
    }
    if let Some(&s) = word.iter().find(|&&s| usize::from(s) >= alphabet) {
        return Err(invalid_param(format!("symbol {s} outside alphabet of size {alphabet}")));
    }
    let p = word.len();
    let mut total = 0u64;
    let mut windows = std::collections::HashSet::with_capacity(p);
    let mut simple = true;
    for i in 0..p {
        let first = word[i];
        total += (1..=k).filter(|&j| word[(i + j) % p] == first).count() as u64;
        let window: Vec<u8> = (0..k).map(|j| word[(i + j) % p]).collect();
        simple &= windows.insert(window);
    }
    Ok(ClosedWalk {
        total_weight: total,
        normalized: Rational::new(total as i64, p as i64),
        simple,
    })
}

/// Smallest rotation of a cyclic word (two-pointer least-rotation scan).
pub fn canonical_rotation(word: &[u8]) -> Vec<u8> {
    let n = word.len();
    if n == 0 {
        return Vec::new();
    }
    let (mut i, mut j, mut off) = (0usize, 1usize, 0usize);
    while i < n && j < n && off < n {
        let a = word[(i + off) % n];
        let b = word[(j + off) % n];
        if a == b {
            off += 1;
            continue;
        }
        if a > b {
            i += off + 1;
        } else {
            j += off + 1;
        }
        if i == j {
            j += 1;
        }
        off = 0;
    }
    let start = i.min(j);
    (0..n).map(|x| word[(start + x) % n]).collect()
}

/// Resource cap for the exact cycle computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleBudget {
    pub max_vertices: usize,
}

impl Default for CycleBudget {
    fn default() -> Self {
        Self { max_vertices: DEFAULT_MAX_VERTICES }
    }
}

/// Minimum normalized-weight simple cycle of `g` under the default budget.
pub fn min_normalized_cycle(g: &DeBruijnGraph) -> Result<OptimalCycle> {
    min_normalized_cycle_with(g, &CycleBudget::default())
}

/// Minimum normalized-weight simple cycle of `g`.
///
/// The minimum mean is found with Karp's recurrence over walk lengths
/// `0..=V` in exact integers, using two passes so only `O(V)` rows are live.
/// A witness is then read off the subgraph of edges that are tight under
/// shortest-path potentials for the reweighting `q * w - p`; every cycle there
/// is optimal and every optimal cycle lies there. Among the cycles closed by
/// back edges of a depth-first search (vertices and symbols in increasing
/// order), the one whose least rotation is lexicographically smallest wins.
pub fn min_normalized_cycle_with(g: &DeBruijnGraph, budget: &CycleBudget) -> Result<OptimalCycle> {
    let (p, q) = min_mean(g, budget)?;
    let tight = tight_edges(g, p, q);
    let mut best: Option<Vec<u8>> = None;
    for_each_back_edge_cycle(g, &tight, |cycle| {
        let word: Vec<u8> = cycle.iter().map(|&v| g.leading_symbol(v)).collect();
        let canon = canonical_rotation(&word);
        if best.as_ref().is_none_or(|b| canon < *b) {
            best = Some(canon);
        }
    });
    let word = best.ok_or_else(|| {
        Error::InvalidInput("tight subgraph has no cycle; potentials are inconsistent".into())
    })?;
    let walk = evaluate_closed_walk(g.k, g.alphabet, &word)?;
    debug_assert!(walk.simple);
    debug_assert_eq!(walk.normalized, Rational::new(p, q));
    Ok(OptimalCycle {
        k: g.k,
        alphabet: g.alphabet,
        word,
        total_weight: walk.total_weight,
        normalized: walk.normalized,
    })
}

/// All optimal cycles of `g`, as least rotations in lexicographic order.
///
/// Enumerates simple cycles of the tight subgraph; stops with a budget error
/// once more than `limit` distinct cycles are found.
pub fn all_optimal_cycles(g: &DeBruijnGraph, budget: &CycleBudget, limit: usize) -> Result<Vec<OptimalCycle>> {
    let (p, q) = min_mean(g, budget)?;
    let tight = tight_edges(g, p, q);
    let n = g.vertex_count();
    let mut out_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        if tight[e] {
            out_adj[g.source(e)].push(g.target(e));
        }
    }
    let mut words = std::collections::BTreeSet::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    for start in 0..n {
        // Cycles whose smallest vertex is `start`.
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        path.push(start);
        on_path[start] = true;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < out_adj[v].len() {
                let w = out_adj[v][*next];
                *next += 1;
                if w == start {
                    let word: Vec<u8> = path.iter().map(|&x| g.leading_symbol(x)).collect();
                    words.insert(canonical_rotation(&word));
                    if words.len() > limit {
                        return Err(Error::Budget(format!("more than {limit} optimal cycles")));
                    }
                } else if w > start && !on_path[w] {
                    on_path[w] = true;
                    path.push(w);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
                if let Some(x) = path.pop() {
                    on_path[x] = false;
                }
            }
        }
    }
    words
        .into_iter()
        .map(|word| {
            let walk = evaluate_closed_walk(g.k, g.alphabet, &word)?;
            Ok(OptimalCycle {
                k: g.k,
                alphabet: g.alphabet,
                word,
                total_weight: walk.total_weight,
                normalized: walk.normalized,
            })
        })
        .collect()
}

/// Karp's minimum cycle mean as a reduced fraction `(p, q)`.
fn min_mean(g: &DeBruijnGraph, budget: &CycleBudget) -> Result<(i64, i64)> {
    let n = g.vertex_count();
    if n > budget.max_vertices {
        return Err(Error::Budget(format!(
            "exact cycle search on B_{} (t={}) needs {n} vertices, budget allows {}",
            g.k, g.alphabet, budget.max_vertices
        )));
    }
    let weights = g.weight_table();
    let step = |prev: &[i64], next: &mut [i64]| {
        for (v, slot) in next.iter_mut().enumerate() {
            let mut best = INF;
            for d in 0..g.alphabet {
                let e = g.in_edge(v, d);
                let cand = prev[g.source(e)];
                if cand < INF {
                    best = best.min(cand + weights[e]);
                }
            }
            *slot = best;
        }
    };
    let initial = |row: &mut Vec<i64>| {
        row.fill(INF);
        row[0] = 0;
    };

    let mut prev = vec![INF; n];
    let mut next = vec![INF; n];
    initial(&mut prev);
    for _ in 0..n {
        step(&prev, &mut next);
        std::mem::swap(&mut prev, &mut next);
    }
    let last = prev.clone();

    // best[v] = max over j of (D_n(v) - D_j(v)) / (n - j), kept as (num, den).
    let mut best: Vec<Option<(i64, i64)>> = vec![None; n];
    initial(&mut prev);
    for j in 0..n {
        let den = (n - j) as i64;
        for v in 0..n {
            if last[v] < INF && prev[v] < INF {
                let num = last[v] - prev[v];
                let better = match best[v] {
                    None => true,
                    Some((bn, bd)) => i128::from(num) * i128::from(bd) > i128::from(bn) * i128::from(den),
                };
                if better {
                    best[v] = Some((num, den));
                }
            }
        }
        if j + 1 < n {
            step(&prev, &mut next);
            std::mem::swap(&mut prev, &mut next);
        }
    }
    let (num, den) = best
        .into_iter()
        .flatten()
        .min_by(|&(a, b), &(c, d)| (i128::from(a) * i128::from(d)).cmp(&(i128::from(c) * i128::from(b))))
        .ok_or_else(|| Error::InvalidInput("de Bruijn graph has no cycle".into()))?;
    let g_ = num.gcd(&den);
    Ok((num / g_, den / g_))
}

/// Marks edges with zero reduced cost under `q * w - p` and shortest-path potentials.
fn tight_edges(g: &DeBruijnGraph, p: i64, q: i64) -> Vec<bool> {
    let n = g.vertex_count();
    let cost = |e: usize| q * i64::from(g.weight(e)) - p;
    // Bellman-Ford from a virtual source at distance 0 to every vertex.
    let mut pot = vec![0i64; n];
    let mut queued = vec![true; n];
    let mut queue: std::collections::VecDeque<usize> = (0..n).collect();
    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        for d in 0..g.alphabet {
            let e = g.out_edge(u, d);
            let v = g.target(e);
            let cand = pot[u] + cost(e);
            if cand < pot[v] {
                pot[v] = cand;
                if !queued[v] {
                    queued[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    g.edges().map(|e| pot[g.target(e)] == pot[g.source(e)] + cost(e)).collect()
}

fn for_each_back_edge_cycle(g: &DeBruijnGraph, tight: &[bool], mut visit: impl FnMut(&[usize])) {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let n = g.vertex_count();
    let mut color = vec![WHITE; n];
    let mut pos = vec![0usize; n];
    let mut path: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if color[root] != WHITE {
            continue;
        }
        color[root] = GRAY;
        pos[root] = 0;
        path.push(root);
        stack.push((root, 0));
        while let Some(&mut (v, ref mut sym)) = stack.last_mut() {
            if *sym < g.alphabet {
                let e = g.out_edge(v, *sym);
                *sym += 1;
                if !tight[e] {
                    continue;
                }
                let w = g.target(e);
                match color[w] {
                    WHITE => {
                        color[w] = GRAY;
                        pos[w] = path.len();
                        path.push(w);
                        stack.push((w, 0));
                    }
                    GRAY => visit(&path[pos[w]..]),
                    _ => {}
                }
            } else {
                color[v] = BLACK;
                path.pop();
                stack.pop();
            }
        }
    }
}

static CYCLE_CACHE: OnceLock<Mutex<HashMap<(usize, usize), OptimalCycle>>> = OnceLock::new();

/// Optimal cycle of `B_k` over `alphabet` symbols, memoized per process.
pub fn optimal_cycle(k: usize, alphabet: usize) -> Result<OptimalCycle> {
    let cache = CYCLE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("cycle cache poisoned").get(&(k, alphabet)) {
        return Ok(c.clone());
    }
    let cycle = min_normalized_cycle(&DeBruijnGraph::new(k, alphabet)?)?;
    cache
        .lock()
        .expect("cycle cache poisoned")
        .insert((k, alphabet), cycle.clone());
    Ok(cycle)
}

/// `a_k` for the binary alphabet.
pub fn ak(k: usize) -> Result<Rational> {
    Ok(optimal_cycle(k, 2)?.normalized)
}

/// Normalized weight of the closed walk `(0^t 1^t)*` in `B_k`, for `k/2 <= t <= k+1`.
pub fn block_cycle_weight(k: u64, t: u64) -> Rational {
    let num = binom2(t) + binom2((k + 1).saturating_sub(t));
    Rational::new(num as i64, t as i64)
}

/// `z_k`: minimum of [`block_cycle_weight`] over `ceil(k/2) <= t <= k+1`,
/// together with the smallest minimizing `t`.
pub fn zk(k: usize) -> Result<(Rational, u64)> {
    if k == 0 {
        return Err(invalid_param("k must be positive"));
    }
    let k = k as u64;
    let lo = k.div_ceil(2).max(1);
    let (t, value) = (lo..=k + 1)
        .map(|t| (t, block_cycle_weight(k, t)))
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("range is non-empty");
    Ok((value, t))
}

/// Analytic bracket on `a_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AkBounds {
    /// `max(0, sqrt(2k(k-1)) - k)`.
    pub lower: f64,
    /// `z_k`.
    pub upper: Rational,
    pub upper_t: u64,
}

pub fn ak_bounds(k: usize) -> Result<AkBounds> {
    let (upper, upper_t) = zk(k)?;
    let kf = k as f64;
    let lower = ((2.0 * kf * (kf - 1.0)).sqrt() - kf).max(0.0);
    Ok(AkBounds { lower, upper, upper_t })
}

/// Exact test of `value >= sqrt(2k(k-1)) - k`.
pub fn exceeds_sqrt_lower_bound(value: Rational, k: usize) -> bool {
    let shifted = value + Rational::from_integer(k as i64);
    if shifted < Rational::from_integer(0) {
        return false;
    }
    let k = k as i64;
    shifted * shifted >= Rational::from_integer(2 * k * (k - 1))
}

/// Exact test of `value <= sqrt(2(k+1)k + 1) - k - 1`.
pub fn below_integer_minimum_bound(value: Rational, k: usize) -> bool {
    let k = k as i64;
    let shifted = value + Rational::from_integer(k + 1);
    shifted >= Rational::from_integer(0) && shifted * shifted <= Rational::from_integer(2 * (k + 1) * k + 1)
}

/// `d_k = k / (k - a_k)`.
pub fn dk(k: usize) -> Result<Rational> {
    let a = ak(k)?;
    Ok(Rational::from_integer(k as i64) / (Rational::from_integer(k as i64) - a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let g = DeBruijnGraph::binary(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 4));
        let g = DeBruijnGraph::binary(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 16));
        let g = DeBruijnGraph::binary(24).unwrap();
        assert_eq!(g.edge_count(), 1 << 25);
        assert!(matches!(DeBruijnGraph::binary(25), Err(Error::Budget(_))));
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(DeBruijnGraph::new(0, 2), Err(Error::InvalidParameter(_))));
        assert!(matches!(DeBruijnGraph::new(3, 1), Err(Error::InvalidParameter(_))));
        assert!(edge_weight(&[0]).is_err());
        assert!(edge_weight(&[]).is_err());
    }

    #[test]
    fn edge_weights() {
        assert_eq!(edge_weight(&[0, 1, 0, 0, 0, 1]).unwrap(), 3);
        assert_eq!(edge_weight(&[0, 1]).unwrap(), 0);
        assert_eq!(edge_weight(&[0, 0, 0]).unwrap(), 2);
        let g = DeBruijnGraph::binary(5).unwrap();
        let e = 0b010001;
        assert_eq!(g.edge_word(e), vec![0, 1, 0, 0, 0, 1]);
        assert_eq!(g.weight(e), 3);
    }

    #[test]
    fn degrees_and_weights_match_words() {
        for (k, t) in [(1, 2), (3, 2), (2, 3), (4, 2)] {
            let g = DeBruijnGraph::new(k, t).unwrap();
            let mut indeg = vec![0; g.vertex_count()];
            let mut outdeg = vec![0; g.vertex_count()];
            for e in g.edges() {
                let word = g.edge_word(e);
                assert_eq!(g.vertex_word(g.source(e)), word[..k]);
                assert_eq!(g.vertex_word(g.target(e)), word[1..]);
                assert_eq!(g.weight(e), edge_weight(&word).unwrap());
                assert!(g.weight(e) as usize <= k);
                outdeg[g.source(e)] += 1;
                indeg[g.target(e)] += 1;
            }
            assert!(indeg.iter().chain(&outdeg).all(|&d| d == t));
        }
    }

    #[test]
    fn canonical_rotation_is_least() {
        assert_eq!(canonical_rotation(&[1, 1, 0, 0]), vec![0, 0, 1, 1]);
        assert_eq!(canonical_rotation(&[1, 0, 1, 0]), vec![0, 1, 0, 1]);
        assert_eq!(canonical_rotation(&[0]), vec![0]);
        let w = [1, 0, 0, 1, 0, 0, 0, 1];
        let naive = (0..w.len())
            .map(|r| (0..w.len()).map(|i| w[(r + i) % w.len()]).collect::<Vec<u8>>())
            .min()
            .unwrap();
        assert_eq!(canonical_rotation(&w), naive);
    }

    #[test]
    fn small_optimal_cycles() {
        let c = min_normalized_cycle(&DeBruijnGraph::binary(1).unwrap()).unwrap();
        assert_eq!((c.normalized, c.word_string().as_str()), (Rational::from_integer(0), "01"));
        let c = min_normalized_cycle(&DeBruijnGraph::binary(2).unwrap()).unwrap();
        assert_eq!((c.normalized, c.word_string().as_str()), (Rational::new(1, 2), "0011"));
        let c = min_normalized_cycle(&DeBruijnGraph::binary(4).unwrap()).unwrap();
        assert_eq!((c.normalized, c.word_string().as_str()), (Rational::new(4, 3), "000111"));
        c.verify().unwrap();
    }

    #[test]
    fn budget_is_reported() {
        let g = DeBruijnGraph::binary(6).unwrap();
        let tiny = CycleBudget { max_vertices: 32 };
        assert!(matches!(min_normalized_cycle_with(&g, &tiny), Err(Error::Budget(_))));
    }

    #[test]
    fn zk_values() {
        assert_eq!(zk(1).unwrap(), (Rational::from_integer(0), 1));
        assert_eq!(zk(2).unwrap(), (Rational::new(1, 2), 2));
        assert_eq!(zk(4).unwrap(), (Rational::new(4, 3), 3));
        assert_eq!(zk(5).unwrap(), (Rational::new(7, 4), 4));
    }

    #[test]
    fn block_cycle_formula_matches_walk() {
        for k in 1..=8usize {
            for t in k.div_ceil(2).max(1)..=k + 1 {
                let word: Vec<u8> = std::iter::repeat_n(0, t).chain(std::iter::repeat_n(1, t)).collect();
                let walk = evaluate_closed_walk(k, 2, &word).unwrap();
                assert_eq!(walk.normalized, block_cycle_weight(k as u64, t as u64), "k={k} t={t}");
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let b = ak_bounds(1).unwrap();
        assert_eq!((b.lower, b.upper), (0.0, Rational::from_integer(0)));
        let b = ak_bounds(5).unwrap();
        assert!((b.lower - 1.324_555_320_336_759).abs() < 1e-12);
        assert_eq!(b.upper, Rational::new(7, 4));
        let b = ak_bounds(4).unwrap();
        assert!((b.lower - 0.898_979_485_566_356).abs() < 1e-12);
        assert_eq!(b.upper, Rational::new(4, 3));
    }

    #[test]
    fn exact_bound_predicates() {
        // sqrt(40) - 5 ~ 1.3246
        assert!(exceeds_sqrt_lower_bound(Rational::new(7, 4), 5));
        assert!(!exceeds_sqrt_lower_bound(Rational::new(13, 10), 5));
        assert!(exceeds_sqrt_lower_bound(Rational::from_integer(0), 1));
        for k in 1..=40 {
            assert!(below_integer_minimum_bound(zk(k).unwrap().0, k), "k={k}");
        }
    }

    #[test]
    fn dk_values() {
        assert_eq!(dk(1).unwrap(), Rational::from_integer(1));
        assert_eq!(dk(2).unwrap(), Rational::new(4, 3));
        assert_eq!(dk(5).unwrap(), Rational::new(20, 13));
    }
}
