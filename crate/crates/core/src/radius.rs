//! k-radius and k-cover sequences: verifiers, lower bounds and constructions.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binseq::{self, Side, SymbolString, WkMethod};
use crate::debruijn;
use crate::error::{invalid_param, Error, Result};
use crate::graphs::{self, Graph};
use crate::{Mode, Rational};

/// A vertex sequence over some graph; items are vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSequence {
    pub items: Vec<usize>,
    pub mode: Mode,
}

impl VertexSequence {
    pub fn new(items: Vec<usize>, mode: Mode) -> Self {
        Self { items, mode }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Linear sequence covering everything a cyclic one does: the first `k`
    /// items are appended.
    pub fn to_linear(&self, k: usize) -> Self {
        let mut items = self.items.clone();
        if self.mode == Mode::Cyclic {
            let extra: Vec<usize> = self.items.iter().copied().cycle().take(k.min(self.len())).collect();
            items.extend(extra);
        }
        Self { items, mode: Mode::Linear }
    }

    pub fn format(&self, g: &Graph) -> String {
        self.items.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ")
    }
}

/// Parses whitespace-separated vertex labels; `#` starts a comment.
pub fn parse_vertex_sequence(g: &Graph, text: &str, mode: Mode) -> Result<VertexSequence> {
    let mut items = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        for tok in raw.split('#').next().unwrap_or("").split_whitespace() {
            let v = g.vertex(tok).ok_or_else(|| Error::Parse {
                line: no + 1,
                message: format!("unknown vertex {tok}"),
            })?;
            items.push(v);
        }
    }
    Ok(VertexSequence { items, mode })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusCheck {
    pub valid: bool,
    /// Indices of edges whose endpoints never come within distance `k`.
    pub uncovered: Vec<usize>,
}

fn check_items(g: &Graph, items: &[usize]) -> Result<()> {
    match items.iter().position(|&v| v >= g.vertex_count()) {
        Some(i) => Err(Error::InvalidInput(format!(
            "item {} refers to vertex {} outside the graph",
            i + 1,
            items[i]
        ))),
        None => Ok(()),
    }
}

/// Edge-coverage flags of a sequence: positions at (cyclic) distance `1..=k`.
fn covered_edges(g: &Graph, seq: &VertexSequence, k: usize) -> Vec<bool> {
    let s = seq.len();
    let mut covered = vec![false; g.edge_count()];
    for i in 0..s {
        for d in 1..=k.min(s.saturating_sub(1)) {
            let j = match seq.mode {
                Mode::Linear if i + d < s => i + d,
                Mode::Linear => break,
                Mode::Cyclic => (i + d) % s,
            };
            if let Some(e) = g.edge_index(seq.items[i], seq.items[j]) {
                covered[e] = true;
            }
        }
    }
    covered
}

pub fn verify_radius(g: &Graph, seq: &VertexSequence, k: usize) -> Result<RadiusCheck> {
    check_items(g, &seq.items)?;
    let covered = covered_edges(g, seq, k);
    let uncovered: Vec<usize> = (0..g.edge_count()).filter(|&e| !covered[e]).collect();
    Ok(RadiusCheck { valid: uncovered.is_empty(), uncovered })
}

/// A sequence of `(k+1)`-sets, each stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSequence {
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
}

impl CoverSequence {
    pub fn new(k: usize, sets: Vec<Vec<usize>>) -> Self {
        let sets = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        Self { k, sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn reads(&self) -> usize {
        self.len() + self.k
    }

    pub fn format(&self, g: &Graph) -> String {
        let mut out = String::new();
        for set in &self.sets {
            let labels: Vec<&str> = set.iter().map(|&v| g.label(v)).collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        out
    }

    /// Checks set sizes and the one-element swap rule. Errors carry a 1-based index.
    pub fn check_structure(&self, g: &Graph) -> Result<()> {
        for (i, set) in self.sets.iter().enumerate() {
            let structure = |message: String| Error::Structure { index: i + 1, message };
            check_items(g, set).map_err(|e| structure(e.to_string()))?;
            let distinct: BTreeSet<usize> = set.iter().copied().collect();
            if distinct.len() != set.len() {
                return Err(structure("set repeats a vertex".into()));
            }
            if set.len() != self.k + 1 {
                return Err(structure(format!("set has {} vertices, expected {}", set.len(), self.k + 1)));
            }
            if i > 0 {
                let prev = &self.sets[i - 1];
                let added = set.iter().filter(|v| prev.binary_search(v).is_err()).count();
                if added != 1 {
                    return Err(structure(format!(
                        "consecutive sets differ by {added} elements, expected 1"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Parses one set per line, labels separated by whitespace.
pub fn parse_cover_sequence(g: &Graph, text: &str, k: usize) -> Result<CoverSequence> {
    let mut sets = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let set = line
            .split_whitespace()
            .map(|tok| {
                g.vertex(tok).ok_or_else(|| Error::Parse {
                    line: no + 1,
                    message: format!("unknown vertex {tok}"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        sets.push(set);
    }
    Ok(CoverSequence::new(k, sets))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub valid: bool,
    pub uncovered: Vec<usize>,
    pub reads: usize,
}

pub fn verify_cover(g: &Graph, cov: &CoverSequence) -> Result<CoverCheck> {
    cov.check_structure(g)?;
    let mut covered = vec![false; g.edge_count()];
    for set in &cov.sets {
        for (a, &u) in set.iter().enumerate() {
            for &v in &set[a + 1..] {
                if let Some(e) = g.edge_index(u, v) {
                    covered[e] = true;
                }
            }
        }
    }
    let uncovered: Vec<usize> = (0..g.edge_count()).filter(|&e| !covered[e]).collect();
    Ok(CoverCheck { valid: uncovered.is_empty(), uncovered, reads: cov.reads() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    /// `e/k + (k+1)/2`; absent when at most `k + 1` vertices carry edges.
    pub eq1: Option<Rational>,
    /// `e/(k - a_k)`; bipartite graphs only, and only when `a_k` is in budget.
    pub cor1: Option<Rational>,
    /// `sum over v of ceil(deg v / 2k)`.
    pub prop8: u64,
    /// Lower bound on the shortest linear sequence.
    pub fk_lower: u64,
    /// Lower bound on the shortest cyclic sequence.
    pub fk_cyc_lower: u64,
}

fn ceil_u64(r: Rational) -> u64 {
    r.ceil().to_integer().max(0) as u64
}

/// Lower bounds for `k`-radius sequences of `g`. Without an explicit bipartition
/// one is looked for by BFS.
pub fn bounds(g: &Graph, k: usize, bipartition: Option<&[Side]>) -> Result<BoundsReport> {
    if k == 0 {
        return Err(invalid_param("k must be positive"));
    }
    let e = g.edge_count() as i64;
    let ki = k as i64;
    let eq1 = (g.non_isolated_count() > k + 1).then(|| Rational::new(e, ki) + Rational::new(ki + 1, 2));
    let bipartite = match bipartition {
        Some(sides) => {
            if sides.len() != g.vertex_count() {
                return Err(Error::InvalidInput("bipartition does not cover every vertex".into()));
            }
            if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| sides[u] == sides[v]) {
                return Err(Error::InvalidInput(format!(
                    "edge {} {} lies inside one side of the bipartition",
                    g.label(u),
                    g.label(v)
                )));
            }
            true
        }
        None => g.two_coloring().is_some(),
    };
    let cor1 = if bipartite {
        match debruijn::ak(k) {
            Ok(a) => Some(Rational::from_integer(e) / (Rational::from_integer(ki) - a)),
            Err(Error::Budget(_)) => None,
            Err(other) => return Err(other),
        }
    } else {
        None
    };
    let prop8: u64 = (0..g.vertex_count()).map(|v| g.degree(v).div_ceil(2 * k) as u64).sum();
    let eq1_c = eq1.map(ceil_u64).unwrap_or(0);
    let cor1_c = cor1.map(ceil_u64).unwrap_or(0);
    let fk_lower = eq1_c.max(cor1_c).max(prop8);
    // A cyclic sequence gives a linear one k items longer, and has at most k pairs per position.
    let fk_cyc_lower = prop8
        .max(cor1_c)
        .max(eq1_c.saturating_sub(k as u64))
        .max((e as u64).div_ceil(k as u64));
    Ok(BoundsReport { eq1, cor1, prop8, fk_lower, fk_cyc_lower })
}

/// A 1-radius sequence from an Euler circuit of `g` plus one auxiliary edge per
/// pair of odd vertices, cut open at an auxiliary edge when there is one.
///
/// Length `m + n_o/2`, or `m + 1` when every degree is even.
pub fn euler_radius1(g: &Graph) -> Result<VertexSequence> {
    if g.edge_count() == 0 {
        return Err(Error::InvalidInput("graph has no edges".into()));
    }
    if !g.edges_connected() {
        return Err(Error::InvalidInput("graph is not connected".into()));
    }
    let n = g.vertex_count();
    let mut ends: Vec<(usize, usize)> = g.edges().to_vec();
    let odd: Vec<usize> = (0..n).filter(|&v| g.degree(v) % 2 == 1).collect();
    let m = ends.len();
    for pair in odd.chunks(2) {
        ends.push((pair[0], pair[1]));
    }
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, &(u, v)) in ends.iter().enumerate() {
        inc[u].push(id);
        inc[v].push(id);
    }
    let start = if ends.len() > m { ends[m].0 } else { ends[0].0 };
    // Hierholzer; the circuit comes out as a list of (vertex, edge used to reach it).
    let mut used = vec![false; ends.len()];
    let mut ptr = vec![0usize; n];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut circuit: Vec<(usize, Option<usize>)> = Vec::with_capacity(ends.len() + 1);
    while let Some(&(v, _)) = stack.last() {
        while ptr[v] < inc[v].len() && used[inc[v][ptr[v]]] {
            ptr[v] += 1;
        }
        if ptr[v] == inc[v].len() {
            circuit.push(stack.pop().unwrap());
        } else {
            let id = inc[v][ptr[v]];
            used[id] = true;
            let (a, b) = ends[id];
            stack.push((if a == v { b } else { a }, Some(id)));
        }
    }
    circuit.reverse();
    let walk: Vec<usize> = circuit.iter().map(|&(v, _)| v).collect();
    let items = match circuit.iter().position(|&(_, e)| e.is_some_and(|id| id >= m)) {
        // Cut the closed walk at that auxiliary edge: start right after it.
        Some(p) => {
            let closed = &walk[..walk.len() - 1];
            let l = closed.len();
            (0..l).map(|i| closed[(p + i) % l]).collect()
        }
        None => walk,
    };
    Ok(VertexSequence::new(items, Mode::Linear))
}

/// The linear pattern a block is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternBlock {
    pub pattern: SymbolString,
    /// Completed repeats of the optimal cycle.
    pub q: usize,
    pub c0: usize,
    pub c1: usize,
    /// Good pairs of the pattern read linearly.
    pub r: u64,
    /// Set when not even one period fits the vertex classes; the pattern is then
    /// one period with the symbols of an exhausted class dropped.
    pub truncated: bool,
}

/// Optimal cycle of `B_k` repeated `q` times, `q` following the epsilon
/// formula but capped so one block never needs more vertices than a class has.
pub fn pattern_block(m: usize, n: usize, k: usize, epsilon: f64) -> Result<PatternBlock> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(invalid_param("epsilon must be positive"));
    }
    let cycle = debruijn::optimal_cycle(k, 2)?;
    let a = cycle.normalized;
    let l = cycle.len();
    let slack = (k as f64) - (*a.numer() as f64 / *a.denom() as f64);
    let want = (((1.0 + epsilon) / epsilon) * (k * (k + 1)) as f64 / (l as f64 * slack)).ceil();
    let want = (want.max(1.0) as usize).min(1 << 20);
    let zeros = cycle.word.iter().filter(|&&b| b == 0).count();
    let ones = l - zeros;
    let fit = (m / zeros.max(1)).min(n / ones.max(1));
    let q = want.min(fit);
    let mut symbols: Vec<u8> = cycle.word.iter().copied().cycle().take(q * l).collect();
    let truncated = q == 0;
    if truncated {
        let (mut c0, mut c1) = (0, 0);
        for &b in &cycle.word {
            if (b == 0 && c0 == m) || (b == 1 && c1 == n) {
                continue;
            }
            if b == 0 { c0 += 1 } else { c1 += 1 }
            symbols.push(b);
        }
    }
    let pattern = SymbolString::new(symbols, 2, Mode::Linear)?;
    let c0 = pattern.symbols().iter().filter(|&&b| b == 0).count();
    let c1 = pattern.len() - c0;
    let r = binseq::count_bad_pairs(&pattern, k).good;
    Ok(PatternBlock { pattern, q, c0, c1, r, truncated })
}

#[derive(Debug, Clone)]
pub struct BipartiteConstruction {
    pub graph: Graph,
    pub sequence: VertexSequence,
    pub block: Option<PatternBlock>,
    pub blocks_used: usize,
    /// Items appended by the pair sweep.
    pub sweep_len: usize,
    /// `m n / (k - a_k)`, the cyclic lower bound for `K_{m,n}`.
    pub lower_bound: Rational,
    /// Sequence length over `lower_bound`.
    pub ratio: f64,
}

struct Coverage {
    m: usize,
    covered: Vec<bool>,
    remaining: Vec<usize>,
    left: usize,
}

impl Coverage {
    fn pair(&self, u: usize, v: usize) -> Option<usize> {
        let (x, y) = if u < self.m { (u, v) } else { (v, u) };
        (x < self.m && y >= self.m).then(|| x * (self.covered.len() / self.m) + (y - self.m))
    }

    /// Marks the pairs formed by `v` with the previous `k` items; returns the new ones.
    fn push(&mut self, seq: &[usize], v: usize, k: usize, log: &mut Vec<usize>) -> usize {
        let mut fresh = 0;
        for &u in seq.iter().rev().take(k) {
            if let Some(p) = self.pair(u, v) {
                if !self.covered[p] {
                    self.covered[p] = true;
                    self.remaining[u] -= 1;
                    self.remaining[v] -= 1;
                    self.left -= 1;
                    log.push(p);
                    fresh += 1;
                }
            }
        }
        fresh
    }

    fn score(&self, seq: &[usize], v: usize, k: usize) -> usize {
        seq.iter()
            .rev()
            .take(k)
            .filter(|&&u| self.pair(u, v).is_some_and(|p| !self.covered[p]))
            .count()
    }

    fn undo(&mut self, log: &[usize]) {
        let per_x = self.covered.len() / self.m;
        for &p in log {
            self.covered[p] = false;
            self.remaining[p / per_x] += 1;
            self.remaining[self.m + p % per_x] += 1;
            self.left += 1;
        }
    }
}

/// Least new pairs per item for a block to be kept; the pair sweep achieves about this much.
const BLOCK_EFFICIENCY: f64 = 0.5;

/// A k-radius sequence for `K_{m,n}` built from greedily instantiated pattern
/// blocks followed by a sweep over the pairs left uncovered.
///
/// Within a block, 0-positions take distinct `x` vertices and 1-positions
/// distinct `y` vertices. Each position takes the vertex covering the most new
/// pairs with the previous `k` items; ties go to the vertex with more uncovered
/// pairs, then to a seed-dependent rotation of the class.
pub fn construct_bipartite(m: usize, n: usize, k: usize, epsilon: f64, seed: u64) -> Result<BipartiteConstruction> {
    if k == 0 {
        return Err(invalid_param("k must be positive"));
    }
    let a = debruijn::ak(k)?;
    let lower_bound = Rational::from_integer((m * n) as i64) / (Rational::from_integer(k as i64) - a);
    if m == 0 || n == 0 {
        let labels = (1..=m).map(|i| format!("x{i}")).chain((1..=n).map(|j| format!("y{j}")));
        return Ok(BipartiteConstruction {
            graph: Graph::with_vertices(labels)?,
            sequence: VertexSequence::new(Vec::new(), Mode::Linear),
            block: None,
            blocks_used: 0,
            sweep_len: 0,
            lower_bound,
            ratio: 0.0,
        });
    }
    let graph = graphs::complete_bipartite(m, n)?;
    let block = pattern_block(m, n, k, epsilon)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rot = [rng.random_range(0..m), rng.random_range(0..n)];
    let mut cov = Coverage {
        m,
        covered: vec![false; m * n],
        remaining: (0..m + n).map(|v| if v < m { n } else { m }).collect(),
        left: m * n,
    };
    let mut seq: Vec<usize> = Vec::new();
    let mut blocks_used = 0;
    let mut in_block = vec![false; m + n];
    while cov.left > 0 && !block.pattern.is_empty() {
        let mark = seq.len();
        let mut log = Vec::new();
        let mut fresh = 0;
        for &b in block.pattern.symbols() {
            let (base, size, r) = if b == 0 { (0, m, rot[0]) } else { (m, n, rot[1]) };
            let pick = (0..size)
                .map(|i| base + (i + r) % size)
                .filter(|&v| !in_block[v])
                .enumerate()
                .max_by_key(|&(order, v)| (cov.score(&seq, v, k), cov.remaining[v], std::cmp::Reverse(order)))
                .map(|(_, v)| v)
                .expect("block fits in the vertex classes");
            in_block[pick] = true;
            fresh += cov.push(&seq, pick, k, &mut log);
            seq.push(pick);
        }
        for &v in &seq[mark..] {
            in_block[v] = false;
        }
        if (fresh as f64) < BLOCK_EFFICIENCY * (seq.len() - mark) as f64 {
            cov.undo(&log);
            seq.truncate(mark);
            break;
        }
        blocks_used += 1;
    }
    let before_sweep = seq.len();
    let mut log = Vec::new();
    for x in 0..m {
        for y in m..m + n {
            let p = cov.pair(x, y).unwrap();
            if cov.covered[p] {
                continue;
            }
            if seq.last() != Some(&x) {
                cov.push(&seq, x, k, &mut log);
                seq.push(x);
            }
            if !cov.covered[p] {
                cov.push(&seq, y, k, &mut log);
                seq.push(y);
            }
        }
    }
    let sequence = VertexSequence::new(seq, Mode::Linear);
    let check = verify_radius(&graph, &sequence, k)?;
    if !check.valid {
        return Err(Error::Witness(format!(
            "bipartite construction left {} edges uncovered",
            check.uncovered.len()
        )));
    }
    let ratio = sequence.len() as f64 * (*lower_bound.denom() as f64) / (*lower_bound.numer() as f64);
    Ok(BipartiteConstruction {
        graph,
        sweep_len: sequence.len() - before_sweep,
        sequence,
        block: Some(block),
        blocks_used,
        lower_bound,
        ratio,
    })
}

/// Cover sequence for `K_{m,n}` that keeps `k` vertices of `X` resident while
/// cycling through `Y`, then swaps in the next `k` vertices of `X` one at a time.
///
/// The traversal of `Y` alternates direction so that each round starts with the
/// `y` the previous one ended on. The last round is padded with vertices kept
/// from the previous round; if `m < k` the resident set is padded with `Y`.
pub fn cover_strategy_bipartite(m: usize, n: usize, k: usize) -> Result<(Graph, CoverSequence)> {
    if k == 0 || m == 0 || n == 0 || m + n <= k + 1 {
        return Err(invalid_param("cover strategy needs k >= 1, m, n >= 1 and m + n > k + 1"));
    }
    let g = graphs::complete_bipartite(m, n)?;
    let xs: Vec<usize> = (0..m).collect();
    let ys: Vec<usize> = (m..m + n).collect();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let push = |sets: &mut Vec<Vec<usize>>, resident: &[usize], extra: usize| {
        let mut s = resident.to_vec();
        s.push(extra);
        sets.push(s);
    };
    if m <= k {
        let mut resident = xs.clone();
        resident.extend_from_slice(&ys[..k - m]);
        for &y in &ys[k - m..] {
            push(&mut sets, &resident, y);
        }
        return Ok((g, CoverSequence::new(k, sets)));
    }
    let mut resident: Vec<usize> = xs[..k].to_vec();
    let mut next_x = k;
    let mut order = ys.clone();
    loop {
        for (i, &y) in order.iter().enumerate() {
            // The first set of a later round is already the last set of the swap phase.
            if i == 0 && !sets.is_empty() {
                continue;
            }
            push(&mut sets, &resident, y);
        }
        if next_x == m {
            break;
        }
        let current = *order.last().unwrap();
        let incoming = (m - next_x).min(k);
        for slot in 0..incoming {
            resident[slot] = xs[next_x];
            next_x += 1;
            push(&mut sets, &resident, current);
        }
        order.reverse();
    }
    Ok((g, CoverSequence::new(k, sets)))
}

/// Maximum cut of the circulant `C_n^k` as `k n - w_k(n)`.
pub fn maxcut_circulant(n: usize, k: usize) -> Result<u64> {
    if k == 0 || n < 3 || 2 * k >= n {
        return Err(invalid_param(format!(
            "circulant max cut needs 1 <= k < n/2 (n={n}, k={k}); use the exact solver on K_{n}"
        )));
    }
    let w = binseq::wk_exact(k, n, 2, WkMethod::Auto)?;
    Ok((k * n) as u64 - w)
}
