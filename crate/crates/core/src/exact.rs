//! Exhaustive solvers for tiny instances, used as ground truth.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::time::{Duration, Instant};

use crate::binseq::Side;
use crate::error::{invalid_param, Error, Result};
use crate::graphs::Graph;
use crate::radius::{self, CoverSequence, VertexSequence};
use crate::Mode;

/// Limits for the exhaustive searches. Hitting any of them yields
/// [`Outcome::Unknown`] rather than a guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_length: usize,
    pub time_limit: Duration,
    pub node_limit: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_length: 64,
            time_limit: Duration::from_secs(60),
            node_limit: 200_000_000,
        }
    }
}

impl SearchBudget {
    fn check(&self) -> Result<()> {
        if self.max_length == 0 || self.node_limit == 0 || self.time_limit.is_zero() {
            return Err(invalid_param("search budget limits must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<W> {
    Solved { optimum: usize, witness: W },
    /// The optimum lies in `lower..=upper`; `witness` attains `upper` when present.
    Unknown { lower: usize, upper: Option<usize>, witness: Option<W>, reason: String },
}

impl<W> Outcome<W> {
    pub fn optimum(&self) -> Option<usize> {
        match self {
            Outcome::Solved { optimum, .. } => Some(*optimum),
            Outcome::Unknown { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Solved { witness, .. } => Some(witness),
            Outcome::Unknown { witness, .. } => witness.as_ref(),
        }
    }
}

/// Capacity of the transposition table before it is flushed.
const TABLE_CAP: usize = 1 << 21;

/// Automorphism orbits are computed when the graph has at most this many vertices.
const ORBIT_LIMIT: usize = 8;

enum Stop {
    Nodes,
    Time,
}

struct FkSearch {
    k: usize,
    cyclic: bool,
    /// `adj_bits[u][v]`: the bit of edge `uv`, zero for non-edges.
    adj_bits: Vec<Vec<u128>>,
    full: u128,
    len: usize,
    /// `cap[p]`: most pairs positions `p..len` can still cover.
    cap: Vec<u32>,
    seq: Vec<usize>,
    candidates: Vec<usize>,
    roots: Vec<usize>,
    table: HashSet<(u128, Vec<u16>)>,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
}

impl FkSearch {
    fn pair_bit(&self, u: usize, v: usize) -> u128 {
        self.adj_bits[u][v]
    }

    /// Edges covered by placing `v` at position `p`, given `seq[..p]`.
    fn gain(&self, p: usize, v: usize) -> u128 {
        let mut bits = 0u128;
        for d in 1..=self.k.min(p) {
            bits |= self.pair_bit(self.seq[p - d], v);
        }
        if self.cyclic && p + self.k >= self.len {
            // Wrap-around pairs (i, p) with p - i > k but len - (p - i) <= k.
            for i in 0..=(p + self.k - self.len) {
                if p - i > self.k {
                    bits |= self.pair_bit(self.seq[i], v);
                }
            }
        }
        bits
    }

    fn key(&self, p: usize, covered: u128) -> (u128, Vec<u16>) {
        let mut window: Vec<u16> = Vec::with_capacity(2 * self.k + 1);
        window.push(p as u16);
        window.extend(self.seq[p.saturating_sub(self.k)..p].iter().map(|&v| v as u16));
        if self.cyclic {
            window.extend(self.seq[..self.k.min(p)].iter().map(|&v| v as u16));
        }
        (covered, window)
    }

    fn dfs(&mut self, p: usize, covered: u128) -> std::result::Result<bool, Stop> {
        if covered == self.full {
            // Fill the rest with anything distinct from its neighbour; coverage is kept.
            while self.seq.len() < self.len {
                let last = *self.seq.last().unwrap();
                let filler = self.candidates.iter().copied().find(|&v| v != last).unwrap_or(last);
                self.seq.push(filler);
            }
            return Ok(true);
        }
        if p == self.len {
            return Ok(false);
        }
        let missing = (self.full & !covered).count_ones();
        if self.cap[p] < missing {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget.node_limit {
            return Err(Stop::Nodes);
        }
        if self.nodes % 4096 == 0 && self.started.elapsed() > self.budget.time_limit {
            return Err(Stop::Time);
        }
        let key = self.key(p, covered);
        if self.table.contains(&key) {
            return Ok(false);
        }
        let pool = if p == 0 { self.roots.clone() } else { self.candidates.clone() };
        let mut moves: Vec<(u32, usize, u128)> = pool
            .into_iter()
            .filter(|&v| p == 0 || self.seq[p - 1] != v)
            .filter(|&v| !(self.cyclic && p + 1 == self.len && self.seq[0] == v))
            .map(|v| {
                let bits = self.gain(p, v) & !covered;
                (bits.count_ones(), v, bits)
            })
            .collect();
        moves.sort_by_key(|&(gain, v, _)| (Reverse(gain), v));
        for (_, v, bits) in moves {
            self.seq.push(v);
            if self.dfs(p + 1, covered | bits)? {
                return Ok(true);
            }
            self.seq.pop();
        }
        if self.table.len() >= TABLE_CAP {
            self.table.clear();
        }
        self.table.insert(key);
        Ok(false)
    }
}

/// Representatives of the vertex orbits under graph automorphisms, or all
/// vertices when the graph is too large to enumerate them.
pub fn orbit_representatives(g: &Graph, vertices: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    if n > ORBIT_LIMIT {
        return vertices.to_vec();
    }
    let mut orbit: Vec<usize> = (0..n).collect();
    fn find(o: &mut [usize], x: usize) -> usize {
        if o[x] != x {
            let r = find(o, o[x]);
            o[x] = r;
        }
        o[x]
    }
    fn extend(g: &Graph, perm: &mut Vec<usize>, used: &mut [bool], orbit: &mut [usize]) {
        let n = g.vertex_count();
        let i = perm.len();
        if i == n {
            for (v, &w) in perm.iter().enumerate() {
                let (a, b) = (find(orbit, v), find(orbit, w));
                orbit[a.max(b)] = a.min(b);
            }
            return;
        }
        for w in 0..n {
            if used[w] || g.degree(w) != g.degree(i) {
                continue;
            }
            if (0..i).all(|j| g.has_edge(i, j) == g.has_edge(w, perm[j])) {
                used[w] = true;
                perm.push(w);
                extend(g, perm, used, orbit);
                perm.pop();
                used[w] = false;
            }
        }
    }
    extend(g, &mut Vec::new(), &mut vec![false; n], &mut orbit);
    let mut reps: Vec<usize> = vertices.iter().map(|&v| find(&mut orbit, v)).collect();
    reps.sort_unstable();
    reps.dedup();
    reps.retain(|v| vertices.contains(v));
    reps
}

/// Shortest k-radius sequence by iterative deepening from the best lower bound.
///
/// Prunes with the pair capacity of the remaining positions, never repeats a
/// vertex in consecutive positions (a shortest sequence has no such repeat),
/// starts only from automorphism-orbit representatives and remembers failed
/// states keyed by the covered set and the items that still matter.
pub fn exact_fk(g: &Graph, k: usize, mode: Mode, budget: &SearchBudget) -> Result<Outcome<VertexSequence>> {
    budget.check()?;
    if k == 0 {
        return Err(invalid_param("k must be positive"));
    }
    let e = g.edge_count();
    if e == 0 {
        return Err(Error::InvalidInput("graph has no edges".into()));
    }
    if e > 128 {
        return Err(Error::Budget(format!("exact search supports at most 128 edges, graph has {e}")));
    }
    let b = radius::bounds(g, k, None)?;
    let lower = match mode {
        Mode::Linear => b.fk_lower,
        Mode::Cyclic => b.fk_cyc_lower,
    } as usize;
    let upper_seq = upper_sequence(g, mode);
    let upper = upper_seq.len();
    let n = g.vertex_count();
    let mut adj_bits = vec![vec![0u128; n]; n];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        adj_bits[u][v] = 1 << id;
        adj_bits[v][u] = 1 << id;
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 0).collect();
    let roots = orbit_representatives(g, &candidates);
    let full = if e == 128 { u128::MAX } else { (1u128 << e) - 1 };
    let started = Instant::now();
    let mut nodes = 0;
    for len in lower.max(2)..upper {
        if len > budget.max_length {
            return Ok(Outcome::Unknown {
                lower: len,
                upper: Some(upper),
                witness: Some(upper_seq),
                reason: format!("length {len} exceeds the budget of {}", budget.max_length),
            });
        }
        let cap = capacity(len, k, mode == Mode::Cyclic);
        let mut search = FkSearch {
            k,
            cyclic: mode == Mode::Cyclic,
            adj_bits: adj_bits.clone(),
            full,
            len,
            cap,
            seq: Vec::with_capacity(len),
            candidates: candidates.clone(),
            roots: roots.clone(),
            table: HashSet::new(),
            nodes,
            budget: *budget,
            started,
        };
        match search.dfs(0, 0) {
            Ok(true) => {
                let witness = VertexSequence::new(search.seq, mode);
                return finish_fk(g, k, len, witness);
            }
            Ok(false) => nodes = search.nodes,
            Err(stop) => {
                let reason = match stop {
                    Stop::Nodes => format!("node limit {} reached", budget.node_limit),
                    Stop::Time => format!("time limit {:?} reached", budget.time_limit),
                };
                return Ok(Outcome::Unknown { lower: len, upper: Some(upper), witness: Some(upper_seq), reason });
            }
        }
    }
    finish_fk(g, k, upper, upper_seq)
}

fn finish_fk(g: &Graph, k: usize, len: usize, witness: VertexSequence) -> Result<Outcome<VertexSequence>> {
    if !radius::verify_radius(g, &witness, k)?.valid {
        return Err(Error::Witness("exact search produced an invalid sequence".into()));
    }
    Ok(Outcome::Solved { optimum: len, witness })
}

/// Most pairs positions `p..len` can cover, counting each cyclic pair once at its later position.
fn capacity(len: usize, k: usize, cyclic: bool) -> Vec<u32> {
    let per: Vec<u32> = (0..len)
        .map(|j| {
            let near = j.min(k);
            let wrap = if cyclic {
                (0..j).filter(|&i| j - i > k && len - (j - i) <= k).count()
            } else {
                0
            };
            (near + wrap) as u32
        })
        .collect();
    let mut cap = vec![0u32; len + 1];
    for p in (0..len).rev() {
        cap[p] = cap[p + 1] + per[p];
    }
    cap
}

/// A valid sequence to start from: the Euler construction when the edges are
/// connected, otherwise every edge listed as a consecutive pair.
fn upper_sequence(g: &Graph, mode: Mode) -> VertexSequence {
    let items = match radius::euler_radius1(g) {
        Ok(s) => s.items,
        Err(_) => g.edges().iter().flat_map(|&(u, v)| [u, v]).collect(),
    };
    VertexSequence::new(items, mode)
}

type CoverState = (u64, u128);

/// Fewest reads of a k-cover sequence by best-first search over
/// `(current set, covered edges)` with heuristic `ceil(uncovered / k)`.
///
/// Graphs with at most `k + 1` vertices are rejected as trivial.
pub fn exact_ck(g: &Graph, k: usize, budget: &SearchBudget) -> Result<Outcome<CoverSequence>> {
    budget.check()?;
    let n = g.vertex_count();
    if k == 0 {
        return Err(invalid_param("k must be positive"));
    }
    if n <= k + 1 {
        return Err(Error::Precondition(format!(
            "graph has {n} vertices; exact c_k needs more than k + 1 = {}",
            k + 1
        )));
    }
    let e = g.edge_count();
    if e == 0 {
        return Err(Error::InvalidInput("graph has no edges".into()));
    }
    if e > 128 || n > 64 {
        return Err(Error::Budget(format!("exact c_k supports 64 vertices and 128 edges (got {n}, {e})")));
    }
    let mut inc = vec![vec![0u128; n]; n];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        inc[u][v] = 1 << id;
        inc[v][u] = 1 << id;
    }
    let full = if e == 128 { u128::MAX } else { (1u128 << e) - 1 };
    let edges_to = |v: usize, set: u64| -> u128 {
        let mut bits = 0;
        let mut s = set;
        while s != 0 {
            let u = s.trailing_zeros() as usize;
            s &= s - 1;
            bits |= inc[v][u];
        }
        bits
    };
    let h = |covered: u128| (full & !covered).count_ones().div_ceil(k as u32) as usize;
    let mut best: HashMap<CoverState, (usize, Option<CoverState>)> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(usize, usize, u64, u128)>> = BinaryHeap::new();
    for set in subsets(n, k + 1) {
        let mut covered = 0u128;
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            covered |= edges_to(v, s);
        }
        best.insert((set, covered), (1, None));
        heap.push(Reverse((1 + h(covered), 1, set, covered)));
    }
    let started = Instant::now();
    let mut nodes = 0u64;
    let mut frontier_lower = 0;
    while let Some(Reverse((f, len, set, covered))) = heap.pop() {
        if best.get(&(set, covered)).is_some_and(|&(l, _)| l < len) {
            continue;
        }
        frontier_lower = frontier_lower.max(f);
        if covered == full {
            let mut sets = Vec::new();
            let mut cur = Some((set, covered));
            while let Some(state) = cur {
                sets.push((0..n).filter(|&v| state.0 >> v & 1 == 1).collect::<Vec<_>>());
                cur = best[&state].1;
            }
            sets.reverse();
            let witness = CoverSequence::new(k, sets);
            if !radius::verify_cover(g, &witness)?.valid {
                return Err(Error::Witness("exact search produced an invalid cover sequence".into()));
            }
            return Ok(Outcome::Solved { optimum: witness.reads(), witness });
        }
        nodes += 1;
        if nodes > budget.node_limit || len > budget.max_length || (nodes % 4096 == 0 && started.elapsed() > budget.time_limit) {
            return Ok(Outcome::Unknown {
                lower: frontier_lower + k,
                upper: None,
                witness: None,
                reason: "search budget exhausted".into(),
            });
        }
        for out in 0..n {
            if set >> out & 1 == 0 {
                continue;
            }
            let kept = set & !(1 << out);
            for inn in 0..n {
                if set >> inn & 1 == 1 {
                    continue;
                }
                let next = (kept | 1 << inn, covered | edges_to(inn, kept));
                let nl = len + 1;
                if best.get(&next).is_none_or(|&(l, _)| nl < l) {
                    best.insert(next, (nl, Some((set, covered))));
                    heap.push(Reverse((nl + h(next.1), nl, next.0, next.1)));
                }
            }
        }
    }
    Err(Error::Witness("search space exhausted without a cover".into()))
}

/// All `r`-subsets of `0..n` as bitmasks, in increasing order.
fn subsets(n: usize, r: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut s: u64 = (1u64 << r) - 1;
    let limit = 1u64 << n;
    while s < limit {
        out.push(s);
        // Gosper's hack.
        let c = s & s.wrapping_neg();
        let rr = s + c;
        s = (((rr ^ s) >> 2) / c) | rr;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCut {
    pub value: u64,
    pub sides: Vec<Side>,
}

/// Largest number of vertices `exact_maxcut` enumerates.
pub const MAXCUT_LIMIT: usize = 24;

/// Maximum cut by Gray-code enumeration of bipartitions (last vertex fixed to `X`).
pub fn exact_maxcut(g: &Graph) -> Result<MaxCut> {
    let n = g.vertex_count();
    if n > MAXCUT_LIMIT {
        return Err(Error::Budget(format!("max cut enumeration supports {MAXCUT_LIMIT} vertices, graph has {n}")));
    }
    if n <= 1 {
        return Ok(MaxCut { value: 0, sides: vec![Side::X; n] });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let (mut side, mut cut) = (0u32, 0i64);
    let (mut best, mut best_side) = (0i64, 0u32);
    for i in 1u64..(1u64 << (n - 1)) {
        let v = i.trailing_zeros() as usize;
        let inside = (adj[v] & side).count_ones() as i64;
        let outside = (adj[v] & !side).count_ones() as i64;
        if side >> v & 1 == 1 {
            cut += inside - outside;
        } else {
            cut += outside - inside;
        }
        side ^= 1 << v;
        if cut > best {
            best = cut;
            best_side = side;
        }
    }
    let sides = (0..n).map(|v| if best_side >> v & 1 == 1 { Side::Y } else { Side::X }).collect();
    Ok(MaxCut { value: best as u64, sides })
}
