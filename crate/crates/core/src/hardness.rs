//! Reduction instances from Hamiltonian path and from 1-cover, their
//! yes-witness transformers, and loss accounting for cover sequences.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::binom2;
use crate::error::{invalid_param, Error, Result};
use crate::graphs::{self, Graph};
use crate::radius::{self, CoverSequence, VertexSequence};
use crate::Mode;

/// Hamiltonian path in a cubic triangle-free `F` to a k-radius instance on
/// the line graph of `F` with `k - 2` pendant edges per vertex.
#[derive(Debug, Clone)]
pub struct RadiusReductionInstance {
    pub source: Graph,
    pub k: usize,
    /// `F'`; the first `e(F)` edges are those of `F`, in the same order.
    pub augmented: Graph,
    /// Line graph of `augmented`; vertex `i` is edge `i` of `augmented`.
    pub target: Graph,
    /// `k n + 1`.
    pub threshold: usize,
}

pub fn reduce_hampath_to_radius(f: &Graph, k: usize) -> Result<RadiusReductionInstance> {
    if k < 2 {
        return Err(invalid_param("the Hamiltonian path reduction needs k >= 2"));
    }
    if f.vertex_count() == 0 {
        return Err(Error::Precondition("graph is empty".into()));
    }
    if let Some(v) = (0..f.vertex_count()).find(|&v| f.degree(v) != 3) {
        return Err(Error::Precondition(format!(
            "graph is not cubic: vertex {} has degree {}",
            f.label(v),
            f.degree(v)
        )));
    }
    if let Some([a, b, c]) = f.find_triangle() {
        return Err(Error::Precondition(format!(
            "graph has a triangle {} {} {}",
            f.label(a),
            f.label(b),
            f.label(c)
        )));
    }
    let augmented = graphs::attach_pendants(f, k - 2)?;
    let target = graphs::line_graph(&augmented);
    let n = f.vertex_count();
    let threshold = k * n + 1;
    debug_assert_eq!(2 * target.edge_count() / (k + 1) + 1, threshold);
    Ok(RadiusReductionInstance { source: f.clone(), k, augmented, target, threshold })
}

/// The k-radius sequence of length `k n + 1` built from a Hamiltonian path
/// `v_1..v_n` of the source graph.
///
/// Reads `e_0, f_1, pendants(v_1), e_1, f_2, pendants(v_2), e_2, ..., f_n,
/// pendants(v_n), e_n` where `e_i = v_i v_{i+1}` and `f_i` is the non-path edge
/// at `v_i`. At the two ends the two non-path edges are split in label order:
/// `e_0 < f_1` and `f_n < e_n`.
pub fn hampath_witness_to_sequence(inst: &RadiusReductionInstance, path: &[usize]) -> Result<VertexSequence> {
    let f = &inst.source;
    let n = f.vertex_count();
    if path.len() != n {
        return Err(Error::Witness(format!("path has {} vertices, graph has {n}", path.len())));
    }
    let mut seen = vec![false; n];
    for (i, &v) in path.iter().enumerate() {
        if v >= n {
            return Err(Error::Witness(format!("step {}: vertex {v} is not in the graph", i + 1)));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::Witness(format!("step {}: vertex {} repeats", i + 1, f.label(v))));
        }
        if i > 0 && !f.has_edge(path[i - 1], v) {
            return Err(Error::Witness(format!(
                "step {}: {} {} is not an edge",
                i + 1,
                f.label(path[i - 1]),
                f.label(v)
            )));
        }
    }
    let path_edge = |i: usize| f.edge_index(path[i], path[i + 1]).unwrap();
    let on_path: HashSet<usize> = (0..n - 1).map(path_edge).collect();
    let off_path = |v: usize| -> Vec<usize> {
        let mut es: Vec<usize> = f
            .neighbors(v)
            .iter()
            .map(|&w| f.edge_index(v, w).unwrap())
            .filter(|e| !on_path.contains(e))
            .collect();
        es.sort_by_key(|&e| inst.target.label(e).to_string());
        es
    };
    let pendants = |v: usize| -> Vec<usize> {
        (1..=inst.k - 2)
            .map(|j| {
                let p = inst.augmented.require_vertex(&format!("e_{}^{}", f.label(v), j)).unwrap();
                inst.augmented.edge_index(v, p).unwrap()
            })
            .collect()
    };
    let first = off_path(path[0]);
    let last = off_path(path[n - 1]);
    let mut items = vec![first[0]];
    for i in 0..n {
        let v = path[i];
        let fi = match i {
            0 => first[1],
            _ if i == n - 1 => last[0],
            _ => off_path(v)[0],
        };
        items.push(fi);
        items.extend(pendants(v));
        items.push(if i == n - 1 { last[1] } else { path_edge(i) });
    }
    let seq = VertexSequence::new(items, Mode::Linear);
    let check = radius::verify_radius(&inst.target, &seq, inst.k)?;
    if !check.valid || seq.len() != inst.threshold {
        return Err(Error::Witness(format!(
            "transformed sequence has length {} and {} uncovered edges",
            seq.len(),
            check.uncovered.len()
        )));
    }
    Ok(seq)
}

/// Vertices of one edge gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGadget {
    /// Edge index in the source graph.
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    /// The clique `x^1..x^k`.
    pub clique: Vec<usize>,
    /// `y^1..y^{N-2}`.
    pub ys: Vec<usize>,
}

/// 1-cover of `H` to a k-cover instance where each edge becomes a gadget.
#[derive(Debug, Clone)]
pub struct CoverReductionInstance {
    pub source: Graph,
    pub k: usize,
    /// `N = C(k,2)(m-1) + C(k+1,2) + 3`.
    pub n_param: usize,
    pub target: Graph,
    pub gadgets: Vec<EdgeGadget>,
    /// `m N + (m-1)(k-1)`.
    pub target_length: usize,
}

pub fn gadget_parameter(m: usize, k: usize) -> usize {
    (binom2(k as u64) as usize) * (m - 1) + binom2(k as u64 + 1) as usize + 3
}

pub fn reduce_cover1_to_coverk(h: &Graph, k: usize) -> Result<CoverReductionInstance> {
    if k < 2 {
        return Err(invalid_param("the cover reduction needs k >= 2"));
    }
    let m = h.edge_count();
    if m == 0 {
        return Err(Error::InvalidInput("graph has no edges".into()));
    }
    if !h.is_connected() {
        return Err(Error::InvalidInput("graph is not connected".into()));
    }
    let n_param = gadget_parameter(m, k);
    let mut g = Graph::with_vertices(h.labels().iter().cloned())?;
    let mut gadgets = Vec::with_capacity(m);
    for (edge, &(u, v)) in h.edges().iter().enumerate() {
        let name = h.edge_label(edge);
        let clique = (1..=k)
            .map(|i| g.add_vertex(format!("x_{name}^{i}")))
            .collect::<Result<Vec<_>>>()?;
        let ys = (1..=n_param - 2)
            .map(|i| g.add_vertex(format!("y_{name}^{i}")))
            .collect::<Result<Vec<_>>>()?;
        for (a, &x) in clique.iter().enumerate() {
            for &x2 in &clique[a + 1..] {
                g.add_edge(x, x2)?;
            }
        }
        for &x in &clique {
            for &w in [u, v].iter().chain(&ys) {
                g.add_edge(x, w)?;
            }
        }
        gadgets.push(EdgeGadget { edge, u, v, clique, ys });
    }
    let target_length = m * n_param + (m - 1) * (k - 1);
    Ok(CoverReductionInstance { source: h.clone(), k, n_param, target: g, gadgets, target_length })
}

/// Checks that `order` lists every edge once with consecutive edges adjacent,
/// and returns for each edge the endpoint it is entered from and left by.
fn orient_one_cover(h: &Graph, order: &[usize]) -> Result<Vec<(usize, usize)>> {
    let m = h.edge_count();
    if order.len() != m {
        return Err(Error::Witness(format!("1-cover lists {} edges, graph has {m}", order.len())));
    }
    let mut seen = vec![false; m];
    for (i, &e) in order.iter().enumerate() {
        if e >= m {
            return Err(Error::Witness(format!("step {}: edge {e} is not in the graph", i + 1)));
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::Witness(format!("step {}: edge {} repeats", i + 1, h.edge_label(e))));
        }
    }
    let shared = |a: usize, b: usize| -> Option<usize> {
        let (p, q) = h.edge(a);
        let (r, s) = h.edge(b);
        [p, q].into_iter().find(|&x| x == r || x == s)
    };
    let mut joints = Vec::with_capacity(m.saturating_sub(1));
    for i in 1..m {
        let v = shared(order[i - 1], order[i]).ok_or_else(|| {
            Error::Witness(format!(
                "step {}: edges {} and {} are not adjacent",
                i + 1,
                h.edge_label(order[i - 1]),
                h.edge_label(order[i])
            ))
        })?;
        joints.push(v);
    }
    let other = |e: usize, x: usize| {
        let (p, q) = h.edge(e);
        if p == x { q } else { p }
    };
    let mut oriented = Vec::with_capacity(m);
    for (i, &e) in order.iter().enumerate() {
        let (start, end) = match (i.checked_sub(1).map(|j| joints[j]), joints.get(i).copied()) {
            (None, None) => h.edge(e),
            (None, Some(out)) => (other(e, out), out),
            (Some(inn), None) => (inn, other(e, inn)),
            (Some(inn), Some(out)) => {
                if inn == out {
                    return Err(Error::Witness(format!(
                        "step {}: edge {} meets both neighbours at {}; the block and connector templates need distinct junctions",
                        i + 1,
                        h.edge_label(e),
                        h.label(inn)
                    )));
                }
                (inn, out)
            }
        };
        oriented.push((start, end));
    }
    Ok(oriented)
}

/// The k-cover sequence of length `m N + (m-1)(k-1)` built from a shortest
/// 1-cover of the source graph: gadget blocks joined by connectors that keep the
/// shared vertex resident while the cliques are exchanged one vertex at a time.
pub fn cover1_witness_to_coverk(inst: &CoverReductionInstance, order: &[usize]) -> Result<CoverSequence> {
    let oriented = orient_one_cover(&inst.source, order)?;
    let k = inst.k;
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(inst.target_length);
    let with = |base: &[usize], extra: &[usize]| -> Vec<usize> { base.iter().chain(extra).copied().collect() };
    for (i, (&e, &(start, end))) in order.iter().zip(&oriented).enumerate() {
        let gad = &inst.gadgets[e];
        sets.push(with(&gad.clique, &[start]));
        for &y in &gad.ys {
            sets.push(with(&gad.clique, &[y]));
        }
        sets.push(with(&gad.clique, &[end]));
        if let Some(&next) = order.get(i + 1) {
            let nxt = &inst.gadgets[next];
            for step in 1..k {
                let mut s = gad.clique[step..].to_vec();
                s.push(end);
                s.extend_from_slice(&nxt.clique[..step]);
                sets.push(s);
            }
        }
    }
    let cov = CoverSequence::new(k, sets);
    let check = radius::verify_cover(&inst.target, &cov)?;
    if !check.valid || cov.len() != inst.target_length {
        return Err(Error::Witness(format!(
            "transformed cover has length {} and {} uncovered edges",
            cov.len(),
            check.uncovered.len()
        )));
    }
    Ok(cov)
}

/// Losses of a cover sequence: non-edges among the first set, then at each
/// later step every pair with the loaded vertex that is a non-edge or was
/// already co-resident earlier.
pub fn loss_count(g: &Graph, cov: &CoverSequence) -> Result<u64> {
    cov.check_structure(g)?;
    let Some(first) = cov.sets.first() else {
        return Ok(0);
    };
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut losses = 0u64;
    for (a, &u) in first.iter().enumerate() {
        for &v in &first[a + 1..] {
            losses += u64::from(!g.has_edge(u, v));
            seen.insert(key(u, v));
        }
    }
    for w in cov.sets.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        let loaded = *cur.iter().find(|v| prev.binary_search(v).is_err()).unwrap();
        for &u in cur.iter().filter(|&&u| u != loaded) {
            let fresh = seen.insert(key(u, loaded));
            losses += u64::from(!g.has_edge(u, loaded) || !fresh);
        }
    }
    Ok(losses)
}

/// A shortest 1-cover of `h` (an edge order with consecutive edges adjacent),
/// found as a Hamiltonian path of the line graph. Orders in which no three
/// consecutive edges share a vertex are preferred, since only those can be fed
/// to [`cover1_witness_to_coverk`].
pub fn find_one_cover(h: &Graph) -> Option<Vec<usize>> {
    let lg = graphs::line_graph(h);
    let m = lg.vertex_count();
    let star = |a: usize, b: usize, c: usize| {
        let (p, q) = h.edge(a);
        [p, q].into_iter().any(|x| {
            let touches = |e: usize| h.edge(e).0 == x || h.edge(e).1 == x;
            touches(b) && touches(c)
        })
    };
    let extend = |strict: bool| {
        let mut found = None;
        for start in 0..m {
            let mut path = vec![start];
            let mut used = vec![false; m];
            used[start] = true;
            if search(&lg, &mut path, &mut used, &|p: &[usize], w| {
                !strict || p.len() < 2 || !star(p[p.len() - 2], p[p.len() - 1], w)
            }) {
                found = Some(path);
                break;
            }
        }
        found
    };
    extend(true).or_else(|| extend(false))
}

fn search(lg: &Graph, path: &mut Vec<usize>, used: &mut [bool], allow: &dyn Fn(&[usize], usize) -> bool) -> bool {
    if path.len() == lg.vertex_count() {
        return true;
    }
    let last = *path.last().unwrap();
    let mut next: Vec<usize> = lg.neighbors(last).iter().copied().filter(|&w| !used[w]).collect();
    next.sort_unstable();
    for w in next {
        if !allow(path, w) {
            continue;
        }
        used[w] = true;
        path.push(w);
        if search(lg, path, used, allow) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

/// Sidecar metadata for a serialized Hamiltonian path instance.
pub fn radius_instance_metadata(inst: &RadiusReductionInstance) -> Value {
    json!({
        "reduction": "ham-radius",
        "k": inst.k,
        "threshold": inst.threshold,
        "source_vertices": inst.source.vertex_count(),
        "source_edges": inst.source.edge_count(),
        "target_vertices": inst.target.vertex_count(),
        "target_edges": inst.target.edge_count(),
        "pendant_vertices": inst.augmented.labels()[inst.source.vertex_count()..],
    })
}

/// Sidecar metadata for a serialized cover instance.
pub fn cover_instance_metadata(inst: &CoverReductionInstance) -> Value {
    let g = &inst.target;
    let gadgets: Vec<Value> = inst
        .gadgets
        .iter()
        .map(|gad| {
            json!({
                "edge": inst.source.edge_label(gad.edge),
                "clique": gad.clique.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
                "ys": gad.ys.len(),
            })
        })
        .collect();
    json!({
        "reduction": "cover1-coverk",
        "k": inst.k,
        "N": inst.n_param,
        "target_length": inst.target_length,
        "source_edges": inst.source.edge_count(),
        "target_vertices": g.vertex_count(),
        "target_edges": g.edge_count(),
        "gadgets": gadgets,
    })
}
