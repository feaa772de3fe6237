use std::fs;
use std::time::Duration;

use serde_json::{json, Value};

use radiuskit::binseq::{self, Side, WkMethod};
use radiuskit::debruijn::{self, CycleBudget, DeBruijnGraph};
use radiuskit::exact::{self, Outcome, SearchBudget};
use radiuskit::graphs::{self, Graph};
use radiuskit::hardness;
use radiuskit::radius::{self, CoverSequence, VertexSequence};
use radiuskit::Mode;

use crate::output::{ctx, rat, sig12, CliError, Report, EXIT_BUDGET, EXIT_DOMAIN};

type CmdResult = Result<Report, CliError>;

fn read_file(flag: &str, path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{flag} {path}: {e}")))
}

fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::usage(format!("--out {path}: {e}")))
}

fn load_graph(path: &str) -> Result<Graph, CliError> {
    let text = read_file("--graph", path)?;
    graphs::parse_graph(&text).map_err(ctx(&format!("--graph {path}")))
}

fn labels(g: &Graph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

fn edge_labels(g: &Graph, es: &[usize]) -> Vec<String> {
    es.iter().map(|&e| g.edge_label(e)).collect()
}

fn cover_sets(g: &Graph, cov: &CoverSequence) -> Vec<Vec<String>> {
    cov.sets.iter().map(|s| labels(g, s)).collect()
}

pub fn ak(k: usize, alphabet: usize, show_edges: bool) -> CmdResult {
    let c = debruijn::optimal_cycle(k, alphabet).map_err(ctx("--k"))?;
    let mut r = Report::default();
    let word = c.word_string();
    r.line(format!("a_{k} = {}", rat(c.normalized)));
    r.line(format!("cycle {word} (length {}, weight {})", c.len(), c.total_weight));
    let mut edges = Vec::new();
    if show_edges {
        let l = c.len();
        for i in 0..l {
            let e: Vec<u8> = (0..=k).map(|j| c.word[(i + j) % l]).collect();
            let w = debruijn::edge_weight(&e).map_err(ctx("--cycle"))?;
            let s = debruijn::symbols_to_string(&e);
            r.line(format!("  edge {s} weight {w}"));
            edges.push(json!({ "edge": s, "weight": w }));
        }
    }
    let mut rec = json!({
        "k": k,
        "alphabet": alphabet,
        "a_k": rat(c.normalized),
        "cycle": word,
        "length": c.len(),
        "weight": c.total_weight,
    });
    if alphabet == 2 {
        let d = debruijn::dk(k).map_err(ctx("--k"))?;
        r.line(format!("d_{k} = {}", rat(d)));
        rec["d_k"] = json!(rat(d));
    }
    if show_edges {
        rec["edges"] = Value::Array(edges);
    }
    r.record(rec);
    Ok(r)
}

pub fn zk(k: usize) -> CmdResult {
    let b = debruijn::ak_bounds(k).map_err(ctx("--k"))?;
    let mut r = Report::default();
    r.line(format!("z_{k} = {} (t = {})", rat(b.upper), b.upper_t));
    r.line(format!("lower bound = {}", sig12(b.lower)));
    r.record(json!({ "k": k, "z_k": rat(b.upper), "t": b.upper_t, "lower": b.lower }));
    Ok(r)
}

pub fn wk(k: usize, s: usize, method: &str, alphabet: usize) -> CmdResult {
    let m: WkMethod = method.parse().map_err(ctx("--method"))?;
    let w = binseq::wk_exact(k, s, alphabet, m).map_err(ctx("wk"))?;
    let mut r = Report::default();
    r.line(format!("w_{k}({s}) = {w}"));
    r.record(json!({ "k": k, "s": s, "alphabet": alphabet, "method": method, "w_k": w }));
    Ok(r)
}

pub fn lowbad(k: usize, s: usize) -> CmdResult {
    let c = binseq::construct_low_bad(k, s).map_err(ctx("lowbad"))?;
    let mut r = Report::default();
    r.line(format!("# k={k} s={s} bad={}", c.bad));
    r.line(c.string.to_string());
    r.record(json!({ "k": k, "s": s, "bad": c.bad, "string": c.string.to_string() }));
    Ok(r)
}

pub fn bounds(k: usize, path: &str, bipartite: bool) -> CmdResult {
    let g = load_graph(path)?;
    let coloring = if bipartite {
        Some(g.two_coloring().ok_or_else(|| CliError {
            code: EXIT_DOMAIN,
            message: format!("--bipartite: graph {path} is not bipartite"),
        })?)
    } else {
        None
    };
    let b = radius::bounds(&g, k, coloring.as_deref()).map_err(ctx("--k"))?;
    let show = |x: Option<radiuskit::Rational>| x.map(rat).unwrap_or_else(|| "n/a".into());
    let mut r = Report::default();
    r.line(format!("eq1 = {}", show(b.eq1)));
    r.line(format!("cor1 = {}", show(b.cor1)));
    r.line(format!("prop8 = {}", b.prop8));
    r.line(format!("f_k >= {}", b.fk_lower));
    r.line(format!("f_k^cyc >= {}", b.fk_cyc_lower));
    r.record(json!({
        "k": k,
        "eq1": b.eq1.map(rat),
        "cor1": b.cor1.map(rat),
        "prop8": b.prop8,
        "fk_lower": b.fk_lower,
        "fk_cyc_lower": b.fk_cyc_lower,
    }));
    Ok(r)
}

pub fn verify_radius(k: usize, graph: &str, seq: &str, cyclic: bool) -> CmdResult {
    let g = load_graph(graph)?;
    let mode = if cyclic { Mode::Cyclic } else { Mode::Linear };
    let text = read_file("--seq", seq)?;
    let s = radius::parse_vertex_sequence(&g, &text, mode).map_err(ctx(&format!("--seq {seq}")))?;
    let check = radius::verify_radius(&g, &s, k).map_err(ctx(&format!("--seq {seq}")))?;
    let uncovered = edge_labels(&g, &check.uncovered);
    let mut r = Report::default();
    if check.valid {
        r.line(format!("valid {k}-radius sequence of length {}", s.len()));
    } else {
        r.line(format!("invalid: {} uncovered edges: {}", uncovered.len(), uncovered.join(", ")));
        r.code = EXIT_DOMAIN;
    }
    r.record(json!({ "valid": check.valid, "k": k, "mode": mode, "length": s.len(), "uncovered": uncovered }));
    Ok(r)
}

pub fn verify_cover(k: usize, graph: &str, seq: &str) -> CmdResult {
    let g = load_graph(graph)?;
    let text = read_file("--seq", seq)?;
    let cov = radius::parse_cover_sequence(&g, &text, k).map_err(ctx(&format!("--seq {seq}")))?;
    let check = radius::verify_cover(&g, &cov).map_err(ctx(&format!("--seq {seq}")))?;
    let uncovered = edge_labels(&g, &check.uncovered);
    let mut r = Report::default();
    if check.valid {
        r.line(format!("valid {k}-cover sequence: {} sets, {} reads", cov.len(), check.reads));
    } else {
        r.line(format!("invalid: {} uncovered edges: {}", uncovered.len(), uncovered.join(", ")));
        r.code = EXIT_DOMAIN;
    }
    r.record(json!({ "valid": check.valid, "k": k, "length": cov.len(), "reads": check.reads, "uncovered": uncovered }));
    Ok(r)
}

pub fn construct_bipartite(m: usize, n: usize, k: usize, epsilon: f64, seed: u64) -> CmdResult {
    let c = radius::construct_bipartite(m, n, k, epsilon, seed).map_err(ctx("construct bipartite"))?;
    let seq = c.sequence.format(&c.graph);
    let mut r = Report::default();
    r.line(format!(
        "# K_{m},{n} k={k}: length {}, lower bound {}, ratio {}",
        c.sequence.len(),
        rat(c.lower_bound),
        sig12(c.ratio)
    ));
    r.line(format!("# {} pattern blocks, final sweep {}", c.blocks_used, c.sweep_len));
    r.line(seq.clone());
    r.record(json!({
        "m": m,
        "n": n,
        "k": k,
        "length": c.sequence.len(),
        "lower_bound": rat(c.lower_bound),
        "ratio": c.ratio,
        "blocks_used": c.blocks_used,
        "sweep_len": c.sweep_len,
        "pattern": c.block.as_ref().map(|b| b.pattern.to_string()),
        "sequence": seq,
    }));
    Ok(r)
}

pub fn construct_cover_bipartite(m: usize, n: usize, k: usize) -> CmdResult {
    let (g, cov) = radius::cover_strategy_bipartite(m, n, k).map_err(ctx("construct cover-bipartite"))?;
    let mut r = Report::default();
    r.line(format!("# K_{m},{n} k={k}: {} sets, {} reads", cov.len(), cov.reads()));
    r.human.extend(cov.format(&g).lines().map(str::to_string));
    r.record(json!({ "m": m, "n": n, "k": k, "length": cov.len(), "reads": cov.reads(), "sets": cover_sets(&g, &cov) }));
    Ok(r)
}

pub fn construct_euler1(path: &str) -> CmdResult {
    let g = load_graph(path)?;
    let s = radius::euler_radius1(&g).map_err(ctx(&format!("--graph {path}")))?;
    let mut r = Report::default();
    r.line(format!("# length {}", s.len()));
    r.line(s.format(&g));
    r.record(json!({ "k": 1, "length": s.len(), "sequence": s.format(&g) }));
    Ok(r)
}

fn budget(time_limit: f64) -> Result<SearchBudget, CliError> {
    if !time_limit.is_finite() || time_limit <= 0.0 {
        return Err(CliError::usage("--time-limit must be a positive number of seconds"));
    }
    Ok(SearchBudget { time_limit: Duration::from_secs_f64(time_limit), ..SearchBudget::default() })
}

/// Shared reporting for the two sequence solvers.
fn report_outcome<W>(name: &str, outcome: &Outcome<W>, render: impl Fn(&W) -> Vec<String>) -> Report {
    let mut r = Report::default();
    match outcome {
        Outcome::Solved { optimum, witness } => {
            r.line(format!("{name} = {optimum}"));
            let body = render(witness);
            r.human.extend(body.iter().cloned());
            r.record(json!({ "solved": true, "quantity": name, "optimum": optimum, "witness": body }));
        }
        Outcome::Unknown { lower, upper, witness, reason } => {
            let up = upper.map(|u| u.to_string()).unwrap_or_else(|| "?".into());
            r.line(format!("{name} in [{lower}, {up}] (search stopped: {reason})"));
            let body = witness.as_ref().map(&render);
            if let Some(b) = &body {
                r.human.extend(b.iter().cloned());
            }
            r.record(json!({
                "solved": false,
                "quantity": name,
                "lower": lower,
                "upper": upper,
                "reason": reason,
                "witness": body,
            }));
            r.code = EXIT_BUDGET;
        }
    }
    r
}

pub fn exact_fk(k: usize, path: &str, cyclic: bool, time_limit: f64) -> CmdResult {
    let g = load_graph(path)?;
    let mode = if cyclic { Mode::Cyclic } else { Mode::Linear };
    let out = exact::exact_fk(&g, k, mode, &budget(time_limit)?).map_err(ctx("exact fk"))?;
    let name = if cyclic { format!("f_{k}^cyc") } else { format!("f_{k}") };
    Ok(report_outcome(&name, &out, |s: &VertexSequence| vec![s.format(&g)]))
}

pub fn exact_ck(k: usize, path: &str, time_limit: f64) -> CmdResult {
    let g = load_graph(path)?;
    let out = exact::exact_ck(&g, k, &budget(time_limit)?).map_err(ctx("exact ck"))?;
    Ok(report_outcome(&format!("c_{k}"), &out, |c: &CoverSequence| {
        c.format(&g).lines().map(str::to_string).collect()
    }))
}

fn cut_sides(g: &Graph, sides: &[Side]) -> (Vec<String>, Vec<String>) {
    let pick = |want: Side| {
        (0..g.vertex_count()).filter(|&v| sides[v] == want).map(|v| g.label(v).to_string()).collect::<Vec<_>>()
    };
    (pick(Side::X), pick(Side::Y))
}

pub fn exact_maxcut(path: &str) -> CmdResult {
    let g = load_graph(path)?;
    let mc = exact::exact_maxcut(&g).map_err(ctx("exact maxcut"))?;
    let (x, y) = cut_sides(&g, &mc.sides);
    let mut r = Report::default();
    r.line(format!("mc = {}", mc.value));
    r.line(format!("X: {}", x.join(" ")));
    r.line(format!("Y: {}", y.join(" ")));
    r.record(json!({ "maxcut": mc.value, "x": x, "y": y }));
    Ok(r)
}

pub fn maxcut_circulant(n: usize, k: usize, brute_check: bool) -> CmdResult {
    let mc = radius::maxcut_circulant(n, k).map_err(ctx("maxcut circulant"))?;
    let mut r = Report::default();
    r.line(format!("mc(C_{n}^{k}) = {mc}"));
    r.line(format!("w_{k}({n}) = {}", (k * n) as u64 - mc));
    let mut rec = json!({ "n": n, "k": k, "maxcut": mc, "w_k": (k * n) as u64 - mc });
    if brute_check {
        let g = graphs::circulant(n, k).map_err(ctx("maxcut circulant"))?.graph;
        let brute = exact::exact_maxcut(&g).map_err(ctx("--brute-check"))?.value;
        r.line(format!("enumeration: {brute} ({})", if brute == mc { "agrees" } else { "DISAGREES" }));
        rec["brute"] = json!(brute);
        if brute != mc {
            r.code = EXIT_DOMAIN;
        }
    }
    r.record(rec);
    Ok(r)
}

fn write_instance(prefix: &str, g: &Graph, meta: &Value, witness: Option<&str>) -> Result<(), CliError> {
    write_file(&format!("{prefix}.edges"), &graphs::serialize_graph(g))?;
    let pretty = serde_json::to_string_pretty(meta).expect("metadata serializes");
    write_file(&format!("{prefix}.meta.json"), &(pretty + "\n"))?;
    if let Some(w) = witness {
        write_file(&format!("{prefix}.seq"), w)?;
    }
    Ok(())
}

pub fn reduce_ham_radius(k: usize, path: &str, witness: Option<&str>, out: Option<&str>) -> CmdResult {
    let f = load_graph(path)?;
    let inst = hardness::reduce_hampath_to_radius(&f, k).map_err(ctx(&format!("--graph {path}")))?;
    let mut r = Report::default();
    r.line(format!(
        "# target: {} vertices, {} edges; yes-instances have a {k}-radius sequence of length {}",
        inst.target.vertex_count(),
        inst.target.edge_count(),
        inst.threshold
    ));
    let mut meta = hardness::radius_instance_metadata(&inst);
    let mut seq_text = None;
    if let Some(wpath) = witness {
        let text = read_file("--witness", wpath)?;
        let hp = radius::parse_vertex_sequence(&f, &text, Mode::Linear).map_err(ctx(&format!("--witness {wpath}")))?;
        let seq = hardness::hampath_witness_to_sequence(&inst, &hp.items).map_err(ctx(&format!("--witness {wpath}")))?;
        let line = seq.format(&inst.target);
        r.line(format!("# sequence of length {}", seq.len()));
        r.line(line.clone());
        meta["sequence_length"] = json!(seq.len());
        seq_text = Some(line + "\n");
    }
    if let Some(prefix) = out {
        write_instance(prefix, &inst.target, &meta, seq_text.as_deref())?;
        r.line(format!("# wrote {prefix}.edges and {prefix}.meta.json"));
    }
    meta["graph"] = json!(graphs::serialize_graph(&inst.target));
    if let Some(s) = &seq_text {
        meta["sequence"] = json!(s.trim_end());
    }
    r.record(meta);
    Ok(r)
}

/// Witness file for the cover reduction: one edge of `h` per line, in cover order.
fn parse_edge_order(h: &Graph, text: &str, wpath: &str) -> Result<Vec<usize>, CliError> {
    let parsed = graphs::parse_graph(text).map_err(ctx(&format!("--witness {wpath}")))?;
    parsed
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let (la, lb) = (parsed.label(a), parsed.label(b));
            h.vertex(la)
                .zip(h.vertex(lb))
                .and_then(|(u, v)| h.edge_index(u, v))
                .ok_or_else(|| CliError {
                    code: EXIT_DOMAIN,
                    message: format!("--witness {wpath}: entry {}: {la} {lb} is not an edge of the graph", i + 1),
                })
        })
        .collect()
}

pub fn reduce_cover(k: usize, path: &str, witness: Option<&str>, out: Option<&str>) -> CmdResult {
    let h = load_graph(path)?;
    let inst = hardness::reduce_cover1_to_coverk(&h, k).map_err(ctx(&format!("--graph {path}")))?;
    let mut r = Report::default();
    r.line(format!(
        "# target: {} vertices, {} edges, N = {}; yes-instances have a {k}-cover sequence of length {}",
        inst.target.vertex_count(),
        inst.target.edge_count(),
        inst.n_param,
        inst.target_length
    ));
    let mut meta = hardness::cover_instance_metadata(&inst);
    let mut seq_text = None;
    if let Some(wpath) = witness {
        let text = read_file("--witness", wpath)?;
        let order = parse_edge_order(&h, &text, wpath)?;
        let cov = hardness::cover1_witness_to_coverk(&inst, &order).map_err(ctx(&format!("--witness {wpath}")))?;
        let loss = hardness::loss_count(&inst.target, &cov).map_err(ctx("--witness"))?;
        r.line(format!("# cover sequence of length {}, loss {loss}", cov.len()));
        let body = cov.format(&inst.target);
        r.human.extend(body.lines().map(str::to_string));
        meta["sequence_length"] = json!(cov.len());
        meta["loss"] = json!(loss);
        meta["sets"] = json!(cover_sets(&inst.target, &cov));
        seq_text = Some(body);
    }
    if let Some(prefix) = out {
        let mut file_meta = meta.clone();
        if let Some(obj) = file_meta.as_object_mut() {
            obj.remove("sets");
        }
        write_instance(prefix, &inst.target, &file_meta, seq_text.as_deref())?;
        r.line(format!("# wrote {prefix}.edges and {prefix}.meta.json"));
    }
    meta["graph"] = json!(graphs::serialize_graph(&inst.target));
    r.record(meta);
    Ok(r)
}

pub fn table2() -> CmdResult {
    let mut r = Report::default();
    r.line("k  a_k  optimal cycles");
    for k in 1..=5 {
        let g = DeBruijnGraph::binary(k).map_err(ctx("table2"))?;
        let a = debruijn::ak(k).map_err(ctx("table2"))?;
        let mut words: Vec<String> = debruijn::all_optimal_cycles(&g, &CycleBudget::default(), 64)
            .map_err(ctx("table2"))?
            .iter()
            .map(|c| c.word_string())
            .collect();
        words.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        r.line(format!("{k}  {:<3}  {}", rat(a), words.iter().map(|w| format!("({w})*")).collect::<Vec<_>>().join(" ")));
        r.record(json!({ "k": k, "a_k": rat(a), "cycles": words }));
    }
    Ok(r)
}

pub fn conjecture(max_k: usize) -> CmdResult {
    if max_k == 0 {
        return Err(CliError::usage("--max-k must be at least 1"));
    }
    let mut r = Report::default();
    r.line("k   a_k     z_k     t   lower bound      a_k = z_k");
    for k in 1..=max_k {
        let a = debruijn::ak(k).map_err(ctx("--max-k"))?;
        let b = debruijn::ak_bounds(k).map_err(ctx("--max-k"))?;
        let kf = k as f64;
        let raw_lower = (2.0 * kf * (kf - 1.0)).sqrt() - kf;
        let eq = a == b.upper;
        r.line(format!(
            "{k:<3} {:<7} {:<7} {:<3} {:<16} {}",
            rat(a),
            rat(b.upper),
            b.upper_t,
            sig12(raw_lower),
            if eq { "yes" } else { "no" }
        ));
        r.record(json!({
            "k": k,
            "a_k": rat(a),
            "z_k": rat(b.upper),
            "t": b.upper_t,
            "lower": raw_lower,
            "lower_holds": debruijn::exceeds_sqrt_lower_bound(a, k),
            "equal": eq,
        }));
    }
    Ok(r)
}
