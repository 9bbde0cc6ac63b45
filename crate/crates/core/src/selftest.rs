//! Built-in verification suites. Every report is a pure function of its
//! configuration, so repeated runs serialize to identical bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bounds::formulas::sqrt_m;
use crate::bounds::logqty::interval_string;
use crate::bounds::main2_arith::{max_admissible_p, max_admissible_r};
use crate::bounds::{alpha_sequence, decide, verify_main2_arithmetic, verify_main_arithmetic, Expr, OrderParam, PrecisionPolicy};
use crate::decomposition::peel_high_degree;
use crate::graph::{random_coloring, Color, Graph, TwoColoring};
use crate::lemma::{extract_ramsey_witness, find_base_pair, meets_base_bound, LemmaOptions, PairBudget, PipelineInput};
use crate::oracle::{arrows, dominance_check, exact_ramsey, is_witness, Arrows, ExactResult, ExactStatus, DEFAULT_BUDGET};

pub const SUITES: [&str; 9] = [
    "lemma1", "oracle", "peeling", "alpha", "boundary", "main2", "dominance", "pipeline", "determinism",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Largest `N` for the exhaustive base-pair suite.
    pub lemma1_max_n: usize,
    pub peel_samples: usize,
    pub pipeline_samples: usize,
    pub policy: PrecisionPolicy,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            lemma1_max_n: 7,
            peel_samples: 1000,
            pipeline_samples: 10_000,
            policy: PrecisionPolicy::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: u64,
    /// First few failures, in a deterministic order.
    pub failures: Vec<String>,
    pub summary: serde_json::Value,
}

const MAX_LISTED: usize = 10;

struct Tally {
    checks: u64,
    failures: Vec<String>,
    failed: u64,
}

impl Tally {
    fn new() -> Self {
        Self {
            checks: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(what());
            }
        }
    }

    fn report(self, suite: &str, summary: serde_json::Value) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            pass: self.failed == 0,
            checks: self.checks,
            failures: self.failures,
            summary,
        }
    }
}

pub fn run(suite: &str, cfg: &SelftestConfig) -> Option<SuiteReport> {
    Some(match suite {
        "lemma1" => lemma1(cfg),
        "oracle" => oracle(cfg),
        "peeling" => peeling(cfg),
        "alpha" => alpha(cfg),
        "boundary" => boundary(cfg),
        "main2" => main2(cfg),
        "dominance" => dominance(cfg),
        "pipeline" => pipeline(cfg),
        "determinism" => determinism(cfg),
        _ => return None,
    })
}

/// Budgets `(k, l)` with `k, l >= 1` and `k + l <= 4`.
pub fn lemma1_budgets() -> Vec<PairBudget> {
    (2..=4)
        .flat_map(|s| (1..s).map(move |k| PairBudget { k, l: s - k }))
        .collect()
}

fn check_base_pair(c: &TwoColoring, b: PairBudget) -> Result<(), String> {
    let r = find_base_pair(c, b).map_err(|e| e.to_string())?;
    let p = &r.pair;
    if !p.validate(c) {
        return Err("pair does not validate".into());
    }
    if !meets_base_bound(p, c.n(), b) {
        return Err(format!("|Y| = {} below the bound", p.y.len()));
    }
    if r.complete {
        let want = if p.color == Color::Red { b.k } else { b.l };
        if p.x.len() != want {
            return Err(format!("|X| = {} but the budget is {want}", p.x.len()));
        }
    } else if b.y_bound(c.n()) > BigRational::zero() {
        return Err("partial pair although the bound is positive".into());
    }
    Ok(())
}

/// Every 2-coloring of `K_N` for `2 <= N <= lemma1_max_n`, every budget.
pub fn lemma1(cfg: &SelftestConfig) -> SuiteReport {
    let budgets = lemma1_budgets();
    let mut t = Tally::new();
    let mut per_n = Vec::new();
    for n in 2..=cfg.lemma1_max_n {
        let pairs = n * (n - 1) / 2;
        let outcomes: Vec<Vec<String>> = (0..1u64 << pairs)
            .into_par_iter()
            .map(|mask| {
                let c = TwoColoring::from_mask(n, mask);
                budgets
                    .iter()
                    .filter_map(|&b| {
                        check_base_pair(&c, b).err().map(|e| format!("N={n} mask={mask} k={} l={}: {e}", b.k, b.l))
                    })
                    .collect()
            })
            .collect();
        let mut failed = 0u64;
        for errs in outcomes {
            t.checks += budgets.len() as u64;
            for e in errs {
                failed += 1;
                t.checks -= 1;
                t.check(false, || e);
            }
        }
        per_n.push(json!({"n": n, "colorings": 1u64 << pairs, "failures": failed}));
    }
    let budgets: Vec<_> = budgets.iter().map(|b| [b.k, b.l]).collect();
    t.report("lemma1", json!({"budgets": budgets, "per_n": per_n}))
}

fn is_pentagon_like(c: &TwoColoring) -> bool {
    c.n() == 5
        && [Color::Blue, Color::Red].iter().all(|&col| {
            let g = c.monochromatic_subgraph(col);
            g.degrees().iter().all(|&d| d == 2) && is_connected(&g)
        })
}

fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v).ones() {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn exact_summary(r: &ExactResult) -> serde_json::Value {
    json!({
        "status": r.status,
        "witness": r.witness,
        "searched": r.certificate.iter().map(|a| json!({
            "n": a.n,
            "verdict": match a.arrows { Arrows::True => "true", Arrows::False { .. } => "false", Arrows::Inconclusive => "inconclusive" },
            "nodes": a.stats.nodes,
            "prunes": a.stats.prunes,
            "exhaustive": a.stats.exhaustive,
        })).collect::<Vec<_>>(),
    })
}

/// Two-sided certificate: `v -> (g1, g2)` exhaustively, a validated witness at
/// `v - 1`, and `v + 1` also arrows.
fn certify_exact(t: &mut Tally, name: &str, g1: &Graph, g2: &Graph, expect: usize) -> ExactResult {
    let r = exact_ramsey(g1, g2, expect + 2, DEFAULT_BUDGET).expect("valid oracle arguments");
    t.check(r.status == ExactStatus::Exact(expect), || format!("{name}: status {:?}, expected {expect}", r.status));
    let last = r.certificate.last().expect("searched at least once");
    t.check(last.arrows == Arrows::True && last.stats.exhaustive, || format!("{name}: upper side not exhaustive"));
    if expect > 1 {
        let ok = r.witness.as_ref().is_some_and(|w| w.n() == expect - 1 && is_witness(w, g1, g2));
        t.check(ok, || format!("{name}: witness at {} missing or invalid", expect - 1));
    }
    let next = arrows(expect + 1, g1, g2, DEFAULT_BUDGET).expect("valid oracle arguments");
    t.check(next.arrows == Arrows::True, || format!("{name}: monotonicity fails at {}", expect + 1));
    r
}

pub fn oracle(_cfg: &SelftestConfig) -> SuiteReport {
    let mut t = Tally::new();
    let k3 = Graph::complete(3);
    let p3 = Graph::path(3);
    let rk = certify_exact(&mut t, "K3,K3", &k3, &k3, 6);
    t.check(rk.witness.as_ref().is_some_and(is_pentagon_like), || "K3,K3 witness is not a 5-cycle coloring".into());
    let rp = certify_exact(&mut t, "P3,P3", &p3, &p3, 3);
    t.report("oracle", json!({"k3_k3": exact_summary(&rk), "p3_p3": exact_summary(&rp)}))
}

/// Random graph on `2..=60` vertices with at most 400 edges.
fn random_sparse_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=60usize);
    let cap = (n * (n - 1) / 2).min(400);
    let target = rng.gen_range(0..=cap);
    let mut g = Graph::empty(n);
    while g.edge_count() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            g.add_edge(u, v).expect("in range");
        }
    }
    g
}

/// `ceil(alpha sqrt(m))` for integer `alpha`.
fn ceil_alpha_root(alpha: u64, m: u64) -> usize {
    let sq = u128::from(alpha) * u128::from(alpha) * u128::from(m);
    let mut r = (sq as f64).sqrt() as u128;
    while r * r > sq {
        r -= 1;
    }
    while r * r < sq {
        r += 1;
    }
    r as usize
}

pub const PEEL_ALPHAS: [u64; 5] = [1, 2, 4, 8, 27];

/// After peeling `ceil(alpha sqrt(m))` vertices, `Delta(core) <= 2 sqrt(m) / alpha`,
/// decided exactly as `Delta^2 alpha^2 <= 4m`.
pub fn peeling(cfg: &SelftestConfig) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let graphs: Vec<Graph> = (0..cfg.peel_samples).map(|_| random_sparse_graph(&mut rng)).collect();
    let mut t = Tally::new();
    let mut max_edges = 0;
    for (i, g) in graphs.iter().enumerate() {
        let m = g.edge_count() as u64;
        max_edges = max_edges.max(m);
        for a in PEEL_ALPHAS {
            let budget = ceil_alpha_root(a, m);
            let delta = peel_high_degree(g, budget).core.max_degree() as u64;
            t.check(delta * delta * a * a <= 4 * m, || {
                format!("graph {i} (n={}, m={m}) alpha={a}: Delta={delta}", g.n())
            });
        }
    }
    t.report("peeling", json!({"graphs": graphs.len(), "alphas": PEEL_ALPHAS, "max_edges": max_edges}))
}

/// `m = round(27 (10^9/27)^{j/40})` for `j = 0..=40`.
pub fn log_grid() -> Vec<u64> {
    let ratio = 1e9f64 / 27.0;
    let mut g: Vec<u64> = (0..=40).map(|j| (27.0 * ratio.powf(j as f64 / 40.0)).round() as u64).collect();
    g.dedup();
    *g.last_mut().expect("nonempty") = 1_000_000_000;
    g
}

pub fn alpha(cfg: &SelftestConfig) -> SuiteReport {
    let policy = cfg.policy;
    let mut t = Tally::new();
    let mut rows = Vec::new();
    let growth = Expr::ratio(64, 27);
    for m in log_grid() {
        let trace = match alpha_sequence(m, policy) {
            Ok(tr) => tr,
            Err(e) => {
                t.check(false, || format!("m={m}: {e}"));
                continue;
            }
        };
        for (i, want) in [27u64, 64, 256].into_iter().enumerate() {
            if let Some(s) = trace.stages.get(i) {
                let e = &s.alpha_enclosure;
                let exact = e.is_exact() && e.contains_ratio(&BigInt::from(want), &BigInt::from(1));
                t.check(exact, || format!("m={m}: alpha_{} = {} is not exactly {want}", i + 1, interval_string(e)));
            }
        }
        let decide_ok = |t: &mut Tally, what: &str, a: &Expr, b: &Expr| match decide::le(a, b, policy) {
            Ok(d) => t.check(d.holds, || format!("m={m}: {what} fails")),
            Err(e) => t.check(false, || format!("m={m}: {what}: {e}")),
        };
        for w in trace.stages.windows(2) {
            decide_ok(&mut t, &format!("alpha_{} >= (4/3)^3 alpha_{}", w[1].index, w[0].index), &(&growth * &w[0].alpha), &w[1].alpha);
        }
        let last = trace.final_stage();
        decide_ok(&mut t, "sum alpha^(-1/3) <= 4/3", &last.partial_sum, &Expr::ratio(4, 3));
        for s in &trace.stages {
            decide_ok(&mut t, &format!("y exponent at stage {}", s.index), &(Expr::from(36u64) * sqrt_m(m)), &s.y_exponent);
        }
        match verify_main_arithmetic(m, 2 * m, policy) {
            Ok(r) => t.check(r.overall, || format!("m={m}: main arithmetic fails at {:?}", r.first_failure().map(|c| &c.id))),
            Err(e) => t.check(false, || format!("m={m}: {e}")),
        }
        rows.push(json!({
            "m": m,
            "stages": trace.stages.len(),
            "partial_sum": interval_string(&last.partial_sum_enclosure),
            "final_y_coefficient": interval_string(&last.y_coefficient_enclosure),
        }));
    }
    t.report("alpha", json!({"grid": rows}))
}

/// Exact point evaluation of `4 * 60^2` and `250 * 60`, and of
/// `4^{-27 sqrt(m)} 2^{250 sqrt(m)} = 2^{196 sqrt(m)}` at perfect squares.
pub fn boundary(cfg: &SelftestConfig) -> SuiteReport {
    let policy = cfg.policy;
    let mut t = Tally::new();
    let m = 3600u64;
    let lhs = Expr::from(4 * m);
    let rhs = Expr::from(250u64) * sqrt_m(m);
    let (l, _) = decide::enclose(&lhs, policy).expect("integer");
    let (r, _) = decide::enclose(&rhs, policy).expect("perfect square");
    t.check(l.is_exact() && r.is_exact(), || "fallback boundary values are not exact points".into());
    t.check(decide::le(&lhs, &rhs, policy).map(|d| d.holds).unwrap_or(false), || "4m <= 250 sqrt(m) fails at m = 3600".into());
    let equal = l == r;
    let mut squares = Vec::new();
    for s in [1u64, 2, 3, 5, 10, 27, 60, 100, 1000] {
        let m = s * s;
        let root = sqrt_m(m);
        let product = (Expr::from(-54i64) * &root).exp2() * (Expr::from(250u64) * &root).exp2();
        let target = (Expr::from(196u64) * &root).exp2();
        let ok = match (decide::enclose(&product, policy), decide::enclose(&target, policy)) {
            (Ok((a, _)), Ok((b, _))) => a.is_exact() && b.is_exact() && a == b,
            _ => false,
        };
        t.check(ok, || format!("m = {m}: 4^(-27 sqrt m) 2^(250 sqrt m) != 2^(196 sqrt m) exactly"));
        squares.push(m);
    }
    t.report(
        "boundary",
        json!({
            "four_m": interval_string(&l),
            "two_fifty_sqrt_m": interval_string(&r),
            "equal": equal,
            "perfect_squares": squares,
        }),
    )
}

pub const MAIN2_GRID: [u64; 4] = [27, 100, 10_000, 1_000_000];

pub fn main2(cfg: &SelftestConfig) -> SuiteReport {
    let policy = cfg.policy;
    let mut t = Tally::new();
    let mut rows = Vec::new();
    for m in MAIN2_GRID {
        let p = match max_admissible_p(m, policy) {
            Ok(p) => p,
            Err(e) => {
                t.check(false, || format!("m={m}: {e}"));
                continue;
            }
        };
        let l = decide::floor(&(Expr::from(27u64) * sqrt_m(m)), policy)
            .ok()
            .and_then(|v| u64::try_from(v).ok())
            .unwrap_or(0);
        let r_max = max_admissible_r(m).unwrap_or(0);
        let run = |t: &mut Tally, k: u64, r: u64| match verify_main2_arithmetic(m, p, l, &OrderParam::Max, k, r, policy) {
            Ok(rep) => t.check(rep.overall, || {
                format!("m={m} k={k} r={r}: {:?}", rep.first_failure().map(|c| c.id.clone()))
            }),
            Err(e) => t.check(false, || format!("m={m} k={k} r={r}: {e}")),
        };
        run(&mut t, 1, 0);
        for r in 1..=r_max {
            for k in 2..=r + 1 {
                run(&mut t, k, r);
            }
        }
        rows.push(json!({"m": m, "p": p, "l": l, "r_max": r_max}));
    }
    t.report("main2", json!({"grid": rows}))
}

pub fn dominance(cfg: &SelftestConfig) -> SuiteReport {
    let mut t = Tally::new();
    let mut rows = Vec::new();
    for (name, g) in [("K3,K3", Graph::complete(3)), ("P3,P3", Graph::path(3))] {
        let exact = exact_ramsey(&g, &g, 8, DEFAULT_BUDGET).expect("valid oracle arguments");
        match dominance_check(&g, &g, &exact, cfg.policy) {
            Ok(d) => {
                t.check(d.entries.iter().all(|e| e.holds), || format!("{name}: bound violated"));
                rows.push(json!({"pair": name, "report": d}));
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    t.report("dominance", json!({"pairs": rows}))
}

pub fn pipeline(cfg: &SelftestConfig) -> SuiteReport {
    let input = PipelineInput::whole(Graph::complete(3), Graph::complete(3), 3);
    let opts = LemmaOptions {
        seed: cfg.seed,
        policy: cfg.policy,
        ..LemmaOptions::default()
    };
    let outcomes: Vec<Result<(Color, String), String>> = (0..cfg.pipeline_samples as u64)
        .into_par_iter()
        .map(|i| {
            let c = random_coloring(6, 0.5, cfg.seed.wrapping_add(i));
            let out = extract_ramsey_witness(&c, &input, &opts).map_err(|e| format!("sample {i}: {e}"))?;
            let e = out.embedding().ok_or_else(|| format!("sample {i}: no witness"))?;
            if !crate::graph::check_embedding(&c, e) || e.pattern != Graph::complete(3) {
                return Err(format!("sample {i}: invalid witness"));
            }
            let finishing = out.trace().stages.last().map(|s| s.stage.clone()).unwrap_or_default();
            Ok((e.color, finishing))
        })
        .collect();
    let mut t = Tally::new();
    let (mut blue, mut red) = (0u64, 0u64);
    let mut by_stage = std::collections::BTreeMap::<String, u64>::new();
    for o in outcomes {
        match o {
            Ok((c, stage)) => {
                t.check(true, String::new);
                if c == Color::Blue {
                    blue += 1;
                } else {
                    red += 1;
                }
                *by_stage.entry(stage).or_default() += 1;
            }
            Err(e) => t.check(false, || e),
        }
    }
    t.report("pipeline", json!({"samples": cfg.pipeline_samples, "blue": blue, "red": red, "finishing_stage": by_stage}))
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Runs suites 1-8 twice on one thread and once on four, comparing JSON bytes.
pub fn determinism(cfg: &SelftestConfig) -> SuiteReport {
    let mut t = Tally::new();
    let mut rows = Vec::new();
    for suite in &SUITES[..8] {
        let render = || serde_json::to_string(&run(suite, cfg).expect("known suite")).expect("serializes");
        let a = with_threads(1, render);
        let b = with_threads(1, render);
        let c = with_threads(4, render);
        t.check(a == b, || format!("{suite}: repeated runs differ"));
        t.check(a == c, || format!("{suite}: 1 and 4 threads differ"));
        rows.push(json!({"suite": suite, "bytes": a.len()}));
    }
    t.report("determinism", json!({"suites": rows}))
}
