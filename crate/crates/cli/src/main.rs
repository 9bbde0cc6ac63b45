//! `ramsey`: bound evaluation, hypothesis checks, witness extraction, the
//! exhaustive oracle and the self-test suites.
//!
//! Exit codes: 0 success, 1 checked failure, 2 usage or parse error,
//! 3 precision or search-budget exhaustion.

mod input;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use ramsey_core::bounds::{self, BoundsError, LogQty, OrderParam, PrecisionPolicy};
use ramsey_core::decomposition::{check_main2_hypotheses, check_main_hypotheses, default_alpha_samples, DecompositionError};
use ramsey_core::lemma::{extract_ramsey_witness, LemmaError, LemmaOptions, PipelineInput, PipelineOutcome, DEFAULT_EMBED_CAP};
use ramsey_core::oracle::{dominance_check, exact_ramsey, Arrows, ExactStatus, OracleError, DEFAULT_BUDGET};
use ramsey_core::report::HypothesisReport;
use ramsey_core::selftest::{self, SelftestConfig, SUITES};

#[derive(Parser, Debug)]
#[command(name = "ramsey", version, about = "Ramsey bounds for sparse graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum working precision in bits for interval arithmetic.
    #[arg(long, global = true, env = "RAMSEY_PRECISION", default_value_t = 512)]
    precision: u32,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a bound: t1 t2 t3 t4 t5 t7 c1 c2 c3 c4.
    Bounds(BoundsArgs),
    /// Check theorem hypotheses on concrete graphs: t4 or t5.
    Verify(VerifyArgs),
    /// Run the pair-extraction pipeline on a coloring.
    Extract(ExtractArgs),
    /// Exact Ramsey number by exhaustive search.
    Oracle(OracleArgs),
    /// Amplification schedule for edge parameter m.
    Trace {
        #[arg(long)]
        m: u64,
    },
    /// Run a self-test suite, or `all`.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Serialize)]
struct BoundsArgs {
    theorem: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    m1: Option<u64>,
    #[arg(long)]
    m2: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    /// Order of the edgeless part, or `max` for the largest admissible value.
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    h: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    theorem: String,
    /// Graph name (k5, p4, c7, e3, star-4, k2+e3) or file (.g6 or edge list).
    #[arg(long)]
    g1: Option<String>,
    #[arg(long)]
    g2: Option<String>,
    /// The graph H of the join pattern for t5.
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    /// Deletion set of G1 as `0,2,5` (default: all vertices).
    #[arg(long)]
    v1: Option<String>,
    #[arg(long)]
    v2: Option<String>,
    /// Upper bound on R(G1 - V1, G2); required when V1 is not everything.
    #[arg(long)]
    r1: Option<u64>,
    #[arg(long)]
    r2: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct ExtractArgs {
    /// Coloring name (red:N, blue:N, pentagon, random:N:P:SEED) or file.
    #[arg(long)]
    coloring: String,
    #[arg(long)]
    g1: String,
    #[arg(long)]
    g2: String,
    #[arg(long)]
    m: u64,
    #[arg(long, default_value_t = 8)]
    restarts: u32,
    #[arg(long, default_value_t = DEFAULT_EMBED_CAP)]
    embed_cap: u64,
}

#[derive(Args, Debug, Serialize)]
struct OracleArgs {
    #[arg(long)]
    g1: String,
    #[arg(long)]
    g2: String,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// Node budget per host order.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug, Serialize)]
struct SelftestArgs {
    #[arg(default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 7)]
    lemma1_max_n: usize,
    #[arg(long, default_value_t = 1000)]
    peel_samples: usize,
    #[arg(long, default_value_t = 10_000)]
    pipeline_samples: usize,
}

#[derive(Serialize)]
struct RunConfig {
    format: Format,
    precision: PrecisionPolicy,
    seed: u64,
    threads: Option<usize>,
    command: &'static str,
    args: Value,
}

enum Fail {
    Usage(String),
    Exhausted(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Usage(_) => 2,
            Fail::Exhausted(_) => 3,
        }
    }
}

impl From<BoundsError> for Fail {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Precision { .. } => Fail::Exhausted(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

impl From<DecompositionError> for Fail {
    fn from(e: DecompositionError) -> Self {
        match e {
            DecompositionError::Bounds(b) => b.into(),
            other => Fail::Usage(other.to_string()),
        }
    }
}

impl From<LemmaError> for Fail {
    fn from(e: LemmaError) -> Self {
        match e {
            LemmaError::Bounds(b) => b.into(),
            other => Fail::Usage(other.to_string()),
        }
    }
}

impl From<OracleError> for Fail {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Bounds(b) => b.into(),
            other => Fail::Usage(other.to_string()),
        }
    }
}

impl From<String> for Fail {
    fn from(e: String) -> Self {
        Fail::Usage(e)
    }
}

/// Result payload, plain-text rendering, and exit code.
struct Outcome {
    result: Value,
    table: String,
    code: u8,
}

fn need<T: Copy>(v: Option<T>, name: &str, theorem: &str) -> Result<T, Fail> {
    v.ok_or_else(|| Fail::Usage(format!("{theorem} needs --{name}")))
}

fn parse_q(q: Option<&str>) -> Result<OrderParam, Fail> {
    match q {
        None => Ok(OrderParam::Value(BigInt::from(1))),
        Some("max") => Ok(OrderParam::Max),
        Some(s) => s
            .parse::<BigInt>()
            .map(OrderParam::Value)
            .map_err(|_| Fail::Usage(format!("--q must be an integer or `max`, got {s:?}"))),
    }
}

fn report_table(r: &HypothesisReport) -> String {
    let mut out = format!("{} overall: {}\n", r.theorem, if r.overall { "PASS" } else { "FAIL" });
    for c in &r.clauses {
        let ev: Vec<String> = c.evidence.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!(
            "  {} {:<28} {}  {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.text,
            ev.join(" ")
        ));
    }
    for n in &r.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

fn bound_table(b: &LogQty) -> String {
    format!("log2 bound in {} ({} bits)\n", b.bracket(), b.precision())
}

fn report_outcome(bound: Option<&LogQty>, report: Option<&HypothesisReport>) -> Outcome {
    let mut table = String::new();
    if let Some(b) = bound {
        table.push_str(&bound_table(b));
    }
    if let Some(r) = report {
        table.push_str(&report_table(r));
    }
    Outcome {
        result: json!({"bound": bound, "report": report}),
        table,
        code: u8::from(report.is_some_and(|r| !r.overall)),
    }
}

fn cmd_bounds(a: &BoundsArgs, policy: PrecisionPolicy) -> Result<Outcome, Fail> {
    let t = a.theorem.as_str();
    let q = parse_q(a.q.as_deref())?;
    let out = match t {
        "t1" => report_outcome(Some(&bounds::bound_erdos_szekeres(need(a.n, "n", t)?, policy)?), None),
        "t2" => report_outcome(Some(&bounds::bound_erdos_lower(need(a.n, "n", t)?, policy)?), None),
        "t3" => report_outcome(Some(&bounds::bound_sudakov(need(a.m, "m", t)?, policy)?), None),
        "t4" => {
            let m = need(a.m, "m", t)?;
            let r = bounds::verify_main_arithmetic(m, need(a.n, "n", t)?, policy)?;
            report_outcome(Some(&bounds::bound_sudakov(m, policy)?), Some(&r))
        }
        "t5" => {
            let m = need(a.m, "m", t)?;
            let r = bounds::verify_main2_arithmetic(
                m,
                need(a.p, "p", t)?,
                a.l.unwrap_or(0),
                &q,
                a.k.unwrap_or(1),
                a.r.unwrap_or(0),
                policy,
            )?;
            report_outcome(Some(&bounds::bound_sudakov(m, policy)?), Some(&r))
        }
        "t7" => {
            let h = a.h.as_deref().ok_or_else(|| Fail::Usage("t7 needs --h".into()))?;
            let h: BigInt = h.parse().map_err(|_| Fail::Usage(format!("--h must be an integer, got {h:?}")))?;
            let b = bounds::bound_alon(&h, need(a.p, "p", t)?, need(a.k, "k", t)?, need(a.r, "r", t)?, policy)?;
            report_outcome(Some(&b), None)
        }
        "c1" => {
            let (b, r) = bounds::bound_corollary_edges(need(a.m1, "m1", t)?, a.m2.unwrap_or(0), policy)?;
            report_outcome(Some(&b), Some(&r))
        }
        "c2" => report_outcome(Some(&bounds::bound_corollary_vertices(need(a.n, "n", t)?, policy)?), None),
        "c3" => {
            let (b, r) = bounds::bound_corollary_join(need(a.m, "m", t)?, need(a.p, "p", t)?, a.l.unwrap_or(0), &q, policy)?;
            report_outcome(Some(&b), Some(&r))
        }
        "c4" => {
            let (b, r) = bounds::bound_corollary_bipartite(need(a.p, "p", t)?, &q, policy)?;
            report_outcome(Some(&b), Some(&r))
        }
        other => {
            return Err(Fail::Usage(format!(
                "unknown theorem id {other:?}; expected one of t1 t2 t3 t4 t5 t7 c1 c2 c3 c4"
            )))
        }
    };
    Ok(out)
}

fn residual_evidence(r: Option<u64>, whole: bool, name: &str, policy: PrecisionPolicy) -> Result<LogQty, Fail> {
    match (r, whole) {
        (Some(0), _) => Err(Fail::Usage(format!("--{name} must be positive"))),
        (Some(v), _) => Ok(LogQty::from_value(bounds::Expr::from(v), policy)?),
        (None, true) => Ok(LogQty::one()),
        (None, false) => Err(Fail::Usage(format!(
            "--{name} is required when the deletion set is not every vertex"
        ))),
    }
}

fn cmd_verify(a: &VerifyArgs, policy: PrecisionPolicy) -> Result<Outcome, Fail> {
    match a.theorem.as_str() {
        "t4" => {
            let g1 = input::load_graph(a.g1.as_deref().ok_or_else(|| Fail::Usage("t4 needs --g1".into()))?)?;
            let g2 = input::load_graph(a.g2.as_deref().ok_or_else(|| Fail::Usage("t4 needs --g2".into()))?)?;
            let v1 = input::parse_set(a.v1.as_deref(), g1.n())?;
            let v2 = input::parse_set(a.v2.as_deref(), g2.n())?;
            let e1 = residual_evidence(a.r1, v1.len() == g1.n(), "r1", policy)?;
            let e2 = residual_evidence(a.r2, v2.len() == g2.n(), "r2", policy)?;
            let samples = default_alpha_samples(a.m, policy)?;
            let r = check_main_hypotheses(&g1, &g2, a.m, &samples, &v1, &v2, [&e1, &e2], policy)?;
            Ok(report_outcome(None, Some(&r)))
        }
        "t5" => {
            let h = input::load_graph(a.h.as_deref().ok_or_else(|| Fail::Usage("t5 needs --h".into()))?)?;
            let p = need(a.p, "p", "t5")?;
            let check = check_main2_hypotheses(p, a.l.unwrap_or(0), &h, a.m, policy)?;
            let mut out = report_outcome(None, Some(&check.report));
            out.result = json!({"report": check.report, "certificates": check.certificates});
            Ok(out)
        }
        other => Err(Fail::Usage(format!("verify supports t4 and t5, got {other:?}"))),
    }
}

fn cmd_extract(a: &ExtractArgs, g: &Global, policy: PrecisionPolicy) -> Result<Outcome, Fail> {
    if a.m == 0 {
        return Err(Fail::Usage("--m must be positive".into()));
    }
    let c = input::load_coloring(&a.coloring)?;
    let g1 = input::load_graph(&a.g1)?;
    let g2 = input::load_graph(&a.g2)?;
    let opts = LemmaOptions {
        embed_cap: a.embed_cap,
        restarts: a.restarts,
        seed: g.seed,
        policy,
    };
    let out = extract_ramsey_witness(&c, &PipelineInput::whole(g1, g2, a.m), &opts)?;
    let mut table = out.trace().to_json_lines();
    let code = match &out {
        PipelineOutcome::Witness { embedding, .. } => {
            table.push_str(&format!(
                "witness: {:?} copy on host vertices {:?}\n",
                embedding.color, embedding.host_vertices
            ));
            0
        }
        PipelineOutcome::Failure { .. } => {
            table.push_str("no witness found\n");
            1
        }
    };
    Ok(Outcome {
        result: serde_json::to_value(&out).expect("serializes"),
        table,
        code,
    })
}

fn cmd_oracle(a: &OracleArgs, policy: PrecisionPolicy) -> Result<Outcome, Fail> {
    let g1 = input::load_graph(&a.g1)?;
    let g2 = input::load_graph(&a.g2)?;
    let r = exact_ramsey(&g1, &g2, a.n_max, a.budget)?;
    let mut table = String::new();
    for c in &r.certificate {
        let verdict = match c.arrows {
            Arrows::True => "arrows",
            Arrows::False { .. } => "witness",
            Arrows::Inconclusive => "inconclusive",
        };
        table.push_str(&format!("n={:<3} {:<12} nodes={} prunes={}\n", c.n, verdict, c.stats.nodes, c.stats.prunes));
    }
    let inconclusive = r.certificate.iter().any(|c| c.arrows == Arrows::Inconclusive);
    let (dominance, code) = match r.status {
        ExactStatus::Exact(v) => {
            table.push_str(&format!("R = {v}\n"));
            if let Some(w) = &r.witness {
                table.push_str(&format!("witness on {} vertices: {}\n", w.n(), w.to_bits()));
            }
            (Some(dominance_check(&g1, &g2, &r, policy)?), 0)
        }
        ExactStatus::LowerBoundOnly(v) => {
            table.push_str(&format!("R >= {v} (undecided)\n"));
            (None, if inconclusive { 3 } else { 1 })
        }
    };
    Ok(Outcome {
        result: json!({"exact": r, "dominance": dominance}),
        table,
        code,
    })
}

fn cmd_trace(m: u64, policy: PrecisionPolicy) -> Result<Outcome, Fail> {
    let t = bounds::alpha_sequence(m, policy)?;
    let mut table = format!("{:>3} {:>16} {:>12} {:>14}\n", "i", "alpha", "sum a^-1/3", "Y coefficient");
    for r in t.rows() {
        table.push_str(&format!(
            "{:>3} {:>16.6} {:>12.6} {:>14.6}\n",
            r.i, r.alpha, r.partial_sum, r.y_coefficient
        ));
    }
    Ok(Outcome {
        result: t.to_json(),
        table,
        code: 0,
    })
}

fn cmd_selftest(a: &SelftestArgs, g: &Global, policy: PrecisionPolicy) -> Result<Outcome, Fail> {
    let cfg = SelftestConfig {
        seed: g.seed,
        lemma1_max_n: a.lemma1_max_n,
        peel_samples: a.peel_samples,
        pipeline_samples: a.pipeline_samples,
        policy,
    };
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&a.suite.as_str()) {
        vec![a.suite.as_str()]
    } else {
        return Err(Fail::Usage(format!("unknown suite {:?}; expected all or one of {}", a.suite, SUITES.join(" "))));
    };
    let reports: Vec<_> = names.iter().map(|s| selftest::run(s, &cfg).expect("known suite")).collect();
    let mut table = String::new();
    for r in &reports {
        table.push_str(&format!("{:<12} {} ({} checks)\n", r.suite, if r.pass { "PASS" } else { "FAIL" }, r.checks));
        for f in &r.failures {
            table.push_str(&format!("    {f}\n"));
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(Outcome {
        result: json!({"pass": pass, "suites": reports}),
        table,
        code: u8::from(!pass),
    })
}

fn to_args<T: Serialize>(a: &T) -> Value {
    serde_json::to_value(a).expect("arguments serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    if let Some(t) = g.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let policy = PrecisionPolicy::new(PrecisionPolicy::default().start.min(g.precision), g.precision);
    let (command, args) = match &cli.cmd {
        Command::Bounds(a) => ("bounds", to_args(a)),
        Command::Verify(a) => ("verify", to_args(a)),
        Command::Extract(a) => ("extract", to_args(a)),
        Command::Oracle(a) => ("oracle", to_args(a)),
        Command::Trace { m } => ("trace", json!({ "m": m })),
        Command::Selftest(a) => ("selftest", to_args(a)),
    };
    let config = RunConfig {
        format: g.format,
        precision: policy,
        seed: g.seed,
        threads: g.threads,
        command,
        args,
    };
    let outcome = match &cli.cmd {
        Command::Bounds(a) => cmd_bounds(a, policy),
        Command::Verify(a) => cmd_verify(a, policy),
        Command::Extract(a) => cmd_extract(a, g, policy),
        Command::Oracle(a) => cmd_oracle(a, policy),
        Command::Trace { m } => cmd_trace(*m, policy),
        Command::Selftest(a) => cmd_selftest(a, g, policy),
    };
    match outcome {
        Ok(o) => {
            match g.format {
                Format::Json => {
                    let doc: BTreeMap<&str, Value> = [
                        ("config", serde_json::to_value(&config).expect("config serializes")),
                        ("result", o.result),
                    ]
                    .into();
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
                }
                Format::Table => {
                    println!("# config {}", serde_json::to_string(&config).expect("config serializes"));
                    print!("{}", o.table);
                }
            }
            ExitCode::from(o.code)
        }
        Err(f) => {
            let (Fail::Usage(msg) | Fail::Exhausted(msg)) = &f;
            if g.format == Format::Json {
                let doc = json!({"config": config, "error": msg, "exit_code": f.code()});
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
            } else {
                println!("# config {}", serde_json::to_string(&config).expect("config serializes"));
            }
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
