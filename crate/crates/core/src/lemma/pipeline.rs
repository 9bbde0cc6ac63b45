//! Witness extraction: base pair, amplification along the alpha schedule, then
//! completion of the forbidden pattern from the final pair.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::amplify::{amplify_pair, AmplifyOutcome};
use super::base_pair::{find_base_pair, PairBudget};
use super::embed::{greedy_embed, EmbedOutcome};
use super::{LemmaError, LemmaOptions};
use crate::bounds::formulas::{alpha_max, base_budget, sqrt_m};
use crate::bounds::logqty::interval_string;
use crate::bounds::{alpha_sequence, decide, Expr};
use crate::decomposition::peel_high_degree;
use crate::graph::{check_embedding, Color, Embedding, Graph, MonoPair, TwoColoring, VertexSet};

/// Patterns, edge parameter and the condition-II deletion sets.
#[derive(Clone, Debug)]
pub struct PipelineInput {
    pub g1: Graph,
    pub g2: Graph,
    pub m: u64,
    pub v1: VertexSet,
    pub v2: VertexSet,
}

impl PipelineInput {
    /// Deletion sets covering the whole pattern, so the completion step only
    /// needs `|X'|` large enough.
    pub fn whole(g1: Graph, g2: Graph, m: u64) -> Self {
        let v1 = VertexSet::full(g1.n());
        let v2 = VertexSet::full(g2.n());
        Self { g1, g2, m, v1, v2 }
    }

    fn pattern(&self, color: Color) -> (&Graph, &VertexSet) {
        match color {
            Color::Blue => (&self.g1, &self.v1),
            Color::Red => (&self.g2, &self.v2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub x: usize,
    pub y: usize,
    pub color: Option<Color>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PipelineTrace {
    pub stages: Vec<StageRecord>,
}

impl PipelineTrace {
    fn push(&mut self, stage: &str, alpha: Option<String>, pair: Option<&MonoPair>, detail: impl Into<String>) {
        self.stages.push(StageRecord {
            stage: stage.into(),
            alpha,
            x: pair.map_or(0, |p| p.x.len()),
            y: pair.map_or(0, |p| p.y.len()),
            color: pair.map(|p| p.color),
            detail: detail.into(),
        });
    }

    /// One JSON object per stage, newline terminated.
    pub fn to_json_lines(&self) -> String {
        self.stages
            .iter()
            .map(|s| serde_json::to_string(s).expect("record serializes") + "\n")
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PipelineOutcome {
    /// A blue copy of `g1` or a red copy of `g2`, re-validated.
    Witness { embedding: Embedding, trace: PipelineTrace },
    Failure { trace: PipelineTrace },
}

impl PipelineOutcome {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            PipelineOutcome::Witness { embedding, .. } => Some(embedding),
            PipelineOutcome::Failure { .. } => None,
        }
    }

    pub fn trace(&self) -> &PipelineTrace {
        match self {
            PipelineOutcome::Witness { trace, .. } | PipelineOutcome::Failure { trace } => trace,
        }
    }
}

fn describe(out: &EmbedOutcome) -> String {
    match out {
        EmbedOutcome::Found(_) => "found".into(),
        EmbedOutcome::Exhausted { nodes } => format!("no copy (exhaustive, {nodes} nodes)"),
        EmbedOutcome::CapReached { nodes } => format!("search cap reached after {nodes} nodes"),
    }
}

/// Embeds `g - V` inside `Y` and sends `V` into `X`.
fn complete_through_pair(c: &TwoColoring, pair: &MonoPair, g: &Graph, v: &VertexSet, cap: u64) -> Result<Embedding, String> {
    if pair.x.len() < v.len() {
        return Err(format!("|X| = {} < |V| = {}", pair.x.len(), v.len()));
    }
    let (rest, back) = g.delete_vertices(v);
    let out = greedy_embed(c, &rest, pair.color, &pair.y, cap);
    let EmbedOutcome::Found(e) = out else {
        return Err(describe(&out));
    };
    let mut hosts = vec![usize::MAX; g.n()];
    for (i, &h) in e.host_vertices.iter().enumerate() {
        hosts[back[i]] = h;
    }
    for (u, h) in v.iter().zip(pair.x.iter()) {
        hosts[u] = h;
    }
    Ok(Embedding {
        pattern: g.clone(),
        host_vertices: hosts,
        color: pair.color,
    })
}

fn alpha_label(a: &Expr, opts: &LemmaOptions) -> Result<String, LemmaError> {
    Ok(interval_string(&decide::enclose(a, opts.policy)?.0))
}

fn finish(c: &TwoColoring, e: Embedding, trace: PipelineTrace) -> PipelineOutcome {
    assert!(check_embedding(c, &e), "pipeline produced an invalid embedding");
    PipelineOutcome::Witness { embedding: e, trace }
}

/// Runs the extraction on `c`. Returns a validated blue `g1` or red `g2`, or
/// the full trace when every stage fails.
pub fn extract_ramsey_witness(
    c: &TwoColoring,
    input: &PipelineInput,
    opts: &LemmaOptions,
) -> Result<PipelineOutcome, LemmaError> {
    let m = input.m;
    if m == 0 {
        return Err(LemmaError::Argument("m must be positive".into()));
    }
    if c.n() == 0 {
        return Err(LemmaError::Argument("the coloring has no vertices".into()));
    }
    if input.g1.n() == 0 || input.g2.n() == 0 {
        return Err(LemmaError::Argument("patterns must have at least one vertex".into()));
    }
    input.g1.check_set(&input.v1)?;
    input.g2.check_set(&input.v2)?;
    let policy = opts.policy;
    let mut trace = PipelineTrace::default();

    let k = decide::ceil(&base_budget(m), policy)?
        .to_usize()
        .ok_or_else(|| LemmaError::Argument("27 sqrt(m) does not fit in memory".into()))?;
    let base = find_base_pair(c, PairBudget::new(k, k)?)?;
    let mut pair = base.pair;
    trace.push(
        "base",
        None,
        Some(&pair),
        if base.complete { format!("k = l = {k}") } else { format!("k = l = {k}, residual set emptied") },
    );

    if m >= 27 && decide::le(&Expr::from(27u64), &alpha_max(m), policy)?.holds {
        let schedule = alpha_sequence(m, policy)?;
        let mut alphas: Vec<Expr> = schedule.stages.iter().map(|s| s.alpha.clone()).collect();
        alphas.pop();
        alphas.push(schedule.threshold.clone());
        let root = sqrt_m(m);
        for a in &alphas {
            let budget = decide::floor(&(a * &root), policy)?.to_usize().unwrap_or(usize::MAX);
            let cores = [peel_high_degree(&input.g1, budget), peel_high_degree(&input.g2, budget)];
            let r = amplify_pair(c, &pair, a, m, [&cores[0], &cores[1]], opts)?;
            let label = Some(alpha_label(a, opts)?);
            match r.outcome {
                AmplifyOutcome::Amplified(q) => {
                    trace.push("amplify", label, Some(&q), format!("eps = 2^-{}", r.eps_log));
                    pair = q;
                }
                AmplifyOutcome::PatternFound(e) => {
                    trace.push("amplify", label, Some(&pair), "pattern lifted from the core");
                    return Ok(finish(c, e, trace));
                }
                AmplifyOutcome::Failure { stage, reason } => {
                    trace.push("amplify", label, Some(&pair), format!("{stage}: {reason}"));
                    break;
                }
            }
        }
    } else {
        trace.push("amplify", None, Some(&pair), "alpha range [27, log^3 m / 8] is empty");
    }

    let sigma = pair.color;
    let (g, v) = input.pattern(sigma);
    match complete_through_pair(c, &pair, g, v, opts.embed_cap) {
        Ok(e) if check_embedding(c, &e) => {
            trace.push("complete.pair", None, Some(&pair), "found");
            return Ok(finish(c, e, trace));
        }
        Ok(_) => trace.push("complete.pair", None, Some(&pair), "candidate failed validation"),
        Err(why) => trace.push("complete.pair", None, Some(&pair), why),
    }

    let (other, _) = input.pattern(sigma.other());
    let out = greedy_embed(c, other, sigma.other(), &pair.y, opts.embed_cap);
    trace.push("complete.other", None, Some(&pair), describe(&out));
    if let EmbedOutcome::Found(e) = out {
        return Ok(finish(c, e, trace));
    }

    let all = VertexSet::full(c.n());
    for color in [Color::Blue, Color::Red] {
        let (g, _) = input.pattern(color);
        let out = greedy_embed(c, g, color, &all, opts.embed_cap);
        trace.push("complete.search", None, None, format!("{color}: {}", describe(&out)));
        if let EmbedOutcome::Found(e) = out {
            return Ok(finish(c, e, trace));
        }
    }
    Ok(PipelineOutcome::Failure { trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_coloring;

    fn k3_input(m: u64) -> PipelineInput {
        PipelineInput::whole(Graph::complete(3), Graph::complete(3), m)
    }

    #[test]
    fn all_red_k6() {
        let c = TwoColoring::uniform(6, Color::Red);
        let out = extract_ramsey_witness(&c, &k3_input(3), &LemmaOptions::default()).unwrap();
        let e = out.embedding().unwrap();
        assert_eq!(e.color, Color::Red);
        assert!(check_embedding(&c, e));
    }

    #[test]
    fn pentagon_fails() {
        let c = TwoColoring::pentagon();
        let out = extract_ramsey_witness(&c, &k3_input(3), &LemmaOptions::default()).unwrap();
        assert!(matches!(out, PipelineOutcome::Failure { .. }));
        assert!(out.trace().to_json_lines().lines().count() >= 4);
    }

    #[test]
    fn random_k6_colorings_always_succeed() {
        for seed in 0..300 {
            let c = random_coloring(6, 0.5, seed);
            let out = extract_ramsey_witness(&c, &k3_input(3), &LemmaOptions::default()).unwrap();
            assert!(check_embedding(&c, out.embedding().unwrap()));
        }
    }

    #[test]
    fn amplification_is_attempted_for_large_m() {
        let c = random_coloring(30, 0.5, 1);
        let out = extract_ramsey_witness(&c, &k3_input(100), &LemmaOptions::default()).unwrap();
        assert!(out.trace().stages.iter().any(|s| s.stage == "amplify" && s.alpha.is_some()));
        assert!(out.embedding().is_some());
    }

    #[test]
    fn zero_m_rejected() {
        let c = TwoColoring::uniform(3, Color::Red);
        assert!(extract_ramsey_witness(&c, &k3_input(0), &LemmaOptions::default()).is_err());
    }
}
