//! Constructive versions of the pair lemmas and the extraction pipeline.

mod amplify;
mod base_pair;
mod embed;
mod pipeline;
mod sparse;
mod sparse_pair;

pub use amplify::{amplify_pair, lemma4_eps, lemma4_t, AmplifyOutcome, AmplifyResult};
pub use base_pair::{binomial, find_base_pair, find_base_pair_within, meets_base_bound, BasePair, PairBudget};
pub use embed::{greedy_embed, EmbedOutcome, DEFAULT_EMBED_CAP};
pub use pipeline::{extract_ramsey_witness, PipelineInput, PipelineOutcome, PipelineTrace, StageRecord};
pub use sparse::{find_sparse_subset, find_sparse_subset_within, SparseOutcome, SparseSubsetResult};
pub use sparse_pair::{find_pair_in_sparse, find_pair_in_sparse_within, SparsePairOutcome, SparsePairResult};

use thiserror::Error;

use crate::bounds::{BoundsError, PrecisionPolicy};
use crate::graph::GraphError;

#[derive(Debug, Error)]
pub enum LemmaError {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Search budgets and seeding shared by the lemma procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LemmaOptions {
    /// Node cap for each backtracking embedding search.
    pub embed_cap: u64,
    /// Stepping attempts in the sparse-pair procedure; attempt 0 is deterministic.
    pub restarts: u32,
    pub seed: u64,
    pub policy: PrecisionPolicy,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        Self {
            embed_cap: DEFAULT_EMBED_CAP,
            restarts: 8,
            seed: 0,
            policy: PrecisionPolicy::default(),
        }
    }
}
