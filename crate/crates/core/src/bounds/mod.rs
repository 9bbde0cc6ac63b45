//! Sound big-number arithmetic for the bound formulas and proof chains.

pub mod alpha;
pub mod corollaries;
pub mod decide;
pub mod dyadic;
pub mod expr;
pub mod formulas;
pub mod interval;
pub mod logqty;
pub mod main2_arith;
pub mod main_arith;

use thiserror::Error;

pub use alpha::{alpha_sequence, AlphaTrace};
pub use corollaries::{
    bound_corollary_bipartite, bound_corollary_edges, bound_corollary_join, bound_corollary_vertices,
};
pub use decide::PrecisionPolicy;
pub use expr::Expr;
pub use formulas::{bound_alon, bound_erdos_lower, bound_erdos_szekeres, bound_sudakov};
pub use logqty::LogQty;
pub use main2_arith::{verify_main2_arithmetic, OrderParam};
pub use main_arith::verify_main_arithmetic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision exhausted at {cap} bits while deciding {what}")]
    Precision { what: String, cap: u32 },
    #[error("invalid argument: {0}")]
    Argument(String),
}
