//! Ramsey bounds for graphs with few edges: sound exponent arithmetic,
//! structural hypothesis checks, constructive pair lemmas and an exhaustive
//! oracle for small cases.

pub mod bounds;
pub mod decomposition;
pub mod graph;
pub mod lemma;
pub mod oracle;
pub mod report;
pub mod selftest;
