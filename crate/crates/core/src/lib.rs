//! Domination polynomials of graphs, computed three independent ways:
//! exhaustive subset enumeration ([`oracle`]), the vertex recurrence on
//! bipartite one-way digraphs ([`engine`]), and closed forms for structured
//! families ([`families`]). [`verify`] cross-checks them.

pub mod cli;
pub mod engine;
pub mod error;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{BipartiteDigraph, Family, Left, Right, SimpleGraph, VertexSet};
pub use poly::{Convention, DomPolynomial, TruncatedBivariateSeries, UnivariateSeries};
pub use triangle::{KSetTriangle, ReadOrder};
