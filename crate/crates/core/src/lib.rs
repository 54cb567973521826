//! Exact network-reliability and graph-syzygy toolkit.
//!
//! Everything here is combinatorial and exact: graphs are small multigraphs
//! with a distinguished source vertex `q`, and the interesting objects are
//! the monomial ideals attached to coherent systems on those graphs
//! (spanning-tree, path and cut systems), their minimal free resolutions,
//! and the reliability polynomials obtained by evaluating Hilbert-series
//! numerators at edge probabilities.
//!
//! The crate is organized around independent routes to the same numbers:
//! combinatorial enumerations ([`orient`], [`cells`], [`syzygy`]) on the one
//! hand, and a simplicial-homology oracle ([`oracle`]) plus brute-force state
//! enumeration ([`reliability`]) on the other. Tests and the CLI cross-check
//! the routes against each other.

pub mod betti;
pub mod cells;
pub mod divisor;
pub mod error;
pub mod field;
pub mod genfun;
pub mod graph;
pub mod ideal;
pub mod linalg;
pub mod oracle;
pub mod orient;
pub mod poly;
pub mod reliability;
pub mod samples;
pub mod syzygy;

pub use error::Error;
pub use field::{Fp, Scalar};
pub use graph::{Cut, Dir, Edge, Graph, OrientedEdge};

/// Exact rational scalar used for all coefficient arithmetic.
pub type Rat = num_rational::BigRational;
/// Default prime field used for characteristic cross-checks.
pub type F32003 = field::Fp<32003>;
/// Multivariate polynomial with exact rational coefficients.
pub type QPoly = poly::Polynomial<Rat>;

pub type Result<T> = std::result::Result<T, Error>;
