//! Exact Hilbert Nullstellensatz certificates for graph problems.
//!
//! Graph decision problems are encoded as polynomial systems
//! ([`encoders`]), searched for minimum-degree infeasibility certificates by
//! degree ascent over exact linear algebra ([`nulla`], [`linsolve`]), and the
//! enumerative content of those certificates is reconstructed from the
//! structure families found by brute force ([`enumcert`], [`oracles`]).

pub mod encoders;
pub mod enumcert;
pub mod error;
pub mod graphs;
pub mod io;
pub mod linsolve;
pub mod nulla;
pub mod oracles;
pub mod poly;

pub use encoders::{PolySystem, Problem};
pub use error::{Error, Result};
pub use graphs::Graph;
pub use nulla::{Certificate, NullaOptions, NullaOutcome, SolveReport};
pub use oracles::{OracleLimits, StructureFamily, StructureKind};
pub use poly::{Monomial, Polynomial, Rational, VarId, VarRole, VariableTable};
