//! Exact counting of A-perfect matchings in bipartite hypergraphs, Latin
//! square transversals and proper edge-colorings, together with the
//! entropy-method upper bound on those counts and a harness that checks each
//! step of the bound on enumerable instances.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod hypercore;
pub mod verify;

pub use error::{Error, Result};
