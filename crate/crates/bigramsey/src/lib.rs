//! Exact catalogs of big Ramsey degrees for finite linear orders, graphs,
//! and 3-uniform hypergraphs, built by exhaustive enumeration of shapes and
//! validated against independent counting oracles and finite approximations
//! of the corresponding universal structures.

pub mod brute;
pub mod catalog;
pub mod cli;
pub mod devlin;
pub mod dot;
pub mod hyper;
pub mod io;
pub mod orders;
pub mod randstruct;
pub mod sauer;
pub mod shape;
pub mod tree;
pub mod util;

pub use catalog::{Catalog, EnumError, Mode, DEFAULT_CAP};
pub use devlin::{enumerate_devlin, hook_count_oracle, tangent_number};
pub use hyper::{enumerate_hyper, Hypergraph3, TieReading};
pub use orders::{Elem, LinearOrder, WellPreorder, MAX_GROUND};
pub use sauer::{enumerate_sauer, Graph};
pub use shape::{CanonicalCode, DevlinShape, Family, HyperShape, SauerShape};
pub use tree::{tree_from_orders, OrderTree};
