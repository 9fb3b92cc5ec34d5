//! Power graphs of finite groups, twin classes, metric dimension and the
//! exchange property for resolving sets.
//!
//! * [`group`]: finite groups as validated Cayley tables.
//! * [`graph`]: simple graphs, power graphs, hop distances, generators.
//! * [`twins`]: twin classes and the twin-class dimension formula.
//! * [`resolve`]: resolving sets, exact metric dimension, minimal sets and
//!   the exchange property.
//! * [`theory`]: separating sets, resolving involutions, the Ψ class and
//!   closed-form dimension formulas for power graphs.

pub mod graph;
pub mod group;
pub mod report;
pub mod resolve;
pub mod theory;
pub mod twins;

pub use graph::{power_graph, DistanceMatrix, SimpleGraph};
pub use group::{FiniteGroup, GroupSpec};
pub use report::{CrossCheck, MdReport, Method};
pub use resolve::{Caps, ExchangeReport};
pub use theory::PowerGraph;
pub use twins::TwinPartition;
