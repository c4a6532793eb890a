//! Exact straightedge-and-compass engine: constructible-number arithmetic
//! over quadratic towers, exact geometric primitives, a small construction
//! DSL, certified high-precision measurement, and a regular-polygon
//! constructibility oracle.

pub mod interval;
pub mod lang;
pub mod measure;
pub mod oracle;
pub mod render;
pub mod report;
pub mod geometry;
pub mod tower;
