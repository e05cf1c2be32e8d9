//! Exact computations with non-crossing partitions, planar tangles, graph planar
//! algebras and free products of planar algebras.

pub mod numeric;
pub mod partitions;
pub mod moments;
pub mod tangles;
pub mod gpa;
pub mod freeprod;
