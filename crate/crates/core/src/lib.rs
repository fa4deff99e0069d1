//! Desk-scale computational algebra for divisibility verdicts: finite groups
//! as Cayley tables, finitely presented indexed groups with homomorphism
//! enumeration, finite rings with materialized unit groups, generalized
//! homogeneous systems, and the class-partition machinery that exhibits why
//! the counts divide.
//!
//! Everything is exact; counts are integers and verdicts are integer
//! divisibility. With the default `parallel` feature the product-space
//! enumerations run on rayon; disabling it leaves identical sequential code.

pub mod arith;
pub mod error;
pub mod exec;
pub mod group;
pub mod harness;
pub mod indexed;
pub mod linalg;
pub mod ring;
pub mod ring_eq;
pub mod specs;
pub mod theorems;
pub mod word;

pub use error::{Error, Result};
