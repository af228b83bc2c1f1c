//! Exact-arithmetic engine for Ext groups between simple polynomial outer
//! functors on free groups.
//!
//! The pieces, bottom up:
//! - [`partition`]: integer partitions, hooks, cycle types;
//! - [`repring`]: the representation ring of the symmetric groups;
//! - [`liechar`]: Lie and cyclic Lie characters;
//! - [`multdata`]: composition-factor multiplicity tables and their files;
//! - [`extengine`]: E₁-supports, row complexes and the Euler-characteristic
//!   recursions built on them;
//! - [`cli`]: the command-line surface.

pub mod cli;
pub mod error;
pub mod extengine;
pub mod liechar;
pub mod multdata;
pub mod partition;
pub mod repring;

pub use error::{Cell, Error, Result};
pub use partition::{generate_partitions, hook_family, CycleType, Partition};
pub use repring::{BiRep, ClassFunction, VirtualRep};
