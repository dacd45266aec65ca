//! A finite-model kernel for relations and codomain-free functions.
//!
//! Relations are bare sets of ordered pairs; functions are a domain plus a
//! value at each point. On top of these sit indexed families, Cartesian
//! products and disjoint unions with their universal properties, the
//! point-free constructions fork, parallel and tabulation, and currying with
//! the evaluation map. The [`laws`] module checks a catalog of algebraic laws
//! by exhaustive (or seeded sampled) enumeration over small carriers, and
//! [`dsl`] provides a tiny scripting language over the whole kernel.

pub mod dsl;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod function;
pub mod laws;
pub mod pointfree;
pub mod relation;
pub mod report;
pub mod value;

pub use error::{KernelError, Result};
pub use family::Fam;
pub use function::Fun;
pub use relation::Rel;
pub use report::{Instance, LawReport, Outcome};
pub use value::{Atom, VSet, Value};
