//! Exact, desk-scale models of algebraic weak factorisation systems.
//!
//! The crate is split along the mathematical layers it checks:
//!
//! - [`fincat`]: computable categories (finite sets, explicit tables), comonads,
//!   monads and co-Kleisli categories.
//! - [`awfs`]: functorial factorisations with comultiplication and
//!   multiplication, the split-epi and `P`-split-epi families, canonical
//!   fillers, composition of algebras, cartesian lifts and sketches.
//! - [`spans`]: left weak maps presented as a co-Kleisli category and as
//!   spans with a structured left leg, with the comparison between the two.
//! - [`dg`]: chain complexes over the rationals, graded maps, tensor
//!   products, homological lalis and homology ranks.
//! - [`bar`]: the monad `A ⊗ (-)`, bar complexes, truncated codescent
//!   objects, homotopy-coherent maps and their strictification.
//!
//! Every check produces a [`report::Report`] made of named equations.

pub mod awfs;
pub mod bar;
pub mod dg;
pub mod error;
pub mod fincat;
pub mod report;
pub mod schema;
pub mod spans;

pub use error::{Error, Result};
pub use report::{Check, Report, Status};
