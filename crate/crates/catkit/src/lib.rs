//! Finite category theory made executable.
//!
//! Categories are presented one-sortedly: a carrier of morphism indices with
//! an existence mask, plus total `dom`/`cod`/`comp` tables. Partiality of
//! composition is modelled free-logic style by composites landing outside the
//! existing subset. On top of that sit axiom checkers, universal-property
//! searches up to the topos level, symmetric monoidal closed structure with
//! coherence checking, and a compiler from IMLL sequent proofs to morphism
//! terms evaluated in concrete models.

pub mod category;
pub mod constructions;
pub mod error;
pub mod functor_nat;
pub mod imll;
pub mod io;
pub mod kernel;
pub mod models;
pub mod monoidal;
pub mod report;

pub use category::FiniteCategory;
pub use error::CatError;
pub use kernel::Carrier;
pub use monoidal::SmccModel;
pub use report::{StructureReport, Violation};

/// Default cap on carrier sizes accepted by brute-force entry points.
/// Overridable via the `CATKIT_MAX_SIZE` environment variable in the CLI.
pub const DEFAULT_MAX_SIZE: usize = 600;
