//! Exact computation with finite categories enriched in `([0,1], ⊗, 1)` for
//! a continuous t-norm `⊗`.

pub mod balls;
pub mod cat;
pub mod classify;
pub mod error;
pub mod grid;
pub mod io;
pub mod laws;
pub mod poset;
pub mod presheaf;
pub mod random;
pub mod rational;
pub mod suites;
pub mod tnorm;
pub mod value;

pub use cat::{EnrichedCategory, EnrichedFunctor, Distributor, Rel};
pub use error::{Error, Result};
pub use grid::ValueGrid;
pub use poset::FinitePoset;
pub use presheaf::{Coweight, Weight};
pub use rational::Rational;
pub use tnorm::{Block, InnerKind, TNorm};
pub use value::{Extended, Mode, Value};
