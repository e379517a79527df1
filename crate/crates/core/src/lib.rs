//! Exact-arithmetic toolkit for cooperative games in partition function
//! form: restriction subgames, the MPW value and its relatives, reduced
//! games, axiom checkers, and reconstruction solvers.

pub mod axioms;
pub mod combo;
pub mod error;
pub mod game;
pub mod gamefile;
pub mod generators;
pub mod reduction;
pub mod restriction;
pub mod solution;
pub mod values;

/// All worths and payoffs are exact rationals.
pub type Rational = num_rational::BigRational;

pub use combo::{Coalition, EmbeddedCoalition, Partition, PlayerId};
pub use error::{Error, Result};
pub use game::{PayoffVector, TuGame, TuxGame};
