//! Coopetitive Cournot duopoly: a two-country Cournot game whose payoffs are
//! shifted by a jointly chosen cooperative 3-strategy, together with the exact
//! geometry of its payoff space and the bargaining solutions defined on it.
//!
//! All computations run on arbitrary-precision rationals.

pub mod bargaining;
pub mod coopetition;
pub mod cournot;
pub mod geom2d;
mod min_norm;

pub use geom2d::{Rational, Rational2};
