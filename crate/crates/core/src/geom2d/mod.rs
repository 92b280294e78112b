//! Exact planar geometry: rationals, points, convex regions, zonotope sums
//! and Pareto-maximal chains.

mod pareto;
mod point;
pub mod rational;
mod region;

use thiserror::Error;

pub use pareto::{
    frontier_above, infimum, intersect_segment_chain, lies_on_both, pareto_max_boundary, supremum,
    ParetoFrontier,
};
pub use point::{on_segment, orient, Rational2};
pub use rational::{int, parse_rational, rat, to_decimal, to_exact, Rational};
pub use region::{convex_hull, minkowski_steps, minkowski_sum_with_segments, ConvexRegion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("empty frontier")]
    EmptyFrontier,
    #[error("chain is not strictly decreasing")]
    InvalidChain,
    #[error("threat dominates frontier")]
    ThreatDominatesFrontier,
    #[error("degenerate segment")]
    DegenerateSegment,
    #[error("no intersection")]
    NoIntersection,
    #[error("non-unique intersection")]
    NonUniqueIntersection,
}
