//! The coopetitive game `f(x, y, z) = cournot(x, y) + Σ z_i (m_i, n_i)`.
//!
//! Each section game `G(z)` is the Cournot game translated by `v(z)`, so the
//! payoff regions of interest are Minkowski sums of a base set with the three
//! segments `[0, (m_i, n_i)]`.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cournot::{self, check_unit, BiStrategy, CournotError, PayoffPair};
use crate::geom2d::{
    convex_hull, int, minkowski_steps, minkowski_sum_with_segments, pareto_max_boundary, rat,
    ConvexRegion, ParetoFrontier, Rational, Rational2,
};
use crate::min_norm::{min_norm_point, unit_box, Constraint};

/// Number of cooperative investment dimensions.
pub const COOP_DIM: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoopError {
    #[error(transparent)]
    Cournot(#[from] CournotError),
    #[error("target {target} not reachable in {mode} mode")]
    TargetNotReachable { target: Rational2, mode: RecoveryMode },
    #[error("mode/region mismatch: target {target} lies outside the {mode} region but inside the other one")]
    ModeRegionMismatch { target: Rational2, mode: RecoveryMode },
}

/// Marginal benefits of the three cooperative investments: `m` for the
/// country, `n` for the rest of the world. Any sign is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoopetitiveGame {
    pub m: [Rational; COOP_DIM],
    pub n: [Rational; COOP_DIM],
}

impl CoopetitiveGame {
    pub fn new(m: [Rational; COOP_DIM], n: [Rational; COOP_DIM]) -> Self {
        Self { m, n }
    }

    pub fn from_ints(m: [i64; COOP_DIM], n: [i64; COOP_DIM]) -> Self {
        Self::new(m.map(int), n.map(int))
    }

    /// The unperturbed game.
    pub fn zero() -> Self {
        Self::from_ints([0; COOP_DIM], [0; COOP_DIM])
    }

    /// The family `(m_i, n_i)`.
    pub fn generators(&self) -> [Rational2; COOP_DIM] {
        std::array::from_fn(|i| Rational2::new(self.m[i].clone(), self.n[i].clone()))
    }
}

/// Cooperative 3-strategy in the unit cube.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CooperativeStrategy {
    z: [Rational; COOP_DIM],
}

impl CooperativeStrategy {
    pub fn new(z: [Rational; COOP_DIM]) -> Result<Self, CournotError> {
        z.iter().try_for_each(check_unit)?;
        Ok(Self { z })
    }

    pub fn zero() -> Self {
        Self { z: std::array::from_fn(|_| Rational::zero()) }
    }

    pub fn components(&self) -> &[Rational; COOP_DIM] {
        &self.z
    }
}

/// A full strategy `(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoopetitiveTriple {
    pub s: BiStrategy,
    pub z: CooperativeStrategy,
}

/// How the players reach a target payoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecoveryMode {
    /// Cooperate on `z`, then play the Cournot-Nash bi-strategy.
    PurelyCoopetitive,
    /// Cooperate on `z` and on `(x, y)`, landing on the section boundary.
    SuperCooperative,
}

impl fmt::Display for RecoveryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PurelyCoopetitive => "purely-coopetitive",
            Self::SuperCooperative => "super-cooperative",
        })
    }
}

/// Which section-game set is swept by the cooperative strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SpaceBase {
    /// The maximal boundary segment `[e2, e1]`.
    #[default]
    ParetoBoundary,
    /// The whole conservative simplex.
    ConservativeSimplex,
}

/// `v(z) = Σ z_i (m_i, n_i)`.
pub fn translation_vector(g: &CoopetitiveGame, z: &CooperativeStrategy) -> Rational2 {
    g.generators()
        .iter()
        .zip(&z.z)
        .fold(Rational2::zero(), |acc, (gen, t)| &acc + &gen.scale(t))
}

pub fn payoff(g: &CoopetitiveGame, t: &CoopetitiveTriple) -> PayoffPair {
    &cournot::payoff_base(&t.s) + &translation_vector(g, &t.z)
}

fn base_region(base: SpaceBase) -> ConvexRegion {
    match base {
        SpaceBase::ParetoBoundary => {
            convex_hull(cournot::base_pareto_boundary().points()).expect("two points")
        }
        SpaceBase::ConservativeSimplex => cournot::conservative_part(),
    }
}

/// Union over the cube of the translated maximal boundaries.
pub fn coopetitive_space(g: &CoopetitiveGame) -> ConvexRegion {
    coopetitive_space_over(g, SpaceBase::ParetoBoundary)
}

pub fn coopetitive_space_over(g: &CoopetitiveGame, base: SpaceBase) -> ConvexRegion {
    minkowski_sum_with_segments(&base_region(base), &g.generators())
}

/// The intermediate sums after adding each generator in turn.
pub fn coopetitive_space_steps(g: &CoopetitiveGame, base: SpaceBase) -> Vec<ConvexRegion> {
    minkowski_steps(&base_region(base), &g.generators())
}

/// Hull of the simplex translated along the cube path
/// `0 → (1,0,0) → (1,1,0) → (1,1,1)`. It coincides with
/// `coopetitive_space_over(g, ConservativeSimplex)` only for some games.
pub fn corner_path_envelope(g: &CoopetitiveGame) -> ConvexRegion {
    let simplex = cournot::conservative_part();
    let gens = g.generators();
    let mut offset = Rational2::zero();
    let mut points: Vec<Rational2> = simplex.vertices().to_vec();
    for gen in &gens {
        offset = &offset + gen;
        points.extend(simplex.vertices().iter().map(|v| v + &offset));
    }
    convex_hull(&points).expect("non-empty")
}

/// Nash payoffs of all section games: `N' + Σ U(m_i, n_i)`.
pub fn nash_path(g: &CoopetitiveGame) -> ConvexRegion {
    minkowski_sum_with_segments(&ConvexRegion::point(cournot::nash_payoff()), &g.generators())
}

pub fn nash_path_steps(g: &CoopetitiveGame) -> Vec<ConvexRegion> {
    minkowski_steps(&ConvexRegion::point(cournot::nash_payoff()), &g.generators())
}

pub fn coopetitive_pareto_boundary(g: &CoopetitiveGame) -> ParetoFrontier {
    pareto_max_boundary(&coopetitive_space(g))
}

pub fn nash_path_pareto_boundary(g: &CoopetitiveGame) -> ParetoFrontier {
    pareto_max_boundary(&nash_path(g))
}

/// Bi-strategy `(x, 1/2 - x)`, whose Cournot payoff is `(2x, 1 - 2x)` on the
/// section boundary.
pub fn boundary_bistrategy(x: Rational) -> Result<BiStrategy, CournotError> {
    let y = rat(1, 2) - &x;
    BiStrategy::new(x, y)
}

/// A strategy triple whose payoff is exactly `target`.
///
/// Purely coopetitive: `(1/3, 1/3)` plus the minimum-norm `z` with
/// `v(z) = target - N'`. Super-cooperative: `(x, 1/2 - x)` plus the
/// minimum-norm `z` over all `x ∈ [0, 1/2]` with
/// `(2x, 1 - 2x) + v(z) = target`; `x` is then determined by `z`.
pub fn recover_strategy(g: &CoopetitiveGame, target: &Rational2, mode: RecoveryMode) -> Result<CoopetitiveTriple, CoopError> {
    let (own, other) = match mode {
        RecoveryMode::PurelyCoopetitive => (nash_path(g), coopetitive_space(g)),
        RecoveryMode::SuperCooperative => (coopetitive_space(g), nash_path(g)),
    };
    if !own.contains(target) {
        return Err(if other.contains(target) {
            CoopError::ModeRegionMismatch { target: target.clone(), mode }
        } else {
            CoopError::TargetNotReachable { target: target.clone(), mode }
        });
    }

    let unreachable = || CoopError::TargetNotReachable { target: target.clone(), mode };
    let m = g.m.to_vec();
    let n = g.n.to_vec();
    match mode {
        RecoveryMode::PurelyCoopetitive => {
            let (strategy, nash) = cournot::nash_equilibrium();
            let offset = target - &nash;
            let eq = [Constraint::new(m, offset.x), Constraint::new(n, offset.y)];
            let z = min_norm_point(COOP_DIM, &eq, &unit_box(COOP_DIM)).ok_or_else(unreachable)?;
            Ok(CoopetitiveTriple { s: strategy, z: to_strategy(z)? })
        }
        RecoveryMode::SuperCooperative => {
            // (2x, 1-2x) + v(z) = target  <=>  (m+n)·z = tx + ty - 1  and  x = (tx - m·z)/2,
            // with 0 <= x <= 1/2 turning into tx - 1 <= m·z <= tx
            let sum: Vec<Rational> = m.iter().zip(&n).map(|(a, b)| a + b).collect();
            let eq = [Constraint::new(sum, target.sum() - Rational::one())];
            let mut ineq = unit_box(COOP_DIM);
            ineq.push(Constraint::new(m.clone(), target.x.clone()));
            ineq.push(Constraint::new(
                m.iter().map(|v| -v).collect(),
                Rational::one() - &target.x,
            ));
            let z = min_norm_point(COOP_DIM, &eq, &ineq).ok_or_else(unreachable)?;
            let mz: Rational = m.iter().zip(&z).map(|(a, b)| a * b).sum();
            let x = (&target.x - mz) / int(2);
            Ok(CoopetitiveTriple { s: boundary_bistrategy(x)?, z: to_strategy(z)? })
        }
    }
}

fn to_strategy(z: Vec<Rational>) -> Result<CooperativeStrategy, CournotError> {
    let z: [Rational; COOP_DIM] = z.try_into().expect("solver returns COOP_DIM values");
    CooperativeStrategy::new(z)
}
