//! The base section game: a symmetric Cournot duopoly on the unit square with
//! payoffs `4x(1 - x - y)` for the country and `4y(1 - x - y)` for the rest of
//! the world.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::geom2d::{convex_hull, int, rat, ConvexRegion, ParetoFrontier, Rational, Rational2};

/// Scale of both Cournot payoffs.
pub const PAYOFF_SCALE: i64 = 4;

/// Payoff pair `(u_c, u_w)`: `x` is the country's payoff, `y` the rest of the
/// world's.
pub type PayoffPair = Rational2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CournotError {
    #[error("strategy out of bounds: {0} is not in [0,1]")]
    StrategyOutOfBounds(String),
    #[error("resolution must be at least 2, got {0}")]
    Resolution(usize),
}

pub(crate) fn check_unit(value: &Rational) -> Result<(), CournotError> {
    if value < &Rational::zero() || value > &Rational::one() {
        return Err(CournotError::StrategyOutOfBounds(crate::geom2d::to_exact(value)));
    }
    Ok(())
}

/// Production levels `(x, y)` in the unit square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiStrategy {
    x: Rational,
    y: Rational,
}

impl BiStrategy {
    pub fn new(x: Rational, y: Rational) -> Result<Self, CournotError> {
        check_unit(&x)?;
        check_unit(&y)?;
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn as_point(&self) -> Rational2 {
        Rational2::new(self.x.clone(), self.y.clone())
    }
}

/// Cournot payoffs at an arbitrary pair, without bounds checking.
pub fn cournot_payoff(x: &Rational, y: &Rational) -> PayoffPair {
    let slack = Rational::one() - x - y;
    let scale = int(PAYOFF_SCALE);
    Rational2::new(&scale * x * &slack, &scale * y * &slack)
}

pub fn payoff_base(s: &BiStrategy) -> PayoffPair {
    cournot_payoff(&s.x, &s.y)
}

fn clamp_unit(value: Rational) -> Rational {
    value.max(Rational::zero()).min(Rational::one())
}

/// Country's best reply `argmax_x 4x(1 - x - y) = (1 - y)/2`, clamped to `[0,1]`.
pub fn best_response_c(y: &Rational) -> Result<Rational, CournotError> {
    check_unit(y)?;
    Ok(clamp_unit((Rational::one() - y) / int(2)))
}

/// Rest of the world's best reply, by symmetry.
pub fn best_response_w(x: &Rational) -> Result<Rational, CournotError> {
    best_response_c(x)
}

/// Unique fixed point of the best replies and its payoff.
///
/// The reply lines `2x + y = 1` and `x + 2y = 1` meet at `x = y = 1/3`,
/// inside the square where no clamping is active.
pub fn nash_equilibrium() -> (BiStrategy, PayoffPair) {
    // Cramer on [[2,1],[1,2]] (x,y) = (1,1)
    let det = int(3);
    let x = (int(2) - int(1)) / &det;
    let y = (int(2) - int(1)) / &det;
    let strategy = BiStrategy::new(x, y).expect("interior equilibrium");
    debug_assert_eq!(best_response_c(strategy.y()).unwrap(), *strategy.x());
    let payoff = payoff_base(&strategy);
    (strategy, payoff)
}

pub fn nash_payoff() -> PayoffPair {
    nash_equilibrium().1
}

/// Part of the payoff image weakly above the conservative bi-value `(0,0)`:
/// the triangle with vertices `0`, `e1`, `e2`.
pub fn conservative_part() -> ConvexRegion {
    convex_hull(&[
        Rational2::zero(),
        payoff_base(&monopoly_c()),
        payoff_base(&monopoly_w()),
    ])
    .expect("three points")
}

/// Country produces the monopoly quantity, the rest of the world nothing.
pub fn monopoly_c() -> BiStrategy {
    BiStrategy { x: rat(1, 2), y: Rational::zero() }
}

pub fn monopoly_w() -> BiStrategy {
    BiStrategy { x: Rational::zero(), y: rat(1, 2) }
}

/// Maximal boundary `[e2, e1]` of the section payoff space.
pub fn base_pareto_boundary() -> ParetoFrontier {
    ParetoFrontier::from_chain(vec![payoff_base(&monopoly_w()), payoff_base(&monopoly_c())])
        .expect("e2 above-left of e1")
}

/// Payoffs on the uniform `resolution × resolution` grid of the square, row
/// major (`x` outer, `y` inner).
pub fn sample_payoff_image(resolution: usize) -> Result<Vec<PayoffPair>, CournotError> {
    if resolution < 2 {
        return Err(CournotError::Resolution(resolution));
    }
    let step = Rational::new((1).into(), ((resolution - 1) as i64).into());
    let grid: Vec<Rational> = (0..resolution).map(|i| &step * int(i as i64)).collect();
    Ok(grid
        .iter()
        .flat_map(|x| grid.iter().map(move |y| cournot_payoff(x, y)))
        .collect())
}
