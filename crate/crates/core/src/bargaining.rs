//! Bargaining solutions on Pareto chains: Kalai-Smorodinsky, Nash, the
//! transferable-utility line and its KS point, and sunk-cost shifts.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::geom2d::{
    frontier_above, int, intersect_segment_chain, supremum, GeomError, ParetoFrontier, Rational,
    Rational2,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BargainError {
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error("alpha dominates frontier")]
    AlphaDominatesFrontier,
    #[error("segment does not reach TU line")]
    SegmentMissesTuLine,
    #[error("negative sunk cost {0}")]
    NegativeCost(Rational2),
}

/// Frontier plus disagreement point, with some frontier point weakly
/// dominating the threat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BargainingProblem {
    frontier: ParetoFrontier,
    threat: Rational2,
}

impl BargainingProblem {
    pub fn new(frontier: ParetoFrontier, threat: Rational2) -> Result<Self, BargainError> {
        frontier_above(&frontier, &threat)?;
        Ok(Self { frontier, threat })
    }

    pub fn frontier(&self) -> &ParetoFrontier {
        &self.frontier
    }

    pub fn threat(&self) -> &Rational2 {
        &self.threat
    }

    /// Supremum of the frontier part above the threat.
    pub fn utopia(&self) -> Rational2 {
        let above = frontier_above(&self.frontier, &self.threat).expect("checked at construction");
        supremum(&above)
    }
}

/// The line `X + Y = level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TULine {
    pub level: Rational,
}

/// Intersection of the frontier part above the threat with the segment from
/// the threat to that part's supremum.
pub fn kalai_smorodinsky(p: &BargainingProblem) -> Result<Rational2, BargainError> {
    let above = frontier_above(&p.frontier, &p.threat)?;
    let utopia = supremum(&above);
    if utopia == p.threat {
        // the threat itself is the only admissible frontier point
        return Ok(utopia);
    }
    Ok(intersect_segment_chain(&p.threat, &utopia, &above)?)
}

/// Frontier point maximizing `(X - α1)(Y - α2)` over the part of the frontier
/// weakly above `alpha`. Ties go to the smaller `X`.
pub fn nash_bargaining(frontier: &ParetoFrontier, alpha: &Rational2) -> Result<Rational2, BargainError> {
    let above = frontier_above(frontier, alpha).map_err(|_| BargainError::AlphaDominatesFrontier)?;
    if !above.points().iter().any(|p| p.dominates(alpha)) {
        return Err(BargainError::AlphaDominatesFrontier);
    }
    let product = |p: &Rational2| (&p.x - &alpha.x) * (&p.y - &alpha.y);

    let mut candidates: Vec<Rational2> = above.points().to_vec();
    for (a, b) in above.segments() {
        // (u + t dx)(v + t dy) is concave in t since dx > 0 > dy
        let dx = &b.x - &a.x;
        let dy = &b.y - &a.y;
        let u = &a.x - &alpha.x;
        let v = &a.y - &alpha.y;
        let t = -(&u * &dy + &v * &dx) / (int(2) * &dx * &dy);
        if t > Rational::zero() && t < Rational::one() {
            candidates.push(Rational2::lerp(a, b, &t));
        }
    }

    let best = candidates
        .into_iter()
        .map(|p| (product(&p), p))
        .reduce(|best, next| {
            if next.0 > best.0 || (next.0 == best.0 && next.1.x < best.1.x) {
                next
            } else {
                best
            }
        })
        .expect("non-empty frontier");
    Ok(best.1)
}

/// Supporting line of slope -1: `X + Y = max` over the breakpoints.
pub fn tu_boundary(frontier: &ParetoFrontier) -> TULine {
    let level = frontier
        .points()
        .iter()
        .map(Rational2::sum)
        .max()
        .expect("non-empty frontier");
    TULine { level }
}

/// Where the segment `[threat, utopia]` crosses the TU line.
pub fn tu_ks_solution(line: &TULine, threat: &Rational2, utopia: &Rational2) -> Result<Rational2, BargainError> {
    let start = threat.sum();
    let end = utopia.sum();
    if start == line.level {
        return Ok(threat.clone());
    }
    if start > line.level || end < line.level {
        return Err(BargainError::SegmentMissesTuLine);
    }
    let t = (&line.level - &start) / (&end - &start);
    Ok(Rational2::lerp(threat, utopia, &t))
}

/// Part of the TU line inside the frontier's bounding box `[inf, sup]`: the
/// payoffs reachable from the frontier by side payments without leaving the
/// range of either player's frontier payoffs.
pub fn tu_feasible_segment(frontier: &ParetoFrontier, line: &TULine) -> (Rational2, Rational2) {
    let left = frontier.first();
    let right = frontier.last();
    let x_lo = left.x.clone().max(&line.level - &left.y);
    let x_hi = right.x.clone().min(&line.level - &right.y);
    let on_line = |x: Rational| {
        let y = &line.level - &x;
        Rational2::new(x, y)
    };
    (on_line(x_lo), on_line(x_hi))
}

/// `solution - bicost`.
pub fn apply_sunk_costs(solution: &Rational2, bicost: &Rational2) -> Result<Rational2, BargainError> {
    if bicost.x < Rational::zero() || bicost.y < Rational::zero() {
        return Err(BargainError::NegativeCost(bicost.clone()));
    }
    Ok(solution - bicost)
}

/// Component-wise `a >= b` with at least one strict inequality.
pub fn dominates(a: &Rational2, b: &Rational2) -> bool {
    a.dominates(b)
}
