//! Pareto-maximal chains of convex regions and the queries the bargaining
//! solvers run on them.

use num_traits::{One, Zero};

use super::point::{on_segment, Rational2};
use super::rational::Rational;
use super::region::ConvexRegion;
use super::GeomError;

/// Maximal boundary of a convex region: a piecewise-linear chain ordered by
/// strictly decreasing second coordinate (and strictly increasing first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParetoFrontier {
    chain: Vec<Rational2>,
}

impl ParetoFrontier {
    /// Validates the chain ordering.
    pub fn from_chain(chain: Vec<Rational2>) -> Result<Self, GeomError> {
        if chain.is_empty() {
            return Err(GeomError::EmptyFrontier);
        }
        let monotone = chain.windows(2).all(|w| w[0].x < w[1].x && w[0].y > w[1].y);
        if !monotone {
            return Err(GeomError::InvalidChain);
        }
        Ok(Self { chain })
    }

    pub fn single(point: Rational2) -> Self {
        Self { chain: vec![point] }
    }

    pub fn points(&self) -> &[Rational2] {
        &self.chain
    }

    pub fn first(&self) -> &Rational2 {
        &self.chain[0]
    }

    pub fn last(&self) -> &Rational2 {
        &self.chain[self.chain.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Consecutive breakpoint pairs; empty for a single-point chain.
    pub fn segments(&self) -> impl Iterator<Item = (&Rational2, &Rational2)> {
        self.chain.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn translate(&self, offset: &Rational2) -> Self {
        Self {
            chain: self.chain.iter().map(|p| p + offset).collect(),
        }
    }

    /// Whether `p` lies on the chain.
    pub fn contains(&self, p: &Rational2) -> bool {
        if self.chain.len() == 1 {
            return &self.chain[0] == p;
        }
        self.segments().any(|(a, b)| on_segment(a, b, p))
    }

    /// Point of the chain at parameter `s ∈ [0, 1]` of the segment with index
    /// `segment`; used by samplers.
    pub fn point_on_segment(&self, segment: usize, s: &Rational) -> Rational2 {
        if self.chain.len() == 1 {
            return self.chain[0].clone();
        }
        Rational2::lerp(&self.chain[segment], &self.chain[segment + 1], s)
    }

    /// Largest second coordinate among chain points whose first coordinate is
    /// at least `x`, or `None` when the chain lies entirely left of `x`.
    pub fn height_from(&self, x: &Rational) -> Option<Rational> {
        if x <= &self.first().x {
            return Some(self.first().y.clone());
        }
        if x > &self.last().x {
            return None;
        }
        self.segments()
            .find(|(a, b)| &a.x <= x && x <= &b.x)
            .map(|(a, b)| {
                let t = (x - &a.x) / (&b.x - &a.x);
                &a.y + t * (&b.y - &a.y)
            })
    }
}

/// Points of the region not strictly dominated by another region point.
///
/// Walks the counterclockwise boundary from the rightmost-then-highest vertex
/// to the highest-then-rightmost one and reverses it, so the chain starts at
/// the top.
pub fn pareto_max_boundary(region: &ConvexRegion) -> ParetoFrontier {
    let vs = region.vertices();
    let right = (0..vs.len())
        .max_by(|&i, &j| (&vs[i].x, &vs[i].y).cmp(&(&vs[j].x, &vs[j].y)))
        .unwrap();
    let top = (0..vs.len())
        .max_by(|&i, &j| (&vs[i].y, &vs[i].x).cmp(&(&vs[j].y, &vs[j].x)))
        .unwrap();
    let mut chain = Vec::new();
    let mut i = right;
    loop {
        chain.push(vs[i].clone());
        if i == top {
            break;
        }
        i = (i + 1) % vs.len();
    }
    chain.reverse();
    ParetoFrontier { chain }
}

/// Component-wise supremum of the breakpoints.
pub fn supremum(frontier: &ParetoFrontier) -> Rational2 {
    // first point has the largest y, last the largest x
    Rational2::new(frontier.last().x.clone(), frontier.first().y.clone())
}

/// Component-wise infimum of the breakpoints.
pub fn infimum(frontier: &ParetoFrontier) -> Rational2 {
    Rational2::new(frontier.first().x.clone(), frontier.last().y.clone())
}

/// Restriction of the chain to points weakly dominating `threat`, with the
/// ends clipped exactly on the lines `x = threat.x` and `y = threat.y`.
pub fn frontier_above(frontier: &ParetoFrontier, threat: &Rational2) -> Result<ParetoFrontier, GeomError> {
    let inside = |p: &Rational2| p.weakly_dominates(threat);
    let mut clipped: Vec<Rational2> = Vec::new();
    let mut push = |p: Rational2| {
        if clipped.last() != Some(&p) {
            clipped.push(p);
        }
    };

    if frontier.len() == 1
        && inside(frontier.first()) {
            push(frontier.first().clone());
        }
    for (a, b) in frontier.segments() {
        // x increases and y decreases along the segment, so the admissible
        // parameter range is an interval [lo, hi] cut by the two lines.
        let dx = &b.x - &a.x;
        let dy = &b.y - &a.y;
        let lo = ((&threat.x - &a.x) / &dx).max(Rational::zero());
        let hi = ((&threat.y - &a.y) / &dy).min(Rational::one());
        if lo > hi {
            continue;
        }
        push(Rational2::lerp(a, b, &lo));
        push(Rational2::lerp(a, b, &hi));
    }

    if clipped.is_empty() {
        return Err(GeomError::ThreatDominatesFrontier);
    }
    Ok(ParetoFrontier { chain: clipped })
}

/// Unique intersection of the segment `[a, b]` with the chain.
pub fn intersect_segment_chain(a: &Rational2, b: &Rational2, frontier: &ParetoFrontier) -> Result<Rational2, GeomError> {
    if a == b {
        return Err(GeomError::DegenerateSegment);
    }
    let mut hits: Vec<Rational2> = Vec::new();
    let mut record = |p: Rational2| {
        if !hits.contains(&p) {
            hits.push(p);
        }
    };

    if frontier.len() == 1
        && on_segment(a, b, frontier.first()) {
            record(frontier.first().clone());
        }
    for (c, d) in frontier.segments() {
        match segment_intersection(a, b, c, d) {
            SegmentHit::None => {}
            SegmentHit::Point(p) => record(p),
            SegmentHit::Overlap => return Err(GeomError::NonUniqueIntersection),
        }
    }

    match hits.len() {
        0 => Err(GeomError::NoIntersection),
        1 => Ok(hits.pop().unwrap()),
        _ => Err(GeomError::NonUniqueIntersection),
    }
}

enum SegmentHit {
    None,
    Point(Rational2),
    Overlap,
}

fn segment_intersection(a: &Rational2, b: &Rational2, c: &Rational2, d: &Rational2) -> SegmentHit {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(&s);
    let ac = c - a;
    if denom.is_zero() {
        if !ac.cross(&r).is_zero() {
            return SegmentHit::None;
        }
        // collinear: project c and d on [a, b]
        let rr = r.dot(&r);
        let t0 = ac.dot(&r) / &rr;
        let t1 = (d - a).dot(&r) / &rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(Rational::zero());
        let hi = hi.min(Rational::one());
        return if lo > hi {
            SegmentHit::None
        } else if lo == hi {
            SegmentHit::Point(Rational2::lerp(a, b, &lo))
        } else {
            SegmentHit::Overlap
        };
    }
    let t = ac.cross(&s) / &denom;
    let u = ac.cross(&r) / &denom;
    let unit = Rational::zero()..=Rational::one();
    if unit.contains(&t) && unit.contains(&u) {
        SegmentHit::Point(Rational2::lerp(a, b, &t))
    } else {
        SegmentHit::None
    }
}

/// Exact check that `p` sits on segment `[a, b]` and on the chain.
pub fn lies_on_both(a: &Rational2, b: &Rational2, frontier: &ParetoFrontier, p: &Rational2) -> bool {
    on_segment(a, b, p) && frontier.contains(p)
}
