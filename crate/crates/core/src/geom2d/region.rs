use num_traits::Signed;

use super::point::{on_segment, orient, Rational2};
use super::GeomError;

/// Convex polygon stored by its vertices.
///
/// Canonical form: strictly counterclockwise, no three consecutive vertices
/// collinear, lexicographically smallest vertex first. A single point and a
/// segment (smaller endpoint first) are valid degenerate regions. Two regions
/// are equal as sets iff their vertex lists are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexRegion {
    vertices: Vec<Rational2>,
}

impl ConvexRegion {
    pub fn point(p: Rational2) -> Self {
        Self { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[Rational2] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Rational2> {
        self.vertices
    }

    /// Closed-set membership.
    pub fn contains(&self, p: &Rational2) -> bool {
        match self.vertices.as_slice() {
            [only] => only == p,
            [a, b] => on_segment(a, b, p),
            vs => vs
                .iter()
                .zip(vs.iter().cycle().skip(1))
                .all(|(a, b)| !orient(a, b, p).is_negative()),
        }
    }

    pub fn translate(&self, offset: &Rational2) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v + offset).collect(),
        }
    }

    /// Component-wise lower and upper corners of the bounding box.
    pub fn bounds(&self) -> (Rational2, Rational2) {
        let first = &self.vertices[0];
        self.vertices[1..].iter().fold(
            (first.clone(), first.clone()),
            |(lo, hi), v| (lo.component_min(v), hi.component_max(v)),
        )
    }
}

/// Convex hull in canonical form (monotone chain, exact predicates).
pub fn convex_hull(points: &[Rational2]) -> Result<ConvexRegion, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyPointSet);
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() < 3 {
        return Ok(ConvexRegion { vertices: sorted });
    }

    let mut lower: Vec<Rational2> = Vec::with_capacity(sorted.len());
    for p in &sorted {
        while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Rational2> = Vec::with_capacity(sorted.len());
    for p in sorted.iter().rev() {
        while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // all input points collinear: the chains collapse to the two extremes
    Ok(ConvexRegion { vertices: lower })
}

/// `{ b + Σ t_i g_i : b ∈ base, t_i ∈ [0, 1] }`, built one segment at a time.
/// Zero generators are skipped; generator order does not affect the result.
pub fn minkowski_sum_with_segments(base: &ConvexRegion, generators: &[Rational2]) -> ConvexRegion {
    generators
        .iter()
        .filter(|g| !g.is_zero())
        .fold(base.clone(), |region, g| {
            let mut points = region.vertices.clone();
            points.extend(region.vertices.iter().map(|v| v + g));
            convex_hull(&points).expect("non-empty by construction")
        })
}

/// Prefix sums of a generator list: `[base, base+U(g1), base+U(g1)+U(g2), ...]`.
pub fn minkowski_steps(base: &ConvexRegion, generators: &[Rational2]) -> Vec<ConvexRegion> {
    let mut steps = vec![base.clone()];
    for g in generators {
        let next = minkowski_sum_with_segments(steps.last().unwrap(), std::slice::from_ref(g));
        steps.push(next);
    }
    steps
}
