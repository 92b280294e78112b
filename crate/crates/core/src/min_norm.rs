//! Minimum-norm point of a small polytope `{ z : E z = e, G z <= h }`.
//!
//! The objective `|z|^2` is strictly convex, so the minimizer is unique. It is
//! the minimum-norm point of the affine set cut out by the equalities plus the
//! inequalities active at the optimum. We enumerate every subset of
//! inequalities as a candidate active set, solve each equality system for its
//! minimum-norm solution exactly, and keep the feasible candidate of least
//! norm (ties, which cannot occur for a strictly convex objective, fall back
//! to lexicographic order).

use num_traits::Zero;

use crate::geom2d::Rational;

/// Linear constraint `coeffs · z (= or <=) rhs`.
#[derive(Debug, Clone)]
pub(crate) struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self { coeffs, rhs }
    }

    fn value(&self, z: &[Rational]) -> Rational {
        self.coeffs.iter().zip(z).map(|(a, b)| a * b).sum()
    }
}

pub(crate) fn min_norm_point(dim: usize, equalities: &[Constraint], inequalities: &[Constraint]) -> Option<Vec<Rational>> {
    assert!(inequalities.len() < 24, "active-set enumeration is exponential");
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for mask in 0u32..(1 << inequalities.len()) {
        let mut rows: Vec<&Constraint> = equalities.iter().collect();
        rows.extend(
            inequalities
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, c)| c),
        );
        let Some(z) = min_norm_solution(dim, &rows) else {
            continue;
        };
        let feasible = inequalities.iter().all(|c| c.value(&z) <= c.rhs);
        if !feasible {
            continue;
        }
        let norm: Rational = z.iter().map(|v| v * v).sum();
        let better = match &best {
            None => true,
            Some((best_norm, best_z)) => norm < *best_norm || (norm == *best_norm && z < *best_z),
        };
        if better {
            best = Some((norm, z));
        }
    }
    best.map(|(_, z)| z)
}

/// Minimum-norm solution of `A z = b`, or `None` when inconsistent.
fn min_norm_solution(dim: usize, rows: &[&Constraint]) -> Option<Vec<Rational>> {
    // Row-reduce [A | b]; the surviving rows span the same affine set.
    let mut reduced: Vec<Vec<Rational>> = rows
        .iter()
        .map(|c| {
            let mut row = c.coeffs.clone();
            row.push(c.rhs.clone());
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..reduced.len()).find(|&r| !reduced[r][col].is_zero()) else {
            continue;
        };
        reduced.swap(rank, pivot);
        let lead = reduced[rank][col].clone();
        for v in reduced[rank].iter_mut() {
            *v /= &lead;
        }
        for r in 0..reduced.len() {
            if r != rank && !reduced[r][col].is_zero() {
                let factor = reduced[r][col].clone();
                for c in 0..=dim {
                    let delta = &factor * &reduced[rank][c];
                    reduced[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    if reduced[rank..].iter().any(|row| !row[dim].is_zero()) {
        return None;
    }
    reduced.truncate(rank);
    if rank == 0 {
        return Some(vec![Rational::zero(); dim]);
    }

    // z = R^T w with (R R^T) w = c
    let mut gram: Vec<Vec<Rational>> = (0..rank)
        .map(|i| {
            let mut row: Vec<Rational> = (0..rank)
                .map(|j| (0..dim).map(|k| &reduced[i][k] * &reduced[j][k]).sum())
                .collect();
            row.push(reduced[i][dim].clone());
            row
        })
        .collect();
    let w = solve_square(&mut gram, rank);
    Some(
        (0..dim)
            .map(|k| (0..rank).map(|i| &reduced[i][k] * &w[i]).sum())
            .collect(),
    )
}

/// Gauss-Jordan on a nonsingular augmented `n × (n+1)` system.
fn solve_square(aug: &mut [Vec<Rational>], n: usize) -> Vec<Rational> {
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("gram matrix of independent rows is nonsingular");
        aug.swap(col, pivot);
        let lead = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v /= &lead;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in 0..=n {
                    let delta = &factor * &aug[col][c];
                    aug[r][c] -= delta;
                }
            }
        }
    }
    aug.iter().map(|row| row[n].clone()).collect()
}

/// `0 <= z_i <= 1` for every coordinate.
pub(crate) fn unit_box(dim: usize) -> Vec<Constraint> {
    let mut out = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let mut lower = vec![Rational::zero(); dim];
        lower[i] = -Rational::from_integer(1.into());
        out.push(Constraint::new(lower, Rational::zero()));
        let mut upper = vec![Rational::zero(); dim];
        upper[i] = Rational::from_integer(1.into());
        out.push(Constraint::new(upper, Rational::from_integer(1.into())));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom2d::{int, rat};

    fn c(coeffs: &[i64], rhs: Rational) -> Constraint {
        Constraint::new(coeffs.iter().map(|&v| int(v)).collect(), rhs)
    }

    #[test]
    fn unconstrained_is_origin() {
        assert_eq!(min_norm_point(3, &[], &unit_box(3)), Some(vec![int(0); 3]));
    }

    #[test]
    fn projection_onto_a_plane() {
        // x + y + z = 1 -> (1/3, 1/3, 1/3)
        let z = min_norm_point(3, &[c(&[1, 1, 1], int(1))], &unit_box(3)).unwrap();
        assert_eq!(z, vec![rat(1, 3); 3]);
    }

    #[test]
    fn box_pushes_the_solution() {
        // x - y = 3/2 needs x >= 3/2 once y >= 0
        assert_eq!(min_norm_point(2, &[c(&[1, -1], rat(3, 2))], &unit_box(2)), None);
        // x - y = 1/2 -> (1/4,-1/4) infeasible; optimum on y = 0: (1/2, 0)
        assert_eq!(
            min_norm_point(2, &[c(&[1, -1], rat(1, 2))], &unit_box(2)),
            Some(vec![rat(1, 2), int(0)])
        );
    }

    #[test]
    fn redundant_and_inconsistent_rows() {
        let eq = [c(&[1, 1], int(1)), c(&[2, 2], int(2))];
        assert_eq!(min_norm_point(2, &eq, &unit_box(2)), Some(vec![rat(1, 2), rat(1, 2)]));
        let bad = [c(&[1, 1], int(1)), c(&[1, 1], int(2))];
        assert_eq!(min_norm_point(2, &bad, &unit_box(2)), None);
    }

    #[test]
    fn brute_force_agreement() {
        // -z1 + z2 + z3 = a, 2 z1 + z2 - z3 = b on a grid of right-hand sides,
        // checked against a 1/60 grid search over the one-dimensional solution line
        let eq_rows = |a: Rational, b: Rational| [c(&[-1, 1, 1], a), c(&[2, 1, -1], b)];
        for (a, b) in [(rat(1, 2), rat(1, 2)), (int(0), int(1)), (rat(1, 3), rat(-1, 3)), (int(1), int(1))] {
            let got = min_norm_point(3, &eq_rows(a.clone(), b.clone()), &unit_box(3)).unwrap();
            // null space direction (-2, 1, -3); particular solution with z2 = 0:
            // -z1 + z3 = a, 2 z1 - z3 = b -> z1 = a + b, z3 = 2a + b
            let base = [&a + &b, int(0), int(2) * &a + &b];
            let mut best: Option<Rational> = None;
            for k in -120..=120 {
                let s = rat(k, 60);
                let z = [&base[0] - int(2) * &s, s.clone(), &base[2] - int(3) * &s];
                if z.iter().all(|v| v >= &int(0) && v <= &int(1)) {
                    let n: Rational = z.iter().map(|v| v * v).sum();
                    if best.as_ref().is_none_or(|b| n < *b) {
                        best = Some(n);
                    }
                }
            }
            let got_norm: Rational = got.iter().map(|v| v * v).sum();
            assert!(got_norm <= best.unwrap());
        }
    }
}
