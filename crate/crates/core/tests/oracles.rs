//! Brute-force oracles for the derived constants. Nothing here goes through
//! the hull, Pareto or bargaining code paths that the constants are checked
//! against; regions are rebuilt from corner sums and searched on grids.

use coopetitive_core::coopetition::{self, CoopetitiveGame, CoopetitiveTriple, CooperativeStrategy, RecoveryMode};
use coopetitive_core::cournot;
use coopetitive_core::geom2d::{int, rat, Rational, Rational2};
use coopetitive_core::{bargaining, geom2d};

mod common;
use common::{brute_inside, brute_vertices, corner_sums};

fn example() -> CoopetitiveGame {
    CoopetitiveGame::from_ints([-1, 1, 1], [2, 1, -1])
}

fn q(xn: i64, xd: i64, yn: i64, yd: i64) -> Rational2 {
    Rational2::new(rat(xn, xd), rat(yn, yd))
}

fn nondominated(pts: &[Rational2]) -> Vec<Rational2> {
    let mut out: Vec<Rational2> = pts
        .iter()
        .filter(|p| !pts.iter().any(|q| q.dominates(p)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn twelve_point_hull_matches_brute_force() {
    let gens = example().generators();
    let points = corner_sums(&[Rational2::from_ints(1, 0), Rational2::from_ints(0, 1)], &gens);
    let mut expected = brute_vertices(&points);
    expected.sort();
    let mut got = geom2d::convex_hull(&points).unwrap().into_vertices();
    got.sort();
    assert_eq!(got, expected);
    assert!(got.contains(&Rational2::from_ints(0, 4)));
    assert!(got.contains(&Rational2::from_ints(3, 0)));
}

#[test]
fn nash_hexagon_matches_brute_force() {
    let gens = example().generators();
    let corners = corner_sums(&[cournot::nash_payoff()], &gens);
    let mut expected = brute_vertices(&corners);
    expected.sort();
    let mut got = coopetition::nash_path(&example()).into_vertices();
    got.sort();
    assert_eq!(got, expected);

    // every point of a 21^3 grid of t lands inside the hull
    let hull = coopetition::nash_path(&example());
    let n = cournot::nash_payoff();
    for i in 0..=20 {
        for j in 0..=20 {
            for k in 0..=20 {
                let t = [rat(i, 20), rat(j, 20), rat(k, 20)];
                let p = gens
                    .iter()
                    .zip(&t)
                    .fold(n.clone(), |acc, (g, t)| &acc + &g.scale(t));
                assert!(hull.contains(&p), "{p}");
            }
        }
    }
}

#[test]
fn pareto_chains_match_nondominated_corners() {
    // the maximal boundary of a zonotope is spanned by nondominated corner sums
    let g = example();
    let gens = g.generators();
    let m2 = [Rational2::from_ints(0, 1), Rational2::from_ints(1, 0)];
    let coop = nondominated(&corner_sums(&m2, &gens));
    let coop_vertices: Vec<_> = coop.into_iter().filter(|p| brute_vertices(&corner_sums(&m2, &gens)).contains(p)).collect();
    assert_eq!(coopetition::coopetitive_pareto_boundary(&g).points(), coop_vertices.as_slice());

    let nash = nondominated(&corner_sums(&[cournot::nash_payoff()], &gens));
    assert_eq!(
        nash,
        vec![q(4, 9, 31, 9), q(13, 9, 22, 9), q(22, 9, 4, 9)]
    );
    assert_eq!(coopetition::nash_path_pareto_boundary(&g).points(), nash.as_slice());
}

#[test]
fn h_by_grid_search_along_the_ks_ray() {
    // Largest t on a 1/700 grid with N' + t (U - N') inside the Nash path,
    // where U = (22/9, 31/9) is the component-wise max of the nondominated corners.
    let corners = brute_vertices(&corner_sums(&[cournot::nash_payoff()], &example().generators()));
    let n = cournot::nash_payoff();
    let utopia = q(22, 9, 31, 9);
    let last_inside = (0..=700)
        .map(|k| rat(k, 700))
        .rfind(|t| brute_inside(&corners, &Rational2::lerp(&n, &utopia, t)))
        .unwrap();
    assert_eq!(last_inside, rat(4, 7));
    let h = Rational2::lerp(&n, &utopia, &last_inside);
    assert_eq!(h, q(100, 63, 136, 63));

    let problem = bargaining::BargainingProblem::new(coopetition::nash_path_pareto_boundary(&example()), n).unwrap();
    assert_eq!(bargaining::kalai_smorodinsky(&problem).unwrap(), h);
}

#[test]
fn k_by_grid_search_along_the_diagonal() {
    let g = example();
    let corners = brute_vertices(&corner_sums(
        &[Rational2::from_ints(0, 1), Rational2::from_ints(1, 0)],
        &g.generators(),
    ));
    let sup = Rational2::from_ints(3, 4);
    let last_inside = (0..=700)
        .map(|k| rat(k, 700))
        .rfind(|t| brute_inside(&corners, &sup.scale(t)))
        .unwrap();
    assert_eq!(sup.scale(&last_inside), q(12, 7, 16, 7));
}

#[test]
fn tu_ks_by_direct_substitution() {
    // (4/9 + 2t) + (4/9 + 3t) = 35/9  =>  t = 3/5
    let t = (rat(35, 9) - rat(8, 9)) / int(5);
    assert_eq!(t, rat(3, 5));
    let point = Rational2::new(rat(4, 9) + int(2) * &t, rat(4, 9) + int(3) * &t);
    assert_eq!(point, q(74, 45, 101, 45));
    let line = bargaining::tu_boundary(&coopetition::nash_path_pareto_boundary(&example()));
    assert_eq!(
        bargaining::tu_ks_solution(&line, &cournot::nash_payoff(), &q(22, 9, 31, 9)).unwrap(),
        point
    );
}

#[test]
fn h_triple_is_the_unique_grid_hit() {
    let g = example();
    let (s, _) = cournot::nash_equilibrium();
    let h = q(100, 63, 136, 63);
    let mut hits = Vec::new();
    for i in 0..=7 {
        for j in 0..=7 {
            for k in 0..=7 {
                let z = CooperativeStrategy::new([rat(i, 7), rat(j, 7), rat(k, 7)]).unwrap();
                let t = CoopetitiveTriple { s: s.clone(), z };
                if coopetition::payoff(&g, &t) == h {
                    hits.push(t.z);
                }
            }
        }
    }
    assert_eq!(hits, vec![CooperativeStrategy::new([rat(6, 7), int(1), int(1)]).unwrap()]);
    let recovered = coopetition::recover_strategy(&g, &h, RecoveryMode::PurelyCoopetitive).unwrap();
    assert_eq!(recovered.z, hits[0]);
}

#[test]
fn nash_bargaining_by_grid_search() {
    // 10^4 samples on each chain segment of (0,4),(2,2),(3,0)
    let chain = [Rational2::from_ints(0, 4), Rational2::from_ints(2, 2), Rational2::from_ints(3, 0)];
    for alpha in [Rational2::zero(), cournot::nash_payoff()] {
        let mut best: Option<(Rational, Rational2)> = None;
        for w in chain.windows(2) {
            for k in 0..=5000 {
                let p = Rational2::lerp(&w[0], &w[1], &rat(k, 5000));
                if p.x < alpha.x || p.y < alpha.y {
                    continue;
                }
                let v = (&p.x - &alpha.x) * (&p.y - &alpha.y);
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, p));
                }
            }
        }
        let (_, argmax) = best.unwrap();
        assert_eq!(argmax, Rational2::from_ints(2, 2));
        let frontier = coopetition::coopetitive_pareto_boundary(&example());
        assert_eq!(bargaining::nash_bargaining(&frontier, &alpha).unwrap(), argmax);
    }
}

#[test]
fn best_response_by_grid_search() {
    let grid: Vec<Rational> = (0..=300).map(|i| rat(i, 300)).collect();
    for y in [int(0), rat(1, 3), int(1)] {
        let argmax = grid
            .iter()
            .max_by(|a, b| {
                cournot::cournot_payoff(a, &y).x.cmp(&cournot::cournot_payoff(b, &y).x)
            })
            .unwrap();
        assert_eq!(*argmax, cournot::best_response_c(&y).unwrap());
    }
}
