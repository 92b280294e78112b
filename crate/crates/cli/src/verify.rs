//! Sampling oracles run against a configured game. Every check is exact; the
//! sampling only decides which points get checked.

use std::fmt;

use coopetitive_core::bargaining::{self, BargainingProblem};
use coopetitive_core::coopetition::{self, CoopetitiveGame, RecoveryMode};
use coopetitive_core::cournot;
use coopetitive_core::geom2d::{
    infimum, lies_on_both, on_segment, orient, rat, ConvexRegion, ParetoFrontier, Rational,
    Rational2,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::GameConfig;
use crate::report::{analyze, AnalysisError};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const SAMPLES: usize = 10_000;
pub const RECOVERY_SAMPLES: usize = 100;
pub const TRANSLATIONS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    /// First counterexample found, if any.
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: impl Into<String>, samples: usize, witness: Option<String>) -> Self {
        Self { name: name.into(), passed: witness.is_none(), samples, witness }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {} ({} samples)", self.name, self.samples)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationSummary {
    pub checks: Vec<CheckResult>,
}

impl VerificationSummary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs `check` on `samples` draws and keeps the first failure.
fn sampled<T>(
    name: &str,
    samples: usize,
    mut draw: impl FnMut() -> T,
    mut check: impl FnMut(&T) -> Option<String>,
) -> CheckResult {
    let witness = (0..samples).find_map(|_| check(&draw()));
    CheckResult::new(name, samples, witness)
}

fn grid_value(rng: &mut ChaCha8Rng, resolution: usize) -> Rational {
    let steps = (resolution - 1) as i64;
    rat(rng.gen_range(0..=steps), steps)
}

fn zonotope_point(base: &Rational2, gens: &[Rational2], t: &[Rational]) -> Rational2 {
    gens.iter().zip(t).fold(base.clone(), |acc, (g, t)| &acc + &g.scale(t))
}

/// All `corner + Σ_{i∈S} g_i`.
fn corner_sums(corners: &[Rational2], gens: &[Rational2]) -> Vec<Rational2> {
    let mut out = corners.to_vec();
    for g in gens {
        let shifted: Vec<_> = out.iter().map(|p| p + g).collect();
        out.extend(shifted);
    }
    out
}

/// Random point of the hull of `vertices` with weights on the grid.
fn region_point(rng: &mut ChaCha8Rng, vertices: &[Rational2], resolution: usize) -> Rational2 {
    loop {
        let weights: Vec<i64> = vertices.iter().map(|_| rng.gen_range(0..resolution as i64)).collect();
        let total: i64 = weights.iter().sum();
        if total == 0 {
            continue;
        }
        return vertices
            .iter()
            .zip(&weights)
            .fold(Rational2::zero(), |acc, (v, w)| &acc + &v.scale(&rat(*w, total)));
    }
}

fn frontier_point(rng: &mut ChaCha8Rng, frontier: &ParetoFrontier, resolution: usize) -> Rational2 {
    if frontier.len() == 1 {
        return frontier.first().clone();
    }
    let seg = rng.gen_range(0..frontier.len() - 1);
    frontier.point_on_segment(seg, &grid_value(rng, resolution))
}

/// Largest `Y` over the polygon restricted to `X >= x`, from vertices and
/// edge crossings of the vertical line.
fn max_y_right_of(region: &[Rational2], x: &Rational) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    let mut offer = |y: Rational| {
        if best.as_ref().is_none_or(|b| y > *b) {
            best = Some(y);
        }
    };
    for (i, a) in region.iter().enumerate() {
        if a.x >= *x {
            offer(a.y.clone());
        }
        let b = &region[(i + 1) % region.len()];
        if (a.x < *x && b.x > *x) || (a.x > *x && b.x < *x) {
            let t = (x - &a.x) / (&b.x - &a.x);
            offer(&a.y + t * (&b.y - &a.y));
        }
    }
    best
}

fn swap(p: &Rational2) -> Rational2 {
    Rational2::new(p.y.clone(), p.x.clone())
}

/// Nondominance and completeness of `frontier` as the maximal boundary of
/// `region`, each on `samples` random points.
pub fn pareto_checks(
    name: &str,
    samples: usize,
    frontier: &ParetoFrontier,
    region: &ConvexRegion,
    rng: &mut ChaCha8Rng,
    resolution: usize,
) -> Vec<CheckResult> {
    let vertices = region.vertices();
    let swapped: Vec<_> = vertices.iter().map(swap).collect();
    let nondominated = sampled(
        &format!("{name}: frontier points are nondominated"),
        samples,
        || frontier_point(rng, frontier, resolution),
        |p| {
            if !region.contains(p) {
                return Some(format!("{p} lies outside the region"));
            }
            let up = max_y_right_of(vertices, &p.x).expect("p is inside");
            if up > p.y {
                return Some(format!("{p} is dominated by {},{}", p.x, up));
            }
            let right = max_y_right_of(&swapped, &p.y).expect("p is inside");
            if right > p.x {
                return Some(format!("{p} is dominated by {right},{}", p.y));
            }
            None
        },
    );
    let complete = sampled(
        &format!("{name}: frontier weakly dominates the region"),
        samples,
        || region_point(rng, vertices, resolution),
        |p| match frontier.height_from(&p.x) {
            Some(h) if h >= p.y => None,
            _ => Some(format!("no frontier point weakly dominates {p}")),
        },
    );
    vec![nondominated, complete]
}

fn membership_checks(g: &CoopetitiveGame, rng: &mut ChaCha8Rng, res: usize) -> Vec<CheckResult> {
    let gens = g.generators();
    let space = coopetition::coopetitive_space(g);
    let path = coopetition::nash_path(g);
    let nash = cournot::nash_payoff();
    let e2 = Rational2::from_ints(0, 1);
    let e1 = Rational2::from_ints(1, 0);
    let mut t = || [grid_value(rng, res), grid_value(rng, res), grid_value(rng, res), grid_value(rng, res)];
    vec![
        sampled("coopetitive space contains every sampled payoff", SAMPLES, &mut t, |t| {
            let base = Rational2::lerp(&e2, &e1, &t[3]);
            let p = zonotope_point(&base, &gens, &t[..3]);
            (!space.contains(&p)).then(|| format!("{p} missing"))
        }),
        sampled("nash path contains every sampled payoff", SAMPLES, &mut t, |t| {
            let p = zonotope_point(&nash, &gens, &t[..3]);
            (!path.contains(&p)).then(|| format!("{p} missing"))
        }),
    ]
}

fn vertex_checks(g: &CoopetitiveGame) -> Vec<CheckResult> {
    let gens = g.generators();
    let cases = [
        (
            "coopetitive space",
            coopetition::coopetitive_space(g),
            corner_sums(&[Rational2::from_ints(0, 1), Rational2::from_ints(1, 0)], &gens),
        ),
        ("nash path", coopetition::nash_path(g), corner_sums(&[cournot::nash_payoff()], &gens)),
    ];
    cases
        .into_iter()
        .map(|(name, region, corners)| {
            let stray = region.vertices().iter().find(|v| !corners.contains(v));
            let outside = corners.iter().find(|c| !region.contains(c));
            let witness = stray
                .map(|v| format!("vertex {v} is not a corner sum"))
                .or_else(|| outside.map(|c| format!("corner sum {c} lies outside")));
            CheckResult::new(
                format!("{name}: vertices are corner sums and hold every corner sum"),
                corners.len() + region.vertices().len(),
                witness,
            )
        })
        .collect()
}

fn nash_bargaining_check(frontier: &ParetoFrontier, rng: &mut ChaCha8Rng, res: usize) -> CheckResult {
    let name = "super-cooperative Nash bargaining maximizes the product";
    let alpha = infimum(frontier);
    let q = match bargaining::nash_bargaining(frontier, &alpha) {
        Ok(q) => q,
        Err(_) if frontier.len() == 1 => return CheckResult::new(name, 0, None),
        Err(e) => return CheckResult::new(name, 0, Some(e.to_string())),
    };
    let product = |p: &Rational2| (&p.x - &alpha.x) * (&p.y - &alpha.y);
    let best = product(&q);
    sampled(name, SAMPLES, || frontier_point(rng, frontier, res), |p| {
        (product(p) > best).then(|| format!("{p} beats {q}"))
    })
}

fn ks_check(name: &str, problem: &BargainingProblem) -> CheckResult {
    let witness = match bargaining::kalai_smorodinsky(problem) {
        Err(e) => Some(e.to_string()),
        Ok(k) => {
            let threat = problem.threat();
            let utopia = problem.utopia();
            if !orient(threat, &utopia, &k).is_zero() || !on_segment(threat, &utopia, &k) {
                Some(format!("{k} is off the segment {threat} to {utopia}"))
            } else if !lies_on_both(threat, &utopia, problem.frontier(), &k) {
                Some(format!("{k} is off the frontier"))
            } else {
                None
            }
        }
    };
    CheckResult::new(name, 1, witness)
}

fn tu_check(name: &str, frontier: &ParetoFrontier, threat: &Rational2, utopia: &Rational2) -> CheckResult {
    let line = bargaining::tu_boundary(frontier);
    let witness = if frontier.points().iter().any(|p| p.sum() > line.level) {
        Some(format!("frontier crosses X + Y = {}", line.level))
    } else {
        match bargaining::tu_ks_solution(&line, threat, utopia) {
            Err(e) => Some(e.to_string()),
            Ok(p) if p.sum() != line.level => Some(format!("{p} is off the TU line")),
            Ok(p) if !orient(threat, utopia, &p).is_zero() => Some(format!("{p} is off the ray")),
            Ok(_) => None,
        }
    };
    CheckResult::new(name, frontier.len(), witness)
}

fn recovery_check(
    g: &CoopetitiveGame,
    mode: RecoveryMode,
    on_frontier: bool,
    rng: &mut ChaCha8Rng,
    res: usize,
) -> CheckResult {
    let (region, frontier) = match mode {
        RecoveryMode::PurelyCoopetitive => (coopetition::nash_path(g), coopetition::nash_path_pareto_boundary(g)),
        RecoveryMode::SuperCooperative => {
            (coopetition::coopetitive_space(g), coopetition::coopetitive_pareto_boundary(g))
        }
    };
    let place = if on_frontier { "frontier" } else { "region" };
    sampled(
        &format!("{mode} recovery reproduces {place} targets"),
        RECOVERY_SAMPLES,
        || {
            if on_frontier {
                frontier_point(rng, &frontier, res)
            } else {
                region_point(rng, region.vertices(), res)
            }
        },
        |p| match coopetition::recover_strategy(g, p, mode) {
            Err(e) => Some(format!("{p}: {e}")),
            Ok(t) => {
                let reached = coopetition::payoff(g, &t);
                (reached != *p).then(|| format!("{p} recovered as {reached}"))
            }
        },
    )
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-50..=50), rng.gen_range(1..=12))
}

/// KS and Nash bargaining commute with translating frontier and threat.
fn covariance_check(frontier: &ParetoFrontier, threat: &Rational2, rng: &mut ChaCha8Rng) -> CheckResult {
    let problem = BargainingProblem::new(frontier.clone(), threat.clone());
    let ks = problem.as_ref().map_err(|e| e.to_string()).and_then(|p| {
        bargaining::kalai_smorodinsky(p).map_err(|e| e.to_string())
    });
    let nb = bargaining::nash_bargaining(frontier, threat).ok();
    sampled(
        "KS and Nash bargaining are translation covariant",
        TRANSLATIONS,
        || Rational2::new(random_rational(rng), random_rational(rng)),
        |d| {
            let moved = frontier.translate(d);
            let threat = threat + d;
            let moved_ks = BargainingProblem::new(moved.clone(), threat.clone())
                .map_err(|e| e.to_string())
                .and_then(|p| bargaining::kalai_smorodinsky(&p).map_err(|e| e.to_string()));
            match (&ks, moved_ks) {
                (Ok(k), Ok(m)) if m != k + d => return Some(format!("shift {d}: KS {k} moved to {m}")),
                (Ok(_), Err(e)) => return Some(format!("shift {d}: {e}")),
                (Err(e), Ok(_)) => return Some(format!("shift {d}: {e}")),
                _ => {}
            }
            let moved_nb = bargaining::nash_bargaining(&moved, &threat).ok();
            match (&nb, moved_nb) {
                (Some(q), Some(m)) if m != q + d => Some(format!("shift {d}: Nash {q} moved to {m}")),
                (Some(_), None) | (None, Some(_)) => Some(format!("shift {d}: Nash solvability changed")),
                _ => None,
            }
        },
    )
}

fn best_response_check(res: usize) -> CheckResult {
    let grid: Vec<Rational> = (0..res).map(|i| rat(i as i64, (res - 1) as i64)).collect();
    let mut witness = None;
    'outer: for y in &grid {
        let br = cournot::best_response_c(y).expect("grid is in [0,1]");
        let top = cournot::cournot_payoff(&br, y).x;
        for x in &grid {
            if cournot::cournot_payoff(x, y).x > top {
                witness = Some(format!("x = {x} beats best response {br} against y = {y}"));
                break 'outer;
            }
        }
    }
    CheckResult::new("best response beats every grid strategy", res * res, witness)
}

/// Sampled payoffs never pass the line `X + Y = 1`, and the nonnegative ones
/// fill out the conservative triangle.
fn conservative_check(res: usize) -> CheckResult {
    let triangle = cournot::conservative_part();
    let image = cournot::sample_payoff_image(res).expect("resolution checked by config");
    let zero = Rational::zero();
    let one = Rational::from_integer(1.into());
    let witness = image
        .iter()
        .find(|p| p.sum() > one)
        .map(|p| format!("{p} lies beyond the maximal boundary"))
        .or_else(|| {
            image
                .iter()
                .find(|p| p.x >= zero && p.y >= zero && !triangle.contains(p))
                .map(|p| format!("{p} lies outside the conservative part"))
        });
    CheckResult::new("sampled Cournot payoffs stay under the maximal boundary", image.len(), witness)
}

/// Every check on `config`, in a fixed order, from one seeded stream.
pub fn run_verification(config: &GameConfig, seed: u64) -> Result<VerificationSummary, AnalysisError> {
    let report = analyze(config)?;
    let g = &config.game;
    let res = config.grid_resolution;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coop_frontier = coopetition::coopetitive_pareto_boundary(g);
    let path_frontier = coopetition::nash_path_pareto_boundary(g);
    let nash = cournot::nash_payoff();

    let mut checks = membership_checks(g, &mut rng, res);
    checks.extend(vertex_checks(g));
    checks.extend(pareto_checks(
        "coopetitive boundary",
        SAMPLES,
        &coop_frontier,
        &coopetition::coopetitive_space(g),
        &mut rng,
        res,
    ));
    checks.extend(pareto_checks(
        "nash path boundary",
        SAMPLES,
        &path_frontier,
        &coopetition::nash_path(g),
        &mut rng,
        res,
    ));
    checks.push(nash_bargaining_check(&coop_frontier, &mut rng, res));

    let purely = BargainingProblem::new(path_frontier.clone(), nash.clone()).map_err(|e| AnalysisError {
        stage: "verify",
        message: e.to_string(),
    })?;
    checks.push(ks_check("KS point on the nash path lies on ray and frontier", &purely));
    let superc = BargainingProblem::new(coop_frontier.clone(), infimum(&coop_frontier)).map_err(|e| AnalysisError {
        stage: "verify",
        message: e.to_string(),
    })?;
    checks.push(ks_check("super-cooperative KS point lies on ray and frontier", &superc));
    checks.push(tu_check(
        "TU-KS on the nash path lies on the supporting line",
        &path_frontier,
        &nash,
        &report.ks_purely_coopetitive.utopia.0,
    ));
    checks.push(tu_check(
        "super-cooperative TU-KS lies on the supporting line",
        &coop_frontier,
        &report.super_tu_ks.threat.0,
        &report.super_tu_ks.utopia.0,
    ));

    checks.push(covariance_check(&coop_frontier, &infimum(&coop_frontier), &mut rng));
    checks.push(covariance_check(&path_frontier, &nash, &mut rng));
    for mode in [RecoveryMode::PurelyCoopetitive, RecoveryMode::SuperCooperative] {
        for on_frontier in [true, false] {
            checks.push(recovery_check(g, mode, on_frontier, &mut rng, res));
        }
    }
    checks.push(best_response_check(res));
    checks.push(conservative_check(res));
    Ok(VerificationSummary { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use coopetitive_core::geom2d::int;

    fn small() -> GameConfig {
        GameConfig::worked_example().with_resolution(11).unwrap()
    }

    #[test]
    fn example_passes_everything() {
        let summary = run_verification(&small(), DEFAULT_SEED).unwrap();
        let failures: Vec<_> = summary.failures().map(|c| c.to_string()).collect();
        assert!(failures.is_empty(), "{failures:?}");
        assert_eq!(summary.checks.len(), 21);
    }

    #[test]
    fn zero_game_passes_everything() {
        let config = GameConfig::new(CoopetitiveGame::zero()).with_resolution(11).unwrap();
        let summary = run_verification(&config, DEFAULT_SEED).unwrap();
        let failures: Vec<_> = summary.failures().map(|c| c.to_string()).collect();
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn corrupted_chain_is_caught() {
        let bad = ParetoFrontier::from_chain(vec![
            Rational2::from_ints(0, 4),
            Rational2::from_ints(2, 1),
            Rational2::from_ints(3, 0),
        ])
        .unwrap();
        let space = coopetition::coopetitive_space(&GameConfig::worked_example().game);
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let checks = pareto_checks("corrupted", 1000, &bad, &space, &mut rng, 11);
        assert!(!checks[0].passed);
        assert!(checks[0].witness.as_ref().unwrap().contains("dominated by"));
        assert!(!checks[1].passed);
    }

    #[test]
    fn max_y_right_of_triangle() {
        let tri = cournot::conservative_part();
        assert_eq!(max_y_right_of(tri.vertices(), &rat(1, 4)), Some(rat(3, 4)));
        assert_eq!(max_y_right_of(tri.vertices(), &int(2)), None);
    }

    #[test]
    fn display_line() {
        let c = CheckResult::new("x", 3, Some("w".into()));
        assert_eq!(c.to_string(), "[FAIL] x (3 samples): w");
    }
}
