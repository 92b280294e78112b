//! The full analysis pipeline and its JSON report.
//!
//! Every rational is written as an exact `"p/q"` string next to an advisory
//! decimal with 12 significant digits. Only the exact strings are read back.

use coopetitive_core::bargaining::{self, BargainingProblem};
use coopetitive_core::coopetition::{
    self, CoopetitiveTriple, RecoveryMode, SpaceBase,
};
use coopetitive_core::cournot;
use coopetitive_core::geom2d::{
    infimum, parse_rational, supremum, to_decimal, to_exact, ParetoFrontier, Rational, Rational2,
};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::config::GameConfig;

pub const DECIMAL_DIGITS: u32 = 12;

#[derive(Debug, Error)]
#[error("analysis failed at stage `{stage}`: {message}")]
pub struct AnalysisError {
    pub stage: &'static str,
    pub message: String,
}

trait Stage<T> {
    fn stage(self, stage: &'static str) -> Result<T, AnalysisError>;
}

impl<T, E: std::fmt::Display> Stage<T> for Result<T, E> {
    fn stage(self, stage: &'static str) -> Result<T, AnalysisError> {
        self.map_err(|e| AnalysisError { stage, message: e.to_string() })
    }
}

/// Exact rational with a decimal companion in JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

#[derive(Serialize, Deserialize)]
struct ExactRepr {
    exact: String,
    decimal: String,
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ExactRepr {
            exact: to_exact(&self.0),
            decimal: to_decimal(&self.0, DECIMAL_DIGITS),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ExactRepr::deserialize(deserializer)?;
        parse_rational(&repr.exact).map(Exact).map_err(D::Error::custom)
    }
}

/// Exact point, written as `"x,y"` plus decimals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point(pub Rational2);

#[derive(Serialize, Deserialize)]
struct PointRepr {
    exact: String,
    decimal: [String; 2],
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PointRepr {
            exact: self.0.to_string(),
            decimal: [
                to_decimal(&self.0.x, DECIMAL_DIGITS),
                to_decimal(&self.0.y, DECIMAL_DIGITS),
            ],
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PointRepr::deserialize(deserializer)?;
        let (x, y) = repr
            .exact
            .split_once(',')
            .ok_or_else(|| D::Error::custom(format!("point {:?} is not `x,y`", repr.exact)))?;
        let x = parse_rational(x).map_err(D::Error::custom)?;
        let y = parse_rational(y).map_err(D::Error::custom)?;
        Ok(Point(Rational2::new(x, y)))
    }
}

impl From<&Rational2> for Point {
    fn from(p: &Rational2) -> Self {
        Point(p.clone())
    }
}

fn points(list: &[Rational2]) -> Vec<Point> {
    list.iter().map(Point::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSection {
    pub m: [Exact; 3],
    pub n: [Exact; 3],
    pub sunk_cost: Point,
    pub grid_resolution: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub x: Exact,
    pub y: Exact,
    pub z: [Exact; 3],
}

impl Triple {
    fn from_core(t: &CoopetitiveTriple) -> Self {
        let z = t.z.components();
        Self {
            x: Exact(t.s.x().clone()),
            y: Exact(t.s.y().clone()),
            z: [Exact(z[0].clone()), Exact(z[1].clone()), Exact(z[2].clone())],
        }
    }

    pub fn to_core(&self) -> Result<CoopetitiveTriple, String> {
        let s = cournot::BiStrategy::new(self.x.0.clone(), self.y.0.clone()).map_err(|e| e.to_string())?;
        let z = coopetition::CooperativeStrategy::new([
            self.z[0].0.clone(),
            self.z[1].0.clone(),
            self.z[2].0.clone(),
        ])
        .map_err(|e| e.to_string())?;
        Ok(CoopetitiveTriple { s, z })
    }
}

/// A solution point together with the reference points that define it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsSolution {
    pub payoff: Point,
    pub threat: Point,
    pub utopia: Point,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub triple: Option<Triple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuKsSolution {
    pub payoff: Point,
    pub threat: Point,
    pub utopia: Point,
    /// Supremum of the feasible TU segment, the alternative utopia reading.
    pub segment_utopia: Point,
    pub payoff_with_segment_utopia: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NashBargainingSolution {
    pub payoff: Point,
    pub alpha: Point,
    pub triple: Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerFrontier<T> {
    pub nash_path: T,
    pub coopetitive: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunkCostAdjusted {
    pub nash_payoff: Point,
    pub ks_purely_coopetitive: Point,
    pub tu_ks_purely_coopetitive: Point,
    pub super_nash_bargaining: Point,
    pub super_ks: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceChecks {
    /// `N' - cost` has both coordinates negative.
    pub nash_adjusted_is_bi_loss: bool,
    pub ks_purely_adjusted_dominates_nash: bool,
    pub super_nash_bargaining_adjusted_dominates_nash: bool,
    pub super_ks_adjusted_dominates_nash: bool,
    /// Against the supremum `(1,1)` of the base game's maximal boundary.
    pub super_nash_bargaining_strongly_dominates_base_supremum: bool,
    pub super_ks_strongly_dominates_base_supremum: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub game: GameSection,
    pub nash_strategy: Point,
    pub nash_payoff: Point,
    pub coopetitive_space: Vec<Point>,
    pub coopetitive_boundary: Vec<Point>,
    pub nash_path: Vec<Point>,
    pub nash_path_boundary: Vec<Point>,
    /// Whether simplex + zonotope equals the hull of the simplex translated
    /// along the cube path through (1,0,0), (1,1,0), (1,1,1).
    pub simplex_space_matches_corner_envelope: bool,
    pub ks_purely_coopetitive: KsSolution,
    pub tu_ks_purely_coopetitive: TuKsSolution,
    pub super_nash_bargaining: NashBargainingSolution,
    pub super_ks: KsSolution,
    pub super_tu_ks: KsSolution,
    pub tu_lines: PerFrontier<Exact>,
    pub tu_feasible_segments: PerFrontier<[Point; 2]>,
    pub sunk_cost_adjusted: SunkCostAdjusted,
    pub dominance_checks: DominanceChecks,
}

impl SolutionReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn recover(config: &GameConfig, target: &Rational2, mode: RecoveryMode) -> Result<Triple, AnalysisError> {
    let triple = coopetition::recover_strategy(&config.game, target, mode).stage("recovery")?;
    let reached = coopetition::payoff(&config.game, &triple);
    if &reached != target {
        return Err(AnalysisError {
            stage: "recovery",
            message: format!("recovered triple reaches {reached}, expected {target}"),
        });
    }
    Ok(Triple::from_core(&triple))
}

fn segment_supremum(segment: &(Rational2, Rational2)) -> Rational2 {
    segment.0.component_max(&segment.1)
}

/// Runs every solver on the configured game.
pub fn analyze(config: &GameConfig) -> Result<SolutionReport, AnalysisError> {
    let g = &config.game;
    let cost = &config.sunk_cost;
    let (nash_strategy, nash) = cournot::nash_equilibrium();

    let space = coopetition::coopetitive_space(g);
    let coop_frontier = coopetition::coopetitive_pareto_boundary(g);
    let path = coopetition::nash_path(g);
    let path_frontier = coopetition::nash_path_pareto_boundary(g);
    let envelope_match = coopetition::coopetitive_space_over(g, SpaceBase::ConservativeSimplex)
        == coopetition::corner_path_envelope(g);

    // purely coopetitive: bargaining on the Nash path with threat N'
    let problem = BargainingProblem::new(path_frontier.clone(), nash.clone()).stage("ks-purely-coopetitive")?;
    let h = bargaining::kalai_smorodinsky(&problem).stage("ks-purely-coopetitive")?;
    let h_utopia = problem.utopia();
    let h_triple = recover(config, &h, RecoveryMode::PurelyCoopetitive)?;

    let path_line = bargaining::tu_boundary(&path_frontier);
    let path_segment = bargaining::tu_feasible_segment(&path_frontier, &path_line);
    let tu_h = bargaining::tu_ks_solution(&path_line, &nash, &h_utopia).stage("tu-ks-purely-coopetitive")?;
    let alt_utopia = segment_supremum(&path_segment);
    let tu_h_alt = bargaining::tu_ks_solution(&path_line, &nash, &alt_utopia).stage("tu-ks-purely-coopetitive")?;

    // super-cooperative: bargaining on the coopetitive frontier from its infimum
    let alpha = infimum(&coop_frontier);
    let q = bargaining::nash_bargaining(&coop_frontier, &alpha);
    let q = match q {
        Ok(q) => q,
        // a single-point frontier has nothing strictly above its infimum
        Err(_) if coop_frontier.len() == 1 => coop_frontier.first().clone(),
        Err(e) => return Err(e).stage("super-nash-bargaining"),
    };
    let q_triple = recover(config, &q, RecoveryMode::SuperCooperative)?;

    let super_problem = BargainingProblem::new(coop_frontier.clone(), alpha.clone()).stage("super-ks")?;
    let k = bargaining::kalai_smorodinsky(&super_problem).stage("super-ks")?;
    let k_triple = recover(config, &k, RecoveryMode::SuperCooperative)?;

    let coop_line = bargaining::tu_boundary(&coop_frontier);
    let coop_segment = bargaining::tu_feasible_segment(&coop_frontier, &coop_line);
    let s_utopia = segment_supremum(&coop_segment);
    let tu_k = bargaining::tu_ks_solution(&coop_line, &alpha, &s_utopia).stage("super-tu-ks")?;

    let adjust = |p: &Rational2| bargaining::apply_sunk_costs(p, cost).stage("sunk-costs");
    let nash_adj = adjust(&nash)?;
    let h_adj = adjust(&h)?;
    let tu_h_adj = adjust(&tu_h)?;
    let q_adj = adjust(&q)?;
    let k_adj = adjust(&k)?;
    let base_sup = supremum(&cournot::base_pareto_boundary());
    let zero = Rational::from_integer(0.into());

    let [m0, m1, m2] = g.m.clone().map(Exact);
    let [n0, n1, n2] = g.n.clone().map(Exact);
    Ok(SolutionReport {
        game: GameSection {
            m: [m0, m1, m2],
            n: [n0, n1, n2],
            sunk_cost: Point::from(cost),
            grid_resolution: config.grid_resolution,
        },
        nash_strategy: Point(nash_strategy.as_point()),
        nash_payoff: Point::from(&nash),
        coopetitive_space: points(space.vertices()),
        coopetitive_boundary: points(coop_frontier.points()),
        nash_path: points(path.vertices()),
        nash_path_boundary: points(path_frontier.points()),
        simplex_space_matches_corner_envelope: envelope_match,
        ks_purely_coopetitive: KsSolution {
            payoff: Point::from(&h),
            threat: Point::from(&nash),
            utopia: Point::from(&h_utopia),
            triple: Some(h_triple),
        },
        tu_ks_purely_coopetitive: TuKsSolution {
            payoff: Point::from(&tu_h),
            threat: Point::from(&nash),
            utopia: Point::from(&h_utopia),
            segment_utopia: Point::from(&alt_utopia),
            payoff_with_segment_utopia: Point::from(&tu_h_alt),
        },
        super_nash_bargaining: NashBargainingSolution {
            payoff: Point::from(&q),
            alpha: Point::from(&alpha),
            triple: q_triple,
        },
        super_ks: KsSolution {
            payoff: Point::from(&k),
            threat: Point::from(&alpha),
            utopia: Point::from(&super_problem.utopia()),
            triple: Some(k_triple),
        },
        super_tu_ks: KsSolution {
            payoff: Point::from(&tu_k),
            threat: Point::from(&alpha),
            utopia: Point::from(&s_utopia),
            triple: None,
        },
        tu_lines: PerFrontier {
            nash_path: Exact(path_line.level.clone()),
            coopetitive: Exact(coop_line.level.clone()),
        },
        tu_feasible_segments: PerFrontier {
            nash_path: [Point::from(&path_segment.0), Point::from(&path_segment.1)],
            coopetitive: [Point::from(&coop_segment.0), Point::from(&coop_segment.1)],
        },
        sunk_cost_adjusted: SunkCostAdjusted {
            nash_payoff: Point::from(&nash_adj),
            ks_purely_coopetitive: Point::from(&h_adj),
            tu_ks_purely_coopetitive: Point::from(&tu_h_adj),
            super_nash_bargaining: Point::from(&q_adj),
            super_ks: Point::from(&k_adj),
        },
        dominance_checks: DominanceChecks {
            nash_adjusted_is_bi_loss: nash_adj.x < zero && nash_adj.y < zero,
            ks_purely_adjusted_dominates_nash: bargaining::dominates(&h_adj, &nash),
            super_nash_bargaining_adjusted_dominates_nash: bargaining::dominates(&q_adj, &nash),
            super_ks_adjusted_dominates_nash: bargaining::dominates(&k_adj, &nash),
            super_nash_bargaining_strongly_dominates_base_supremum: q.strongly_dominates(&base_sup),
            super_ks_strongly_dominates_base_supremum: k.strongly_dominates(&base_sup),
        },
    })
}

/// Frontiers rebuilt from a report, for consumers that only have the JSON.
pub fn report_frontiers(report: &SolutionReport) -> Result<(ParetoFrontier, ParetoFrontier), String> {
    let unwrap = |list: &[Point]| list.iter().map(|p| p.0.clone()).collect::<Vec<_>>();
    let coop = ParetoFrontier::from_chain(unwrap(&report.coopetitive_boundary)).map_err(|e| e.to_string())?;
    let path = ParetoFrontier::from_chain(unwrap(&report.nash_path_boundary)).map_err(|e| e.to_string())?;
    Ok((coop, path))
}
