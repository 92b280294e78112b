//! Acceptance suite for the worked example `m = (-1,1,1)`, `n = (2,1,-1)`.
//! Prints one line per criterion and exits nonzero if any fails. Every
//! comparison is exact rational equality.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use coopetitive_cli::config::{parse_config, GameConfig};
use coopetitive_cli::report::{analyze, SolutionReport};
use coopetitive_cli::verify::{run_verification, DEFAULT_SEED};
use coopetitive_core::bargaining::{self, TULine};
use coopetitive_core::geom2d::{int, parse_rational, Rational2};

const EXAMPLE: &str = r#"{"m":["-1","1","1"],"n":["2","1","-1"]}"#;

fn pt(text: &str) -> Rational2 {
    let (x, y) = text.split_once(',').unwrap();
    Rational2::new(parse_rational(x).unwrap(), parse_rational(y).unwrap())
}

fn chain(list: &[&str]) -> Vec<Rational2> {
    list.iter().map(|p| pt(p)).collect()
}

fn unwrap(points: &[coopetitive_cli::report::Point]) -> Vec<Rational2> {
    points.iter().map(|p| p.0.clone()).collect()
}

struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

fn example_report() -> SolutionReport {
    let config = parse_config(EXAMPLE).expect("example config");
    assert_eq!(config, GameConfig::worked_example());
    analyze(&config).expect("analysis")
}

fn paper_constants(r: &SolutionReport) -> Criterion {
    let mut c = Criterion::new();
    c.eq("nash payoff", r.nash_payoff.0.clone(), pt("4/9,4/9"));
    c.eq("nash strategy", r.nash_strategy.0.clone(), pt("1/3,1/3"));
    c.eq("coopetitive boundary", unwrap(&r.coopetitive_boundary), chain(&["0,4", "2,2", "3,0"]));
    c.eq("Q'", r.super_nash_bargaining.payoff.0.clone(), pt("2,2"));
    c.eq("K", r.super_ks.payoff.0.clone(), pt("12/7,16/7"));
    c.eq("coopetitive TU level", r.tu_lines.coopetitive.0.clone(), int(4));
    c.eq(
        "feasible segment s",
        unwrap(&r.tu_feasible_segments.coopetitive),
        chain(&["0,4", "3,1"]),
    );
    // N' + (0,3) lies on the Nash-path TU line
    let anchor = &pt("4/9,4/9") + &pt("0,3");
    c.eq("nash-path TU level", r.tu_lines.nash_path.0.clone(), anchor.sum());
    let tu_k = bargaining::tu_ks_solution(&TULine { level: int(4) }, &pt("0,0"), &pt("3,4"));
    c.eq("TU-KS on s", tu_k.ok(), Some(pt("12/7,16/7")));
    c.eq("super TU-KS in report", r.super_tu_ks.payoff.0.clone(), pt("12/7,16/7"));
    c.eq("K - (1,1)", r.sunk_cost_adjusted.super_ks.0.clone(), pt("5/7,9/7"));
    c.holds("K - (1,1) dominates N'", pt("5/7,9/7").dominates(&pt("4/9,4/9")));
    c.holds("K - (1,1) dominates N' in report", r.dominance_checks.super_ks_adjusted_dominates_nash);
    c.eq("N' - (1,1)", r.sunk_cost_adjusted.nash_payoff.0.clone(), pt("-5/9,-5/9"));
    c.holds("N' - (1,1) is a bi-loss", r.dominance_checks.nash_adjusted_is_bi_loss);
    c
}

fn derived_constants(r: &SolutionReport) -> Criterion {
    let mut c = Criterion::new();
    c.eq("H", r.ks_purely_coopetitive.payoff.0.clone(), pt("100/63,136/63"));
    c.eq("TU-KS", r.tu_ks_purely_coopetitive.payoff.0.clone(), pt("74/45,101/45"));
    c.eq(
        "nash-path boundary",
        unwrap(&r.nash_path_boundary),
        chain(&["4/9,31/9", "13/9,22/9", "22/9,4/9"]),
    );
    let triple = r.ks_purely_coopetitive.triple.as_ref();
    let got = triple.map(|t| {
        let z: Vec<_> = t.z.iter().map(|v| v.0.clone()).collect();
        (t.x.0.clone(), t.y.0.clone(), z)
    });
    let third = parse_rational("1/3").unwrap();
    let want = (third.clone(), third, vec![parse_rational("6/7").unwrap(), int(1), int(1)]);
    c.eq("H triple", got, Some(want));
    c
}

fn property_suites() -> Criterion {
    let mut c = Criterion::new();
    let config = GameConfig::worked_example();
    c.eq("resolution", config.grid_resolution, 101);
    match run_verification(&config, DEFAULT_SEED) {
        Err(e) => c.holds(&format!("verification ran: {e}"), false),
        Ok(summary) => {
            for check in summary.failures() {
                c.failures.push(check.to_string());
            }
            let named = |needle: &str| summary.checks.iter().filter(|k| k.name.contains(needle)).count();
            c.holds("membership checks present", named("contains every sampled payoff") == 2);
            c.holds("pareto checks present", named("frontier") >= 4);
            c.holds("covariance checks present", named("translation covariant") == 2);
            c.holds("recovery checks present", named("recovery") == 4);
            for check in &summary.checks {
                if check.name.contains("sampled payoff") || check.name.contains("nondominated") {
                    c.holds(&format!("{} sample count", check.name), check.samples == 10_000);
                }
            }
        }
    }
    c
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_coopetitive"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if status.status.success() {
        Ok(())
    } else {
        Err(String::from_utf8_lossy(&status.stderr).into_owned())
    }
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect()
}

fn determinism() -> Criterion {
    let mut c = Criterion::new();
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("example.json");
    std::fs::write(&config, EXAMPLE).unwrap();
    let mut runs = Vec::new();
    for run in ["a", "b"] {
        let out = tmp.path().join(run);
        let out_text = out.to_str().unwrap();
        for sub in ["analyze", "plot"] {
            if let Err(e) = run_cli(&[sub, "--config", config.to_str().unwrap(), "--out", out_text]) {
                c.failures.push(format!("{sub} failed: {e}"));
            }
        }
        runs.push(snapshot(&out));
    }
    c.eq("file count", runs[0].len(), 14);
    c.holds("report.json written", runs[0].contains_key("report.json"));
    for (name, bytes) in &runs[0] {
        c.holds(&format!("{name} identical"), runs[1].get(name) == Some(bytes));
    }
    c
}

fn main() {
    let report = example_report();
    let criteria = [
        ("paper constants reproduced exactly", paper_constants(&report)),
        ("derived constants reproduced exactly", derived_constants(&report)),
        ("property suites hold", property_suites()),
        ("analyze + plot are byte-deterministic", determinism()),
    ];
    let mut failed = 0;
    for (i, (title, c)) in criteria.iter().enumerate() {
        let status = if c.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("[{status}] {}. {title}", i + 1);
        for f in &c.failures {
            println!("       {f}");
        }
        failed += usize::from(!c.failures.is_empty());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
