//! Deterministic SVG figures of the payoff regions and solution points.
//!
//! Each figure gets a viewport from the integer-rounded bounding box
//! `[x0, x1] × [y0, y1]` of everything it draws. With `s = 400 / max(x1 - x0, y1 - y0)`
//! a payoff `(X, Y)` maps to pixel `(40 + s (X - x0), 40 + s (y1 - Y))`.
//! Polygons also carry their exact vertices in a `data-vertices` attribute.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use coopetitive_core::coopetition::{self, SpaceBase};
use coopetitive_core::cournot;
use coopetitive_core::geom2d::rational::to_f64;
use coopetitive_core::geom2d::{int, ConvexRegion, Rational, Rational2};
use thiserror::Error;

use crate::config::GameConfig;
use crate::report::{analyze, AnalysisError, SolutionReport};

pub const MARGIN: i64 = 40;
pub const PLOT_SIZE: i64 = 400;

#[derive(Debug, Error)]
pub enum SvgError {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

enum Shape {
    Region(Vec<Rational2>),
    Chain(Vec<Rational2>),
    Marker(Rational2, &'static str),
}

struct Layer {
    class: &'static str,
    shape: Shape,
}

fn region(class: &'static str, r: &ConvexRegion) -> Layer {
    Layer { class, shape: Shape::Region(r.vertices().to_vec()) }
}

fn chain(class: &'static str, points: Vec<Rational2>) -> Layer {
    Layer { class, shape: Shape::Chain(points) }
}

fn marker(class: &'static str, p: Rational2, label: &'static str) -> Layer {
    Layer { class, shape: Shape::Marker(p, label) }
}

struct Viewport {
    x0: Rational,
    y1: Rational,
    scale: Rational,
    width: Rational,
    height: Rational,
}

impl Viewport {
    fn fit(layers: &[Layer]) -> Self {
        let mut all = layers.iter().flat_map(|l| match &l.shape {
            Shape::Region(v) | Shape::Chain(v) => v.iter().collect::<Vec<_>>(),
            Shape::Marker(p, _) => vec![p],
        });
        let first = all.next().expect("figure draws something").clone();
        let (lo, hi) = all.fold((first.clone(), first), |(lo, hi), p| (lo.component_min(p), hi.component_max(p)));
        let (x0, y0) = (lo.x.floor(), lo.y.floor());
        let (mut x1, mut y1) = (hi.x.ceil(), hi.y.ceil());
        if x1 == x0 {
            x1 += int(1);
        }
        if y1 == y0 {
            y1 += int(1);
        }
        let span = (&x1 - &x0).max(&y1 - &y0);
        let scale = int(PLOT_SIZE) / span;
        let width = &scale * (&x1 - &x0) + int(2 * MARGIN);
        let height = &scale * (&y1 - &y0) + int(2 * MARGIN);
        Self { x0, y1, scale, width, height }
    }

    fn map(&self, p: &Rational2) -> (String, String) {
        let px = int(MARGIN) + &self.scale * (&p.x - &self.x0);
        let py = int(MARGIN) + &self.scale * (&self.y1 - &p.y);
        (pixel(&px), pixel(&py))
    }
}

fn pixel(v: &Rational) -> String {
    let text = format!("{:.2}", to_f64(v));
    // avoid "-0.00"
    if text == "-0.00" {
        "0.00".to_string()
    } else {
        text
    }
}

fn exact_list(points: &[Rational2]) -> String {
    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn pixel_list(vp: &Viewport, points: &[Rational2]) -> String {
    points
        .iter()
        .map(|p| {
            let (x, y) = vp.map(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

const STYLE: &str = "\
.region{fill:#9ecae1;fill-opacity:0.45;stroke:#3182bd;stroke-width:1.5}
.region.base{fill:#d9d9d9;stroke:#636363}
.frontier{fill:none;stroke:#e6550d;stroke-width:3}
.ray{fill:none;stroke:#31a354;stroke-width:1.5;stroke-dasharray:6 4}
.tu{fill:none;stroke:#756bb1;stroke-width:2}
.point{fill:#000}
.point.solution{fill:#e6550d}
text{font-family:sans-serif;font-size:12px}
.axis{stroke:#969696;stroke-width:1}";

fn render(title: &str, layers: &[Layer]) -> String {
    let vp = Viewport::fit(layers);
    let (w, h) = (pixel(&vp.width), pixel(&vp.height));
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, "<style>\n{STYLE}\n</style>");

    // axes through the origin when it is in view
    let zero = Rational::from_integer(0.into());
    let (ox, oy) = vp.map(&Rational2::zero());
    let y_top = vp.y1.clone();
    let y_bottom = &vp.y1 - (&vp.height - int(2 * MARGIN)) / &vp.scale;
    let x_right = &vp.x0 + (&vp.width - int(2 * MARGIN)) / &vp.scale;
    if vp.x0 <= zero && x_right >= zero {
        let (_, top) = vp.map(&Rational2::new(zero.clone(), y_top.clone()));
        let (_, bottom) = vp.map(&Rational2::new(zero.clone(), y_bottom.clone()));
        let _ = writeln!(out, r#"<line class="axis" x1="{ox}" y1="{top}" x2="{ox}" y2="{bottom}"/>"#);
    }
    if y_bottom <= zero && y_top >= zero {
        let (left, _) = vp.map(&Rational2::new(vp.x0.clone(), zero.clone()));
        let (right, _) = vp.map(&Rational2::new(x_right, zero.clone()));
        let _ = writeln!(out, r#"<line class="axis" x1="{left}" y1="{oy}" x2="{right}" y2="{oy}"/>"#);
    }

    for layer in layers {
        match &layer.shape {
            Shape::Region(v) => {
                let _ = writeln!(
                    out,
                    r#"<polygon class="{}" data-vertices="{}" points="{}"/>"#,
                    layer.class,
                    exact_list(v),
                    pixel_list(&vp, v)
                );
            }
            Shape::Chain(v) => {
                let _ = writeln!(
                    out,
                    r#"<polyline class="{}" data-vertices="{}" points="{}"/>"#,
                    layer.class,
                    exact_list(v),
                    pixel_list(&vp, v)
                );
            }
            Shape::Marker(p, label) => {
                let (x, y) = vp.map(p);
                let _ = writeln!(
                    out,
                    r#"<circle class="{}" data-point="{p}" cx="{x}" cy="{y}" r="4"/>"#,
                    layer.class
                );
                let _ = writeln!(out, r#"<text x="{x}" y="{y}" dx="6" dy="-6">{label}</text>"#);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn region_of(points: &[crate::report::Point]) -> Vec<Rational2> {
    points.iter().map(|p| p.0.clone()).collect()
}

fn figures(config: &GameConfig, report: &SolutionReport) -> Vec<(String, String, Vec<Layer>)> {
    let g = &config.game;
    let nash = report.nash_payoff.0.clone();
    let mut out = Vec::new();

    out.push((
        "fig-conservative.svg".to_string(),
        "Conservative part of the Cournot duopoly".to_string(),
        vec![
            region("region base", &cournot::conservative_part()),
            chain("frontier", cournot::base_pareto_boundary().points().to_vec()),
            marker("point", nash.clone(), "N'"),
        ],
    ));

    for (k, step) in coopetition::coopetitive_space_steps(g, SpaceBase::ParetoBoundary).iter().enumerate() {
        out.push((
            format!("fig-steps-m2-{k}.svg"),
            format!("Maximal boundary swept by the first {k} cooperative directions"),
            vec![region("region", step)],
        ));
    }

    out.push((
        "fig-coopetitive-path.svg".to_string(),
        "Coopetitive payoff space".to_string(),
        vec![
            region("region", &coopetition::coopetitive_space(g)),
            chain("frontier", region_of(&report.coopetitive_boundary)),
        ],
    ));

    for (k, step) in coopetition::nash_path_steps(g).iter().enumerate() {
        out.push((
            format!("fig-steps-nash-{k}.svg"),
            format!("Nash payoff swept by the first {k} cooperative directions"),
            vec![region("region", step)],
        ));
    }

    out.push((
        "fig-nash-path.svg".to_string(),
        "Nash path".to_string(),
        vec![
            region("region", &coopetition::nash_path(g)),
            chain("frontier", region_of(&report.nash_path_boundary)),
            marker("point", nash.clone(), "N'"),
        ],
    ));

    let ks = &report.ks_purely_coopetitive;
    let tu = &report.tu_ks_purely_coopetitive;
    let seg = &report.tu_feasible_segments.nash_path;
    out.push((
        "fig-ks-h.svg".to_string(),
        "Kalai-Smorodinsky solution on the Nash path".to_string(),
        vec![
            region("region", &coopetition::nash_path(g)),
            chain("frontier", region_of(&report.nash_path_boundary)),
            chain("tu", vec![seg[0].0.clone(), seg[1].0.clone()]),
            chain("ray", vec![ks.threat.0.clone(), ks.utopia.0.clone()]),
            marker("point", ks.threat.0.clone(), "N'"),
            marker("point", ks.utopia.0.clone(), "U"),
            marker("point solution", ks.payoff.0.clone(), "H"),
            marker("point solution", tu.payoff.0.clone(), "TU-KS"),
        ],
    ));

    let sk = &report.super_ks;
    let seg = &report.tu_feasible_segments.coopetitive;
    out.push((
        "fig-super-ks.svg".to_string(),
        "Super-cooperative bargaining on the coopetitive space".to_string(),
        vec![
            region("region", &coopetition::coopetitive_space(g)),
            chain("frontier", region_of(&report.coopetitive_boundary)),
            chain("tu", vec![seg[0].0.clone(), seg[1].0.clone()]),
            chain("ray", vec![sk.threat.0.clone(), sk.utopia.0.clone()]),
            marker("point", sk.threat.0.clone(), "alpha"),
            marker("point", sk.utopia.0.clone(), "U"),
            marker("point solution", sk.payoff.0.clone(), "K"),
            marker("point solution", report.super_nash_bargaining.payoff.0.clone(), "Q'"),
        ],
    ));
    out
}

/// File name and SVG text of every figure, in a fixed order.
pub fn render_all(config: &GameConfig) -> Result<Vec<(String, String)>, SvgError> {
    let report = analyze(config)?;
    Ok(figures(config, &report)
        .into_iter()
        .map(|(name, title, layers)| (name, render(&title, &layers)))
        .collect())
}

/// Writes every figure into `out_dir`, creating it if needed.
pub fn render_figures(config: &GameConfig, out_dir: &Path) -> Result<Vec<PathBuf>, SvgError> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| SvgError::Io { path, source }
    };
    std::fs::create_dir_all(out_dir).map_err(io(out_dir))?;
    let mut written = Vec::new();
    for (name, text) in render_all(config)? {
        let path = out_dir.join(name);
        std::fs::write(&path, text).map_err(io(&path))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use coopetitive_core::coopetition::CoopetitiveGame;

    #[test]
    fn thirteen_figures_in_order() {
        let names: Vec<_> = render_all(&GameConfig::worked_example())
            .unwrap()
            .into_iter()
            .map(|(n, _)| n)
            .collect();
        assert_eq!(names.len(), 13);
        assert_eq!(names[0], "fig-conservative.svg");
        assert_eq!(names[1], "fig-steps-m2-0.svg");
        assert_eq!(names[5], "fig-coopetitive-path.svg");
        assert_eq!(names[10], "fig-nash-path.svg");
        assert_eq!(names[12], "fig-super-ks.svg");
    }

    #[test]
    fn exact_vertices_are_embedded() {
        let figs = render_all(&GameConfig::worked_example()).unwrap();
        let (_, path) = figs.iter().find(|(n, _)| n == "fig-coopetitive-path.svg").unwrap();
        assert!(path.contains("data-vertices=\"-1,3 0,1 2,-1 3,0 2,2 0,4\""), "{path}");
        let (_, ks) = figs.iter().find(|(n, _)| n == "fig-ks-h.svg").unwrap();
        assert!(ks.contains("data-point=\"100/63,136/63\""));
        assert!(ks.starts_with("<?xml"));
        assert!(ks.ends_with("</svg>\n"));
    }

    #[test]
    fn viewport_mapping() {
        // [0,1]^2 -> scale 400, (1,0) at (440, 440)
        let vp = Viewport::fit(&[region("region", &cournot::conservative_part())]);
        assert_eq!(vp.map(&Rational2::from_ints(1, 0)), ("440.00".to_string(), "440.00".to_string()));
        assert_eq!(vp.map(&Rational2::from_ints(0, 1)), ("40.00".to_string(), "40.00".to_string()));
    }

    #[test]
    fn degenerate_game_still_renders() {
        let figs = render_all(&GameConfig::new(CoopetitiveGame::zero())).unwrap();
        assert_eq!(figs.len(), 13);
        assert!(figs.iter().all(|(_, s)| !s.contains("NaN")));
    }
}
