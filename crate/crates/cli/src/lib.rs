//! Batch front end for coopetitive Cournot games: config files, the JSON
//! solution report, SVG figures and sampling oracles.

pub mod config;
pub mod report;
pub mod svg;
pub mod verify;
