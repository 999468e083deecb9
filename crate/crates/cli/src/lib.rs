//! Batch verification driver: suites, reports, coefficient tables and the
//! on-disk cache.

pub mod cache;
pub mod config;
pub mod report;
pub mod suites;
pub mod tables;

use std::time::Instant;

use cache::Cache;
use config::{RunConfig, Suite};
use report::{Report, Timings};
use skein_core::Error;

/// Runs the configured suite and assembles its report.
pub fn run(cfg: &RunConfig) -> Result<(Report, Timings), Error> {
    cfg.validate().map_err(Error::InvalidArgument)?;
    let cache = match &cfg.cache_dir {
        None => None,
        Some(d) => match Cache::open(d) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: {e}; running without cache");
                None
            }
        },
    };
    let suites: Vec<Suite> = if cfg.suite == Suite::All { Suite::REGISTRY.to_vec() } else { vec![cfg.suite] };
    let mut sections = Vec::new();
    let mut timings = Vec::new();
    for s in suites {
        let t0 = Instant::now();
        let reports = suites::run_suite(s, cfg, cache.as_ref())?;
        for r in reports {
            sections.push((s.name().to_string(), r));
        }
        timings.push((s.name().to_string(), t0.elapsed()));
    }
    Ok((Report::new(cfg.clone(), sections), timings))
}
