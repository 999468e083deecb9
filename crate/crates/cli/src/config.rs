use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    RingBridge,
    TlAxioms,
    FusionSlide,
    ProjectorAxioms,
    Decat,
    TraceP2,
    TailEquality,
    SlideCertificate,
    /// Every suite above, in order.
    All,
}

impl Suite {
    pub const REGISTRY: [Suite; 8] = [
        Suite::RingBridge,
        Suite::TlAxioms,
        Suite::FusionSlide,
        Suite::ProjectorAxioms,
        Suite::Decat,
        Suite::TraceP2,
        Suite::TailEquality,
        Suite::SlideCertificate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RingBridge => "ring-bridge",
            Suite::TlAxioms => "tl-axioms",
            Suite::FusionSlide => "fusion-slide",
            Suite::ProjectorAxioms => "projector-axioms",
            Suite::Decat => "decat",
            Suite::TraceP2 => "trace-p2",
            Suite::TailEquality => "tail-equality",
            Suite::SlideCertificate => "slide-certificate",
            Suite::All => "all",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::REGISTRY.into_iter().chain([Suite::All]).find(|x| x.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Projector,
    Omega,
    Euler,
}

pub const DEFAULT_HMAX: i32 = 12;
pub const DEFAULT_QMAX: i32 = 20;

/// Parameters of one run. `level` and `strands` narrow a suite to a single
/// value; unset, each suite covers its full range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub level: Option<usize>,
    pub strands: Option<usize>,
    pub hmax: i32,
    pub qmax: i32,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(suite: Suite) -> Self {
        Self { suite, level: None, strands: None, hmax: DEFAULT_HMAX, qmax: DEFAULT_QMAX, cache_dir: None }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.hmax <= 0 || self.qmax <= 0 {
            return Err(format!("truncations must be positive, got hmax={} qmax={}", self.hmax, self.qmax));
        }
        Ok(())
    }
}
