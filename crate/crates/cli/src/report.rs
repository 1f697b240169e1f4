//! The structured result of one run.

use abovelp::HalfInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Optimal,
    NoSolutionWithinK,
    Error,
}

/// Certificates in file terms: vertices 1-indexed, assignments as signed
/// DIMACS literals, program values in variable order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Vertices(Vec<usize>),
    Assignment(Vec<i64>),
    Values(Vec<i64>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    pub nodes: u64,
    pub leaves: u64,
    pub augmentations: u64,
    pub depth: u64,
}

/// Half-integral quantities are written as decimal strings such as `"1.5"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    pub status: Status,
    pub k: Option<String>,
    pub objective: Option<i64>,
    pub lp: Option<String>,
    pub gap: Option<String>,
    pub solution: Option<Payload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<RunStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// SHA-256 of the input file.
    pub digest: String,
    /// Only present under `--timing`, which makes reports nondeterministic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    hash.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn half(h: HalfInt) -> String {
    h.to_string()
}

impl RunReport {
    pub fn new(problem: &str, digest: String) -> Self {
        RunReport {
            problem: problem.to_string(),
            status: Status::Error,
            k: None,
            objective: None,
            lp: None,
            gap: None,
            solution: None,
            stats: None,
            verified: None,
            message: None,
            digest,
            wall_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Optimal => "optimal",
            Status::NoSolutionWithinK => "no-solution-within-k",
            Status::Error => "error",
        };
        let _ = writeln!(out, "problem: {}", self.problem);
        let _ = writeln!(out, "status: {status}");
        let fields = [("k", &self.k), ("lp", &self.lp), ("gap", &self.gap)];
        if let Some(obj) = self.objective {
            let _ = writeln!(out, "objective: {obj}");
        }
        for (name, value) in fields {
            if let Some(v) = value {
                let _ = writeln!(out, "{name}: {v}");
            }
        }
        if let Some(p) = &self.solution {
            let (name, items): (&str, Vec<String>) = match p {
                Payload::Vertices(v) => ("vertices", v.iter().map(|x| x.to_string()).collect()),
                Payload::Assignment(a) => ("assignment", a.iter().map(|x| x.to_string()).collect()),
                Payload::Values(v) => ("values", v.iter().map(|x| x.to_string()).collect()),
            };
            let _ = writeln!(out, "{name}: {}", items.join(" "));
        }
        if let Some(s) = &self.stats {
            let _ = writeln!(out, "stats: nodes={} leaves={} augmentations={} depth={}", s.nodes, s.leaves, s.augmentations, s.depth);
        }
        if let Some(v) = self.verified {
            let _ = writeln!(out, "verified: {v}");
        }
        if let Some(m) = &self.message {
            let _ = writeln!(out, "message: {m}");
        }
        let _ = writeln!(out, "digest: {}", self.digest);
        if let Some(ms) = self.wall_ms {
            let _ = writeln!(out, "wall_ms: {ms:.3}");
        }
        out
    }
}
