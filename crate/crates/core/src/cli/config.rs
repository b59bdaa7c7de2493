//! Run-configuration documents for the `vqe` command.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::hct::ThresholdSchedule;
use crate::vqe::{Method, Rotations, VqeBasis};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ScheduleSpec {
    List(Vec<f64>),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    hamiltonian: String,
    #[serde(default)]
    pool: Option<String>,
    #[serde(default)]
    schedule: Option<ScheduleSpec>,
    #[serde(default)]
    basis: Option<String>,
    #[serde(default)]
    warm_start: Option<bool>,
    #[serde(default)]
    family: Option<String>,
    #[serde(default)]
    depth: Option<usize>,
    #[serde(default)]
    rotations: Option<String>,
    #[serde(default)]
    optimizer: Option<String>,
    #[serde(default)]
    seeds: Option<Vec<u64>>,
    #[serde(default)]
    budget: Option<usize>,
    #[serde(default)]
    noise_std: Option<f64>,
    #[serde(default)]
    dump_state: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Hwe,
    Pool,
}

/// A validated run configuration. Relative paths are resolved against the
/// directory of the configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub hamiltonian: PathBuf,
    pub pool: Option<PathBuf>,
    pub schedule: ThresholdSchedule,
    pub basis: VqeBasis,
    pub warm_start: bool,
    pub family: FamilyKind,
    pub depth: usize,
    pub rotations: Rotations,
    pub method: Method,
    pub seeds: Vec<u64>,
    pub budget: usize,
    pub noise_std: f64,
    pub dump_state: bool,
}

/// Parses a run configuration. `base` is the directory relative paths refer to.
pub fn parse_run_config(text: &str, base: &Path) -> Result<RunConfig, String> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let schedule = match raw.schedule {
        None => ThresholdSchedule::empty(),
        Some(ScheduleSpec::List(v)) => ThresholdSchedule::new(v).map_err(|e| e.to_string())?,
        Some(ScheduleSpec::Text(s)) => ThresholdSchedule::parse(&s).map_err(|e| e.to_string())?,
    };
    // tapering is the HCT frame without approximate stages
    let (basis, schedule) = match raw.basis.as_deref().unwrap_or("hct") {
        "hct" => (VqeBasis::Hct, schedule),
        "tapering" => (VqeBasis::Hct, ThresholdSchedule::empty()),
        "original" => (VqeBasis::Original, ThresholdSchedule::empty()),
        other => return Err(format!("unknown basis {other:?} (expected original, tapering or hct)")),
    };
    let family = match raw.family.as_deref().unwrap_or("hwe") {
        "hwe" => FamilyKind::Hwe,
        "pool" => FamilyKind::Pool,
        other => return Err(format!("unknown family {other:?} (expected hwe or pool)")),
    };
    if family == FamilyKind::Pool && raw.pool.is_none() {
        return Err("family \"pool\" needs a \"pool\" file".into());
    }
    let rotations = match raw.rotations.as_deref().unwrap_or("yz") {
        "y" => Rotations::Y,
        "yz" => Rotations::YZ,
        other => return Err(format!("unknown rotations {other:?} (expected y or yz)")),
    };
    let method = match raw.optimizer.as_deref() {
        Some(s) => s.parse()?,
        None if family == FamilyKind::Pool => Method::Lbfgs,
        None => Method::Cobyla,
    };
    let budget = raw.budget.unwrap_or(10_000);
    if budget == 0 {
        return Err("budget must be at least 1".into());
    }
    let noise_std = raw.noise_std.unwrap_or(0.1);
    if !(noise_std >= 0.0 && noise_std.is_finite()) {
        return Err(format!("noise_std must be a non-negative number, got {noise_std}"));
    }
    let seeds = raw.seeds.unwrap_or_else(|| vec![0]);
    if seeds.is_empty() {
        return Err("seeds must not be empty".into());
    }
    Ok(RunConfig {
        hamiltonian: base.join(raw.hamiltonian),
        pool: raw.pool.map(|p| base.join(p)),
        schedule,
        basis,
        warm_start: raw.warm_start.unwrap_or(true),
        family,
        depth: raw.depth.unwrap_or(1),
        rotations,
        method,
        seeds,
        budget,
        noise_std,
        dump_state: raw.dump_state.unwrap_or(false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<RunConfig, String> {
        parse_run_config(s, Path::new("/data"))
    }

    #[test]
    fn defaults() {
        let c = parse(r#"{"hamiltonian": "h.json", "schedule": "0.05,0.01"}"#).unwrap();
        assert_eq!(c.hamiltonian, Path::new("/data/h.json"));
        assert_eq!(c.schedule.thresholds(), [0.05, 0.01]);
        assert_eq!(c.basis, VqeBasis::Hct);
        assert_eq!(c.family, FamilyKind::Hwe);
        assert_eq!(c.method, Method::Cobyla);
        assert_eq!((c.depth, c.budget, c.seeds.clone()), (1, 10_000, vec![0]));
        assert!(c.warm_start);
    }

    #[test]
    fn variants() {
        let c = parse(r#"{"hamiltonian": "/abs/h.json", "schedule": [0.1], "basis": "original"}"#).unwrap();
        assert_eq!(c.hamiltonian, Path::new("/abs/h.json"));
        assert_eq!(c.basis, VqeBasis::Original);
        assert!(c.schedule.is_empty());
        let c = parse(r#"{"hamiltonian": "h", "family": "pool", "pool": "p"}"#).unwrap();
        assert_eq!(c.method, Method::Lbfgs);
    }

    #[test]
    fn rejects_bad_documents() {
        for bad in [
            "",
            "[]",
            r#"{"schedule": [0.1]}"#,
            r#"{"hamiltonian": "h", "schedule": [0.1, 0.2]}"#,
            r#"{"hamiltonian": "h", "basis": "diagonal"}"#,
            r#"{"hamiltonian": "h", "family": "pool"}"#,
            r#"{"hamiltonian": "h", "budget": 0}"#,
            r#"{"hamiltonian": "h", "seeds": []}"#,
            r#"{"hamiltonian": "h", "optimizer": "adam"}"#,
            r#"{"hamiltonian": "h", "colour": "red"}"#,
        ] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
