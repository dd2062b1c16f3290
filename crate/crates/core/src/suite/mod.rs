//! Seeded verification suites: each draws random finite instances, checks a
//! list of laws on every instance, and collects the outcomes into a
//! deterministic [`Report`].

mod checks;
pub mod gen;

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::{with_enumeration_cap, DEFAULT_ENUMERATION_CAP};
use crate::interchange::Interchange;
use crate::naturalmodel::{mk_bool_universe, mk_skewed_universe, Universe};

pub use checks::LAWS;

/// Parameters shared by every suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceGenConfig {
    pub seed: u64,
    pub count: usize,
    pub max_size: usize,
    pub cap: usize,
}

impl Default for InstanceGenConfig {
    fn default() -> Self {
        InstanceGenConfig { seed: 0, count: 20, max_size: 3, cap: DEFAULT_ENUMERATION_CAP }
    }
}

/// How many fresh draws an instance gets before it is reported as having
/// exceeded the cap.
pub const MAX_ATTEMPTS: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    CapExceeded,
}

/// One law checked on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub instance: usize,
    pub law: String,
    /// The statement being checked.
    pub statement: String,
    pub descriptor: String,
    pub outcome: Outcome,
    /// A counterexample on failure; supporting data otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub cap_exceeded: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: InstanceGenConfig,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    fn new(suite: &str, config: InstanceGenConfig, records: Vec<CheckRecord>) -> Self {
        let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count();
        let mut instances: Vec<usize> = records.iter().map(|r| r.instance).collect();
        instances.dedup();
        let summary = Summary {
            instances: instances.len(),
            checks: records.len(),
            passed: count(Outcome::Pass),
            failed: count(Outcome::Fail),
            cap_exceeded: count(Outcome::CapExceeded),
        };
        Report { suite: suite.to_string(), config, records, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.checks > 0 && self.summary.passed == self.summary.checks
    }

    /// Records for one law.
    pub fn law(&self, law: &str) -> impl Iterator<Item = &CheckRecord> + '_ {
        let law = law.to_string();
        self.records.iter().filter(move |r| r.law == law)
    }

    /// `0` when everything passed, `1` on any failure, `3` when every
    /// instance exceeded the cap.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed > 0 {
            1
        } else if self.summary.checks > 0 && self.summary.cap_exceeded == self.summary.checks {
            3
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "suite {}  seed {}  count {}  max-size {}  cap {}\n",
            self.suite, c.seed, c.count, c.max_size, c.cap
        );
        for r in &self.records {
            let tag = match r.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::CapExceeded => "CAP ",
            };
            let _ = write!(out, "{tag} #{:<3} {:<40} {}", r.instance, r.law, r.descriptor);
            if let Some(w) = &r.witness {
                let _ = write!(out, "  -- {w}");
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary: {} instances, {} checks, {} passed, {} failed, {} cap-exceeded",
            s.instances, s.checks, s.passed, s.failed, s.cap_exceeded
        );
        out
    }

    /// A header line, one line per record, and a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let header = serde_json::json!({ "suite": self.suite, "config": self.config });
        out.push_str(&header.to_string());
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::json!({ "summary": self.summary }).to_string());
        out.push('\n');
        out
    }
}

/// A law evaluated on an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub law: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(law: &'static str) -> Self {
        Check { law, passed: true, witness: None }
    }

    pub fn fail(law: &'static str, witness: impl Into<String>) -> Self {
        Check { law, passed: false, witness: Some(witness.into()) }
    }

    /// Passes iff `ok`; the witness is only computed on failure.
    pub fn when(law: &'static str, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(law)
        } else {
            Check::fail(law, witness())
        }
    }

    /// A law whose evaluation may itself fail with a non-cap error, which
    /// counts as a failure of the law.
    pub fn from_result(law: &'static str, result: Result<bool>, witness: impl FnOnce() -> String) -> Result<Self> {
        match result {
            Ok(ok) => Ok(Check::when(law, ok, witness)),
            Err(e) if e.is_cap_exceeded() => Err(e),
            Err(e) => Ok(Check::fail(law, e.to_string())),
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

/// A drawn instance: a short description and its checks.
#[derive(Clone, Debug, Default)]
pub struct Instance {
    pub descriptor: String,
    pub checks: Vec<Check>,
}

/// The suite identifiers accepted by [`run_suite`].
pub const SUITES: [&str; 10] = [
    "bicategory-laws",
    "coherence",
    "internal-equiv",
    "extension-composition",
    "unique-adjustment",
    "pseudomonad",
    "pseudoalgebra",
    "type-isos",
    "lift",
    "slice-reduction",
];

/// Suites that check a universe rather than random polynomials.
pub const MODEL_SUITES: [&str; 3] = ["pseudomonad", "pseudoalgebra", "type-isos"];

/// The statement checked by a law id.
pub fn statement(law: &str) -> &'static str {
    if let Some((_, s)) = LAWS.iter().find(|(id, _)| *id == law) {
        return s;
    }
    if law.ends_with("/construction") {
        "the drawn instance can be constructed"
    } else if law.ends_with("/instance") {
        "an instance within the enumeration cap can be drawn"
    } else {
        ""
    }
}

type Draw = fn(&mut ChaCha8Rng, &InstanceGenConfig) -> Result<Option<Instance>>;

fn random_suite(name: &str) -> Option<Draw> {
    Some(match name {
        "bicategory-laws" => checks::bicategory_laws,
        "coherence" => checks::coherence,
        "internal-equiv" => checks::internal_equiv,
        "extension-composition" => checks::extension_composition,
        "unique-adjustment" => checks::unique_adjustment,
        "lift" => checks::lift,
        "slice-reduction" => checks::slice_reduction,
        _ => return None,
    })
}

/// The generator for instance `index`, attempt `attempt`.
pub fn instance_rng(seed: u64, index: usize, attempt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((index as u64) << 8) | attempt);
    rng
}

fn records_of(index: usize, instance: Instance) -> Vec<CheckRecord> {
    instance
        .checks
        .into_iter()
        .map(|c| CheckRecord {
            instance: index,
            law: c.law.to_string(),
            statement: statement(c.law).to_string(),
            descriptor: instance.descriptor.clone(),
            outcome: if c.passed { Outcome::Pass } else { Outcome::Fail },
            witness: c.witness,
        })
        .collect()
}

fn single(index: usize, suite: &str, law: &str, outcome: Outcome, witness: String) -> CheckRecord {
    let law = format!("{suite}/{law}");
    CheckRecord {
        instance: index,
        statement: statement(&law).to_string(),
        law,
        descriptor: String::new(),
        outcome,
        witness: Some(witness),
    }
}

/// Draws instance `index`, resampling deterministically while the draw is
/// rejected or exceeds the cap.
fn run_random_instance(suite: &str, draw: Draw, cfg: &InstanceGenConfig, index: usize) -> Vec<CheckRecord> {
    let mut last = String::from("no admissible instance drawn");
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = instance_rng(cfg.seed, index, attempt);
        match with_enumeration_cap(cfg.cap, || draw(&mut rng, cfg)) {
            Ok(Some(instance)) => return records_of(index, instance),
            Ok(None) => {}
            Err(e) if e.is_cap_exceeded() => last = e.to_string(),
            Err(e) => return vec![single(index, suite, "construction", Outcome::Fail, e.to_string())],
        }
    }
    vec![single(index, suite, "instance", Outcome::CapExceeded, format!("{MAX_ATTEMPTS} draws rejected; last: {last}"))]
}

fn run_model_instance(
    suite: &str,
    u: &Universe,
    descriptor: &str,
    role: checks::Role,
    cfg: &InstanceGenConfig,
    index: usize,
) -> Vec<CheckRecord> {
    let result = with_enumeration_cap(cfg.cap, || checks::model(suite, u, role));
    match result {
        Ok(mut instance) => {
            instance.descriptor = descriptor.to_string();
            records_of(index, instance)
        }
        Err(e) if e.is_cap_exceeded() => vec![single(index, suite, "instance", Outcome::CapExceeded, e.to_string())],
        Err(e) => vec![single(index, suite, "construction", Outcome::Fail, e.to_string())],
    }
}

/// Runs a suite by name. The model suites check both built-in universes
/// followed by `count` random closed universes; the others draw `count`
/// random instances.
pub fn run_suite(name: &str, cfg: &InstanceGenConfig) -> Result<Report> {
    if let Some(draw) = random_suite(name) {
        let records = (0..cfg.count).flat_map(|k| run_random_instance(name, draw, cfg, k)).collect();
        return Ok(Report::new(name, *cfg, records));
    }
    if !MODEL_SUITES.contains(&name) {
        return Err(Error::Parse(format!("unknown suite {name:?}; known suites: {}", SUITES.join(", "))));
    }
    let mut records = run_model_instance(name, &mk_bool_universe(), "builtin bool", checks::Role::Bool, cfg, 0);
    records.extend(run_model_instance(name, &mk_skewed_universe(), "builtin skewed", checks::Role::Skewed, cfg, 1));
    for k in 0..cfg.count {
        let index = k + 2;
        let u = gen::random_universe(&mut instance_rng(cfg.seed, index, 0), cfg.max_size.max(2));
        let descriptor = format!("random |U|={}", u.codes().len());
        records.extend(run_model_instance(name, &u, &descriptor, checks::Role::Random, cfg, index));
    }
    Ok(Report::new(name, *cfg, records))
}

/// Runs a model suite on a single given universe.
pub fn run_model_suite(name: &str, u: &Universe, cfg: &InstanceGenConfig) -> Result<Report> {
    if !MODEL_SUITES.contains(&name) {
        return Err(Error::Parse(format!("{name:?} is not a universe suite")));
    }
    let records = run_model_instance(name, u, "input", checks::Role::Random, cfg, 0);
    Ok(Report::new(name, *cfg, records))
}

/// The kinds accepted by [`generate_random`].
pub const KINDS: [&str; 3] = ["polynomial", "morphism", "universe"];

/// A seeded random instance of the given kind as interchange JSON.
pub fn generate_random(kind: &str, cfg: &InstanceGenConfig) -> Result<serde_json::Value> {
    let max = cfg.max_size.max(1);
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = instance_rng(cfg.seed, 0, attempt);
        let drawn = with_enumeration_cap(cfg.cap, || -> Result<serde_json::Value> {
            Ok(match kind {
                "polynomial" => {
                    let i = gen::random_set(&mut rng, "i", 1, max);
                    let j = gen::random_set(&mut rng, "j", 1, max);
                    gen::random_polynomial(&mut rng, &i, &j, max).to_json()
                }
                "morphism" => gen::random_morphism(&mut rng, max)?.to_json(),
                "universe" => gen::random_universe(&mut rng, max.max(2)).to_json(),
                _ => return Err(Error::Parse(format!("unknown kind {kind:?}; known kinds: {}", KINDS.join(", ")))),
            })
        });
        match drawn {
            Err(e) if e.is_cap_exceeded() => continue,
            other => return other,
        }
    }
    Err(Error::CapExceeded { needed: 0, cap: cfg.cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(count: usize) -> InstanceGenConfig {
        InstanceGenConfig { seed: 5, count, max_size: 2, cap: DEFAULT_ENUMERATION_CAP }
    }

    #[test]
    fn every_suite_runs_and_passes() {
        for name in SUITES {
            let report = run_suite(name, &small(3)).unwrap();
            assert!(report.all_pass(), "{}", report.to_text());
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope", &small(1)).is_err());
    }

    #[test]
    fn every_law_has_a_statement() {
        for name in SUITES {
            for r in run_suite(name, &small(2)).unwrap().records {
                assert!(!r.statement.is_empty(), "{}", r.law);
            }
        }
    }

    #[test]
    fn summary_counts_match_records() {
        let report = run_suite("coherence", &small(4)).unwrap();
        let s = report.summary;
        assert_eq!(s.checks, report.records.len());
        assert_eq!(s.passed + s.failed + s.cap_exceeded, s.checks);
        assert_eq!(s.instances, 4);
    }

    #[test]
    fn cap_exhaustion_is_reported_per_instance() {
        let capped: Draw = |_, cfg| Err(Error::CapExceeded { needed: 10, cap: cfg.cap });
        let records: Vec<_> = (0..3).flat_map(|k| run_random_instance("lift", capped, &small(3), k)).collect();
        assert!(records.iter().all(|r| r.outcome == Outcome::CapExceeded && r.law == "lift/instance"));
        assert_eq!(Report::new("lift", small(3), records).exit_code(), 3);
        let rejected: Draw = |_, _| Ok(None);
        assert_eq!(run_random_instance("lift", rejected, &small(1), 0)[0].outcome, Outcome::CapExceeded);
    }

    #[test]
    fn corrupted_universe_lists_failures() {
        let u = crate::naturalmodel::mk_corrupted_universe();
        let report = run_model_suite("pseudomonad", &u, &small(0)).unwrap();
        assert_eq!(report.exit_code(), 1);
        assert!(report.records.iter().any(|r| r.outcome == Outcome::Fail && r.witness.is_some()));
    }

    #[test]
    fn generation_is_reproducible() {
        for kind in KINDS {
            assert_eq!(generate_random(kind, &small(1)).unwrap(), generate_random(kind, &small(1)).unwrap());
        }
        assert!(generate_random("nope", &small(1)).is_err());
    }
}
