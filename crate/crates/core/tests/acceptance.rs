//! The acceptance criteria, one line each. Runs without the test harness so
//! the lines are always printed; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use polyverse::naturalmodel::{mk_bool_universe, mk_skewed_universe, Universe};
use polyverse::suite::{run_suite, InstanceGenConfig, Outcome, Report, SUITES};

struct Verdict {
    ok: bool,
    detail: String,
}

fn config(seed: u64, count: usize, max_size: usize) -> InstanceGenConfig {
    InstanceGenConfig { seed, count, max_size, ..InstanceGenConfig::default() }
}

fn run(name: &str, cfg: &InstanceGenConfig) -> Report {
    run_suite(name, cfg).expect("known suite")
}

/// Instances at which every record passed.
fn clean_instances(report: &Report) -> usize {
    let mut ids: Vec<usize> = report.records.iter().map(|r| r.instance).collect();
    ids.dedup();
    ids.into_iter()
        .filter(|k| report.records.iter().filter(|r| r.instance == *k).all(|r| r.outcome == Outcome::Pass))
        .count()
}

fn laws_at(report: &Report, instance: usize, law: &str) -> usize {
    report.records.iter().filter(|r| r.instance == instance && r.law == law).count()
}

fn failures(report: &Report) -> String {
    let bad: Vec<String> = report
        .records
        .iter()
        .filter(|r| r.outcome != Outcome::Pass)
        .take(3)
        .map(|r| format!("#{} {} {:?}", r.instance, r.law, r.witness))
        .collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("; first failures: {}", bad.join(" | "))
    }
}

/// Every instance passes everything and there are at least `min` of them.
fn sweep(report: &Report, min: usize, per_instance: &[(&str, usize)]) -> Verdict {
    let clean = clean_instances(report);
    let shape_ok = (0..report.config.count).all(|k| per_instance.iter().all(|(law, n)| laws_at(report, k, law) >= *n));
    Verdict {
        ok: report.all_pass() && clean >= min && shape_ok,
        detail: format!(
            "{clean}/{} instances clean, {} checks{}",
            report.config.count,
            report.summary.checks,
            failures(report)
        ),
    }
}

fn passes(report: &Report, instance: usize, law: &str) -> bool {
    let mut matching = report.records.iter().filter(|r| r.instance == instance && r.law == law).peekable();
    matching.peek().is_some() && matching.all(|r| r.outcome == Outcome::Pass)
}

fn criterion_1() -> Verdict {
    let report = run("extension-composition", &config(1, 50, 3));
    sweep(&report, 50, &[("extension-composition/round-trip", 3), ("extension-composition/naturality", 6)])
}

fn criterion_2() -> Verdict {
    let report = run("unique-adjustment", &config(2, 100, 3));
    sweep(&report, 100, &[("unique-adjustment/exactly-one", 1), ("unique-adjustment/formula", 1)])
}

fn criterion_3() -> Verdict {
    let report = run("coherence", &config(11, 20, 3));
    sweep(&report, 20, &[("coherence/pentagon", 1), ("coherence/triangle", 1)])
}

fn criterion_4() -> Verdict {
    let report = run("internal-equiv", &config(4, 20, 3));
    sweep(
        &report,
        20,
        &[
            ("internal-equiv/category-laws", 3),
            ("internal-equiv/functoriality", 1),
            ("internal-equiv/full-faithful", 3),
            ("internal-equiv/four-way", 1),
        ],
    )
}

fn criterion_5() -> Verdict {
    let monad = run("pseudomonad", &config(5, 0, 3));
    let algebra = run("pseudoalgebra", &config(5, 0, 3));
    let checks = [
        ("bool monad strict", passes(&monad, 0, "pseudomonad/strict")),
        ("bool algebra strict", passes(&algebra, 0, "pseudoalgebra/strict")),
        ("skewed ρ non-identity, right unit fails", passes(&monad, 1, "pseudomonad/non-strict-unit")),
        ("monad pastings", monad.all_pass()),
        ("algebra pastings", algebra.all_pass()),
    ];
    let failed: Vec<_> = checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    let witness = monad.law("pseudomonad/non-strict-unit").next().and_then(|r| r.witness.clone()).unwrap_or_default();
    Verdict {
        ok: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("skewed ρ: {witness}")
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

/// Independent count of the `(A, B, C)` choices for the two three-argument
/// rows: `Σ_A Σ_{B : El(A) → U} |U|^{Σ_{x} |El(B x)|}`.
fn three_argument_instances(u: &Universe) -> usize {
    let codes: Vec<_> = u.codes().iter().collect();
    let sizes: Vec<usize> = codes.iter().map(|c| u.el_of(c).unwrap().len()).collect();
    let mut total = 0;
    for a in 0..codes.len() {
        // every B is a choice of code per element of El(A)
        let mut stack = vec![(0usize, 0usize)];
        while let Some((placed, dom)) = stack.pop() {
            if placed == sizes[a] {
                total += codes.len().pow(dom as u32);
                continue;
            }
            for size in &sizes {
                stack.push((placed + 1, dom + size));
            }
        }
    }
    total
}

fn criterion_6() -> Verdict {
    let report = run("type-isos", &config(6, 0, 3));
    let rows = [
        "type-isos/sigma-assoc",
        "type-isos/sigma-right-unit",
        "type-isos/sigma-left-unit",
        "type-isos/pi-currying",
        "type-isos/pi-left-unit",
    ];
    let all_rows = (0..2).all(|k| rows.iter().all(|row| passes(&report, k, row)));
    let mut counts_ok = true;
    for u in [mk_bool_universe(), mk_skewed_universe()] {
        let iso = polyverse::naturalmodel::verify_type_isos(&u).unwrap();
        let expected = three_argument_instances(&u);
        let n = u.codes().len();
        counts_ok &= iso.rows[0].checked == expected
            && iso.rows[3].checked == expected
            && [1, 2, 4].iter().all(|&r| iso.rows[r].checked == n);
    }
    let strict = passes(&report, 0, "type-isos/strict");
    let skew = passes(&report, 1, "type-isos/non-strict-witness");
    Verdict {
        ok: all_rows && counts_ok && strict && skew && report.all_pass(),
        detail: format!(
            "rows {all_rows}, exhaustive counts {counts_ok}, bool strict {strict}, skewed witness {skew}{}",
            failures(&report)
        ),
    }
}

fn criterion_7() -> Verdict {
    let report = run("lift", &config(7, 30, 3));
    sweep(
        &report,
        30,
        &[
            ("lift/identity", 1),
            ("lift/composite", 1),
            ("lift/pullback", 1),
            ("lift/unit-pullback", 2),
            ("lift/mult-pullback", 2),
        ],
    )
}

fn criterion_8() -> Verdict {
    let report = run("slice-reduction", &config(8, 30, 3));
    sweep(
        &report,
        30,
        &[
            ("slice-reduction/polynomial-round-trip", 2),
            ("slice-reduction/morphism-round-trip", 2),
            ("slice-reduction/cartesian-preserved", 2),
        ],
    )
}

fn criterion_9() -> Verdict {
    let mut differing = Vec::new();
    for name in SUITES {
        let cfg = config(9, 5, 3);
        let (a, b) = (run(name, &cfg), run(name, &cfg));
        if a.to_json_lines() != b.to_json_lines() || a.to_text() != b.to_text() {
            differing.push(name);
        }
    }
    Verdict {
        ok: differing.is_empty(),
        detail: if differing.is_empty() {
            format!("{} suites byte-identical across runs", SUITES.len())
        } else {
            format!("differing: {}", differing.join(", "))
        },
    }
}

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Verdict, u64);

fn main() {
    let criteria: [Criterion; 9] = [
        ("extension-composition", criterion_1, 60),
        ("unique-adjustment", criterion_2, 30),
        ("coherence", criterion_3, 120),
        ("internal-category", criterion_4, 60),
        ("pseudomonad/pseudoalgebra", criterion_5, 30),
        ("type-isomorphisms", criterion_6, 10),
        ("lift", criterion_7, 60),
        ("slice-reduction", criterion_8, 30),
        ("determinism", criterion_9, 600),
    ];
    let mut all = true;
    for (k, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let ok = verdict.ok && in_time;
        all &= ok;
        println!(
            "criterion {}: {} {name} ({:.2}s of {budget}s) {}",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            verdict.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
