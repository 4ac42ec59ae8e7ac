//! Acceptance criteria 1–14. Each test runs its laws at the stated sizes, prints one
//! PASS/FAIL line and fails on any violation or on exceeding the time limit.

use std::time::{Duration, Instant};

use stabgraph::verify::{run_law, LawReport, Overrides};

fn sized(max_n: usize, samples: usize) -> Overrides {
    Overrides {
        seed: None,
        max_n: Some(max_n),
        samples: Some(samples),
    }
}

/// Runs `laws`, prints the criterion line and asserts it passed.
fn criterion(number: u32, title: &str, limit: Duration, laws: &[(&str, Overrides)], min_instances: usize) -> Vec<LawReport> {
    let start = Instant::now();
    let reports: Vec<LawReport> = laws.iter().map(|(id, o)| run_law(id, o).expect("registered law")).collect();
    let elapsed = start.elapsed();
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    let too_few: Vec<&str> = reports.iter().filter(|r| r.instances < min_instances).map(|r| r.id.as_str()).collect();
    let ok = violations == 0 && too_few.is_empty() && elapsed <= limit;
    let detail: Vec<String> = reports.iter().map(|r| format!("{}: {} inst", r.id, r.instances)).collect();
    println!(
        "criterion {number:>2} {}: {title} [{}] {violations} violations, {:.2} s of {} s",
        if ok { "PASS" } else { "FAIL" },
        detail.join(", "),
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for r in &reports {
        if let Some(v) = r.violations.first() {
            println!("  {} first counterexample #{}: {}", r.id, v.index, v.message);
            println!("    {}", serde_json::to_string(&v.instance).unwrap());
        }
    }
    assert_eq!(violations, 0, "criterion {number} has violations");
    assert!(too_few.is_empty(), "criterion {number}: too few instances for {too_few:?}");
    assert!(elapsed <= limit, "criterion {number} took {elapsed:?}");
    reports
}

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

#[test]
fn criterion_01_observations() {
    let o = sized(5, 0);
    let reports = criterion(
        1,
        "chi deletion observations on all labeled graphs n <= 5",
        minutes(5),
        &[("obs1", o), ("obs2", o), ("obs3", o), ("obs4", o)],
        1100,
    );
    // 1 + 1 + 2 + 8 + 64 + 1024 labeled graphs on 0..=5 vertices.
    assert!(reports.iter().all(|r| r.instances == 1100));
}

#[test]
fn criterion_02_complement_identities() {
    let o = sized(4, 500);
    let laws: Vec<(&str, Overrides)> = [
        "prop1.1", "prop1.2", "prop1.3", "prop1.4", "prop1.5", "prop1.6", "prop1.7", "prop2.1", "prop2.2",
    ]
    .into_iter()
    .map(|id| (id, o))
    .collect();
    // 76 labeled graphs with n <= 4 plus 500 random ones.
    criterion(2, "complement and vertex-class identities element-wise", minutes(5), &laws, 576);
}

#[test]
fn criterion_03_replication() {
    criterion(3, "replication keeps chi on all (G, v), n <= 5", minutes(2), &[("lem6", sized(5, 0))], 1100);
}

#[test]
fn criterion_04_chi_gadget() {
    let o = sized(5, 100);
    criterion(
        4,
        "chi edge stabilizer, 100 random (G, S)",
        minutes(10),
        &[("lem7.p1", o), ("lem7.p2", o), ("lem7.p3", o)],
        100,
    );
}

#[test]
fn criterion_05_beta_gadgets() {
    let o = sized(5, 100);
    let laws: Vec<(&str, Overrides)> = [
        "lem9.shift", "lem9.gadget-edges", "lem9.other-edges", "lem13.p1", "lem13.p2", "lem13.p3", "lem13.p4", "lem13.p5",
    ]
    .into_iter()
    .map(|id| (id, o))
    .collect();
    criterion(5, "beta stabilizer and two-way gadget, 100 random (G, e)", minutes(10), &laws, 100);
}

#[test]
fn criterion_06_and_functions() {
    let o = Overrides::default();
    criterion(
        6,
        "join AND functions over the pool multisets",
        minutes(10),
        &[("thm3.vertex-stability", o), ("thm3.unfrozenness", o), ("cor2", o)],
        77,
    );
}

#[test]
fn criterion_07_formulas() {
    let o = sized(4, 200);
    criterion(
        7,
        "exact-3 conversion, padding constructions and OR2",
        minutes(5),
        &[("lem4", o), ("thm4.unsat-padding", o), ("thm4.sat-to-stable", o), ("thm4.or2", o)],
        200,
    );
}

#[test]
fn criterion_08_cai_meyer() {
    let o = sized(3, 50);
    criterion(
        8,
        "Cai-Meyer and replication over 8-block plus 50 random formulas",
        minutes(15),
        &[("cai-meyer", o), ("lem5", o), ("thm5", o)],
        51,
    );
}

#[test]
fn criterion_09_beta_stability_pipeline() {
    criterion(9, "beta-stability comparison pipeline, all class pairs n <= 3", minutes(45), &[("thm9.end2end", sized(3, 0))], 64);
}

#[test]
fn criterion_10_beta_unfrozenness_pipeline() {
    criterion(10, "beta-unfrozenness comparison pipeline, all class pairs n <= 3", minutes(2), &[("thm11.end2end", sized(3, 0))], 64);
}

#[test]
fn criterion_11_two_way_pipelines() {
    let o = sized(4, 0);
    criterion(
        11,
        "two-way pipelines, all graphs n <= 4",
        minutes(10),
        &[("thm14.end2end", o), ("thm15.end2end", o)],
        76,
    );
}

#[test]
fn criterion_12_colorability_comparison() {
    criterion(12, "colorability count comparison, k in {1, 2}", minutes(5), &[("thm13.end2end", Overrides::default())], 13);
}

#[test]
fn criterion_13_conditional_unfrozenness() {
    // 19 isomorphism classes with n <= 4.
    criterion(13, "conditional unfrozenness with the exact unfreezer, n <= 4", minutes(15), &[("thm12.end2end", sized(4, 0))], 361);
}

#[test]
fn criterion_14_closed_forms() {
    criterion(14, "closed forms against vertex-addition enumeration, n <= 4", minutes(2), &[("closed-forms", sized(4, 0))], 76);
}
