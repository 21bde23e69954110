use std::path::Path;

use parity_forge::recipe::Recipe;
use parity_forge::verify::{
    check_internal, check_vanishing, internal_residues, proof_step_table, run_suite,
    shifted_offset_mutants, Arithmetic, Checker, CongruenceFamily, InternalCongruence, RunConfig,
    Status,
};

fn assert_all_pass(config: &RunConfig) {
    let reports = run_suite("all", config).unwrap();
    let failing: Vec<_> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.id.as_str())
        .collect();
    assert!(failing.is_empty(), "order {}: {failing:?}", config.order);
}

#[test]
fn every_entry_passes_at_default_order() {
    assert_all_pass(&RunConfig::default());
}

#[test]
fn every_entry_passes_at_a_smaller_order() {
    assert_all_pass(&RunConfig {
        order: 1213,
        deep_order: 7001,
        ..RunConfig::default()
    });
}

#[test]
fn reports_are_sorted_by_id() {
    let reports = run_suite("lemmas", &RunConfig::with_order(500)).unwrap();
    let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["D_PROD", "LEM_2_1", "LEM_2_2", "LEM_2_3", "Y_PROD"]);
}

#[test]
fn shifted_offsets_fail_within_order_500() {
    for mutant in shifted_offset_mutants() {
        let report = check_vanishing(&mutant, 500).unwrap();
        assert_eq!(report.status, Status::Fail, "{}", mutant.id);
        let cex = report.counterexample.unwrap();
        assert_eq!(cex.index, mutant.stride * cex.n + mutant.offset);
        assert!(cex.index <= 500);
    }
}

#[test]
fn modular_and_exact_paths_agree_on_a5_mod_5() {
    let family = CongruenceFamily {
        id: "THM_1_2".into(),
        recipe: Recipe::ak(5),
        stride: 5,
        offset: 3,
        modulus: 5,
        params: vec![],
    };
    let shifted = CongruenceFamily {
        offset: 2,
        ..family.clone()
    };
    for f in [family, shifted] {
        let a = Checker::new(Arithmetic::Modular)
            .check_vanishing(&f, 500)
            .unwrap();
        let b = Checker::new(Arithmetic::Exact)
            .check_vanishing(&f, 500)
            .unwrap();
        assert_eq!(
            (a.status, a.range_checked, a.counterexample),
            (b.status, b.range_checked, b.counterexample)
        );
    }
}

#[test]
fn internal_congruence_examples() {
    let make = |k, lhs, rhs| InternalCongruence {
        id: format!("a{k}"),
        recipe: Recipe::ak(k),
        modulus: 3,
        lhs,
        rhs,
    };
    assert!(check_internal(&make(2, (27, 0), (3, 0)), 2000)
        .unwrap()
        .passed());
    assert!(check_internal(&make(5, (27, 10), (3, 1)), 2000)
        .unwrap()
        .passed());
    let mutant = check_internal(&make(5, (27, 10), (3, 2)), 2000).unwrap();
    assert_eq!(mutant.status, Status::Fail);
    assert!(mutant.counterexample.unwrap().n < 5);
}

#[test]
fn residue_tables_follow_parity_rule() {
    let rows: Vec<(u64, u64)> = (0..=8).map(internal_residues).collect();
    assert_eq!(
        rows,
        [
            (0, 0),
            (10, 1),
            (2, 0),
            (12, 1),
            (4, 0),
            (14, 1),
            (6, 0),
            (16, 1),
            (8, 0)
        ]
    );
}

#[test]
fn deep_instance_checks_expected_progression() {
    let config = RunConfig {
        params: "alpha=2..2".parse().unwrap(),
        ..RunConfig::default()
    };
    let reports = run_suite("thm_1_3", &config).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].order_used, 20000);
    // 2187 n + 1549 <= 20000 for n = 0..=8.
    assert_eq!(reports[0].range_checked, 9);
    assert!(reports[0].passed());
}

#[test]
fn book_lists_every_proof_step() {
    let chapter = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../book/src/proof-steps.md");
    let text = std::fs::read_to_string(chapter).unwrap();
    assert!(
        text.contains(&proof_step_table()),
        "regenerate the table in book/src/proof-steps.md"
    );
}
