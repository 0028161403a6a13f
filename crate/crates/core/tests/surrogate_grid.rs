//! The experiment grid on a synthetic stand-in for the Congress network
//! (475 nodes, about 13k edges, heavy-tailed degrees). Threshold
//! monotonicity and reproducibility must hold on any graph; the RIS-vs-baseline
//! comparison is reported but not asserted.

mod common;

use std::io::Write;

use common::grid;
use motif_profit::harness::{run_experiment, ProbabilityKind};
use motif_profit::Execution;

#[test]
fn surrogate_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("surrogate.edgelist");
    let edges = common::congress_like(475);
    let text: String = edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect();
    std::fs::write(&path, text).unwrap();

    let runs = grid::run_all(&path, 11).unwrap();
    let expected = grid::BUDGETS.len() * grid::THRESHOLDS.len() * 5;
    for run in &runs {
        assert_eq!(run.failures, 0);
        assert_eq!(run.records.len(), expected);
        assert!(run.records.iter().all(|r| r.seed_cost <= r.budget));
    }

    let d = grid::directional(&runs);
    let (checked, bad, examples) = grid::threshold_violations(&runs);
    let _ = writeln!(
        std::io::stderr(),
        "surrogate grid ({} edges): RIS ≥ Random & HighDegree in {}/{} cells, ≥ every baseline in {}/{}; \
         threshold monotonicity {}/{} cells",
        edges.len(),
        d.beats_simple,
        d.cells,
        d.beats_all,
        d.cells,
        checked - bad,
        checked
    );
    assert_eq!(bad, 0, "{examples:?}");

    // rerun one slice of the grid with the same seed
    let first = runs
        .iter()
        .find(|r| r.prob == ProbabilityKind::Trivalency && r.motif_size == 3)
        .unwrap();
    let again = run_experiment(
        &grid::config(&path, ProbabilityKind::Trivalency, 3, 11),
        Execution::Sequential,
    )
    .unwrap();
    let again = [grid::GridRun {
        prob: ProbabilityKind::Trivalency,
        motif_size: 3,
        records: again.records,
        failures: again.failures.len(),
    }];
    assert_eq!(
        grid::csv_without_timing(std::slice::from_ref(first)),
        grid::csv_without_timing(&again)
    );
}
