//! End-to-end checks of the run harness: determinism, worker independence,
//! cell isolation, file emission, and manifest integrity.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use iprlab::harness::{emit_figure_data, run_ensemble, write_manifest, RunConfig};
use iprlab::Error;

fn base_config(out: &Path) -> RunConfig {
    RunConfig {
        cells: vec![(20, 3)],
        graphs: 4,
        seed: 11,
        out: out.to_path_buf(),
        ..RunConfig::default()
    }
}

#[test]
fn complete_graph_cell_is_degenerate_and_files_exist() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_config(dir.path());
    cfg.cells = vec![(4, 3)];
    cfg.graphs = 3;
    let record = run_ensemble(&cfg).unwrap();
    assert!(record.all_ok());
    let cell = &record.cells[0];

    // Only one 3-regular graph on 4 vertices exists, so every draw is K4 and
    // the graph-to-graph spread collapses.
    assert_eq!(cell.graph_rows.len(), 3);
    let first = cell.graph_rows[0];
    for row in &cell.graph_rows {
        assert_eq!((row.1, row.2, row.3), (first.1, first.2, first.3));
    }
    assert_eq!(cell.stats.std_ipr, 0.0);
    // K4 Laplacian eigenvalues away from the zero mode are all 4.
    for &(_, _, eig, _) in &cell.mode_rows {
        assert!((eig - 4.0).abs() < 1e-12);
    }

    for name in [
        "ipr_per_mode_n4_z3.csv",
        "eigen_hist_n4_z3.csv",
        "ipr_hist_n4_z3.csv",
        "graph_summaries_n4_z3.csv",
        "ensemble_summary.csv",
        "run_metadata.txt",
        "manifest.txt",
    ] {
        assert!(dir.path().join(name).is_file(), "missing {name}");
    }

    // The manifest must cover every file except itself, with correct digests.
    let manifest = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    let mut listed = 0;
    for line in manifest.lines() {
        let (hex, rel) = line.split_once("  ").unwrap();
        let bytes = fs::read(dir.path().join(rel)).unwrap();
        let digest = Sha256::digest(&bytes);
        let recomputed: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(hex, recomputed, "digest mismatch for {rel}");
        listed += 1;
    }
    let on_disk = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(listed + 1, on_disk);
}

#[test]
fn output_is_independent_of_worker_count() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    let mut cfg1 = base_config(dir1.path());
    cfg1.cells = vec![(14, 3), (12, 4)];
    cfg1.workers = 1;
    let mut cfg2 = cfg1.clone();
    cfg2.out = dir2.path().to_path_buf();
    cfg2.workers = 3;

    run_ensemble(&cfg1).unwrap();
    run_ensemble(&cfg2).unwrap();

    let mut names: Vec<String> = fs::read_dir(dir1.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".csv"))
        .collect();
    names.sort();
    assert!(names.len() >= 9);
    for name in names {
        let a = fs::read(dir1.path().join(&name)).unwrap();
        let b = fs::read(dir2.path().join(&name)).unwrap();
        assert_eq!(a, b, "{name} differs between worker counts");
    }
}

#[test]
fn census_cell_enumerates_all_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_config(dir.path());
    cfg.cells.clear();
    cfg.exhaustive_cells = vec![(8, 3)];
    let record = run_ensemble(&cfg).unwrap();
    let cell = &record.cells[0];
    assert!(cell.exhaustive);
    assert_eq!(cell.stats.graph_count, 5);
    assert_eq!(cell.graph_rows.len(), 5);
    assert!(dir.path().join("ipr_per_mode_n8_z3_census.csv").is_file());
}

#[test]
fn failing_cell_is_isolated_and_reported() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_config(dir.path());
    // n = 3 has a zero exact variance, which the ensemble statistics reject,
    // so the (3, 2) cell fails while (4, 3) completes.
    cfg.cells = vec![(4, 3), (3, 2)];
    let record = run_ensemble(&cfg).unwrap();
    assert!(!record.all_ok());
    assert_eq!(record.cells.len(), 1);
    assert_eq!(record.failures.len(), 1);
    assert_eq!((record.failures[0].n, record.failures[0].z), (3, 2));
    assert!(dir.path().join("error_n3_z2.txt").is_file());

    let summary = fs::read_to_string(dir.path().join("ensemble_summary.csv")).unwrap();
    let rows: Vec<&str> = summary.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("4,3,"));
}

#[test]
fn figure_emission_writes_expected_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_config(dir.path());
    cfg.cells = vec![(14, 3), (20, 3)];
    cfg.exhaustive_cells = vec![(8, 3)];
    let record = run_ensemble(&cfg).unwrap();

    for figure in [2, 3, 5, 6, 7, 8, 9, 10] {
        let paths = emit_figure_data(&record, figure).unwrap();
        assert!(!paths.is_empty());
        for p in &paths {
            assert!(p.is_file());
        }
    }

    // Size-scaling files order rows by (z, n) and include the census cell.
    let fig5 = fs::read_to_string(dir.path().join("fig5.csv")).unwrap();
    let ns: Vec<&str> = fig5
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ns, ["8", "14", "20"]);

    // The fixed-degree trend only includes z = 3 cells, sorted by n.
    let fig9 = fs::read_to_string(dir.path().join("fig9.csv")).unwrap();
    assert_eq!(fig9.lines().count(), 4);

    assert!(matches!(
        emit_figure_data(&record, 42),
        Err(Error::UnknownFigure(_))
    ));

    // Refreshing the manifest picks up the figure files.
    let entries = write_manifest(dir.path()).unwrap();
    assert!(entries.iter().any(|(rel, _)| rel == "fig9.csv"));
}

#[test]
fn missing_inputs_fail_figure_emission() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_config(dir.path());
    cfg.cells = vec![(12, 4)];
    let record = run_ensemble(&cfg).unwrap();
    // No degree-3 cells and no census cells in this run.
    assert!(matches!(
        emit_figure_data(&record, 9),
        Err(Error::MissingFigureInput(_))
    ));
    assert!(matches!(
        emit_figure_data(&record, 10),
        Err(Error::MissingFigureInput(_))
    ));
}

#[test]
fn verify_toggle_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_config(dir.path());
    cfg.cells = vec![(4, 3)];
    cfg.sphere_verify = true;
    cfg.sphere_ns = vec![3];
    cfg.mc_samples = 2_000;
    let record = run_ensemble(&cfg).unwrap();
    let report = record.verify.as_ref().unwrap();
    assert!(report.all_pass());
    assert!(dir.path().join("verify_report.txt").is_file());
    let js = fs::read_to_string(dir.path().join("verify_report.json")).unwrap();
    let parsed: iprlab::harness::VerifyReport = serde_json::from_str(&js).unwrap();
    assert_eq!(parsed.checks.len(), report.checks.len());
}

#[test]
fn eigenvector_dump_rows_are_unit_norm() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_config(dir.path());
    cfg.cells = vec![(6, 3)];
    cfg.graphs = 1;
    cfg.dump_eigenvectors = true;
    run_ensemble(&cfg).unwrap();
    let dump = fs::read_to_string(dir.path().join("eigenvectors_n6_z3_g0.csv")).unwrap();
    assert_eq!(dump.lines().count(), 6);
    for line in dump.lines() {
        let fields: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(fields.len(), 7);
        let norm2: f64 = fields[1..].iter().map(|c| c * c).sum();
        assert!((norm2 - 1.0).abs() < 1e-10);
    }
}
