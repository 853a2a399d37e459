use std::fs;
use std::path::PathBuf;

use twotype::experiments::{
    csv_columns, emit_csv, emit_plot, file_stem, preset, run_sweep_with, Parallelism, PlotKind, SweepResult, SweepSpec,
    PRESET_ALIASES, PRESET_NAMES,
};
use twotype::Error;

fn small(name: &str, size: u64, replicates: u32) -> SweepSpec {
    let mut s = preset(name).unwrap();
    s.size = size;
    s.replicates = replicates;
    if s.sweep.param == "t" {
        s.sweep.grid = vec![size as f64];
    }
    s
}

fn repo_file(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

#[test]
fn parallel_matches_sequential() {
    for (name, size) in [("fig_ER_Ex3", 800), ("fig_CM_YSYS", 800), ("table2", 20_000)] {
        let spec = small(name, size, 4);
        let seq = run_sweep_with(&spec, Parallelism::Sequential).unwrap();
        for threads in [1, 3, 8] {
            let par = run_sweep_with(&spec, Parallelism::Threads(threads)).unwrap();
            assert_eq!(seq, par, "{name} with {threads} threads");
        }
    }
}

#[test]
fn reruns_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = small("fig_ER_Ex4", 500, 3);
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    emit_csv(&run_sweep_with(&spec, Parallelism::default()).unwrap(), &a).unwrap();
    emit_csv(&run_sweep_with(&spec, Parallelism::Sequential).unwrap(), &b).unwrap();
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn different_seeds_differ() {
    let mut spec = small("fig_ER_Ex2", 500, 2);
    let a = run_sweep_with(&spec, Parallelism::Sequential).unwrap();
    spec.master_seed += 1;
    let b = run_sweep_with(&spec, Parallelism::Sequential).unwrap();
    assert_ne!(a.rows, b.rows);
}

#[test]
fn csv_headers_match_golden() {
    let golden = fs::read_to_string(repo_file("tests/golden/csv_headers.tsv")).unwrap();
    let lines: Vec<&str> = golden.lines().collect();
    assert_eq!(lines.len(), PRESET_NAMES.len());
    for (line, name) in lines.iter().zip(PRESET_NAMES) {
        let (gname, header) = line.split_once('\t').unwrap();
        assert_eq!(gname, *name);
        let r = SweepResult::empty(preset(name).unwrap());
        assert_eq!(csv_columns(&r).join(","), header, "{name}");
    }
}

#[test]
fn exported_preset_files_are_current() {
    for name in PRESET_NAMES {
        let path = repo_file(&format!("../../presets/{}.toml", file_stem(name)));
        let on_disk = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let spec = preset(name).unwrap();
        assert_eq!(on_disk, spec.to_toml(), "{name}");
        assert_eq!(SweepSpec::from_toml(&on_disk).unwrap(), spec);
    }
}

#[test]
fn aliases_resolve() {
    for (alias, name) in PRESET_ALIASES {
        assert_eq!(preset(alias).unwrap(), preset(name).unwrap());
    }
    match preset("fig99") {
        Err(Error::UnknownPreset { catalog, .. }) => assert!(catalog.contains("table2_caseIV")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn config_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.toml");
    let spec = small("fig_CM_PoYS", 300, 2);
    fs::write(&path, spec.to_toml()).unwrap();
    let back = SweepSpec::read(&path).unwrap();
    assert_eq!(back, spec);
    assert_eq!(
        run_sweep_with(&back, Parallelism::Sequential).unwrap(),
        run_sweep_with(&spec, Parallelism::Sequential).unwrap()
    );
}

#[test]
fn infeasible_points_are_flagged_not_filled() {
    let r = run_sweep_with(&small("fig_ER_Ex4", 300, 2), Parallelism::Sequential).unwrap();
    let infeasible: Vec<_> = r.rows.iter().filter(|row| !row.is_feasible()).collect();
    assert!(!infeasible.is_empty());
    for row in infeasible {
        assert_eq!(row.replicates, 0);
        assert!(row.analytic.iter().all(Option::is_none));
        assert!(row.simulated.iter().all(|s| s.mean.is_none() && s.count == 0));
    }
    let feasible = r.rows.iter().filter(|row| row.is_feasible()).count();
    assert!(feasible > 0);
}

#[test]
fn balance_infeasibility_is_flagged() {
    // Yule-Simon mean 2.5 against 1.2: type 1 cannot send more than about
    // half of its half-edges across.
    let r = run_sweep_with(&small("fig_CM_YSYS", 300, 1), Parallelism::Sequential).unwrap();
    let blue = r.series("a_blue");
    let feasible: Vec<bool> = blue.iter().map(|row| row.is_feasible()).collect();
    assert_eq!(feasible.iter().filter(|&&f| f).count(), 5);
    assert!(feasible[..5].iter().all(|&f| f));
    assert!(
        blue[5].flags[0].contains("feasible xi1 interval is [0.520000, 1]"),
        "{:?}",
        blue[5].flags
    );
    assert!(r.series("b_blue").iter().all(|row| row.is_feasible()));
}

#[test]
fn validation_names_the_field() {
    let mut s = small("fig_ER_Ex2", 100, 1);
    s.sweep.grid = vec![0.2, 0.1];
    match run_sweep_with(&s, Parallelism::Sequential) {
        Err(Error::Spec { field, .. }) => assert_eq!(field, "sweep.grid"),
        other => panic!("{other:?}"),
    }
    let mut s = small("fig_ER_Ex2", 100, 1);
    s.replicates = 0;
    assert!(matches!(s.validate(), Err(Error::Spec { field, .. }) if field == "replicates"));
    let err = SweepSpec::from_toml("name = \"x\"\nsize = 10\nbogus = 1\n").unwrap_err();
    assert!(err.to_string().contains("line"), "{err}");
}

#[test]
fn plots_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_sweep_with(&small("fig_ER_Ex5", 300, 2), Parallelism::Sequential).unwrap();
    let path = dir.path().join("largest.svg");
    emit_plot(&r, "largest", PlotKind::Line, &path).unwrap();
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<polyline").count(), r.series_labels().len());
    assert!(svg.contains("master_seed="));
    assert!(emit_plot(
        &SweepResult::empty(preset("fig_ER_Ex5").unwrap()),
        "largest",
        PlotKind::Line,
        &path
    )
    .is_err());
    assert!(emit_plot(&r, "gamma1_hat", PlotKind::Line, &path).is_err());
}

#[test]
fn pa_rows_keep_a_degree_sample() {
    let r = run_sweep_with(&small("table2_caseI", 5_000, 1), Parallelism::Sequential).unwrap();
    assert_eq!(r.rows.len(), 1);
    let sample = r.rows[0].sample.as_ref().unwrap();
    assert_eq!(sample.type_counts.iter().sum::<u64>(), 5_001);
    assert_eq!(r.rows[0].x, 5_000.0);
}
