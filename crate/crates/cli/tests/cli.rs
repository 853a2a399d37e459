use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use twotype::analysis::{components, degree_report};
use twotype::edgelist::EdgeListFile;
use twotype::VertexType;

fn twotype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twotype"))
        .args(args)
        .env_remove("TWOTYPE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = twotype(args);
    assert!(o.status.success(), "{args:?} failed: {}", stderr(&o));
    stdout(&o)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn gen_pa_single_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pa.txt");
    ok(&[
        "gen",
        "pa",
        "--t",
        "1",
        "--p1",
        "0.5",
        "--theta1",
        "0.8",
        "--theta2",
        "0.8",
        "--seed",
        "7",
        "--out",
        p(&out),
    ]);
    let f = EdgeListFile::read(&out).unwrap();
    assert_eq!(f.graph.n(), 2);
    assert_eq!(f.graph.edge_count(), 1);
    assert_eq!(f.header.seed, 7);
}

#[test]
fn gen_er_from_means_resolves_rates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("er.txt");
    let text = ok(&[
        "gen",
        "er",
        "--n",
        "10000",
        "--p1",
        "0.5",
        "--mu1",
        "0.5",
        "--mu2",
        "1.2",
        "--beta",
        "0.4",
        "--seed",
        "1",
        "--out",
        p(&out),
    ]);
    assert!(text.contains("resolved alpha1 = 0.600000, alpha2 = 2.00000"), "{text}");
    let g = EdgeListFile::read(&out).unwrap().graph;
    let mut sums = [0.0; 2];
    for (v, d) in g.degrees().iter().enumerate() {
        sums[g.vertex_type(v).index()] += d.total as f64;
    }
    let [n1, n2] = g.type_counts();
    assert!((sums[0] / n1 as f64 - 0.5).abs() < 0.06);
    assert!((sums[1] / n2 as f64 - 1.2).abs() < 0.06);
}

#[test]
fn gen_without_seed_records_the_chosen_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("auto.txt");
    let text = ok(&[
        "gen",
        "er",
        "--n",
        "50",
        "--p1",
        "0.5",
        "--alpha1",
        "1",
        "--alpha2",
        "1",
        "--beta",
        "1",
        "--out",
        p(&out),
    ]);
    let line = text.lines().find(|l| l.starts_with("seed: ")).expect("seed printed");
    let seed: u64 = line["seed: ".len()..].split(' ').next().unwrap().parse().unwrap();
    assert_eq!(EdgeListFile::read(&out).unwrap().header.seed, seed);
}

#[test]
fn gen_cm_reports_erasure_and_balance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cm.txt");
    let text = ok(&[
        "gen",
        "cm",
        "--n",
        "2000",
        "--p1",
        "0.5",
        "--f1",
        "poisson:0.5",
        "--f2",
        "poisson:1.5",
        "--xi1",
        "0.6",
        "--seed",
        "3",
        "--out",
        p(&out),
    ]);
    assert!(text.contains("resolved xi2"), "{text}");
    assert!(text.contains("erased"), "{text}");
    assert!(EdgeListFile::read(&out).unwrap().graph.is_multigraph());
}

#[test]
fn gen_cm_infeasible_balance_prints_interval() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cm.txt");
    let o = twotype(&[
        "gen",
        "cm",
        "--n",
        "100",
        "--p1",
        "0.5",
        "--f1",
        "yule_simon:mean=2.5",
        "--f2",
        "yule_simon:mean=1.2",
        "--xi1",
        "0.4",
        "--seed",
        "1",
        "--out",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stderr(&o).contains("feasible xi1 interval is [0.520000, 1]"),
        "{}",
        stderr(&o)
    );
    assert!(!out.exists());
}

#[test]
fn analytic_examples() {
    let pa = ok(&["analytic", "pa", "--p1", "0.1", "--theta1", "0.8", "--theta2", "0.2"]);
    assert!(pa.contains("gamma=1.12500"), "{pa}");
    assert!(pa.contains("gamma=5.50000"), "{pa}");
    let er = ok(&[
        "analytic", "er", "--p1", "0.5", "--alpha1", "1", "--alpha2", "1", "--beta", "1",
    ]);
    assert!(er.lines().any(|l| l == "lambda_c  1.00000"), "{er}");
    let cm = ok(&[
        "analytic", "cm", "--xi1", "1", "--xi2", "1", "--nu1", "0.5", "--nu2", "1.5",
    ]);
    assert!(cm.lines().any(|l| l == "lambda_c  1.50000"), "{cm}");
    let inf = ok(&[
        "analytic", "cm", "--xi1", "0.5", "--xi2", "0.5", "--nu1", "inf", "--nu2", "1.5",
    ]);
    assert!(inf.lines().any(|l| l == "lambda_c  inf"), "{inf}");
}

#[test]
fn analytic_cm_from_distributions() {
    let text = ok(&[
        "analytic",
        "cm",
        "--p1",
        "0.5",
        "--f1",
        "poisson:0.5",
        "--f2",
        "poisson:1.5",
        "--xi1",
        "1",
    ]);
    // Balance with xi1 = 1 forces xi2 = 1: the types decouple.
    assert!(text.lines().any(|l| l == "xi2       1.00000"), "{text}");
    assert!(text.lines().any(|l| l == "lambda_c  1.50000"), "{text}");
}

#[test]
fn analyze_matches_in_memory_analysis() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("pa.txt");
    let reports = dir.path().join("reports");
    ok(&[
        "gen",
        "pa",
        "--t",
        "30000",
        "--p1",
        "0.5",
        "--theta1",
        "0.8",
        "--theta2",
        "0.8",
        "--seed",
        "5",
        "--out",
        p(&graph),
    ]);
    let text = ok(&["analyze", p(&graph), "--out-dir", p(&reports)]);
    assert!(text.contains("r2="), "{text}");

    let g = EdgeListFile::read(&graph).unwrap().graph;
    let comps = components(&g);
    let csv = fs::read_to_string(reports.join("components.csv")).unwrap();
    let sizes: Vec<usize> = data_lines(&csv)[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(sizes, comps.sizes_desc);

    let degrees = degree_report(&g);
    let csv = fs::read_to_string(reports.join("degree_hist.csv")).unwrap();
    for line in &data_lines(&csv)[1..] {
        let f: Vec<u64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let t = VertexType::from_label(f[0] as u8).unwrap();
        assert_eq!(degrees.histograms[t.index()][f[1] as usize], f[2]);
    }
    for name in ["degree_ccdf.csv", "cross_ccdf.csv", "cross_means.csv"] {
        assert!(reports.join(name).exists(), "{name}");
    }
}

#[test]
fn analyze_edgeless_graph() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("empty.txt");
    fs::write(&graph, "# n=4 model=er seed=0\nv 0 1\nv 1 2\nv 2 2\nv 3 1\n").unwrap();
    let text = ok(&["analyze", p(&graph), "--out-dir", p(&dir.path().join("r"))]);
    assert!(text.lines().any(|l| l == "largest_fraction=0.250000"), "{text}");
}

#[test]
fn analyze_reports_parse_line() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("bad.txt");
    fs::write(&graph, "# n=2 model=er seed=0\nv 0 1\nv 1 2\ne 0 x\n").unwrap();
    let o = twotype(&["analyze", p(&graph), "--out-dir", p(&dir.path().join("r"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let o = twotype(&[
        "analyze",
        p(&dir.path().join("missing.txt")),
        "--out-dir",
        p(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(4));
}

const SMALL_CONFIG: &str = r#"
name = "small_er"
size = 400
replicates = 3
master_seed = 99

[model]
kind = "er"
p1 = 0.5
beta = 0.0

[model.rates]
derive = "from_means"
mu1 = 0.8
mu2 = 1.6

[sweep]
param = "beta"
grid = [0.0, 0.5, 1.0, 1.5, 2.0]
"#;

#[test]
fn experiment_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("small.toml");
    fs::write(&config, SMALL_CONFIG).unwrap();
    let run = |out: &str, threads: &str| {
        let out = dir.path().join(out);
        let text = ok(&[
            "experiment",
            "--config",
            p(&config),
            "--out-dir",
            p(&out),
            "--threads",
            threads,
        ]);
        (out, text)
    };
    let (a, text) = run("a", "1");
    let (b, _) = run("b", "4");
    let csv_a = fs::read(a.join("small_er.csv")).unwrap();
    assert_eq!(csv_a, fs::read(b.join("small_er.csv")).unwrap());
    // beta = 2.0 leaves mu1 = 0.8 below the cross-type share: flagged, not fatal.
    assert!(String::from_utf8_lossy(&csv_a).contains("infeasible"));
    assert!(text.contains("wrote"));
    for metric in ["lambda_c", "largest", "second"] {
        let svg = a.join(format!("small_er_{metric}.svg"));
        assert!(svg.exists(), "{}", svg.display());
    }
}

#[test]
fn experiment_overrides_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    ok(&[
        "experiment",
        "--preset",
        "fig2",
        "--out-dir",
        p(&out),
        "--n",
        "200",
        "--replicates",
        "2",
        "--seed",
        "17",
    ]);
    let csv = fs::read_to_string(out.join("fig_ER_Ex2_2.csv")).unwrap();
    assert!(csv.starts_with("# sweep=fig_ER_Ex2(2) model=er"), "{}", &csv[..80]);
    assert!(csv.contains("master_seed=17"));
    assert!(csv.contains("  size = 200"));
    let rows = data_lines(&csv);
    assert_eq!(rows.len(), 1 + 3 * 11);
    assert!(rows[1..].iter().all(|r| r.contains(",2,")));
}

#[test]
fn experiment_pa_prints_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pa");
    let text = ok(&[
        "experiment",
        "--preset",
        "table2_caseI",
        "--out-dir",
        p(&out),
        "--t",
        "50000",
    ]);
    assert!(text.contains("tail exponents"), "{text}");
    assert!(out.join("table2_caseI.csv").exists());
    assert!(out.join("table2_caseI_I_ccdf.svg").exists());
    assert!(out.join("table2_caseI_I_scatter.svg").exists());
}

#[test]
fn experiment_unknown_preset_lists_catalog() {
    let o = twotype(&["experiment", "--preset", "fig99", "--out-dir", "unused"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("fig_CM_PoYS") && err.contains("table2_caseV"), "{err}");
}

#[test]
fn presets_export_matches_repository() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["presets", "export", "--dir", p(dir.path())]);
    let repo = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../presets");
    let mut count = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap();
        assert_eq!(fs::read(&path).unwrap(), fs::read(repo.join(name)).unwrap(), "{name:?}");
        count += 1;
    }
    assert_eq!(count, 18);
    let list = ok(&["presets", "list"]);
    assert!(list.contains("table2_caseIV"));
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(twotype(&["frob"]).status.code(), Some(2));
    assert_eq!(twotype(&["gen", "er", "--n", "10"]).status.code(), Some(2));
    let o = twotype(&[
        "gen", "er", "--n", "10", "--p1", "2", "--alpha1", "1", "--alpha2", "1", "--beta", "1", "--seed", "1", "--out",
        "x",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p1"));
}
