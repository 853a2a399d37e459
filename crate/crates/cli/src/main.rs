use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use twotype::analysis::{self, fit_tail_exponent, fit_tail_exponent_default, ExponentFit};
use twotype::analytic::{
    cm_balance_xi2, cm_lambda_c, er_lambda_c, er_mean_degrees, pa_expected_cross_degrees, pa_exponents, pa_rates,
    CmMixParams, ErParams, Extended, PaParams,
};
use twotype::edgelist::EdgeListFile;
use twotype::experiments::{
    self, degree_ccdf_plot, emit_csv, file_stem, header_comments, DistSpec, Parallelism, Plot, PlotKind, SweepResult,
    SweepSpec,
};
use twotype::generators::{generate_cm, generate_er, generate_pa};
use twotype::rng::RNG_ALGORITHM;
use twotype::{Error, RngStream, VertexType, TOOL_VERSION};

#[derive(Parser)]
#[command(
    name = "twotype",
    version,
    about = "Two-type random graphs: generation, analysis and experiment sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph and write it as an edge list.
    #[command(subcommand)]
    Gen(GenModel),
    /// Evaluate closed-form thresholds and exponents.
    #[command(subcommand)]
    Analytic(AnalyticModel),
    /// Component and degree reports for an edge-list file.
    Analyze(AnalyzeArgs),
    /// Run a preset or a sweep config.
    Experiment(ExperimentArgs),
    /// List or export the preset catalog.
    #[command(subcommand)]
    Presets(PresetsCommand),
}

#[derive(Args)]
struct ErRateArgs {
    #[arg(long)]
    p1: f64,
    #[arg(long, required_unless_present = "mu1", requires = "alpha2", conflicts_with_all = ["mu1", "mu2"])]
    alpha1: Option<f64>,
    #[arg(long, requires = "alpha1")]
    alpha2: Option<f64>,
    /// Type 1 mean degree; alpha1 is solved from it and beta.
    #[arg(long, requires = "mu2")]
    mu1: Option<f64>,
    #[arg(long, requires = "mu1")]
    mu2: Option<f64>,
    #[arg(long)]
    beta: f64,
}

impl ErRateArgs {
    fn resolve(&self) -> twotype::Result<ErParams> {
        match (self.alpha1, self.alpha2, self.mu1, self.mu2) {
            (Some(a1), Some(a2), _, _) => ErParams::new(self.p1, a1, a2, self.beta),
            (_, _, Some(m1), Some(m2)) => ErParams::from_means(self.p1, m1, m2, self.beta),
            _ => unreachable!("clap enforces one complete parameterization"),
        }
    }

    fn uses_means(&self) -> bool {
        self.mu1.is_some()
    }
}

#[derive(Args)]
struct CmDistArgs {
    #[arg(long)]
    p1: f64,
    /// Type 1 degree law: poisson:<mean>, yule_simon:mean=<m>, yule_simon:shape=<rho> or file:<path>.
    #[arg(long)]
    f1: String,
    #[arg(long)]
    f2: String,
    #[arg(long)]
    xi1: f64,
    /// Defaults to the value solving the balance condition.
    #[arg(long)]
    xi2: Option<f64>,
}

#[derive(Args)]
struct PaArgs {
    #[arg(long)]
    p1: f64,
    #[arg(long)]
    theta1: f64,
    #[arg(long)]
    theta2: f64,
}

#[derive(Args)]
struct OutputArgs {
    /// Seed; chosen from the clock and recorded in the header when omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum GenModel {
    Er {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        rates: ErRateArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    Cm {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        dist: CmDistArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    Pa {
        #[arg(long)]
        t: u64,
        #[command(flatten)]
        params: PaArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum AnalyticModel {
    Er {
        #[command(flatten)]
        rates: ErRateArgs,
    },
    /// Either `--xi1 --xi2 --nu1 --nu2` or `--p1 --f1 --f2 --xi1 [--xi2]`.
    Cm {
        #[arg(long)]
        xi1: f64,
        #[arg(long)]
        xi2: Option<f64>,
        /// Size-biased mean of type 1; `inf` allowed.
        #[arg(long, requires = "nu2", conflicts_with_all = ["f1", "f2", "p1"])]
        nu1: Option<String>,
        #[arg(long, requires = "nu1")]
        nu2: Option<String>,
        #[arg(long, requires_all = ["f1", "f2"])]
        p1: Option<f64>,
        #[arg(long, requires = "p1")]
        f1: Option<String>,
        #[arg(long, requires = "p1")]
        f2: Option<String>,
    },
    Pa {
        #[command(flatten)]
        params: PaArgs,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[arg(long)]
    out_dir: PathBuf,
    /// Regression window lower end (default 10).
    #[arg(long, requires = "k_max")]
    k_min: Option<u64>,
    #[arg(long, requires = "k_min")]
    k_max: Option<u64>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
    /// Overrides the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; 0 picks one per core, 1 runs sequentially.
    #[arg(long, env = "TWOTYPE_THREADS", default_value_t = 0)]
    threads: usize,
    /// Vertex count for ER and CM sweeps.
    #[arg(long, conflicts_with = "t")]
    n: Option<u64>,
    /// Final time for preferential attachment sweeps.
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    replicates: Option<u32>,
    /// Preferential attachment presets at t = 10^9 (hours of runtime, tens of GB).
    #[arg(long)]
    full_scale: bool,
}

#[derive(Subcommand)]
enum PresetsCommand {
    List,
    /// Write every preset as `<name>.toml`.
    Export {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(m) => cmd_gen(m),
        Command::Analytic(m) => cmd_analytic(m),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Presets(p) => cmd_presets(p),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) => 3,
        Error::Io { .. } => 4,
        _ => 2,
    }
}

/// Six significant digits.
fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return if x > 0.0 { "inf".into() } else { format!("{x}") };
    }
    if x == 0.0 {
        return "0.00000".into();
    }
    let decimals = (5 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

fn ext(x: Extended) -> String {
    sig6(x.as_f64())
}

fn parse_dist(field: &str, text: &str) -> twotype::Result<DistSpec> {
    let bad = || Error::InvalidParameter {
        name: if field == "f1" { "f1" } else { "f2" },
        reason: format!(
            "`{text}`: expected poisson:<mean>, yule_simon:mean=<m>, yule_simon:shape=<rho> or file:<path>"
        ),
    };
    let (kind, arg) = text.split_once(':').ok_or_else(bad)?;
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
    Ok(match kind {
        "poisson" => DistSpec::Poisson { mean: num(arg)? },
        "yule_simon" | "ys" => match arg.split_once('=') {
            Some(("mean", v)) => DistSpec::yule_simon_mean(num(v)?),
            Some(("shape", v)) => DistSpec::YuleSimon {
                mean: None,
                shape: Some(num(v)?),
            },
            None => DistSpec::yule_simon_mean(num(arg)?),
            _ => return Err(bad()),
        },
        "file" => DistSpec::ExplicitFile { path: arg.into() },
        _ => return Err(bad()),
    })
}

fn parse_extended(name: &'static str, s: &str) -> twotype::Result<Extended> {
    if s == "inf" {
        return Ok(Extended::Infinite);
    }
    s.parse().map(Extended::Finite).map_err(|_| Error::InvalidParameter {
        name,
        reason: format!("expected a number or `inf`, got `{s}`"),
    })
}

fn resolve_seed(seed: Option<u64>) -> (u64, bool) {
    match seed {
        Some(s) => (s, false),
        None => {
            let nanos = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_nanos())
                .unwrap_or(0);
            ((nanos as u64) ^ ((nanos >> 64) as u64), true)
        }
    }
}

fn write_graph(file: EdgeListFile, out: &Path, auto_seed: bool) -> twotype::Result<()> {
    let seed = file.header.seed;
    let file = file.with_comment(format!("tool={TOOL_VERSION} rng={RNG_ALGORITHM}"));
    file.write(out)?;
    let g = &file.graph;
    println!("wrote {} ({} vertices, {} edges)", out.display(), g.n(), g.edge_count());
    if auto_seed {
        println!("seed: {seed} (auto)");
    }
    Ok(())
}

fn cmd_gen(model: GenModel) -> twotype::Result<()> {
    match model {
        GenModel::Er { n, rates, output } => {
            let params = rates.resolve()?;
            if rates.uses_means() {
                println!(
                    "resolved alpha1 = {}, alpha2 = {}",
                    sig6(params.alpha1),
                    sig6(params.alpha2)
                );
            }
            let (seed, auto) = resolve_seed(output.seed);
            let g = generate_er(n, &params, &mut RngStream::from_seed(seed))?;
            let params_line = format!(
                "params: p1={} alpha1={} alpha2={} beta={}",
                params.p1, params.alpha1, params.alpha2, params.beta
            );
            write_graph(
                EdgeListFile::new(g, "er", seed).with_comment(params_line),
                &output.out,
                auto,
            )
        }
        GenModel::Cm { n, dist, output } => {
            let (f1, f2) = (
                parse_dist("f1", &dist.f1)?.resolve()?,
                parse_dist("f2", &dist.f2)?.resolve()?,
            );
            let xi2 = match dist.xi2 {
                Some(x) => x,
                None => {
                    let x = cm_balance_xi2(dist.p1, f1.mean(), dist.xi1, f2.mean())?;
                    println!("resolved xi2 = {} (balance)", sig6(x));
                    x
                }
            };
            let (seed, auto) = resolve_seed(output.seed);
            let (g, report) = generate_cm(n, dist.p1, &f1, &f2, dist.xi1, xi2, &mut RngStream::from_seed(seed))?;
            let params_line = format!(
                "params: p1={} f1={} f2={} xi1={} xi2={}",
                dist.p1, dist.f1, dist.f2, dist.xi1, xi2
            );
            let l = report.labels;
            println!(
                "half-edges: L1={} L1'={} L2={} L2'={}; erased {} half-edges, {} vertices affected ({})",
                l.own1,
                l.cross1,
                l.own2,
                l.cross2,
                report.erased_halfedges,
                report.erased_affected_vertices,
                sig6(report.affected_fraction(n))
            );
            write_graph(
                EdgeListFile::new(g, "cm", seed).with_comment(params_line),
                &output.out,
                auto,
            )
        }
        GenModel::Pa { t, params, output } => {
            let p = PaParams::new(params.p1, params.theta1, params.theta2)?;
            let (seed, auto) = resolve_seed(output.seed);
            let g = generate_pa(t, &p, &mut RngStream::from_seed(seed))?;
            let params_line = format!("params: t={t} p1={} theta1={} theta2={}", p.p1, p.theta1, p.theta2);
            write_graph(
                EdgeListFile::new(g, "pa", seed).with_comment(params_line),
                &output.out,
                auto,
            )
        }
    }
}

fn cmd_analytic(model: AnalyticModel) -> twotype::Result<()> {
    match model {
        AnalyticModel::Er { rates } => {
            let p = rates.resolve()?;
            let (mu1, mu2) = er_mean_degrees(&p);
            println!("alpha1    {}", sig6(p.alpha1));
            println!("alpha2    {}", sig6(p.alpha2));
            println!("mu1       {}", sig6(mu1));
            println!("mu2       {}", sig6(mu2));
            println!("lambda_c  {}", sig6(er_lambda_c(&p)?));
        }
        AnalyticModel::Cm {
            xi1,
            xi2,
            nu1,
            nu2,
            p1,
            f1,
            f2,
        } => {
            let (xi2, nu1, nu2) = match (nu1, nu2, p1, f1, f2) {
                (Some(a), Some(b), _, _, _) => {
                    let xi2 = xi2.ok_or_else(|| Error::InvalidParameter {
                        name: "xi2",
                        reason: "required together with --nu1/--nu2".into(),
                    })?;
                    (xi2, parse_extended("nu1", &a)?, parse_extended("nu2", &b)?)
                }
                (_, _, Some(p1), Some(f1), Some(f2)) => {
                    let (d1, d2) = (parse_dist("f1", &f1)?.resolve()?, parse_dist("f2", &f2)?.resolve()?);
                    let xi2 = match xi2 {
                        Some(x) => x,
                        None => cm_balance_xi2(p1, d1.mean(), xi1, d2.mean())?,
                    };
                    println!("mu1       {}", sig6(d1.mean()));
                    println!("mu2       {}", sig6(d2.mean()));
                    (xi2, d1.size_biased_mean(), d2.size_biased_mean())
                }
                _ => {
                    return Err(Error::InvalidParameter {
                        name: "nu1",
                        reason: "give either --nu1/--nu2 or --p1 with --f1/--f2".into(),
                    })
                }
            };
            let m = CmMixParams::new(xi1, xi2, nu1, nu2)?;
            println!("xi1       {}", sig6(xi1));
            println!("xi2       {}", sig6(xi2));
            println!("nu1       {}", ext(nu1));
            println!("nu2       {}", ext(nu2));
            println!("lambda_c  {}", ext(cm_lambda_c(&m)?));
        }
        AnalyticModel::Pa { params } => {
            let p = PaParams::new(params.p1, params.theta1, params.theta2)?;
            let rates = pa_rates(&p)?;
            let ex = pa_exponents(&p)?;
            for t in VertexType::BOTH {
                let i = t.index();
                println!(
                    "type {t}: a={} b={} tau={} gamma={}",
                    sig6(rates.a[i]),
                    sig6(rates.b[i]),
                    ext(ex.tau[i]),
                    ext(ex.gamma[i])
                );
            }
            let m = pa_expected_cross_degrees(&p)?;
            println!("mean degree split per neighbour type (row: vertex type, column: neighbour type)");
            for (i, row) in m.iter().enumerate() {
                println!("  {}: {}  {}", i + 1, sig6(row[0]), sig6(row[1]));
            }
        }
    }
    Ok(())
}

fn describe_fit(label: &str, fit: Result<ExponentFit, Error>) {
    match fit {
        Ok(f) => println!(
            "{label}: gamma_hat={} k in [{}, {}] r2={} points={}",
            sig6(f.gamma_hat),
            f.k_min,
            f.k_max,
            sig6(f.r_squared),
            f.n_points
        ),
        Err(e) => println!("{label}: no fit ({e})"),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> twotype::Result<()> {
    let file = EdgeListFile::read(&args.input)?;
    let g = &file.graph;
    let comps = analysis::components(g);
    let degrees = analysis::degree_report(g);
    let h = &file.header;
    let mut comments = vec![
        format!(
            "source={} n={} model={} seed={}",
            args.input.display(),
            g.n(),
            h.model,
            h.seed
        ),
        format!("tool={TOOL_VERSION}"),
    ];
    comments.extend(h.comments.iter().map(|c| format!("source {c}")));
    analysis::write_report_csvs(&args.out_dir, &comments, &comps, &degrees)?;

    println!(
        "n={} edges={} components={}",
        g.n(),
        g.edge_count(),
        comps.sizes_desc.len()
    );
    println!("largest_fraction={}", sig6(comps.largest_fraction));
    println!("largest three sizes: {:?}", comps.top_k(3));
    let fit = |ccdf: analysis::Ccdf| match (args.k_min, args.k_max) {
        (Some(lo), Some(hi)) => fit_tail_exponent(&ccdf, lo, hi),
        _ => fit_tail_exponent_default(&ccdf),
    };
    for t in VertexType::BOTH {
        describe_fit(&format!("type {t} degree"), fit(degrees.ccdf(t)));
    }
    for from in VertexType::BOTH {
        for to in VertexType::BOTH {
            describe_fit(
                &format!("type {from} -> type {to} degree"),
                fit(degrees.cross_ccdf(from, to)),
            );
        }
    }
    println!("reports written to {}", args.out_dir.display());
    Ok(())
}

fn sweep_plots(result: &SweepResult) -> Vec<(&'static str, PlotKind)> {
    match result.spec.model.kind() {
        "er" => vec![
            ("lambda_c", PlotKind::Line),
            ("largest", PlotKind::Line),
            ("second", PlotKind::Line),
            ("third", PlotKind::Line),
        ],
        "cm" => vec![
            ("lambda_c", PlotKind::Line),
            ("largest", PlotKind::Line),
            ("second", PlotKind::Line),
            ("affected_fraction", PlotKind::Line),
        ],
        _ => Vec::new(),
    }
}

fn print_pa_tables(result: &SweepResult) {
    let v = |row, m| result.mean(row, m).map(sig6).unwrap_or_else(|| "-".into());
    let a = |row, m| result.analytic(row, m).map(sig6).unwrap_or_else(|| "-".into());
    println!("tail exponents (estimate / analytic)");
    for row in &result.rows {
        println!(
            "  case {:<4} t={:<11} gamma1 {} / {}   gamma2 {} / {}",
            row.series,
            row.size,
            v(row, "gamma1_hat"),
            a(row, "gamma1"),
            v(row, "gamma2_hat"),
            a(row, "gamma2")
        );
    }
    println!("mean degree split per neighbour type (simulated / formula)");
    for row in &result.rows {
        println!(
            "  case {:<4} 1->1 {} / {}   1->2 {} / {}   2->1 {} / {}   2->2 {} / {}",
            row.series,
            v(row, "nbar11"),
            a(row, "nbar11"),
            v(row, "nbar12"),
            a(row, "nbar12"),
            v(row, "nbar21"),
            a(row, "nbar21"),
            v(row, "nbar22"),
            a(row, "nbar22")
        );
    }
    println!("tail exponents of degrees split per type");
    for row in &result.rows {
        println!(
            "  case {:<4} 1->1 {}   1->2 {}   2->1 {}   2->2 {}",
            row.series,
            v(row, "gamma11_hat"),
            v(row, "gamma12_hat"),
            v(row, "gamma21_hat"),
            v(row, "gamma22_hat")
        );
    }
}

fn pa_sample_plots(result: &SweepResult, dir: &Path, stem: &str) -> twotype::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let header = header_comments(result);
    for row in &result.rows {
        let Some(report) = &row.sample else { continue };
        let base = format!("{stem}_{}", row.series);
        let mut plots: Vec<(String, Plot)> = vec![
            (
                format!("{base}_ccdf.svg"),
                degree_ccdf_plot(&format!("case {} degree tails", row.series), report, None),
            ),
            (
                format!("{base}_scatter.svg"),
                Plot::degree_scatter(&format!("case {} per-type degrees", row.series), report),
            ),
        ];
        for (name, plot) in plots.iter_mut() {
            plot.comments = header.clone();
            plot.comments
                .push(format!("replicate 0 of series {} at t={}", row.series, row.size));
            let path = dir.join(name.as_str());
            match plot.write(&path) {
                Ok(()) => written.push(path),
                Err(Error::InsufficientData(msg)) => eprintln!("warning: {}: {msg}", path.display()),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(written)
}

fn cmd_experiment(args: ExperimentArgs) -> twotype::Result<()> {
    let mut spec = match (&args.preset, &args.config) {
        (Some(name), _) if args.full_scale => experiments::preset_full_scale(name)?,
        (Some(name), _) => experiments::preset(name)?,
        (None, Some(path)) => SweepSpec::read(path)?,
        (None, None) => unreachable!("clap requires --preset or --config"),
    };
    if let Some(seed) = args.seed {
        spec.master_seed = seed;
    }
    if let Some(r) = args.replicates {
        spec.replicates = r;
    }
    if let Some(size) = args.n.or(args.t) {
        spec.size = size;
        if matches!(spec.sweep.param.as_str(), "n" | "t" | "size") {
            spec.sweep.grid = vec![size as f64];
        }
    }
    let parallelism = match args.threads {
        1 => Parallelism::Sequential,
        k => Parallelism::Threads(k),
    };
    let result = experiments::run_sweep_with(&spec, parallelism)?;

    fs::create_dir_all(&args.out_dir).map_err(|e| Error::Io {
        path: args.out_dir.clone(),
        source: e,
    })?;
    let stem = file_stem(&spec.name);
    let csv_path = args.out_dir.join(format!("{stem}.csv"));
    emit_csv(&result, &csv_path)?;
    println!("wrote {}", csv_path.display());
    for (metric, kind) in sweep_plots(&result) {
        let path = args.out_dir.join(format!("{stem}_{metric}.svg"));
        match experiments::emit_plot(&result, metric, kind, &path) {
            Ok(()) => println!("wrote {}", path.display()),
            Err(Error::InsufficientData(msg)) => eprintln!("warning: {}: {msg}", path.display()),
            Err(e) => return Err(e),
        }
    }
    if spec.model.kind() == "pa" {
        for p in pa_sample_plots(&result, &args.out_dir, &stem)? {
            println!("wrote {}", p.display());
        }
        print_pa_tables(&result);
    }
    for row in &result.rows {
        for flag in &row.flags {
            eprintln!(
                "warning: series `{}` at {} = {}: {flag}",
                row.series, spec.sweep.param, row.x
            );
        }
    }
    Ok(())
}

fn cmd_presets(cmd: PresetsCommand) -> twotype::Result<()> {
    match cmd {
        PresetsCommand::List => {
            for name in experiments::PRESET_NAMES {
                let spec = experiments::preset(name)?;
                println!("{name:<20} {:<3} {}", spec.model.kind(), spec.description);
            }
            for (alias, target) in experiments::PRESET_ALIASES {
                println!("{alias:<20} alias of {target}");
            }
        }
        PresetsCommand::Export { dir } => {
            fs::create_dir_all(&dir).map_err(|e| Error::Io {
                path: dir.clone(),
                source: e,
            })?;
            for name in experiments::PRESET_NAMES {
                let path = dir.join(format!("{}.toml", file_stem(name)));
                fs::write(&path, experiments::preset(name)?.to_toml()).map_err(|e| Error::Io {
                    path: path.clone(),
                    source: e,
                })?;
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}
