use crate::analysis::{components, degree_report, fit_tail_exponent_default, DegreeReport};
use crate::analytic::{cm_lambda_c, er_lambda_c, pa_expected_cross_degrees, pa_exponents, CmMixParams, Extended};
use crate::error::{Error, Result};
use crate::generators::{generate_cm, generate_er, generate_pa};
use crate::graph::{TypedGraph, VertexType};
use crate::rng::RngStream;

use super::spec::{GridPoint, ResolvedModel, SweepSpec};

/// How replicates are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// Worker threads; `0` lets the pool pick. Without the `parallel`
    /// feature this runs sequentially.
    Threads(usize),
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Threads(0)
        } else {
            Parallelism::Sequential
        }
    }
}

/// Mean and sample standard deviation over the replicates where a metric
/// was defined.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Summary {
    pub mean: Option<f64>,
    /// `None` with fewer than two defined values.
    pub sd: Option<f64>,
    pub count: u32,
}

impl Summary {
    fn of(values: impl Iterator<Item = Option<f64>>) -> Self {
        let defined: Vec<f64> = values.flatten().collect();
        let count = defined.len() as u32;
        if defined.is_empty() {
            return Summary::default();
        }
        let n = defined.len() as f64;
        let mean = defined.iter().sum::<f64>() / n;
        let sd =
            (defined.len() > 1).then(|| (defined.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt());
        Summary {
            mean: Some(mean),
            sd,
            count,
        }
    }

    /// `sd / sqrt(count)`.
    pub fn standard_error(&self) -> Option<f64> {
        self.sd.map(|s| s / (self.count as f64).sqrt())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub series: String,
    /// Grid value, echoed verbatim from the spec.
    pub x: f64,
    pub size: u64,
    /// Replicates simulated at this point (0 when infeasible).
    pub replicates: u32,
    pub analytic: Vec<Option<f64>>,
    pub simulated: Vec<Summary>,
    pub flags: Vec<String>,
    /// Degree report of replicate 0 (preferential attachment only).
    pub sample: Option<DegreeReport>,
}

impl SweepRow {
    pub fn is_feasible(&self) -> bool {
        !self.flags.iter().any(|f| f.starts_with(INFEASIBLE_FLAG))
    }
}

pub const INFEASIBLE_FLAG: &str = "infeasible";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub analytic_columns: Vec<&'static str>,
    pub simulated_columns: Vec<&'static str>,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// A result with the spec's column layout and no rows.
    pub fn empty(spec: SweepSpec) -> Self {
        let (analytic, simulated) = columns(spec.model.kind());
        SweepResult {
            spec,
            analytic_columns: analytic.to_vec(),
            simulated_columns: simulated.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn series_labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.series.as_str()) {
                out.push(&r.series);
            }
        }
        out
    }

    pub fn series(&self, label: &str) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| r.series == label).collect()
    }

    pub fn analytic(&self, row: &SweepRow, metric: &str) -> Option<f64> {
        let i = self.analytic_columns.iter().position(|c| *c == metric)?;
        row.analytic[i]
    }

    pub fn summary(&self, row: &SweepRow, metric: &str) -> Option<Summary> {
        let i = self.simulated_columns.iter().position(|c| *c == metric)?;
        Some(row.simulated[i])
    }

    pub fn mean(&self, row: &SweepRow, metric: &str) -> Option<f64> {
        self.summary(row, metric).and_then(|s| s.mean)
    }

    /// Analytic value, or else the replicate mean, of `metric`.
    pub fn value(&self, row: &SweepRow, metric: &str) -> Option<f64> {
        if self.analytic_columns.contains(&metric) {
            self.analytic(row, metric)
        } else {
            self.mean(row, metric)
        }
    }

    pub fn has_metric(&self, metric: &str) -> bool {
        self.analytic_columns.contains(&metric) || self.simulated_columns.contains(&metric)
    }
}

const ER_ANALYTIC: &[&str] = &["lambda_c", "alpha1", "alpha2"];
const ER_SIMULATED: &[&str] = &["largest", "second", "third", "mean_degree1", "mean_degree2"];
const CM_ANALYTIC: &[&str] = &["lambda_c", "xi1", "xi2", "nu1", "nu2"];
const CM_SIMULATED: &[&str] = &["largest", "second", "third", "erased_fraction", "affected_fraction"];
const PA_ANALYTIC: &[&str] = &["gamma1", "gamma2", "nbar11", "nbar12", "nbar21", "nbar22"];
const PA_SIMULATED: &[&str] = &[
    "gamma1_hat",
    "gamma2_hat",
    "r2_1",
    "r2_2",
    "nbar11",
    "nbar12",
    "nbar21",
    "nbar22",
    "gamma11_hat",
    "gamma12_hat",
    "gamma21_hat",
    "gamma22_hat",
    "corr1",
    "corr2",
    "max_degree1",
    "max_degree2",
];

/// `(analytic, simulated)` metric names for a model kind.
pub fn columns(kind: &str) -> (&'static [&'static str], &'static [&'static str]) {
    match kind {
        "er" => (ER_ANALYTIC, ER_SIMULATED),
        "cm" => (CM_ANALYTIC, CM_SIMULATED),
        _ => (PA_ANALYTIC, PA_SIMULATED),
    }
}

/// Runs with [`Parallelism::default`].
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_sweep_with(spec, Parallelism::default())
}

pub fn run_sweep_with(spec: &SweepSpec, parallelism: Parallelism) -> Result<SweepResult> {
    spec.validate()?;
    let points = spec.grid_points()?;
    let resolved: Vec<Result<ResolvedModel>> = points.iter().map(|p| p.model.resolve()).collect();

    let mut jobs = Vec::new();
    for (i, r) in resolved.iter().enumerate() {
        match r {
            Ok(_) => jobs.extend((0..spec.replicates).map(|rep| (i, rep))),
            Err(Error::Infeasible(_)) => {}
            Err(e) => return Err(Error::spec(spec.sweep.param.clone(), e.to_string())),
        }
    }

    let run_job = |&(i, rep): &(usize, u32)| -> Result<Replicate> {
        let model = resolved[i].as_ref().expect("only feasible points are scheduled");
        let mut rng = RngStream::new(spec.master_seed, rep as u64);
        simulate(model, points[i].size, rep == 0, &mut rng)
    };
    let outcomes = execute(&jobs, run_job, parallelism)?;

    let mut by_point: Vec<Vec<Replicate>> = (0..points.len()).map(|_| Vec::new()).collect();
    for (&(i, _), outcome) in jobs.iter().zip(outcomes) {
        by_point[i].push(outcome);
    }

    let mut result = SweepResult::empty(spec.clone());
    for ((point, model), reps) in points.into_iter().zip(&resolved).zip(by_point) {
        result.rows.push(aggregate(&result, point, model, reps));
    }
    Ok(result)
}

fn execute<F>(jobs: &[(usize, u32)], f: F, parallelism: Parallelism) -> Result<Vec<Replicate>>
where
    F: Fn(&(usize, u32)) -> Result<Replicate> + Sync,
{
    match parallelism {
        Parallelism::Sequential => jobs.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Threads(threads) => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
            pool.install(|| jobs.par_iter().map(&f).collect())
        }
        #[cfg(not(feature = "parallel"))]
        Parallelism::Threads(_) => jobs.iter().map(f).collect(),
    }
}

struct Replicate {
    values: Vec<Option<f64>>,
    sample: Option<DegreeReport>,
}

fn aggregate(result: &SweepResult, point: GridPoint, model: &Result<ResolvedModel>, reps: Vec<Replicate>) -> SweepRow {
    let mut row = SweepRow {
        series: point.series,
        x: point.x,
        size: point.size,
        replicates: reps.len() as u32,
        analytic: vec![None; result.analytic_columns.len()],
        simulated: vec![Summary::default(); result.simulated_columns.len()],
        flags: Vec::new(),
        sample: None,
    };
    let model = match model {
        Ok(m) => m,
        Err(e) => {
            row.flags.push(format!("{INFEASIBLE_FLAG}: {}", strip_prefix(e)));
            return row;
        }
    };
    row.analytic = analytic_values(model);
    for (c, name) in result.simulated_columns.iter().enumerate() {
        let s = Summary::of(reps.iter().map(|r| r.values[c]));
        if s.count < row.replicates {
            row.flags.push(format!(
                "{name} undefined in {} of {} replicates",
                row.replicates - s.count,
                row.replicates
            ));
        }
        row.simulated[c] = s;
    }
    row.sample = reps.into_iter().next().and_then(|r| r.sample);
    row
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Infeasible(msg) => msg.clone(),
        other => other.to_string(),
    }
}

fn extended(x: Extended) -> Option<f64> {
    Some(x.as_f64())
}

fn analytic_values(model: &ResolvedModel) -> Vec<Option<f64>> {
    match model {
        ResolvedModel::Er(p) => vec![er_lambda_c(p).ok(), Some(p.alpha1), Some(p.alpha2)],
        ResolvedModel::Cm { f1, f2, xi1, xi2, .. } => {
            let (nu1, nu2) = (f1.size_biased_mean(), f2.size_biased_mean());
            let lambda = CmMixParams::new(*xi1, *xi2, nu1, nu2)
                .and_then(|m| cm_lambda_c(&m))
                .ok()
                .and_then(extended);
            vec![lambda, Some(*xi1), Some(*xi2), extended(nu1), extended(nu2)]
        }
        ResolvedModel::Pa(p) => {
            let mut out = vec![None; PA_ANALYTIC.len()];
            if let Ok(e) = pa_exponents(p) {
                out[0] = extended(e.gamma[0]);
                out[1] = extended(e.gamma[1]);
            }
            if let Ok(m) = pa_expected_cross_degrees(p) {
                out[2..6].copy_from_slice(&[Some(m[0][0]), Some(m[0][1]), Some(m[1][0]), Some(m[1][1])]);
            }
            out
        }
    }
}

fn component_fractions(g: &TypedGraph) -> [Option<f64>; 3] {
    let n = g.n() as f64;
    let top = components(g).top_k(3);
    let at = |i: usize| Some(top.get(i).copied().unwrap_or(0) as f64 / n);
    [at(0), at(1), at(2)]
}

fn to_usize(size: u64) -> Result<usize> {
    usize::try_from(size).map_err(|_| Error::param("n", "graph size exceeds the address space"))
}

fn simulate(model: &ResolvedModel, size: u64, keep_sample: bool, rng: &mut RngStream) -> Result<Replicate> {
    let mut sample = None;
    let values = match model {
        ResolvedModel::Er(p) => {
            let g = generate_er(to_usize(size)?, p, rng)?;
            let [a, b, c] = component_fractions(&g);
            let mut sums = [0u64; 2];
            for (v, d) in g.degrees().iter().enumerate() {
                sums[g.vertex_type(v).index()] += d.total as u64;
            }
            let counts = g.type_counts();
            let mean = |i: usize| (counts[i] > 0).then(|| sums[i] as f64 / counts[i] as f64);
            vec![a, b, c, mean(0), mean(1)]
        }
        ResolvedModel::Cm { p1, f1, f2, xi1, xi2 } => {
            let n = to_usize(size)?;
            let (g, report) = generate_cm(n, *p1, f1, f2, *xi1, *xi2, rng)?;
            let [a, b, c] = component_fractions(&g);
            let l = report.labels;
            let total = l.own1 + l.cross1 + l.own2 + l.cross2;
            let erased = (total > 0).then(|| report.erased_halfedges as f64 / total as f64);
            vec![a, b, c, erased, Some(report.affected_fraction(n))]
        }
        ResolvedModel::Pa(p) => {
            let g = generate_pa(size, p, rng)?;
            let report = degree_report(&g);
            let values = pa_metrics(&report);
            if keep_sample {
                sample = Some(report);
            }
            values
        }
    };
    Ok(Replicate { values, sample })
}

fn pa_metrics(report: &DegreeReport) -> Vec<Option<f64>> {
    use VertexType::*;
    let fit = |ccdf| fit_tail_exponent_default(&ccdf).ok();
    let f1 = fit(report.ccdf(Type1));
    let f2 = fit(report.ccdf(Type2));
    let m = report.cross_means;
    let present = |i: usize| report.type_counts[i] > 0;
    let nbar = |i: usize, j: usize| present(i).then_some(m[i][j]);
    let cross = |from, to| fit(report.cross_ccdf(from, to)).map(|f| f.gamma_hat);
    vec![
        f1.map(|f| f.gamma_hat),
        f2.map(|f| f.gamma_hat),
        f1.map(|f| f.r_squared),
        f2.map(|f| f.r_squared),
        nbar(0, 0),
        nbar(0, 1),
        nbar(1, 0),
        nbar(1, 1),
        cross(Type1, Type1),
        cross(Type1, Type2),
        cross(Type2, Type1),
        cross(Type2, Type2),
        report.correlation[0],
        report.correlation[1],
        present(0).then(|| report.max_degree(Type1) as f64),
        present(1).then(|| report.max_degree(Type2) as f64),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::spec::{ErRates, ModelSpec, SweepAxis};

    fn tiny_er(n: u64, alpha: f64) -> SweepSpec {
        SweepSpec {
            name: "tiny".into(),
            description: String::new(),
            size: n,
            replicates: 1,
            master_seed: 5,
            model: ModelSpec::Er {
                p1: 0.5,
                beta: alpha,
                rates: ErRates::Fixed {
                    alpha1: alpha,
                    alpha2: alpha,
                },
            },
            sweep: SweepAxis {
                param: "p1".into(),
                grid: vec![0.5],
            },
            series: vec![],
        }
    }

    #[test]
    fn complete_graph_single_point() {
        let r = run_sweep_with(&tiny_er(3, 1e9), Parallelism::Sequential).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.mean(&r.rows[0], "largest"), Some(1.0));
        assert_eq!(r.rows[0].simulated[0].sd, None);
    }

    #[test]
    fn infeasible_points_carry_no_numbers() {
        let mut spec = tiny_er(50, 1.0);
        spec.model = ModelSpec::Er {
            p1: 0.5,
            beta: 0.0,
            rates: ErRates::FromMeans { mu1: 0.5, mu2: 1.2 },
        };
        spec.sweep = SweepAxis {
            param: "beta".into(),
            grid: vec![0.5, 1.5],
        };
        spec.replicates = 3;
        let r = run_sweep_with(&spec, Parallelism::Sequential).unwrap();
        assert!(r.rows[0].is_feasible());
        let bad = &r.rows[1];
        assert!(!bad.is_feasible());
        assert_eq!(bad.replicates, 0);
        assert!(bad.analytic.iter().all(Option::is_none));
        assert!(bad.simulated.iter().all(|s| s.mean.is_none() && s.count == 0));
    }

    #[test]
    fn summary_statistics() {
        let s = Summary::of([Some(1.0), None, Some(3.0)].into_iter());
        assert_eq!(s.count, 2);
        assert_eq!(s.mean, Some(2.0));
        assert!((s.sd.unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }
}
