//! Built-in sweeps reproducing the published figures and tables.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::spec::{DistSpec, ErRates, ModelSpec, Series, SweepAxis, SweepSpec, Xi2Rule};

pub const ER_CM_SIZE: u64 = 10_000;
pub const ER_CM_REPLICATES: u32 = 100;
pub const PA_DESK_T: u64 = 1_000_000;
pub const PA_FULL_T: u64 = 1_000_000_000;
pub const DEFAULT_MASTER_SEED: u64 = 20_160_101;

/// Canonical preset names, in catalog order.
pub const PRESET_NAMES: &[&str] = &[
    "fig_ER_Ex2",
    "fig_ER_Ex2(2)",
    "fig_ER_Ex3",
    "fig_ER_Ex4",
    "fig_ER_Ex5",
    "fig_CM_popo_subsup",
    "fig_CM_YSYS",
    "fig_CM_PoYS",
    "fig_PA_loglog",
    "fig_PA_corr",
    "table2",
    "table3",
    "table4",
    "table2_caseI",
    "table2_caseII",
    "table2_caseIII",
    "table2_caseIV",
    "table2_caseV",
];

/// Alternative names accepted by [`preset`].
pub const PRESET_ALIASES: &[(&str, &str)] = &[
    ("fig_ER_Ex2_2", "fig_ER_Ex2(2)"),
    ("fig1", "fig_ER_Ex2"),
    ("fig2", "fig_ER_Ex2(2)"),
    ("fig3", "fig_ER_Ex3"),
    ("fig4", "fig_ER_Ex4"),
    ("fig5", "fig_ER_Ex5"),
    ("fig6", "fig_CM_popo_subsup"),
    ("fig7", "fig_CM_YSYS"),
    ("fig8", "fig_CM_PoYS"),
    ("fig9", "fig_PA_loglog"),
    ("fig10", "fig_PA_corr"),
];

/// Preferential attachment cases `(label, p1, theta1, theta2)`.
pub const PA_CASES: [(&str, f64, f64, f64); 5] = [
    ("I", 0.5, 0.8, 0.8),
    ("II", 0.5, 0.2, 0.2),
    ("III", 0.5, 0.8, 0.2),
    ("IV", 0.1, 0.8, 0.2),
    ("V", 0.2, 0.2, 0.2),
];

pub fn canonical_name(name: &str) -> Option<&'static str> {
    PRESET_NAMES
        .iter()
        .copied()
        .find(|n| *n == name)
        .or_else(|| PRESET_ALIASES.iter().find(|(a, _)| *a == name).map(|(_, n)| *n))
}

/// File-system friendly name: `fig_ER_Ex2(2)` becomes `fig_ER_Ex2_2`.
pub fn file_stem(name: &str) -> String {
    name.replace('(', "_").replace(')', "")
}

pub fn catalog() -> String {
    let mut s = PRESET_NAMES.join(", ");
    s.push_str("; aliases: ");
    let aliases: Vec<String> = PRESET_ALIASES.iter().map(|(a, n)| format!("{a} -> {n}")).collect();
    s.push_str(&aliases.join(", "));
    s
}

/// Desk-scale preset.
pub fn preset(name: &str) -> Result<SweepSpec> {
    build(name, false)
}

/// Preset at the published scale (preferential attachment at `t = 10^9`).
pub fn preset_full_scale(name: &str) -> Result<SweepSpec> {
    build(name, true)
}

fn build(name: &str, full_scale: bool) -> Result<SweepSpec> {
    let canonical = canonical_name(name).ok_or_else(|| Error::UnknownPreset {
        name: name.to_string(),
        catalog: catalog(),
    })?;
    let pa_t = if full_scale { PA_FULL_T } else { PA_DESK_T };
    let spec = match canonical {
        "fig_ER_Ex2" => er_beta(
            canonical,
            "Largest component against beta, one subcritical and one supercritical type",
            grid(0.0, 0.1, 11),
            &[("blue", 0.5, 1.2), ("red", 0.7, 1.1)],
            0.5,
        ),
        "fig_ER_Ex2(2)" => er_beta(
            canonical,
            "Largest component against beta, strongly supercritical type 2",
            grid(0.0, 0.1, 11),
            &[("blue", 0.5, 2.5), ("red", 0.5, 2.0), ("green", 0.5, 1.5)],
            0.5,
        ),
        "fig_ER_Ex3" => er_beta(
            canonical,
            "Largest component against beta, two supercritical types",
            grid(0.0, 0.2, 13),
            &[("blue", 1.2, 1.5), ("red", 1.2, 2.0)],
            0.5,
        ),
        "fig_ER_Ex4" => {
            let mut s = er_beta(
                canonical,
                "Largest component against beta with a minority type",
                grid(0.0, 0.1, 14),
                &[],
                0.5,
            );
            s.model.set_param("mu1", 0.5)?;
            s.model.set_param("mu2", 1.2)?;
            s.series = vec![series("blue", &[("p1", 0.1)]), series("red", &[("p1", 0.9)])];
            s
        }
        "fig_ER_Ex5" => SweepSpec {
            name: canonical.into(),
            description: "Component sizes against the type 1 proportion with fixed rates".into(),
            size: ER_CM_SIZE,
            replicates: ER_CM_REPLICATES,
            master_seed: DEFAULT_MASTER_SEED,
            model: ModelSpec::Er {
                p1: 0.5,
                beta: 0.5,
                rates: ErRates::Fixed {
                    alpha1: 1.1,
                    alpha2: 1.5,
                },
            },
            sweep: SweepAxis {
                param: "p1".into(),
                grid: grid(0.05, 0.05, 19),
            },
            series: vec![series("blue", &[("alpha1", 1.1)]), series("red", &[("alpha1", 0.3)])],
        },
        "fig_CM_popo_subsup" => cm_mixing(
            canonical,
            "Configuration model, Poisson(0.5) and Poisson(1.5), varying type proportions",
            DistSpec::Poisson { mean: 0.5 },
            DistSpec::Poisson { mean: 1.5 },
            vec![
                series("red", &[("p1", 0.4)]),
                series("blue", &[("p1", 0.5)]),
                series("green", &[("p1", 0.6)]),
                series("yellow", &[("p1", 0.7)]),
            ],
        ),
        "fig_CM_YSYS" => cm_mixing(
            canonical,
            "Configuration model, Yule-Simon degrees of both types",
            DistSpec::yule_simon_mean(2.5),
            DistSpec::yule_simon_mean(1.2),
            mean_series(&[
                ("a_blue", 2.5, 1.2),
                ("a_red", 2.0, 1.2),
                ("a_green", 1.5, 1.2),
                ("b_blue", 2.0, 2.5),
                ("b_red", 1.5, 2.0),
                ("b_green", 1.5, 2.5),
            ]),
        ),
        "fig_CM_PoYS" => cm_mixing(
            canonical,
            "Configuration model, Poisson type 1 and Yule-Simon type 2",
            DistSpec::Poisson { mean: 2.5 },
            DistSpec::yule_simon_mean(1.1),
            mean_series(&[
                ("a_blue", 2.5, 1.1),
                ("a_red", 2.0, 1.1),
                ("a_green", 1.5, 1.1),
                ("a_yellow", 1.2, 1.1),
                ("b_blue", 2.0, 2.5),
                ("b_red", 1.5, 2.5),
                ("b_green", 1.2, 2.5),
            ]),
        ),
        "fig_PA_loglog" => pa(canonical, "Degree tails of cases I and V", &["I", "V"], pa_t),
        "fig_PA_corr" => pa(
            canonical,
            "Per-type degree scatter of cases I, II and V",
            &["I", "II", "V"],
            pa_t,
        ),
        "table2" => pa(
            canonical,
            "Estimated and analytical tail exponents",
            &["I", "II", "III", "IV", "V"],
            pa_t,
        ),
        "table3" => pa(
            canonical,
            "Mean degree split per neighbour type",
            &["I", "II", "III", "IV", "V"],
            pa_t,
        ),
        "table4" => pa(
            canonical,
            "Tail exponents of degrees split per type",
            &["I", "II", "III", "IV", "V"],
            pa_t,
        ),
        case => {
            let label = case
                .strip_prefix("table2_case")
                .expect("catalog entries are exhaustive");
            pa(canonical, "Single preferential attachment case", &[label], pa_t)
        }
    };
    debug_assert!(spec.validate().is_ok(), "preset {canonical} must validate");
    Ok(spec)
}

/// `count` points `start + i step`, rounded to 10 decimals so that values
/// such as 0.3 are echoed exactly.
fn grid(start: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| ((start + i as f64 * step) * 1e10).round() / 1e10)
        .collect()
}

fn series(label: &str, set: &[(&str, f64)]) -> Series {
    Series {
        label: label.into(),
        set: set.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
    }
}

fn mean_series(rows: &[(&str, f64, f64)]) -> Vec<Series> {
    rows.iter()
        .map(|(label, mu1, mu2)| series(label, &[("mu1", *mu1), ("mu2", *mu2)]))
        .collect()
}

fn er_beta(name: &str, description: &str, grid: Vec<f64>, means: &[(&str, f64, f64)], p1: f64) -> SweepSpec {
    let (mu1, mu2) = means.first().map_or((0.5, 1.2), |m| (m.1, m.2));
    SweepSpec {
        name: name.into(),
        description: description.into(),
        size: ER_CM_SIZE,
        replicates: ER_CM_REPLICATES,
        master_seed: DEFAULT_MASTER_SEED,
        model: ModelSpec::Er {
            p1,
            beta: 0.0,
            rates: ErRates::FromMeans { mu1, mu2 },
        },
        sweep: SweepAxis {
            param: "beta".into(),
            grid,
        },
        series: mean_series(means),
    }
}

fn cm_mixing(name: &str, description: &str, f1: DistSpec, f2: DistSpec, series: Vec<Series>) -> SweepSpec {
    SweepSpec {
        name: name.into(),
        description: description.into(),
        size: ER_CM_SIZE,
        replicates: ER_CM_REPLICATES,
        master_seed: DEFAULT_MASTER_SEED,
        model: ModelSpec::Cm {
            p1: 0.5,
            xi1: 1.0,
            xi2: Xi2Rule::BALANCE,
            f1,
            f2,
        },
        sweep: SweepAxis {
            param: "one_minus_xi1".into(),
            grid: grid(0.0, 0.1, 11),
        },
        series,
    }
}

fn pa(name: &str, description: &str, cases: &[&str], t: u64) -> SweepSpec {
    let series = cases
        .iter()
        .map(|label| {
            let (_, p1, th1, th2) = PA_CASES
                .iter()
                .find(|c| c.0 == *label)
                .copied()
                .expect("known case label");
            series(label, &[("p1", p1), ("theta1", th1), ("theta2", th2)])
        })
        .collect();
    SweepSpec {
        name: name.into(),
        description: description.into(),
        size: t,
        replicates: 1,
        master_seed: DEFAULT_MASTER_SEED,
        model: ModelSpec::Pa {
            p1: 0.5,
            theta1: 0.5,
            theta2: 0.5,
        },
        sweep: SweepAxis {
            param: "t".into(),
            grid: vec![t as f64],
        },
        series,
    }
}
