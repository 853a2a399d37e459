//! Declarative sweep specifications and their TOML representation.
//!
//! ```toml
//! name = "fig_ER_Ex2"
//! size = 10000          # n for er/cm, t for pa
//! replicates = 100
//! master_seed = 1
//!
//! [model]
//! kind = "er"
//! p1 = 0.5
//! beta = 0.0
//!
//! [model.rates]
//! derive = "from_means"  # alpha_i solved from fixed mean degrees
//! mu1 = 0.5
//! mu2 = 1.2
//!
//! [sweep]
//! param = "beta"
//! grid = [0.0, 0.1, 0.2]
//!
//! [[series]]
//! label = "blue"
//! set = { mu1 = 0.5, mu2 = 1.2 }
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analytic::{cm_balance_xi2, ErParams, PaParams};
use crate::degree_dist::{DegreeDistribution, ExplicitTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    /// Vertex count `n` (ER, CM) or final time `t` (PA).
    pub size: u64,
    pub replicates: u32,
    pub master_seed: u64,
    pub model: ModelSpec,
    pub sweep: SweepAxis,
    /// Curves sharing the grid; each applies its parameter overrides on top
    /// of `model`. An empty list means one unnamed series.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<Series>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub param: String,
    pub grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Series {
    pub label: String,
    #[serde(default)]
    pub set: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    Er {
        p1: f64,
        beta: f64,
        rates: ErRates,
    },
    Cm {
        p1: f64,
        xi1: f64,
        xi2: Xi2Rule,
        f1: DistSpec,
        f2: DistSpec,
    },
    Pa {
        p1: f64,
        theta1: f64,
        theta2: f64,
    },
}

/// How the own-type ER rates are obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "derive", rename_all = "snake_case", deny_unknown_fields)]
pub enum ErRates {
    /// `alpha_i` given directly.
    Fixed { alpha1: f64, alpha2: f64 },
    /// `alpha_i` solved from fixed mean degrees `mu_i` and the current `beta`.
    FromMeans { mu1: f64, mu2: f64 },
}

/// `xi2` either given or solved from the balance condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Xi2Rule {
    Fixed(f64),
    Derived(Xi2Derivation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Xi2Derivation {
    Balance,
}

impl Xi2Rule {
    pub const BALANCE: Xi2Rule = Xi2Rule::Derived(Xi2Derivation::Balance);
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistSpec {
    Poisson {
        mean: f64,
    },
    /// Exactly one of `mean` and `shape`.
    YuleSimon {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mean: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shape: Option<f64>,
    },
    Explicit {
        table: Vec<(u64, f64)>,
    },
    /// Two-column `k p_k` file.
    ExplicitFile {
        path: PathBuf,
    },
}

impl DistSpec {
    pub fn yule_simon_mean(mean: f64) -> Self {
        DistSpec::YuleSimon {
            mean: Some(mean),
            shape: None,
        }
    }

    pub fn resolve(&self) -> Result<DegreeDistribution> {
        match self {
            DistSpec::Poisson { mean } => DegreeDistribution::poisson(*mean),
            DistSpec::YuleSimon {
                mean: Some(m),
                shape: None,
            } => DegreeDistribution::yule_simon_with_mean(*m),
            DistSpec::YuleSimon {
                mean: None,
                shape: Some(s),
            } => DegreeDistribution::yule_simon(*s),
            DistSpec::YuleSimon { .. } => Err(Error::param("yule_simon", "give exactly one of `mean` and `shape`")),
            DistSpec::Explicit { table } => DegreeDistribution::explicit(table.clone()),
            DistSpec::ExplicitFile { path } => Ok(DegreeDistribution::Explicit(ExplicitTable::from_file(path)?)),
        }
    }

    fn set_mean(&mut self, field: &str, value: f64) -> Result<()> {
        match self {
            DistSpec::Poisson { mean } => *mean = value,
            DistSpec::YuleSimon { mean, shape } => {
                *mean = Some(value);
                *shape = None;
            }
            _ => {
                return Err(Error::spec(
                    field,
                    "only poisson and yule_simon distributions can be re-parameterized by mean",
                ))
            }
        }
        Ok(())
    }
}

/// A fully resolved model at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolvedModel {
    Er(ErParams),
    Cm {
        p1: f64,
        f1: DegreeDistribution,
        f2: DegreeDistribution,
        xi1: f64,
        xi2: f64,
    },
    Pa(PaParams),
}

impl ModelSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelSpec::Er { .. } => "er",
            ModelSpec::Cm { .. } => "cm",
            ModelSpec::Pa { .. } => "pa",
        }
    }

    /// Parameter names accepted by [`ModelSpec::set_param`].
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            ModelSpec::Er { .. } => &["p1", "beta", "mu1", "mu2", "alpha1", "alpha2"],
            ModelSpec::Cm { .. } => &["p1", "xi1", "one_minus_xi1", "xi2", "mu1", "mu2"],
            ModelSpec::Pa { .. } => &["p1", "theta1", "theta2"],
        }
    }

    pub fn set_param(&mut self, name: &str, value: f64) -> Result<()> {
        let mismatch = |why: &str| Err(Error::spec(name, why.to_string()));
        match self {
            ModelSpec::Er { p1, beta, rates } => match (name, rates) {
                ("p1", _) => *p1 = value,
                ("beta", _) => *beta = value,
                ("mu1", ErRates::FromMeans { mu1, .. }) => *mu1 = value,
                ("mu2", ErRates::FromMeans { mu2, .. }) => *mu2 = value,
                ("alpha1", ErRates::Fixed { alpha1, .. }) => *alpha1 = value,
                ("alpha2", ErRates::Fixed { alpha2, .. }) => *alpha2 = value,
                ("mu1" | "mu2", _) => return mismatch("mean degrees require rates.derive = \"from_means\""),
                ("alpha1" | "alpha2", _) => return mismatch("own-type rates require rates.derive = \"fixed\""),
                _ => return self.unknown(name),
            },
            ModelSpec::Cm { p1, xi1, xi2, f1, f2 } => match name {
                "p1" => *p1 = value,
                "xi1" => *xi1 = value,
                // Rounded so that grid values like 0.7 give xi1 = 0.3 exactly as printed.
                "one_minus_xi1" => *xi1 = ((1.0 - value) * 1e12).round() / 1e12,
                "xi2" => *xi2 = Xi2Rule::Fixed(value),
                "mu1" => f1.set_mean(name, value)?,
                "mu2" => f2.set_mean(name, value)?,
                _ => return self.unknown(name),
            },
            ModelSpec::Pa { p1, theta1, theta2 } => match name {
                "p1" => *p1 = value,
                "theta1" => *theta1 = value,
                "theta2" => *theta2 = value,
                _ => return self.unknown(name),
            },
        }
        Ok(())
    }

    fn unknown(&self, name: &str) -> Result<()> {
        Err(Error::spec(
            name,
            format!(
                "unknown parameter for model `{}`; expected one of n, t, {}",
                self.kind(),
                self.param_names().join(", ")
            ),
        ))
    }

    /// Applies the derivation rules and validates the result.
    pub fn resolve(&self) -> Result<ResolvedModel> {
        match self {
            ModelSpec::Er { p1, beta, rates } => {
                let params = match rates {
                    ErRates::Fixed { alpha1, alpha2 } => ErParams::new(*p1, *alpha1, *alpha2, *beta)?,
                    ErRates::FromMeans { mu1, mu2 } => ErParams::from_means(*p1, *mu1, *mu2, *beta)?,
                };
                Ok(ResolvedModel::Er(params))
            }
            ModelSpec::Cm { p1, xi1, xi2, f1, f2 } => {
                let (f1, f2) = (f1.resolve()?, f2.resolve()?);
                let xi2 = match xi2 {
                    Xi2Rule::Fixed(x) => *x,
                    Xi2Rule::Derived(Xi2Derivation::Balance) => cm_balance_xi2(*p1, f1.mean(), *xi1, f2.mean())?,
                };
                for (field, x) in [("p1", *p1), ("xi1", *xi1), ("xi2", xi2)] {
                    if !(0.0..=1.0).contains(&x) {
                        return Err(Error::spec(field, format!("must lie in [0, 1], got {x}")));
                    }
                }
                Ok(ResolvedModel::Cm {
                    p1: *p1,
                    f1,
                    f2,
                    xi1: *xi1,
                    xi2,
                })
            }
            ModelSpec::Pa { p1, theta1, theta2 } => Ok(ResolvedModel::Pa(PaParams::new(*p1, *theta1, *theta2)?)),
        }
    }
}

fn is_size_param(name: &str) -> bool {
    matches!(name, "n" | "t" | "size")
}

/// One `(series, grid value)` cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub series: String,
    pub x: f64,
    pub size: u64,
    pub model: ModelSpec,
}

impl SweepSpec {
    pub fn series_or_default(&self) -> Vec<Series> {
        if self.series.is_empty() {
            vec![Series {
                label: String::new(),
                set: BTreeMap::new(),
            }]
        } else {
            self.series.clone()
        }
    }

    /// Every grid point in output order: series-major, grid-minor.
    pub fn grid_points(&self) -> Result<Vec<GridPoint>> {
        let mut out = Vec::new();
        for series in self.series_or_default() {
            let mut base = self.model.clone();
            let mut size = self.size;
            for (name, &value) in &series.set {
                if is_size_param(name) {
                    size = size_from(name, value)?;
                } else {
                    base.set_param(name, value)?;
                }
            }
            for &x in &self.sweep.grid {
                let mut model = base.clone();
                let mut point_size = size;
                if is_size_param(&self.sweep.param) {
                    point_size = size_from(&self.sweep.param, x)?;
                } else {
                    model.set_param(&self.sweep.param, x)?;
                }
                out.push(GridPoint {
                    series: series.label.clone(),
                    x,
                    size: point_size,
                    model,
                });
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::spec("name", "must not be empty"));
        }
        if self.replicates < 1 {
            return Err(Error::spec("replicates", "must be >= 1"));
        }
        if self.size < 1 {
            return Err(Error::spec("size", "must be >= 1"));
        }
        let grid = &self.sweep.grid;
        if grid.is_empty() {
            return Err(Error::spec("sweep.grid", "must not be empty"));
        }
        if grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::spec("sweep.grid", "values must be finite"));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::spec("sweep.grid", "must be strictly increasing"));
        }
        let mut labels: Vec<&str> = self.series.iter().map(|s| s.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::spec("series", "labels must be unique"));
        }
        for point in self.grid_points()? {
            match point.model.resolve() {
                Ok(_) | Err(Error::Infeasible(_)) => {}
                Err(Error::Spec { field, reason }) => return Err(Error::Spec { field, reason }),
                Err(other) => {
                    let field = format!("sweep.grid ({} = {})", self.sweep.param, point.x);
                    return Err(Error::spec(field, other.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("sweep specs always serialize")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: SweepSpec = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start.min(text.len())].lines().count().max(1))
                .unwrap_or(0);
            Error::Parse {
                line,
                message: e.message().to_string(),
            }
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }
}

fn size_from(name: &str, value: f64) -> Result<u64> {
    if value >= 1.0 && value.fract() == 0.0 && value < 1e15 {
        Ok(value as u64)
    } else {
        Err(Error::spec(name, format!("must be a positive integer, got {value}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn er_spec() -> SweepSpec {
        SweepSpec {
            name: "t".into(),
            description: String::new(),
            size: 100,
            replicates: 2,
            master_seed: 1,
            model: ModelSpec::Er {
                p1: 0.5,
                beta: 0.0,
                rates: ErRates::FromMeans { mu1: 0.5, mu2: 1.2 },
            },
            sweep: SweepAxis {
                param: "beta".into(),
                grid: vec![0.0, 0.5, 1.0],
            },
            series: vec![],
        }
    }

    #[test]
    fn toml_round_trip() {
        let mut spec = er_spec();
        spec.series.push(Series {
            label: "red".into(),
            set: [("mu1".to_string(), 0.7)].into_iter().collect(),
        });
        let text = spec.to_toml();
        assert_eq!(SweepSpec::from_toml(&text).unwrap(), spec);
    }

    #[test]
    fn cm_spec_parses_balance_keyword() {
        let text = r#"
name = "cm"
size = 1000
replicates = 1
master_seed = 3

[model]
kind = "cm"
p1 = 0.5
xi1 = 0.4
xi2 = "balance"
f1 = { kind = "poisson", mean = 0.5 }
f2 = { kind = "yule_simon", mean = 1.5 }

[sweep]
param = "one_minus_xi1"
grid = [0.0, 0.5]
"#;
        let spec = SweepSpec::from_toml(text).unwrap();
        let ModelSpec::Cm { xi2, .. } = &spec.model else {
            panic!()
        };
        assert_eq!(*xi2, Xi2Rule::BALANCE);
        let points = spec.grid_points().unwrap();
        let ResolvedModel::Cm { xi1, xi2, .. } = points[1].model.resolve().unwrap() else {
            panic!()
        };
        assert_eq!(xi1, 0.5);
        assert!((0.5 * 0.5 * 0.5 - 0.5 * 1.5 * (1.0 - xi2)).abs() < 1e-12);
    }

    #[test]
    fn validation_names_fields() {
        let mut s = er_spec();
        s.sweep.grid = vec![0.5, 0.2];
        assert!(matches!(s.validate(), Err(Error::Spec { field, .. }) if field == "sweep.grid"));
        let mut s = er_spec();
        s.sweep.grid.clear();
        assert!(matches!(s.validate(), Err(Error::Spec { field, .. }) if field == "sweep.grid"));
        let mut s = er_spec();
        s.replicates = 0;
        assert!(matches!(s.validate(), Err(Error::Spec { field, .. }) if field == "replicates"));
        let mut s = er_spec();
        s.sweep.param = "alpha1".into();
        assert!(matches!(s.validate(), Err(Error::Spec { field, .. }) if field == "alpha1"));
        let mut s = er_spec();
        s.sweep.param = "gamma".into();
        assert!(matches!(s.validate(), Err(Error::Spec { field, .. }) if field == "gamma"));
    }

    #[test]
    fn infeasible_points_pass_validation() {
        let mut s = er_spec();
        s.sweep.grid = vec![0.0, 1.5];
        s.validate().unwrap();
        let pts = s.grid_points().unwrap();
        assert!(matches!(pts[1].model.resolve(), Err(Error::Infeasible(_))));
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = er_spec().to_toml().replace("replicates", "replicatez");
        assert!(matches!(SweepSpec::from_toml(&text), Err(Error::Parse { .. })));
    }
}
