//! Closed-form critical parameters, degree exponents and limiting degree
//! distributions for the three two-type models.
//!
//! Every critical parameter is the largest eigenvalue of a 2x2 mean-offspring
//! matrix. The closed forms below are written directly in model parameters;
//! [`eigenvalue_oracle_2x2`] computes the same eigenvalue from the matrix
//! entries along a separate code path and is used to cross-check them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexType;
use crate::special::ln_gamma_ratio;

/// A non-negative quantity that may be infinite (size-biased means of
/// heavy-tailed degree distributions and the thresholds derived from them).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    /// The value as an `f64`, with `Infinite` mapped to `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        match self {
            Extended::Finite(x) => x,
            Extended::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

pub type Matrix2 = [[f64; 2]; 2];

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(name, format!("must lie in [0, 1], got {p}")))
    }
}

fn check_nonnegative(name: &'static str, x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite and >= 0, got {x}")))
    }
}

/// Type-1 and type-2 proportions.
fn proportions(p1: f64) -> [f64; 2] {
    [p1, 1.0 - p1]
}

// ---------------------------------------------------------------------------
// Erdős–Rényi
// ---------------------------------------------------------------------------

/// Two-type Erdős–Rényi parameters. Same-type pairs of type `i` are joined with
/// probability `min(alpha_i / n, 1)`, cross-type pairs with `min(beta / n, 1)`.
///
/// `beta = 0` is admitted as the decoupled limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErParams {
    pub p1: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta: f64,
}

impl ErParams {
    pub fn new(p1: f64, alpha1: f64, alpha2: f64, beta: f64) -> Result<Self> {
        let p = ErParams {
            p1,
            alpha1,
            alpha2,
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    /// Resolves the own-type rates from fixed per-type mean degrees.
    pub fn from_means(p1: f64, mu1: f64, mu2: f64, beta: f64) -> Result<Self> {
        let alpha1 = er_alpha_from_mean(p1, mu1, beta, VertexType::Type1)?;
        let alpha2 = er_alpha_from_mean(p1, mu2, beta, VertexType::Type2)?;
        Self::new(p1, alpha1, alpha2, beta)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("p1", self.p1)?;
        check_nonnegative("alpha1", self.alpha1)?;
        check_nonnegative("alpha2", self.alpha2)?;
        check_nonnegative("beta", self.beta)
    }

    pub fn alpha(&self, t: VertexType) -> f64 {
        match t {
            VertexType::Type1 => self.alpha1,
            VertexType::Type2 => self.alpha2,
        }
    }

    /// `m_ik`: expected number of type-k neighbours of a type-i vertex.
    pub fn offspring_matrix(&self) -> Matrix2 {
        let [p1, p2] = proportions(self.p1);
        [[self.alpha1 * p1, self.beta * p2], [self.beta * p1, self.alpha2 * p2]]
    }
}

/// `(mu_1, mu_2)` with `mu_i = alpha_i p_i + beta p_{i^c}`.
pub fn er_mean_degrees(p: &ErParams) -> (f64, f64) {
    let [p1, p2] = proportions(p.p1);
    (p.alpha1 * p1 + p.beta * p2, p.alpha2 * p2 + p.beta * p1)
}

/// Critical parameter of the two-type Erdős–Rényi graph.
pub fn er_lambda_c(p: &ErParams) -> Result<f64> {
    p.validate()?;
    let [p1, p2] = proportions(p.p1);
    let half = (p.alpha1 * p1 + p.alpha2 * p2) / 2.0;
    let radicand = half * half + p1 * p2 * (p.beta * p.beta - p.alpha1 * p.alpha2);
    Ok(half + checked_sqrt(radicand, half * half)?)
}

/// The same critical parameter written in terms of the per-type means and
/// `beta`. Requires `beta <= min(mu_1 / p_2, mu_2 / p_1)` so that the
/// implied own-type rates are non-negative.
pub fn er_lambda_c_from_means(p1: f64, mu1: f64, mu2: f64, beta: f64) -> Result<f64> {
    check_probability("p1", p1)?;
    check_nonnegative("mu1", mu1)?;
    check_nonnegative("mu2", mu2)?;
    check_nonnegative("beta", beta)?;
    let p2 = 1.0 - p1;
    for (bound_name, mu, pc) in [("mu1 / p2", mu1, p2), ("mu2 / p1", mu2, p1)] {
        if beta * pc > mu * (1.0 + 1e-12) {
            return Err(Error::param(
                "beta",
                format!("beta = {beta} exceeds {bound_name} = {}", mu / pc),
            ));
        }
    }
    let d = mu1 - mu2;
    let radicand = d * d + beta * beta + 2.0 * beta * d * (p1 - p2);
    let scale = d * d + beta * beta;
    Ok(0.5 * (mu1 + mu2 - beta + checked_sqrt(radicand, scale)?))
}

/// Inverts `mu_i = alpha_i p_i + beta p_{i^c}` for `alpha_i`.
pub fn er_alpha_from_mean(p1: f64, mu: f64, beta: f64, which: VertexType) -> Result<f64> {
    check_probability("p1", p1)?;
    check_nonnegative("mu", mu)?;
    check_nonnegative("beta", beta)?;
    let [pi, pc] = match which {
        VertexType::Type1 => [p1, 1.0 - p1],
        VertexType::Type2 => [1.0 - p1, p1],
    };
    let cross = beta * pc;
    if cross > mu * (1.0 + 1e-12) {
        return Err(Error::Infeasible(format!(
            "mean degree {mu} of type {which} is below the cross-type contribution beta * p = {cross}; \
             the largest admissible beta is {}",
            mu / pc
        )));
    }
    if pi == 0.0 {
        return Err(Error::param(
            "p1",
            format!("type {which} has zero proportion, so alpha_{which} is undetermined"),
        ));
    }
    Ok(((mu - cross) / pi).max(0.0))
}

fn checked_sqrt(radicand: f64, scale: f64) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -1e-12 * scale.max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::Domain(format!(
            "negative radicand {radicand} in critical-parameter formula"
        )))
    }
}

// ---------------------------------------------------------------------------
// Configuration model
// ---------------------------------------------------------------------------

/// Label-mixing parameters of the two-type configuration model together with
/// the size-biased means `nu_i` of the two degree distributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmMixParams {
    pub xi1: f64,
    pub xi2: f64,
    pub nu1: Extended,
    pub nu2: Extended,
}

impl CmMixParams {
    pub fn new(xi1: f64, xi2: f64, nu1: Extended, nu2: Extended) -> Result<Self> {
        let m = CmMixParams { xi1, xi2, nu1, nu2 };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("xi1", self.xi1)?;
        check_probability("xi2", self.xi2)?;
        for (name, nu) in [("nu1", self.nu1), ("nu2", self.nu2)] {
            if let Extended::Finite(x) = nu {
                check_nonnegative(name, x)?;
            }
        }
        Ok(())
    }

    /// Offspring matrix, or `None` when a size-biased mean is infinite.
    pub fn offspring_matrix(&self) -> Option<Matrix2> {
        let (nu1, nu2) = (self.nu1.finite()?, self.nu2.finite()?);
        Some([
            [self.xi1 * nu1, (1.0 - self.xi1) * nu1],
            [(1.0 - self.xi2) * nu2, self.xi2 * nu2],
        ])
    }
}

/// Critical parameter of the two-type configuration model; infinite as soon
/// as either size-biased mean is.
pub fn cm_lambda_c(m: &CmMixParams) -> Result<Extended> {
    m.validate()?;
    let (Extended::Finite(nu1), Extended::Finite(nu2)) = (m.nu1, m.nu2) else {
        return Ok(Extended::Infinite);
    };
    if nu1 == nu2 {
        // Rows sum to nu, which is then the Perron root.
        return Ok(Extended::Finite(nu1));
    }
    let half = (m.xi1 * nu1 + m.xi2 * nu2) / 2.0;
    let radicand = half * half + nu1 * nu2 * (1.0 - m.xi1 - m.xi2);
    Ok(Extended::Finite(half + checked_sqrt(radicand, half * half)?))
}

/// Solves the balance condition `p1 mu1 (1 - xi1) = p2 mu2 (1 - xi2)` for
/// `xi2`. Fails with the feasible `xi1` interval when the solution leaves
/// `[0, 1]`.
pub fn cm_balance_xi2(p1: f64, mu1: f64, xi1: f64, mu2: f64) -> Result<f64> {
    let (w1, w2) = balance_weights(p1, mu1, mu2)?;
    check_probability("xi1", xi1)?;
    let xi2 = 1.0 - w1 * (1.0 - xi1) / w2;
    if xi2 < -1e-12 {
        let lo = (1.0 - w2 / w1).max(0.0);
        return Err(Error::Infeasible(format!(
            "balance requires xi2 = {xi2:.6} < 0 for xi1 = {xi1}; feasible xi1 interval is [{lo:.6}, 1]"
        )));
    }
    Ok(xi2.clamp(0.0, 1.0))
}

/// The inverse of [`cm_balance_xi2`]: solves the balance condition for `xi1`.
pub fn cm_balance_xi1(p1: f64, mu1: f64, mu2: f64, xi2: f64) -> Result<f64> {
    let (w1, w2) = balance_weights(p1, mu1, mu2)?;
    check_probability("xi2", xi2)?;
    let xi1 = 1.0 - w2 * (1.0 - xi2) / w1;
    if xi1 < -1e-12 {
        let lo = (1.0 - w1 / w2).max(0.0);
        return Err(Error::Infeasible(format!(
            "balance requires xi1 = {xi1:.6} < 0 for xi2 = {xi2}; feasible xi2 interval is [{lo:.6}, 1]"
        )));
    }
    Ok(xi1.clamp(0.0, 1.0))
}

fn balance_weights(p1: f64, mu1: f64, mu2: f64) -> Result<(f64, f64)> {
    if !(p1 > 0.0 && p1 < 1.0) {
        return Err(Error::param("p1", format!("must lie in (0, 1), got {p1}")));
    }
    if !(mu1 > 0.0 && mu1.is_finite()) {
        return Err(Error::param("mu1", format!("must be finite and > 0, got {mu1}")));
    }
    if !(mu2 > 0.0 && mu2.is_finite()) {
        return Err(Error::param("mu2", format!("must be finite and > 0, got {mu2}")));
    }
    Ok((p1 * mu1, (1.0 - p1) * mu2))
}

// ---------------------------------------------------------------------------
// Preferential attachment
// ---------------------------------------------------------------------------

/// Two-type preferential attachment parameters: an arriving type-i vertex
/// attaches to its own type with probability `theta_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaParams {
    pub p1: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl PaParams {
    pub fn new(p1: f64, theta1: f64, theta2: f64) -> Result<Self> {
        let p = PaParams { p1, theta1, theta2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p1 > 0.0 && self.p1 < 1.0) {
            return Err(Error::param("p1", format!("must lie in (0, 1), got {}", self.p1)));
        }
        check_probability("theta1", self.theta1)?;
        check_probability("theta2", self.theta2)
    }

    pub fn p(&self, t: VertexType) -> f64 {
        proportions(self.p1)[t.index()]
    }

    pub fn theta(&self, t: VertexType) -> f64 {
        match t {
            VertexType::Type1 => self.theta1,
            VertexType::Type2 => self.theta2,
        }
    }

    /// Exchanges the roles of the two types.
    pub fn swapped(&self) -> Self {
        PaParams {
            p1: 1.0 - self.p1,
            theta1: self.theta2,
            theta2: self.theta1,
        }
    }
}

/// `a_i`: probability that an arrival attaches to type `i`;
/// `b_i = p_i + a_i`: asymptotic growth rate of the total type-i degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaRates {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

impl PaRates {
    /// The type that never receives attachments, if any.
    pub fn degenerate_type(&self) -> Option<VertexType> {
        VertexType::BOTH.into_iter().find(|t| self.a[t.index()] <= 0.0)
    }
}

pub fn pa_rates(p: &PaParams) -> Result<PaRates> {
    p.validate()?;
    let mut a = [0.0; 2];
    let mut b = [0.0; 2];
    for t in VertexType::BOTH {
        let c = t.complement();
        let ai = p.p(t) * p.theta(t) + p.p(c) * (1.0 - p.theta(c));
        a[t.index()] = ai;
        b[t.index()] = p.p(t) + ai;
    }
    Ok(PaRates { a, b })
}

/// Degree exponents: `tau_i` for `P(D = k) ~ k^-tau_i` and `gamma_i = tau_i - 1`
/// for the complementary distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaExponents {
    pub tau: [Extended; 2],
    pub gamma: [Extended; 2],
}

/// `tau_i = 2 + p_i / a_i`, infinite when type `i` receives no attachments.
pub fn pa_exponents(p: &PaParams) -> Result<PaExponents> {
    let rates = pa_rates(p)?;
    let mut tau = [Extended::Infinite; 2];
    let mut gamma = [Extended::Infinite; 2];
    for t in VertexType::BOTH {
        let i = t.index();
        if rates.a[i] > 0.0 {
            let x = 2.0 + p.p(t) / rates.a[i];
            tau[i] = Extended::Finite(x);
            gamma[i] = Extended::Finite(x - 1.0);
        }
    }
    Ok(PaExponents { tau, gamma })
}

/// Limiting fraction `r_i^(k)` of type-i vertices with degree `k`:
/// `b / (a + b) * Γ(k) Γ(b/a + 2) / Γ(k + 1 + b/a)`.
pub fn pa_degree_pmf(p: &PaParams, t: VertexType, k: u64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("degree k must be >= 1".into()));
    }
    let rates = pa_rates(p)?;
    let (a, b) = (rates.a[t.index()], rates.b[t.index()]);
    if a <= 0.0 {
        return Err(Error::Domain(format!(
            "type {t} receives no attachments (a_{t} = 0); its degree pmf is a point mass at 1"
        )));
    }
    let c = b / a;
    // ln[Γ(k) / Γ(k + 1 + c)] - ln[Γ(1) / Γ(2 + c)]
    let ln_ratio = ln_gamma_ratio(1.0, c + 1.0) - ln_gamma_ratio(k as f64, c + 1.0);
    Ok(b / (a + b) * ln_ratio.exp())
}

/// `N̄_{i->j}`: expected number of type-j neighbours of a type-i vertex,
/// `2 theta_i` for `j = i` and `[p_i (1 - theta_i) + p_{i^c} (1 - theta_{i^c})] / p_i`
/// otherwise.
pub fn pa_expected_cross_degrees(p: &PaParams) -> Result<Matrix2> {
    p.validate()?;
    let mut m = [[0.0; 2]; 2];
    for t in VertexType::BOTH {
        let c = t.complement();
        let cross_edges = p.p(t) * (1.0 - p.theta(t)) + p.p(c) * (1.0 - p.theta(c));
        m[t.index()][t.index()] = 2.0 * p.theta(t);
        m[t.index()][c.index()] = cross_edges / p.p(t);
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

/// Largest root of `λ² - (m11 + m22) λ + (m11 m22 - m12 m21)`.
///
/// The discriminant is evaluated as `(m11 - m22)² + 4 m12 m21`, which is
/// non-negative for non-negative entries and avoids the cancellation in
/// `tr² - 4 det`.
pub fn eigenvalue_oracle_2x2(m: Matrix2) -> f64 {
    let [[m11, m12], [m21, m22]] = m;
    let trace = m11 + m22;
    let gap = m11 - m22;
    let disc = gap * gap + 4.0 * m12 * m21;
    (trace + disc.max(0.0).sqrt()) / 2.0
}
