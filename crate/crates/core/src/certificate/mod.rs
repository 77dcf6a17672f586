//! Ratio certificates `μ(G⃗)/μ(G) ≤ R_final < 1`.
//!
//! Given exact counts, the search picks the earliest `r` with
//! `σ⃗_r(0,E_ℓ̄)^{1/r} < b_r(1−1/r)`, sets `ε = 1/r`, then the earliest
//! `s ≥ r` with `b_s(1+ε) ≥ a_s(1+ε/2)` and the earliest `m` with
//! `σ⃗_m(0,E_ℓ̄)^{1/m} < b_s(1−ε)` and `σ⃗_m^{1/m} ≤ b_s(1+ε)`. The constants
//! `R` and `S` follow, and every inequality is evaluated in interval
//! arithmetic with outward rounding.
//!
//! The density `ζ` is any point with `g(ζ) < 1`; `R` grows with `ζ` while
//! `S` shrinks, so `ζ` is chosen by golden-section search to minimize
//! `max(R, S)`.

pub mod interval;
mod verify;

use num_bigint::BigUint;
use std::ops::{Add, Div, Mul, Sub};

use serde::{Deserialize, Serialize};

pub use interval::Interval;
pub use verify::{verify, VerifyReport};

use crate::bounds::LowerBoundSequence;
use crate::engine::{count_directed_saws, count_saws, event_profile, CycleFamily, EngineConfig, EventQuery};
use crate::error::{Error, Result};
use crate::export::decimal;
use crate::graph::GraphHandle;
use crate::quotient::QuotientGraph;

pub const FORMAT: &str = "saw-ratio-certificate/1";

/// Multiplicative slack between `g(ζ)` and `t`.
pub const SLACK: f64 = 1e-9;

/// Tolerance of the golden-section search over `ζ`.
pub const ZETA_TOL: f64 = 1e-9;

/// Largest density considered.
pub const ZETA_CAP: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    /// Verdict that holds for every pair of points in the two intervals.
    pub fn holds(self, lhs: Interval, rhs: Interval) -> bool {
        match self {
            Relation::Lt => lhs.hi < rhs.lo,
            Relation::Le => lhs.hi <= rhs.lo,
            Relation::Ge => lhs.lo >= rhs.hi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_bounds: Interval,
    pub rhs_bounds: Interval,
    pub verdict: bool,
}

impl InequalityCheck {
    fn new(name: impl Into<String>, lhs: Interval, relation: Relation, rhs: Interval) -> Self {
        InequalityCheck {
            name: name.into(),
            relation,
            lhs: lhs.mid(),
            rhs: rhs.mid(),
            lhs_bounds: lhs,
            rhs_bounds: rhs,
            verdict: relation.holds(lhs, rhs),
        }
    }
}

/// Everything the certificate is computed from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateInputs {
    pub graph: String,
    pub quotient: String,
    pub degree: u32,
    pub ell_bar: usize,
    pub budget: usize,
    /// `σ_0, σ_1, …` on G.
    #[serde(with = "decimal")]
    pub sigma: Vec<BigUint>,
    /// `σ⃗_0, σ⃗_1, …` on the quotient.
    #[serde(with = "decimal")]
    pub dsigma: Vec<BigUint>,
    /// `σ⃗_n(0, E_ℓ̄)`.
    #[serde(with = "decimal")]
    pub events: Vec<BigUint>,
    /// `b_1, b_2, …` (non-decreasing).
    pub b: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    InconclusiveBudget,
}

/// The `(r, ε, s, m)` found by the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub r: usize,
    pub s: usize,
    pub m: usize,
}

/// Outcome of [`compute_r`]. `r_value` is `R`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RParams {
    pub zeta: f64,
    pub g: Interval,
    pub t: f64,
    pub a: Interval,
    pub r_value: Interval,
}

/// Outcome of [`compute_s`]. `s_value` is `S`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SParams {
    pub kappa: Interval,
    pub z: Interval,
    pub eta: f64,
    pub f_eta: Interval,
    pub s_value: Interval,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub zeta: f64,
    pub t: f64,
    pub a: f64,
    /// Upper bound on `R`.
    #[serde(rename = "R")]
    pub r_value: f64,
    pub kappa: f64,
    #[serde(rename = "Z")]
    pub z: f64,
    pub eta: f64,
    /// Upper bound on `S`.
    #[serde(rename = "S")]
    pub s_value: f64,
    /// Upper bound on `max(R, S)`.
    pub r_final: f64,
    pub mu_upper: f64,
    pub n0: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioCertificate {
    pub format: String,
    pub graph: String,
    pub quotient: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    pub params: Option<SearchParams>,
    /// `ε = 1/r` as an exact fraction.
    pub epsilon: Option<String>,
    pub constants: Option<Constants>,
    pub checks: Vec<InequalityCheck>,
    pub inputs: CertificateInputs,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generated_at: Option<u64>,
}

fn one() -> Interval {
    Interval::point(1.0)
}

fn int(n: usize) -> Interval {
    Interval::point(n as f64)
}

fn epsilon(r: usize) -> Interval {
    one().div(int(r))
}

fn root_of(c: &BigUint, n: usize) -> Interval {
    Interval::from_big(c).root(n)
}

/// Largest index at which every input sequence is available.
fn horizon(inputs: &CertificateInputs) -> usize {
    inputs
        .budget
        .min(inputs.sigma.len().saturating_sub(1))
        .min(inputs.events.len().saturating_sub(1))
        .min(inputs.dsigma.len().saturating_sub(1))
        .min(inputs.b.len())
}

/// The `(r, s, m)` search, returning the passing checks alongside.
pub fn find_epsilon_m(inputs: &CertificateInputs) -> (Option<SearchParams>, Vec<InequalityCheck>) {
    let top = horizon(inputs);
    let b = |n: usize| Interval::point(inputs.b[n - 1]);
    let mut checks = Vec::new();
    let found_r = (1..=top).find_map(|r| {
        let c = InequalityCheck::new(
            format!("sigma_dir_{r}(0,E)^(1/{r}) < b_{r}(1 - 1/{r})"),
            root_of(&inputs.events[r], r),
            Relation::Lt,
            b(r).mul(one().sub(epsilon(r))),
        );
        c.verdict.then_some((r, c))
    });
    let Some((r, c)) = found_r else {
        return (None, checks);
    };
    checks.push(c);
    let eps = epsilon(r);
    let found_s = (r..=top).find_map(|s| {
        let c = InequalityCheck::new(
            format!("b_{s}(1 + eps) >= a_{s}(1 + eps/2)"),
            b(s).mul(one().add(eps)),
            Relation::Ge,
            root_of(&inputs.sigma[s], s).mul(one().add(eps.div(int(2)))),
        );
        c.verdict.then_some((s, c))
    });
    let Some((s, c)) = found_s else {
        return (None, checks);
    };
    checks.push(c);
    let found_m = (1..=top).find_map(|m| {
        let events = InequalityCheck::new(
            format!("sigma_dir_{m}(0,E)^(1/{m}) < b_{s}(1 - eps)"),
            root_of(&inputs.events[m], m),
            Relation::Lt,
            b(s).mul(one().sub(eps)),
        );
        let plain = InequalityCheck::new(
            format!("sigma_dir_{m}^(1/{m}) <= b_{s}(1 + eps)"),
            root_of(&inputs.dsigma[m], m),
            Relation::Le,
            b(s).mul(one().add(eps)),
        );
        (events.verdict && plain.verdict).then_some((m, events, plain))
    });
    let Some((m, c1, c2)) = found_m else {
        return (None, checks);
    };
    checks.push(c1);
    checks.push(c2);
    (Some(SearchParams { r, s, m }), checks)
}

/// `ln g(ζ)` in floating point.
fn ln_g(eps: f64, m: usize, zeta: f64) -> f64 {
    let m = m as f64;
    let entropy = -zeta * zeta.ln() - (1.0 - zeta) * (1.0 - zeta).ln();
    entropy + zeta * m * ((1.0 + eps) / (1.0 - eps)).ln() + m * (1.0 - eps).ln()
}

/// Encloses `g(ζ) = ζ^{−ζ}(1−ζ)^{−(1−ζ)} ((1+ε)/(1−ε))^{ζm} (1−ε)^m`.
pub fn g_interval(eps: Interval, m: usize, zeta: f64) -> Interval {
    let z = Interval::point(zeta);
    let w = one().sub(z);
    let mm = int(m);
    let entropy = Interval::point(0.0)
        .sub(z.mul(z.ln()))
        .sub(w.mul(w.ln()));
    let ratio = one().add(eps).div(one().sub(eps)).ln();
    entropy
        .add(z.mul(mm).mul(ratio))
        .add(mm.mul(one().sub(eps).ln()))
        .exp()
}

/// `R = t^{1/m}` with `t = g(ζ)(1 + SLACK)` and `a = ζ/(2m)`.
pub fn compute_r(eps: Interval, m: usize, zeta: f64) -> Result<RParams> {
    if m == 0 || !(zeta > 0.0 && zeta < 1.0) || !(eps.lo >= 0.0 && eps.hi < 1.0) {
        return Err(Error::Parameter(format!("need m >= 1, 0 < zeta < 1, 0 <= eps < 1 (m = {m}, zeta = {zeta})")));
    }
    let g = g_interval(eps, m, zeta);
    let t = (g.hi * (1.0 + SLACK)).next_up();
    if g.hi >= 1.0 || t >= 1.0 {
        return Err(Error::NoContraction(format!("g({zeta}) = {} is not below 1", g.mid())));
    }
    Ok(RParams {
        zeta,
        g,
        t,
        a: Interval::point(zeta).div(int(2 * m)),
        r_value: Interval::point(t).root(m),
    })
}

/// `κ = a/((2m+2)Δ^{2ℓ̄+1})`, `Z = 2ℓ̄ μ^{2ℓ̄} Σ_{i=1}^{2m} σ⃗_i`,
/// `η = 1/(1+Z)` (the minimizer of `f(η) = Z^η η^η (1−η)^{1−η}`) and
/// `S = f(η)^κ`.
pub fn compute_s(
    m: usize,
    degree: u32,
    ell_bar: usize,
    a: Interval,
    dsigma: &[BigUint],
    mu_upper: Interval,
) -> Result<SParams> {
    if dsigma.len() <= 2 * m {
        return Err(Error::Parameter(format!("need directed counts up to {}", 2 * m)));
    }
    let two_ell = (2 * ell_bar) as i32;
    let delta = Interval::point(degree as f64);
    let mut denom = int(2 * m + 2);
    for _ in 0..=two_ell {
        denom = denom.mul(delta);
    }
    let kappa = a.div(denom);
    let sum: BigUint = dsigma[1..=2 * m].iter().sum();
    let mut mu_pow = one();
    for _ in 0..two_ell {
        mu_pow = mu_pow.mul(mu_upper);
    }
    let z = int(2 * ell_bar).mul(mu_pow).mul(Interval::from_big(&sum));
    let zm = z.mid();
    let eta = 1.0 / (1.0 + zm);
    let e = Interval::point(eta);
    let w = one().sub(e);
    let ln_f = e.mul(z.ln()).add(e.mul(e.ln())).add(w.mul(w.ln()));
    let f_eta = ln_f.exp();
    if f_eta.hi >= 1.0 {
        return Err(Error::NoContraction(format!("f(eta) = {} is not below 1", f_eta.mid())));
    }
    Ok(SParams {
        kappa,
        z,
        eta,
        f_eta,
        s_value: kappa.mul(ln_f).exp(),
    })
}

/// Largest `ζ ≤ ZETA_CAP` with `g(ζ)(1+SLACK) < 1`, by bisection.
fn zeta_limit(eps: f64, m: usize) -> f64 {
    let slack = (1.0 + SLACK).ln();
    let ok = |z: f64| ln_g(eps, m, z) + slack < 0.0;
    if ok(ZETA_CAP) {
        return ZETA_CAP;
    }
    let (mut lo, mut hi) = (0.0, ZETA_CAP);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Golden-section search for the `ζ` minimizing `max(ln R, ln S)`.
pub fn choose_zeta(eps: f64, m: usize, degree: u32, ell_bar: usize, z: f64) -> Option<f64> {
    let limit = zeta_limit(eps, m);
    if limit <= 0.0 {
        return None;
    }
    let slack = (1.0 + SLACK).ln();
    let ln_f = z / (1.0 + z);
    let ln_f = ln_f.ln();
    let denom = (2 * m + 2) as f64 * (degree as f64).powi(2 * ell_bar as i32 + 1);
    let objective = |zeta: f64| {
        let ln_r = (ln_g(eps, m, zeta) + slack) / m as f64;
        let ln_s = zeta / (2 * m) as f64 / denom * ln_f;
        ln_r.max(ln_s)
    };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, limit);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    while hi - lo > ZETA_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    let zeta = 0.5 * (lo + hi);
    (zeta > 0.0).then_some(zeta.min(limit))
}

fn inconclusive(inputs: CertificateInputs, checks: Vec<InequalityCheck>, reason: String, params: Option<SearchParams>) -> RatioCertificate {
    RatioCertificate {
        format: FORMAT.into(),
        graph: inputs.graph.clone(),
        quotient: inputs.quotient.clone(),
        status: Status::InconclusiveBudget,
        reason: Some(reason),
        params,
        epsilon: params.map(|p| format!("1/{}", p.r)),
        constants: None,
        checks,
        inputs,
        generated_at: None,
    }
}

/// Builds the certificate from exact counts alone; deterministic.
pub fn certify_from_counts(inputs: CertificateInputs) -> RatioCertificate {
    let (params, mut checks) = find_epsilon_m(&inputs);
    let Some(p) = params else {
        let top = horizon(&inputs);
        return inconclusive(inputs, checks, format!("no (r, s, m) found up to n = {top}"), None);
    };
    if inputs.dsigma.len() <= 2 * p.m {
        return inconclusive(
            inputs,
            checks,
            format!("directed counts up to {} are required", 2 * p.m),
            params,
        );
    }
    let n0 = inputs.sigma.len() - 1;
    let mu_upper = root_of(&inputs.sigma[n0], n0);
    let eps = epsilon(p.r);
    // Z does not depend on ζ; evaluate it once to balance R against S
    let probe = compute_s(p.m, inputs.degree, inputs.ell_bar, one(), &inputs.dsigma, mu_upper);
    let zeta = probe
        .ok()
        .and_then(|s| choose_zeta(eps.mid(), p.m, inputs.degree, inputs.ell_bar, s.z.mid()));
    let computed = zeta
        .ok_or_else(|| Error::NoContraction("no density with g < 1".into()))
        .and_then(|zeta| {
            let rp = compute_r(eps, p.m, zeta)?;
            let sp = compute_s(p.m, inputs.degree, inputs.ell_bar, rp.a, &inputs.dsigma, mu_upper)?;
            Ok((rp, sp))
        });
    let (rp, sp) = match computed {
        Ok(v) => v,
        Err(e) => return inconclusive(inputs, checks, e.to_string(), params),
    };
    let r_final = rp.r_value.max(sp.s_value);
    checks.push(InequalityCheck::new("g(zeta) < 1", rp.g, Relation::Lt, one()));
    checks.push(InequalityCheck::new("g(zeta) <= t", rp.g, Relation::Le, Interval::point(rp.t)));
    checks.push(InequalityCheck::new("t < 1", Interval::point(rp.t), Relation::Lt, one()));
    checks.push(InequalityCheck::new("R < 1", rp.r_value, Relation::Lt, one()));
    checks.push(InequalityCheck::new("f(eta) < 1", sp.f_eta, Relation::Lt, one()));
    checks.push(InequalityCheck::new("S < 1", sp.s_value, Relation::Lt, one()));
    checks.push(InequalityCheck::new("R_final < 1", r_final, Relation::Lt, one()));
    let all = checks.iter().all(|c| c.verdict);
    let constants = Constants {
        zeta: rp.zeta,
        t: rp.t,
        a: rp.a.mid(),
        r_value: rp.r_value.hi,
        kappa: sp.kappa.mid(),
        z: sp.z.mid(),
        eta: sp.eta,
        s_value: sp.s_value.hi,
        r_final: r_final.hi,
        mu_upper: mu_upper.hi,
        n0,
    };
    RatioCertificate {
        format: FORMAT.into(),
        graph: inputs.graph.clone(),
        quotient: inputs.quotient.clone(),
        status: if all { Status::Certified } else { Status::InconclusiveBudget },
        reason: (!all).then(|| "an inequality failed under outward rounding".to_string()),
        params,
        epsilon: Some(format!("1/{}", p.r)),
        constants: Some(constants),
        checks,
        inputs,
        generated_at: None,
    }
}

/// Runs the counts and the certificate search with searches capped at `budget`.
pub fn certify_ratio(
    g: &GraphHandle,
    q: &QuotientGraph,
    family: &CycleFamily,
    b: &LowerBoundSequence,
    budget: usize,
    config: &EngineConfig,
) -> Result<RatioCertificate> {
    if q.graph().id() != g.id() {
        return Err(Error::Parameter(format!(
            "quotient {} is not a quotient of {}",
            q.id(),
            g.id()
        )));
    }
    let b = b.clone().regularized();
    let n = budget.min(b.max_n());
    let sigma = count_saws(g, &g.origin(), n.max(1), config)?;
    let events = event_profile(
        q,
        family,
        EventQuery {
            k: family.length,
            m: None,
            r_max: 0,
        },
        n,
        config,
    )?;
    let dsigma = count_directed_saws(q, n, config)?;
    let mut inputs = CertificateInputs {
        graph: g.id().to_string(),
        quotient: q.id(),
        degree: g.degree(),
        ell_bar: family.length,
        budget,
        sigma: sigma.counts,
        dsigma: dsigma.counts,
        events: events.counts.iter().map(|row| row[0].clone()).collect(),
        b: b.values(),
    };
    if let (Some(p), _) = find_epsilon_m(&inputs) {
        if inputs.dsigma.len() <= 2 * p.m {
            inputs.dsigma = count_directed_saws(q, 2 * p.m, config)?.counts;
        }
    }
    Ok(certify_from_counts(inputs))
}
