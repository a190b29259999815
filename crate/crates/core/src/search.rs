//! Gated searches for reductions and joint reductions via sampled general
//! elements, and windowed reduction-number computation.

use num::{BigUint, Zero};

use crate::bounds::es_check;
use crate::certificate::{
    Certificate, DegreeCheck, DegreeGate, GateReport, HypothesisAssertions,
    ReductionCertificate, ReductionNumberCertificate, RingDescriptor, SampledSummand,
};
use crate::error::{Error, Result};
use crate::filtration::FiltrationSpec;
use crate::ring::{MultiIndex, PolyElement};
use crate::sampler::GeneralElementSampler;
use crate::truncated::{Summand, TruncatedAlgebra};

pub const DEFAULT_COEFF_BOUND: i64 = 101;
pub const DEFAULT_MAX_ATTEMPTS: u32 = 8;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub seed: u64,
    pub coeff_bound: i64,
    pub max_attempts: u32,
    /// Run even when a gate refuses; the certificate is marked as forced.
    pub force: bool,
    /// Extra truncation depth beyond the certified minimum, for
    /// stability experiments.
    pub extra_order: usize,
    pub assertions: HypothesisAssertions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 1,
            coeff_bound: DEFAULT_COEFF_BOUND,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            force: false,
            extra_order: 0,
            assertions: HypothesisAssertions::default(),
        }
    }
}

impl SearchOptions {
    pub fn with_seed(seed: u64) -> Self {
        SearchOptions { seed, ..SearchOptions::default() }
    }
}

fn ring_descriptor(f: &FiltrationSpec, vars: &[String]) -> RingDescriptor {
    RingDescriptor { vars: vars.to_vec(), relation: f.relation().cloned() }
}

/// Default variable names x, y, z, then x4, x5, ...
pub fn default_vars(nvars: usize) -> Vec<String> {
    (0..nvars)
        .map(|i| match i {
            0 => "x".to_string(),
            1 => "y".to_string(),
            2 => "z".to_string(),
            _ => format!("x{}", i + 1),
        })
        .collect()
}

fn degree_gate(f: &FiltrationSpec, n: &MultiIndex) -> Result<Option<DegreeGate>> {
    if f.is_plain_powers() {
        return Ok(None);
    }
    // scan everything a table stores; otherwise the requested degree caps
    // the scan and anything beyond is covered by the good-filtration
    // assertion
    let scan_box = match f.max_degree() {
        Some(top) => MultiIndex(vec![top]),
        None => n.clone(),
    };
    let report = f.fibercone_gen_degrees(&scan_box)?;
    let required = MultiIndex(report.a_bar.0.iter().map(|a| a + 1).collect());
    let satisfied = required.leq(n);
    Ok(Some(DegreeGate {
        a_bar: report.a_bar,
        required,
        scan_box,
        boundary_hit: report.boundary_hit,
        satisfied,
    }))
}

fn search_equation(
    f: &FiltrationSpec,
    vars: &[String],
    n: &MultiIndex,
    r: &MultiIndex,
    opts: &SearchOptions,
    joint: bool,
) -> Result<Certificate> {
    let s = f.spread();
    if n.len() != s {
        return Err(Error::DimensionMismatch { expected: s, found: n.len() });
    }
    if r.len() != s {
        return Err(Error::DimensionMismatch { expected: s, found: r.len() });
    }
    if vars.len() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), found: vars.len() });
    }
    if n.0.iter().any(|&ni| ni == 0) {
        return Err(Error::Input(format!(
            "the equation at {n} needs every degree component at least 1"
        )));
    }

    let mu = BigUint::from(f.mu_at(n)? as u64);
    let es = es_check(mu, n, r)?;
    let degree = degree_gate(f, n)?;
    if !opts.force {
        if !es.triggered {
            return Err(Error::GateRefused(format!(
                "generator count {} does not beat the bound {} at {n}",
                es.mu, es.bound
            )));
        }
        if let Some(g) = &degree {
            if !g.satisfied {
                return Err(Error::GateRefused(format!(
                    "degree {n} is below the fiber-cone threshold {}",
                    g.required
                )));
            }
        }
    }

    let target = f.gens_at(n)?;
    let t = f.d0_at(n)?;
    let order = t + 1 + opts.extra_order;
    let alg = TruncatedAlgebra::build(f.nvars(), order, f.relation().cloned())?;
    let mut source_gens = Vec::with_capacity(s);
    let mut prev_gens = Vec::with_capacity(s);
    for i in 0..s {
        let e_i = MultiIndex::unit(s, i);
        source_gens.push(f.gens_at(&e_i)?);
        prev_gens.push(f.gens_at(&n.checked_sub(&e_i).expect("n >= 1 checked"))?);
    }

    let mut sampler = GeneralElementSampler::new(opts.seed, opts.coeff_bound, opts.max_attempts)?;
    let mut last: Option<(Vec<SampledSummand>, Vec<usize>, i64)> = None;
    let mut verified_at = None;
    for attempt in 1..=opts.max_attempts {
        let mut recorded = Vec::with_capacity(s);
        let mut summands = Vec::with_capacity(s);
        for i in 0..s {
            let picks = sampler.sample_elements(&source_gens[i], r.0[i] as usize)?;
            recorded.push(SampledSummand {
                source_degree: MultiIndex::unit(s, i),
                source_gens: source_gens[i].clone(),
                coefficients: picks.iter().map(|p| p.coeffs.clone()).collect(),
                elements: picks.iter().map(|p| p.element.clone()).collect(),
                ideal_degree: n.checked_sub(&MultiIndex::unit(s, i)).expect("n >= 1"),
                ideal_gens: prev_gens[i].clone(),
            });
            summands.push(Summand {
                elements: recorded[i].elements.clone(),
                ideal_gens: recorded[i].ideal_gens.clone(),
            });
        }
        let eq = alg.verify_reduction_equation(&target, &summands, t)?;
        last = Some((recorded, eq.failing, sampler.coeff_bound()));
        if eq.holds {
            verified_at = Some(attempt);
            break;
        }
        sampler.escalate();
    }

    let (summands, failing_targets, coeff_bound) = last.expect("at least one attempt");
    let cert = ReductionCertificate {
        ring: ring_descriptor(f, vars),
        n: n.clone(),
        r: r.clone(),
        gates: GateReport { es, degree, forced: opts.force },
        truncation_order: order,
        absorption_degree: t,
        target_gens: target,
        summands,
        verified: verified_at.is_some(),
        failing_targets,
        seed: opts.seed,
        coeff_bound,
        attempt: verified_at.unwrap_or(opts.max_attempts),
        attempts_allowed: opts.max_attempts,
        assertions: opts.assertions,
    };
    Ok(if joint { Certificate::JointReduction(cert) } else { Certificate::Reduction(cert) })
}

/// Searches for general elements x_{i1}, ..., x_{i r_i} in the unit-degree
/// pieces with sum_i (x_{i1}, ..., x_{i r_i}) I_{n - e_i} = I_n, provided
/// the generator-count bound and (for non-power families) the fiber-cone
/// degree threshold allow it.
pub fn find_joint_reduction(
    f: &FiltrationSpec,
    vars: &[String],
    n: &MultiIndex,
    r: &MultiIndex,
    opts: &SearchOptions,
) -> Result<Certificate> {
    search_equation(f, vars, n, r, opts, true)
}

/// Single-graded variant: r general elements with (x_1,...,x_r) I_{n-1} = I_n.
pub fn find_reduction(
    f: &FiltrationSpec,
    vars: &[String],
    n: u32,
    r: u32,
    opts: &SearchOptions,
) -> Result<Certificate> {
    if f.spread() != 1 {
        return Err(Error::Input(format!(
            "single-graded search on a family with {} gradings",
            f.spread()
        )));
    }
    search_equation(f, vars, &MultiIndex(vec![n]), &MultiIndex(vec![r]), opts, false)
}

/// Certifies J I_{m-1} = I_m degree by degree up to n_max and reports the
/// smallest n0 after which the equation always holds in the window. The
/// elements of J must be certified members of the unit-degree piece.
pub fn reduction_number(
    f: &FiltrationSpec,
    vars: &[String],
    j_elements: &[PolyElement],
    n_max: u32,
    opts: &SearchOptions,
) -> Result<Certificate> {
    if f.spread() != 1 {
        return Err(Error::Input(format!(
            "reduction numbers need a single grading, family has {}",
            f.spread()
        )));
    }
    if n_max == 0 {
        return Err(Error::Input("the degree window must reach at least 1".into()));
    }
    if j_elements.is_empty() {
        return Err(Error::Input("empty element list for J".into()));
    }
    for e in j_elements {
        if e.is_zero() || !e.constant_term().is_zero() {
            return Err(Error::Input("elements of J must be non-zero non-units".into()));
        }
    }

    let one = MultiIndex(vec![1]);
    let first = f.gens_at(&one)?;
    let t1 = f.d0_at(&one)?;
    let alg = TruncatedAlgebra::build(f.nvars(), t1 + 1 + opts.extra_order, f.relation().cloned())?;
    for e in j_elements {
        if !alg.element_in_ideal(e, &first, t1)? {
            return Err(Error::Hypothesis(
                "an element of J is not certified inside the degree-one piece".into(),
            ));
        }
    }

    let mut checks = Vec::with_capacity(n_max as usize);
    for m in 1..=n_max {
        let target = f.gens_at(&MultiIndex(vec![m]))?;
        let prev = f.gens_at(&MultiIndex(vec![m - 1]))?;
        let t = f.d0_at(&MultiIndex(vec![m]))?;
        let order = t + 1 + opts.extra_order;
        let alg = TruncatedAlgebra::build(f.nvars(), order, f.relation().cloned())?;
        let eq = alg.verify_reduction_equation(
            &target,
            &[Summand { elements: j_elements.to_vec(), ideal_gens: prev.clone() }],
            t,
        )?;
        checks.push(DegreeCheck {
            m,
            holds: eq.holds,
            truncation_order: order,
            absorption_degree: t,
            target_gens: target,
            prev_gens: prev,
        });
    }
    let last_fail = checks.iter().filter(|c| !c.holds).map(|c| c.m).max();
    let r = match last_fail {
        None => Some(0),
        Some(m) if m == n_max => None,
        Some(m) => Some(m),
    };
    Ok(Certificate::ReductionNumber(ReductionNumberCertificate {
        ring: ring_descriptor(f, vars),
        j_elements: j_elements.to_vec(),
        n_max,
        checks,
        r,
        assertions: opts.assertions,
    }))
}
