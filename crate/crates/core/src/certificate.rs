//! Machine-checkable records of verified (joint) reduction equations and
//! reduction-number computations. A certificate carries every input the
//! verification consumed, so `replay` can rebuild the truncated algebra
//! and reproduce the verdict exactly.

use serde::{Deserialize, Serialize};

use crate::bounds::ESBoundReport;
use crate::error::{Error, Result};
use crate::ring::{MultiIndex, PolyElement};
use crate::truncated::{Summand, TruncatedAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub vars: Vec<String>,
    /// Hypersurface relation, when the ambient ring is a quotient.
    pub relation: Option<PolyElement>,
}

/// Degree-side hypothesis for non-power filtrations: the requested degree
/// must exceed every fiber-cone module-generator degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeGate {
    pub a_bar: MultiIndex,
    /// a_bar + 1, the smallest admissible degree.
    pub required: MultiIndex,
    pub scan_box: MultiIndex,
    pub boundary_hit: bool,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateReport {
    pub es: ESBoundReport,
    /// None for plain power families, which generate in degree zero.
    pub degree: Option<DegreeGate>,
    /// True when gates were overridden and the run is exploratory.
    pub forced: bool,
}

/// Hypotheses the user asserts and the tool records without checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisAssertions {
    pub good_filtration: bool,
    pub grade_at_least_spread: bool,
    pub fiber_cone_cohen_macaulay: bool,
}

impl Default for HypothesisAssertions {
    fn default() -> Self {
        // finiteness and grade are what providing the data implicitly
        // claims; Cohen-Macaulayness of the fiber cone never is
        HypothesisAssertions {
            good_filtration: true,
            grade_at_least_spread: true,
            fiber_cone_cohen_macaulay: false,
        }
    }
}

/// One sampled block of the equation: `elements` drawn from the piece in
/// degree `source_degree`, multiplied against the piece in `ideal_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledSummand {
    pub source_degree: MultiIndex,
    pub source_gens: Vec<PolyElement>,
    /// Coefficient vectors over `source_gens`, one per sampled element.
    pub coefficients: Vec<Vec<i64>>,
    pub elements: Vec<PolyElement>,
    pub ideal_degree: MultiIndex,
    pub ideal_gens: Vec<PolyElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub ring: RingDescriptor,
    pub n: MultiIndex,
    pub r: MultiIndex,
    pub gates: GateReport,
    /// Order N of the truncated algebra the verdict was computed in.
    pub truncation_order: usize,
    /// Smallest t with m^t inside the target piece.
    pub absorption_degree: usize,
    pub target_gens: Vec<PolyElement>,
    pub summands: Vec<SampledSummand>,
    pub verified: bool,
    /// Target generators the final attempt failed to reach, when any.
    pub failing_targets: Vec<usize>,
    pub seed: u64,
    /// Coefficient bound in force at the recorded attempt.
    pub coeff_bound: i64,
    pub attempt: u32,
    pub attempts_allowed: u32,
    pub assertions: HypothesisAssertions,
}

/// One degree of a reduction-number run: does J * I_{m-1} = I_m hold?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub m: u32,
    pub holds: bool,
    pub truncation_order: usize,
    pub absorption_degree: usize,
    pub target_gens: Vec<PolyElement>,
    pub prev_gens: Vec<PolyElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionNumberCertificate {
    pub ring: RingDescriptor,
    pub j_elements: Vec<PolyElement>,
    pub n_max: u32,
    pub checks: Vec<DegreeCheck>,
    /// Smallest n0 with the equation verified at every degree in
    /// (n0, n_max]; None when even the top degree fails. Exact only up to
    /// n_max — nothing is claimed beyond the window.
    pub r: Option<u32>,
    pub assertions: HypothesisAssertions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    #[serde(rename = "reduction")]
    Reduction(ReductionCertificate),
    #[serde(rename = "joint-reduction")]
    JointReduction(ReductionCertificate),
    #[serde(rename = "reduction-number")]
    ReductionNumber(ReductionNumberCertificate),
}

impl Certificate {
    pub fn verified(&self) -> bool {
        match self {
            Certificate::Reduction(c) | Certificate::JointReduction(c) => c.verified,
            Certificate::ReductionNumber(c) => c.r.is_some(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        serde_json::from_str(s).map_err(|e| Error::Input(format!("bad certificate: {e}")))
    }
}

fn summands_of(cert: &ReductionCertificate) -> Vec<Summand> {
    cert.summands
        .iter()
        .map(|s| Summand { elements: s.elements.clone(), ideal_gens: s.ideal_gens.clone() })
        .collect()
}

/// Re-runs the recorded verification from the certificate data alone and
/// reports whether the stored verdict (and failure detail) is reproduced.
pub fn replay(cert: &Certificate) -> Result<bool> {
    match cert {
        Certificate::Reduction(c) | Certificate::JointReduction(c) => {
            let alg = TruncatedAlgebra::build(
                c.ring.vars.len(),
                c.truncation_order,
                c.ring.relation.clone(),
            )?;
            let eq = alg.verify_reduction_equation(
                &c.target_gens,
                &summands_of(c),
                c.absorption_degree,
            )?;
            Ok(eq.holds == c.verified && eq.failing == c.failing_targets)
        }
        Certificate::ReductionNumber(c) => {
            for check in &c.checks {
                let alg = TruncatedAlgebra::build(
                    c.ring.vars.len(),
                    check.truncation_order,
                    c.ring.relation.clone(),
                )?;
                let eq = alg.verify_reduction_equation(
                    &check.target_gens,
                    &[Summand {
                        elements: c.j_elements.clone(),
                        ideal_gens: check.prev_gens.clone(),
                    }],
                    check.absorption_degree,
                )?;
                if eq.holds != check.holds {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}
