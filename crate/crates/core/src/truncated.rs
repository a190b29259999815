//! Artinian truncations Q[x_1..x_d] / ((f) + m^N) and the certificates
//! computed inside them.
//!
//! Every ideal identity this crate certifies reduces to finitely many
//! membership tests in such a truncation: a containment a <= b of m-primary
//! ideals in the local ring follows from a <= b + m*a + m^N once m^N <= m*a,
//! so a sufficiently deep truncation is a complete witness. All linear
//! algebra is exact.

use std::collections::HashMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{SparseRow, Subspace};
use crate::ring::{monomials_below, monomials_of_degree, ExponentVector, PolyElement};

#[derive(Debug, Clone)]
pub struct TruncatedAlgebra {
    nvars: usize,
    /// Monomials of total degree >= order are zero in the algebra.
    order: usize,
    basis: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    relation: Option<PolyElement>,
    /// Span of all truncated multiples of the relation.
    rel_span: Subspace,
}

/// One summand of a reduction equation: finitely many ring elements times
/// one ideal, i.e. (elements) * (ideal_gens).
#[derive(Debug, Clone)]
pub struct Summand {
    pub elements: Vec<PolyElement>,
    pub ideal_gens: Vec<PolyElement>,
}

/// Result of a containment test, listing the offending generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentCheck {
    pub holds: bool,
    pub failing: Vec<usize>,
}

/// Result of checking target = sum of summands + m * target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationCheck {
    pub holds: bool,
    /// Indices of target generators not reached by the right-hand side.
    pub failing: Vec<usize>,
    pub products_checked: usize,
}

impl TruncatedAlgebra {
    /// Builds the truncation at m^order, optionally modulo one hypersurface
    /// relation (non-zero, zero constant term).
    pub fn build(nvars: usize, order: usize, relation: Option<PolyElement>) -> Result<Self> {
        if order < 1 {
            return Err(Error::TruncationTooSmall { required: 1, actual: order });
        }
        if let Some(f) = &relation {
            if f.dim() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: f.dim() });
            }
            if f.is_zero() || !f.constant_term().is_zero() {
                return Err(Error::UnitRelation);
            }
        }
        let basis = monomials_below(nvars, order);
        let index: HashMap<ExponentVector, usize> =
            basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut alg = TruncatedAlgebra {
            nvars,
            order,
            rel_span: Subspace::new(basis.len()),
            basis,
            index,
            relation: relation.clone(),
        };
        if let Some(f) = &relation {
            let min = f.min_total_degree().unwrap_or(0) as usize;
            let multipliers: Vec<ExponentVector> = alg
                .basis
                .iter()
                .filter(|u| (u.total_degree() as usize) + min < order)
                .cloned()
                .collect();
            for u in multipliers {
                let row = alg.raw_row(&f.mul_monomial(&u)?)?;
                alg.rel_span.insert(row);
            }
        }
        Ok(alg)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn relation(&self) -> Option<&PolyElement> {
        self.relation.as_ref()
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the truncated polynomial, before reduction by the
    /// relation span.
    fn raw_row(&self, p: &PolyElement) -> Result<SparseRow> {
        if p.dim() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: p.dim() });
        }
        let mut row: SparseRow = p
            .truncate_below(self.order)
            .terms()
            .map(|(e, c)| (self.index[e], c.clone()))
            .collect();
        row.sort_by_key(|(i, _)| *i);
        Ok(row)
    }

    /// Unique coordinates of p in the algebra.
    pub fn normal_form(&self, p: &PolyElement) -> Result<SparseRow> {
        Ok(self.rel_span.reduce(self.raw_row(p)?))
    }

    /// True when p is zero in the algebra.
    pub fn is_zero_in_algebra(&self, p: &PolyElement) -> Result<bool> {
        Ok(self.normal_form(p)?.is_empty())
    }

    /// The image of the ideal (gens) as a linear subspace: the span of all
    /// normal forms u * g over basis monomials u.
    pub fn ideal_image(&self, gens: &[PolyElement]) -> Result<Subspace> {
        let mut span = Subspace::new(self.basis.len());
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let min = g.min_total_degree().unwrap_or(0) as usize;
            for u in &self.basis {
                if (u.total_degree() as usize) + min >= self.order {
                    continue;
                }
                span.insert(self.normal_form(&g.mul_monomial(u)?)?);
                if span.is_full() {
                    return Ok(span);
                }
            }
        }
        Ok(span)
    }

    /// Generators of m * (gens): every variable times every generator.
    pub fn times_maximal(&self, gens: &[PolyElement]) -> Result<Vec<PolyElement>> {
        let mut out = Vec::with_capacity(gens.len() * self.nvars);
        for i in 0..self.nvars {
            let mut e = vec![0u32; self.nvars];
            e[i] = 1;
            let xi = ExponentVector(e);
            for g in gens {
                out.push(g.mul_monomial(&xi)?);
            }
        }
        Ok(out)
    }

    /// Certifies m^t <= (gens) in the local ring. Needs order >= t + 1:
    /// each degree-t monomial then lies in (gens) + m^(t+1), and m * m^t
    /// absorbs the tail.
    pub fn verify_m_power(&self, gens: &[PolyElement], t: usize) -> Result<bool> {
        if self.order < t + 1 {
            return Err(Error::TruncationTooSmall { required: t + 1, actual: self.order });
        }
        let image = self.ideal_image(gens)?;
        for e in monomials_of_degree(self.nvars, t as u32) {
            if !image.contains(&self.normal_form(&PolyElement::monomial(e))?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Certifies (a_gens) <= (b_gens) in the local ring, given m^t_a <=
    /// (a_gens). Membership of each a-generator in (b) + m*(a) + m^order
    /// upgrades to containment because m^order <= m * (a).
    pub fn verify_containment(
        &self,
        a_gens: &[PolyElement],
        b_gens: &[PolyElement],
        t_a: usize,
    ) -> Result<ContainmentCheck> {
        if self.order < t_a + 1 {
            return Err(Error::TruncationTooSmall { required: t_a + 1, actual: self.order });
        }
        let mut rhs = b_gens.to_vec();
        rhs.extend(self.times_maximal(a_gens)?);
        let image = self.ideal_image(&rhs)?;
        let mut failing = Vec::new();
        for (i, a) in a_gens.iter().enumerate() {
            if !image.contains(&self.normal_form(a)?) {
                failing.push(i);
            }
        }
        Ok(ContainmentCheck { holds: failing.is_empty(), failing })
    }

    /// Certifies p in (gens) in the local ring, given m^t <= (gens).
    pub fn element_in_ideal(
        &self,
        p: &PolyElement,
        gens: &[PolyElement],
        t: usize,
    ) -> Result<bool> {
        if self.order < t + 1 {
            return Err(Error::TruncationTooSmall { required: t + 1, actual: self.order });
        }
        let image = self.ideal_image(gens)?;
        Ok(image.contains(&self.normal_form(p)?))
    }

    /// Minimal number of generators of (gens) in the local ring, given
    /// m^t <= (gens): the rank drop from the ideal image to the image of
    /// m * (gens).
    pub fn mu_in_quotient(&self, gens: &[PolyElement], t: usize) -> Result<usize> {
        if self.order < t + 2 {
            return Err(Error::TruncationTooSmall { required: t + 2, actual: self.order });
        }
        let full = self.ideal_image(gens)?.rank();
        let shallow = self.ideal_image(&self.times_maximal(gens)?)?.rank();
        Ok(full - shallow)
    }

    /// Certifies target = summand_1 + ... + summand_k (+ m * target), given
    /// m^t_target <= (target).
    ///
    /// Shape requirements: every summand element is non-zero with zero
    /// constant term, and every product element * ideal generator already
    /// lies in (target); the latter is exactly what makes the Nakayama
    /// conclusion an equality of ideals rather than a containment.
    pub fn verify_reduction_equation(
        &self,
        target: &[PolyElement],
        summands: &[Summand],
        t_target: usize,
    ) -> Result<EquationCheck> {
        if self.order < t_target + 1 {
            return Err(Error::TruncationTooSmall { required: t_target + 1, actual: self.order });
        }
        if target.is_empty() {
            return Err(Error::Input("empty target generator list".into()));
        }
        for (i, s) in summands.iter().enumerate() {
            for (j, e) in s.elements.iter().enumerate() {
                if e.is_zero() {
                    return Err(Error::InvalidSummand(format!(
                        "element {j} of summand {i} is zero"
                    )));
                }
                if !e.constant_term().is_zero() {
                    return Err(Error::InvalidSummand(format!(
                        "element {j} of summand {i} has a unit term"
                    )));
                }
            }
        }
        let target_image = self.ideal_image(target)?;
        let mut products = Vec::new();
        for (i, s) in summands.iter().enumerate() {
            for (j, e) in s.elements.iter().enumerate() {
                for g in &s.ideal_gens {
                    let p = e.mul(g)?;
                    if !target_image.contains(&self.normal_form(&p)?) {
                        return Err(Error::InvalidSummand(format!(
                            "product of element {j} of summand {i} with an ideal generator \
                             is not in the target ideal"
                        )));
                    }
                    products.push(p);
                }
            }
        }
        let products_checked = products.len();
        products.extend(self.times_maximal(target)?);
        let image = self.ideal_image(&products)?;
        let mut failing = Vec::new();
        for (i, t) in target.iter().enumerate() {
            if !image.contains(&self.normal_form(t)?) {
                failing.push(i);
            }
        }
        Ok(EquationCheck { holds: failing.is_empty(), failing, products_checked })
    }
}

/// Smallest t <= cap with m^t <= (gens) in the local ring, found by
/// re-verifying in truncations of increasing depth.
pub fn smallest_m_power_inside(
    nvars: usize,
    relation: Option<&PolyElement>,
    gens: &[PolyElement],
    cap: usize,
) -> Result<usize> {
    if gens.iter().any(|g| !g.constant_term().is_zero()) {
        // a generator with a unit term makes the ideal the whole local ring
        return Ok(0);
    }
    for t in 1..=cap {
        let alg = TruncatedAlgebra::build(nvars, t + 1, relation.cloned())?;
        if alg.verify_m_power(gens, t)? {
            return Ok(t);
        }
    }
    Err(Error::Hypothesis(format!(
        "no power of the maximal ideal found inside the ideal up to m^{cap}; \
         the ideal may not be m-primary, or the search cap is too low"
    )))
}
