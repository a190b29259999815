//! Graded families of ideals: products of powers, integral closures of
//! powers, and explicit per-degree tables (optionally inside a hypersurface
//! quotient), plus the fiber-cone generator-degree scan that gates the
//! general-element searches.

use std::cell::RefCell;
use std::collections::HashMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{multi_power, MonomialIdeal};
use crate::newton::integral_closure;
use crate::ring::{box_indices, MultiIndex, PolyElement};
use crate::truncated::{smallest_m_power_inside, TruncatedAlgebra};

/// Default ceiling for absorption-degree searches in quotient rings.
pub const D0_CAP_DEFAULT: usize = 24;

#[derive(Debug, Clone)]
pub enum FiltrationKind {
    /// I_n = I_1^{n_1} * ... * I_s^{n_s} for a family of monomial ideals.
    Powers(Vec<MonomialIdeal>),
    /// I_n = integral closure of I^n, single grading.
    ClosurePowers(MonomialIdeal),
    /// Explicit generator lists for I_1, ..., I_nmax, single grading,
    /// optionally in Q[x..]/(relation).
    Table { relation: Option<PolyElement>, levels: Vec<Vec<PolyElement>> },
}

/// An N^s-graded family of ideals with I_0 = (1), decreasing along each
/// axis and closed under products across degrees. The two computed kinds
/// satisfy this by construction; tables are checked by `validate`.
pub struct FiltrationSpec {
    nvars: usize,
    kind: FiltrationKind,
    d0_cap: usize,
    d0_cache: RefCell<HashMap<MultiIndex, usize>>,
}

/// Degrees in which the fiber cone needs module generators over the
/// subalgebra generated in the unit degrees, and their componentwise max.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    /// Always contains the zero degree; sorted.
    pub degrees: Vec<MultiIndex>,
    pub a_bar: MultiIndex,
    /// A generator degree lies on the scan-box boundary, so a_bar may be
    /// an underestimate.
    pub boundary_hit: bool,
}

impl FiltrationSpec {
    pub fn powers(ideals: Vec<MonomialIdeal>) -> Result<Self> {
        if ideals.is_empty() {
            return Err(Error::Input("empty ideal family".into()));
        }
        let nvars = ideals[0].dim();
        for ideal in &ideals {
            if ideal.dim() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: ideal.dim() });
            }
            if ideal.is_zero() {
                return Err(Error::ZeroIdeal);
            }
        }
        Ok(Self::with_kind(nvars, FiltrationKind::Powers(ideals)))
    }

    pub fn closure_powers(ideal: MonomialIdeal) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let nvars = ideal.dim();
        Ok(Self::with_kind(nvars, FiltrationKind::ClosurePowers(ideal)))
    }

    /// Builds a table filtration and checks the filtration axioms on the
    /// stored range.
    pub fn table(
        nvars: usize,
        relation: Option<PolyElement>,
        levels: Vec<Vec<PolyElement>>,
    ) -> Result<Self> {
        let spec =
            Self::with_kind(nvars, FiltrationKind::Table { relation, levels });
        spec.validate()?;
        Ok(spec)
    }

    /// As `table`, but defers the axiom checks to an explicit `validate`
    /// call; useful when the caller wants a custom absorption cap first.
    pub fn table_unchecked(
        nvars: usize,
        relation: Option<PolyElement>,
        levels: Vec<Vec<PolyElement>>,
    ) -> Self {
        Self::with_kind(nvars, FiltrationKind::Table { relation, levels })
    }

    fn with_kind(nvars: usize, kind: FiltrationKind) -> Self {
        FiltrationSpec { nvars, kind, d0_cap: D0_CAP_DEFAULT, d0_cache: RefCell::new(HashMap::new()) }
    }

    pub fn set_d0_cap(&mut self, cap: usize) {
        self.d0_cap = cap;
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kind(&self) -> &FiltrationKind {
        &self.kind
    }

    /// Number of grading directions.
    pub fn spread(&self) -> usize {
        match &self.kind {
            FiltrationKind::Powers(ideals) => ideals.len(),
            _ => 1,
        }
    }

    pub fn relation(&self) -> Option<&PolyElement> {
        match &self.kind {
            FiltrationKind::Table { relation, .. } => relation.as_ref(),
            _ => None,
        }
    }

    /// Largest evaluable degree along the single grading, if bounded.
    pub fn max_degree(&self) -> Option<u32> {
        match &self.kind {
            FiltrationKind::Table { levels, .. } => Some(levels.len() as u32),
            _ => None,
        }
    }

    /// True when I_n is literally a product of powers, so the fiber cone
    /// equals the subalgebra generated in the unit degrees.
    pub fn is_plain_powers(&self) -> bool {
        matches!(self.kind, FiltrationKind::Powers(_))
    }

    fn check_degree(&self, n: &MultiIndex) -> Result<()> {
        if n.len() != self.spread() {
            return Err(Error::DimensionMismatch { expected: self.spread(), found: n.len() });
        }
        Ok(())
    }

    /// The piece at degree n as a monomial ideal, when the kind computes one.
    pub fn monomial_at(&self, n: &MultiIndex) -> Result<Option<MonomialIdeal>> {
        self.check_degree(n)?;
        match &self.kind {
            FiltrationKind::Powers(ideals) => Ok(Some(multi_power(ideals, n)?)),
            FiltrationKind::ClosurePowers(ideal) => {
                Ok(Some(integral_closure(&ideal.power(n.0[0]))?))
            }
            FiltrationKind::Table { .. } => Ok(None),
        }
    }

    /// Generators of I_n; the zero degree yields the unit ideal.
    pub fn gens_at(&self, n: &MultiIndex) -> Result<Vec<PolyElement>> {
        self.check_degree(n)?;
        if n.norm() == 0 {
            return Ok(vec![PolyElement::one(self.nvars)]);
        }
        match &self.kind {
            FiltrationKind::Table { levels, .. } => {
                let k = n.0[0] as usize;
                levels.get(k - 1).cloned().ok_or_else(|| {
                    Error::Input(format!(
                        "degree {k} beyond the stored table range 1..={}",
                        levels.len()
                    ))
                })
            }
            _ => Ok(self.monomial_at(n)?.expect("computed kind").gens_as_polys()),
        }
    }

    /// Minimal generator count of I_n in the (quotient) local ring.
    pub fn mu_at(&self, n: &MultiIndex) -> Result<usize> {
        self.check_degree(n)?;
        match &self.kind {
            FiltrationKind::Table { relation, .. } => {
                if n.norm() == 0 {
                    return Ok(1);
                }
                let gens = self.gens_at(n)?;
                let t = self.d0_at(n)?;
                let alg = TruncatedAlgebra::build(self.nvars, t + 2, relation.clone())?;
                alg.mu_in_quotient(&gens, t)
            }
            _ => Ok(self.monomial_at(n)?.expect("computed kind").mu()),
        }
    }

    /// Smallest t with m^t inside I_n (the absorption degree used to size
    /// truncations); cached per degree.
    pub fn d0_at(&self, n: &MultiIndex) -> Result<usize> {
        self.check_degree(n)?;
        if let Some(&t) = self.d0_cache.borrow().get(n) {
            return Ok(t);
        }
        let t = match &self.kind {
            FiltrationKind::Table { relation, .. } => smallest_m_power_inside(
                self.nvars,
                relation.as_ref(),
                &self.gens_at(n)?,
                self.d0_cap,
            )?,
            _ => self.monomial_at(n)?.expect("computed kind").m_power_inside()?,
        };
        self.d0_cache.borrow_mut().insert(n.clone(), t);
        Ok(t)
    }

    /// Checks the filtration axioms. Computed kinds satisfy them by
    /// construction; for tables this certifies, on the stored range,
    /// that every generator is a non-unit, that consecutive pieces are
    /// decreasing, and that I_a * I_b lands inside I_{a+b}.
    pub fn validate(&self) -> Result<()> {
        let FiltrationKind::Table { relation, levels } = &self.kind else {
            return Ok(());
        };
        if levels.is_empty() {
            return Err(Error::Input("table filtration stores no degrees".into()));
        }
        for (k, level) in levels.iter().enumerate() {
            if level.is_empty() {
                return Err(Error::Input(format!("degree {} has no generators", k + 1)));
            }
            for g in level {
                if g.dim() != self.nvars {
                    return Err(Error::DimensionMismatch {
                        expected: self.nvars,
                        found: g.dim(),
                    });
                }
                if g.is_zero() {
                    return Err(Error::Input(format!("degree {} has a zero generator", k + 1)));
                }
                if !g.constant_term().is_zero() {
                    return Err(Error::Input(format!(
                        "degree {} has a generator with a unit term",
                        k + 1
                    )));
                }
            }
        }
        let n_max = levels.len() as u32;
        let deg = |k: u32| MultiIndex(vec![k]);
        // decreasing: consecutive containments propagate by transitivity
        for k in 1..n_max {
            let upper = self.gens_at(&deg(k + 1))?;
            let lower = self.gens_at(&deg(k))?;
            let t_a = self.d0_at(&deg(k + 1))?;
            let alg = TruncatedAlgebra::build(self.nvars, t_a + 1, relation.clone())?;
            let check = alg.verify_containment(&upper, &lower, t_a)?;
            if !check.holds {
                return Err(Error::Input(format!(
                    "not a filtration: piece at degree {} is not inside the piece at {}",
                    k + 1,
                    k
                )));
            }
        }
        // products: I_a * I_b inside I_{a+b} whenever both sides are stored
        for a in 1..=n_max {
            for b in a..=n_max {
                if a + b > n_max {
                    break;
                }
                let mut products = Vec::new();
                for g in &self.gens_at(&deg(a))? {
                    for h in &self.gens_at(&deg(b))? {
                        products.push(g.mul(h)?);
                    }
                }
                let t_a = self.d0_at(&deg(a))? + self.d0_at(&deg(b))?;
                let alg = TruncatedAlgebra::build(self.nvars, t_a + 1, relation.clone())?;
                let check =
                    alg.verify_containment(&products, &self.gens_at(&deg(a + b))?, t_a)?;
                if !check.holds {
                    return Err(Error::Input(format!(
                        "not a filtration: product of degrees {a} and {b} escapes degree {}",
                        a + b
                    )));
                }
            }
        }
        Ok(())
    }

    /// Scans the box for degrees n (|n| >= 1) where I_n exceeds
    /// sum_i I_{e_i} * I_{n - e_i} + m * I_n, i.e. where the fiber cone
    /// needs a fresh module generator. Plain power families never do, so
    /// they skip the scan.
    pub fn fibercone_gen_degrees(&self, bx: &MultiIndex) -> Result<FiberReport> {
        self.check_degree(bx)?;
        let s = self.spread();
        if self.is_plain_powers() {
            return Ok(FiberReport {
                degrees: vec![MultiIndex::zeros(s)],
                a_bar: MultiIndex::zeros(s),
                boundary_hit: false,
            });
        }
        let mut found: Vec<MultiIndex> = Vec::new();
        for n in box_indices(bx) {
            if n.norm() == 0 {
                continue;
            }
            let gens = self.gens_at(&n)?;
            let t = self.d0_at(&n)?;
            let alg = TruncatedAlgebra::build(self.nvars, t + 1, self.relation().cloned())?;
            // rhs generates sum_i I_{e_i} I_{n-e_i} + m I_n; both sit inside
            // I_n, and the truncation tail m^order is absorbed by m * I_n
            let mut rhs = Vec::new();
            for i in 0..s {
                let Some(prev) = n.checked_sub(&MultiIndex::unit(s, i)) else {
                    continue;
                };
                for g in &self.gens_at(&MultiIndex::unit(s, i))? {
                    for h in &self.gens_at(&prev)? {
                        rhs.push(g.mul(h)?);
                    }
                }
            }
            rhs.extend(alg.times_maximal(&gens)?);
            let image = alg.ideal_image(&rhs)?;
            let fresh = gens
                .iter()
                .map(|g| Ok(!image.contains(&alg.normal_form(g)?)))
                .collect::<Result<Vec<bool>>>()?;
            if fresh.into_iter().any(|b| b) {
                found.push(n);
            }
        }
        let boundary_hit = found
            .iter()
            .any(|n| n.0.iter().zip(&bx.0).any(|(&ni, &bi)| ni == bi));
        let mut a_bar = MultiIndex::zeros(s);
        for n in &found {
            for (a, &ni) in a_bar.0.iter_mut().zip(&n.0) {
                *a = (*a).max(ni);
            }
        }
        let mut degrees = vec![MultiIndex::zeros(s)];
        degrees.extend(found);
        degrees.sort();
        Ok(FiberReport { degrees, a_bar, boundary_hit })
    }
}
