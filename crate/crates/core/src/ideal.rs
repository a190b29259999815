//! Monomial ideals in a fixed polynomial ring.
//!
//! Generating sets are kept divisibility-minimal and sorted by
//! (degree, lex), so equality of ideals is equality of the stored data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{
    deg_lex, mono_lcm, mono_mul, monomials_of_degree, render_monomial, ExponentVector,
    MultiIndex, PolyElement,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
}

/// Drops every monomial strictly divisible by another in the list and
/// removes duplicates. The survivors are the unique minimal generators.
fn minimal_set(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort_by(deg_lex);
    gens.dedup();
    let mut kept: Vec<ExponentVector> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|h| h.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn new(dim: usize, gens: Vec<ExponentVector>) -> Result<Self> {
        for g in &gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
            }
        }
        Ok(MonomialIdeal { dim, gens: minimal_set(gens) })
    }

    pub fn zero(dim: usize) -> Self {
        MonomialIdeal { dim, gens: Vec::new() }
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal { dim, gens: vec![ExponentVector::zero(dim)] }
    }

    /// The maximal ideal (x_1, ..., x_d).
    pub fn maximal(dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                ExponentVector(e)
            })
            .collect();
        MonomialIdeal { dim, gens }
    }

    /// Literal builder for tests and the example registry.
    /// Panics if an exponent slice has the wrong length.
    pub fn from_int_gens(dim: usize, gens: &[&[u32]]) -> Self {
        let gens = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "exponent length mismatch in literal ideal");
                ExponentVector(g.to_vec())
            })
            .collect();
        MonomialIdeal { dim, gens: minimal_set(gens) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Minimal generators, sorted by (degree, lex).
    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn gens_as_polys(&self) -> Vec<PolyElement> {
        self.gens.iter().map(|g| PolyElement::monomial(g.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().map(|g| g.is_zero()).unwrap_or(false)
    }

    /// Minimal number of generators. The minimal monomial generating set
    /// realizes it, so this is its length.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    /// Smallest total degree of an element, i.e. of a minimal generator.
    pub fn order(&self) -> Result<u32> {
        self.gens.iter().map(|g| g.total_degree()).min().ok_or(Error::ZeroIdeal)
    }

    pub fn contains_monomial(&self, e: &ExponentVector) -> Result<bool> {
        if e.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: e.len() });
        }
        Ok(self.gens.iter().any(|g| g.divides(e)))
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        for g in &other.gens {
            if !self.contains_monomial(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(mono_mul(a, b)?);
            }
        }
        Ok(MonomialIdeal { dim: self.dim, gens: minimal_set(gens) })
    }

    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.dim);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(MonomialIdeal { dim: self.dim, gens: minimal_set(gens) })
    }

    /// Intersection via pairwise least common multiples of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(mono_lcm(a, b)?);
            }
        }
        Ok(MonomialIdeal { dim: self.dim, gens: minimal_set(gens) })
    }

    /// For each variable, the least exponent of a pure power among the
    /// generators. Errors on the first variable without one; having all of
    /// them is exactly primaryness to (x_1, ..., x_d).
    pub fn pure_power_degrees(&self) -> Result<Vec<u32>> {
        let mut degs = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let best = self
                .gens
                .iter()
                .filter(|g| g.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|g| g.0[i])
                .min();
            match best {
                Some(p) => degs.push(p),
                None => return Err(Error::NotMPrimary { var: i }),
            }
        }
        Ok(degs)
    }

    /// Least t with m^t inside the ideal, m the maximal ideal.
    /// Requires an m-primary ideal.
    pub fn m_power_inside(&self) -> Result<usize> {
        let pure = self.pure_power_degrees()?;
        if self.is_unit() {
            return Ok(0);
        }
        // Every monomial of degree sum(p_i - 1) + 1 has some exponent >= p_i,
        // so the scan below terminates at that bound.
        let bound: u32 = pure.iter().map(|p| p.saturating_sub(1)).sum::<u32>() + 1;
        let start = self.order()?;
        for t in start..=bound {
            let all_in = monomials_of_degree(self.dim, t)
                .iter()
                .all(|e| self.gens.iter().any(|g| g.divides(e)));
            if all_in {
                return Ok(t as usize);
            }
        }
        unreachable!("pigeonhole bound reached without containment");
    }

    /// In two variables an m-primary ideal is contracted from the blow-up
    /// of the maximal ideal exactly when mu = order + 1.
    pub fn is_contracted(&self) -> Result<bool> {
        if self.dim != 2 {
            return Err(Error::Hypothesis(format!(
                "contractedness test needs 2 variables, ring has {}",
                self.dim
            )));
        }
        self.pure_power_degrees()?;
        Ok(self.mu() == self.order()? as usize + 1)
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let body = self
            .gens
            .iter()
            .map(|g| {
                let m = render_monomial(g, vars);
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m
                }
            })
            .collect::<Vec<_>>()
            .join(", ");
        format!("({body})")
    }
}

/// Product of componentwise powers: ideals[0]^n[0] * ... * ideals[s-1]^n[s-1].
pub fn multi_power(ideals: &[MonomialIdeal], n: &MultiIndex) -> Result<MonomialIdeal> {
    if ideals.is_empty() {
        return Err(Error::Input("empty ideal family".into()));
    }
    if ideals.len() != n.len() {
        return Err(Error::DimensionMismatch { expected: ideals.len(), found: n.len() });
    }
    let dim = ideals[0].dim;
    let mut acc = MonomialIdeal::unit(dim);
    for (ideal, &k) in ideals.iter().zip(&n.0) {
        if ideal.dim != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: ideal.dim });
        }
        acc = acc.product(&ideal.power(k))?;
    }
    Ok(acc)
}

/// The ideal (x^r, x^(r-1) y^b[0], x^(r-2) y^b[1], ..., y^b[r-1]) in 2
/// variables. Requires strictly increasing positive b of length r; the
/// result then has exactly r + 1 minimal generators and order r.
pub fn lexsegment_ideal(r: u32, b: &[u32]) -> Result<MonomialIdeal> {
    if r == 0 {
        return Err(Error::Input("lexsegment ideal needs r >= 1".into()));
    }
    if b.len() != r as usize {
        return Err(Error::Input(format!("need {} column degrees, got {}", r, b.len())));
    }
    for w in b.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Input("column degrees must be strictly increasing".into()));
        }
    }
    if b[0] < 1 {
        return Err(Error::Input("column degrees must be positive".into()));
    }
    let mut gens = vec![ExponentVector(vec![r, 0])];
    for (i, &bi) in b.iter().enumerate() {
        gens.push(ExponentVector(vec![r - 1 - i as u32, bi]));
    }
    MonomialIdeal::new(2, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_int_gens(gens[0].len(), gens)
    }

    /// Brute-force smallest t with every degree-t monomial in the ideal.
    fn oracle_m_power(ideal: &MonomialIdeal) -> usize {
        for t in 0..=40u32 {
            let all_in = monomials_of_degree(ideal.dim(), t)
                .iter()
                .all(|e| ideal.contains_monomial(e).unwrap());
            if all_in {
                return t as usize;
            }
        }
        panic!("no power of m inside the ideal up to degree 40");
    }

    #[test]
    fn minimal_generators_drop_multiples() {
        let i = id(&[&[2, 1], &[2, 0], &[0, 3]]);
        assert_eq!(i.gens(), &[ExponentVector(vec![2, 0]), ExponentVector(vec![0, 3])]);
        assert_eq!(i.mu(), 2);
    }

    #[test]
    fn product_of_the_two_plane_ideals() {
        // (x, y^2) * (y, x^2) = (xy, x^3, y^3)
        let i = id(&[&[1, 0], &[0, 2]]);
        let j = id(&[&[0, 1], &[2, 0]]);
        let p = i.product(&j).unwrap();
        assert_eq!(p, id(&[&[1, 1], &[3, 0], &[0, 3]]));
        assert_eq!(p.mu(), 3);
        assert_eq!(p.order().unwrap(), 2);
    }

    #[test]
    fn squared_product_has_five_generators() {
        let i = id(&[&[1, 0], &[0, 2]]);
        let j = id(&[&[0, 1], &[2, 0]]);
        let p = multi_power(&[i, j], &MultiIndex(vec![2, 2])).unwrap();
        assert_eq!(p, id(&[&[2, 2], &[4, 1], &[1, 4], &[6, 0], &[0, 6]]));
        assert_eq!(p.mu(), 5);
    }

    #[test]
    fn unit_and_zero_edge_cases() {
        let unit = MonomialIdeal::unit(2);
        assert_eq!(unit.mu(), 1);
        assert_eq!(unit.order().unwrap(), 0);
        assert_eq!(unit.m_power_inside().unwrap(), 0);
        let zero = MonomialIdeal::zero(2);
        assert_eq!(zero.mu(), 0);
        assert_eq!(zero.order(), Err(Error::ZeroIdeal));
        assert!(unit.contains_ideal(&zero).unwrap());
        assert!(!zero.contains_ideal(&unit).unwrap());
        let i = id(&[&[1, 0]]);
        assert!(i.product(&MonomialIdeal::zero(2)).unwrap().is_zero());
        assert_eq!(i.power(0), unit);
    }

    #[test]
    fn order_is_least_generator_degree() {
        let i = id(&[&[2, 1, 0], &[2, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]);
        assert_eq!(i.order().unwrap(), 2);
    }

    #[test]
    fn membership_is_divisibility() {
        let i = id(&[&[1, 1], &[3, 0], &[0, 3]]);
        assert!(i.contains_monomial(&ExponentVector(vec![2, 1])).unwrap());
        assert!(!i.contains_monomial(&ExponentVector(vec![2, 0])).unwrap());
        assert!(i.contains_monomial(&ExponentVector(vec![5, 5])).unwrap());
        assert!(i.contains_monomial(&ExponentVector(vec![1, 2, 3])).is_err());
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let x = id(&[&[1, 0]]);
        let y = id(&[&[0, 1]]);
        assert_eq!(x.intersect(&y).unwrap(), id(&[&[1, 1]]));
    }

    #[test]
    fn intersection_of_the_two_plane_ideals_is_m_squared() {
        let i = id(&[&[1, 0], &[0, 2]]);
        let j = id(&[&[0, 1], &[2, 0]]);
        let cap = i.intersect(&j).unwrap();
        assert_eq!(cap, MonomialIdeal::maximal(2).power(2));
    }

    #[test]
    fn m_power_inside_matches_brute_force() {
        let cases = vec![
            id(&[&[1, 1], &[3, 0], &[0, 3]]),
            id(&[&[1, 0], &[0, 2]]),
            id(&[&[2, 0], &[1, 2], &[0, 3]]),
            id(&[&[2, 2], &[4, 1], &[1, 4], &[6, 0], &[0, 6]]),
            id(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 1]]),
            MonomialIdeal::maximal(3).power(4),
        ];
        for ideal in cases {
            assert_eq!(ideal.m_power_inside().unwrap(), oracle_m_power(&ideal), "{ideal:?}");
        }
        // frozen brute-force values
        assert_eq!(id(&[&[1, 1], &[3, 0], &[0, 3]]).m_power_inside().unwrap(), 3);
        assert_eq!(id(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 1]]).m_power_inside().unwrap(), 3);
    }

    #[test]
    fn m_power_inside_needs_pure_powers() {
        let i = id(&[&[1, 0]]);
        assert_eq!(i.m_power_inside(), Err(Error::NotMPrimary { var: 1 }));
    }

    #[test]
    fn lexsegment_shape() {
        let i = lexsegment_ideal(1, &[2]).unwrap();
        assert_eq!(i, id(&[&[1, 0], &[0, 2]]));
        let j = lexsegment_ideal(2, &[2, 3]).unwrap();
        assert_eq!(j, id(&[&[2, 0], &[1, 2], &[0, 3]]));
        assert_eq!(j.mu(), 3);
        assert_eq!(j.order().unwrap(), 2);
        assert!(lexsegment_ideal(2, &[3, 3]).is_err());
        assert!(lexsegment_ideal(2, &[2]).is_err());
    }

    #[test]
    fn powers_of_m_are_contracted() {
        for k in 1..=5 {
            assert!(MonomialIdeal::maximal(2).power(k).is_contracted().unwrap());
        }
        assert!(!id(&[&[2, 0], &[0, 2]]).is_contracted().unwrap());
        assert!(id(&[&[1, 0, 0]]).is_contracted().is_err());
    }

    #[test]
    fn lexsegment_ideals_are_contracted() {
        assert!(lexsegment_ideal(1, &[2]).unwrap().is_contracted().unwrap());
        assert!(lexsegment_ideal(2, &[2, 3]).unwrap().is_contracted().unwrap());
        assert!(lexsegment_ideal(3, &[1, 3, 4]).unwrap().is_contracted().unwrap());
    }

    #[test]
    fn multi_power_of_lexsegment_pair() {
        // mu(I^n J^m) = p*n + q*m + 1 for the lexsegment pair with
        // p = o(I), q = o(J).
        let i = lexsegment_ideal(1, &[2]).unwrap();
        let j = lexsegment_ideal(2, &[2, 3]).unwrap();
        for n in 0..4u32 {
            for m in 0..4u32 {
                if n + m == 0 {
                    continue;
                }
                let p = multi_power(&[i.clone(), j.clone()], &MultiIndex(vec![n, m])).unwrap();
                assert_eq!(p.mu() as u32, n + 2 * m + 1, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn render_is_readable() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let i = id(&[&[1, 1], &[3, 0], &[0, 3]]);
        assert_eq!(i.render(&vars), "(x*y, x^3, y^3)");
    }
}
