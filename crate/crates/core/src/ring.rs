//! Exponent vectors, multi-indices and exact polynomial arithmetic.
//!
//! Monomials are lattice points in N^d, polynomials are finite maps from
//! exponent vectors to rational coefficients. Everything is exact; there is
//! no floating point anywhere in the crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::wire::JsonInt;

/// A monomial in d variables, stored as its exponent vector.
///
/// The derived `Ord` is lexicographic with variable 1 most significant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// True when `self` divides `other` as monomials.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn check_len(&self, other: &ExponentVector) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.len(), found: other.len() })
        }
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Product of two monomials: componentwise sum of exponents.
pub fn mono_mul(a: &ExponentVector, b: &ExponentVector) -> Result<ExponentVector> {
    a.check_len(b)?;
    Ok(ExponentVector(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
}

/// Least common multiple of two monomials: componentwise maximum.
pub fn mono_lcm(a: &ExponentVector, b: &ExponentVector) -> Result<ExponentVector> {
    a.check_len(b)?;
    Ok(ExponentVector(a.0.iter().zip(&b.0).map(|(x, y)| *x.max(y)).collect()))
}

/// Lexicographic comparison with variable 1 most significant.
pub fn lex_compare(a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
    a.check_len(b)?;
    Ok(a.cmp(b))
}

/// Degree-first order used for canonical generator lists and quotient
/// bases: ascending degree, descending lex within a degree, so the pure
/// power of variable 1 leads its degree block.
pub fn deg_lex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| b.cmp(a))
}

/// All monomials in `dim` variables of total degree exactly `deg`,
/// in descending lex order (pure power of variable 1 first).
pub fn monomials_of_degree(dim: usize, deg: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; dim];
    fill_degree(&mut cur, 0, deg, &mut out);
    out
}

fn fill_degree(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<ExponentVector>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(ExponentVector(cur.clone()));
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(ExponentVector(Vec::new()));
        }
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill_degree(cur, pos + 1, left - e, out);
    }
}

/// All monomials of total degree strictly below `bound`, sorted by
/// (degree, descending lex). This is the basis order of every truncated
/// algebra in the crate.
pub fn monomials_below(dim: usize, bound: usize) -> Vec<ExponentVector> {
    (0..bound as u32).flat_map(|t| monomials_of_degree(dim, t)).collect()
}

/// A degree in an s-graded family, e.g. (n1, n2) for powers I^n1 * J^n2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zeros(s: usize) -> Self {
        MultiIndex(vec![0; s])
    }

    pub fn ones(s: usize) -> Self {
        MultiIndex(vec![1; s])
    }

    /// The i-th coordinate vector (0-based i).
    pub fn unit(s: usize, i: usize) -> Self {
        let mut v = vec![0; s];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the coordinates.
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.check_len(other)?;
        Ok(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Componentwise subtraction; None if any coordinate would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise less-or-equal.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn check_len(&self, other: &MultiIndex) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.len(), found: other.len() })
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Every multi-index in the box [0, bounds] componentwise, in lex order.
pub fn box_indices(bounds: &MultiIndex) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex(Vec::new())];
    for &b in &bounds.0 {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for prefix in &out {
            for v in 0..=b {
                let mut p = prefix.0.clone();
                p.push(v);
                next.push(MultiIndex(p));
            }
        }
        out = next;
    }
    out
}

/// A polynomial with exact rational coefficients.
///
/// Invariant: no stored coefficient is zero and every key has length `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyElement {
    dim: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl PolyElement {
    pub fn zero(dim: usize) -> Self {
        PolyElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(ExponentVector::zero(dim))
    }

    /// The monomial `e` with coefficient 1.
    pub fn monomial(e: ExponentVector) -> Self {
        let dim = e.len();
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        PolyElement { dim, terms }
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut map: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.len() });
            }
            let entry = map.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(PolyElement { dim, terms: map })
    }

    /// Literal builder for tests and the example registry.
    /// Panics if an exponent slice has the wrong length.
    pub fn from_int_terms(dim: usize, terms: &[(i64, &[u32])]) -> Self {
        let iter = terms.iter().map(|(c, e)| {
            assert_eq!(e.len(), dim, "exponent length mismatch in literal polynomial");
            (ExponentVector(e.to_vec()), BigRational::from_integer((*c).into()))
        });
        Self::from_terms(dim, iter).expect("literal polynomial")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&ExponentVector::zero(self.dim))
    }

    /// Smallest total degree of a term; None for the zero polynomial.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).min()
    }

    pub fn max_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    pub fn add(&self, other: &PolyElement) -> Result<PolyElement> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(PolyElement { dim: self.dim, terms })
    }

    pub fn scale(&self, c: &BigRational) -> PolyElement {
        if c.is_zero() {
            return PolyElement::zero(self.dim);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        PolyElement { dim: self.dim, terms }
    }

    pub fn mul(&self, other: &PolyElement) -> Result<PolyElement> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut terms: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = mono_mul(ea, eb)?;
                let entry = terms.entry(e).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(PolyElement { dim: self.dim, terms })
    }

    pub fn mul_monomial(&self, e: &ExponentVector) -> Result<PolyElement> {
        if self.dim != e.len() {
            return Err(Error::DimensionMismatch { expected: self.dim, found: e.len() });
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| Ok((mono_mul(t, e)?, c.clone())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(PolyElement { dim: self.dim, terms })
    }

    /// Drops every term of total degree >= `bound`.
    pub fn truncate_below(&self, bound: usize) -> PolyElement {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| (e.total_degree() as usize) < bound)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        PolyElement { dim: self.dim, terms }
    }

    /// Human-readable form with the given variable names, terms in
    /// (degree, lex) order.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&ExponentVector> = self.terms.keys().collect();
        keys.sort_by(|a, b| deg_lex(a, b));
        let mut out = String::new();
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_monomial(e, vars);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

pub fn render_monomial(e: &ExponentVector, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &p) in e.0.iter().enumerate() {
        let name = vars.get(i).map(|s| s.as_str()).unwrap_or("?");
        match p {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{p}")),
        }
    }
    parts.join("*")
}

impl Serialize for PolyElement {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let triple =
                (JsonInt(c.numer().clone()), JsonInt(c.denom().clone()), e.0.clone());
            seq.serialize_element(&triple)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PolyElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(JsonInt, JsonInt, Vec<u32>)> = Vec::deserialize(de)?;
        let first = raw.first().ok_or_else(|| {
            D::Error::custom("empty term list; polynomials in files must be non-zero")
        })?;
        let dim = first.2.len();
        let mut terms = Vec::with_capacity(raw.len());
        for (num, den, exps) in raw {
            if den.0.is_zero() {
                return Err(D::Error::custom("zero denominator in coefficient"));
            }
            if exps.len() != dim {
                return Err(D::Error::custom("inconsistent exponent vector lengths"));
            }
            terms.push((ExponentVector(exps), BigRational::new(num.0, den.0)));
        }
        PolyElement::from_terms(dim, terms).map_err(D::Error::custom)
    }
}
