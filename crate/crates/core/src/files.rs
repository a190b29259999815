//! JSON file formats for ideals and filtrations: the input side of the
//! command-line surface.

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::FiltrationSpec;
use crate::ideal::MonomialIdeal;
use crate::ring::{ExponentVector, PolyElement};

/// Most variables a file may declare; truncated-algebra scans are
/// exponential in this.
pub const MAX_VARS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypersurface: Option<PolyElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealBody {
    /// Generators as exponent vectors.
    Monomial(Vec<Vec<u32>>),
    /// Generators as term lists [numerator, denominator, exponent vector].
    Poly(Vec<PolyElement>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub ring: RingFile,
    pub ideal: IdealBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationBody {
    /// One monomial ideal per grading direction; piece n is the product
    /// of powers.
    Powers(Vec<Vec<Vec<u32>>>),
    /// Integral closures of the powers of one monomial ideal.
    ClosurePowers(Vec<Vec<u32>>),
    /// Explicit generators for degrees 1..=n_max.
    Table { n_max: u32, ideals: Vec<Vec<PolyElement>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationFile {
    pub ring: RingFile,
    pub filtration: FiltrationBody,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Input(format!("parse error at line {}, column {}: {e}", e.line(), e.column()))
}

fn check_ring(ring: &RingFile) -> Result<()> {
    let d = ring.vars.len();
    if d == 0 || d > MAX_VARS {
        return Err(Error::Input(format!("need between 1 and {MAX_VARS} variables, got {d}")));
    }
    for (i, v) in ring.vars.iter().enumerate() {
        if v.is_empty() || ring.vars[..i].contains(v) {
            return Err(Error::Input(format!("bad variable name list: {:?}", ring.vars)));
        }
    }
    if let Some(f) = &ring.hypersurface {
        if f.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: f.dim() });
        }
        if f.is_zero() {
            return Err(Error::Input("zero hypersurface relation".into()));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::UnitRelation);
        }
    }
    Ok(())
}

fn monomial_from_rows(dim: usize, rows: &[Vec<u32>]) -> Result<MonomialIdeal> {
    let mut gens = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
        }
        gens.push(ExponentVector(row.clone()));
    }
    MonomialIdeal::new(dim, gens)
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<IdealFile> {
        let file: IdealFile = serde_json::from_str(text).map_err(json_error)?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ideal files serialize")
    }

    pub fn validate(&self) -> Result<()> {
        check_ring(&self.ring)?;
        let d = self.ring.vars.len();
        match &self.ideal {
            IdealBody::Monomial(rows) => {
                monomial_from_rows(d, rows)?;
            }
            IdealBody::Poly(gens) => {
                if gens.is_empty() {
                    return Err(Error::ZeroIdeal);
                }
                for g in gens {
                    if g.dim() != d {
                        return Err(Error::DimensionMismatch { expected: d, found: g.dim() });
                    }
                    if g.is_zero() {
                        return Err(Error::Input("zero generator".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.ring.vars.len()
    }

    /// The ideal as a monomial ideal, when it is one.
    pub fn monomial(&self) -> Result<Option<MonomialIdeal>> {
        match &self.ideal {
            IdealBody::Monomial(rows) => Ok(Some(monomial_from_rows(self.nvars(), rows)?)),
            IdealBody::Poly(_) => Ok(None),
        }
    }

    pub fn gens_as_polys(&self) -> Result<Vec<PolyElement>> {
        match &self.ideal {
            IdealBody::Monomial(rows) => {
                Ok(monomial_from_rows(self.nvars(), rows)?.gens_as_polys())
            }
            IdealBody::Poly(gens) => Ok(gens.clone()),
        }
    }
}

impl FiltrationFile {
    pub fn parse(text: &str) -> Result<FiltrationFile> {
        let file: FiltrationFile = serde_json::from_str(text).map_err(json_error)?;
        check_ring(&file.ring)?;
        file.to_spec()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("filtration files serialize")
    }

    /// Builds (and thereby validates) the filtration the file describes.
    pub fn to_spec(&self) -> Result<FiltrationSpec> {
        check_ring(&self.ring)?;
        let d = self.ring.vars.len();
        match &self.filtration {
            FiltrationBody::Powers(families) => {
                if self.ring.hypersurface.is_some() {
                    return Err(Error::Input(
                        "power filtrations live in the polynomial ring; drop the hypersurface"
                            .into(),
                    ));
                }
                let ideals = families
                    .iter()
                    .map(|rows| monomial_from_rows(d, rows))
                    .collect::<Result<Vec<_>>>()?;
                FiltrationSpec::powers(ideals)
            }
            FiltrationBody::ClosurePowers(rows) => {
                if self.ring.hypersurface.is_some() {
                    return Err(Error::Input(
                        "closure filtrations live in the polynomial ring; drop the hypersurface"
                            .into(),
                    ));
                }
                FiltrationSpec::closure_powers(monomial_from_rows(d, rows)?)
            }
            FiltrationBody::Table { n_max, ideals } => {
                if *n_max as usize != ideals.len() {
                    return Err(Error::Input(format!(
                        "n_max is {} but {} degrees are stored",
                        n_max,
                        ideals.len()
                    )));
                }
                FiltrationSpec::table(d, self.ring.hypersurface.clone(), ideals.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MultiIndex;

    #[test]
    fn monomial_ideal_file_round_trip() {
        let text = r#"{
            "ring": { "vars": ["x", "y"] },
            "ideal": { "monomial": [[1, 0], [0, 2]] }
        }"#;
        let file = IdealFile::parse(text).unwrap();
        assert_eq!(file.monomial().unwrap().unwrap().mu(), 2);
        let back = IdealFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
    }

    #[test]
    fn hypersurface_files_carry_the_relation() {
        let text = r#"{
            "ring": {
                "vars": ["x", "y"],
                "hypersurface": [[1, 1, [4, 0]], [1, 1, [0, 2]]]
            },
            "ideal": { "poly": [[[1, 1, [2, 0]]], [[1, 1, [0, 1]]]] }
        }"#;
        let file = IdealFile::parse(text).unwrap();
        assert!(file.monomial().unwrap().is_none());
        assert_eq!(file.gens_as_polys().unwrap().len(), 2);
        let back = IdealFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
    }

    #[test]
    fn bad_files_fail_with_positions() {
        let err = IdealFile::parse("{ not json").err().unwrap();
        let msg = format!("{err}");
        assert!(msg.contains("line 1"), "{msg}");
        // exponent width mismatch
        let text = r#"{
            "ring": { "vars": ["x", "y"] },
            "ideal": { "monomial": [[1, 0, 0]] }
        }"#;
        assert!(IdealFile::parse(text).is_err());
        // unit relation
        let text = r#"{
            "ring": { "vars": ["x"], "hypersurface": [[1, 1, [0]]] },
            "ideal": { "monomial": [[1]] }
        }"#;
        assert!(IdealFile::parse(text).is_err());
        // too many variables
        let text = r#"{
            "ring": { "vars": ["a","b","c","d","e","f","g"] },
            "ideal": { "monomial": [[1,0,0,0,0,0,0]] }
        }"#;
        assert!(IdealFile::parse(text).is_err());
    }

    #[test]
    fn filtration_files_build_specs() {
        let text = r#"{
            "ring": { "vars": ["x", "y"] },
            "filtration": { "powers": [ [[1,0],[0,2]], [[2,0],[0,1]] ] }
        }"#;
        let file = FiltrationFile::parse(text).unwrap();
        let spec = file.to_spec().unwrap();
        assert_eq!(spec.spread(), 2);
        assert_eq!(spec.mu_at(&MultiIndex(vec![1, 1])).unwrap(), 3);
        let back = FiltrationFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
    }

    #[test]
    fn table_files_respect_their_declared_range() {
        let text = r#"{
            "ring": { "vars": ["x", "y"], "hypersurface": [[1,1,[4,0]],[1,1,[0,2]]] },
            "filtration": { "table": { "n_max": 2, "ideals": [
                [[[1,1,[1,0]]], [[1,1,[0,1]]]],
                [[[1,1,[2,0]]], [[1,1,[0,1]]]]
            ] } }
        }"#;
        let file = FiltrationFile::parse(text).unwrap();
        let spec = file.to_spec().unwrap();
        assert_eq!(spec.max_degree(), Some(2));
        assert_eq!(spec.mu_at(&MultiIndex(vec![2])).unwrap(), 2);
        // declared range out of step with the data
        let bad = text.replace("\"n_max\": 2", "\"n_max\": 5");
        assert!(FiltrationFile::parse(&bad).is_err());
        // hypersurface is rejected for computed kinds
        let text = r#"{
            "ring": { "vars": ["x", "y"], "hypersurface": [[1,1,[4,0]],[1,1,[0,2]]] },
            "filtration": { "closure_powers": [[1,0],[0,2]] }
        }"#;
        assert!(FiltrationFile::parse(text).is_err());
    }
}
