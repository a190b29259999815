//! Python bindings for the reduction-lab core: monomial ideal arithmetic,
//! integral closures, binomial-bound checks, and certificate-producing
//! searches. Searches accept the same JSON documents as the command-line
//! tool and hand back certificates as JSON strings.

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use reduction_lab::bounds;
use reduction_lab::certificate::Certificate;
use reduction_lab::error::Error;
use reduction_lab::files::{FiltrationFile, IdealFile};
use reduction_lab::ideal::MonomialIdeal;
use reduction_lab::newton::integral_closure;
use reduction_lab::registry;
use reduction_lab::ring::{ExponentVector, MultiIndex};
use reduction_lab::search::{self, SearchOptions};

fn raise(e: Error) -> PyErr {
    match e {
        Error::Input(_) | Error::DimensionMismatch { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A monomial ideal in a fixed number of variables, kept as its unique
/// minimal generating set.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Ideal {
    inner: MonomialIdeal,
}

#[pymethods]
impl Ideal {
    #[new]
    fn new(nvars: usize, gens: Vec<Vec<u32>>) -> PyResult<Self> {
        let gens = gens.into_iter().map(ExponentVector).collect();
        Ok(Ideal { inner: MonomialIdeal::new(nvars, gens).map_err(raise)? })
    }

    /// The lexsegment ideal of all degree-r monomials up to the given
    /// cut-off exponents.
    #[staticmethod]
    fn lexsegment(r: u32, b: Vec<u32>) -> PyResult<Self> {
        Ok(Ideal { inner: reduction_lab::ideal::lexsegment_ideal(r, &b).map_err(raise)? })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.dim()
    }

    fn gens(&self) -> Vec<Vec<u32>> {
        self.inner.gens().iter().map(|e| e.0.clone()).collect()
    }

    fn mu(&self) -> usize {
        self.inner.mu()
    }

    fn order(&self) -> PyResult<u32> {
        self.inner.order().map_err(raise)
    }

    fn product(&self, other: &Ideal) -> PyResult<Ideal> {
        Ok(Ideal { inner: self.inner.product(&other.inner).map_err(raise)? })
    }

    fn power(&self, k: u32) -> Ideal {
        Ideal { inner: self.inner.power(k) }
    }

    fn sum(&self, other: &Ideal) -> PyResult<Ideal> {
        Ok(Ideal { inner: self.inner.sum(&other.inner).map_err(raise)? })
    }

    fn intersect(&self, other: &Ideal) -> PyResult<Ideal> {
        Ok(Ideal { inner: self.inner.intersect(&other.inner).map_err(raise)? })
    }

    fn contains_monomial(&self, e: Vec<u32>) -> PyResult<bool> {
        self.inner.contains_monomial(&ExponentVector(e)).map_err(raise)
    }

    fn contains(&self, other: &Ideal) -> PyResult<bool> {
        self.inner.contains_ideal(&other.inner).map_err(raise)
    }

    /// Integral closure, computed from the Newton polyhedron.
    fn closure(&self) -> PyResult<Ideal> {
        Ok(Ideal { inner: integral_closure(&self.inner).map_err(raise)? })
    }

    fn is_contracted(&self) -> PyResult<bool> {
        self.inner.is_contracted().map_err(raise)
    }

    #[pyo3(signature = (vars=None))]
    fn render(&self, vars: Option<Vec<String>>) -> String {
        let vars = vars.unwrap_or_else(|| search::default_vars(self.inner.dim()));
        self.inner.render(&vars)
    }

    fn __repr__(&self) -> String {
        format!("Ideal({})", self.render(None))
    }

    fn __eq__(&self, other: &Ideal) -> bool {
        self.inner == other.inner
    }
}

/// The binomial-product bound at degree `n` for `r` general elements.
#[pyfunction]
fn es_bound(n: Vec<u32>, r: Vec<u32>) -> PyResult<BigUint> {
    bounds::es_bound(&MultiIndex(n), &MultiIndex(r)).map_err(raise)
}

/// Compare a generator count against the bound; returns (triggered, bound).
#[pyfunction]
fn es_check(mu: BigUint, n: Vec<u32>, r: Vec<u32>) -> PyResult<(bool, BigUint)> {
    let report = bounds::es_check(mu, &MultiIndex(n), &MultiIndex(r)).map_err(raise)?;
    Ok((report.triggered, report.bound))
}

/// First degrees (an antichain) where the bound opens for `r`, scanning
/// the box up to `n_max`.
#[pyfunction]
fn first_trigger_degrees(
    ideals: Vec<Ideal>,
    r: Vec<u32>,
    n_max: Vec<u32>,
) -> PyResult<Vec<Vec<u32>>> {
    let fam: Vec<MonomialIdeal> = ideals.into_iter().map(|i| i.inner).collect();
    let mu_at = |n: &MultiIndex| {
        Ok(BigUint::from(reduction_lab::ideal::multi_power(&fam, n)?.mu()))
    };
    let found =
        bounds::first_n_for_r(mu_at, &MultiIndex(r), &MultiIndex(n_max)).map_err(raise)?;
    Ok(found.into_iter().map(|n| n.0).collect())
}

/// Degree pair (2 ord(J) - 1, 2 ord(I) - 1) at which one general element
/// from each of two contracted plane ideals is guaranteed; cross-checked
/// against the bound before returning.
#[pyfunction]
fn contracted_jrv(i: &Ideal, j: &Ideal) -> PyResult<Vec<u32>> {
    Ok(bounds::contracted_jrv(&i.inner, &j.inner).map_err(raise)?.0)
}

fn options(seed: u64, coeff_bound: i64, attempts: u32, force: bool) -> SearchOptions {
    SearchOptions { seed, coeff_bound, max_attempts: attempts, force, ..SearchOptions::default() }
}

fn load(filtration_json: &str) -> PyResult<(reduction_lab::filtration::FiltrationSpec, Vec<String>)> {
    let file = FiltrationFile::parse(filtration_json).map_err(raise)?;
    let vars = file.ring.vars.clone();
    Ok((file.to_spec().map_err(raise)?, vars))
}

/// Search for `r` general elements realizing the degree-`n` equation of a
/// one-parameter filtration given as JSON; returns certificate JSON.
#[pyfunction]
#[pyo3(signature = (filtration_json, n, r, seed=1, coeff_bound=101, attempts=8, force=false))]
fn find_reduction(
    filtration_json: &str,
    n: u32,
    r: u32,
    seed: u64,
    coeff_bound: i64,
    attempts: u32,
    force: bool,
) -> PyResult<String> {
    let (spec, vars) = load(filtration_json)?;
    let cert = search::find_reduction(&spec, &vars, n, r, &options(seed, coeff_bound, attempts, force))
        .map_err(raise)?;
    Ok(cert.to_json())
}

/// Multigraded version: `n` and `r` are per-ideal vectors.
#[pyfunction]
#[pyo3(signature = (filtration_json, n, r, seed=1, coeff_bound=101, attempts=8, force=false))]
fn find_joint_reduction(
    filtration_json: &str,
    n: Vec<u32>,
    r: Vec<u32>,
    seed: u64,
    coeff_bound: i64,
    attempts: u32,
    force: bool,
) -> PyResult<String> {
    let (spec, vars) = load(filtration_json)?;
    let cert = search::find_joint_reduction(
        &spec,
        &vars,
        &MultiIndex(n),
        &MultiIndex(r),
        &options(seed, coeff_bound, attempts, force),
    )
    .map_err(raise)?;
    Ok(cert.to_json())
}

/// Certified reduction number of the filtration with respect to the ideal
/// J given as an ideal-file JSON document; returns certificate JSON.
#[pyfunction]
#[pyo3(signature = (filtration_json, j_json, n_max, seed=1, coeff_bound=101, attempts=8))]
fn reduction_number(
    filtration_json: &str,
    j_json: &str,
    n_max: u32,
    seed: u64,
    coeff_bound: i64,
    attempts: u32,
) -> PyResult<String> {
    let (spec, vars) = load(filtration_json)?;
    let j_file = IdealFile::parse(j_json).map_err(raise)?;
    if j_file.ring.vars != vars {
        return Err(PyValueError::new_err(format!(
            "J lives in {:?} but the filtration uses {:?}",
            j_file.ring.vars, vars
        )));
    }
    let j = j_file.gens_as_polys().map_err(raise)?;
    let cert =
        search::reduction_number(&spec, &vars, &j, n_max, &options(seed, coeff_bound, attempts, false))
            .map_err(raise)?;
    Ok(cert.to_json())
}

/// Re-run a certificate from its JSON and report whether it reproduces
/// its recorded verdict.
#[pyfunction]
fn replay(certificate_json: &str) -> PyResult<bool> {
    let cert = Certificate::from_json(certificate_json).map_err(raise)?;
    reduction_lab::certificate::replay(&cert).map_err(raise)
}

/// Whether a certificate JSON records a verified equation.
#[pyfunction]
fn certificate_verified(certificate_json: &str) -> PyResult<bool> {
    Ok(Certificate::from_json(certificate_json).map_err(raise)?.verified())
}

/// Built-in example ids usable with `reproduce`.
#[pyfunction]
fn example_ids() -> Vec<String> {
    registry::EXAMPLE_IDS.iter().map(|s| s.to_string()).collect()
}

/// Re-run a built-in example; returns (label, expected, actual, pass)
/// rows, one per recorded check.
#[pyfunction]
#[pyo3(signature = (id, seed=1))]
fn reproduce(id: &str, seed: u64) -> PyResult<Vec<(String, String, String, bool)>> {
    let report = registry::run_example(id, &SearchOptions::with_seed(seed)).map_err(raise)?;
    Ok(report
        .checks
        .into_iter()
        .map(|c| (c.label, c.expected, c.actual, c.pass))
        .collect())
}

#[pymodule]
fn reduction_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ideal>()?;
    m.add_function(wrap_pyfunction!(es_bound, m)?)?;
    m.add_function(wrap_pyfunction!(es_check, m)?)?;
    m.add_function(wrap_pyfunction!(first_trigger_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(contracted_jrv, m)?)?;
    m.add_function(wrap_pyfunction!(find_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(find_joint_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_number, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(certificate_verified, m)?)?;
    m.add_function(wrap_pyfunction!(example_ids, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    Ok(())
}
