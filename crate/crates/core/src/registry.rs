//! Built-in worked examples with frozen expected values, runnable as a
//! batch through `reproduce`. Each check re-computes a value from scratch
//! and compares it against the recorded answer.

use num::BigUint;

use crate::bounds::{contracted_jrv, es_check, first_n_for_r, ESBoundReport};
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::filtration::FiltrationSpec;
use crate::ideal::{lexsegment_ideal, multi_power, MonomialIdeal};
use crate::newton::integral_closure;
use crate::ring::{MultiIndex, PolyElement};
use crate::search::{find_joint_reduction, find_reduction, reduction_number, SearchOptions};

pub const EXAMPLE_IDS: [&str; 6] = [
    "counter",
    "lexsegment",
    "closure-x2y2u",
    "tight-x3y3z3",
    "closure-x4y4z2",
    "closure-x4y2",
];

pub fn example_title(id: &str) -> Option<&'static str> {
    Some(match id {
        "counter" => "plane pair whose product beats the joint bound but not the single one",
        "lexsegment" => "lexsegment pair with linear generator growth",
        "closure-x2y2u" => "integral closures of powers in three variables",
        "tight-x3y3z3" => "tight-closure table on a cubic hypersurface",
        "closure-x4y4z2" => "closure table on x^4 + y^4 + z^2 with reduction number two",
        "closure-x4y2" => "closure table on x^4 + y^2 with a degree-two fiber generator",
        _ => return None,
    })
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct ExampleReport {
    pub id: String,
    pub title: String,
    pub checks: Vec<CheckResult>,
}

impl ExampleReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(label: &str, expected: impl ToString, actual: impl ToString) -> CheckResult {
    let expected = expected.to_string();
    let actual = actual.to_string();
    let pass = expected == actual;
    CheckResult { label: label.to_string(), expected, actual, pass }
}

fn bound_line(report: &ESBoundReport) -> String {
    format!(
        "{} vs {}: {}",
        report.mu,
        report.bound,
        if report.triggered { "triggered" } else { "not triggered" }
    )
}

fn certified_line(label: &str, cert: &Result<Certificate>, within: u32) -> CheckResult {
    let expected = format!("verified within {within} attempts");
    let actual = match cert {
        Ok(c) => {
            let (verified, attempt) = match c {
                Certificate::Reduction(rc) | Certificate::JointReduction(rc) => {
                    (rc.verified, rc.attempt)
                }
                Certificate::ReductionNumber(_) => (c.verified(), 1),
            };
            if verified {
                format!("verified at attempt {attempt}")
            } else {
                "not verified".to_string()
            }
        }
        Err(e) => format!("error: {e}"),
    };
    let pass = match cert {
        Ok(Certificate::Reduction(rc)) | Ok(Certificate::JointReduction(rc)) => {
            rc.verified && rc.attempt <= within
        }
        _ => false,
    };
    CheckResult { label: label.to_string(), expected, actual, pass }
}

fn verdict_line(cert: &Certificate) -> String {
    let Certificate::ReductionNumber(c) = cert else {
        return "wrong certificate kind".into();
    };
    c.checks
        .iter()
        .map(|ch| if ch.holds { "yes" } else { "no" })
        .collect::<Vec<_>>()
        .join(",")
}

fn rn_value(cert: &Certificate) -> String {
    match cert {
        Certificate::ReductionNumber(c) => match c.r {
            Some(r) => r.to_string(),
            None => "none in window".to_string(),
        },
        _ => "wrong certificate kind".into(),
    }
}

fn mono(e: &[u32]) -> PolyElement {
    PolyElement::monomial(crate::ring::ExponentVector(e.to_vec()))
}

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// I = (x, y^2), J = (x^2, y): both contracted of order one.
pub fn counter_pair() -> (MonomialIdeal, MonomialIdeal) {
    (
        MonomialIdeal::from_int_gens(2, &[&[1, 0], &[0, 2]]),
        MonomialIdeal::from_int_gens(2, &[&[2, 0], &[0, 1]]),
    )
}

/// I of order 1, J of order 2, with mu(I^n J^m) = n + 2m + 1.
pub fn lexsegment_pair() -> (MonomialIdeal, MonomialIdeal) {
    (lexsegment_ideal(1, &[2]).unwrap(), lexsegment_ideal(2, &[2, 3]).unwrap())
}

/// (x^2, y^2, u) in three variables; its closure picks up xy.
pub fn closure_base_ideal() -> MonomialIdeal {
    MonomialIdeal::from_int_gens(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 1]])
}

/// Tight closures (I^k)* = I^k + m^{k+1} for I = (y, z) on
/// Q[x,y,z]/(x^3 + y^3 + z^3), stored for degrees 1..=n_max.
pub fn cubic_tight_filtration(n_max: u32) -> Result<FiltrationSpec> {
    let relation = PolyElement::from_int_terms(
        3,
        &[(1, &[3, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 3])],
    );
    let i = MonomialIdeal::from_int_gens(3, &[&[0, 1, 0], &[0, 0, 1]]);
    let m = MonomialIdeal::maximal(3);
    let mut levels = Vec::new();
    for k in 1..=n_max {
        let piece = i.power(k).sum(&m.power(k + 1))?;
        levels.push(piece.gens_as_polys());
    }
    FiltrationSpec::table(3, Some(relation), levels)
}

/// Closure powers m^k + z m^{k-2} of the maximal ideal on
/// Q[x,y,z]/(x^4 + y^4 + z^2), stored for degrees 1..=n_max.
pub fn quartic_surface_filtration(n_max: u32) -> Result<FiltrationSpec> {
    let relation = PolyElement::from_int_terms(
        3,
        &[(1, &[4, 0, 0]), (1, &[0, 4, 0]), (1, &[0, 0, 2])],
    );
    let m = MonomialIdeal::maximal(3);
    let z = MonomialIdeal::from_int_gens(3, &[&[0, 0, 1]]);
    let mut levels = Vec::new();
    for k in 1..=n_max {
        let piece = if k < 2 {
            m.power(k)
        } else {
            m.power(k).sum(&z.product(&m.power(k - 2))?)?
        };
        levels.push(piece.gens_as_polys());
    }
    FiltrationSpec::table(3, Some(relation), levels)
}

/// Closure powers (x^k, x^{k-2} y) of the maximal ideal on
/// Q[x,y]/(x^4 + y^2), stored for degrees 1..=n_max.
pub fn plane_curve_filtration(n_max: u32) -> Result<FiltrationSpec> {
    let relation = PolyElement::from_int_terms(2, &[(1, &[4, 0]), (1, &[0, 2])]);
    let mut levels = vec![vec![mono(&[1, 0]), mono(&[0, 1])]];
    for k in 2..=n_max {
        levels.push(vec![mono(&[k, 0]), mono(&[k - 2, 1])]);
    }
    FiltrationSpec::table(2, Some(relation), levels)
}

fn run_counter(opts: &SearchOptions) -> Result<Vec<CheckResult>> {
    let (i, j) = counter_pair();
    let xy = vars(&["x", "y"]);
    let fam = [i.clone(), j.clone()];
    let product = multi_power(&fam, &MultiIndex(vec![1, 1]))?;
    let square = multi_power(&fam, &MultiIndex(vec![2, 2]))?;
    let mut checks = vec![
        check(
            "product I*J",
            "3 generators: (x*y, x^3, y^3)",
            format!("{} generators: {}", product.mu(), product.render(&xy)),
        ),
        check(
            "single-ideal bound for I*J with two elements",
            "3 vs 3: not triggered",
            bound_line(&es_check(
                BigUint::from(product.mu()),
                &MultiIndex(vec![1]),
                &MultiIndex(vec![2]),
            )?),
        ),
        check(
            "product I^2*J^2",
            "5 generators: (x^2*y^2, x^4*y, x*y^4, x^6, y^6)",
            format!("{} generators: {}", square.mu(), square.render(&xy)),
        ),
        check(
            "square bound at (2,2)",
            "5 vs 9: triggered",
            bound_line(&es_check(
                BigUint::from(square.mu()),
                &MultiIndex(vec![2, 2]),
                &MultiIndex(vec![1, 1]),
            )?),
        ),
    ];
    let filtration = FiltrationSpec::powers(vec![i.clone(), j.clone()])?;
    let cert = find_joint_reduction(
        &filtration,
        &xy,
        &MultiIndex(vec![1, 1]),
        &MultiIndex(vec![1, 1]),
        opts,
    );
    checks.push(certified_line("joint equation at (1,1)", &cert, 3));
    checks.push(check("contracted-pair trigger degrees", "(1,1)", contracted_jrv(&i, &j)?));
    Ok(checks)
}

fn run_lexsegment(opts: &SearchOptions) -> Result<Vec<CheckResult>> {
    let (i, j) = lexsegment_pair();
    let xy = vars(&["x", "y"]);
    let fam = [i.clone(), j.clone()];
    let mut mismatches = Vec::new();
    for n in 1..=4u32 {
        for m in 1..=4u32 {
            let mu = multi_power(&fam, &MultiIndex(vec![n, m]))?.mu() as u32;
            if mu != n + 2 * m + 1 {
                mismatches.push(format!("({n},{m}): {mu}"));
            }
        }
    }
    let mut checks = vec![check(
        "generator counts on the grid [1,4]^2",
        "n + 2m + 1 at all 16 degrees",
        if mismatches.is_empty() {
            "n + 2m + 1 at all 16 degrees".to_string()
        } else {
            format!("off at {}", mismatches.join("; "))
        },
    )];
    let hits = first_n_for_r(
        |n| Ok(BigUint::from(multi_power(&fam, n)?.mu())),
        &MultiIndex(vec![1, 1]),
        &MultiIndex(vec![4, 4]),
    )?;
    checks.push(check(
        "minimal trigger degrees for one element from each",
        "(2,1)",
        hits.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", "),
    ));
    let filtration = FiltrationSpec::powers(vec![i.clone(), j.clone()])?;
    let cert = find_joint_reduction(
        &filtration,
        &xy,
        &MultiIndex(vec![2, 1]),
        &MultiIndex(vec![1, 1]),
        opts,
    );
    checks.push(certified_line("joint equation at (2,1)", &cert, 3));
    let first_diag = (1..=4u32).find_map(|n| {
        let mu = BigUint::from(multi_power(&fam, &MultiIndex(vec![n, n])).ok()?.mu());
        es_check(mu, &MultiIndex(vec![n, n]), &MultiIndex(vec![1, 1]))
            .ok()?
            .triggered
            .then_some(n)
    });
    checks.push(check(
        "first diagonal degree beating the square bound",
        "(2,2)",
        match first_diag {
            Some(n) => format!("({n},{n})"),
            None => "none up to (4,4)".to_string(),
        },
    ));
    let diag_mu = BigUint::from(multi_power(&fam, &MultiIndex(vec![2, 2]))?.mu());
    checks.push(check(
        "single-ideal bound for (I*J)^2 with two elements",
        "7 vs 6: not triggered",
        bound_line(&es_check(diag_mu.clone(), &MultiIndex(vec![2]), &MultiIndex(vec![2]))?),
    ));
    checks.push(check(
        "square bound at the diagonal (2,2)",
        "7 vs 9: triggered",
        bound_line(&es_check(diag_mu, &MultiIndex(vec![2, 2]), &MultiIndex(vec![1, 1]))?),
    ));
    Ok(checks)
}

fn run_closure_example(opts: &SearchOptions) -> Result<Vec<CheckResult>> {
    let i = closure_base_ideal();
    let xyu = vars(&["x", "y", "u"]);
    let closed = integral_closure(&i)?;
    let mut checks = vec![check(
        "integral closure of (x^2, y^2, u)",
        "(u, x^2, x*y, y^2)",
        closed.render(&xyu),
    )];
    let square_closed = integral_closure(&i.power(2))?;
    let product = i.product(&closed)?;
    checks.push(check(
        "closure of I^2 against I * closure(I)",
        "equal, 9 generators",
        if square_closed == product {
            format!("equal, {} generators", product.mu())
        } else {
            "different".to_string()
        },
    ));
    checks.push(check(
        "closure of I * closure(I)",
        "fixed point",
        if integral_closure(&product)? == product { "fixed point" } else { "grows" },
    ));
    checks.push(check(
        "square bound for the closed square, three elements",
        "9 vs 10: triggered",
        bound_line(&es_check(
            BigUint::from(square_closed.mu()),
            &MultiIndex(vec![2]),
            &MultiIndex(vec![3]),
        )?),
    ));
    let filtration = FiltrationSpec::closure_powers(i)?;
    let cert = find_reduction(&filtration, &xyu, 2, 3, opts);
    checks.push(certified_line("reduction at degree 2 with three elements", &cert, 3));
    Ok(checks)
}

fn run_cubic(opts: &SearchOptions) -> Result<Vec<CheckResult>> {
    let f = cubic_tight_filtration(5)?;
    let xyz = vars(&["x", "y", "z"]);
    let mut checks = vec![
        check("generator count of the degree-1 piece", "3", f.mu_at(&MultiIndex(vec![1]))?),
        check("generator count of the degree-2 piece", "5", f.mu_at(&MultiIndex(vec![2]))?),
    ];
    let j = vec![mono(&[0, 1, 0]), mono(&[0, 0, 1])];
    let cert = reduction_number(&f, &xyz, &j, 5, opts)?;
    checks.push(check("reduction number against J = (y, z) up to degree 5", "1", rn_value(&cert)));
    checks.push(check(
        "per-degree equation verdicts",
        "no,yes,yes,yes,yes",
        verdict_line(&cert),
    ));
    let fiber = f.fibercone_gen_degrees(&MultiIndex(vec![5]))?;
    checks.push(check("largest fiber-cone generator degree", "(0)", fiber.a_bar));
    Ok(checks)
}

fn run_quartic(opts: &SearchOptions) -> Result<Vec<CheckResult>> {
    let f = quartic_surface_filtration(5)?;
    let xyz = vars(&["x", "y", "z"]);
    let mu2 = f.mu_at(&MultiIndex(vec![2]))?;
    let mut checks = vec![
        check("generator count of the degree-2 piece", "4", mu2),
        check(
            "square bound at degree 2 with two elements",
            "4 vs 6: triggered",
            bound_line(&es_check(
                BigUint::from(mu2),
                &MultiIndex(vec![2]),
                &MultiIndex(vec![2]),
            )?),
        ),
    ];
    let j = vec![mono(&[1, 0, 0]), mono(&[0, 1, 0])];
    let cert = reduction_number(&f, &xyz, &j, 5, opts)?;
    checks.push(check("reduction number against J = (x, y) up to degree 5", "2", rn_value(&cert)));
    checks.push(check(
        "per-degree equation verdicts",
        "no,no,yes,yes,yes",
        verdict_line(&cert),
    ));
    let cm = match &cert {
        Certificate::ReductionNumber(c) => c.assertions.fiber_cone_cohen_macaulay,
        _ => true,
    };
    checks.push(check(
        "fiber-cone Cohen-Macaulay hypothesis in the certificate",
        "not asserted",
        if cm { "asserted" } else { "not asserted" },
    ));
    Ok(checks)
}

fn run_plane_curve(opts: &SearchOptions) -> Result<Vec<CheckResult>> {
    let f = plane_curve_filtration(6)?;
    let xy = vars(&["x", "y"]);
    let j = vec![mono(&[1, 0])];
    let cert = reduction_number(&f, &xy, &j, 6, opts)?;
    let mut checks = vec![
        check("reduction number against J = (x) up to degree 6", "2", rn_value(&cert)),
        check(
            "per-degree equation verdicts",
            "no,no,yes,yes,yes,yes",
            verdict_line(&cert),
        ),
    ];
    let fiber = f.fibercone_gen_degrees(&MultiIndex(vec![6]))?;
    checks.push(check(
        "fiber-cone generator degrees",
        "(0), (2); max (2)",
        format!(
            "{}; max {}",
            fiber.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
            fiber.a_bar
        ),
    ));
    let refused = match find_reduction(&f, &xy, 2, 1, opts) {
        Err(Error::GateRefused(_)) => "refused".to_string(),
        Err(e) => format!("error: {e}"),
        Ok(c) => format!("ran anyway, verified={}", c.verified()),
    };
    checks.push(check("search gate at degree 2", "refused", refused));
    let mut verdicts = Vec::new();
    for n in 3..=6u32 {
        let ok = matches!(find_reduction(&f, &xy, n, 1, opts), Ok(c) if c.verified());
        verdicts.push(if ok { format!("{n}: verified") } else { format!("{n}: failed") });
    }
    checks.push(check(
        "searches at degrees 3 through 6 with one element",
        "3: verified, 4: verified, 5: verified, 6: verified",
        verdicts.join(", "),
    ));
    Ok(checks)
}

pub fn run_example(id: &str, opts: &SearchOptions) -> Result<ExampleReport> {
    let checks = match id {
        "counter" => run_counter(opts),
        "lexsegment" => run_lexsegment(opts),
        "closure-x2y2u" => run_closure_example(opts),
        "tight-x3y3z3" => run_cubic(opts),
        "closure-x4y4z2" => run_quartic(opts),
        "closure-x4y2" => run_plane_curve(opts),
        _ => Err(Error::Input(format!(
            "unknown example '{id}'; known: {}",
            EXAMPLE_IDS.join(", ")
        ))),
    }?;
    Ok(ExampleReport {
        id: id.to_string(),
        title: example_title(id).unwrap_or_default().to_string(),
        checks,
    })
}

pub fn run_all(opts: &SearchOptions) -> Result<Vec<ExampleReport>> {
    EXAMPLE_IDS.iter().map(|id| run_example(id, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counter_has_six_green_checks() {
        let report = run_example("counter", &SearchOptions::default()).unwrap();
        assert_eq!(report.checks.len(), 6);
        for c in &report.checks {
            assert!(c.pass, "{}: expected {} got {}", c.label, c.expected, c.actual);
        }
    }

    #[test]
    fn unknown_ids_are_listed() {
        let err = run_example("nope", &SearchOptions::default()).err().unwrap();
        let msg = format!("{err}");
        assert!(msg.contains("counter") && msg.contains("closure-x4y2"), "{msg}");
    }
}
