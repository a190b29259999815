//! Newton polyhedra of monomial ideals: membership and integral closure.
//!
//! A monomial x^e lies in the integral closure of a monomial ideal I exactly
//! when e is in conv(exponents of I) + R_{>=0}^d. Membership is decided by
//! an exact phase-one simplex over the rationals, so there is no dependence
//! on floating-point feasibility tolerances.

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::{box_indices, ExponentVector, MultiIndex};

fn rat(v: u32) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Decides whether `e` lies in conv(gens) + R_{>=0}^d.
///
/// Feasibility of: sum(l_i * g_i) + s = e, sum(l_i) = 1, l >= 0, s >= 0.
/// Slacks start basic in the d coordinate rows; one artificial variable
/// covers the convexity row. Bland's rule, so termination is unconditional.
fn cone_feasible(gens: &[ExponentVector], e: &ExponentVector) -> bool {
    let d = e.len();
    let m = gens.len();
    let cols = m + d + 1; // lambdas, slacks, artificial
    let art = m + d;

    // rows 0..d: coordinate constraints; row d: convexity constraint
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(d + 1);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(d + 1);
    for j in 0..d {
        let mut row = vec![BigRational::zero(); cols];
        for (i, g) in gens.iter().enumerate() {
            row[i] = rat(g.0[j]);
        }
        row[m + j] = BigRational::one();
        tab.push(row);
        rhs.push(rat(e.0[j]));
    }
    let mut row = vec![BigRational::zero(); cols];
    for cell in row.iter_mut().take(m) {
        *cell = BigRational::one();
    }
    row[art] = BigRational::one();
    tab.push(row);
    rhs.push(BigRational::one());

    let mut basis: Vec<usize> = (0..d).map(|j| m + j).collect();
    basis.push(art);

    // Phase one: drive the artificial variable to zero. Its row doubles as
    // the reduced-cost row while it stays basic.
    loop {
        if rhs[d].is_zero() {
            return true;
        }
        let entering = (0..art).find(|&j| !basis.contains(&j) && tab[d][j].is_positive());
        let Some(col) = entering else {
            return false;
        };
        let mut pivot: Option<usize> = None;
        for i in 0..=d {
            if tab[i][col].is_positive() {
                let better = match pivot {
                    None => true,
                    Some(p) => {
                        let cur = &rhs[i] / &tab[i][col];
                        let best = &rhs[p] / &tab[p][col];
                        cur < best || (cur == best && basis[i] < basis[p])
                    }
                };
                if better {
                    pivot = Some(i);
                }
            }
        }
        let row = pivot.expect("positive entry in the cost row has a positive column entry");
        let scale = tab[row][col].clone();
        for v in tab[row].iter_mut() {
            *v /= &scale;
        }
        rhs[row] /= &scale;
        for i in 0..=d {
            if i == row || tab[i][col].is_zero() {
                continue;
            }
            let f = tab[i][col].clone();
            for j in 0..cols {
                let delta = &f * &tab[row][j];
                tab[i][j] -= delta;
            }
            let delta = &f * &rhs[row];
            rhs[i] -= delta;
        }
        let leaving = basis[row];
        basis[row] = col;
        if leaving == art {
            return true;
        }
    }
}

/// True when x^e lies in the integral closure of the ideal.
pub fn np_membership(ideal: &MonomialIdeal, e: &ExponentVector) -> Result<bool> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.contains_monomial(e)? {
        return Ok(true);
    }
    Ok(cone_feasible(ideal.gens(), e))
}

/// Integral closure of a monomial ideal: all lattice points of the Newton
/// polyhedron, minimalized.
///
/// It suffices to scan the box below the componentwise maximum b of the
/// generators: any polyhedron point e is q + (nonnegative) with q in the
/// convex hull, q <= b componentwise, so min(e, b) is again a polyhedron
/// point and divides e.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let d = ideal.dim();
    let mut bounds = vec![0u32; d];
    for g in ideal.gens() {
        for (j, &v) in g.0.iter().enumerate() {
            bounds[j] = bounds[j].max(v);
        }
    }
    let mut inside = Vec::new();
    for c in box_indices(&MultiIndex(bounds)) {
        let e = ExponentVector(c.0);
        if np_membership(ideal, &e)? {
            inside.push(e);
        }
    }
    MonomialIdeal::new(d, inside)
}
