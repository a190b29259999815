//! Binomial bounds on generator counts and the search gates built on them.
//!
//! The central inequality: if mu(I_n) is strictly below the product of
//! binomial(n_i + r_i, r_i), then r_i general elements per graded piece
//! suffice to rewrite I_n. Everything here is exact integer arithmetic.

use num::{BigUint, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::{box_indices, MultiIndex};
use crate::wire::biguint_repr;

/// Exact binomial coefficient, zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// Product of binomial(n_i + r_i, r_i) over the grading.
pub fn es_bound(n: &MultiIndex, r: &MultiIndex) -> Result<BigUint> {
    if n.len() != r.len() {
        return Err(Error::DimensionMismatch { expected: n.len(), found: r.len() });
    }
    let mut acc = BigUint::one();
    for (&ni, &ri) in n.0.iter().zip(&r.0) {
        acc *= binomial(ni as u64 + ri as u64, ri as u64);
    }
    Ok(acc)
}

/// Outcome of comparing a generator count against the binomial bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ESBoundReport {
    #[serde(with = "biguint_repr")]
    pub mu: BigUint,
    #[serde(with = "biguint_repr")]
    pub bound: BigUint,
    pub n: MultiIndex,
    pub r: MultiIndex,
    /// mu < bound, strictly.
    pub triggered: bool,
}

/// Compares mu against the bound. Zero entries are allowed; with r_i = 0 the
/// corresponding factor is 1, so e.g. r = 0 everywhere gives bound 1 and the
/// check simply fails to trigger for any nonzero ideal.
pub fn es_check(mu: BigUint, n: &MultiIndex, r: &MultiIndex) -> Result<ESBoundReport> {
    if n.len() != r.len() {
        return Err(Error::DimensionMismatch { expected: n.len(), found: r.len() });
    }
    let bound = es_bound(n, r)?;
    let triggered = mu < bound;
    Ok(ESBoundReport { mu, bound, n: n.clone(), r: r.clone(), triggered })
}

/// Scans the box [0, n_max] (skipping n = 0) and returns the
/// componentwise-minimal degrees where the bound first triggers for the
/// given r. The evaluator supplies mu at each degree.
pub fn first_n_for_r<F>(mut mu_at: F, r: &MultiIndex, n_max: &MultiIndex) -> Result<Vec<MultiIndex>>
where
    F: FnMut(&MultiIndex) -> Result<BigUint>,
{
    if r.len() != n_max.len() {
        return Err(Error::DimensionMismatch { expected: r.len(), found: n_max.len() });
    }
    let mut hits: Vec<MultiIndex> = Vec::new();
    for n in box_indices(n_max) {
        if n.norm() == 0 {
            continue;
        }
        // skip degrees dominating an already-triggered one; they cannot be minimal
        if hits.iter().any(|h| h.leq(&n)) {
            continue;
        }
        let report = es_check(mu_at(&n)?, &n, r)?;
        if report.triggered {
            hits.push(n);
        }
    }
    hits.retain({
        let all = hits.clone();
        move |n| !all.iter().any(|h| h != n && h.leq(n))
    });
    Ok(hits)
}

/// Degrees at which the square bound (r_i = 1) is guaranteed to trigger for
/// a pair of contracted m-primary ideals in 2 variables, from their orders.
pub fn contracted_jrv(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MultiIndex> {
    for (name, ideal) in [("first", i), ("second", j)] {
        if !ideal.is_contracted()? {
            return Err(Error::Hypothesis(format!("{name} ideal is not contracted")));
        }
    }
    let oi = i.order()?;
    let oj = j.order()?;
    let n = MultiIndex(vec![2 * oj - 1, 2 * oi - 1]);
    // cross-check: the square bound really does trigger at the formula degrees
    let mu = BigUint::from(crate::ideal::multi_power(&[i.clone(), j.clone()], &n)?.mu());
    let report = es_check(mu, &n, &MultiIndex(vec![1, 1]))?;
    if !report.triggered {
        return Err(Error::Hypothesis(format!(
            "bound not triggered at {n}: mu {} vs {}",
            report.mu, report.bound
        )));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::multi_power;

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(5, 3), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(40, 20), BigUint::from(137846528820u64));
    }

    #[test]
    fn bound_is_a_product_over_the_grading() {
        let b = es_bound(&MultiIndex(vec![2, 2]), &MultiIndex(vec![1, 1])).unwrap();
        assert_eq!(b, BigUint::from(9u32));
        let b = es_bound(&MultiIndex(vec![2]), &MultiIndex(vec![3])).unwrap();
        assert_eq!(b, BigUint::from(10u32));
    }

    #[test]
    fn trigger_is_strict_inequality() {
        // 3 generators against bound 3: not triggered
        let r = es_check(BigUint::from(3u32), &MultiIndex(vec![1]), &MultiIndex(vec![2])).unwrap();
        assert_eq!(r.bound, BigUint::from(3u32));
        assert!(!r.triggered);
        // 5 generators against bound 9: triggered
        let r =
            es_check(BigUint::from(5u32), &MultiIndex(vec![2, 2]), &MultiIndex(vec![1, 1]))
                .unwrap();
        assert!(r.triggered);
        // zero counts degrade gracefully: bound 1, never beaten by a nonzero ideal
        let r = es_check(BigUint::one(), &MultiIndex(vec![1, 1]), &MultiIndex(vec![0, 0])).unwrap();
        assert_eq!(r.bound, BigUint::one());
        assert!(!r.triggered);
        // length mismatch is still rejected
        assert!(es_check(BigUint::one(), &MultiIndex(vec![1]), &MultiIndex(vec![1, 1])).is_err());
    }

    #[test]
    fn minimal_trigger_degrees_for_the_plane_pair() {
        let i = MonomialIdeal::from_int_gens(2, &[&[1, 0], &[0, 2]]);
        let j = MonomialIdeal::from_int_gens(2, &[&[0, 1], &[2, 0]]);
        let fam = [i, j];
        let hits = first_n_for_r(
            |n| Ok(BigUint::from(multi_power(&fam, n)?.mu())),
            &MultiIndex(vec![1, 1]),
            &MultiIndex(vec![4, 4]),
        )
        .unwrap();
        // mu(I J) = 3 < 2 * 2 already at (1,1)
        assert_eq!(hits, vec![MultiIndex(vec![1, 1])]);
    }

    #[test]
    fn minimal_trigger_set_is_an_antichain() {
        let i = crate::ideal::lexsegment_ideal(1, &[2]).unwrap();
        let j = crate::ideal::lexsegment_ideal(2, &[2, 3]).unwrap();
        let fam = [i, j];
        let hits = first_n_for_r(
            |n| Ok(BigUint::from(multi_power(&fam, n)?.mu())),
            &MultiIndex(vec![1, 1]),
            &MultiIndex(vec![5, 5]),
        )
        .unwrap();
        assert!(!hits.is_empty());
        for a in &hits {
            for b in &hits {
                assert!(a == b || !a.leq(b), "{a} dominates {b}");
            }
        }
        // every hit triggers, nothing strictly below a hit triggers
        for h in &hits {
            let mu = BigUint::from(multi_power(&fam, h).unwrap().mu());
            assert!(es_check(mu, h, &MultiIndex(vec![1, 1])).unwrap().triggered);
        }
    }

    #[test]
    fn contracted_pair_trigger_degrees_from_orders() {
        let m = MonomialIdeal::maximal(2);
        let got = contracted_jrv(&m.power(2), &m.power(3)).unwrap();
        assert_eq!(got, MultiIndex(vec![5, 3]));
        // the formula degrees really do trigger the square bound
        let fam = [m.power(2), m.power(3)];
        let mu = BigUint::from(multi_power(&fam, &got).unwrap().mu());
        assert!(es_check(mu, &got, &MultiIndex(vec![1, 1])).unwrap().triggered);
        let bad = MonomialIdeal::from_int_gens(2, &[&[2, 0], &[0, 2]]);
        assert!(contracted_jrv(&bad, &m).is_err());
    }
}
