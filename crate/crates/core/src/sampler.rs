//! Seeded sampling of candidate "general" elements: random non-zero
//! integer combinations of a generator list. Same seed, same stream.

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::PolyElement;

/// One sampled combination, kept with its coefficient vector so a
/// certificate can be replayed without the generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledElement {
    pub element: PolyElement,
    pub coeffs: Vec<i64>,
}

pub struct GeneralElementSampler {
    rng: ChaCha8Rng,
    seed: u64,
    coeff_bound: i64,
    max_attempts: u32,
}

impl GeneralElementSampler {
    pub fn new(seed: u64, coeff_bound: i64, max_attempts: u32) -> Result<Self> {
        if coeff_bound < 1 {
            return Err(Error::Input("coefficient bound must be positive".into()));
        }
        if max_attempts < 1 {
            return Err(Error::Input("attempt count must be positive".into()));
        }
        Ok(GeneralElementSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            coeff_bound,
            max_attempts,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn coeff_bound(&self) -> i64 {
        self.coeff_bound
    }

    pub fn max_attempts(&self) -> u32 {
        self.max_attempts
    }

    /// Doubles the coefficient range for the next attempt; the bad locus is
    /// a proper closed set, so widening shrinks the miss probability.
    pub fn escalate(&mut self) {
        self.coeff_bound *= 2;
    }

    /// Draws `count` combinations of the generators with coefficients
    /// uniform in [-B, B], rejecting all-zero draws.
    pub fn sample_elements(
        &mut self,
        gens: &[PolyElement],
        count: usize,
    ) -> Result<Vec<SampledElement>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        if gens.is_empty() {
            return Err(Error::Input("cannot sample from an empty generator list".into()));
        }
        let dim = gens[0].dim();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut coeffs;
            let mut rejections = 0;
            loop {
                coeffs = (0..gens.len())
                    .map(|_| self.rng.gen_range(-self.coeff_bound..=self.coeff_bound))
                    .collect::<Vec<i64>>();
                if coeffs.iter().any(|&c| c != 0) {
                    break;
                }
                rejections += 1;
                if rejections > 64 {
                    return Err(Error::Input(
                        "sampler drew the zero vector 64 times in a row".into(),
                    ));
                }
            }
            let mut element = PolyElement::zero(dim);
            for (g, &c) in gens.iter().zip(&coeffs) {
                element = element.add(&g.scale(&BigRational::from(BigInt::from(c))))?;
            }
            out.push(SampledElement { element, coeffs });
        }
        Ok(out)
    }
}
