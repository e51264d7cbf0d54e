//! Finite discrete probability distributions and a reproducible pair sampler.
//!
//! A [`ProbabilityDistribution`] is a point of the open simplex: at least
//! two strictly positive weights summing to one. Construction validates
//! and then renormalizes exactly, so downstream identities can rely on
//! unit mass to within the accumulator's own rounding.
//!
//! [`PairSampler`] generates deterministic `(P, Q)` pairs for corpus
//! audits. The generator is fully specified so the corpus can be
//! reproduced outside this crate: each pair uses a fresh ChaCha8 stream
//! keyed by the little-endian bytes of `(seed, index, 0x9e3779b97f4a7c15,
//! 0xd1b54a32d192ed03)`; uniform draws map the top 53 bits of `next_u64`
//! into `(0, 1]`; weights are normalized standard-exponential draws
//! (`-ln u`, a flat Dirichlet), and one pair in four is adversarially
//! skewed toward a large `pᵢ/qᵢ` ratio.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::sum::compensated_sum;

/// Accepted deviation of an input weight vector's mass from 1.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Smallest weight the pair sampler will emit. Keeps extreme ratios
/// exercised without denormal-float pathologies.
pub const MIN_SAMPLED_WEIGHT: f64 = 1e-12;

// Sampled weights are clamped a hair above the floor so that the final
// exact renormalization cannot push them back under it.
const SAMPLE_FLOOR: f64 = MIN_SAMPLED_WEIGHT * (1.0 + 1e-9);

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DistributionError {
    #[error("atom {index}: weight is NaN or infinite")]
    NonFinite { index: usize },
    #[error("atom {index}: weight {value} is not strictly positive")]
    NonPositive { index: usize, value: f64 },
    #[error("a distribution needs at least 2 atoms, got {n}")]
    TooFewAtoms { n: usize },
    #[error("weights sum to {sum}, more than {MASS_TOLERANCE} away from 1; normalize the input first")]
    MassOutOfTolerance { sum: f64 },
    #[error("atom {index}: weight is zero and smoothing epsilon is zero; pass a positive smoothing epsilon to accept zero counts")]
    ZeroWithoutSmoothing { index: usize },
    #[error("all weights are zero")]
    AllZero,
    #[error("smoothing epsilon must be finite and nonnegative, got {value}")]
    InvalidSmoothing { value: f64 },
}

/// A validated point of the probability simplex Γₙ (n ≥ 2, all weights
/// strictly positive, mass exactly renormalized to 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    weights: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Validates `weights` as-is: every weight finite and > 0, at least
    /// two atoms, and mass within [`MASS_TOLERANCE`] of 1. The stored
    /// weights are then renormalized exactly.
    pub fn new(weights: &[f64]) -> Result<Self, DistributionError> {
        if weights.len() < 2 {
            return Err(DistributionError::TooFewAtoms { n: weights.len() });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(DistributionError::NonFinite { index });
            }
            if w <= 0.0 {
                return Err(DistributionError::NonPositive { index, value: w });
            }
        }
        let total = compensated_sum(weights.iter().copied());
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(DistributionError::MassOutOfTolerance { sum: total });
        }
        Ok(Self::renormalized_exactly(weights.to_vec(), total))
    }

    /// Builds a distribution from raw nonnegative weights (e.g. counts),
    /// replacing each `wᵢ` by `(wᵢ + ε) / (Σw + n·ε)`.
    ///
    /// With `smoothing_epsilon = 0` any zero weight is rejected, since the
    /// simplex is open.
    pub fn normalized(
        weights: &[f64],
        smoothing_epsilon: f64,
    ) -> Result<Self, DistributionError> {
        if !smoothing_epsilon.is_finite() || smoothing_epsilon < 0.0 {
            return Err(DistributionError::InvalidSmoothing { value: smoothing_epsilon });
        }
        if weights.len() < 2 {
            return Err(DistributionError::TooFewAtoms { n: weights.len() });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(DistributionError::NonFinite { index });
            }
            if w < 0.0 {
                return Err(DistributionError::NonPositive { index, value: w });
            }
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(DistributionError::AllZero);
        }
        if smoothing_epsilon == 0.0 {
            if let Some(index) = weights.iter().position(|&w| w == 0.0) {
                return Err(DistributionError::ZeroWithoutSmoothing { index });
            }
        }
        let n = weights.len() as f64;
        let total = compensated_sum(weights.iter().copied()) + n * smoothing_epsilon;
        let scaled: Vec<f64> = weights.iter().map(|&w| (w + smoothing_epsilon) / total).collect();
        let scaled_total = compensated_sum(scaled.iter().copied());
        Ok(Self::renormalized_exactly(scaled, scaled_total))
    }

    /// Number of atoms.
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    // Divide by the measured mass, then pin the residual rounding mass on
    // the largest atom so the stored weights re-sum to exactly 1.0. A
    // vector that already sums to exactly 1.0 passes through bit-identical,
    // which makes construction idempotent.
    fn renormalized_exactly(mut weights: Vec<f64>, total: f64) -> Self {
        if total != 1.0 {
            for w in &mut weights {
                *w /= total;
            }
        }
        let largest = weights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        for _ in 0..4 {
            let residual = 1.0 - compensated_sum(weights.iter().copied());
            if residual == 0.0 {
                break;
            }
            weights[largest] += residual;
        }
        Self { weights }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SamplerError {
    #[error("atom range [{min}, {max}] is invalid: need 2 <= min <= max")]
    InvalidAtomRange { min: usize, max: usize },
    #[error("skew must be a finite real >= 1, got {value}")]
    InvalidSkew { value: f64 },
}

/// Deterministic generator of distribution pairs.
///
/// `pair(index)` is a pure function of `(seed, n_range, skew, index)`, so
/// corpora can be generated in parallel and replayed exactly.
#[derive(Debug, Clone, Copy)]
pub struct PairSampler {
    seed: u64,
    n_min: usize,
    n_max: usize,
    skew: f64,
}

impl PairSampler {
    /// `n_range` is inclusive on both ends; `skew` bounds the magnitude of
    /// the adversarial `pᵢ/qᵢ` ratio and must be at least 1.
    pub fn new(seed: u64, n_range: (usize, usize), skew: f64) -> Result<Self, SamplerError> {
        let (n_min, n_max) = n_range;
        if n_min < 2 || n_max < n_min {
            return Err(SamplerError::InvalidAtomRange { min: n_min, max: n_max });
        }
        if !skew.is_finite() || skew < 1.0 {
            return Err(SamplerError::InvalidSkew { value: skew });
        }
        Ok(Self { seed, n_min, n_max, skew })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_range(&self) -> (usize, usize) {
        (self.n_min, self.n_max)
    }

    pub fn skew(&self) -> f64 {
        self.skew
    }

    /// The `index`-th pair of the corpus.
    ///
    /// Draw order, frozen for reproducibility: atom count, n exponentials
    /// for P, n for Q, the skew gate (probability 1/4), and if skewed the
    /// target atom, log-uniform ratio exponent, and direction.
    pub fn pair(&self, index: u64) -> (ProbabilityDistribution, ProbabilityDistribution) {
        let mut rng = pair_rng(self.seed, index);
        let span = (self.n_max - self.n_min + 1) as u64;
        let n = self.n_min + (rng.next_u64() % span) as usize;

        let mut p: Vec<f64> = (0..n).map(|_| -unit_open_closed(&mut rng).ln()).collect();
        let mut q: Vec<f64> = (0..n).map(|_| -unit_open_closed(&mut rng).ln()).collect();

        let skewed = rng.next_u64() < (1u64 << 62);
        let plan = if skewed {
            let atom = (rng.next_u64() % n as u64) as usize;
            let exponent = unit_half_open(&mut rng);
            let ratio = self.skew.powf(exponent);
            let shrink_q = rng.next_u64() & 1 == 0;
            Some((atom, ratio, shrink_q))
        } else {
            None
        };

        to_simplex(&mut p);
        to_simplex(&mut q);
        if let Some((atom, ratio, shrink_q)) = plan {
            // Aim one atom's ratio at `ratio`, floor included, then restore
            // unit mass on the modified side.
            if shrink_q {
                q[atom] = (p[atom] / ratio).max(SAMPLE_FLOOR);
                to_simplex(&mut q);
            } else {
                p[atom] = (q[atom] / ratio).max(SAMPLE_FLOOR);
                to_simplex(&mut p);
            }
        }

        let p = ProbabilityDistribution::new(&p).expect("sampler emits valid weights");
        let q = ProbabilityDistribution::new(&q).expect("sampler emits valid weights");
        (p, q)
    }

    /// Materializes pairs `0..count`.
    pub fn take_pairs(&self, count: u64) -> Vec<(ProbabilityDistribution, ProbabilityDistribution)> {
        (0..count).map(|i| self.pair(i)).collect()
    }
}

fn pair_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    key[16..24].copy_from_slice(&0x9e37_79b9_7f4a_7c15_u64.to_le_bytes());
    key[24..32].copy_from_slice(&0xd1b5_4a32_d192_ed03_u64.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Uniform draw in (0, 1]: 53-bit fixed point, complemented so 0 is excluded.
fn unit_open_closed(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - unit_half_open(rng)
}

/// Uniform draw in [0, 1).
fn unit_half_open(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

// Scale to unit mass and lift anything under the sample floor, paying the
// lifted mass out of the largest atom so the total is preserved.
fn to_simplex(weights: &mut [f64]) {
    let total = compensated_sum(weights.iter().copied());
    for w in weights.iter_mut() {
        *w /= total;
    }
    let mut lifted = 0.0;
    for w in weights.iter_mut() {
        if *w < SAMPLE_FLOOR {
            lifted += SAMPLE_FLOOR - *w;
            *w = SAMPLE_FLOOR;
        }
    }
    if lifted > 0.0 {
        let largest = weights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("non-empty");
        weights[largest] -= lifted;
    }
}
