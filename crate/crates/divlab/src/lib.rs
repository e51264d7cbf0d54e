//! Symmetric divergence measures over finite discrete probability
//! distributions, a generic Csiszár f-divergence engine, and numeric
//! certification of the sharp constants relating the measures.
//!
//! The crate is organized around six pieces:
//!
//! - [`dist`] — validated probability distributions and a seeded,
//!   bit-reproducible sampler for random distribution pairs.
//! - [`measures`] — closed-form evaluation of the eleven measures
//!   (Hellinger, triangular, symmetric χ², J, Jensen-Shannon,
//!   arithmetic-geometric mean, KL, χ², Bhattacharyya, harmonic mean,
//!   and the quartic D*), all with compensated summation.
//! - [`csiszar`] — the generic engine `C_f(P‖Q) = Σ qᵢ f(pᵢ/qᵢ)` plus the
//!   catalog of generating functions with closed-form first and second
//!   derivatives.
//! - [`diff`] — the fifteen nonnegative difference divergences D₁–D₁₅ and
//!   their closed-form second derivatives.
//! - [`chains`] — the named inequality chains among all of the above,
//!   evaluable on any distribution pair.
//! - [`bounds`] — extremum estimation for second-derivative ratios,
//!   the table of known sharp constants, and the sandwich-bound checker.

pub mod bounds;
pub mod chains;
pub mod csiszar;
pub mod diff;
pub mod dist;
pub mod measures;
pub mod sum;

pub use bounds::{
    estimate_extremum, verify_sandwich, BoundCertificate, CurvatureSource, ExtremumKind,
    GridSpec, RatioFunction,
};
pub use chains::{chain_definitions, BaseMeasures, Chain, ChainKind};
pub use csiszar::{catalog, csiszar_divergence, GeneratingFunction, GeneratorId};
pub use diff::{difference_value, DifferenceId, DifferenceSpec};
pub use dist::{DistributionError, PairSampler, ProbabilityDistribution};
pub use measures::{DivergenceValue, MeasureError, MeasureId};
