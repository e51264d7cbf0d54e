//! Closed-form divergence measures between discrete distributions.
//!
//! All logarithmic measures use the natural logarithm, so values are in
//! nats; the single base is what makes `J = 4(I + T)` and the KL
//! decompositions hold exactly. Every sum is compensated. Each measure is
//! evaluated with its own per-element term exactly as written below; the
//! algebraically equivalent forms (e.g. `Ψ = χ²(P‖Q) + χ²(Q‖P)`) are test
//! oracles, not implementation paths.
//!
//! | id     | value                                        |
//! |--------|----------------------------------------------|
//! | H      | ½ Σ (√pᵢ − √qᵢ)²                             |
//! | DELTA  | Σ (pᵢ−qᵢ)²/(pᵢ+qᵢ)                           |
//! | PSI    | Σ (pᵢ−qᵢ)²(pᵢ+qᵢ)/(pᵢqᵢ)                     |
//! | J      | Σ (pᵢ−qᵢ) ln(pᵢ/qᵢ)                          |
//! | I      | ½[Σ pᵢ ln(2pᵢ/(pᵢ+qᵢ)) + Σ qᵢ ln(2qᵢ/(pᵢ+qᵢ))] |
//! | T      | Σ ((pᵢ+qᵢ)/2) ln((pᵢ+qᵢ)/(2√(pᵢqᵢ)))         |
//! | KL     | Σ pᵢ ln(pᵢ/qᵢ)                               |
//! | CHI2   | Σ (pᵢ−qᵢ)²/qᵢ                                |
//! | B      | Σ √(pᵢqᵢ)                                    |
//! | W      | Σ 2pᵢqᵢ/(pᵢ+qᵢ)                              |
//! | DSTAR  | Σ (pᵢ−qᵢ)⁴/√((pᵢqᵢ)³)                        |

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dist::ProbabilityDistribution;
use crate::sum::CompensatedSum;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MeasureError {
    #[error("distributions have different atom counts: {p_atoms} vs {q_atoms}")]
    DimensionMismatch { p_atoms: usize, q_atoms: usize },
}

/// Identifier of one of the eleven measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureId {
    /// Hellinger discrimination `h`.
    Hellinger,
    /// Triangular discrimination `Δ`.
    Triangular,
    /// Symmetric chi-square divergence `Ψ`.
    SymChiSquare,
    /// J-divergence.
    JDivergence,
    /// Jensen-Shannon divergence `I`.
    JensenShannon,
    /// Arithmetic-geometric mean divergence `T`.
    AgMean,
    /// Kullback-Leibler relative information (directional).
    KullbackLeibler,
    /// Chi-square divergence (directional).
    ChiSquare,
    /// Bhattacharyya coefficient (a similarity, 1 at P = Q).
    Bhattacharyya,
    /// Harmonic mean divergence `W` (a similarity, 1 at P = Q).
    HarmonicMean,
    /// Quartic measure `D*`.
    DStar,
}

impl MeasureId {
    /// All measures in canonical output order.
    pub const ALL: [MeasureId; 11] = [
        MeasureId::Hellinger,
        MeasureId::Triangular,
        MeasureId::SymChiSquare,
        MeasureId::JDivergence,
        MeasureId::JensenShannon,
        MeasureId::AgMean,
        MeasureId::KullbackLeibler,
        MeasureId::ChiSquare,
        MeasureId::Bhattacharyya,
        MeasureId::HarmonicMean,
        MeasureId::DStar,
    ];

    /// Short wire name used by reports and the CLI.
    pub fn key(&self) -> &'static str {
        match self {
            MeasureId::Hellinger => "H",
            MeasureId::Triangular => "DELTA",
            MeasureId::SymChiSquare => "PSI",
            MeasureId::JDivergence => "J",
            MeasureId::JensenShannon => "I",
            MeasureId::AgMean => "T",
            MeasureId::KullbackLeibler => "KL",
            MeasureId::ChiSquare => "CHI2",
            MeasureId::Bhattacharyya => "B",
            MeasureId::HarmonicMean => "W",
            MeasureId::DStar => "DSTAR",
        }
    }

    pub fn parse(key: &str) -> Option<MeasureId> {
        let upper = key.trim().to_ascii_uppercase();
        MeasureId::ALL.iter().copied().find(|m| m.key() == upper)
    }

    /// True for the measures with `value(P,Q) = value(Q,P)` termwise.
    pub fn is_symmetric(&self) -> bool {
        !matches!(self, MeasureId::KullbackLeibler | MeasureId::ChiSquare)
    }
}

impl std::fmt::Display for MeasureId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

/// A measure value tagged with the measure that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivergenceValue {
    pub measure: MeasureId,
    pub value: f64,
}

/// Evaluates any measure by id. `KL` and `CHI2` are taken in the `P‖Q`
/// direction; swap the arguments for the reverse.
pub fn evaluate(
    id: MeasureId,
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<DivergenceValue, MeasureError> {
    let value = match id {
        MeasureId::Hellinger => hellinger(p, q)?,
        MeasureId::Triangular => triangular(p, q)?,
        MeasureId::SymChiSquare => symmetric_chi_square(p, q)?,
        MeasureId::JDivergence => j_divergence(p, q)?,
        MeasureId::JensenShannon => jensen_shannon(p, q)?,
        MeasureId::AgMean => ag_mean(p, q)?,
        MeasureId::KullbackLeibler => kullback_leibler(p, q)?,
        MeasureId::ChiSquare => chi_square(p, q)?,
        MeasureId::Bhattacharyya => bhattacharyya(p, q)?,
        MeasureId::HarmonicMean => harmonic_mean(p, q)?,
        MeasureId::DStar => d_star(p, q)?,
    };
    Ok(DivergenceValue { measure: id, value })
}

#[inline]
fn paired_sum(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
    term: impl Fn(f64, f64) -> f64,
) -> Result<f64, MeasureError> {
    if p.n() != q.n() {
        return Err(MeasureError::DimensionMismatch { p_atoms: p.n(), q_atoms: q.n() });
    }
    let mut acc = CompensatedSum::new();
    for (&pi, &qi) in p.weights().iter().zip(q.weights()) {
        acc.add(term(pi, qi));
    }
    Ok(acc.value())
}

/// Hellinger discrimination `h = ½ Σ (√p − √q)²`.
pub fn hellinger(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    Ok(0.5
        * paired_sum(p, q, |pi, qi| {
            let d = pi.sqrt() - qi.sqrt();
            d * d
        })?)
}

/// Bhattacharyya coefficient `B = Σ √(pq)`.
pub fn bhattacharyya(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    paired_sum(p, q, |pi, qi| (pi * qi).sqrt())
}

/// Triangular discrimination `Δ = Σ (p − q)²/(p + q)`.
pub fn triangular(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    paired_sum(p, q, |pi, qi| {
        let d = pi - qi;
        d * d / (pi + qi)
    })
}

/// Harmonic mean divergence `W = Σ 2pq/(p + q)`.
pub fn harmonic_mean(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    paired_sum(p, q, |pi, qi| 2.0 * pi * qi / (pi + qi))
}

/// Chi-square divergence `χ²(P‖Q) = Σ (p − q)²/q`.
pub fn chi_square(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    paired_sum(p, q, |pi, qi| {
        let d = pi - qi;
        d * d / qi
    })
}

/// Symmetric chi-square divergence `Ψ = Σ (p − q)²(p + q)/(pq)`.
pub fn symmetric_chi_square(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    paired_sum(p, q, |pi, qi| {
        let d = pi - qi;
        d * d * (pi + qi) / (pi * qi)
    })
}

/// Kullback-Leibler relative information `K(P‖Q) = Σ p ln(p/q)`, in nats.
pub fn kullback_leibler(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    paired_sum(p, q, |pi, qi| pi * (pi / qi).ln())
}

/// J-divergence `J = Σ (p − q) ln(p/q)`.
pub fn j_divergence(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    paired_sum(p, q, |pi, qi| (pi - qi) * (pi / qi).ln())
}

/// Jensen-Shannon divergence
/// `I = ½[Σ p ln(2p/(p+q)) + Σ q ln(2q/(p+q))]`.
pub fn jensen_shannon(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    Ok(0.5
        * paired_sum(p, q, |pi, qi| {
            let m = pi + qi;
            pi * (2.0 * pi / m).ln() + qi * (2.0 * qi / m).ln()
        })?)
}

/// Arithmetic-geometric mean divergence
/// `T = Σ ((p+q)/2) ln((p+q)/(2√(pq)))`.
pub fn ag_mean(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    paired_sum(p, q, |pi, qi| {
        let s = pi + qi;
        0.5 * s * (s / (2.0 * (pi * qi).sqrt())).ln()
    })
}

/// Quartic measure `D* = Σ (p − q)⁴/√((pq)³)`.
pub fn d_star(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    paired_sum(p, q, |pi, qi| {
        let d = pi - qi;
        let d2 = d * d;
        let pq = pi * qi;
        d2 * d2 / (pq * pq * pq).sqrt()
    })
}
