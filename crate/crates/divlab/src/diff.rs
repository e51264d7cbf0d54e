//! The fifteen nonnegative difference divergences D₁–D₁₅.
//!
//! Each one is a coefficient-weighted difference of two base measures,
//! e.g. `D_TJ = T − J/8`, chosen so that its generating function stays
//! convex: every closed-form second derivative below carries a `(x−1)²`
//! or `(√x−1)²` factor and is nonnegative on all of `(0, ∞)`.
//!
//! Values are computed from the two base measures directly, reusing the
//! compensated closed-form kernels. Evaluating the difference generating
//! function through the Csiszár engine gives the same number and exists
//! as a test oracle only.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dist::ProbabilityDistribution;
use crate::measures::{self, MeasureError, MeasureId};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DiffError {
    #[error("difference second derivatives are defined for x > 0; got {x}")]
    Domain { x: f64 },
}

/// Identifier of a difference divergence, in the canonical D₁..D₁₅ order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DifferenceId {
    /// D₁ = Ψ/16 − T
    PsiT,
    /// D₂ = Ψ/16 − J/8
    PsiJ,
    /// D₃ = Ψ/16 − h
    PsiH,
    /// D₄ = Ψ/16 − I
    PsiI,
    /// D₅ = Ψ/16 − Δ/4
    PsiDelta,
    /// D₆ = T − J/8
    TJ,
    /// D₇ = T − h
    TH,
    /// D₈ = T − I
    TI,
    /// D₉ = T − Δ/4
    TDelta,
    /// D₁₀ = J/8 − h
    JH,
    /// D₁₁ = J/8 − I
    JI,
    /// D₁₂ = J/8 − Δ/4
    JDelta,
    /// D₁₃ = h − I
    HI,
    /// D₁₄ = h − Δ/4
    HDelta,
    /// D₁₅ = I − Δ/4
    IDelta,
}

impl DifferenceId {
    pub const ALL: [DifferenceId; 15] = [
        DifferenceId::PsiT,
        DifferenceId::PsiJ,
        DifferenceId::PsiH,
        DifferenceId::PsiI,
        DifferenceId::PsiDelta,
        DifferenceId::TJ,
        DifferenceId::TH,
        DifferenceId::TI,
        DifferenceId::TDelta,
        DifferenceId::JH,
        DifferenceId::JI,
        DifferenceId::JDelta,
        DifferenceId::HI,
        DifferenceId::HDelta,
        DifferenceId::IDelta,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            DifferenceId::PsiT => "D_PSIT",
            DifferenceId::PsiJ => "D_PSIJ",
            DifferenceId::PsiH => "D_PSIH",
            DifferenceId::PsiI => "D_PSII",
            DifferenceId::PsiDelta => "D_PSIDELTA",
            DifferenceId::TJ => "D_TJ",
            DifferenceId::TH => "D_TH",
            DifferenceId::TI => "D_TI",
            DifferenceId::TDelta => "D_TDELTA",
            DifferenceId::JH => "D_JH",
            DifferenceId::JI => "D_JI",
            DifferenceId::JDelta => "D_JDELTA",
            DifferenceId::HI => "D_HI",
            DifferenceId::HDelta => "D_HDELTA",
            DifferenceId::IDelta => "D_IDELTA",
        }
    }

    pub fn parse(key: &str) -> Option<DifferenceId> {
        let upper = key.trim().to_ascii_uppercase();
        DifferenceId::ALL.iter().copied().find(|d| d.key() == upper)
    }

    /// 1-based position in the D₁..D₁₅ numbering.
    pub fn ordinal(&self) -> u8 {
        DifferenceId::ALL.iter().position(|d| d == self).unwrap() as u8 + 1
    }
}

impl std::fmt::Display for DifferenceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

/// Coefficient pair defining a difference divergence. All coefficients are
/// powers of two, so they are exact as floats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferenceSpec {
    pub id: DifferenceId,
    pub minuend: (MeasureId, f64),
    pub subtrahend: (MeasureId, f64),
}

/// The defining coefficient pair of a difference divergence.
pub fn spec(id: DifferenceId) -> DifferenceSpec {
    use DifferenceId::*;
    use MeasureId::*;
    let (minuend, subtrahend) = match id {
        PsiT => ((SymChiSquare, 1.0 / 16.0), (AgMean, 1.0)),
        PsiJ => ((SymChiSquare, 1.0 / 16.0), (JDivergence, 1.0 / 8.0)),
        PsiH => ((SymChiSquare, 1.0 / 16.0), (Hellinger, 1.0)),
        PsiI => ((SymChiSquare, 1.0 / 16.0), (JensenShannon, 1.0)),
        PsiDelta => ((SymChiSquare, 1.0 / 16.0), (Triangular, 1.0 / 4.0)),
        TJ => ((AgMean, 1.0), (JDivergence, 1.0 / 8.0)),
        TH => ((AgMean, 1.0), (Hellinger, 1.0)),
        TI => ((AgMean, 1.0), (JensenShannon, 1.0)),
        TDelta => ((AgMean, 1.0), (Triangular, 1.0 / 4.0)),
        JH => ((JDivergence, 1.0 / 8.0), (Hellinger, 1.0)),
        JI => ((JDivergence, 1.0 / 8.0), (JensenShannon, 1.0)),
        JDelta => ((JDivergence, 1.0 / 8.0), (Triangular, 1.0 / 4.0)),
        HI => ((Hellinger, 1.0), (JensenShannon, 1.0)),
        HDelta => ((Hellinger, 1.0), (Triangular, 1.0 / 4.0)),
        IDelta => ((JensenShannon, 1.0), (Triangular, 1.0 / 4.0)),
    };
    DifferenceSpec { id, minuend, subtrahend }
}

/// Evaluates a difference divergence as the coefficient-weighted
/// difference of its two base measures.
pub fn difference_value(
    id: DifferenceId,
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MeasureError> {
    let s = spec(id);
    let a = measures::evaluate(s.minuend.0, p, q)?.value;
    let b = measures::evaluate(s.subtrahend.0, p, q)?.value;
    Ok(s.minuend.1 * a - s.subtrahend.1 * b)
}

/// Closed-form second derivative of the difference generating function.
pub fn second_derivative(id: DifferenceId, x: f64) -> Result<f64, DiffError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(DiffError::Domain { x });
    }
    Ok(second_derivative_unchecked(id, x))
}

pub(crate) fn second_derivative_unchecked(id: DifferenceId, x: f64) -> f64 {
    let d = x - 1.0;
    let d2 = d * d;
    let s = x + 1.0;
    let x2 = x * x;
    let x3 = x2 * x;
    match id {
        DifferenceId::PsiT => d2 * (x2 + x + 1.0) / (8.0 * x3 * s),
        DifferenceId::PsiJ => d2 * s / (8.0 * x3),
        DifferenceId::PsiH => {
            let r = x * x.sqrt() - 1.0;
            r * r / (8.0 * x3)
        }
        DifferenceId::PsiI => d2 * (x2 + 3.0 * x + 1.0) / (8.0 * x3 * s),
        DifferenceId::PsiDelta => {
            let quartic = x2 * x2 + 5.0 * x3 + 12.0 * x2 + 5.0 * x + 1.0;
            d2 * quartic / (8.0 * x3 * s * s * s)
        }
        DifferenceId::TJ => d2 / (8.0 * x2 * s),
        DifferenceId::TH => {
            let r = x.sqrt();
            let rm = r - 1.0;
            rm * rm * (x + r + 1.0) / (4.0 * x2 * s)
        }
        DifferenceId::TI => d2 / (4.0 * x2 * s),
        DifferenceId::TDelta => d2 * (x2 + 4.0 * x + 1.0) / (4.0 * x2 * s * s * s),
        DifferenceId::JH => {
            let rm = x.sqrt() - 1.0;
            rm * rm / (8.0 * x2)
        }
        DifferenceId::JI => d2 / (8.0 * x2 * s),
        DifferenceId::JDelta => d2 * (x2 + 6.0 * x + 1.0) / (8.0 * x2 * s * s * s),
        DifferenceId::HI => {
            let rm = x.sqrt() - 1.0;
            rm * rm / (4.0 * x * x.sqrt() * s)
        }
        DifferenceId::HDelta => {
            let r = x.sqrt();
            let rm = r - 1.0;
            let rp = r + 1.0;
            rm * rm * (rp * rp * s + 4.0 * x) / (4.0 * x * x.sqrt() * s * s * s)
        }
        DifferenceId::IDelta => d2 / (2.0 * x * s * s * s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csiszar::{catalog, GeneratorId};
    use crate::dist::{PairSampler, ProbabilityDistribution};
    use crate::sum::CompensatedSum;

    #[test]
    fn ordinals_follow_the_canonical_listing() {
        assert_eq!(DifferenceId::PsiT.ordinal(), 1);
        assert_eq!(DifferenceId::TJ.ordinal(), 6);
        assert_eq!(DifferenceId::JDelta.ordinal(), 12);
        assert_eq!(DifferenceId::IDelta.ordinal(), 15);
    }

    #[test]
    fn second_derivative_reference_values() {
        assert_eq!(second_derivative(DifferenceId::TJ, 1.0).unwrap(), 0.0);
        let v = second_derivative(DifferenceId::TJ, 2.0).unwrap();
        assert!((v - 1.0 / 96.0).abs() <= 1e-18, "got {v}");
        let v = second_derivative(DifferenceId::PsiDelta, 2.0).unwrap();
        assert!((v - 115.0 / 1728.0).abs() <= 1e-16, "got {v}");
    }

    #[test]
    fn second_derivative_rejects_nonpositive_x() {
        assert!(matches!(
            second_derivative(DifferenceId::TJ, 0.0),
            Err(DiffError::Domain { .. })
        ));
        assert!(second_derivative(DifferenceId::TJ, -1.0).is_err());
        assert!(second_derivative(DifferenceId::TJ, f64::NAN).is_err());
    }

    #[test]
    fn all_second_derivatives_vanish_at_one() {
        for id in DifferenceId::ALL {
            assert_eq!(second_derivative(id, 1.0).unwrap(), 0.0, "{id}");
        }
    }

    #[test]
    fn second_derivatives_are_nonnegative_on_log_grid() {
        for id in DifferenceId::ALL {
            for k in 0..=10_000 {
                let x = 10f64.powf(-6.0 + 12.0 * k as f64 / 10_000.0);
                let v = second_derivative(id, x).unwrap();
                assert!(v >= -1e-12, "{id} at {x}: {v}");
            }
        }
    }

    #[test]
    fn closed_form_matches_coefficient_combination() {
        // Near x = 1 both coefficient terms cancel to roughly machine
        // noise, so the comparison carries an additive floor of a few ulps
        // of the cancelled terms on top of the relative tolerance.
        for id in DifferenceId::ALL {
            let s = spec(id);
            let f1 = catalog(GeneratorId::for_measure(s.minuend.0).unwrap());
            let f2 = catalog(GeneratorId::for_measure(s.subtrahend.0).unwrap());
            for k in 0..=2000 {
                let x = 10f64.powf(-6.0 + 12.0 * k as f64 / 2000.0);
                let t1 = s.minuend.1 * f1.d2(x).unwrap();
                let t2 = s.subtrahend.1 * f2.d2(x).unwrap();
                let combo = t1 - t2;
                let closed = second_derivative(id, x).unwrap();
                let tol = 1e-10 * closed.abs().max(combo.abs()) + 1e-15 * (t1.abs() + t2.abs());
                assert!(
                    (closed - combo).abs() <= tol,
                    "{id} at {x}: closed {closed} vs combo {combo}"
                );
            }
        }
    }

    #[test]
    fn values_vanish_on_identical_pair() {
        let d = ProbabilityDistribution::new(&[0.4, 0.1, 0.5]).unwrap();
        for id in DifferenceId::ALL {
            assert_eq!(difference_value(id, &d, &d).unwrap(), 0.0, "{id}");
        }
    }

    #[test]
    fn worked_pair_value() {
        let p = ProbabilityDistribution::new(&[0.5, 0.5]).unwrap();
        let q = ProbabilityDistribution::new(&[0.25, 0.75]).unwrap();
        let v = difference_value(DifferenceId::PsiT, &p, &q).unwrap();
        assert!((v - 0.0016171408601817076).abs() <= 1e-15, "got {v}");
    }

    #[test]
    fn ji_equals_tj_on_random_pairs() {
        let sampler = PairSampler::new(2, (2, 32), 1e4).unwrap();
        for index in 0..100 {
            let (p, q) = sampler.pair(index);
            let ji = difference_value(DifferenceId::JI, &p, &q).unwrap();
            let tj = difference_value(DifferenceId::TJ, &p, &q).unwrap();
            assert!(
                (ji - tj).abs() <= 1e-12 * ji.abs().max(1.0),
                "pair {index}: {ji} vs {tj}"
            );
        }
    }

    #[test]
    fn values_are_nonnegative_on_random_pairs() {
        let sampler = PairSampler::new(14, (2, 64), 1e6).unwrap();
        for index in 0..200 {
            let (p, q) = sampler.pair(index);
            for id in DifferenceId::ALL {
                let v = difference_value(id, &p, &q).unwrap();
                assert!(v >= -1e-14, "{id} at pair {index}: {v}");
            }
        }
    }

    #[test]
    fn engine_route_agrees_with_measure_route() {
        // Oracle path: evaluate Σ q·f_diff(p/q) with the difference
        // generating function assembled from the catalog.
        let sampler = PairSampler::new(33, (2, 24), 1e3).unwrap();
        for index in 0..40 {
            let (p, q) = sampler.pair(index);
            for id in DifferenceId::ALL {
                let s = spec(id);
                let f1 = catalog(GeneratorId::for_measure(s.minuend.0).unwrap());
                let f2 = catalog(GeneratorId::for_measure(s.subtrahend.0).unwrap());
                let mut acc = CompensatedSum::new();
                for (&pi, &qi) in p.weights().iter().zip(q.weights()) {
                    let x = pi / qi;
                    acc.add(qi * (s.minuend.1 * f1.eval(x).unwrap()
                        - s.subtrahend.1 * f2.eval(x).unwrap()));
                }
                let via_engine = acc.value();
                let via_measures = difference_value(id, &p, &q).unwrap();
                assert!(
                    (via_engine - via_measures).abs() <= 1e-12 * via_measures.abs().max(1.0),
                    "{id} at pair {index}: engine {via_engine} vs measures {via_measures}"
                );
            }
        }
    }
}
