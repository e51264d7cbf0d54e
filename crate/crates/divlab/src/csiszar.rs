//! Generic Csiszár f-divergence engine and the generating-function catalog.
//!
//! For a convex `f` normalized by `f(1) = 0`, the f-divergence is
//! `C_f(P‖Q) = Σ qᵢ f(pᵢ/qᵢ)`; it is nonnegative and jointly convex in
//! `(P, Q)`. Each closed-form measure in [`crate::measures`] is `C_f` for
//! one generator below, and the second derivatives drive every bound
//! constant in [`crate::bounds`].
//!
//! Closed-form derivatives are the primary path. The bound estimation
//! needs `f″` accurate both near `x = 1` and at extreme `x`, exactly where
//! finite differencing loses digits, so differencing is used only as a
//! test oracle against these forms.
//!
//! The quartic generator's derivatives, differentiated once by hand from
//! `f(x) = (x−1)⁴ x^(−3/2)` and frozen here:
//!
//! ```text
//! f′(x) = (x−1)³ (5x+3) / (2 x^(5/2))
//! f″(x) = 3 (x−1)² (5x²+6x+5) / (4 x^(7/2))
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dist::ProbabilityDistribution;
use crate::measures::MeasureId;
use crate::sum::CompensatedSum;

/// Arguments below this are treated as outside the domain instead of being
/// allowed to produce silent infinities.
pub const MIN_ARGUMENT: f64 = 1e-300;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CsiszarError {
    #[error("generating functions are defined for x > 0; got {x}")]
    Domain { x: f64 },
    #[error("distributions have different atom counts: {p_atoms} vs {q_atoms}")]
    DimensionMismatch { p_atoms: usize, q_atoms: usize },
}

/// Identifier of a generating function in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorId {
    /// f(x) = ½(√x − 1)², giving the Hellinger discrimination.
    Hellinger,
    /// f(x) = (x − 1)²/(x + 1), giving the triangular discrimination.
    Triangular,
    /// f(x) = (x − 1)²(x + 1)/x, giving the symmetric chi-square.
    SymChiSquare,
    /// f(x) = (x − 1) ln x, giving the J-divergence.
    JDivergence,
    /// f(x) = (x/2) ln x + ((x + 1)/2) ln(2/(x + 1)), giving Jensen-Shannon.
    JensenShannon,
    /// f(x) = ((x + 1)/2) ln((x + 1)/(2√x)), giving the AG-mean divergence.
    AgMean,
    /// f(x) = (x − 1)⁴/x^(3/2), giving the quartic measure D*.
    QuarticDStar,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 7] = [
        GeneratorId::Hellinger,
        GeneratorId::Triangular,
        GeneratorId::SymChiSquare,
        GeneratorId::JDivergence,
        GeneratorId::JensenShannon,
        GeneratorId::AgMean,
        GeneratorId::QuarticDStar,
    ];

    /// The six strictly convex base generators (everything but the quartic,
    /// whose second derivative vanishes at x = 1).
    pub const BASE: [GeneratorId; 6] = [
        GeneratorId::Hellinger,
        GeneratorId::Triangular,
        GeneratorId::SymChiSquare,
        GeneratorId::JDivergence,
        GeneratorId::JensenShannon,
        GeneratorId::AgMean,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            GeneratorId::Hellinger => "F_H",
            GeneratorId::Triangular => "F_DELTA",
            GeneratorId::SymChiSquare => "F_PSI",
            GeneratorId::JDivergence => "F_J",
            GeneratorId::JensenShannon => "F_I",
            GeneratorId::AgMean => "F_T",
            GeneratorId::QuarticDStar => "DSTAR",
        }
    }

    pub fn parse(key: &str) -> Option<GeneratorId> {
        let upper = key.trim().to_ascii_uppercase();
        if upper == "F_DSTAR" {
            return Some(GeneratorId::QuarticDStar);
        }
        GeneratorId::ALL.iter().copied().find(|g| g.key() == upper)
    }

    /// The closed-form measure this generator reproduces through the engine.
    pub fn measure(&self) -> MeasureId {
        match self {
            GeneratorId::Hellinger => MeasureId::Hellinger,
            GeneratorId::Triangular => MeasureId::Triangular,
            GeneratorId::SymChiSquare => MeasureId::SymChiSquare,
            GeneratorId::JDivergence => MeasureId::JDivergence,
            GeneratorId::JensenShannon => MeasureId::JensenShannon,
            GeneratorId::AgMean => MeasureId::AgMean,
            GeneratorId::QuarticDStar => MeasureId::DStar,
        }
    }

    /// Inverse of [`GeneratorId::measure`] for the measures that have one.
    pub fn for_measure(measure: MeasureId) -> Option<GeneratorId> {
        GeneratorId::ALL.iter().copied().find(|g| g.measure() == measure)
    }
}

impl std::fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

/// A generating function with closed-form first and second derivatives.
#[derive(Debug, Clone, Copy)]
pub struct GeneratingFunction {
    pub id: GeneratorId,
    eval: fn(f64) -> f64,
    d1: fn(f64) -> f64,
    d2: fn(f64) -> f64,
}

impl GeneratingFunction {
    pub fn eval(&self, x: f64) -> Result<f64, CsiszarError> {
        check_domain(x)?;
        Ok((self.eval)(x))
    }

    pub fn d1(&self, x: f64) -> Result<f64, CsiszarError> {
        check_domain(x)?;
        Ok((self.d1)(x))
    }

    pub fn d2(&self, x: f64) -> Result<f64, CsiszarError> {
        check_domain(x)?;
        Ok((self.d2)(x))
    }
}

#[inline]
fn check_domain(x: f64) -> Result<(), CsiszarError> {
    if !x.is_finite() || x < MIN_ARGUMENT {
        return Err(CsiszarError::Domain { x });
    }
    Ok(())
}

/// Looks up a generating function by id.
pub fn catalog(id: GeneratorId) -> GeneratingFunction {
    match id {
        GeneratorId::Hellinger => GeneratingFunction {
            id,
            eval: |x| {
                let d = x.sqrt() - 1.0;
                0.5 * d * d
            },
            d1: |x| {
                let s = x.sqrt();
                (s - 1.0) / (2.0 * s)
            },
            d2: |x| 0.25 / (x * x.sqrt()),
        },
        GeneratorId::Triangular => GeneratingFunction {
            id,
            eval: |x| {
                let d = x - 1.0;
                d * d / (x + 1.0)
            },
            d1: |x| {
                let s = x + 1.0;
                (x - 1.0) * (x + 3.0) / (s * s)
            },
            d2: |x| {
                let s = x + 1.0;
                8.0 / (s * s * s)
            },
        },
        GeneratorId::SymChiSquare => GeneratingFunction {
            id,
            eval: |x| {
                let d = x - 1.0;
                d * d * (x + 1.0) / x
            },
            d1: |x| (x - 1.0) * (2.0 * x * x + x + 1.0) / (x * x),
            d2: |x| 2.0 * (x * x * x + 1.0) / (x * x * x),
        },
        GeneratorId::JDivergence => GeneratingFunction {
            id,
            eval: |x| (x - 1.0) * x.ln(),
            d1: |x| 1.0 - 1.0 / x + x.ln(),
            d2: |x| (x + 1.0) / (x * x),
        },
        GeneratorId::JensenShannon => GeneratingFunction {
            id,
            eval: |x| 0.5 * x * x.ln() + 0.5 * (x + 1.0) * (2.0 / (x + 1.0)).ln(),
            d1: |x| 0.5 * (2.0 * x / (x + 1.0)).ln(),
            d2: |x| 0.5 / (x * (x + 1.0)),
        },
        GeneratorId::AgMean => GeneratingFunction {
            id,
            eval: |x| {
                let s = x + 1.0;
                0.5 * s * (s / (2.0 * x.sqrt())).ln()
            },
            d1: |x| 0.25 * (1.0 - 1.0 / x + 2.0 * ((x + 1.0) / (2.0 * x.sqrt())).ln()),
            d2: |x| (x * x + 1.0) / (4.0 * x * x * (x + 1.0)),
        },
        GeneratorId::QuarticDStar => GeneratingFunction {
            id,
            eval: |x| {
                let d = x - 1.0;
                let d2 = d * d;
                d2 * d2 / (x * x.sqrt())
            },
            d1: |x| {
                let d = x - 1.0;
                d * d * d * (5.0 * x + 3.0) / (2.0 * x * x * x.sqrt())
            },
            d2: |x| {
                let d = x - 1.0;
                3.0 * d * d * (5.0 * x * x + 6.0 * x + 5.0) / (4.0 * x * x * x * x.sqrt())
            },
        },
    }
}

/// Second derivative of a cataloged generator, by id.
pub fn second_derivative(id: GeneratorId, x: f64) -> Result<f64, CsiszarError> {
    catalog(id).d2(x)
}

/// `C_f(P‖Q) = Σ qᵢ f(pᵢ/qᵢ)` with compensated summation.
pub fn csiszar_divergence(
    f: &GeneratingFunction,
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, CsiszarError> {
    if p.n() != q.n() {
        return Err(CsiszarError::DimensionMismatch { p_atoms: p.n(), q_atoms: q.n() });
    }
    let mut acc = CompensatedSum::new();
    for (&pi, &qi) in p.weights().iter().zip(q.weights()) {
        acc.add(qi * f.eval(pi / qi)?);
    }
    Ok(acc.value())
}
