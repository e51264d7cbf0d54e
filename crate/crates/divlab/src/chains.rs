//! Named inequality chains among the divergence measures.
//!
//! A chain is an ordered list of expressions, each a rational-coefficient
//! linear combination of the seven base values (h, Δ, Ψ, J, I, T, D*).
//! On every distribution pair, an ordered chain must be nondecreasing
//! left to right; an equality chain must be constant. Slack for link `k`
//! is `eₖ₊₁ − eₖ`; tolerances are scaled by the largest expression in the
//! chain so they stay meaningful for near-identical pairs, where every
//! term is tiny.

use crate::dist::ProbabilityDistribution;
use crate::measures::{self, MeasureError, MeasureId};

/// An ordered link may run this far negative, times the chain scale,
/// before it counts as a violation.
pub const ORDERED_SLACK_TOL: f64 = 1e-10;

/// An equality link may deviate this much, times the chain scale.
pub const EQUALITY_TOL: f64 = 1e-12;

/// The seven base values every chain expression is built from, computed
/// once per pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseMeasures {
    pub hellinger: f64,
    pub triangular: f64,
    pub sym_chi_square: f64,
    pub j_divergence: f64,
    pub jensen_shannon: f64,
    pub ag_mean: f64,
    pub d_star: f64,
}

impl BaseMeasures {
    pub fn compute(
        p: &ProbabilityDistribution,
        q: &ProbabilityDistribution,
    ) -> Result<Self, MeasureError> {
        Ok(Self {
            hellinger: measures::hellinger(p, q)?,
            triangular: measures::triangular(p, q)?,
            sym_chi_square: measures::symmetric_chi_square(p, q)?,
            j_divergence: measures::j_divergence(p, q)?,
            jensen_shannon: measures::jensen_shannon(p, q)?,
            ag_mean: measures::ag_mean(p, q)?,
            d_star: measures::d_star(p, q)?,
        })
    }

    fn value(&self, id: MeasureId) -> f64 {
        match id {
            MeasureId::Hellinger => self.hellinger,
            MeasureId::Triangular => self.triangular,
            MeasureId::SymChiSquare => self.sym_chi_square,
            MeasureId::JDivergence => self.j_divergence,
            MeasureId::JensenShannon => self.jensen_shannon,
            MeasureId::AgMean => self.ag_mean,
            MeasureId::DStar => self.d_star,
            _ => panic!("{id} is not a chain base measure"),
        }
    }
}

/// One `(num/den)·measure` term of a chain expression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub measure: MeasureId,
    pub num: i64,
    pub den: i64,
}

/// A rational-coefficient linear combination of base measures.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearExpr {
    pub label: String,
    pub terms: Vec<Term>,
}

impl LinearExpr {
    pub fn eval(&self, base: &BaseMeasures) -> f64 {
        self.terms
            .iter()
            .map(|t| (t.num as f64 / t.den as f64) * base.value(t.measure))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    /// Links must satisfy lhs ≤ rhs.
    Ordered,
    /// Links must satisfy lhs = rhs.
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub id: &'static str,
    pub kind: ChainKind,
    pub exprs: Vec<LinearExpr>,
}

/// One checked link of a chain on one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkCheck {
    pub link: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// Result of checking one chain on one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOutcome {
    pub min_slack: f64,
    pub violations: Vec<LinkCheck>,
}

impl Chain {
    /// Number of links (adjacent expression pairs).
    pub fn links(&self) -> usize {
        self.exprs.len() - 1
    }

    /// Checks every link on one pair's base values.
    pub fn check(&self, base: &BaseMeasures) -> ChainOutcome {
        let values: Vec<f64> = self.exprs.iter().map(|e| e.eval(base)).collect();
        let scale = values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let mut min_slack = f64::INFINITY;
        let mut violations = Vec::new();
        for link in 0..values.len() - 1 {
            let lhs = values[link];
            let rhs = values[link + 1];
            let slack = rhs - lhs;
            min_slack = min_slack.min(slack);
            let violated = match self.kind {
                ChainKind::Ordered => slack < -ORDERED_SLACK_TOL * scale,
                ChainKind::Equal => slack.abs() > EQUALITY_TOL * scale,
            };
            if violated {
                violations.push(LinkCheck { link, lhs, rhs, slack });
            }
        }
        ChainOutcome { min_slack, violations }
    }
}

// -- chain construction -------------------------------------------------

fn coeff_label(num: i64, den: i64, symbol: &str) -> String {
    if num == den {
        symbol.to_string()
    } else if den == 1 {
        format!("{num} {symbol}")
    } else {
        format!("{num}/{den} {symbol}")
    }
}

/// Expression from raw `(measure, num, den)` terms.
fn expr(terms: &[(MeasureId, i64, i64)]) -> LinearExpr {
    let label = terms
        .iter()
        .map(|&(m, num, den)| {
            if num < 0 {
                format!("- {}", coeff_label(-num, den, m.key()))
            } else {
                format!("+ {}", coeff_label(num, den, m.key()))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
        .trim_start_matches("+ ")
        .to_string();
    LinearExpr {
        label,
        terms: terms
            .iter()
            .map(|&(measure, num, den)| Term { measure, num, den })
            .collect(),
    }
}

fn zero_expr() -> LinearExpr {
    LinearExpr { label: "0".to_string(), terms: Vec::new() }
}

/// Expression for `(num/den) · D_xy`, expanded onto base measures.
fn diff_expr(id: crate::diff::DifferenceId, num: i64, den: i64) -> LinearExpr {
    let s = crate::diff::spec(id);
    let scale = |coeff: f64| -> (i64, i64) {
        // Difference coefficients are 1, 1/4, 1/8 or 1/16: exact dyadics.
        let inv = (1.0 / coeff) as i64;
        (num, den * inv)
    };
    let (n1, d1) = scale(s.minuend.1);
    let (n2, d2) = scale(s.subtrahend.1);
    let mut e = expr(&[(s.minuend.0, n1, d1), (s.subtrahend.0, -n2, d2)]);
    e.label = coeff_label(num, den, id.key());
    e
}

/// All chains audited by this crate, in report order.
pub fn chain_definitions() -> Vec<Chain> {
    use crate::diff::DifferenceId::*;
    use MeasureId::{AgMean as T, DStar as DS, Hellinger as H, JDivergence as J,
        JensenShannon as I, SymChiSquare as Psi, Triangular as Delta};

    let ordered = |id, exprs| Chain { id, kind: ChainKind::Ordered, exprs };

    vec![
        // Δ/4 ≤ I ≤ h ≤ J/8 ≤ T ≤ Ψ/16
        ordered("BASIC", vec![
            expr(&[(Delta, 1, 4)]),
            expr(&[(I, 1, 1)]),
            expr(&[(H, 1, 1)]),
            expr(&[(J, 1, 8)]),
            expr(&[(T, 1, 1)]),
            expr(&[(Psi, 1, 16)]),
        ]),
        // The four orderings that follow immediately from BASIC.
        ordered("OBVIOUS_PSI", vec![
            diff_expr(PsiT, 1, 1),
            diff_expr(PsiJ, 1, 1),
            diff_expr(PsiH, 1, 1),
            diff_expr(PsiI, 1, 1),
            diff_expr(PsiDelta, 1, 1),
        ]),
        ordered("OBVIOUS_T", vec![
            diff_expr(TJ, 1, 1),
            diff_expr(TH, 1, 1),
            diff_expr(TI, 1, 1),
            diff_expr(TDelta, 1, 1),
        ]),
        ordered("OBVIOUS_J", vec![
            diff_expr(JH, 1, 1),
            diff_expr(JI, 1, 1),
            diff_expr(JDelta, 1, 1),
        ]),
        ordered("OBVIOUS_H", vec![diff_expr(HI, 1, 1), diff_expr(HDelta, 1, 1)]),
        // D_JI = D_TI/2 = D_TJ, a consequence of J = 4(I + T).
        Chain {
            id: "EQUALITY",
            kind: ChainKind::Equal,
            exprs: vec![diff_expr(JI, 1, 1), diff_expr(TI, 1, 2), diff_expr(TJ, 1, 1)],
        },
        ordered("REFINE_A", vec![
            diff_expr(IDelta, 1, 1),
            diff_expr(HDelta, 2, 3),
            diff_expr(HI, 2, 1),
            diff_expr(TJ, 1, 1),
        ]),
        ordered("REFINE_B", vec![
            diff_expr(IDelta, 1, 1),
            diff_expr(HDelta, 2, 3),
            diff_expr(JDelta, 1, 2),
            diff_expr(TDelta, 1, 3),
            diff_expr(TJ, 1, 1),
        ]),
        ordered("REFINE_C", vec![
            diff_expr(TJ, 1, 1),
            diff_expr(TH, 2, 3),
            diff_expr(JH, 2, 1),
            diff_expr(PsiDelta, 1, 6),
            diff_expr(PsiI, 1, 5),
            diff_expr(PsiH, 2, 9),
            diff_expr(PsiJ, 1, 4),
            diff_expr(PsiT, 1, 3),
        ]),
        // The refined version of BASIC with the mixed middle expressions.
        ordered("FINAL", vec![
            expr(&[(Delta, 1, 4)]),
            expr(&[(I, 1, 1)]),
            expr(&[(H, 2, 3), (Delta, 1, 12)]),
            expr(&[(H, 1, 1)]),
            expr(&[(J, 1, 16), (I, 1, 2)]),
            expr(&[(T, 1, 3), (H, 2, 3)]),
            expr(&[(J, 1, 8)]),
            expr(&[(T, 2, 3), (Delta, 1, 12)]),
            expr(&[(T, 1, 1)]),
            expr(&[(Psi, 1, 64), (J, 3, 32)]),
            expr(&[(Psi, 1, 16)]),
        ]),
        // Two-sided sandwiches pinching one measure between mixtures.
        ordered("REMARK_01", vec![
            expr(&[(I, 1, 1)]),
            expr(&[(H, 2, 3), (Delta, 1, 12)]),
            expr(&[(H, 1, 1)]),
        ]),
        ordered("REMARK_02", vec![
            expr(&[(H, 1, 1)]),
            expr(&[(J, 1, 16), (I, 1, 2)]),
            expr(&[(J, 1, 8)]),
        ]),
        ordered("REMARK_03", vec![
            expr(&[(H, 1, 1)]),
            expr(&[(J, 3, 32), (Delta, 1, 16)]),
            expr(&[(J, 1, 8)]),
        ]),
        ordered("REMARK_04", vec![
            expr(&[(J, 1, 8)]),
            expr(&[(T, 2, 3), (Delta, 1, 12)]),
            expr(&[(T, 1, 1)]),
        ]),
        ordered("REMARK_05", vec![
            expr(&[(H, 1, 1)]),
            expr(&[(T, 1, 3), (H, 2, 3)]),
            expr(&[(J, 1, 8)]),
        ]),
        ordered("REMARK_06", vec![
            expr(&[(J, 3, 2), (Delta, 1, 4)]),
            expr(&[(Psi, 1, 16), (H, 12, 1)]),
        ]),
        ordered("REMARK_07", vec![
            expr(&[(I, 1, 1)]),
            expr(&[(Psi, 1, 96), (Delta, 5, 24)]),
            expr(&[(Psi, 1, 16)]),
        ]),
        ordered("REMARK_08", vec![
            expr(&[(H, 1, 1)]),
            expr(&[(Psi, 1, 160), (I, 9, 10)]),
            expr(&[(Psi, 1, 16)]),
        ]),
        ordered("REMARK_09", vec![
            expr(&[(J, 1, 8)]),
            expr(&[(Psi, 1, 144), (H, 8, 9)]),
            expr(&[(Psi, 1, 16)]),
        ]),
        ordered("REMARK_10", vec![
            expr(&[(T, 1, 1)]),
            expr(&[(Psi, 1, 64), (J, 3, 32)]),
            expr(&[(Psi, 1, 16)]),
        ]),
        // Quartic-capped bounds on the gaps J/2 − Δ and Ψ/2 − J.
        ordered("DRAGOMIR_A", vec![
            zero_expr(),
            expr(&[(J, 1, 2), (Delta, -1, 1)]),
            expr(&[(DS, 1, 12)]),
        ]),
        ordered("DRAGOMIR_B", vec![
            zero_expr(),
            expr(&[(Psi, 1, 2), (J, -1, 1)]),
            expr(&[(DS, 1, 6)]),
        ]),
        ordered("DRAGOMIR_IMPROVED", vec![
            diff_expr(JDelta, 1, 1),
            diff_expr(PsiJ, 1, 2),
            diff_expr(PsiT, 2, 3),
            expr(&[(DS, 1, 96)]),
        ]),
        ordered("EXTRA_A", vec![
            expr(&[(J, 1, 8)]),
            expr(&[(Psi, 1, 192), (H, 1, 1), (Delta, -1, 48)]),
            expr(&[(Psi, 1, 144), (H, 8, 9)]),
            expr(&[(Psi, 1, 16)]),
        ]),
        ordered("EXTRA_B", vec![
            expr(&[(H, 1, 1)]),
            expr(&[(Psi, 1, 160), (I, 9, 10)]),
            expr(&[(Psi, 1, 144), (H, 8, 9)]),
            expr(&[(Psi, 1, 16)]),
        ]),
        ordered("DSTAR_CAP", vec![diff_expr(PsiT, 1, 1), expr(&[(DS, 1, 64)])]),
    ]
}

/// The ids of all defined chains, in report order.
pub fn chain_ids() -> Vec<&'static str> {
    chain_definitions().iter().map(|c| c.id).collect()
}

/// Looks up a subset of chains by id (case-insensitive), preserving report
/// order. Returns `Err` with the first unknown name.
pub fn select_chains(names: &[String]) -> Result<Vec<Chain>, String> {
    let all = chain_definitions();
    let mut wanted: Vec<String> = Vec::new();
    for name in names {
        let upper = name.trim().to_ascii_uppercase();
        if !all.iter().any(|c| c.id == upper) {
            return Err(name.clone());
        }
        if !wanted.contains(&upper) {
            wanted.push(upper);
        }
    }
    Ok(all.into_iter().filter(|c| wanted.iter().any(|w| w == c.id)).collect())
}
