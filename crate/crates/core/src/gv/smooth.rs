use std::fmt;

use serde::{Deserialize, Serialize};

use super::factor::GroupKind;
use super::variety::GvVariety;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifierVerdict {
    Smooth,
    Singular,
    OutOfClassification,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroebnerVerdict {
    Smooth,
    Singular,
    BudgetExceeded,
}

/// Classifier and Gröbner verdicts with their agreement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessVerdict {
    pub classifier: ClassifierVerdict,
    pub groebner: GroebnerVerdict,
    /// Set when both sides are decisive.
    pub agree: Option<bool>,
}

impl fmt::Display for ClassifierVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassifierVerdict::Smooth => "smooth",
            ClassifierVerdict::Singular => "singular",
            ClassifierVerdict::OutOfClassification => "out-of-classification",
        })
    }
}

impl fmt::Display for GroebnerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroebnerVerdict::Smooth => "smooth",
            GroebnerVerdict::Singular => "singular",
            GroebnerVerdict::BudgetExceeded => "budget-exceeded",
        })
    }
}

/// Case rules for smoothness.
///
/// SL: `G_{L,i,a}` is smooth for `i < n`, and for `i = n` exactly when
/// `a ≠ 1`. Sp: smooth for odd `K`; for even `K` singular exactly when
/// `a = e_n`.
pub fn classify(g: &GvVariety) -> ClassifierVerdict {
    match g.kind {
        GroupKind::Sl => match g.component {
            Some(i) if i < g.n => ClassifierVerdict::Smooth,
            Some(_) if g.target[0].is_one() => ClassifierVerdict::Singular,
            Some(_) => ClassifierVerdict::Smooth,
            None => ClassifierVerdict::OutOfClassification,
        },
        GroupKind::Sp if g.k % 2 == 1 => ClassifierVerdict::Smooth,
        GroupKind::Sp => {
            let last = g.target.len() - 1;
            let is_en = g.target.iter().enumerate().all(|(j, v)| if j == last { v.is_one() } else { v.is_zero() });
            if is_en {
                ClassifierVerdict::Singular
            } else {
                ClassifierVerdict::Smooth
            }
        }
    }
}

/// Singular iff the relations and the maximal minors of their Jacobian
/// have a common zero.
pub fn groebner_smoothness(g: &GvVariety) -> Result<GroebnerVerdict> {
    let x = &g.presentation;
    let minors = x.jacobian()?.maximal_minors()?;
    match x.relations().with_generators(minors)?.contains_one() {
        Ok(true) => Ok(GroebnerVerdict::Smooth),
        Ok(false) => Ok(GroebnerVerdict::Singular),
        Err(Error::Budget(_)) => Ok(GroebnerVerdict::BudgetExceeded),
        Err(e) => Err(e),
    }
}

pub fn smoothness_check(g: &GvVariety) -> Result<SmoothnessVerdict> {
    let classifier = classify(g);
    let groebner = groebner_smoothness(g)?;
    let agree = match (classifier, groebner) {
        (ClassifierVerdict::OutOfClassification, _) | (_, GroebnerVerdict::BudgetExceeded) => None,
        (c, gr) => Some((c == ClassifierVerdict::Smooth) == (gr == GroebnerVerdict::Smooth)),
    };
    Ok(SmoothnessVerdict { classifier, groebner, agree })
}

/// `e_n` of length `n`.
pub fn unit_vector(n: usize) -> Vec<Rational> {
    (0..n).map(|j| if j + 1 == n { Rational::one() } else { Rational::zero() }).collect()
}
