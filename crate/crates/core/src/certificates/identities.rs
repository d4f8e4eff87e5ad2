use std::collections::BTreeMap;

use super::tree::LABEL_DEGREE_CAP;
use super::tuple::TupleCertificate;
use crate::derivations::{kernel_degree_unchecked, VarietyPresentation, VectorField};
use crate::error::{invalid, precondition, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Checks `[aθ, φ] − [θ, aφ] = −φ(a)·θ` modulo the variety. Errors when
/// `a` is not in the kernel of `θ`.
pub fn lemma1_check(theta: &VectorField, phi: &VectorField, a: &Polynomial, x: &VarietyPresentation) -> Result<bool> {
    if !x.is_zero(&theta.apply(a)?)? {
        return Err(precondition("label is not in the kernel of the first field"));
    }
    let lhs = theta.times(a)?.bracket(phi)?.sub(&theta.bracket(&phi.times(a)?)?)?;
    let rhs = theta.times(&phi.apply(a)?)?.neg();
    lhs.congruent(&rhs, x)
}

/// Outcome of the bracket recursion over an admissible tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WkRecursion {
    /// Field obtained bottom-up from the double-bracket formula.
    pub recursion: VectorField,
    /// `(∏_{φ ≠ root} f^φ·φ(a_φ))·f^root·root`.
    pub closed_form: VectorField,
    /// `c` with `recursion ≡ c·closed_form`, when such a rational exists.
    pub sign: Option<Rational>,
    /// For every non-root vertex ψ with label `a` toward θ: after replacing
    /// ψ by its recursively built multiple ψ̃, the label still satisfies
    /// `a ∈ (ker ψ̃² \ ker ψ̃) ∩ ker θ`.
    pub replacement_admissible: bool,
}

impl WkRecursion {
    /// Recursion and closed form agree up to one global sign.
    pub fn agrees_up_to_sign(&self) -> bool {
        self.sign.as_ref().is_some_and(|c| c.is_one() || (-c).is_one())
    }
}

/// Runs the bracket recursion on the certificate's tree with the given
/// kernel functions (missing vertices use 1). Each vertex starts from
/// `f^v·v`; a child subtree ψ̃ with label `a` updates `W ← [aψ̃, W] − [ψ̃, aW]`.
pub fn wk_recursion(cert: &TupleCertificate, choices: &BTreeMap<String, Polynomial>) -> Result<WkRecursion> {
    let x = &cert.variety;
    if let Some(e) = cert.tree.shape_error(&cert.field_names) {
        return Err(invalid(format!("tree is not admissible: {e}")));
    }
    for (name, f) in choices {
        let Some(theta) = cert.field(name) else {
            return Err(invalid(format!("kernel choice for unknown field `{name}`")));
        };
        if !kernel_degree_unchecked(f, theta, x, LABEL_DEGREE_CAP)?.at_most(1) {
            return Err(precondition(format!("kernel choice for `{name}` is not in its kernel")));
        }
    }
    let mut ok = true;
    let (recursion, factor) = process(cert, choices, &cert.tree.root, &mut ok)?;
    let closed_form = cert.field(&cert.tree.root).unwrap().times(&factor)?.reduce(x)?;
    let sign = closed_form.ratio_to(&recursion, x)?;
    Ok(WkRecursion { recursion, closed_form, sign, replacement_admissible: ok })
}

fn choice(cert: &TupleCertificate, choices: &BTreeMap<String, Polynomial>, v: &str) -> Polynomial {
    choices.get(v).cloned().unwrap_or_else(|| Polynomial::one(cert.variety.ambient()))
}

/// Returns the recursive field for the subtree at `v` and the multiplier
/// `c` of its closed form `c·v`.
fn process(
    cert: &TupleCertificate,
    choices: &BTreeMap<String, Polynomial>,
    v: &str,
    ok: &mut bool,
) -> Result<(VectorField, Polynomial)> {
    let x = &cert.variety;
    let field = cert.field(v).unwrap();
    let fv = choice(cert, choices, v);
    let mut w = field.times(&fv)?;
    let mut factor = fv;
    for e in cert.tree.children(v) {
        let (psi_tilde, c) = process(cert, choices, &e.child, ok)?;
        let a = &e.label;
        let psi_deg = kernel_degree_unchecked(a, &psi_tilde, x, LABEL_DEGREE_CAP)?;
        let theta_deg = kernel_degree_unchecked(a, field, x, LABEL_DEGREE_CAP)?;
        if psi_deg.value() != Some(2) || !theta_deg.at_most(1) {
            *ok = false;
        }
        let next = psi_tilde.times(a)?.bracket(&w)?.sub(&psi_tilde.bracket(&w.times(a)?)?)?;
        w = next.reduce(x)?;
        let child = cert.field(&e.child).unwrap();
        factor = x.normal_form(&(&factor * &(&c * &child.apply(a)?)))?;
    }
    Ok((w, factor))
}
