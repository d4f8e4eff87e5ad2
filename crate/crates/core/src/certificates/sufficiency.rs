use serde::{Deserialize, Serialize};

use super::span::{span_at_point, span_everywhere};
use super::tuple::TupleCertificate;
use crate::derivations::{completeness_certificate, VectorField};
use crate::error::{invalid, Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Data for the sufficiency hypotheses: fields `V_i` named from the tuple,
/// functions `f_i` and a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SufficiencyInstance {
    pub fields: Vec<String>,
    pub functions: Vec<Polynomial>,
    pub point: Vec<Rational>,
}

/// Verdicts for one `(V_i, f_i)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub field: String,
    pub function: String,
    /// Completeness certificate variant of `V_i`.
    pub completeness: String,
    pub complete: bool,
    /// Informational: the certificate yields a polynomial flow for `f_i V_i`.
    pub algebraic_flow: bool,
    /// `V_i(f_i) ≡ 0` on the variety.
    pub in_kernel: bool,
    /// `f_i(x) = 0`.
    pub vanishes: bool,
    /// `d_x f_i((θ_1)_x)` as a `num/den` string.
    pub pairing: String,
    pub pairing_nonzero: bool,
}

impl PairVerdict {
    pub fn passed(&self) -> bool {
        self.complete && self.in_kernel && self.vanishes && self.pairing_nonzero
    }
}

/// Per-hypothesis verdicts of the sufficiency check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SufficiencyReport {
    pub root: String,
    pub pairs: Vec<PairVerdict>,
    /// `{V_i}` spans the tangent space at the point.
    pub span_at_point: bool,
    /// Informational: `{θ_1} ∪ {V_i}` spans the tangent bundle.
    pub span_bundle_with_root: Option<bool>,
    /// Informational: `{V_i}` alone spans the tangent bundle.
    pub span_bundle_fields: Option<bool>,
}

impl SufficiencyReport {
    /// All mandatory verdicts pass.
    pub fn passed(&self) -> bool {
        self.span_at_point && self.pairs.iter().all(PairVerdict::passed)
    }

    /// Names of the failing mandatory verdicts, e.g. `pairing[2]`.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.span_at_point {
            out.push("span at point".to_string());
        }
        for (i, p) in self.pairs.iter().enumerate() {
            if !p.complete {
                out.push(format!("complete[{i}]"));
            }
            if !p.in_kernel {
                out.push(format!("kernel[{i}]"));
            }
            if !p.vanishes {
                out.push(format!("vanishes[{i}]"));
            }
            if !p.pairing_nonzero {
                out.push(format!("pairing[{i}]"));
            }
        }
        out
    }

    /// Hypotheses with the bundle-span condition on `{θ_1} ∪ {V_i}` and
    /// polynomial flows for every `f_i V_i`.
    pub fn root_set_passes(&self) -> Option<bool> {
        self.span_bundle_with_root.map(|s| s && self.passed() && self.pairs.iter().all(|p| p.algebraic_flow))
    }

    /// Hypotheses with the bundle-span condition on `{V_i}` alone.
    pub fn field_set_passes(&self) -> Option<bool> {
        self.span_bundle_fields.map(|s| s && self.passed())
    }

    pub fn render(&self) -> String {
        let yes = |b: bool| if b { "PASS" } else { "FAIL" };
        let opt = |b: Option<bool>| match b {
            Some(b) => yes(b),
            None => "SKIP",
        };
        let mut out = String::new();
        for (i, p) in self.pairs.iter().enumerate() {
            out.push_str(&format!("pair[{i}] field {} function {}\n", p.field, p.function));
            out.push_str(&format!("  {:<4} complete[{i}]: {}\n", yes(p.complete), p.completeness));
            out.push_str(&format!("  {:<4} kernel[{i}]\n", yes(p.in_kernel)));
            out.push_str(&format!("  {:<4} vanishes[{i}]\n", yes(p.vanishes)));
            out.push_str(&format!(
                "  {:<4} pairing[{i}]: d_x f({}) = {}\n",
                yes(p.pairing_nonzero),
                self.root,
                p.pairing
            ));
            out.push_str(&format!("  info algebraic flow[{i}]: {}\n", p.algebraic_flow));
        }
        out.push_str(&format!("  {:<4} span at point\n", yes(self.span_at_point)));
        out.push_str(&format!("  info span bundle with {}: {}\n", self.root, opt(self.span_bundle_with_root)));
        out.push_str(&format!("  info span bundle without {}: {}\n", self.root, opt(self.span_bundle_fields)));
        out.push_str(&format!("hypotheses with {}: {}\n", self.root, opt(self.root_set_passes())));
        out.push_str(&format!("hypotheses without {}: {}\n", self.root, opt(self.field_set_passes())));
        out.push_str(&format!("sufficiency: {}\n", yes(self.passed())));
        out
    }
}

/// Checks the sufficiency hypotheses for `(V_i, f_i)` at `point` against
/// the root field of `cert`. The bundle-span checks run only when `bundle`
/// is set.
pub fn sufficiency_check(
    cert: &TupleCertificate,
    fields: &[(String, VectorField)],
    functions: &[Polynomial],
    point: &[Rational],
    bundle: bool,
) -> Result<SufficiencyReport> {
    let x = &cert.variety;
    x.require_point(point)?;
    if fields.len() != functions.len() {
        return Err(Error::ArityMismatch { expected: fields.len(), got: functions.len() });
    }
    let root = cert
        .field(&cert.tree.root)
        .or_else(|| cert.fields.first())
        .ok_or_else(|| invalid("certificate has no fields"))?;
    let root_at = root.evaluate(point)?;
    let mut pairs = Vec::with_capacity(fields.len());
    for ((name, v), f) in fields.iter().zip(functions) {
        let c = completeness_certificate(v, x)?;
        let mut pairing = Rational::zero();
        for (j, r) in root_at.iter().enumerate() {
            if !r.is_zero() {
                pairing += &(&f.partial(j).evaluate(point)? * r);
            }
        }
        pairs.push(PairVerdict {
            field: name.clone(),
            function: f.render(),
            completeness: c.name().to_string(),
            complete: c.is_known(),
            algebraic_flow: c.has_algebraic_flow(),
            in_kernel: x.is_zero(&v.apply(f)?)?,
            vanishes: f.evaluate(point)?.is_zero(),
            pairing_nonzero: !pairing.is_zero(),
            pairing: pairing.to_ratio_string(),
        });
    }
    let vs: Vec<VectorField> = fields.iter().map(|(_, v)| v.clone()).collect();
    let span_at = span_at_point(&vs, x, point)?;
    let (with_root, without) = if bundle {
        let mut all = vec![root.clone()];
        all.extend(vs.iter().cloned());
        (Some(span_everywhere(&all, x)?), Some(span_everywhere(&vs, x)?))
    } else {
        (None, None)
    };
    Ok(SufficiencyReport {
        root: cert.tree.root.clone(),
        pairs,
        span_at_point: span_at,
        span_bundle_with_root: with_root,
        span_bundle_fields: without,
    })
}

/// Runs [`sufficiency_check`] on the instance recorded in the certificate.
pub fn sufficiency_from_instance(
    cert: &TupleCertificate,
    inst: &SufficiencyInstance,
    bundle: bool,
) -> Result<SufficiencyReport> {
    let fields = inst
        .fields
        .iter()
        .map(|n| {
            cert.field(n)
                .cloned()
                .map(|f| (n.clone(), f))
                .ok_or_else(|| invalid(format!("sufficiency refers to unknown field `{n}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    sufficiency_check(cert, &fields, &inst.functions, &inst.point, bundle)
}
