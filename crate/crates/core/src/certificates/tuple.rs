use std::fmt;

use serde::{Deserialize, Serialize};

use super::sufficiency::SufficiencyInstance;
use super::tree::{check_edge, AdmissibleTree, EdgeCheck, LABEL_DEGREE_CAP};
use crate::derivations::{
    completeness_certificate, is_tangent, kernel_degree_unchecked, CompletenessCertificate, KernelDegree,
    VarietyPresentation, VectorField,
};
use crate::error::{invalid, Result};
use crate::poly::Polynomial;

/// One factor of a witness product, assigned to the field whose kernel
/// it is claimed to lie in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFactor {
    pub factor: Polynomial,
    pub field: String,
}

/// A target polynomial written as a sum of products of kernel elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTarget {
    pub target: Polynomial,
    pub terms: Vec<Vec<WitnessFactor>>,
}

/// Evidence for condition (1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionOneEvidence {
    /// Each ambient coordinate assigned to a field with the coordinate in
    /// its kernel; every monomial then factors into per-field kernel
    /// blocks, so the kernel-product span is the whole ring.
    Coverage(Vec<(String, String)>),
    /// Explicit decompositions of targets into kernel products.
    Witness(Vec<WitnessTarget>),
}

/// A compatible-tuple certificate: ordered fields (first is the root
/// field), admissible tree and condition (1) evidence on a variety.
#[derive(Clone, Debug)]
pub struct TupleCertificate {
    pub name: String,
    pub variety: VarietyPresentation,
    pub field_names: Vec<String>,
    pub fields: Vec<VectorField>,
    pub tree: AdmissibleTree,
    pub cond1: Option<ConditionOneEvidence>,
    pub expect: Option<Verdict>,
    pub sufficiency: Option<SufficiencyInstance>,
}

impl TupleCertificate {
    pub fn field(&self, name: &str) -> Option<&VectorField> {
        self.field_names.iter().position(|n| n == name).map(|i| &self.fields[i])
    }

    pub fn field_index(&self, name: &str) -> Option<usize> {
        self.field_names.iter().position(|n| n == name)
    }

    /// Completeness certificates of all fields in order.
    pub fn completeness(&self) -> Result<Vec<CompletenessCertificate>> {
        self.fields.iter().map(|f| completeness_certificate(f, &self.variety)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Verified,
    Insufficient,
    Refuted,
}

impl Verdict {
    /// Stable process exit code.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Refuted => 1,
            Verdict::Insufficient => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "VERIFIED",
            Verdict::Refuted => "REFUTED",
            Verdict::Insufficient => "INSUFFICIENT",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        match s.to_ascii_lowercase().as_str() {
            "verified" => Some(Verdict::Verified),
            "refuted" => Some(Verdict::Refuted),
            "insufficient" => Some(Verdict::Insufficient),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The evidence needed for the check is missing or inconclusive.
    Unknown,
    Skipped,
}

impl CheckStatus {
    fn tag(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Unknown => "UNKNOWN",
            CheckStatus::Skipped => "SKIP",
        }
    }
}

/// One checked condition with its anchor name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub anchor: String,
    pub status: CheckStatus,
    pub detail: String,
}

/// Structured verification result; renders one line per condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub checks: Vec<CheckLine>,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

impl VerificationReport {
    pub fn render(&self) -> String {
        let mut out = format!("certificate {}\n", self.name);
        for c in &self.checks {
            if c.detail.is_empty() {
                out.push_str(&format!("  {:<7} {}\n", c.status.tag(), c.anchor));
            } else {
                out.push_str(&format!("  {:<7} {}: {}\n", c.status.tag(), c.anchor, c.detail));
            }
        }
        match &self.reason {
            Some(r) => out.push_str(&format!("verdict: {} ({r})\n", self.verdict)),
            None => out.push_str(&format!("verdict: {}\n", self.verdict)),
        }
        out
    }

    pub fn check(&self, anchor: &str) -> Option<&CheckLine> {
        self.checks.iter().find(|c| c.anchor == anchor)
    }
}

struct Builder {
    checks: Vec<CheckLine>,
    refuted: Option<String>,
    insufficient: Option<String>,
}

impl Builder {
    fn push(&mut self, anchor: String, status: CheckStatus, detail: String) {
        match status {
            CheckStatus::Fail if self.refuted.is_none() => {
                self.refuted = Some(format!("{anchor} failed"));
            }
            CheckStatus::Unknown if self.insufficient.is_none() => {
                self.insufficient = Some(format!("{anchor} not certified"));
            }
            _ => {}
        }
        self.checks.push(CheckLine { anchor, status, detail });
    }

    fn pass(&mut self, anchor: String, ok: bool, detail: String) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        self.push(anchor, status, detail);
    }
}

/// Tree shape plus per-edge label conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeValidation {
    pub shape_error: Option<String>,
    pub root_is_first: bool,
    pub edges: Vec<EdgeCheck>,
}

impl TreeValidation {
    pub fn passed(&self) -> bool {
        self.shape_error.is_none() && self.root_is_first && self.edges.iter().all(EdgeCheck::passed)
    }
}

/// Validates shape and labels of `tree` against the certificate's fields,
/// which must be tangent to the variety.
pub fn validate_tree(tree: &AdmissibleTree, cert: &TupleCertificate) -> Result<TreeValidation> {
    let shape_error = tree.shape_error(&cert.field_names);
    let root_is_first = cert.field_names.first() == Some(&tree.root);
    let mut edges = Vec::new();
    if shape_error.is_none() {
        for e in &tree.edges {
            let child = cert.field(&e.child).unwrap();
            let parent = cert.field(&e.parent).unwrap();
            let (cd, pd) = check_edge(&e.label, child, parent, &cert.variety)?;
            edges.push(EdgeCheck {
                child: e.child.clone(),
                parent: e.parent.clone(),
                child_degree: cd,
                parent_degree: pd,
            });
        }
    }
    Ok(TreeValidation { shape_error, root_is_first, edges })
}

/// Per-coordinate kernel degrees for a coverage assignment; an error when
/// the assignment is not total or names unknown fields or coordinates.
pub fn coverage_degrees(
    cert: &TupleCertificate,
    assignment: &[(String, String)],
) -> Result<Vec<(String, String, KernelDegree)>> {
    let ctx = cert.variety.ambient();
    let mut out = Vec::with_capacity(ctx.arity());
    for name in ctx.names() {
        let Some((_, field)) = assignment.iter().find(|(c, _)| c == name) else {
            return Err(invalid(format!("coverage assignment misses coordinate `{name}`")));
        };
        let Some(theta) = cert.field(field) else {
            return Err(invalid(format!("coverage refers to unknown field `{field}`")));
        };
        let z = Polynomial::var_named(ctx, name)?;
        out.push((name.clone(), field.clone(), kernel_degree_unchecked(&z, theta, &cert.variety, LABEL_DEGREE_CAP)?));
    }
    for (c, _) in assignment {
        if !ctx.contains(c) {
            return Err(invalid(format!("coverage refers to unknown coordinate `{c}`")));
        }
    }
    Ok(out)
}

/// Every coordinate lies in the kernel of its assigned field.
pub fn coverage_certificate(cert: &TupleCertificate) -> Result<bool> {
    match &cert.cond1 {
        Some(ConditionOneEvidence::Coverage(a)) => Ok(coverage_degrees(cert, a)?.iter().all(|(_, _, d)| d.at_most(1))),
        _ => Err(invalid("condition (1) evidence is not a coverage assignment")),
    }
}

/// Result of checking witness decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub factors_in_kernel: bool,
    pub decompositions_exact: bool,
    pub some_target_nonzero: bool,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.factors_in_kernel && self.decompositions_exact && self.some_target_nonzero
    }
}

/// Checks recorded factors and decompositions of witness targets.
pub fn witness_span_check(targets: &[WitnessTarget], cert: &TupleCertificate) -> Result<WitnessCheck> {
    let x = &cert.variety;
    let mut factors_in_kernel = true;
    let mut decompositions_exact = true;
    let mut some_target_nonzero = false;
    for t in targets {
        let mut sum = Polynomial::zero(x.ambient());
        for term in &t.terms {
            if term.is_empty() {
                return Err(invalid("empty product in witness decomposition"));
            }
            let mut prod = Polynomial::one(x.ambient());
            for f in term {
                let Some(theta) = cert.field(&f.field) else {
                    return Err(invalid(format!("witness refers to unknown field `{}`", f.field)));
                };
                if !kernel_degree_unchecked(&f.factor, theta, x, LABEL_DEGREE_CAP)?.at_most(1) {
                    factors_in_kernel = false;
                }
                prod = &prod * &f.factor;
            }
            sum = &sum + &prod;
        }
        if !x.congruent(&sum, &t.target)? {
            decompositions_exact = false;
        }
        if !x.is_zero(&t.target)? {
            some_target_nonzero = true;
        }
    }
    Ok(WitnessCheck { factors_in_kernel, decompositions_exact, some_target_nonzero })
}

/// Full verification: tangency, completeness, tree conditions and
/// condition (1) evidence. Every outcome is a verdict; a failed symbolic
/// check refutes, missing or inconclusive evidence is insufficient.
pub fn verify_tuple(cert: &TupleCertificate) -> VerificationReport {
    match verify_inner(cert) {
        Ok(r) => r,
        Err(e) => VerificationReport {
            name: cert.name.clone(),
            checks: Vec::new(),
            verdict: Verdict::Refuted,
            reason: Some(format!("verification aborted: {e}")),
        },
    }
}

fn verify_inner(cert: &TupleCertificate) -> Result<VerificationReport> {
    let x = &cert.variety;
    let mut b = Builder { checks: Vec::new(), refuted: None, insufficient: None };

    let distinct = cert.field_names.iter().enumerate().all(|(i, n)| !cert.field_names[..i].contains(n));
    b.pass(
        "fields".into(),
        !cert.fields.is_empty() && distinct && cert.fields.len() == cert.field_names.len(),
        format!("{} fields ({})", cert.fields.len(), cert.field_names.join(", ")),
    );

    let mut all_tangent = true;
    for (name, f) in cert.field_names.iter().zip(&cert.fields) {
        let t = is_tangent(f, x)?;
        all_tangent &= t;
        b.pass(format!("tangency {name}"), t, String::new());
    }

    for (name, f) in cert.field_names.iter().zip(&cert.fields) {
        let anchor = format!("completeness {name}");
        if !all_tangent {
            b.push(anchor, CheckStatus::Skipped, "fields not tangent".into());
            continue;
        }
        let c = completeness_certificate(f, x)?;
        let status = if c.is_known() { CheckStatus::Pass } else { CheckStatus::Unknown };
        b.push(anchor, status, c.describe(f));
    }

    let shape = cert.tree.shape_error(&cert.field_names);
    b.pass(
        "condition (2)(i) tree shape".into(),
        shape.is_none(),
        shape.clone().unwrap_or_else(|| format!("{} edges toward root {}", cert.tree.edges.len(), cert.tree.root)),
    );
    let root_first = cert.field_names.first() == Some(&cert.tree.root);
    b.pass("condition (2)(ii) root".into(), root_first, format!("root {}", cert.tree.root));
    if let Some(root) = cert.field(&cert.tree.root) {
        if all_tangent {
            let zero = root.reduce(x)?.is_zero();
            b.pass("root field nonzero on the variety".into(), !zero, String::new());
        }
    }

    if shape.is_none() && all_tangent {
        for e in &cert.tree.edges {
            let child = cert.field(&e.child).unwrap();
            let parent = cert.field(&e.parent).unwrap();
            let (cd, pd) = check_edge(&e.label, child, parent, x)?;
            let ec =
                EdgeCheck { child: e.child.clone(), parent: e.parent.clone(), child_degree: cd, parent_degree: pd };
            b.pass(
                format!("condition (2)(iii) edge {}->{}", e.child, e.parent),
                ec.passed(),
                format!(
                    "label {}: degree {} for {} (need 2), degree {} for {} (need <= 1)",
                    e.label, cd, e.child, pd, e.parent
                ),
            );
        }
    }

    match &cert.cond1 {
        None => b.push(
            "condition (1) ideal in kernel-product span".into(),
            CheckStatus::Unknown,
            "no evidence supplied".into(),
        ),
        Some(_) if !all_tangent => b.push(
            "condition (1) ideal in kernel-product span".into(),
            CheckStatus::Skipped,
            "fields not tangent".into(),
        ),
        Some(ConditionOneEvidence::Coverage(a)) => match coverage_degrees(cert, a) {
            Ok(degs) => {
                for (coord, field, d) in degs {
                    b.pass(
                        format!("condition (1) coverage {coord} -> {field}"),
                        d.at_most(1),
                        format!("kernel degree {d}"),
                    );
                }
            }
            Err(e) => b.push("condition (1) coverage".into(), CheckStatus::Unknown, e.to_string()),
        },
        Some(ConditionOneEvidence::Witness(targets)) => match witness_span_check(targets, cert) {
            Ok(w) => {
                b.pass("condition (1) witness factors in kernels".into(), w.factors_in_kernel, String::new());
                b.pass(
                    "condition (1) witness decompositions".into(),
                    w.decompositions_exact,
                    format!("{} targets", targets.len()),
                );
                b.pass("condition (1) witness ideal nonzero".into(), w.some_target_nonzero, String::new());
            }
            Err(e) => b.push("condition (1) witness".into(), CheckStatus::Unknown, e.to_string()),
        },
    }

    let (verdict, reason) = if let Some(r) = b.refuted.clone() {
        (Verdict::Refuted, Some(r))
    } else if let Some(r) = b.insufficient.clone() {
        (Verdict::Insufficient, Some(r))
    } else {
        (Verdict::Verified, None)
    };
    Ok(VerificationReport { name: cert.name.clone(), checks: b.checks, verdict, reason })
}
