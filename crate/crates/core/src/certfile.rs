//! Certificate files: a line-oriented text format and its JSON mirror.
//!
//! ```text
//! densikit-certificate 1
//! name = danielewski p=z^2 - 1
//! expect = VERIFIED
//!
//! [variety]
//! variables = x, y, z
//! order = degrevlex
//! dim = 2
//! relation = x*y - z^2 + 1
//!
//! [field theta1]
//! x = x
//! y = -y
//!
//! [tree]
//! root = theta1
//! edge = theta2 -> theta1 : z
//!
//! [cond1 coverage]
//! x = theta3
//!
//! [sufficiency]
//! pair = theta2 : y - 3
//! point = 1/1, 3/1, 2/1
//! ```
//!
//! Sections appear in this order; `[field NAME]` repeats, `[cond1 coverage]`
//! or `[cond1 witness]` and `[sufficiency]` are optional. A witness section
//! lists `target = EXPR` lines, each followed by `term = EXPR @ FIELD ; ...`
//! lines whose products sum to the target. Blank lines and lines starting
//! with `#` are ignored.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certificates::{
    AdmissibleTree, ConditionOneEvidence, SufficiencyInstance, TreeEdge, TupleCertificate, Verdict, WitnessFactor,
    WitnessTarget,
};
use crate::derivations::{VarietyPresentation, VectorField};
use crate::error::{Error, Result};
use crate::poly::{parse_poly, valid_identifier, Ctx, MonomialOrder, Polynomial, VarContext};
use crate::rational::Rational;

pub const HEADER: &str = "densikit-certificate 1";
pub const VERSION: u32 = 1;

/// String-level content of a certificate file, shared by both formats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Verdict>,
    pub variety: VarietyBlock,
    pub fields: Vec<FieldBlock>,
    pub tree: TreeBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cond1: Option<Cond1Block>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sufficiency: Option<SufficiencyBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyBlock {
    pub variables: Vec<String>,
    pub order: MonomialOrder,
    pub dim: usize,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldBlock {
    pub name: String,
    /// Coordinate name to coefficient expression; zero coefficients omitted.
    pub coefficients: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeBlock {
    pub root: String,
    pub edges: Vec<EdgeBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeBlock {
    pub child: String,
    pub parent: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cond1Block {
    /// Coordinate name to the field whose kernel contains it.
    Coverage(BTreeMap<String, String>),
    Witness(Vec<WitnessBlock>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessBlock {
    pub target: String,
    /// Each term is a product of `(factor, field)` pairs.
    pub terms: Vec<Vec<(String, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SufficiencyBlock {
    /// `(field, function)` pairs.
    pub pairs: Vec<(String, String)>,
    /// Point coordinates as `num/den` strings.
    pub point: Vec<String>,
}

/// Source positions of the text format, used to locate semantic errors.
#[derive(Clone, Debug, Default)]
struct Lines {
    variety: usize,
    relations: Vec<usize>,
    fields: Vec<BTreeMap<String, usize>>,
    field_headers: Vec<usize>,
    root: usize,
    edges: Vec<usize>,
    cond1: BTreeMap<String, usize>,
    witness: Vec<(usize, Vec<usize>)>,
    pairs: Vec<usize>,
    point: usize,
}

fn located(location: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Located { location: location.into(), msg: msg.into() }
}

fn line_err(line: usize, msg: impl Into<String>) -> Error {
    located(format!("line {line}"), msg)
}

/// Where a semantic error is reported: a text line or a JSON key path.
enum Loc {
    Line(usize),
    Path(String),
}

impl Loc {
    fn at(line: Option<usize>, path: impl FnOnce() -> String) -> Loc {
        match line {
            Some(l) => Loc::Line(l),
            None => Loc::Path(path()),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        match self {
            Loc::Line(l) => line_err(*l, msg),
            Loc::Path(p) => located(p.clone(), msg),
        }
    }

    fn wrap<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Located { .. } => e,
            other => self.err(other.to_string()),
        })
    }
}

// ---------------------------------------------------------------- text parse

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Stage {
    Top,
    Variety,
    Fields,
    Tree,
    Cond1,
    Sufficiency,
}

#[derive(Default)]
struct Builder {
    name: Option<String>,
    expect: Option<Verdict>,
    variables: Option<Vec<String>>,
    order: Option<MonomialOrder>,
    dim: Option<usize>,
    relations: Vec<String>,
    fields: Vec<FieldBlock>,
    root: Option<String>,
    edges: Vec<EdgeBlock>,
    coverage: Option<BTreeMap<String, String>>,
    witness: Option<Vec<WitnessBlock>>,
    pairs: Vec<(String, String)>,
    point: Option<Vec<String>>,
    seen_tree: bool,
    seen_sufficiency: bool,
}

fn set_once<T>(slot: &mut Option<T>, v: T, key: &str, line: usize) -> Result<()> {
    if slot.is_some() {
        return Err(line_err(line, format!("duplicate key `{key}`")));
    }
    *slot = Some(v);
    Ok(())
}

fn split_list(v: &str) -> Vec<String> {
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_text(text: &str) -> Result<(CertificateFile, Lines)> {
    let mut lines = Lines::default();
    let mut b = Builder::default();
    let mut stage = Stage::Top;
    let mut header_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != HEADER {
                return Err(line_err(ln, format!("expected header `{HEADER}`")));
            }
            header_seen = true;
            continue;
        }
        if let Some(inner) = line.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return Err(line_err(ln, "unterminated section header"));
            };
            let inner = inner.trim();
            let next = match inner.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["variety"] => {
                    lines.variety = ln;
                    Stage::Variety
                }
                ["field", name] => {
                    if !valid_identifier(name) {
                        return Err(line_err(ln, format!("`{name}` is not a valid field name")));
                    }
                    if b.fields.iter().any(|f| f.name == *name) {
                        return Err(line_err(ln, format!("duplicate field `{name}`")));
                    }
                    b.fields.push(FieldBlock { name: name.to_string(), coefficients: BTreeMap::new() });
                    lines.fields.push(BTreeMap::new());
                    lines.field_headers.push(ln);
                    Stage::Fields
                }
                ["tree"] => {
                    b.seen_tree = true;
                    Stage::Tree
                }
                ["cond1", "coverage"] => {
                    b.coverage = Some(BTreeMap::new());
                    Stage::Cond1
                }
                ["cond1", "witness"] => {
                    b.witness = Some(Vec::new());
                    Stage::Cond1
                }
                ["sufficiency"] => {
                    b.seen_sufficiency = true;
                    Stage::Sufficiency
                }
                _ => return Err(line_err(ln, format!("unknown section `[{inner}]`"))),
            };
            let repeatable = next == Stage::Fields && stage == Stage::Fields;
            if next <= stage && !repeatable {
                return Err(line_err(ln, format!("section `[{inner}]` out of order or repeated")));
            }
            if next > Stage::Variety && stage < Stage::Variety {
                return Err(line_err(ln, "the `[variety]` section must come first"));
            }
            if next > Stage::Fields && b.fields.is_empty() {
                return Err(line_err(ln, "at least one `[field NAME]` section is required before it"));
            }
            if next > Stage::Tree && !b.seen_tree {
                return Err(line_err(ln, "the `[tree]` section is required before it"));
            }
            stage = next;
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(line_err(ln, "expected `key = value`"));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(line_err(ln, "empty key"));
        }
        match stage {
            Stage::Top => match key {
                "name" => set_once(&mut b.name, value.to_string(), key, ln)?,
                "expect" => {
                    let v = Verdict::parse(value).ok_or_else(|| line_err(ln, format!("unknown verdict `{value}`")))?;
                    set_once(&mut b.expect, v, key, ln)?
                }
                _ => return Err(line_err(ln, format!("unknown key `{key}`"))),
            },
            Stage::Variety => match key {
                "variables" => set_once(&mut b.variables, split_list(value), key, ln)?,
                "order" => {
                    let o = value.parse::<MonomialOrder>().map_err(|e| line_err(ln, e.to_string()))?;
                    set_once(&mut b.order, o, key, ln)?
                }
                "dim" => {
                    let d = value
                        .parse::<usize>()
                        .map_err(|_| line_err(ln, format!("dimension `{value}` is not a nonnegative integer")))?;
                    set_once(&mut b.dim, d, key, ln)?
                }
                "relation" => {
                    b.relations.push(value.to_string());
                    lines.relations.push(ln);
                }
                _ => return Err(line_err(ln, format!("unknown key `{key}`"))),
            },
            Stage::Fields => {
                let f = b.fields.last_mut().unwrap();
                if f.coefficients.insert(key.to_string(), value.to_string()).is_some() {
                    return Err(line_err(ln, format!("duplicate coordinate `{key}`")));
                }
                lines.fields.last_mut().unwrap().insert(key.to_string(), ln);
            }
            Stage::Tree => match key {
                "root" => {
                    set_once(&mut b.root, value.to_string(), key, ln)?;
                    lines.root = ln;
                }
                "edge" => {
                    let bad = || line_err(ln, "expected `edge = CHILD -> PARENT : LABEL`");
                    let (ends, label) = value.split_once(':').ok_or_else(bad)?;
                    let (child, parent) = ends.split_once("->").ok_or_else(bad)?;
                    b.edges.push(EdgeBlock {
                        child: child.trim().to_string(),
                        parent: parent.trim().to_string(),
                        label: label.trim().to_string(),
                    });
                    lines.edges.push(ln);
                }
                _ => return Err(line_err(ln, format!("unknown key `{key}`"))),
            },
            Stage::Cond1 => {
                if let Some(cov) = b.coverage.as_mut() {
                    if cov.insert(key.to_string(), value.to_string()).is_some() {
                        return Err(line_err(ln, format!("duplicate coordinate `{key}`")));
                    }
                    lines.cond1.insert(key.to_string(), ln);
                } else {
                    let w = b.witness.as_mut().unwrap();
                    match key {
                        "target" => {
                            w.push(WitnessBlock { target: value.to_string(), terms: Vec::new() });
                            lines.witness.push((ln, Vec::new()));
                        }
                        "term" => {
                            let Some(t) = w.last_mut() else {
                                return Err(line_err(ln, "`term` before any `target`"));
                            };
                            let mut factors = Vec::new();
                            for part in value.split(';') {
                                let Some((expr, field)) = part.rsplit_once('@') else {
                                    return Err(line_err(ln, "expected `EXPR @ FIELD` factors separated by `;`"));
                                };
                                factors.push((expr.trim().to_string(), field.trim().to_string()));
                            }
                            t.terms.push(factors);
                            lines.witness.last_mut().unwrap().1.push(ln);
                        }
                        _ => return Err(line_err(ln, format!("unknown key `{key}`"))),
                    }
                }
            }
            Stage::Sufficiency => match key {
                "pair" => {
                    let Some((field, f)) = value.split_once(':') else {
                        return Err(line_err(ln, "expected `pair = FIELD : EXPR`"));
                    };
                    b.pairs.push((field.trim().to_string(), f.trim().to_string()));
                    lines.pairs.push(ln);
                }
                "point" => {
                    set_once(&mut b.point, split_list(value), key, ln)?;
                    lines.point = ln;
                }
                _ => return Err(line_err(ln, format!("unknown key `{key}`"))),
            },
        }
    }
    let end = text.lines().count().max(1);
    if !header_seen {
        return Err(line_err(1, format!("missing header `{HEADER}`")));
    }
    let missing = |what: &str| line_err(end, format!("missing {what}"));
    let name = b.name.ok_or_else(|| missing("`name`"))?;
    if stage < Stage::Tree {
        return Err(missing("`[tree]` section"));
    }
    let variety = VarietyBlock {
        variables: b.variables.ok_or_else(|| line_err(lines.variety, "missing `variables`"))?,
        order: b.order.unwrap_or_default(),
        dim: b.dim.ok_or_else(|| line_err(lines.variety, "missing `dim`"))?,
        relations: b.relations,
    };
    let root = b.root.ok_or_else(|| missing("`root` in `[tree]`"))?;
    let cond1 = match (b.coverage, b.witness) {
        (Some(c), _) => Some(Cond1Block::Coverage(c)),
        (None, Some(w)) => Some(Cond1Block::Witness(w)),
        _ => None,
    };
    let sufficiency = if b.seen_sufficiency {
        let point = b.point.ok_or_else(|| missing("`point` in `[sufficiency]`"))?;
        Some(SufficiencyBlock { pairs: b.pairs, point })
    } else {
        None
    };
    let file = CertificateFile {
        version: VERSION,
        name,
        expect: b.expect,
        variety,
        fields: b.fields,
        tree: TreeBlock { root, edges: b.edges },
        cond1,
        sufficiency,
    };
    Ok((file, lines))
}

// -------------------------------------------------------------- text render

/// Renders the canonical text form: coordinates in variable order, zero
/// coefficients omitted, rationals as `num/den`.
pub fn render_file(file: &CertificateFile) -> String {
    let mut out = String::new();
    let mut push = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(HEADER.to_string());
    push(format!("name = {}", file.name));
    if let Some(v) = file.expect {
        push(format!("expect = {v}"));
    }
    let vars = &file.variety.variables;
    push(String::new());
    push("[variety]".into());
    push(format!("variables = {}", vars.join(", ")));
    push(format!("order = {}", file.variety.order.name()));
    push(format!("dim = {}", file.variety.dim));
    for r in &file.variety.relations {
        push(format!("relation = {r}"));
    }
    let in_var_order = |m: &BTreeMap<String, String>| -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> =
            vars.iter().filter_map(|x| m.get(x).map(|e| (x.clone(), e.clone()))).collect();
        // keys outside the variable list keep their sorted order at the end
        v.extend(m.iter().filter(|(k, _)| !vars.contains(k)).map(|(k, e)| (k.clone(), e.clone())));
        v
    };
    for f in &file.fields {
        push(String::new());
        push(format!("[field {}]", f.name));
        for (c, e) in in_var_order(&f.coefficients) {
            push(format!("{c} = {e}"));
        }
    }
    push(String::new());
    push("[tree]".into());
    push(format!("root = {}", file.tree.root));
    for e in &file.tree.edges {
        push(format!("edge = {} -> {} : {}", e.child, e.parent, e.label));
    }
    match &file.cond1 {
        Some(Cond1Block::Coverage(c)) => {
            push(String::new());
            push("[cond1 coverage]".into());
            for (x, f) in in_var_order(c) {
                push(format!("{x} = {f}"));
            }
        }
        Some(Cond1Block::Witness(ts)) => {
            push(String::new());
            push("[cond1 witness]".into());
            for t in ts {
                push(format!("target = {}", t.target));
                for term in &t.terms {
                    let parts: Vec<String> = term.iter().map(|(e, f)| format!("{e} @ {f}")).collect();
                    push(format!("term = {}", parts.join(" ; ")));
                }
            }
        }
        None => {}
    }
    if let Some(s) = &file.sufficiency {
        push(String::new());
        push("[sufficiency]".into());
        for (f, e) in &s.pairs {
            push(format!("pair = {f} : {e}"));
        }
        push(format!("point = {}", s.point.join(", ")));
    }
    out
}

// ------------------------------------------------------ semantic conversion

fn parse_expr(text: &str, ctx: &Ctx, loc: &Loc) -> Result<Polynomial> {
    loc.wrap(parse_poly(text, ctx))
}

fn build(file: &CertificateFile, lines: Option<&Lines>) -> Result<TupleCertificate> {
    // text positions when available, JSON key paths otherwise
    let line = |f: &dyn Fn(&Lines) -> usize| lines.map(f);
    if file.version != VERSION {
        return Err(located("version", format!("unsupported version {}", file.version)));
    }
    let vloc = Loc::at(line(&|l| l.variety), || "variety".into());
    let ctx = vloc.wrap(VarContext::new(&file.variety.variables, file.variety.order))?;
    let mut rels = Vec::new();
    for (k, r) in file.variety.relations.iter().enumerate() {
        let loc = Loc::at(line(&|l| l.relations[k]), || format!("variety.relations[{k}]"));
        rels.push(parse_expr(r, &ctx, &loc)?);
    }
    let variety = vloc.wrap(VarietyPresentation::new(&ctx, rels, file.variety.dim))?;
    let mut field_names = Vec::new();
    let mut fields = Vec::new();
    for (k, f) in file.fields.iter().enumerate() {
        let hloc = Loc::at(line(&|l| l.field_headers[k]), || format!("fields[{k}]"));
        if !valid_identifier(&f.name) {
            return Err(hloc.err(format!("`{}` is not a valid field name", f.name)));
        }
        if field_names.contains(&f.name) {
            return Err(hloc.err(format!("duplicate field `{}`", f.name)));
        }
        let mut coeffs = vec![Polynomial::zero(&ctx); ctx.arity()];
        for (c, e) in &f.coefficients {
            let loc = Loc::at(line(&|l| l.fields[k][c]), || format!("fields[{k}].coefficients.{c}"));
            let i = loc.wrap(ctx.index_of(c))?;
            coeffs[i] = parse_expr(e, &ctx, &loc)?;
        }
        field_names.push(f.name.clone());
        fields.push(hloc.wrap(VectorField::new(&ctx, coeffs))?);
    }
    let known = |name: &str, loc: &Loc| -> Result<()> {
        if field_names.iter().any(|n| n == name) {
            Ok(())
        } else {
            Err(loc.err(format!("unknown field `{name}`")))
        }
    };
    let rloc = Loc::at(line(&|l| l.root), || "tree.root".into());
    known(&file.tree.root, &rloc)?;
    let mut edges: Vec<TreeEdge> = Vec::new();
    for (k, e) in file.tree.edges.iter().enumerate() {
        let loc = Loc::at(line(&|l| l.edges[k]), || format!("tree.edges[{k}]"));
        known(&e.child, &loc)?;
        known(&e.parent, &loc)?;
        edges.push(AdmissibleTree::edge(&e.child, &e.parent, parse_expr(&e.label, &ctx, &loc)?));
    }
    let tree = AdmissibleTree::new(file.tree.root.clone(), edges);
    let cond1 = match &file.cond1 {
        None => None,
        Some(Cond1Block::Coverage(c)) => {
            let mut pairs = Vec::new();
            for (x, f) in c {
                let loc = Loc::at(line(&|l| l.cond1[x]), || format!("cond1.coverage.{x}"));
                loc.wrap(ctx.index_of(x))?;
                known(f, &loc)?;
                pairs.push((x.clone(), f.clone()));
            }
            // coordinates in variable order
            pairs.sort_by_key(|(x, _)| ctx.index_of(x).unwrap());
            Some(ConditionOneEvidence::Coverage(pairs))
        }
        Some(Cond1Block::Witness(ts)) => {
            let mut targets = Vec::new();
            for (k, t) in ts.iter().enumerate() {
                let loc = Loc::at(line(&|l| l.witness[k].0), || format!("cond1.witness[{k}].target"));
                let target = parse_expr(&t.target, &ctx, &loc)?;
                let mut terms = Vec::new();
                for (j, term) in t.terms.iter().enumerate() {
                    let loc = Loc::at(line(&|l| l.witness[k].1[j]), || format!("cond1.witness[{k}].terms[{j}]"));
                    let mut factors = Vec::new();
                    for (e, f) in term {
                        known(f, &loc)?;
                        factors.push(WitnessFactor { factor: parse_expr(e, &ctx, &loc)?, field: f.clone() });
                    }
                    terms.push(factors);
                }
                targets.push(WitnessTarget { target, terms });
            }
            Some(ConditionOneEvidence::Witness(targets))
        }
    };
    let sufficiency = match &file.sufficiency {
        None => None,
        Some(s) => {
            let mut names = Vec::new();
            let mut functions = Vec::new();
            for (k, (f, e)) in s.pairs.iter().enumerate() {
                let loc = Loc::at(line(&|l| l.pairs[k]), || format!("sufficiency.pairs[{k}]"));
                known(f, &loc)?;
                names.push(f.clone());
                functions.push(parse_expr(e, &ctx, &loc)?);
            }
            let ploc = Loc::at(line(&|l| l.point), || "sufficiency.point".into());
            if s.point.len() != ctx.arity() {
                return Err(ploc.err(format!("point has {} coordinates, expected {}", s.point.len(), ctx.arity())));
            }
            let point = s.point.iter().map(|c| ploc.wrap(c.parse::<Rational>())).collect::<Result<Vec<_>>>()?;
            Some(SufficiencyInstance { fields: names, functions, point })
        }
    };
    Ok(TupleCertificate {
        name: file.name.clone(),
        variety,
        field_names,
        fields,
        tree,
        cond1,
        expect: file.expect,
        sufficiency,
    })
}

/// String-level view of a certificate.
pub fn to_file(cert: &TupleCertificate) -> CertificateFile {
    let ctx = cert.variety.ambient();
    let fields = cert
        .field_names
        .iter()
        .zip(&cert.fields)
        .map(|(name, f)| FieldBlock { name: name.clone(), coefficients: f.named_coeffs().into_iter().collect() })
        .collect();
    let cond1 = cert.cond1.as_ref().map(|c| match c {
        ConditionOneEvidence::Coverage(pairs) => Cond1Block::Coverage(pairs.iter().cloned().collect()),
        ConditionOneEvidence::Witness(ts) => Cond1Block::Witness(
            ts.iter()
                .map(|t| WitnessBlock {
                    target: t.target.render(),
                    terms: t
                        .terms
                        .iter()
                        .map(|term| term.iter().map(|w| (w.factor.render(), w.field.clone())).collect())
                        .collect(),
                })
                .collect(),
        ),
    });
    let sufficiency = cert.sufficiency.as_ref().map(|s| SufficiencyBlock {
        pairs: s.fields.iter().zip(&s.functions).map(|(f, e)| (f.clone(), e.render())).collect(),
        point: s.point.iter().map(Rational::to_ratio_string).collect(),
    });
    CertificateFile {
        version: VERSION,
        name: cert.name.clone(),
        expect: cert.expect,
        variety: VarietyBlock {
            variables: ctx.names().to_vec(),
            order: ctx.order(),
            dim: cert.variety.dim(),
            relations: cert.variety.generators().iter().map(Polynomial::render).collect(),
        },
        fields,
        tree: TreeBlock {
            root: cert.tree.root.clone(),
            edges: cert
                .tree
                .edges
                .iter()
                .map(|e| EdgeBlock { child: e.child.clone(), parent: e.parent.clone(), label: e.label.render() })
                .collect(),
        },
        cond1,
        sufficiency,
    }
}

/// Parses the text format; errors carry the line number.
pub fn parse_certificate(text: &str) -> Result<TupleCertificate> {
    let (file, lines) = parse_text(text)?;
    build(&file, Some(&lines))
}

/// Parses the text format without interpreting expressions.
pub fn parse_certificate_file(text: &str) -> Result<CertificateFile> {
    parse_text(text).map(|(f, _)| f)
}

pub fn render_certificate(cert: &TupleCertificate) -> String {
    render_file(&to_file(cert))
}

/// Interprets a string-level certificate; errors carry the key path.
pub fn from_file(file: &CertificateFile) -> Result<TupleCertificate> {
    build(file, None)
}

pub fn certificate_to_json(cert: &TupleCertificate) -> String {
    serde_json::to_string_pretty(&to_file(cert)).expect("certificate serializes")
}

pub fn certificate_from_json(text: &str) -> Result<TupleCertificate> {
    let file: CertificateFile = serde_json::from_str(text)
        .map_err(|e| located(format!("line {}", e.line()), format!("invalid certificate JSON: {e}")))?;
    from_file(&file)
}

/// Parses either format, choosing JSON when the first non-blank character
/// is `{`.
pub fn parse_any(text: &str) -> Result<TupleCertificate> {
    if text.trim_start().starts_with('{') {
        certificate_from_json(text)
    } else {
        parse_certificate(text)
    }
}
