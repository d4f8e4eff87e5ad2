use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{invalid, Error, Result};

/// Monomial order tag carried by every variable context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Degrevlex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Degrevlex => a.total_degree().cmp(&b.total_degree()).then_with(|| {
                // the monomial with the smaller exponent in the last
                // differing variable is the larger one
                for (x, y) in a.exps().iter().zip(b.exps()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Degrevlex => "degrevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrevlex" => Ok(MonomialOrder::Degrevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(invalid(format!("unknown monomial order `{other}`"))),
        }
    }
}

/// An ordered list of distinct variable names plus a monomial order.
#[derive(Clone)]
pub struct VarContext {
    names: Vec<String>,
    index: HashMap<String, usize>,
    order: MonomialOrder,
}

pub type Ctx = Arc<VarContext>;

pub(crate) fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Ctx> {
        if names.is_empty() {
            return Err(invalid("variable context must not be empty"));
        }
        let mut index = HashMap::with_capacity(names.len());
        let mut owned = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !valid_identifier(n) {
                return Err(invalid(format!("`{n}` is not a valid identifier")));
            }
            if index.insert(n.to_string(), i).is_some() {
                return Err(Error::DuplicateVariable(n.to_string()));
            }
            owned.push(n.to_string());
        }
        Ok(Arc::new(VarContext { names: owned, index, order }))
    }

    /// Degrevlex context, panicking on invalid names. Convenient for fixed
    /// internal contexts.
    pub fn of(names: &[&str]) -> Ctx {
        Self::new(names, MonomialOrder::Degrevlex).expect("valid variable names")
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Same names, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Ctx {
        Arc::new(VarContext { names: self.names.clone(), index: self.index.clone(), order })
    }

    /// This context followed by `extra` fresh names.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ctx> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        VarContext::new(&names, self.order)
    }

    /// First name from `candidates` (then `candidates[0]` with numeric
    /// suffixes) that is not yet used in this context.
    pub fn fresh_name(&self, candidates: &[&str]) -> String {
        for c in candidates {
            if !self.contains(c) {
                return c.to_string();
            }
        }
        let base = candidates.first().copied().unwrap_or("u");
        (0..).map(|i| format!("{base}{i}")).find(|n| !self.contains(n)).unwrap()
    }
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.order == other.order
    }
}

impl Eq for VarContext {}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarContext({} ; {})", self.names.join(","), self.order.name())
    }
}

pub(crate) fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
