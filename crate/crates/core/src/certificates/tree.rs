use crate::derivations::{kernel_degree_unchecked, KernelDegree, VarietyPresentation, VectorField};
use crate::error::Result;
use crate::poly::Polynomial;

/// Iteration cap used when checking edge labels and kernel memberships.
pub const LABEL_DEGREE_CAP: usize = 8;

/// Edge from a child vertex toward its parent, labeled by a function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub child: String,
    pub parent: String,
    pub label: Polynomial,
}

/// Rooted tree whose vertices are field names and whose edges point
/// toward the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleTree {
    pub root: String,
    pub edges: Vec<TreeEdge>,
}

impl AdmissibleTree {
    pub fn new(root: impl Into<String>, edges: Vec<TreeEdge>) -> Self {
        AdmissibleTree { root: root.into(), edges }
    }

    /// Single-vertex tree.
    pub fn single(root: impl Into<String>) -> Self {
        Self::new(root, Vec::new())
    }

    pub fn edge(child: &str, parent: &str, label: Polynomial) -> TreeEdge {
        TreeEdge { child: child.to_string(), parent: parent.to_string(), label }
    }

    /// Checks the shape against the list of field names: the vertex set is
    /// exactly `names`, the root has no outgoing edge, every other vertex
    /// has exactly one, and following parents from any vertex reaches the
    /// root without revisiting a vertex. Returns the first violation.
    pub fn shape_error(&self, names: &[String]) -> Option<String> {
        let idx = |n: &str| names.iter().position(|m| m == n);
        let Some(root) = idx(&self.root) else {
            return Some(format!("root `{}` is not a field of the tuple", self.root));
        };
        let mut parent: Vec<Option<usize>> = vec![None; names.len()];
        for e in &self.edges {
            let Some(c) = idx(&e.child) else {
                return Some(format!("edge child `{}` is not a field of the tuple", e.child));
            };
            let Some(p) = idx(&e.parent) else {
                return Some(format!("edge parent `{}` is not a field of the tuple", e.parent));
            };
            if c == root {
                return Some(format!("root `{}` has an outgoing edge", self.root));
            }
            if c == p {
                return Some(format!("self-loop at `{}`", e.child));
            }
            if parent[c].is_some() {
                return Some(format!("vertex `{}` has more than one outgoing edge", e.child));
            }
            parent[c] = Some(p);
        }
        for start in 0..names.len() {
            if start == root {
                continue;
            }
            let mut v = start;
            let mut steps = 0;
            loop {
                match parent[v] {
                    None if v == root => break,
                    None => {
                        return Some(format!("vertex `{}` is not connected to the root", names[start]));
                    }
                    Some(p) => {
                        v = p;
                        steps += 1;
                        if steps > names.len() {
                            return Some(format!("cycle through `{}`", names[start]));
                        }
                    }
                }
            }
        }
        None
    }

    /// Children of a vertex in edge order.
    pub fn children(&self, vertex: &str) -> Vec<&TreeEdge> {
        self.edges.iter().filter(|e| e.parent == vertex).collect()
    }

    pub fn without_edge(&self, k: usize) -> AdmissibleTree {
        let mut t = self.clone();
        t.edges.remove(k);
        t
    }
}

/// Kernel degrees of an edge label for the child and the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCheck {
    pub child: String,
    pub parent: String,
    pub child_degree: KernelDegree,
    pub parent_degree: KernelDegree,
}

impl EdgeCheck {
    /// `a ∈ (ker ψ² \ ker ψ) ∩ ker θ` for the edge `ψ → θ`.
    pub fn passed(&self) -> bool {
        self.child_degree == KernelDegree::Finite(2) && self.parent_degree.at_most(1)
    }
}

/// Label condition for one edge; the fields must be tangent.
pub fn check_edge(
    label: &Polynomial,
    child: &VectorField,
    parent: &VectorField,
    x: &VarietyPresentation,
) -> Result<(KernelDegree, KernelDegree)> {
    Ok((
        kernel_degree_unchecked(label, child, x, LABEL_DEGREE_CAP)?,
        kernel_degree_unchecked(label, parent, x, LABEL_DEGREE_CAP)?,
    ))
}
