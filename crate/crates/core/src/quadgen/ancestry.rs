//! The shape ancestry graph, loaded from the committed edge list.

use super::shapes::ShapeClass;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;
use thiserror::Error;

const EDGES: &str = include_str!("../../data/ancestry.txt");

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AncestryError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("ancestry graph has a cycle through {0}")]
    Cycle(ShapeClass),
}

/// Directed graph with an edge from parent to child when every child
/// instance is also a parent instance.
#[derive(Debug, Clone)]
pub struct AncestryGraph {
    parents: BTreeMap<ShapeClass, BTreeSet<ShapeClass>>,
}

impl AncestryGraph {
    /// Parses `child <- parent` lines with `#` comments.
    pub fn parse(text: &str) -> Result<Self, AncestryError> {
        let mut parents: BTreeMap<ShapeClass, BTreeSet<ShapeClass>> = BTreeMap::new();
        for (ln, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let syntax = |message: String| AncestryError::Syntax { line: ln + 1, message };
            let (child, parent) = body.split_once("<-").ok_or_else(|| syntax("expected '<-'".into()))?;
            let child: ShapeClass = child.trim().parse().map_err(|e| syntax(format!("{e}")))?;
            let parent: ShapeClass = parent.trim().parse().map_err(|e| syntax(format!("{e}")))?;
            parents.entry(child).or_default().insert(parent);
        }
        let g = Self { parents };
        for s in ShapeClass::ALL {
            if g.ancestors(*s).contains(s) {
                return Err(AncestryError::Cycle(*s));
            }
        }
        Ok(g)
    }

    /// The committed graph.
    pub fn bundled() -> &'static AncestryGraph {
        static GRAPH: OnceLock<AncestryGraph> = OnceLock::new();
        GRAPH.get_or_init(|| AncestryGraph::parse(EDGES).expect("bundled ancestry graph is valid"))
    }

    pub fn direct_parents(&self, shape: ShapeClass) -> BTreeSet<ShapeClass> {
        self.parents.get(&shape).cloned().unwrap_or_default()
    }

    /// Transitive predecessors of `shape`, excluding `shape` unless the
    /// graph is cyclic.
    pub fn ancestors(&self, shape: ShapeClass) -> BTreeSet<ShapeClass> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<ShapeClass> = self.direct_parents(shape).into_iter().collect();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                stack.extend(self.direct_parents(s));
            }
        }
        seen
    }

    /// `shape` together with all of its ancestors.
    pub fn closure(&self, shapes: impl IntoIterator<Item = ShapeClass>) -> BTreeSet<ShapeClass> {
        let mut out = BTreeSet::new();
        for s in shapes {
            out.insert(s);
            out.extend(self.ancestors(s));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.parents.values().map(BTreeSet::len).sum()
    }
}

/// Ancestors of `shape` in the committed graph.
pub fn ancestors(shape: ShapeClass) -> BTreeSet<ShapeClass> {
    AncestryGraph::bundled().ancestors(shape)
}
