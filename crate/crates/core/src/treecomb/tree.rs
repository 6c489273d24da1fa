use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A rooted tree with arrows pointing towards the root.
///
/// Each non-root vertex has exactly one outgoing arrow, stored as its parent; the
/// valence `|v|` of a vertex is the number of its incoming arrows (children).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<Option<usize>>,
    root: usize,
    children: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree on `num_vertices` vertices from `(source, target)` arrows.
    pub fn from_arrows(num_vertices: usize, arrows: &[(usize, usize)]) -> Result<Tree> {
        let mut parent = vec![None; num_vertices];
        for &(s, t) in arrows {
            if s >= num_vertices || t >= num_vertices {
                return Err(Error::InvalidTree(format!("arrow ({s},{t}) has an unknown endpoint")));
            }
            if parent[s].is_some() {
                return Err(Error::InvalidTree(format!("vertex {s} has two outgoing arrows")));
            }
            parent[s] = Some(t);
        }
        Tree::from_parents(parent)
    }

    /// Builds a tree from a parent map; `None` marks the root.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Tree> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidTree(format!(
                "expected exactly one vertex without outgoing arrow, found {}",
                roots.len()
            )));
        }
        let root = roots[0];
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == v {
                    return Err(Error::InvalidTree(format!("bad arrow out of vertex {v}")));
                }
                children[p].push(v);
            }
        }
        // Connectivity (and hence acyclicity): every vertex reaches the root.
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidTree("cycle".into()));
            }
            stack.extend(&children[v]);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        Ok(Tree { parent, root, children })
    }

    pub fn single_vertex() -> Tree {
        Tree::from_parents(vec![None]).unwrap()
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.children[v].len()
    }

    /// Arrows as `(source, target)` pairs, i.e. `(child, parent)`.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        (0..self.num_vertices())
            .filter_map(|v| self.parent[v].map(|p| (v, p)))
            .collect()
    }

    /// Initial vertices: valence 0.
    pub fn initial_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.valence(v) == 0).collect()
    }

    pub fn depth(&self, v: usize) -> usize {
        let mut d = 0;
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            d += 1;
            cur = p;
        }
        d
    }
}

/// An `(r, n)`-marking: argument labels `1..=r` on distinct initial vertices, and a set
/// `S` of valence-`n` vertices carrying the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub r: usize,
    pub n: usize,
    /// `args[i]` is the vertex carrying label `i + 1`.
    pub args: Vec<usize>,
    pub slots: BTreeSet<usize>,
}

/// What a vertex of a marked tree stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    /// An operation of the operad: contributes a factor `O(|v|)`.
    Operation,
    /// A slot for the generating complex `M`.
    Slot,
    /// An argument leaf, with its label in `1..=r`.
    Argument(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedTree {
    tree: Tree,
    marking: Marking,
    kinds: Vec<VertexKind>,
}

impl MarkedTree {
    pub fn new(tree: Tree, marking: Marking) -> Result<MarkedTree> {
        let nv = tree.num_vertices();
        if marking.args.len() != marking.r {
            return Err(Error::InvalidMarking(format!(
                "{} argument vertices for r = {}",
                marking.args.len(),
                marking.r
            )));
        }
        let mut kinds = vec![VertexKind::Operation; nv];
        for (i, &v) in marking.args.iter().enumerate() {
            if v >= nv {
                return Err(Error::InvalidMarking(format!("argument {} on unknown vertex {v}", i + 1)));
            }
            if tree.valence(v) != 0 {
                return Err(Error::InvalidMarking(format!("argument {} on non-initial vertex {v}", i + 1)));
            }
            if kinds[v] != VertexKind::Operation {
                return Err(Error::InvalidMarking(format!("argument map is not injective at vertex {v}")));
            }
            kinds[v] = VertexKind::Argument(i + 1);
        }
        for &v in &marking.slots {
            if v >= nv {
                return Err(Error::InvalidMarking(format!("slot on unknown vertex {v}")));
            }
            if tree.valence(v) != marking.n {
                return Err(Error::InvalidMarking(format!(
                    "slot vertex {v} has valence {} ≠ n = {}",
                    tree.valence(v),
                    marking.n
                )));
            }
            if kinds[v] != VertexKind::Operation {
                return Err(Error::InvalidMarking(format!("vertex {v} is both an argument and a slot")));
            }
            kinds[v] = VertexKind::Slot;
        }
        Ok(MarkedTree { tree, marking, kinds })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn marking(&self) -> &Marking {
        &self.marking
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn r(&self) -> usize {
        self.marking.r
    }

    pub fn n(&self) -> usize {
        self.marking.n
    }

    pub fn slot_count(&self) -> usize {
        self.marking.slots.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.tree.num_vertices()
    }

    pub fn is_slot(&self, v: usize) -> bool {
        self.kinds[v] == VertexKind::Slot
    }

    pub fn is_argument(&self, v: usize) -> bool {
        matches!(self.kinds[v], VertexKind::Argument(_))
    }

    /// Vertices outside `S ∪ Arg`.
    pub fn operation_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices())
            .filter(|&v| self.kinds[v] == VertexKind::Operation)
            .collect()
    }

    /// Indented rendering, one vertex per line, children in canonical order.
    pub fn render(&self) -> String {
        let codes = super::canon::vertex_codes(self);
        let mut out = String::new();
        let mut stack = vec![(self.tree.root(), 0usize)];
        while let Some((v, depth)) = stack.pop() {
            let (kind, slot, arg) = match self.kinds[v] {
                VertexKind::Operation => ("O", "no", "-".to_string()),
                VertexKind::Slot => ("S", "yes", "-".to_string()),
                VertexKind::Argument(l) => ("A", "no", l.to_string()),
            };
            let _ = writeln!(
                out,
                "{}{kind} valence={} S={slot} arg={arg}",
                "  ".repeat(depth),
                self.tree.valence(v)
            );
            let mut ch = self.tree.children(v).to_vec();
            ch.sort_by(|a, b| codes[*a].cmp(&codes[*b]).then(a.cmp(b)));
            stack.extend(ch.into_iter().rev().map(|c| (c, depth + 1)));
        }
        out
    }
}

/// The arrow condition: every arrow leaves a slot or an argument, or enters a slot.
pub fn is_reduced(t: &MarkedTree) -> bool {
    t.tree()
        .arrows()
        .into_iter()
        .all(|(s, tg)| t.is_slot(s) || t.is_argument(s) || t.is_slot(tg))
}
