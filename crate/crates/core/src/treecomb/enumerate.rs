use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use super::canon::{canonical_code, node_code};
use super::tree::{is_reduced, MarkedTree, Marking, Tree, VertexKind};

/// Which operation vertices may appear, reflecting which operad components vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EnumFlags {
    /// Operation vertices of valence 0 (needs `O(0) ≠ 0`).
    pub allow_nullary: bool,
    /// Operation vertices of valence 1 (needs a nonzero reduced part of `O(1)`).
    pub allow_unary: bool,
}

/// Proven size bounds for reduced trees with given parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuralBound {
    pub max_operation_vertices: usize,
    pub max_vertices: usize,
    pub max_valence: usize,
}

/// Every non-root operation vertex hangs below a slot, and operation vertices only
/// have slots and arguments as children. So there are at most `1 + n·s` operation
/// vertices, each of valence at most `r + s`; slots have valence `n`.
pub fn structural_bound(r: usize, n: usize, s_count: usize, _flags: EnumFlags) -> StructuralBound {
    let max_operation_vertices = 1 + n * s_count;
    let slot_valence = if s_count > 0 { n } else { 0 };
    StructuralBound {
        max_operation_vertices,
        max_vertices: r + s_count + max_operation_vertices,
        max_valence: (r + s_count).max(slot_valence),
    }
}

#[derive(Debug)]
struct Node {
    kind: VertexKind,
    /// Sorted by code.
    children: Vec<Rc<Node>>,
    code: String,
}

impl Node {
    fn new(kind: VertexKind, mut children: Vec<Rc<Node>>) -> Rc<Node> {
        children.sort_by(|a, b| a.code.cmp(&b.code));
        let code = node_code(kind, children.iter().map(|c| c.code.as_str()).collect());
        Rc::new(Node { kind, children, code })
    }
}

/// Where a subtree is attached: below a slot (or at the root) anything may appear;
/// below an operation only slots and arguments may.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Position {
    Free,
    UnderOperation,
}

type Labels = u32;
type Forest = Vec<Rc<Node>>;

struct Generator {
    n: usize,
    flags: EnumFlags,
    subtrees: HashMap<(Position, Labels, usize), Rc<Vec<Rc<Node>>>>,
    forests: HashMap<(usize, Position, Labels, usize), Rc<Vec<Forest>>>,
}

impl Generator {
    fn subtrees(&mut self, pos: Position, labels: Labels, sigma: usize) -> Rc<Vec<Rc<Node>>> {
        if let Some(v) = self.subtrees.get(&(pos, labels, sigma)) {
            return v.clone();
        }
        let mut out: BTreeMap<String, Rc<Node>> = BTreeMap::new();
        // argument leaf
        if sigma == 0 && labels.count_ones() == 1 {
            let node = Node::new(VertexKind::Argument(labels.trailing_zeros() as usize + 1), Vec::new());
            out.insert(node.code.clone(), node);
        }
        // slot with exactly n children
        if sigma >= 1 {
            for f in self.forest(self.n, Position::Free, labels, sigma - 1).iter() {
                let node = Node::new(VertexKind::Slot, f.clone());
                out.insert(node.code.clone(), node);
            }
        }
        // operation vertex, children among slots and arguments
        if pos == Position::Free {
            let max_k = labels.count_ones() as usize + sigma;
            for k in 0..=max_k {
                if (k == 0 && !self.flags.allow_nullary) || (k == 1 && !self.flags.allow_unary) {
                    continue;
                }
                for f in self.forest(k, Position::UnderOperation, labels, sigma).iter() {
                    let node = Node::new(VertexKind::Operation, f.clone());
                    out.insert(node.code.clone(), node);
                }
            }
        }
        let v = Rc::new(out.into_values().collect::<Vec<_>>());
        self.subtrees.insert((pos, labels, sigma), v.clone());
        v
    }

    /// Multisets of `k` subtrees that together use exactly `labels` and `sigma` slots.
    fn forest(&mut self, k: usize, pos: Position, labels: Labels, sigma: usize) -> Rc<Vec<Forest>> {
        if let Some(v) = self.forests.get(&(k, pos, labels, sigma)) {
            return v.clone();
        }
        let mut out: BTreeMap<Vec<String>, Forest> = BTreeMap::new();
        if k == 0 {
            if labels == 0 && sigma == 0 {
                out.insert(Vec::new(), Vec::new());
            }
        } else {
            // first child takes a sub-mask of labels and some of the slots
            let mut sub = labels;
            loop {
                for s1 in 0..=sigma {
                    let firsts = self.subtrees(pos, sub, s1);
                    if firsts.is_empty() {
                        continue;
                    }
                    let rests = self.forest(k - 1, pos, labels & !sub, sigma - s1);
                    for first in firsts.iter() {
                        for rest in rests.iter() {
                            let mut f = rest.clone();
                            f.push(first.clone());
                            f.sort_by(|a, b| a.code.cmp(&b.code));
                            let key: Vec<String> = f.iter().map(|c| c.code.clone()).collect();
                            out.entry(key).or_insert(f);
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & labels;
            }
        }
        let v = Rc::new(out.into_values().collect::<Vec<_>>());
        self.forests.insert((k, pos, labels, sigma), v.clone());
        v
    }
}

fn to_marked_tree(root: &Node, r: usize, n: usize) -> MarkedTree {
    let mut parents: Vec<Option<usize>> = Vec::new();
    let mut args = vec![usize::MAX; r];
    let mut slots = BTreeSet::new();
    let mut stack: Vec<(&Node, Option<usize>)> = vec![(root, None)];
    while let Some((node, parent)) = stack.pop() {
        let v = parents.len();
        parents.push(parent);
        match node.kind {
            VertexKind::Argument(l) => args[l - 1] = v,
            VertexKind::Slot => {
                slots.insert(v);
            }
            VertexKind::Operation => {}
        }
        stack.extend(node.children.iter().rev().map(|c| (c.as_ref(), Some(v))));
    }
    let tree = Tree::from_parents(parents).expect("generated parent map is a tree");
    MarkedTree::new(tree, Marking { r, n, args, slots }).expect("generated marking is valid")
}

/// One representative per isomorphism class of reduced `(r, n)`-marked trees with
/// `|S| ≤ max_s`, grouped by `|S|` (index = `|S|`), each group sorted by canonical code.
///
/// Representatives have their vertices numbered in canonical preorder.
pub fn enumerate_reduced(r: usize, n: usize, max_s: usize, flags: EnumFlags) -> Vec<Vec<MarkedTree>> {
    assert!(r < 32, "at most 31 argument labels");
    let mut generator = Generator {
        n,
        flags,
        subtrees: HashMap::new(),
        forests: HashMap::new(),
    };
    let all: Labels = if r == 0 { 0 } else { (1u32 << r) - 1 };
    (0..=max_s)
        .map(|s| {
            let roots = generator.subtrees(Position::Free, all, s);
            let mut by_code: BTreeMap<String, MarkedTree> = BTreeMap::new();
            for root in roots.iter() {
                let t = to_marked_tree(root, r, n);
                debug_assert_eq!(canonical_code(&t).as_str(), root.code);
                if is_reduced(&t) && respects_flags(&t, flags) {
                    by_code.entry(root.code.clone()).or_insert(t);
                }
            }
            by_code.into_values().collect()
        })
        .collect()
}

/// The vanishing constraints encoded by `flags`.
pub fn respects_flags(t: &MarkedTree, flags: EnumFlags) -> bool {
    t.operation_vertices().into_iter().all(|v| match t.tree().valence(v) {
        0 => flags.allow_nullary,
        1 => flags.allow_unary,
        _ => true,
    })
}
