use std::fmt;

use serde::{Deserialize, Serialize};

use super::tree::{MarkedTree, VertexKind};

/// Isomorphism-complete code of a marked tree.
///
/// Built bottom-up: an argument leaf is `a<label>`, an operation or slot vertex is
/// `o(…)` / `s(…)` around its children's codes sorted bytewise and joined by commas.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for CanonicalCode {
    fn from(s: &str) -> Self {
        CanonicalCode(s.to_string())
    }
}

pub(crate) fn node_code(kind: VertexKind, mut child_codes: Vec<&str>) -> String {
    match kind {
        VertexKind::Argument(l) => format!("a{l}"),
        VertexKind::Operation | VertexKind::Slot => {
            child_codes.sort_unstable();
            let tag = if kind == VertexKind::Slot { 's' } else { 'o' };
            format!("{tag}({})", child_codes.join(","))
        }
    }
}

/// Code of the subtree below every vertex.
pub fn vertex_codes(t: &MarkedTree) -> Vec<String> {
    let tree = t.tree();
    let mut order = Vec::with_capacity(tree.num_vertices());
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(tree.children(v));
    }
    let mut codes = vec![String::new(); tree.num_vertices()];
    for &v in order.iter().rev() {
        let ch: Vec<&str> = tree.children(v).iter().map(|&c| codes[c].as_str()).collect();
        let code = node_code(t.kind(v), ch);
        codes[v] = code;
    }
    codes
}

pub fn canonical_code(t: &MarkedTree) -> CanonicalCode {
    CanonicalCode(vertex_codes(t).swap_remove(t.tree().root()))
}

/// Children of `v` sorted by subtree code, ties by vertex index.
pub fn canonical_children(t: &MarkedTree, codes: &[String], v: usize) -> Vec<usize> {
    let mut ch = t.tree().children(v).to_vec();
    ch.sort_by(|a, b| codes[*a].cmp(&codes[*b]).then(a.cmp(b)));
    ch
}

/// Preorder traversal with children in canonical order.
pub fn canonical_order(t: &MarkedTree) -> Vec<usize> {
    let codes = vertex_codes(t);
    let mut out = Vec::with_capacity(t.num_vertices());
    let mut stack = vec![t.tree().root()];
    while let Some(v) = stack.pop() {
        out.push(v);
        stack.extend(canonical_children(t, &codes, v).into_iter().rev());
    }
    out
}

/// Automorphisms of a marked tree, as generating vertex permutations plus the group order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    /// `g[v]` is the image of vertex `v`.
    pub generators: Vec<Vec<usize>>,
    pub order: u64,
}

impl AutGroup {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// Generated by swaps of adjacent isomorphic sibling subtrees; the order is the
/// product over vertices of the factorials of repeated child-code multiplicities.
pub fn automorphisms(t: &MarkedTree) -> AutGroup {
    let codes = vertex_codes(t);
    let n = t.num_vertices();
    let mut generators = Vec::new();
    let mut order: u64 = 1;
    for v in 0..n {
        let ch = canonical_children(t, &codes, v);
        let mut start = 0;
        while start < ch.len() {
            let mut end = start + 1;
            while end < ch.len() && codes[ch[end]] == codes[ch[start]] {
                end += 1;
            }
            for m in 2..=(end - start) as u64 {
                order = order.checked_mul(m).expect("automorphism group order overflows u64");
            }
            for k in start..end.saturating_sub(1) {
                let mut perm: Vec<usize> = (0..n).collect();
                let mut pairs = Vec::new();
                match_subtrees(t, &codes, ch[k], ch[k + 1], &mut pairs);
                for (a, b) in pairs {
                    perm[a] = b;
                    perm[b] = a;
                }
                generators.push(perm);
            }
            start = end;
        }
    }
    AutGroup { generators, order }
}

/// Pairs up two isomorphic subtrees vertex by vertex, following canonical child order.
fn match_subtrees(t: &MarkedTree, codes: &[String], a: usize, b: usize, out: &mut Vec<(usize, usize)>) {
    debug_assert_eq!(codes[a], codes[b]);
    out.push((a, b));
    let ca = canonical_children(t, codes, a);
    let cb = canonical_children(t, codes, b);
    for (x, y) in ca.into_iter().zip(cb) {
        match_subtrees(t, codes, x, y, out);
    }
}

/// Whether `perm` is an automorphism of the marked tree.
pub fn is_automorphism(t: &MarkedTree, perm: &[usize]) -> bool {
    let tree = t.tree();
    let n = t.num_vertices();
    if perm.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut hit[p], true) {
            return false;
        }
    }
    (0..n).all(|v| {
        t.kind(v) == t.kind(perm[v]) && tree.parent(v).map(|p| perm[p]) == tree.parent(perm[v])
    })
}
