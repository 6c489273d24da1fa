#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use operad_coproduct::chaincx::Complex;
use operad_coproduct::exactalg::{kernel_basis, ExactMatrix, Ring, Scalar};
use operad_coproduct::treecomb::{EnumFlags, MarkedTree, Marking, Tree, VertexKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x0b5e_55ed;

/// Seed for randomized suites; override with `OPCOPROD_SEED`.
pub fn seed() -> u64 {
    std::env::var("OPCOPROD_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt)
}

// ---------------------------------------------------------------------------
// Brute-force trees

/// Parent maps with `parent[v] < v`; every rooted tree on `k` vertices has such a numbering.
pub fn parent_arrays(k: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![vec![None]];
    for v in 1..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..v).map(move |q| {
                    let mut p = p.clone();
                    p.push(Some(q));
                    p
                })
            })
            .collect();
    }
    out
}

fn children_of(t: &MarkedTree) -> Vec<Vec<usize>> {
    let n = t.num_vertices();
    let mut ch = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = t.tree().parent(v) {
            ch[p].push(v);
        }
    }
    ch
}

/// Counts structure-preserving bijections `a → b` (root, kinds, labels, arrows), stopping
/// after the first one unless `all`.
pub fn count_isomorphisms(a: &MarkedTree, b: &MarkedTree, all: bool) -> usize {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.r() != b.r() || a.slot_count() != b.slot_count() {
        return 0;
    }
    let ca = children_of(a);
    let cb = children_of(b);
    // breadth-first order of a, so parents are mapped before children
    let mut order = vec![a.tree().root()];
    let mut i = 0;
    while i < order.len() {
        order.extend(&ca[order[i]]);
        i += 1;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        a: &MarkedTree,
        b: &MarkedTree,
        cb: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        all: bool,
    ) -> usize {
        if k == order.len() {
            return 1;
        }
        let v = order[k];
        let candidates: Vec<usize> = match a.tree().parent(v) {
            None => vec![b.tree().root()],
            Some(p) => cb[map[p]].clone(),
        };
        let mut total = 0;
        for w in candidates {
            if used[w] || a.kind(v) != b.kind(w) || a.tree().valence(v) != b.tree().valence(w) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            total += go(k + 1, order, a, b, cb, map, used, all);
            used[w] = false;
            map[v] = usize::MAX;
            if total > 0 && !all {
                break;
            }
        }
        total
    }
    go(0, &order, a, b, &cb, &mut map, &mut used, all)
}

pub fn isomorphic(a: &MarkedTree, b: &MarkedTree) -> bool {
    count_isomorphisms(a, b, false) > 0
}

/// A cheap isomorphism invariant used only to bucket candidates.
pub fn invariant(t: &MarkedTree) -> Vec<(usize, usize, String)> {
    let mut v: Vec<(usize, usize, String)> = (0..t.num_vertices())
        .map(|x| (t.tree().depth(x), t.tree().valence(x), format!("{:?}", t.kind(x))))
        .collect();
    v.sort();
    v
}

/// The reduced arrow condition, written out independently.
pub fn brute_reduced(t: &MarkedTree) -> bool {
    (0..t.num_vertices()).all(|v| match t.tree().parent(v) {
        None => true,
        Some(p) => t.kind(v) != VertexKind::Operation || t.kind(p) == VertexKind::Slot,
    })
}

fn flags_ok(t: &MarkedTree, flags: EnumFlags) -> bool {
    (0..t.num_vertices()).all(|v| {
        t.kind(v) != VertexKind::Operation
            || match t.tree().valence(v) {
                0 => flags.allow_nullary,
                1 => flags.allow_unary,
                _ => true,
            }
    })
}

fn ordered_selections(pool: &[usize], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in pool.iter().enumerate() {
        let mut rest = pool.to_vec();
        rest.remove(i);
        for mut tail in ordered_selections(&rest, r - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if pool.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets(&pool[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, pool[0]);
            s
        })
        .collect();
    with.extend(subsets(&pool[1..], k));
    with
}

/// Adds `t` to `classes` unless an isomorphic tree is already there.
pub struct ClassSet {
    buckets: HashMap<Vec<(usize, usize, String)>, Vec<MarkedTree>>,
}

impl ClassSet {
    pub fn new() -> ClassSet {
        ClassSet { buckets: HashMap::new() }
    }

    pub fn insert(&mut self, t: MarkedTree) -> bool {
        let bucket = self.buckets.entry(invariant(&t)).or_default();
        if bucket.iter().any(|u| isomorphic(u, &t)) {
            return false;
        }
        bucket.push(t);
        true
    }

    pub fn into_vec(self) -> Vec<MarkedTree> {
        self.buckets.into_values().flatten().collect()
    }
}

/// Iso classes of reduced `(r, n)`-marked trees with at most `max_vertices` vertices and
/// `|S| ≤ max_s`, by exhaustive search; keyed by `|S|`.
pub fn brute_reduced_classes(
    r: usize,
    n: usize,
    max_s: usize,
    flags: EnumFlags,
    max_vertices: usize,
) -> BTreeMap<usize, Vec<MarkedTree>> {
    let mut sets: BTreeMap<usize, ClassSet> = (0..=max_s).map(|s| (s, ClassSet::new())).collect();
    for k in 1..=max_vertices {
        for parents in parent_arrays(k) {
            let tree = Tree::from_parents(parents).unwrap();
            let valence_n: Vec<usize> = (0..k).filter(|&v| tree.valence(v) == n).collect();
            for s in 0..=max_s {
                for slots in subsets(&valence_n, s) {
                    let leaves: Vec<usize> = (0..k)
                        .filter(|&v| tree.valence(v) == 0 && !slots.contains(&v))
                        .collect();
                    if leaves.len() < r {
                        continue;
                    }
                    for args in ordered_selections(&leaves, r) {
                        let marking = Marking { r, n, args, slots: slots.iter().copied().collect() };
                        let t = MarkedTree::new(tree.clone(), marking).unwrap();
                        if brute_reduced(&t) && flags_ok(&t, flags) {
                            sets.get_mut(&s).unwrap().insert(t);
                        }
                    }
                }
            }
        }
    }
    sets.into_iter().map(|(s, c)| (s, c.into_vec())).collect()
}

/// Every marked tree on `k` vertices with operation/slot internal vertices, leaves of any
/// kind, slots of one common valence, and argument labels in increasing (and, for
/// `r ≥ 2`, also decreasing) vertex order.
pub fn all_marked_trees(k: usize) -> Vec<MarkedTree> {
    let mut out = Vec::new();
    for parents in parent_arrays(k) {
        let tree = Tree::from_parents(parents).unwrap();
        let leaves: Vec<usize> = (0..k).filter(|&v| tree.valence(v) == 0).collect();
        let internal: Vec<usize> = (0..k).filter(|&v| tree.valence(v) > 0).collect();
        let combos = 3usize.pow(leaves.len() as u32) << internal.len();
        for code in 0..combos {
            let mut c = code;
            let mut slots = BTreeSet::new();
            let mut args = Vec::new();
            for &v in &internal {
                if c & 1 == 1 {
                    slots.insert(v);
                }
                c >>= 1;
            }
            for &v in &leaves {
                match c % 3 {
                    1 => {
                        slots.insert(v);
                    }
                    2 => args.push(v),
                    _ => {}
                }
                c /= 3;
            }
            let valences: BTreeSet<usize> = slots.iter().map(|&v| tree.valence(v)).collect();
            if valences.len() > 1 {
                continue;
            }
            let n = valences.into_iter().next().unwrap_or(0);
            let r = args.len();
            let mut orders = vec![args.clone()];
            if r >= 2 {
                orders.push(args.iter().rev().copied().collect());
            }
            for a in orders {
                let marking = Marking { r, n, args: a, slots: slots.clone() };
                out.push(MarkedTree::new(tree.clone(), marking).unwrap());
            }
        }
    }
    out
}

/// Closure of a set of vertex permutations under composition.
pub fn group_closure(gens: &[Vec<usize>], n: usize) -> usize {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

// ---------------------------------------------------------------------------
// Random algebra

pub fn random_scalar(ring: Ring, rng: &mut impl Rng, span: i64) -> Scalar {
    Scalar::from_i64(ring, rng.gen_range(-span..=span))
}

pub fn random_matrix(ring: Ring, rng: &mut impl Rng, rows: usize, cols: usize, span: i64, density: f64) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m.set(i, j, random_scalar(ring, rng, span));
            }
        }
    }
    m
}

/// A random complex concentrated in degrees `lo..=hi` over a field: each differential's
/// columns are random combinations of a kernel basis of the next one down.
pub fn random_complex(ring: Ring, rng: &mut impl Rng, lo: i32, hi: i32, max_dim: usize) -> Complex {
    let dims: BTreeMap<i32, usize> = (lo..=hi).map(|i| (i, rng.gen_range(0..=max_dim))).collect();
    let mut diffs: BTreeMap<i32, ExactMatrix> = BTreeMap::new();
    for i in lo + 1..=hi {
        let (rows, cols) = (dims[&(i - 1)], dims[&i]);
        let d = if i == lo + 1 {
            random_matrix(ring, rng, rows, cols, 2, 0.6)
        } else {
            let below = &diffs[&(i - 1)];
            let ker = kernel_basis(below).unwrap();
            let mut d = ExactMatrix::zeros(ring, rows, cols);
            if !ker.is_empty() {
                for j in 0..cols {
                    for v in &ker {
                        if rng.gen_bool(0.5) {
                            let c = random_scalar(ring, rng, 2);
                            for (row, x) in v.iter().enumerate() {
                                d.add_to(row, j, &(&c * x));
                            }
                        }
                    }
                }
            }
            d
        };
        diffs.insert(i, d);
    }
    let basis = dims
        .iter()
        .map(|(&i, &n)| (i, (0..n).map(|k| format!("e{i}.{k}")).collect()))
        .collect();
    Complex::new(ring, basis, diffs).expect("random complex satisfies d² = 0")
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
