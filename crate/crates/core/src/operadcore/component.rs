use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::collection::SymmetricCollection;
use crate::chaincx::{
    coinvariants, cone, direct_sum, homology, shift, tensor_many, unit_complex, BasisRef, ChainMap, Complex,
    GroupAction, HomologyProfile,
};
use crate::error::{Error, Result};
use crate::exactalg::{determinant, ExactMatrix, Ring, Scalar};
use crate::treecomb::{
    automorphisms, canonical_children, canonical_code, canonical_order, enumerate_reduced, is_reduced, vertex_codes,
    AutGroup, CanonicalCode, MarkedTree, VertexKind,
};

/// A complex `M` of `n`-ary generating operations with trivial `Σ_n`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCollection {
    pub n: usize,
    pub m_complex: Complex,
}

impl GeneratorCollection {
    pub fn new(n: usize, m_complex: Complex) -> GeneratorCollection {
        GeneratorCollection { n, m_complex }
    }

    pub fn ring(&self) -> Ring {
        self.m_complex.ring()
    }
}

/// `M = cone(id_k)[s]` in arity `n`: basis `b` in degree `s`, `a` in degree `s + 1`, `d a = b`.
pub fn make_generator_collection(ring: Ring, n: usize, s: i32) -> GeneratorCollection {
    let k = unit_complex(ring);
    let m = shift(&cone(&ChainMap::identity(&k)), s);
    let basis = BTreeMap::from([(s, vec!["b".to_string()]), (s + 1, vec!["a".to_string()])]);
    let diffs = m.differential_degrees().map(|i| (i, m.differential(i))).collect();
    GeneratorCollection::new(n, Complex::new(ring, basis, diffs).expect("relabeled cone"))
}

/// One summand of the coproduct: the tensor product attached to a reduced tree, and its
/// coinvariants under the tree's automorphisms.
#[derive(Clone, Debug)]
pub struct TreeComponent {
    pub tree: MarkedTree,
    pub code: CanonicalCode,
    /// Operation vertices in canonical order, then slots in canonical order.
    pub factor_order: Vec<usize>,
    pub aut: AutGroup,
    pub raw: Complex,
    /// The action of each generator of `aut` on `raw` (empty when `raw` is zero).
    pub aut_action: Vec<ChainMap>,
    pub component: Complex,
    pub projection: ChainMap,
}

impl TreeComponent {
    pub fn slot_count(&self) -> usize {
        self.tree.slot_count()
    }
}

fn factor_complex(o: &SymmetricCollection, gen: &GeneratorCollection, t: &MarkedTree, v: usize) -> Complex {
    match t.kind(v) {
        VertexKind::Slot => gen.m_complex.clone(),
        VertexKind::Operation => match t.tree().valence(v) {
            1 => o.reduced_unary().clone(),
            k => o.component(k),
        },
        VertexKind::Argument(_) => unreachable!("arguments carry no factor"),
    }
}

pub fn tree_component(o: &SymmetricCollection, gen: &GeneratorCollection, t: &MarkedTree) -> Result<TreeComponent> {
    let ring = o.ring();
    if gen.ring() != ring {
        return Err(Error::RingMismatch(ring, gen.ring()));
    }
    if !is_reduced(t) {
        return Err(Error::InvalidTree("tree is not reduced".into()));
    }
    if t.slot_count() > 0 && t.n() != gen.n {
        return Err(Error::InvalidMarking(format!("slots have valence {} but M is {}-ary", t.n(), gen.n)));
    }
    let order = canonical_order(t);
    let mut factor_order: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&v| t.kind(v) == VertexKind::Operation)
        .collect();
    factor_order.extend(order.iter().copied().filter(|&v| t.is_slot(v)));
    let factors: Vec<Complex> = factor_order.iter().map(|&v| factor_complex(o, gen, t, v)).collect();
    let refs: Vec<&Complex> = factors.iter().collect();
    let tp = tensor_many(ring, &refs)?;
    let aut = automorphisms(t);

    let generators = if tp.complex.is_zero() {
        Vec::new()
    } else {
        aut.generators
            .iter()
            .map(|sigma| aut_action(o, t, &factor_order, &factors, &tp.tuples, &tp.complex, sigma))
            .collect::<Result<Vec<_>>>()?
    };
    let action = GroupAction::new(tp.complex.clone(), generators.clone(), aut.order)?;
    let (component, projection) = coinvariants(&action)?;
    Ok(TreeComponent {
        tree: t.clone(),
        code: canonical_code(t),
        factor_order,
        aut,
        raw: tp.complex,
        aut_action: generators,
        component,
        projection,
    })
}

/// The chain automorphism of the raw tensor product induced by a vertex permutation.
///
/// The factor at `v` moves to `σ(v)`; at an operation vertex it is first acted on by the
/// permutation `σ` induces between the canonical children of `v` and of `σ(v)`.
fn aut_action(
    o: &SymmetricCollection,
    t: &MarkedTree,
    factor_order: &[usize],
    factors: &[Complex],
    tuples: &BTreeMap<i32, Vec<Vec<BasisRef>>>,
    raw: &Complex,
    sigma: &[usize],
) -> Result<ChainMap> {
    let ring = raw.ring();
    let codes = vertex_codes(t);
    let mut pos = vec![usize::MAX; t.num_vertices()];
    for (p, &v) in factor_order.iter().enumerate() {
        pos[v] = p;
    }
    let target_pos: Vec<usize> = factor_order.iter().map(|&v| pos[sigma[v]]).collect();
    // Per factor, per degree: transposed action matrix, or None for the identity.
    let mut local: Vec<Option<BTreeMap<i32, ExactMatrix>>> = Vec::with_capacity(factors.len());
    for (p, &v) in factor_order.iter().enumerate() {
        let mut act = None;
        if t.kind(v) == VertexKind::Operation && t.tree().valence(v) >= 2 {
            let from = canonical_children(t, &codes, v);
            let to = canonical_children(t, &codes, sigma[v]);
            let perm: Vec<usize> = from
                .iter()
                .map(|&c| to.iter().position(|&x| x == sigma[c]).expect("automorphism maps children to children"))
                .collect();
            let rho = o.act(&perm);
            if !rho.is_identity() {
                act = Some(factors[p].degrees().map(|i| (i, rho.component(i).transpose())).collect());
            }
        }
        local.push(act);
    }
    let index: HashMap<Vec<BasisRef>, BasisRef> = tuples
        .iter()
        .flat_map(|(&n, v)| v.iter().enumerate().map(move |(k, tu)| (tu.clone(), (n, k))))
        .collect();
    let k = factors.len();
    let mut comps = BTreeMap::new();
    for (&n, cols) in tuples {
        let mut entries = Vec::new();
        for (col, tu) in cols.iter().enumerate() {
            let mut sign_odd = false;
            for a in 0..k {
                for b in a + 1..k {
                    if target_pos[a] > target_pos[b] && tu[a].0 % 2 != 0 && tu[b].0 % 2 != 0 {
                        sign_odd = !sign_odd;
                    }
                }
            }
            // Expand the tensor product of per-factor images.
            let mut terms: Vec<(Vec<BasisRef>, Scalar)> = vec![(vec![(0, 0); k], Scalar::one(ring))];
            for (p, &(deg, x)) in tu.iter().enumerate() {
                let q = target_pos[p];
                match &local[p] {
                    None => terms.iter_mut().for_each(|(u, _)| u[q] = (deg, x)),
                    Some(mats) => {
                        let image = mats[&deg].row(x);
                        let mut next = Vec::with_capacity(terms.len() * image.len());
                        for (u, c) in &terms {
                            for (&y, e) in image {
                                let mut u = u.clone();
                                u[q] = (deg, y);
                                next.push((u, c * e));
                            }
                        }
                        terms = next;
                    }
                }
            }
            for (u, c) in terms {
                let (m, row) = index[&u];
                debug_assert_eq!(m, n);
                let c = if sign_odd { -c } else { c };
                entries.push((row, col, c));
            }
        }
        let dim = cols.len();
        let mut mat = ExactMatrix::zeros(ring, dim, dim);
        for (r, c, x) in entries {
            mat.add_to(r, c, &x);
        }
        comps.insert(n, mat);
    }
    ChainMap::new(raw.clone(), raw.clone(), comps)
}

/// The coproduct in one arity, truncated to trees with at most `max_s` slots.
#[derive(Clone, Debug)]
pub struct CoproductTruncation {
    pub r: usize,
    pub max_s: usize,
    /// Sorted by slot count, then canonical code.
    pub parts: Vec<TreeComponent>,
    pub total: Complex,
    pub injections: Vec<ChainMap>,
    /// `O(r)` into the slot-free block of `total`.
    pub inclusion: ChainMap,
}

impl CoproductTruncation {
    pub fn parts_with_slots(&self, s_count: usize) -> impl Iterator<Item = &TreeComponent> + '_ {
        self.parts.iter().filter(move |p| p.slot_count() == s_count)
    }

    /// Composes the inclusion with the projection onto the slot-free block and checks
    /// that the result is invertible in every degree.
    pub fn inclusion_is_split_onto_base(&self) -> bool {
        let src = self.inclusion.source();
        let degrees: std::collections::BTreeSet<i32> = src
            .degrees()
            .chain(self.parts_with_slots(0).flat_map(|p| p.component.degrees().collect::<Vec<_>>()))
            .collect();
        degrees.into_iter().all(|i| {
            let base_rows: Vec<usize> = self
                .parts
                .iter()
                .zip(&self.injections)
                .filter(|(p, _)| p.slot_count() == 0)
                .flat_map(|(p, inj)| {
                    let m = inj.component(i);
                    (0..p.component.dim(i))
                        .map(move |c| m.column(c).iter().position(|x| !x.is_zero()).expect("injection column"))
                })
                .collect();
            let inc = self.inclusion.component(i);
            let block = inc.submatrix(&base_rows, &(0..inc.ncols()).collect::<Vec<_>>());
            block.nrows() == block.ncols() && (block.nrows() == 0 || determinant(&block).is_unit())
        })
    }
}

pub fn coproduct_component(
    o: &SymmetricCollection,
    gen: &GeneratorCollection,
    r: usize,
    max_s: usize,
) -> Result<CoproductTruncation> {
    let ring = o.ring();
    let trees: Vec<MarkedTree> = enumerate_reduced(r, gen.n, max_s, o.enum_flags()).into_iter().flatten().collect();
    let parts: Vec<TreeComponent> = trees
        .par_iter()
        .map(|t| tree_component(o, gen, t))
        .collect::<Result<Vec<_>>>()?;
    let complexes: Vec<Complex> = parts.iter().map(|p| p.component.clone()).collect();
    let (total, injections) = direct_sum(ring, &complexes)?;
    let inclusion = base_inclusion(o, r, &parts, &injections, &total)?;
    Ok(CoproductTruncation {
        r,
        max_s,
        parts,
        total,
        injections,
        inclusion,
    })
}

/// Identifies `O(r)` with the slot-free trees: the `r`-corolla, and for `r = 1` the
/// one-vertex argument tree carrying the unit next to the corolla carrying `Ō(1)`.
fn base_inclusion(
    o: &SymmetricCollection,
    r: usize,
    parts: &[TreeComponent],
    injections: &[ChainMap],
    total: &Complex,
) -> Result<ChainMap> {
    let ring = o.ring();
    let base = o.component(r);
    let corolla_code = {
        let args: Vec<String> = (1..=r).map(|l| format!("a{l}")).collect();
        format!("o({})", args.join(","))
    };
    let find = |code: &str| parts.iter().position(|p| p.slot_count() == 0 && p.code.as_str() == code);
    let corolla = find(&corolla_code);
    let arg = if r == 1 { find("a1") } else { None };
    let split = o.unit_split();
    let mut comps = BTreeMap::new();
    for i in base.degrees() {
        let mut m = ExactMatrix::zeros(ring, total.dim(i), base.dim(i));
        for j in 0..base.dim(i) {
            let (part, col) = if r == 1 {
                if i == 0 && j == split.unit {
                    (arg, 0)
                } else {
                    (corolla, if i == 0 && j > split.unit { j - 1 } else { j })
                }
            } else {
                (corolla, j)
            };
            let part = part.ok_or_else(|| {
                Error::InvalidCollection(format!("no slot-free tree carries O({r}) in degree {i}"))
            })?;
            let column = injections[part].component(i).column(col);
            for (row, x) in column.iter().enumerate() {
                if !x.is_zero() {
                    m.set(row, j, x.clone());
                }
            }
        }
        comps.insert(i, m);
    }
    ChainMap::new(base, total.clone(), comps)
}

/// Homology of one tree component, with whether it vanishes.
#[derive(Clone, Debug)]
pub struct ComponentVerdict {
    pub code: CanonicalCode,
    pub s_count: usize,
    pub aut_order: u64,
    pub dims: BTreeMap<i32, usize>,
    pub homology: HomologyProfile,
    pub acyclic: bool,
}

/// Per-component homology of a truncated coproduct and the resulting verdict on `i`.
#[derive(Clone, Debug)]
pub struct InclusionCheck {
    pub r: usize,
    pub max_s: usize,
    pub records: Vec<ComponentVerdict>,
    pub base_split: bool,
    /// `i` is a quasi-isomorphism up to `|S| ≤ max_s`.
    pub quasi_iso: bool,
}

impl InclusionCheck {
    pub fn failing(&self) -> impl Iterator<Item = &ComponentVerdict> + '_ {
        self.records.iter().filter(|c| c.s_count >= 1 && !c.acyclic)
    }
}

pub fn analyze(trunc: &CoproductTruncation) -> InclusionCheck {
    let records: Vec<ComponentVerdict> = trunc
        .parts
        .par_iter()
        .map(|p| {
            let h = homology(&p.component);
            ComponentVerdict {
                code: p.code.clone(),
                s_count: p.slot_count(),
                aut_order: p.aut.order,
                dims: p.component.dims(),
                acyclic: h.is_zero(),
                homology: h,
            }
        })
        .collect();
    let base_split = trunc.inclusion_is_split_onto_base();
    let quasi_iso = base_split && records.iter().all(|c| c.s_count == 0 || c.acyclic);
    InclusionCheck {
        r: trunc.r,
        max_s: trunc.max_s,
        records,
        base_split,
        quasi_iso,
    }
}

pub fn check_inclusion_qiso(
    o: &SymmetricCollection,
    gen: &GeneratorCollection,
    r: usize,
    max_s: usize,
) -> Result<InclusionCheck> {
    Ok(analyze(&coproduct_component(o, gen, r, max_s)?))
}
