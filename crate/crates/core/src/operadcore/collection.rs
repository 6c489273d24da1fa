use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::chaincx::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Ring, Scalar};
use crate::treecomb::EnumFlags;

/// The operads that come with the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuiltinOperad {
    /// Only the unit in arity 1; its coproduct with `F(M, n)` is the free operad.
    Unit,
    /// Commutative algebras, unital: `k` in every arity.
    Com,
    /// Commutative algebras without unit: `k` in every arity ≥ 1.
    ComNonunital,
    /// Associative algebras without unit: `k[Σ_m]` in every arity ≥ 1.
    AssocNonunital,
}

impl BuiltinOperad {
    pub const ALL: [BuiltinOperad; 4] = [
        BuiltinOperad::Unit,
        BuiltinOperad::Com,
        BuiltinOperad::ComNonunital,
        BuiltinOperad::AssocNonunital,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinOperad::Unit => "UNIT",
            BuiltinOperad::Com => "COM",
            BuiltinOperad::ComNonunital => "COM_NONUNITAL",
            BuiltinOperad::AssocNonunital => "ASSOC_NONUNITAL",
        }
    }
}

impl fmt::Display for BuiltinOperad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinOperad {
    type Err = Error;

    fn from_str(s: &str) -> Result<BuiltinOperad> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        BuiltinOperad::ALL
            .into_iter()
            .find(|o| o.name() == norm)
            .ok_or_else(|| Error::UnknownOperad(s.to_string()))
    }
}

/// One arity of a symmetric collection: the complex and the action of the adjacent
/// transpositions `s_1, …, s_{m-1}` (swapping inputs `j` and `j+1`, 0-based `j-1`).
#[derive(Clone, Debug)]
pub struct ArityComponent {
    pub complex: Complex,
    pub transpositions: Vec<ChainMap>,
}

impl ArityComponent {
    fn trivial(complex: Complex, arity: usize) -> ArityComponent {
        let id = ChainMap::identity(&complex);
        ArityComponent {
            complex,
            transpositions: vec![id; arity.saturating_sub(1)],
        }
    }

    pub fn has_trivial_action(&self) -> bool {
        self.transpositions.iter().all(ChainMap::is_identity)
    }
}

/// Splitting `O(1) = k·unit ⊕ Ō(1)`: `unit` indexes the degree-0 basis, and `reduced`
/// is the subcomplex on the remaining basis vectors (in their original order).
#[derive(Clone, Debug)]
pub struct UnitSplit {
    pub unit: usize,
    pub reduced: Complex,
}

#[derive(Debug)]
enum Source {
    Builtin(BuiltinOperad),
    Explicit(BTreeMap<usize, Arc<ArityComponent>>),
}

/// Arity-indexed complexes with symmetric-group actions and a unit splitting in arity 1.
/// Built-in collections are infinite and materialize arities on demand.
#[derive(Debug)]
pub struct SymmetricCollection {
    ring: Ring,
    name: String,
    source: Source,
    cache: Mutex<BTreeMap<usize, Arc<ArityComponent>>>,
    split: UnitSplit,
}

impl SymmetricCollection {
    pub fn builtin(op: BuiltinOperad, ring: Ring) -> SymmetricCollection {
        // every built-in has O(1) = k·unit
        SymmetricCollection {
            ring,
            name: op.name().to_string(),
            source: Source::Builtin(op),
            cache: Mutex::new(BTreeMap::new()),
            split: UnitSplit {
                unit: 0,
                reduced: Complex::zero(ring),
            },
        }
    }

    /// Validates actions (chain maps, involutions, braid relations up to arity 4) and the
    /// unit splitting.
    pub fn explicit(
        ring: Ring,
        name: impl Into<String>,
        components: BTreeMap<usize, ArityComponent>,
        unit_label: &str,
    ) -> Result<SymmetricCollection> {
        for (&m, comp) in &components {
            if comp.complex.ring() != ring {
                return Err(Error::RingMismatch(ring, comp.complex.ring()));
            }
            if comp.transpositions.len() != m.saturating_sub(1) {
                return Err(Error::InvalidCollection(format!(
                    "arity {m} needs {} transposition generators, got {}",
                    m.saturating_sub(1),
                    comp.transpositions.len()
                )));
            }
            check_coxeter(m, comp)?;
        }
        let one = components
            .get(&1)
            .ok_or_else(|| Error::InvalidCollection("arity 1 component (with the unit) is missing".into()))?;
        let unit = one
            .complex
            .labels(0)
            .iter()
            .position(|l| l == unit_label)
            .ok_or_else(|| Error::InvalidCollection(format!("unit {unit_label:?} is not a degree-0 generator in arity 1")))?;
        let split = unit_split(&one.complex, unit)?;
        Ok(SymmetricCollection {
            ring,
            name: name.into(),
            source: Source::Explicit(components.into_iter().map(|(m, c)| (m, Arc::new(c))).collect()),
            cache: Mutex::new(BTreeMap::new()),
            split,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn builtin_kind(&self) -> Option<BuiltinOperad> {
        match self.source {
            Source::Builtin(op) => Some(op),
            Source::Explicit(_) => None,
        }
    }

    /// Largest arity with a nonzero component, for finite collections.
    pub fn max_explicit_arity(&self) -> Option<usize> {
        match &self.source {
            Source::Builtin(_) => None,
            Source::Explicit(m) => m.keys().next_back().copied(),
        }
    }

    pub fn arity(&self, m: usize) -> Arc<ArityComponent> {
        match &self.source {
            Source::Explicit(comps) => comps
                .get(&m)
                .cloned()
                .unwrap_or_else(|| Arc::new(ArityComponent::trivial(Complex::zero(self.ring), m))),
            Source::Builtin(op) => {
                let mut cache = self.cache.lock().expect("cache lock");
                cache
                    .entry(m)
                    .or_insert_with(|| Arc::new(builtin_arity(*op, self.ring, m)))
                    .clone()
            }
        }
    }

    pub fn component(&self, m: usize) -> Complex {
        self.arity(m).complex.clone()
    }

    pub fn unit_split(&self) -> &UnitSplit {
        &self.split
    }

    /// `Ō(1)`, the complement of the unit line.
    pub fn reduced_unary(&self) -> &Complex {
        &self.split.reduced
    }

    pub fn has_nullary(&self) -> bool {
        !self.arity(0).complex.is_zero()
    }

    /// Enumeration flags matching which components vanish.
    pub fn enum_flags(&self) -> EnumFlags {
        EnumFlags {
            allow_nullary: self.has_nullary(),
            allow_unary: !self.split.reduced.is_zero(),
        }
    }

    /// The action `ρ(π)` of a permutation of inputs (`perm[i]` = image of `i`).
    pub fn act(&self, perm: &[usize]) -> ChainMap {
        let m = perm.len();
        let comp = self.arity(m);
        if comp.has_trivial_action() || perm.iter().enumerate().all(|(i, &p)| i == p) {
            return ChainMap::identity(&comp.complex);
        }
        // Bubble-sorting π by swaps at positions j1, …, jk gives π = s_jk ∘ … ∘ s_j1.
        let mut a = perm.to_vec();
        let mut swaps = Vec::new();
        for pass in 0..m {
            for j in 0..m.saturating_sub(1 + pass) {
                if a[j] > a[j + 1] {
                    a.swap(j, j + 1);
                    swaps.push(j);
                }
            }
        }
        let mut acc = ChainMap::identity(&comp.complex);
        for &j in &swaps {
            acc = acc.then(&comp.transpositions[j]).expect("self maps compose");
        }
        acc
    }
}

/// Adjacent transpositions square to the identity; braid and commutation relations
/// are checked for arities up to 4.
fn check_coxeter(m: usize, comp: &ArityComponent) -> Result<()> {
    let c = &comp.complex;
    let mats = |g: &ChainMap| -> BTreeMap<i32, ExactMatrix> { c.degrees().map(|i| (i, g.component(i))).collect() };
    let prod = |xs: &[&BTreeMap<i32, ExactMatrix>]| -> BTreeMap<i32, ExactMatrix> {
        c.degrees()
            .map(|i| {
                let mut acc = ExactMatrix::identity(c.ring(), c.dim(i));
                for x in xs {
                    acc = acc.mul(&x[&i]);
                }
                (i, acc)
            })
            .collect()
    };
    let gens: Vec<BTreeMap<i32, ExactMatrix>> = comp.transpositions.iter().map(mats).collect();
    let id = prod(&[]);
    for (j, g) in gens.iter().enumerate() {
        if prod(&[g, g]) != id {
            return Err(Error::InvalidCollection(format!("arity {m}: s_{} does not square to 1", j + 1)));
        }
    }
    if m <= 4 {
        for j in 0..gens.len() {
            for k in j + 1..gens.len() {
                let (a, b) = (&gens[j], &gens[k]);
                let ok = if k == j + 1 {
                    prod(&[a, b, a]) == prod(&[b, a, b])
                } else {
                    prod(&[a, b]) == prod(&[b, a])
                };
                if !ok {
                    return Err(Error::InvalidCollection(format!(
                        "arity {m}: relation between s_{} and s_{} fails",
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

fn unit_split(one: &Complex, unit: usize) -> Result<UnitSplit> {
    if one.differential(0).column(unit).iter().any(|x| !x.is_zero()) {
        return Err(Error::InvalidCollection("d(unit) ≠ 0".into()));
    }
    if one.differential(1).row(unit).values().any(|x| !x.is_zero()) {
        return Err(Error::InvalidCollection("unit line is not a direct summand (hit by d)".into()));
    }
    let mut basis: BTreeMap<i32, Vec<String>> = one.basis().clone();
    let rest: Vec<usize> = (0..one.dim(0)).filter(|&j| j != unit).collect();
    basis.get_mut(&0).expect("degree 0 present").remove(unit);
    let mut diffs = BTreeMap::new();
    for i in one.differential_degrees() {
        let d = one.differential(i);
        let rows: Vec<usize> = if i - 1 == 0 { rest.clone() } else { (0..d.nrows()).collect() };
        let cols: Vec<usize> = if i == 0 { rest.clone() } else { (0..d.ncols()).collect() };
        diffs.insert(i, d.submatrix(&rows, &cols));
    }
    Ok(UnitSplit {
        unit,
        reduced: Complex::new(one.ring(), basis, diffs)?,
    })
}

/// Permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

pub(crate) fn permutation_label(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(usize::to_string).collect();
    format!("p{}", parts.join("."))
}

fn single(ring: Ring, label: &str) -> Complex {
    Complex::new(ring, BTreeMap::from([(0, vec![label.to_string()])]), BTreeMap::new()).expect("valid")
}

fn builtin_arity(op: BuiltinOperad, ring: Ring, m: usize) -> ArityComponent {
    match op {
        BuiltinOperad::Unit => {
            let c = if m == 1 { single(ring, "1") } else { Complex::zero(ring) };
            ArityComponent::trivial(c, m)
        }
        BuiltinOperad::Com | BuiltinOperad::ComNonunital => {
            let c = if m == 0 && op == BuiltinOperad::ComNonunital {
                Complex::zero(ring)
            } else {
                single(ring, &format!("mu{m}"))
            };
            ArityComponent::trivial(c, m)
        }
        BuiltinOperad::AssocNonunital => {
            if m == 0 {
                return ArityComponent::trivial(Complex::zero(ring), 0);
            }
            let perms = permutations(m);
            let index: std::collections::HashMap<Vec<usize>, usize> =
                perms.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
            let labels: Vec<String> = perms.iter().map(|p| permutation_label(p)).collect();
            let complex = Complex::new(ring, BTreeMap::from([(0, labels)]), BTreeMap::new()).expect("valid");
            // s_j · e_σ = e_{s_j ∘ σ}: swap the values j and j+1 in one-line notation.
            let transpositions = (0..m - 1)
                .map(|j| {
                    let entries = perms.iter().enumerate().map(|(col, p)| {
                        let q: Vec<usize> = p
                            .iter()
                            .map(|&x| if x == j { j + 1 } else if x == j + 1 { j } else { x })
                            .collect();
                        (index[&q], col, Scalar::one(ring))
                    });
                    let mat = ExactMatrix::from_entries(ring, perms.len(), perms.len(), entries).expect("in range");
                    ChainMap::new(complex.clone(), complex.clone(), BTreeMap::from([(0, mat)])).expect("degree 0")
                })
                .collect();
            ArityComponent { complex, transpositions }
        }
    }
}

/// Looks up a built-in operad by name over `ring`.
pub fn builtin_operad(name: &str, ring: Ring) -> Result<SymmetricCollection> {
    Ok(SymmetricCollection::builtin(name.parse()?, ring))
}
