use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{rank_any, invariant_factors, ExactMatrix, Ring};

/// A bounded chain complex of finitely generated free modules with labelled bases.
///
/// Grading is homological: `d_i : C_i → C_{i-1}` is stored as a
/// `dim C_{i-1} × dim C_i` matrix acting on column vectors. Only degrees with a
/// nonempty basis and only nonzero differentials are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    ring: Ring,
    basis: BTreeMap<i32, Vec<String>>,
    diffs: BTreeMap<i32, ExactMatrix>,
}

impl Complex {
    pub fn new(
        ring: Ring,
        basis: BTreeMap<i32, Vec<String>>,
        diffs: BTreeMap<i32, ExactMatrix>,
    ) -> Result<Complex> {
        let basis: BTreeMap<i32, Vec<String>> = basis.into_iter().filter(|(_, b)| !b.is_empty()).collect();
        let dim = |i: i32| basis.get(&i).map_or(0, Vec::len);
        let mut kept = BTreeMap::new();
        for (i, d) in diffs {
            if d.ring() != ring {
                return Err(Error::RingMismatch(ring, d.ring()));
            }
            if d.shape() != (dim(i - 1), dim(i)) {
                return Err(Error::Shape(format!(
                    "d_{i} is {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    dim(i - 1),
                    dim(i)
                )));
            }
            if !d.is_zero() {
                kept.insert(i, d);
            }
        }
        let c = Complex { ring, basis, diffs: kept };
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn zero(ring: Ring) -> Complex {
        Complex {
            ring,
            basis: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// Re-verifies `d_{i-1} ∘ d_i = 0` in every degree.
    pub fn check_square_zero(&self) -> Result<()> {
        for (&i, d) in &self.diffs {
            if let Some(prev) = self.diffs.get(&(i - 1)) {
                if !prev.mul(d).is_zero() {
                    return Err(Error::NotAComplex(i));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self, i: i32) -> usize {
        self.basis.get(&i).map_or(0, Vec::len)
    }

    /// Nonzero dimensions by degree.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.basis.iter().map(|(&i, b)| (i, b.len())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Degrees with a nonempty basis, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.basis.keys().copied()
    }

    pub fn labels(&self, i: i32) -> &[String] {
        self.basis.get(&i).map_or(&[], Vec::as_slice)
    }

    pub fn basis(&self) -> &BTreeMap<i32, Vec<String>> {
        &self.basis
    }

    /// `d_i`, with the zero matrix of the right shape when nothing is stored.
    pub fn differential(&self, i: i32) -> ExactMatrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.ring, self.dim(i - 1), self.dim(i)))
    }

    pub fn differential_ref(&self, i: i32) -> Option<&ExactMatrix> {
        self.diffs.get(&i)
    }

    /// Degrees in which a differential is stored.
    pub fn differential_degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.diffs.keys().copied()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "complex over {}", self.ring)?;
        for (i, b) in &self.basis {
            writeln!(f, "  C_{i}: {}", b.join(", "))?;
        }
        for (i, d) in &self.diffs {
            writeln!(f, "  d_{i}:")?;
            for line in d.to_string().lines() {
                writeln!(f, "    {line}")?;
            }
        }
        Ok(())
    }
}

/// A degree-0 chain map. Construction checks shapes and `d ∘ f = f ∘ d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    components: BTreeMap<i32, ExactMatrix>,
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, components: BTreeMap<i32, ExactMatrix>) -> Result<ChainMap> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(source.ring(), target.ring()));
        }
        let mut kept = BTreeMap::new();
        for (i, f) in components {
            if f.ring() != source.ring() {
                return Err(Error::RingMismatch(source.ring(), f.ring()));
            }
            if f.shape() != (target.dim(i), source.dim(i)) {
                return Err(Error::Shape(format!(
                    "f_{i} is {}x{}, expected {}x{}",
                    f.nrows(),
                    f.ncols(),
                    target.dim(i),
                    source.dim(i)
                )));
            }
            if !f.is_zero() {
                kept.insert(i, f);
            }
        }
        let map = ChainMap {
            source,
            target,
            components: kept,
        };
        map.check_commutes()?;
        Ok(map)
    }

    pub fn identity(c: &Complex) -> ChainMap {
        let components = c
            .degrees()
            .map(|i| (i, ExactMatrix::identity(c.ring(), c.dim(i))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: BTreeMap::new(),
        }
    }

    /// Re-verifies commutation with the differentials in every degree.
    pub fn check_commutes(&self) -> Result<()> {
        let degrees: std::collections::BTreeSet<i32> = self
            .source
            .degrees()
            .chain(self.target.degrees())
            .flat_map(|i| [i, i + 1])
            .collect();
        for i in degrees {
            let lhs = self.target.differential(i).mul(&self.component(i));
            let rhs = self.component(i - 1).mul(&self.source.differential(i));
            if lhs != rhs {
                return Err(Error::NotAChainMap(i));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, i: i32) -> ExactMatrix {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.source.ring(), self.target.dim(i), self.source.dim(i)))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.source.degrees().all(|i| self.component(i).is_identity())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.source {
            return Err(Error::Shape("composing maps with mismatched complexes".into()));
        }
        let components = self
            .source
            .degrees()
            .map(|i| (i, other.component(i).mul(&self.component(i))))
            .collect();
        ChainMap::new(self.source.clone(), other.target.clone(), components)
    }
}

/// A finite group acting on a complex through chain automorphisms, given by generators.
#[derive(Clone, Debug)]
pub struct GroupAction {
    complex: Complex,
    generators: Vec<ChainMap>,
    declared_order: u64,
}

impl GroupAction {
    pub fn new(complex: Complex, generators: Vec<ChainMap>, declared_order: u64) -> Result<GroupAction> {
        if declared_order == 0 {
            return Err(Error::InvalidAction("group order must be positive".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.source() != &complex || g.target() != &complex {
                return Err(Error::InvalidAction(format!("generator {k} is not a self-map of the complex")));
            }
            for i in complex.degrees() {
                if !degreewise_invertible(&g.component(i)) {
                    return Err(Error::InvalidAction(format!("generator {k} is not invertible in degree {i}")));
                }
            }
        }
        Ok(GroupAction {
            complex,
            generators,
            declared_order,
        })
    }

    pub fn trivial(complex: Complex) -> GroupAction {
        GroupAction {
            complex,
            generators: Vec::new(),
            declared_order: 1,
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn generators(&self) -> &[ChainMap] {
        &self.generators
    }

    pub fn declared_order(&self) -> u64 {
        self.declared_order
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(ChainMap::is_identity)
    }
}

fn degreewise_invertible(m: &ExactMatrix) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    if m.ring().is_field() {
        rank_any(m) == m.nrows()
    } else {
        let f = invariant_factors(m).expect("integer ring");
        f.len() == m.nrows() && f.iter().all(|x| x == &BigInt::from(1))
    }
}

/// Homology in one degree: free rank plus torsion invariant factors (Z only).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeHomology {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Homology of a complex, recorded for every degree in which the complex is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyProfile {
    pub degrees: BTreeMap<i32, DegreeHomology>,
}

impl HomologyProfile {
    pub fn is_zero(&self) -> bool {
        self.degrees.values().all(DegreeHomology::is_zero)
    }

    pub fn free_rank(&self, i: i32) -> usize {
        self.degrees.get(&i).map_or(0, |h| h.free_rank)
    }

    pub fn torsion(&self, i: i32) -> &[BigInt] {
        self.degrees.get(&i).map_or(&[], |h| h.torsion.as_slice())
    }

    /// Degrees with nonzero homology only.
    pub fn nonzero(&self) -> BTreeMap<i32, DegreeHomology> {
        self.degrees
            .iter()
            .filter(|(_, h)| !h.is_zero())
            .map(|(&i, h)| (i, h.clone()))
            .collect()
    }

    /// Free ranks of nonzero degrees.
    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        self.degrees
            .iter()
            .filter(|(_, h)| h.free_rank > 0)
            .map(|(&i, h)| (i, h.free_rank))
            .collect()
    }

    pub fn shifted(&self, s: i32) -> HomologyProfile {
        HomologyProfile {
            degrees: self.degrees.iter().map(|(&i, h)| (i + s, h.clone())).collect(),
        }
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero()
            .iter()
            .map(|(i, h)| {
                let mut s = format!("H_{i} = rank {}", h.free_rank);
                if !h.torsion.is_empty() {
                    let t: Vec<String> = h.torsion.iter().map(|x| format!("Z/{x}")).collect();
                    s.push_str(&format!(" + {}", t.join(" + ")));
                }
                s
            })
            .collect();
        if parts.is_empty() {
            write!(f, "acyclic")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}
