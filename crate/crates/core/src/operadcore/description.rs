use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::collection::{ArityComponent, SymmetricCollection};
use crate::chaincx::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Ring, Scalar};

/// A scalar as it appears in a description file: a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn to_scalar(&self, ring: Ring) -> Result<Scalar> {
        match self {
            ScalarText::Int(v) => Ok(Scalar::from_i64(ring, *v)),
            ScalarText::Text(s) => Scalar::parse(ring, s),
        }
    }

    pub fn from_scalar(x: &Scalar) -> ScalarText {
        let text = x.to_string();
        match text.parse::<i64>() {
            Ok(v) => ScalarText::Int(v),
            Err(_) => ScalarText::Text(text),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDescription {
    pub label: String,
    pub degree: i32,
}

/// One arity: generators in basis order, differential entries `d(source) ∋ c·target`,
/// and for each adjacent transposition `s_j` a signed permutation of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArityDescription {
    pub arity: usize,
    pub generators: Vec<GeneratorDescription>,
    #[serde(default)]
    pub differential: Vec<(String, String, ScalarText)>,
    /// Empty means the trivial action.
    #[serde(default)]
    pub action: Vec<Vec<(String, String, i8)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionDescription {
    pub ring: String,
    #[serde(default)]
    pub name: Option<String>,
    pub arities: Vec<ArityDescription>,
}

impl CollectionDescription {
    pub fn from_json(text: &str) -> Result<CollectionDescription> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn build(&self) -> Result<SymmetricCollection> {
        let ring: Ring = self.ring.parse()?;
        let mut components = BTreeMap::new();
        let mut unit = None;
        for a in &self.arities {
            if components.contains_key(&a.arity) {
                return Err(Error::InvalidCollection(format!("arity {} described twice", a.arity)));
            }
            if let Some(u) = &a.unit {
                if a.arity != 1 {
                    return Err(Error::InvalidCollection(format!("unit declared in arity {}", a.arity)));
                }
                unit = Some(u.clone());
            }
            components.insert(a.arity, build_arity(ring, a)?);
        }
        let unit = unit.ok_or_else(|| Error::InvalidCollection("no unit declared in arity 1".into()))?;
        let name = self.name.clone().unwrap_or_else(|| "custom".to_string());
        SymmetricCollection::explicit(ring, name, components, &unit)
    }
}

fn build_arity(ring: Ring, a: &ArityDescription) -> Result<ArityComponent> {
    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut place: HashMap<&str, (i32, usize)> = HashMap::new();
    for g in &a.generators {
        let b = basis.entry(g.degree).or_default();
        if place.insert(&g.label, (g.degree, b.len())).is_some() {
            return Err(Error::InvalidCollection(format!("arity {}: duplicate label {:?}", a.arity, g.label)));
        }
        b.push(g.label.clone());
    }
    let lookup = |l: &str| {
        place
            .get(l)
            .copied()
            .ok_or_else(|| Error::InvalidCollection(format!("arity {}: unknown label {l:?}", a.arity)))
    };
    let dim = |i: i32| basis.get(&i).map_or(0, Vec::len);
    let mut diffs: BTreeMap<i32, ExactMatrix> = BTreeMap::new();
    for (src, tgt, c) in &a.differential {
        let (i, x) = lookup(src)?;
        let (j, y) = lookup(tgt)?;
        if j != i - 1 {
            return Err(Error::InvalidCollection(format!(
                "arity {}: d({src}) cannot involve {tgt} (degrees {i} → {j})",
                a.arity
            )));
        }
        diffs
            .entry(i)
            .or_insert_with(|| ExactMatrix::zeros(ring, dim(i - 1), dim(i)))
            .add_to(y, x, &c.to_scalar(ring)?);
    }
    let complex = Complex::new(ring, basis.clone(), diffs)?;
    let needed = a.arity.saturating_sub(1);
    if a.action.is_empty() {
        let id = ChainMap::identity(&complex);
        return Ok(ArityComponent { complex, transpositions: vec![id; needed] });
    }
    if a.action.len() != needed {
        return Err(Error::InvalidCollection(format!(
            "arity {}: {} transpositions given, {needed} expected",
            a.arity,
            a.action.len()
        )));
    }
    let mut transpositions = Vec::with_capacity(needed);
    for (j, perm) in a.action.iter().enumerate() {
        let mut mats: BTreeMap<i32, ExactMatrix> =
            basis.iter().map(|(&i, b)| (i, ExactMatrix::zeros(ring, b.len(), b.len()))).collect();
        let mut seen_src = vec![];
        let mut seen_tgt = vec![];
        for (src, tgt, sign) in perm {
            let (i, x) = lookup(src)?;
            let (k, y) = lookup(tgt)?;
            if i != k || sign.abs() != 1 {
                return Err(Error::InvalidCollection(format!(
                    "arity {}: s_{} must send {src} to ±(generator of the same degree)",
                    a.arity,
                    j + 1
                )));
            }
            seen_src.push((i, x));
            seen_tgt.push((i, y));
            mats.get_mut(&i).expect("degree present").set(y, x, Scalar::from_i64(ring, i64::from(*sign)));
        }
        seen_src.sort_unstable();
        seen_tgt.sort_unstable();
        let all: Vec<(i32, usize)> = basis.iter().flat_map(|(&i, b)| (0..b.len()).map(move |x| (i, x))).collect();
        if seen_src != all || seen_tgt != all {
            return Err(Error::InvalidCollection(format!(
                "arity {}: s_{} is not a signed permutation of the generators",
                a.arity,
                j + 1
            )));
        }
        transpositions.push(ChainMap::new(complex.clone(), complex.clone(), mats)?);
    }
    Ok(ArityComponent { complex, transpositions })
}

/// Writes arities `0..=max_arity` of a collection whose actions are signed permutations.
pub fn describe(o: &SymmetricCollection, max_arity: usize) -> Result<CollectionDescription> {
    let ring = o.ring();
    let mut arities = Vec::new();
    for m in 0..=max_arity {
        let comp = o.arity(m);
        let c = &comp.complex;
        if c.is_zero() {
            continue;
        }
        let generators = c
            .basis()
            .iter()
            .flat_map(|(&degree, b)| b.iter().map(move |l| GeneratorDescription { label: l.clone(), degree }))
            .collect();
        let mut differential = Vec::new();
        for i in c.differential_degrees() {
            for (y, x, v) in c.differential(i).entries() {
                differential.push((c.labels(i)[x].clone(), c.labels(i - 1)[y].clone(), ScalarText::from_scalar(v)));
            }
        }
        let action = if comp.has_trivial_action() {
            Vec::new()
        } else {
            comp.transpositions
                .iter()
                .map(|t| {
                    let mut out = Vec::new();
                    for i in c.degrees() {
                        for (y, x, v) in t.component(i).entries() {
                            let sign = if v.is_one() {
                                1
                            } else if (-v).is_one() {
                                -1
                            } else {
                                return Err(Error::InvalidCollection(
                                    "action is not a signed permutation; cannot describe it".into(),
                                ));
                            };
                            out.push((c.labels(i)[x].clone(), c.labels(i)[y].clone(), sign));
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?
        };
        let unit = (m == 1).then(|| c.labels(0)[o.unit_split().unit].clone());
        arities.push(ArityDescription { arity: m, generators, differential, action, unit });
    }
    Ok(CollectionDescription { ring: ring.to_string(), name: Some(o.name().to_string()), arities })
}

/// Reads a JSON description file.
pub fn load_collection(path: &Path) -> Result<SymmetricCollection> {
    CollectionDescription::from_json(&std::fs::read_to_string(path)?)?.build()
}
