use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chaincx::HomologyProfile;
use crate::error::Result;
use crate::operadcore::ComponentVerdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub ring: String,
    pub operad: String,
    pub n: usize,
    pub s: i32,
    pub r_min: usize,
    pub r_max: usize,
    pub max_s: usize,
}

/// Homology in one degree with torsion coefficients written as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub degree: i32,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

pub fn homology_rows(h: &HomologyProfile) -> Vec<HomologyRow> {
    h.nonzero()
        .into_iter()
        .map(|(degree, d)| HomologyRow {
            degree,
            free_rank: d.free_rank,
            torsion: d.torsion.iter().map(ToString::to_string).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub r: usize,
    pub code: String,
    pub s_count: usize,
    pub aut_order: u64,
    pub dims: BTreeMap<i32, usize>,
    /// Nonzero degrees only; empty means acyclic.
    pub homology: Vec<HomologyRow>,
}

impl ComponentRecord {
    pub fn from_verdict(r: usize, c: &ComponentVerdict) -> ComponentRecord {
        ComponentRecord {
            r,
            code: c.code.as_str().to_string(),
            s_count: c.s_count,
            aut_order: c.aut_order,
            dims: c.dims.clone(),
            homology: homology_rows(&c.homology),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    QisoUpToTruncation,
    NotQiso { witness: ComponentRecord },
    Unsupported { reason: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::QisoUpToTruncation => "QISO_UP_TO_TRUNCATION",
            Verdict::NotQiso { .. } => "NOT_QISO",
            Verdict::Unsupported { .. } => "UNSUPPORTED",
        }
    }

    pub fn is_qiso(&self) -> bool {
        matches!(self, Verdict::QisoUpToTruncation)
    }
}

/// Cross-check of the arity-0 coproduct against directly computed symmetric powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    /// `dims S^m(M)` for `m = 0..=max_power`.
    pub power_dims: Vec<BTreeMap<i32, usize>>,
    pub power_homology: Vec<Vec<HomologyRow>>,
    pub oracle_total_dims: BTreeMap<i32, usize>,
    pub coproduct_total_dims: BTreeMap<i32, usize>,
    pub dims_agree: bool,
    /// Least `m ≥ 1` with `S^m(M)` not acyclic, according to the oracle.
    pub least_failing_power: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub params: Params,
    pub components: Vec<ComponentRecord>,
    pub verdict: Verdict,
    /// Whether the slot-free block carried `O(r)` isomorphically, per arity checked.
    pub base_split: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_aut_trivial: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    /// Least slot count of a component with nonzero homology, from the trees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub least_failing_power: Option<usize>,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Report> {
        Ok(serde_json::from_str(text)?)
    }

    /// Two comment lines (scenario, verdict) followed by [`components_tsv`].
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# scenario\t{}", self.scenario);
        let _ = writeln!(out, "# verdict\t{}", self.verdict.name());
        out.push_str(&components_tsv(&self.components));
        out
    }

    pub fn witness(&self) -> Option<&ComponentRecord> {
        match &self.verdict {
            Verdict::NotQiso { witness } => Some(witness),
            _ => None,
        }
    }
}

/// One row per component per degree in which it has generators or homology.
pub fn components_tsv(components: &[ComponentRecord]) -> String {
    let mut out = String::from("r\tcode\ts_count\taut_order\tdegree\tdim\tfree_rank\ttorsion\n");
    for c in components {
        let mut degrees: Vec<i32> = c.dims.keys().copied().collect();
        degrees.extend(c.homology.iter().map(|h| h.degree));
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let h = c.homology.iter().find(|h| h.degree == d);
            let torsion = h
                .filter(|h| !h.torsion.is_empty())
                .map_or_else(|| "-".to_string(), |h| h.torsion.join(","));
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                c.r,
                c.code,
                c.s_count,
                c.aut_order,
                d,
                c.dims.get(&d).copied().unwrap_or(0),
                h.map_or(0, |h| h.free_rank),
                torsion
            );
        }
    }
    out
}
