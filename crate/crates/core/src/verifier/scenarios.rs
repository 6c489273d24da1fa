use std::collections::BTreeMap;

use super::oracle::symmetric_power_oracle;
use super::report::{homology_rows, ComponentRecord, OracleCheck, Params, Report, Verdict};
use crate::chaincx::homology;
use crate::error::{Error, Result};
use crate::exactalg::Ring;
use crate::operadcore::{
    analyze, builtin_operad, coproduct_component, make_generator_collection, GeneratorCollection,
    SymmetricCollection,
};

/// Verdict from per-component records: the first non-acyclic component with slots is
/// the witness, in (arity, slot count, code) order.
fn verdict_of(components: &[ComponentRecord], base_split: bool) -> Verdict {
    if !base_split {
        return Verdict::Unsupported {
            reason: "the slot-free block does not carry O(r) isomorphically".into(),
        };
    }
    match components.iter().find(|c| c.s_count >= 1 && !c.is_acyclic()) {
        Some(w) => Verdict::NotQiso { witness: w.clone() },
        None => Verdict::QisoUpToTruncation,
    }
}

struct Sweep {
    components: Vec<ComponentRecord>,
    base_split: bool,
    total_dims: BTreeMap<usize, BTreeMap<i32, usize>>,
}

fn sweep(o: &SymmetricCollection, gen: &GeneratorCollection, rs: std::ops::RangeInclusive<usize>, max_s: usize) -> Result<Sweep> {
    let mut components = Vec::new();
    let mut base_split = true;
    let mut total_dims = BTreeMap::new();
    for r in rs {
        let trunc = coproduct_component(o, gen, r, max_s)?;
        let check = analyze(&trunc);
        base_split &= check.base_split;
        total_dims.insert(r, trunc.total.dims());
        components.extend(check.records.iter().map(|c| ComponentRecord::from_verdict(r, c)));
    }
    Ok(Sweep { components, base_split, total_dims })
}

/// COM over `F_p` joined with `M = cone(id)[s]` in arity 0, in arity 0 up to
/// `max_power` slots; cross-checked against directly computed symmetric powers.
pub fn run_counterexample(p: u64, max_power: usize, s: i32) -> Result<Report> {
    let ring = Ring::prime_field(p)?;
    let com = builtin_operad("COM", ring)?;
    let gen = make_generator_collection(ring, 0, s);
    let sw = sweep(&com, &gen, 0..=0, max_power)?;

    let mut power_dims = Vec::new();
    let mut power_homology = Vec::new();
    let mut oracle_total: BTreeMap<i32, usize> = BTreeMap::new();
    let mut oracle_failing = None;
    for m in 0..=max_power {
        let sym = symmetric_power_oracle(&gen.m_complex, m)?;
        let h = homology(&sym);
        if m >= 1 && !h.is_zero() && oracle_failing.is_none() {
            oracle_failing = Some(m);
        }
        for (i, d) in sym.dims() {
            *oracle_total.entry(i).or_default() += d;
        }
        power_dims.push(sym.dims());
        power_homology.push(homology_rows(&h));
    }
    let coproduct_total = sw.total_dims[&0].clone();
    let oracle = OracleCheck {
        power_dims,
        power_homology,
        dims_agree: oracle_total == coproduct_total,
        oracle_total_dims: oracle_total,
        coproduct_total_dims: coproduct_total,
        least_failing_power: oracle_failing,
    };
    let least = sw
        .components
        .iter()
        .filter(|c| c.s_count >= 1 && !c.is_acyclic())
        .map(|c| c.s_count)
        .min();
    Ok(Report {
        scenario: "counterexample".into(),
        params: Params {
            ring: ring.to_string(),
            operad: "COM".into(),
            n: 0,
            s,
            r_min: 0,
            r_max: 0,
            max_s: max_power,
        },
        verdict: verdict_of(&sw.components, sw.base_split),
        components: sw.components,
        base_split: sw.base_split,
        all_aut_trivial: None,
        oracle: Some(oracle),
        least_failing_power: least,
    })
}

/// Operads with `O(0) = 0` and `n > 0`: reduced trees are rigid and every component
/// with slots is acyclic, over any ring.
pub fn run_case_i(operad: &str, n: usize, ring: Ring, r_max: usize, max_s: usize, s: i32) -> Result<Report> {
    let o = builtin_operad(operad, ring)?;
    run_case_i_with(&o, n, r_max, max_s, s)
}

pub fn run_case_i_with(o: &SymmetricCollection, n: usize, r_max: usize, max_s: usize, s: i32) -> Result<Report> {
    if o.has_nullary() {
        return Err(Error::Precondition(format!("{} has a nonzero arity-0 component", o.name())));
    }
    if n == 0 {
        return Err(Error::Precondition("the generators must have positive arity".into()));
    }
    let gen = make_generator_collection(o.ring(), n, s);
    let sw = sweep(o, &gen, 0..=r_max, max_s)?;
    let rigid = sw.components.iter().all(|c| c.aut_order == 1);
    let verdict = if rigid {
        verdict_of(&sw.components, sw.base_split)
    } else {
        let c = sw.components.iter().find(|c| c.aut_order != 1).expect("some class is not rigid");
        Verdict::Unsupported {
            reason: format!("class {} (r = {}) has {} automorphisms", c.code, c.r, c.aut_order),
        }
    };
    Ok(Report {
        scenario: "case_i".into(),
        params: params(o, n, s, r_max, max_s),
        verdict,
        components: sw.components,
        base_split: sw.base_split,
        all_aut_trivial: Some(rigid),
        oracle: None,
        least_failing_power: None,
    })
}

/// Characteristic zero: every component with slots is acyclic.
pub fn run_case_ii(operad: &str, n: usize, r_max: usize, max_s: usize, s: i32) -> Result<Report> {
    let o = builtin_operad(operad, Ring::rationals())?;
    run_case_ii_with(&o, n, r_max, max_s, s)
}

pub fn run_case_ii_with(o: &SymmetricCollection, n: usize, r_max: usize, max_s: usize, s: i32) -> Result<Report> {
    if o.ring() != Ring::rationals() {
        return Err(Error::Precondition(format!("case ii runs over Q, not {}", o.ring())));
    }
    let gen = make_generator_collection(o.ring(), n, s);
    let sw = sweep(o, &gen, 0..=r_max, max_s)?;
    Ok(Report {
        scenario: "case_ii".into(),
        params: params(o, n, s, r_max, max_s),
        verdict: verdict_of(&sw.components, sw.base_split),
        components: sw.components,
        base_split: sw.base_split,
        all_aut_trivial: None,
        oracle: None,
        least_failing_power: None,
    })
}

fn params(o: &SymmetricCollection, n: usize, s: i32, r_max: usize, max_s: usize) -> Params {
    Params {
        ring: o.ring().to_string(),
        operad: o.name().to_string(),
        n,
        s,
        r_min: 0,
        r_max,
        max_s,
    }
}
