//! The CLI verbs, independent of argument parsing and process exit.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use wkring_core::fan::{localization_check, subdivided_positive_fan};
use wkring_core::ordinary::augmented_constants;
use wkring_core::weyl::DEFAULT_MAX_RANK;
use wkring_core::{
    run_suite, CartanLabel, Error, Fan, OrdinaryRing, RootSubset, RootSystem, Steinberg, Suite, SuiteOptions,
    LaurentPoly, WeylFan, WeylGroup, WonderfulDecomposition,
};

use crate::error::CliError;
use crate::json::*;

/// Full structure-constant and K(X) tables are produced up to this `|W|`.
pub const TABLE_ORDER_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Roots,
    Weyl,
    CSets,
    Steinberg,
    CTable,
    KTable,
    ToricCheck,
    Verify,
}

#[derive(Debug, Clone)]
pub struct Request {
    pub verb: Verb,
    pub label: CartanLabel,
    pub suite: Option<String>,
    pub fan: Option<FanDoc>,
    /// Values keyed by position in `fan.cones`.
    pub family: Option<IndexMap<String, Poly>>,
    pub max_rank: Option<usize>,
}

/// Shared progress counters, read when a run is cut off by the timeout.
#[derive(Debug, Default)]
pub struct Progress {
    stage: Mutex<String>,
    done: AtomicUsize,
    total: AtomicUsize,
}

impl Progress {
    pub fn stage(&self, name: &str, total: usize) {
        *self.stage.lock().unwrap() = name.to_string();
        self.done.store(0, Ordering::SeqCst);
        self.total.store(total, Ordering::SeqCst);
    }

    pub fn tick(&self) {
        self.done.fetch_add(1, Ordering::SeqCst);
    }

    pub fn snapshot(&self) -> Value {
        json!({
            "stage": *self.stage.lock().unwrap(),
            "done": self.done.load(Ordering::SeqCst),
            "total": self.total.load(Ordering::SeqCst),
        })
    }
}

/// A finished run: the JSON payload and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub doc: Value,
    pub code: i32,
}

fn ok<T: Serialize>(doc: &T) -> Result<Outcome, CliError> {
    let doc = serde_json::to_value(doc).map_err(|e| CliError::Format(e.to_string()))?;
    Ok(Outcome { doc, code: 0 })
}

pub fn run(req: &Request, progress: &Progress) -> Result<Outcome, CliError> {
    match req.verb {
        Verb::Roots => roots(req),
        Verb::Weyl => weyl(req),
        Verb::CSets => csets(req),
        Verb::Steinberg => steinberg(req, progress),
        Verb::CTable => ctable(req, progress),
        Verb::KTable => ktable(req, progress),
        Verb::ToricCheck => toric_check(req),
        Verb::Verify => verify(req, progress),
    }
}

fn group(req: &Request) -> Result<WeylGroup, CliError> {
    let rs = RootSystem::new(req.label);
    Ok(WeylGroup::with_max_rank(&rs, req.max_rank.unwrap_or(DEFAULT_MAX_RANK))?)
}

fn build_steinberg(req: &Request, progress: &Progress) -> Result<Steinberg, CliError> {
    let g = group(req)?;
    progress.stage("steinberg basis", 1);
    let st = Steinberg::new(g)?;
    progress.tick();
    Ok(st)
}

fn table_gate(req: &Request) -> Result<(), CliError> {
    let order = req.label.weyl_order();
    if order > TABLE_ORDER_LIMIT as u128 {
        return Err(Error::RankBoundExceeded {
            what: "|W|",
            actual: usize::try_from(order).unwrap_or(usize::MAX),
            limit: TABLE_ORDER_LIMIT,
        }
        .into());
    }
    Ok(())
}

fn roots(req: &Request) -> Result<Outcome, CliError> {
    let rs = RootSystem::new(req.label);
    ok(&RootsDoc {
        type_label: req.label.to_string(),
        rank: rs.rank(),
        cartan: rs.cartan_matrix().to_vec(),
        positive_roots: rs
            .positive_roots()
            .iter()
            .map(|r| RootEntry { alpha: r.alpha.clone(), omega: r.omega.clone() })
            .collect(),
    })
}

fn weyl(req: &Request) -> Result<Outcome, CliError> {
    let g = group(req)?;
    ok(&WeylDoc {
        type_label: req.label.to_string(),
        order: g.order(),
        elements: (0..g.order())
            .map(|w| WeylEntry { w: g.name(w), length: g.length(w), descents: g.descent_set(w).one_based() })
            .collect(),
    })
}

fn csets(req: &Request) -> Result<Outcome, CliError> {
    let g = group(req)?;
    let csets = g
        .c_sets()
        .into_iter()
        .enumerate()
        .map(|(mask, ws)| CSet {
            subset: subset_json(RootSubset(mask as u32)),
            elements: ws.into_iter().map(|w| g.name(w)).collect(),
        })
        .collect();
    ok(&CSetsDoc { type_label: req.label.to_string(), csets })
}

fn steinberg(req: &Request, progress: &Progress) -> Result<Outcome, CliError> {
    let st = build_steinberg(req, progress)?;
    let g = st.group();
    let basis = st
        .modified_basis()
        .iter()
        .map(|b| SteinbergEntry { v: g.name(b.v), subset: subset_json(b.subset), f: Poly::from_poly(&b.poly) })
        .collect();
    ok(&SteinbergDoc { type_label: req.label.to_string(), basis })
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|v| (v..n).map(move |w| (v, w))).collect()
}

fn product_key(st: &Steinberg, v: usize, v2: usize) -> String {
    format!("{}|{}", st.group().name(v), st.group().name(v2))
}

fn basis_entries(st: &Steinberg) -> Vec<BasisEntry> {
    (0..st.order())
        .map(|v| BasisEntry { v: st.group().name(v), subset: subset_json(st.subset_of(v)) })
        .collect()
}

fn ctable(req: &Request, progress: &Progress) -> Result<Outcome, CliError> {
    table_gate(req)?;
    let st = build_steinberg(req, progress)?;
    let n = st.order();
    let pairs = upper_pairs(n);
    progress.stage("structure constants", pairs.len());
    let consts: Vec<_> = pairs
        .par_iter()
        .map(|&(v, v2)| {
            let r = st.structure_constants(v, v2);
            progress.tick();
            r
        })
        .collect::<Result<_, _>>()?;
    let by_pair: BTreeMap<(usize, usize), _> = pairs.into_iter().zip(consts).collect();
    let mut products = IndexMap::new();
    for v in 0..n {
        for v2 in 0..n {
            let a = &by_pair[&(v.min(v2), v.max(v2))];
            let terms = a.support().map(|w| CTerm { w: st.group().name(w), coef: Poly::from_poly(&a.coords[w]) }).collect();
            products.insert(product_key(&st, v, v2), terms);
        }
    }
    ok(&CTableDoc { type_label: req.label.to_string(), basis: basis_entries(&st), products })
}

fn to_i64(c: &BigInt) -> Result<i64, CliError> {
    c.to_i64()
        .ok_or_else(|| CliError::Core(Error::Invariant(format!("coefficient {c} does not fit in 64 bits"))))
}

fn ktable(req: &Request, progress: &Progress) -> Result<Outcome, CliError> {
    table_gate(req)?;
    let st = build_steinberg(req, progress)?;
    let n = st.order();
    let pairs = upper_pairs(n);
    progress.stage("augmented structure constants", pairs.len());
    let rows: Vec<Vec<BigInt>> = pairs
        .par_iter()
        .map(|&(v, v2)| {
            let r = augmented_constants(&st, v, v2);
            progress.tick();
            r
        })
        .collect::<Result<_, _>>()?;
    let by_pair: BTreeMap<(usize, usize), Vec<BigInt>> = pairs.into_iter().zip(rows).collect();
    let abar = (0..n)
        .flat_map(|v| (0..n).map(move |v2| (v, v2)))
        .map(|(v, v2)| by_pair[&(v.min(v2), v.max(v2))].clone())
        .collect();
    let ring = OrdinaryRing::from_table(&st, abar)?;
    progress.stage("K(X) products", n * n);
    let table: Vec<_> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let p = ring.basis_product(k / n, k % n);
            progress.tick();
            p
        })
        .collect();
    let names: Vec<String> = (0..n).map(|v| st.group().name(v)).collect();
    let mut products = IndexMap::new();
    for (k, p) in table.iter().enumerate() {
        let mut terms = Vec::new();
        for (w, c) in p.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = names.iter().cloned().zip(c.coords.iter().map(to_i64)).map(|(k, x)| x.map(|x| (k, x))).collect::<Result<_, _>>()?;
            terms.push(KTerm { w: names[w].clone(), coef });
        }
        products.insert(product_key(&st, k / n, k % n), terms);
    }
    ok(&KTableDoc { type_label: req.label.to_string(), kgb_rank: n, products })
}

/// The subdivision described by `doc`, with each input position mapped to
/// its index in the fan.
pub fn read_subdivision(rs: &RootSystem, doc: &FanDoc) -> Result<(Fan, Vec<usize>), CliError> {
    let fan = subdivided_positive_fan(rs, doc.rays.clone(), doc.cones.clone())?;
    let positions = doc
        .cones
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            fan.index_of(&c).ok_or_else(|| Error::ConeNotInFan(format!("{c:?}")).into())
        })
        .collect::<Result<_, CliError>>()?;
    Ok((fan, positions))
}

fn toric_check(req: &Request) -> Result<Outcome, CliError> {
    let doc = req.fan.as_ref().ok_or_else(|| CliError::Usage("toric-check needs --fan".into()))?;
    let g = group(req)?;
    let rs = g.root_system().clone();
    let (plus, positions) = read_subdivision(&rs, doc)?;
    let position_of = |c: usize| positions.iter().position(|&p| p == c);
    let wf = WeylFan::new(g, plus.clone())?;
    let maximal: Vec<usize> = plus.maximal_cones().into_iter().filter_map(position_of).collect();
    let adjacencies = plus
        .adjacencies()
        .into_iter()
        .map(|a| {
            let (s, t) = (position_of(a.sigma), position_of(a.sigma2));
            match (s, t) {
                (Some(s), Some(t)) => Ok(Adjacent { cones: [s, t], chi: a.chi }),
                _ => Err(CliError::Core(Error::Invariant("adjacent cone missing from the input".into()))),
            }
        })
        .collect::<Result<_, _>>()?;
    let localization = match &req.family {
        None => None,
        Some(fam) => {
            let mut family = BTreeMap::new();
            for (key, p) in fam {
                let pos: usize = key.parse().map_err(|_| CliError::Format(format!("family key `{key}` is not a cone position")))?;
                let c = *positions.get(pos).ok_or_else(|| CliError::Format(format!("no cone at position {pos}")))?;
                family.insert(c, p.to_poly(rs.rank(), 1)?);
            }
            Some(localization_check(&rs, &plus, &family)?)
        }
    };
    ok(&ToricDoc {
        type_label: req.label.to_string(),
        fan: doc.clone(),
        maximal_cones: maximal,
        adjacencies,
        full_maximal_cones: wf.full().maximal_cones().len(),
        fixed_points: wf.fixed_point_count(),
        localization,
    })
}

fn verify(req: &Request, progress: &Progress) -> Result<Outcome, CliError> {
    let suites: Vec<Suite> = match &req.suite {
        Some(s) => vec![s.parse()?],
        None => Suite::ALL.to_vec(),
    };
    let st = build_steinberg(req, progress)?;
    let mut opts = SuiteOptions::default();
    if let Some(doc) = &req.fan {
        opts.subdivision = Some(read_subdivision(st.root_system(), doc)?.0);
    }
    progress.stage("suites", suites.len());
    let mut results = Vec::new();
    for s in suites {
        let rep = run_suite(&st, s, &opts)?;
        results.push(SuiteResult {
            suite: s.name().to_string(),
            passed: rep.all_passed(),
            checks: rep.len(),
            failures: rep.failures().map(|c| Failure { name: c.name.clone(), detail: c.detail.clone() }).collect(),
        });
        progress.tick();
    }
    let passed = results.iter().all(|r| r.passed);
    let doc = VerifyDoc { type_label: req.label.to_string(), passed, suites: results };
    let mut out = ok(&doc)?;
    if !passed {
        out.code = 2;
    }
    Ok(out)
}

/// Groups a decomposition by subset, in bitmask order, skipping zero
/// coordinates.
pub fn decomposition_doc(st: &Steinberg, d: &WonderfulDecomposition) -> DecompositionDoc {
    let mut by_subset: BTreeMap<u32, Vec<Coord>> = BTreeMap::new();
    for v in d.support() {
        by_subset
            .entry(st.subset_of(v).0)
            .or_default()
            .push(Coord { v: st.group().name(v), coef: Poly::from_poly(&d.coords[v]) });
    }
    DecompositionDoc {
        components: by_subset
            .into_iter()
            .map(|(mask, coords)| Component { subset: subset_json(RootSubset(mask)), coords })
            .collect(),
    }
}

/// Reads a decomposition document, checking each coordinate sits in the
/// component its basis element belongs to.
pub fn read_decomposition(st: &Steinberg, doc: &DecompositionDoc) -> Result<WonderfulDecomposition, CliError> {
    let r = st.rank();
    let mut d = WonderfulDecomposition { coords: vec![LaurentPoly::zero(r, 2); st.order()] };
    for comp in &doc.components {
        if comp.subset.iter().any(|&i| i == 0 || i > r) {
            return Err(CliError::Format(format!("subset {:?} is not a set of simple roots", comp.subset)));
        }
        let subset = RootSubset::from_indices(comp.subset.iter().map(|&i| i - 1));
        for c in &comp.coords {
            let v = st.group().parse(&c.v)?;
            if st.subset_of(v) != subset {
                return Err(CliError::Format(format!("{} does not belong to the component {:?}", c.v, comp.subset)));
            }
            d.coords[v] = c.coef.to_poly(r, 2)?;
        }
    }
    Ok(d)
}
