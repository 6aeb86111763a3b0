//! Named verification suites. Randomized suites draw from a seeded ChaCha
//! stream, so a given seed always produces the same report.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equivariant::{
    membership_check, regular_assemble, regular_decompose, restrict_to_plus, RegularDecomposition, Wonderful,
    WonderfulDecomposition,
};
use crate::error::{Error, Result};
use crate::fan::{localization_check, Fan, WeylFan};
use crate::laurent::{Exp, LaurentPoly};
use crate::ordinary::OrdinaryRing;
use crate::report::Report;
use crate::sr::SRElement;
use crate::steinberg::Steinberg;

/// Tables above this order are sampled rather than exhausted.
pub const EXHAUSTIVE_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Prop18,
    Lemma19,
    Membership,
    TwoPathProduct,
    Pushdown,
    ToricDecomp,
    StructureConstants,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Prop18,
        Suite::Lemma19,
        Suite::Membership,
        Suite::TwoPathProduct,
        Suite::Pushdown,
        Suite::ToricDecomp,
        Suite::StructureConstants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop18 => "prop1.8",
            Suite::Lemma19 => "lemma1.9",
            Suite::Membership => "membership",
            Suite::TwoPathProduct => "two-path-product",
            Suite::Pushdown => "pushdown",
            Suite::ToricDecomp => "toric-decomp",
            Suite::StructureConstants => "structure-constants",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The name did not match any suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown suite `{}`", self.0)
    }
}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> core::result::Result<Self, UnknownSuite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Random elements per randomized check family.
    pub samples: usize,
    /// Products sampled when the table is too large to exhaust.
    pub sampled_pairs: usize,
    /// An extra subdivision of the positive chamber for the toric suite.
    pub subdivision: Option<Fan>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0x5eed, samples: 100, sampled_pairs: 10, subdivision: None }
    }
}

pub fn run_suite(st: &Steinberg, suite: Suite, opts: &SuiteOptions) -> Result<Report> {
    match suite {
        Suite::Prop18 => Ok(st.verify_prop_1_8()),
        Suite::Lemma19 => Ok(st.verify_lemma_1_9()),
        Suite::Membership => membership(st, opts),
        Suite::TwoPathProduct => two_path(st, opts),
        Suite::Pushdown => pushdown(st, opts),
        Suite::ToricDecomp => toric(st, opts),
        Suite::StructureConstants => structure_constants(st, opts),
    }
}

/// All ordered basis pairs when `|W| ≤ EXHAUSTIVE_ORDER`, otherwise a seeded
/// sample.
pub fn product_pairs(n: usize, opts: &SuiteOptions) -> Vec<(usize, usize)> {
    if n <= EXHAUSTIVE_ORDER {
        return (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    (0..opts.sampled_pairs).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
}

fn random_vec(rng: &mut ChaCha8Rng, r: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..r).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// A random element of `R(T) ⊗ R(T)^W`.
fn random_coefficient(st: &Steinberg, rng: &mut ChaCha8Rng) -> LaurentPoly {
    let r = st.rank();
    let mut c = LaurentPoly::zero(r, 2);
    for _ in 0..rng.gen_range(0..3) {
        let u = LaurentPoly::exp(r, 1, &random_vec(rng, r, -2, 2));
        let inv = st.orbit_sum(&random_vec(rng, r, 0, 1));
        let k = BigInt::from(rng.gen_range(-3i64..=3));
        c += &LaurentPoly::tensor(&u, &inv).expect("one-block factors").scale(&k);
    }
    c
}

fn membership(st: &Steinberg, opts: &SuiteOptions) -> Result<Report> {
    let w = Wonderful::new(st);
    let r = st.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rep = Report::new();
    let suite = "membership";
    for k in 0..opts.samples {
        let d = WonderfulDecomposition { coords: (0..st.order()).map(|_| random_coefficient(st, &mut rng)).collect() };
        let f = w.assemble(&d);
        let accepted = w.is_member(&f)?;
        let round_trip = w.decompose(&f).as_ref() == Ok(&d);
        let detail = if accepted && round_trip { String::new() } else { format!("{f}") };
        rep.record(suite, format!("member #{k}"), accepted && round_trip, detail);

        let mut lambda = random_vec(&mut rng, r, -2, 2);
        if lambda.iter().all(|&x| x == 0) {
            lambda[0] = 1;
        }
        let g = &f + &LaurentPoly::tensor(&LaurentPoly::one(r, 1), &LaurentPoly::exp(r, 1, &lambda))?;
        let rejected = !w.is_member(&g)?;
        let refused = matches!(w.decompose(&g), Err(Error::NotInSubring { .. }));
        let detail = if rejected && refused { String::new() } else { format!("λ = {lambda:?}: {g}") };
        rep.record(suite, format!("non-member #{k}"), rejected && refused, detail);
    }
    Ok(rep)
}

fn two_path(st: &Steinberg, opts: &SuiteOptions) -> Result<Report> {
    let w = Wonderful::new(st);
    let g = st.group();
    let mut rep = Report::new();
    for (v, v2) in product_pairs(st.order(), opts) {
        let formula = w.generator_product(v, v2)?;
        let direct = w.multiply(&w.unit_vector(v), &w.unit_vector(v2))?;
        let ok = formula == direct;
        let detail = if ok { String::new() } else { format!("formula {formula:?}, direct {direct:?}") };
        rep.record("two-path-product", format!("{}|{}", g.name(v), g.name(v2)), ok, detail);
    }
    Ok(rep)
}

fn pushdown(st: &Steinberg, opts: &SuiteOptions) -> Result<Report> {
    let ring = OrdinaryRing::new(st)?;
    let w = Wonderful::new(st);
    ring.verify_pushdown(&w, &product_pairs(st.order(), opts))
}

fn structure_constants(st: &Steinberg, opts: &SuiteOptions) -> Result<Report> {
    let g = st.group();
    let gens = st.generators();
    let mut rep = Report::new();
    for (v, v2) in product_pairs(st.order(), opts) {
        let name = format!("{}|{}", g.name(v), g.name(v2));
        match st.structure_constants(v, v2) {
            Ok(a) => {
                let bad: Vec<String> = a
                    .support()
                    .filter(|&x| !a.coords[x].is_invariant(&gens, crate::laurent::Block::First).unwrap_or(false))
                    .map(|x| g.name(x))
                    .collect();
                let detail = if bad.is_empty() { String::new() } else { format!("not invariant at {bad:?}") };
                rep.record("structure-constants", name, bad.is_empty(), detail);
            }
            Err(e @ Error::SupportViolation(_)) => rep.record("structure-constants", name, false, e.to_string()),
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

fn random_invariant_element(wf: &WeylFan, rng: &mut ChaCha8Rng) -> RegularDecomposition {
    let plus = wf.plus();
    let full = wf.full();
    let group = wf.group();
    let r = group.rank();
    let mut components = BTreeMap::new();
    for tau in 0..plus.num_cones() {
        if rng.gen_bool(0.4) {
            continue;
        }
        let c = wf.embed(tau);
        let (stab, _) = wf.stabilizer(c);
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..3) {
            let mut m = Exp::from_elem(0, full.num_rays());
            for &j in full.cone(c) {
                m[j] = rng.gen_range(-1..=1);
            }
            let lambda = random_vec(rng, r, -1, 1);
            let mut b = LaurentPoly::zero(r, 1);
            for &x in &stab {
                b += &LaurentPoly::exp(r, 1, &group.act(x, &lambda));
            }
            terms.push((c, m, b.scale(&BigInt::from(rng.gen_range(1i64..=3)))));
        }
        let comp = SRElement::from_components(full, r, terms);
        if !comp.is_zero() {
            components.insert(tau, comp);
        }
    }
    RegularDecomposition { components }
}

fn random_plain_element(full: &Fan, rng: &mut ChaCha8Rng) -> SRElement {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..5) {
        let c = rng.gen_range(0..full.num_cones());
        let mut m = Exp::from_elem(0, full.num_rays());
        for &j in full.cone(c) {
            m[j] = rng.gen_range(-2..=2);
        }
        terms.push((c, m, LaurentPoly::constant(0, 1, rng.gen_range(-3i64..=3))));
    }
    SRElement::from_components(full, 0, terms)
}

/// Decomposition round trips and localization checks on one fan.
pub fn toric_fan_checks(wf: &WeylFan, label: &str, opts: &SuiteOptions) -> Result<Report> {
    let rs = wf.group().root_system();
    let full = wf.full();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ full.num_cones() as u64);
    let mut rep = Report::new();
    let suite = "toric-decomp";
    let maximal = full.maximal_cones();
    for k in 0..opts.samples {
        let dec = random_invariant_element(wf, &mut rng);
        let e = regular_assemble(wf, &dec);
        let back = regular_decompose(wf, &e);
        let ok = back.as_ref() == Ok(&dec);
        let detail = if ok { String::new() } else { format!("{back:?}") };
        rep.record(suite, format!("{label} round trip #{k}"), ok, detail);
        let member = membership_check(rs, wf.plus(), &restrict_to_plus(wf, &e)?)?;
        rep.record(suite, format!("{label} restriction is a member #{k}"), member, "");

        let x = random_plain_element(full, &mut rng);
        let mut family = BTreeMap::new();
        for &s in &maximal {
            let dual: Vec<Vec<i64>> = full.dual_basis(s).iter().map(|m| rs.alpha_to_omega(m)).collect();
            family.insert(s, x.localize(full, s, &dual)?);
        }
        rep.record(suite, format!("{label} localization accepted #{k}"), localization_check(rs, full, &family)?, "");
        let s = *maximal.choose(&mut rng).expect("nonempty fan");
        let bump = LaurentPoly::exp(rs.rank(), 1, &random_vec(&mut rng, rs.rank(), -1, 1));
        let v = &family[&s] + &bump;
        family.insert(s, v);
        let rejected = !localization_check(rs, full, &family)?;
        rep.record(suite, format!("{label} violator rejected #{k}"), rejected, "");
    }
    Ok(rep)
}

fn toric(st: &Steinberg, opts: &SuiteOptions) -> Result<Report> {
    let group = st.group().clone();
    let mut rep = toric_fan_checks(&WeylFan::chamber(group.clone()), "chamber", opts)?;
    if let Some(plus) = &opts.subdivision {
        plus.check_positive_subdivision()?;
        rep.extend(toric_fan_checks(&WeylFan::new(group, plus.clone())?, "subdivision", opts)?);
    }
    Ok(rep)
}
