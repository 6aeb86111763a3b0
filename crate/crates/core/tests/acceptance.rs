//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use wkring_core::fan::{positive_chamber, subdivided_positive_fan};
use wkring_core::{
    fixed_point_expansion, run_suite, KGBElement, KXElement, LaurentPoly, OrdinaryRing, PiecewiseClass, Report, RootSystem,
    Steinberg, Suite, SuiteOptions, WeylFan, Wonderful, WonderfulDecomposition,
};

const DESK_TYPES: [&str; 4] = ["A1", "A2", "B2", "G2"];

fn steinberg(t: &str) -> Steinberg {
    Steinberg::for_root_system(&RootSystem::new(t.parse().unwrap())).unwrap()
}

fn kgb(c: &[i64]) -> KGBElement {
    KGBElement { coords: c.iter().map(|&x| BigInt::from(x)).collect() }
}

fn suite_passes(t: &str, suite: Suite, opts: &SuiteOptions) -> Result<(), String> {
    let rep = run_suite(&steinberg(t), suite, opts).map_err(|e| format!("{t} {suite}: {e}"))?;
    if rep.is_empty() {
        return Err(format!("{t} {suite}: no checks ran"));
    }
    first_failure(&rep).map_err(|e| format!("{t} {suite}: {e}"))
}

fn first_failure(rep: &Report) -> Result<(), String> {
    match rep.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{} failed ({})", c.name, c.detail)),
    }
}

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn pgl2_golden() -> Result<(), String> {
    let st = steinberg("A1");
    let plus = positive_chamber(1);
    let one = PiecewiseClass::constant(&plus, &LaurentPoly::one(1, 2));
    let fp = fixed_point_expansion(st.group(), &plus, &one).map_err(|e| e.to_string())?;
    ensure(fp.len() == 4, "fixed-point count is not 4")?;
    ensure(WeylFan::chamber(st.group().clone()).fixed_point_count() == 4, "fan fixed-point count is not 4")?;

    let ring = OrdinaryRing::new(&st).map_err(|e| e.to_string())?;
    let n = ring.order();
    ensure(n == 2, "K(G/B) rank is not 2")?;
    let h = kgb(&[1, -1]);
    ensure(ring.kgb_multiply(&h, &h).is_zero(), "h^2 != 0")?;
    let table = ring.kx_table();
    ensure(table.iter().flatten().count() == 4 && n * n == 4, "K(X) rank is not 4")?;
    let gs = KXElement::basis(n, 1);
    let sq = ring.kx_multiply(&gs, &gs);
    let mut four_h = KXElement::zero(n);
    four_h.coords[1] = h.scale(&BigInt::from(4));
    ensure(sq == four_h, "γ_s^2 != 4h·γ_s")?;
    ensure(ring.kx_multiply(&sq, &gs).is_zero(), "γ_s^3 != 0")
}

fn steinberg_suite() -> Result<(), String> {
    let opts = SuiteOptions::default();
    for t in DESK_TYPES {
        suite_passes(t, Suite::Prop18, &opts)?;
        suite_passes(t, Suite::Lemma19, &opts)?;
        ensure(steinberg(t).determinant_nonzero().map_err(|e| e.to_string())?, "determinant vanished")?;
    }
    Ok(())
}

fn rank_theorem() -> Result<(), String> {
    for t in DESK_TYPES {
        let st = steinberg(t);
        let w = Wonderful::new(&st);
        let gens = w.generators();
        ensure(gens.len() == st.order(), &format!("{t}: generator count differs from |W|"))?;
        ensure(st.determinant_nonzero().map_err(|e| e.to_string())?, &format!("{t}: singular system"))?;
        let mut total = LaurentPoly::zero(st.rank(), 2);
        for (v, g) in gens.iter().enumerate() {
            ensure(w.is_member(g).map_err(|e| e.to_string())?, &format!("{t}: generator {v} is not a member"))?;
            let d = w.decompose(g).map_err(|e| e.to_string())?;
            ensure(d == w.unit_vector(v), &format!("{t}: generator {v} does not expand to a unit vector"))?;
            total += &g.scale(&BigInt::from(v as i64 + 1));
        }
        let d = w.decompose(&total).map_err(|e| e.to_string())?;
        let expect = WonderfulDecomposition {
            coords: (0..st.order()).map(|v| LaurentPoly::constant(st.rank(), 2, v as i64 + 1)).collect(),
        };
        ensure(d == expect, &format!("{t}: combination of generators expands wrongly"))?;
    }
    Ok(())
}

fn two_path() -> Result<(), String> {
    let opts = SuiteOptions::default();
    for t in ["A1", "A2"] {
        suite_passes(t, Suite::TwoPathProduct, &opts)?;
        suite_passes(t, Suite::Pushdown, &opts)?;
    }
    let st = steinberg("A2");
    ensure(wkring_core::suites::product_pairs(st.order(), &opts).len() == 36, "A2 does not have 36 products")
}

fn membership() -> Result<(), String> {
    let opts = SuiteOptions::default();
    for t in DESK_TYPES {
        let rep = run_suite(&steinberg(t), Suite::Membership, &opts).map_err(|e| e.to_string())?;
        let members = rep.checks.iter().filter(|c| c.name.starts_with("member")).count();
        let others = rep.checks.iter().filter(|c| c.name.starts_with("non-member")).count();
        ensure(members == 100 && others == 100, &format!("{t}: wrong sample counts"))?;
        first_failure(&rep).map_err(|e| format!("{t}: {e}"))?;
    }
    Ok(())
}

fn toric() -> Result<(), String> {
    let opts = SuiteOptions::default();
    for t in ["A1", "A2", "B2"] {
        suite_passes(t, Suite::ToricDecomp, &opts)?;
    }
    let rs = RootSystem::new("B2".parse().unwrap());
    let split = subdivided_positive_fan(
        &rs,
        vec![vec![1, 0], vec![1, 1], vec![0, 1]],
        vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]],
    )
    .map_err(|e| e.to_string())?;
    let opts = SuiteOptions { subdivision: Some(split), ..SuiteOptions::default() };
    let rep = run_suite(&steinberg("B2"), Suite::ToricDecomp, &opts).map_err(|e| e.to_string())?;
    ensure(rep.checks.iter().any(|c| c.name.starts_with("subdivision")), "subdivision was not exercised")?;
    first_failure(&rep)
}

fn structure_constants() -> Result<(), String> {
    let opts = SuiteOptions::default();
    for t in DESK_TYPES {
        suite_passes(t, Suite::StructureConstants, &opts)?;
    }
    Ok(())
}

type Criterion = (&'static str, Duration, fn() -> Result<(), String>);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("PGL2 golden case", Duration::from_secs(1), pgl2_golden),
        ("Steinberg identities A1 A2 B2 G2", Duration::from_secs(60), steinberg_suite),
        ("rank |W| and unique expansion", Duration::from_secs(600), rank_theorem),
        ("two-path products and pushdown A1 A2", Duration::from_secs(600), two_path),
        ("membership accept/reject", Duration::from_secs(60), membership),
        ("toric decomposition and localization", Duration::from_secs(600), toric),
        ("structure constants invariant with support bound", Duration::from_secs(1800), structure_constants),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let verdict = match (&result, took <= budget) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over budget of {budget:?})"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {}: {verdict} {name} [{:.2?}]", k + 1, took);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
