use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use wkring_core::{
    filtration, regular_assemble, regular_decompose, Exp, LaurentPoly, RegularDecomposition, RootSystem, SRElement,
    Steinberg, WeylFan,
};

fn a2() -> WeylFan {
    let st = Steinberg::for_root_system(&RootSystem::new("A2".parse().unwrap())).unwrap();
    WeylFan::chamber(st.group().clone())
}

/// A component at the F_+ cone `tau` with a stabilizer-invariant coefficient.
fn component(wf: &WeylFan, tau: usize, m: &[i32], lambda: &[i64], k: i64) -> SRElement {
    let full = wf.full();
    let c = wf.embed(tau);
    let mut cof = Exp::from_elem(0, full.num_rays());
    for (&j, &x) in full.cone(c).iter().zip(m) {
        cof[j] = x;
    }
    let (stab, _) = wf.stabilizer(c);
    let mut b = LaurentPoly::zero(2, 1);
    for &x in &stab {
        b += &LaurentPoly::exp(2, 1, &wf.group().act(x, lambda));
    }
    SRElement::from_components(full, 2, [(c, cof, b.scale(&BigInt::from(k)))])
}

#[test]
fn products_of_components_land_in_the_join() {
    let wf = a2();
    let (plus, full) = (wf.plus(), wf.full());
    for tau in 0..plus.num_cones() {
        for sigma in 0..plus.num_cones() {
            let a = component(&wf, tau, &[1, -1], &[1, 0], 2);
            let b = component(&wf, sigma, &[-1, 2], &[0, 1], -1);
            let p = a.mul(&b, full);
            match plus.join(tau, sigma) {
                None => assert!(p.is_zero(), "{tau} {sigma}"),
                Some(g) => {
                    let target = wf.embed(g);
                    assert!(p.support().all(|c| c == target), "{tau} {sigma}");
                    assert!(!p.is_zero());
                }
            }
        }
    }
}

fn element(wf: &WeylFan, data: &[(usize, i32, i32, i64, i64, i64)]) -> SRElement {
    let mut components = BTreeMap::new();
    for &(tau, m0, m1, l0, l1, k) in data {
        let tau = tau % wf.plus().num_cones();
        let c = component(wf, tau, &[m0, m1], &[l0, l1], k);
        let merged = match components.remove(&tau) {
            None => c,
            Some(prev) => c.add(&prev),
        };
        if !merged.is_zero() {
            components.insert(tau, merged);
        }
    }
    regular_assemble(wf, &RegularDecomposition { components })
}

fn data() -> impl Strategy<Value = Vec<(usize, i32, i32, i64, i64, i64)>> {
    prop::collection::vec((0usize..7, -1i32..=1, -1i32..=1, -1i64..=1, -1i64..=1, -2i64..=2), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn filtration_is_multiplicative(x in data(), y in data(), tau in 0usize..4, sigma in 0usize..4) {
        let wf = a2();
        let (plus, full) = (wf.plus(), wf.full());
        let (tau, sigma) = (tau % plus.num_cones(), sigma % plus.num_cones());
        let (e1, e2) = (element(&wf, &x), element(&wf, &y));
        let f1 = filtration(&wf, &regular_decompose(&wf, &e1).unwrap(), tau).unwrap();
        let f2 = filtration(&wf, &regular_decompose(&wf, &e2).unwrap(), sigma).unwrap();
        let p = f1.mul(&f2, full);
        let dec = regular_decompose(&wf, &p).unwrap();
        match plus.join(tau, sigma) {
            None => prop_assert!(p.is_zero()),
            Some(g) => prop_assert!(dec.components.keys().all(|&c| plus.is_face(g, c))),
        }
        prop_assert_eq!(filtration(&wf, &regular_decompose(&wf, &e1).unwrap(), 0).unwrap(), e1);
    }
}
