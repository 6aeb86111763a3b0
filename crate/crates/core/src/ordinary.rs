//! The ordinary K-rings `K(G/B) = R(T)/J` and `K(X)`.
//!
//! `K(G/B)` is modelled by integer coordinates over the images `f̄_v` of the
//! Steinberg basis; `K(X)` by coordinates over `{γ_v}` with values in
//! `K(G/B)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::equivariant::{Wonderful, WonderfulDecomposition};
use crate::error::{Error, Result};
use crate::laurent::{Block, LaurentPoly};
use crate::report::Report;
use crate::steinberg::Steinberg;
use crate::subset::RootSubset;

/// Largest `|W|` for which the full table of augmented structure constants
/// is precomputed.
pub const MAX_TABLE_ORDER: usize = 24;

/// An element of `K(G/B)` over the basis `{f̄_v}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KGBElement {
    pub coords: Vec<BigInt>,
}

impl KGBElement {
    pub fn zero(n: usize) -> Self {
        KGBElement { coords: vec![BigInt::zero(); n] }
    }

    pub fn basis(n: usize, v: usize) -> Self {
        let mut e = Self::zero(n);
        e.coords[v] = BigInt::from(1);
        e
    }

    pub fn unit(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        KGBElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        KGBElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        KGBElement { coords: self.coords.iter().map(|a| a * c).collect() }
    }
}

/// An element of `K(X)` over the `K(G/B)`-basis `{γ_v}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KXElement {
    pub coords: Vec<KGBElement>,
}

impl KXElement {
    pub fn zero(n: usize) -> Self {
        KXElement { coords: vec![KGBElement::zero(n); n] }
    }

    pub fn basis(n: usize, v: usize) -> Self {
        let mut e = Self::zero(n);
        e.coords[v] = KGBElement::unit(n);
        e
    }

    pub fn unit(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(KGBElement::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        KXElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.add(b)).collect() }
    }
}

/// Augmented structure constants `ā^w_{v,v'} = ε(a^w_{v,v'})`, as a vector
/// over `w`.
pub fn augmented_constants(st: &Steinberg, v: usize, v2: usize) -> Result<Vec<BigInt>> {
    Ok(st.structure_constants(v, v2)?.coords.iter().map(LaurentPoly::augmentation).collect())
}

/// `K(G/B)` and `K(X)` for one root system.
#[derive(Debug, Clone)]
pub struct OrdinaryRing<'a> {
    st: &'a Steinberg,
    /// `abar[v * n + v2][w]`.
    abar: Vec<Vec<BigInt>>,
    /// `λ̄_I`, by bitmask.
    lambda: Vec<KGBElement>,
}

impl<'a> OrdinaryRing<'a> {
    /// Computes every augmented structure constant; gated by
    /// [`MAX_TABLE_ORDER`].
    pub fn new(st: &'a Steinberg) -> Result<Self> {
        let n = st.order();
        if n > MAX_TABLE_ORDER {
            return Err(Error::RankBoundExceeded { what: "|W|", actual: n, limit: MAX_TABLE_ORDER });
        }
        let mut abar: Vec<Vec<BigInt>> = Vec::with_capacity(n * n);
        for v in 0..n {
            for v2 in 0..n {
                abar.push(if v2 < v { abar[v2 * n + v].clone() } else { augmented_constants(st, v, v2)? });
            }
        }
        Self::from_table(st, abar)
    }

    /// Builds the ring from a precomputed table `abar[v * n + v2]`.
    pub fn from_table(st: &'a Steinberg, abar: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = st.order();
        if abar.len() != n * n || abar.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n * n, actual: abar.len() });
        }
        let mut ring = OrdinaryRing { st, abar, lambda: Vec::new() };
        let r = st.rank();
        let rs = st.root_system();
        ring.lambda = (0..1u32 << r)
            .map(|mask| {
                let p = RootSubset(mask).indices().fold(LaurentPoly::one(r, 1), |acc, i| {
                    &acc * &LaurentPoly::one_minus_exp_neg(r, 1, rs.simple_root(i))
                });
                ring.characteristic_map(&p)
            })
            .collect::<Result<_>>()?;
        Ok(ring)
    }

    pub fn steinberg(&self) -> &Steinberg {
        self.st
    }

    pub fn order(&self) -> usize {
        self.st.order()
    }

    /// `ā^w_{v,v'}` over `w`.
    pub fn abar(&self, v: usize, v2: usize) -> &[BigInt] {
        &self.abar[v * self.order() + v2]
    }

    /// `φ(g) = Σ_v ε(a_v)·f̄_v` where `g = Σ_v a_v f_v`.
    pub fn characteristic_map(&self, g: &LaurentPoly) -> Result<KGBElement> {
        let e = self.st.expand(g)?;
        Ok(KGBElement { coords: e.coords.iter().map(LaurentPoly::augmentation).collect() })
    }

    /// The lift `Σ_v c_v f_v` of a class in `K(G/B)`.
    pub fn lift(&self, a: &KGBElement) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.st.rank(), 1);
        for (v, c) in a.coords.iter().enumerate() {
            if !c.is_zero() {
                out += &self.st.basis_poly(v).scale(c);
            }
        }
        out
    }

    pub fn kgb_multiply(&self, a: &KGBElement, b: &KGBElement) -> KGBElement {
        let n = self.order();
        let mut out = KGBElement::zero(n);
        for (v, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (v2, y) in b.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (w, c) in self.abar(v, v2).iter().enumerate() {
                    if !c.is_zero() {
                        out.coords[w] += &xy * c;
                    }
                }
            }
        }
        out
    }

    pub fn kgb_pow(&self, a: &KGBElement, k: u32) -> KGBElement {
        (0..k).fold(KGBElement::unit(self.order()), |acc, _| self.kgb_multiply(&acc, a))
    }

    /// `φ(Π_{α∈I}(1 − e^{−α}))`, the image of `λ_{−1}(N_I^∨)`.
    pub fn lambda_class_image(&self, i: RootSubset) -> &KGBElement {
        &self.lambda[i.0 as usize]
    }

    /// `γ_v·γ_{v'} = Σ_w λ̄_{I∩I'}·λ̄_{(I∪I')∖J}·ā^w_{v,v'}·γ_w`.
    pub fn basis_product(&self, v: usize, v2: usize) -> KXElement {
        let n = self.order();
        let (i, i2) = (self.st.subset_of(v), self.st.subset_of(v2));
        let meet = self.lambda_class_image(i.intersection(i2));
        let mut out = KXElement::zero(n);
        for (w, c) in self.abar(v, v2).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rest = self.lambda_class_image(i.union(i2).difference(self.st.subset_of(w)));
            out.coords[w] = self.kgb_multiply(meet, rest).scale(c);
        }
        out
    }

    pub fn kx_multiply(&self, x: &KXElement, y: &KXElement) -> KXElement {
        let n = self.order();
        let mut out = KXElement::zero(n);
        for (v, a) in x.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (v2, b) in y.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = self.kgb_multiply(a, b);
                let g = self.basis_product(v, v2);
                for w in 0..n {
                    if !g.coords[w].is_zero() {
                        out.coords[w] = out.coords[w].add(&self.kgb_multiply(&ab, &g.coords[w]));
                    }
                }
            }
        }
        out
    }

    /// All `|W|²` basis products, row `v`, column `v'`.
    pub fn kx_table(&self) -> Vec<Vec<KXElement>> {
        let n = self.order();
        (0..n).map(|v| (0..n).map(|v2| self.basis_product(v, v2)).collect()).collect()
    }

    /// Image of an equivariant class under `ε ⊗ φ`: the second block is
    /// augmented and `φ` applied to the first.
    pub fn pushdown(&self, d: &WonderfulDecomposition) -> Result<KXElement> {
        let n = self.order();
        let mut out = KXElement::zero(n);
        for w in d.support() {
            let u = d.coords[w].augment_block(Block::Second);
            out.coords[w] = self.characteristic_map(&u)?;
        }
        Ok(out)
    }

    /// Unit, commutativity and associativity of the product table, with
    /// associativity on every triple or on `samples` (if given).
    pub fn verify_table(&self, table: &[Vec<KXElement>], samples: Option<&[(usize, usize, usize)]>) -> Report {
        let n = self.order();
        let g = self.st.group();
        let mut rep = Report::new();
        for v in 0..n {
            rep.record("kx-table", format!("unit·γ_{}", g.name(v)), table[0][v] == KXElement::basis(n, v), "");
            for v2 in v + 1..n {
                let ok = table[v][v2] == table[v2][v];
                rep.record("kx-table", format!("symmetric {}|{}", g.name(v), g.name(v2)), ok, "");
            }
        }
        let all: Vec<(usize, usize, usize)>;
        let triples = match samples {
            Some(s) => s,
            None => {
                all = (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect();
                &all
            }
        };
        for &(a, b, c) in triples {
            let left = self.kx_multiply(&table[a][b], &KXElement::basis(n, c));
            let right = self.kx_multiply(&KXElement::basis(n, a), &table[b][c]);
            let ok = left == right;
            let detail = if ok { String::new() } else { format!("{left:?} vs {right:?}") };
            rep.record("kx-table", format!("assoc {}|{}|{}", g.name(a), g.name(b), g.name(c)), ok, detail);
        }
        rep
    }

    /// The equivariant product of two generators pushed down, compared with
    /// the product in `K(X)`.
    pub fn verify_pushdown(&self, wonderful: &Wonderful<'_>, pairs: &[(usize, usize)]) -> Result<Report> {
        let n = self.order();
        let g = self.st.group();
        let mut rep = Report::new();
        for &(v, v2) in pairs {
            let d = wonderful.multiply(&wonderful.unit_vector(v), &wonderful.unit_vector(v2))?;
            let down = self.pushdown(&d)?;
            let direct = self.kx_multiply(&KXElement::basis(n, v), &KXElement::basis(n, v2));
            let ok = down == direct;
            let detail = if ok { String::new() } else { format!("pushdown {down:?}, product {direct:?}") };
            rep.record("pushdown", format!("{}|{}", g.name(v), g.name(v2)), ok, detail);
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystem;
    use proptest::prelude::*;

    fn st(t: &str) -> Steinberg {
        Steinberg::for_root_system(&RootSystem::new(t.parse().unwrap())).unwrap()
    }

    fn kgb(c: &[i64]) -> KGBElement {
        KGBElement { coords: c.iter().map(|&x| BigInt::from(x)).collect() }
    }

    #[test]
    fn a1_characteristic_map() {
        let s = st("A1");
        let k = OrdinaryRing::new(&s).unwrap();
        assert_eq!(k.characteristic_map(&LaurentPoly::one(1, 1)).unwrap(), kgb(&[1, 0]));
        assert_eq!(k.characteristic_map(&LaurentPoly::exp(1, 1, &[-1])).unwrap(), kgb(&[0, 1]));
        let c = &LaurentPoly::exp(1, 1, &[1]) + &LaurentPoly::exp(1, 1, &[-1]);
        assert_eq!(k.characteristic_map(&c).unwrap(), kgb(&[2, 0]));
        let fs = kgb(&[0, 1]);
        assert_eq!(k.kgb_multiply(&fs, &fs), kgb(&[-1, 2]));
        let h = kgb(&[1, -1]);
        assert!(k.kgb_multiply(&h, &h).is_zero());
        assert_eq!(k.lambda_class_image(RootSubset::full(1)), &kgb(&[2, -2]));
        assert_eq!(k.lambda_class_image(RootSubset(0)), &kgb(&[1, 0]));
    }

    #[test]
    fn a1_kx_products() {
        let s = st("A1");
        let k = OrdinaryRing::new(&s).unwrap();
        let gs = KXElement::basis(2, 1);
        let sq = k.kx_multiply(&gs, &gs);
        let mut expect = KXElement::zero(2);
        expect.coords[1] = kgb(&[4, -4]);
        assert_eq!(sq, expect);
        assert!(k.kx_multiply(&sq, &gs).is_zero());
        let t = k.kx_table();
        assert!(k.verify_table(&t, None).all_passed());
        let w = Wonderful::new(&s);
        assert!(k.verify_pushdown(&w, &[(0, 0), (0, 1), (1, 1)]).unwrap().all_passed());
    }

    #[test]
    fn lambda_images_are_nilpotent() {
        for t in ["A1", "A2", "B2"] {
            let s = st(t);
            let k = OrdinaryRing::new(&s).unwrap();
            let bound = s.root_system().positive_roots().len() as u32 + 1;
            for i in RootSubset::all(s.rank()).filter(|i| !i.is_empty()) {
                let l = k.lambda_class_image(i);
                assert!(!l.is_zero());
                assert!(k.kgb_pow(l, bound).is_zero(), "{t} {i}");
            }
        }
    }

    #[test]
    fn a2_table_is_associative() {
        let s = st("A2");
        let k = OrdinaryRing::new(&s).unwrap();
        let t = k.kx_table();
        let rep = k.verify_table(&t, None);
        assert!(rep.all_passed());
        let w = Wonderful::new(&s);
        let pairs: Vec<_> = (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).collect();
        assert!(k.verify_pushdown(&w, &pairs).unwrap().all_passed());
    }

    fn poly(r: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-2i64..=2, r), -3i64..=3), 0..5).prop_map(move |ts| {
            let mut p = LaurentPoly::zero(r, 1);
            for (e, c) in ts {
                p += &LaurentPoly::exp(r, 1, &e).scale(&BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn characteristic_map_is_multiplicative(g in poly(2), h in poly(2)) {
            let s = st("B2");
            let k = OrdinaryRing::new(&s).unwrap();
            let lhs = k.characteristic_map(&(&g * &h)).unwrap();
            let rhs = k.kgb_multiply(&k.characteristic_map(&g).unwrap(), &k.characteristic_map(&h).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn invariants_collapse_to_integers(nu in prop::collection::vec(0i64..=2, 2)) {
            let s = st("A2");
            let k = OrdinaryRing::new(&s).unwrap();
            let c = s.orbit_sum(&nu);
            prop_assert_eq!(k.characteristic_map(&c).unwrap(), KGBElement::unit(6).scale(&c.augmentation()));
        }

        #[test]
        fn product_is_lift_independent(
            a in prop::collection::vec(-3i64..=3, 6),
            b in prop::collection::vec(-3i64..=3, 6),
            nu in prop::collection::vec(0i64..=1, 2),
            w in 0usize..6,
        ) {
            let s = st("A2");
            let k = OrdinaryRing::new(&s).unwrap();
            let (a, b) = (kgb(&a), kgb(&b));
            let c = s.orbit_sum(&nu);
            let j = &c - &LaurentPoly::constant(2, 1, c.augmentation());
            let lifted = &k.lift(&a) + &(&j * s.basis_poly(w));
            let prod = k.characteristic_map(&(&lifted * &k.lift(&b))).unwrap();
            prop_assert_eq!(prod, k.kgb_multiply(&a, &b));
        }
    }
}
