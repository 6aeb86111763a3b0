//! Stanley–Reisner presentation of the equivariant K-ring of a smooth toric
//! variety, kept in the normal form `Σ_τ X_τ·c_τ` with
//! `X_τ = Π_{ρ_j∈τ}(1 − X_j)` and `c_τ` a Laurent polynomial in the
//! variables of `τ` only.
//!
//! Coefficients may carry an extra Laurent factor in `R(T)`, which models
//! `K_T(T̄) ⊗ R(T)`; with coefficient rank 0 the element is a plain
//! Stanley–Reisner class.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::laurent::{Block, Exp, LaurentPoly};
use crate::matrix::IntMatrix;

/// `−(1 − X^a)/(1 − X)` as a list of exponents with signs: `X^a = 1 + (1 − X)·q`.
fn neg_q(a: i32) -> Vec<(i32, i64)> {
    if a > 0 {
        (0..a).map(|k| (k, -1)).collect()
    } else {
        (a..0).map(|k| (k, 1)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SRElement {
    rays: usize,
    coeff_rank: usize,
    /// cone → (exponent of `X` → coefficient in `R(T)`)
    comps: BTreeMap<usize, BTreeMap<Exp, LaurentPoly>>,
}

impl SRElement {
    pub fn zero(rays: usize, coeff_rank: usize) -> Self {
        SRElement { rays, coeff_rank, comps: BTreeMap::new() }
    }

    pub fn one(fan: &Fan, coeff_rank: usize) -> Self {
        Self::x_tau(fan, 0, &LaurentPoly::one(coeff_rank, 1))
    }

    /// `X_τ ⊗ b`.
    pub fn x_tau(fan: &Fan, tau: usize, b: &LaurentPoly) -> Self {
        let mut out = Self::zero(fan.num_rays(), b.rank());
        out.push(tau, Exp::from_elem(0, fan.num_rays()), b.clone());
        out
    }

    /// The class of the line bundle `X_j`.
    pub fn variable(fan: &Fan, j: usize, coeff_rank: usize) -> Self {
        let mut a = Exp::from_elem(0, fan.num_rays());
        a[j] = 1;
        let mut out = Self::zero(fan.num_rays(), coeff_rank);
        out.add_expanded(fan, &[], &a, &LaurentPoly::one(coeff_rank, 1));
        out
    }

    /// Normal form of a Laurent polynomial in the variables `X_1..X_d`.
    pub fn from_poly(fan: &Fan, p: &LaurentPoly) -> Self {
        Self::from_tensor(fan, p.terms().map(|(e, c)| (e.clone(), LaurentPoly::constant(0, 1, c.clone()))))
    }

    /// Normal form of `Σ X^a ⊗ b`.
    pub fn from_tensor<I>(fan: &Fan, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, LaurentPoly)>,
    {
        let mut it = terms.into_iter().peekable();
        let r = it.peek().map_or(0, |(_, b)| b.rank());
        let mut out = Self::zero(fan.num_rays(), r);
        for (a, b) in it {
            out.add_expanded(fan, &[], &a, &b);
        }
        out
    }

    pub fn num_rays(&self) -> usize {
        self.rays
    }

    pub fn coeff_rank(&self) -> usize {
        self.coeff_rank
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Cones carrying a nonzero component.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.comps.keys().copied()
    }

    /// Terms `X^m ⊗ b` of the component `X_τ·Σ X^m ⊗ b`.
    pub fn component(&self, tau: usize) -> Option<&BTreeMap<Exp, LaurentPoly>> {
        self.comps.get(&tau)
    }

    /// The element keeping only the components at cones accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        let comps = self.comps.iter().filter(|(t, _)| keep(**t)).map(|(t, c)| (*t, c.clone())).collect();
        SRElement { rays: self.rays, coeff_rank: self.coeff_rank, comps }
    }

    /// The cofactor `c_τ` of a plain class (coefficient rank 0).
    pub fn cofactor(&self, tau: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rays, 1);
        if let Some(c) = self.comps.get(&tau) {
            for (m, b) in c {
                out.add_term(m.clone(), b.augmentation());
            }
        }
        out
    }

    /// The components `X_τ·c_τ` of a plain class, as cofactors.
    pub fn c_tau_decompose(&self) -> BTreeMap<usize, LaurentPoly> {
        self.comps.keys().map(|&t| (t, self.cofactor(t))).collect()
    }

    fn push(&mut self, tau: usize, m: Exp, b: LaurentPoly) {
        if b.is_zero() {
            return;
        }
        let comp = self.comps.entry(tau).or_default();
        let cur = comp.entry(m.clone()).or_insert_with(|| LaurentPoly::zero(b.rank(), 1));
        *cur += &b;
        if cur.is_zero() {
            comp.remove(&m);
            if comp.is_empty() {
                self.comps.remove(&tau);
            }
        }
    }

    /// Adds the normal form of `X_F·X^a ⊗ b`, for `F` a cone given by rays.
    fn add_expanded(&mut self, fan: &Fan, base: &[usize], a: &[i32], b: &LaurentPoly) {
        let mut inner = Exp::from_elem(0, self.rays);
        let mut outer = Vec::new();
        for (j, &x) in a.iter().enumerate() {
            if base.contains(&j) {
                inner[j] = x;
            } else if x != 0 {
                outer.push(j);
            }
        }
        // X^a = X^inner · Π_{j∈outer} (1 + (1 − X_j)·q_j); expand over subsets H
        // of `outer` with base ∪ H a cone
        let mut stack: Vec<(Vec<usize>, usize, Vec<(Exp, i64)>)> =
            alloc::vec![(base.to_vec(), 0, alloc::vec![(inner, 1)])];
        while let Some((cone, next, terms)) = stack.pop() {
            if let Some(t) = fan.index_of(&cone) {
                for (m, s) in &terms {
                    self.push(t, m.clone(), b.scale(&BigInt::from(*s)));
                }
            } else {
                continue;
            }
            for k in next..outer.len() {
                let j = outer[k];
                let mut c2 = cone.clone();
                c2.push(j);
                if fan.index_of(&c2).is_none() {
                    continue;
                }
                let q = neg_q(a[j]);
                let mut t2 = Vec::with_capacity(terms.len() * q.len());
                for (m, s) in &terms {
                    for &(e, sq) in &q {
                        let mut m2 = m.clone();
                        m2[j] = e;
                        t2.push((m2, s * sq));
                    }
                }
                stack.push((c2, k + 1, t2));
            }
        }
    }

    /// Renormalizes components whose cofactors involve variables outside
    /// their cone. Idempotent on normal forms.
    pub fn normal_form(&self, fan: &Fan) -> Self {
        let mut out = Self::zero(self.rays, self.coeff_rank);
        for (&t, comp) in &self.comps {
            for (m, b) in comp {
                out.add_expanded(fan, fan.cone(t), m, b);
            }
        }
        out
    }

    /// Builds an element from raw components, normalizing them.
    pub fn from_components<I>(fan: &Fan, coeff_rank: usize, comps: I) -> Self
    where
        I: IntoIterator<Item = (usize, Exp, LaurentPoly)>,
    {
        let mut out = Self::zero(fan.num_rays(), coeff_rank);
        for (t, m, b) in comps {
            out.add_expanded(fan, fan.cone(t), &m, &b);
        }
        out
    }

    /// `Σ_τ X_τ·c_τ` expanded as a Laurent polynomial in `X` (plain classes).
    pub fn recombine(&self, fan: &Fan) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rays, 1);
        for t in self.support() {
            let mut x_tau = LaurentPoly::one(self.rays, 1);
            for &j in fan.cone(t) {
                let mut e = alloc::vec![0i64; self.rays];
                e[j] = 1;
                x_tau = &x_tau * &(&LaurentPoly::one(self.rays, 1) - &LaurentPoly::exp(self.rays, 1, &e));
            }
            out += &(&x_tau * &self.cofactor(t));
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.rays, self.coeff_rank);
        for (&t, comp) in &self.comps {
            for (m, b) in comp {
                out.push(t, m.clone(), b.scale(c));
            }
        }
        out
    }

    /// Multiplies every coefficient by `b ∈ R(T)`.
    pub fn mul_coeff(&self, b: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.rays, self.coeff_rank);
        for (&t, comp) in &self.comps {
            for (m, x) in comp {
                out.push(t, m.clone(), x * b);
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&t, comp) in &o.comps {
            for (m, b) in comp {
                out.push(t, m.clone(), b.clone());
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigInt::one()))
    }

    /// Product, using `X_τ·X_σ = X_{τ∪σ}·Π_{ρ_j∈τ∩σ}(1 − X_j)` and `X_F = 0`
    /// for `F` outside the fan.
    pub fn mul(&self, o: &Self, fan: &Fan) -> Self {
        let mut out = Self::zero(self.rays, self.coeff_rank);
        for (&t, ca) in &self.comps {
            for (&s, cb) in &o.comps {
                let Some(g) = fan.join(t, s) else {
                    continue;
                };
                let common: Vec<usize> = fan.cone(t).iter().copied().filter(|j| fan.cone(s).contains(j)).collect();
                for (m, x) in ca {
                    for (n, y) in cb {
                        let xy = x * y;
                        let base: Exp = m.iter().zip(n).map(|(a, b)| a + b).collect();
                        for mask in 0u32..1 << common.len() {
                            let mut e = base.clone();
                            for (k, &j) in common.iter().enumerate() {
                                if mask >> k & 1 == 1 {
                                    e[j] += 1;
                                }
                            }
                            let sign = if mask.count_ones() % 2 == 1 { -BigInt::one() } else { BigInt::one() };
                            out.push(g, e, xy.scale(&sign));
                        }
                    }
                }
            }
        }
        out
    }

    /// Action of a Weyl element permuting the rays (`perm[j]` is the image of
    /// ray `j`), and acting on coefficients through `m`.
    pub fn act(&self, fan: &Fan, perm: &[usize], m: &IntMatrix) -> Self {
        let mut out = Self::zero(self.rays, self.coeff_rank);
        for (&t, comp) in &self.comps {
            let img: Vec<usize> = fan.cone(t).iter().map(|&j| perm[j]).collect();
            let t2 = fan.index_of(&img).expect("the fan is stable under the action");
            for (e, b) in comp {
                let mut e2 = Exp::from_elem(0, self.rays);
                for (j, &x) in e.iter().enumerate() {
                    e2[perm[j]] = x;
                }
                let b2 = if self.coeff_rank == 0 { b.clone() } else { b.act(m, Block::First).expect("one block") };
                out.push(t2, e2, b2);
            }
        }
        out
    }

    /// Restriction to the fixed point of a maximal cone `σ`: `X_j ↦ e^{m_j}`
    /// for the rays of `σ` (with `m` the dual basis in ω-coordinates) and
    /// `X_j ↦ 1` otherwise. Plain classes land in `R(T)`, tensor classes in
    /// `R(T) ⊗ R(T)` with the toric variables in the first block.
    pub fn localize(&self, fan: &Fan, sigma: usize, dual: &[Vec<i64>]) -> Result<LaurentPoly> {
        let r = dual.first().map_or(0, |m| m.len());
        if self.coeff_rank != 0 && self.coeff_rank != r {
            return Err(Error::DimensionMismatch { expected: r, actual: self.coeff_rank });
        }
        let rays = fan.cone(sigma);
        let mut image: Vec<Vec<i64>> = alloc::vec![alloc::vec![0; r]; self.rays];
        for (k, &j) in rays.iter().enumerate() {
            image[j] = dual[k].clone();
        }
        let blocks = if self.coeff_rank == 0 { 1 } else { 2 };
        let mut out = LaurentPoly::zero(r, blocks);
        for (&t, comp) in &self.comps {
            if !fan.is_face(t, sigma) {
                continue;
            }
            let mut x_tau = LaurentPoly::one(r, 1);
            for &j in fan.cone(t) {
                x_tau = &x_tau * &(&LaurentPoly::one(r, 1) - &LaurentPoly::exp(r, 1, &image[j]));
            }
            for (e, b) in comp {
                let mut w = alloc::vec![0i64; r];
                for (j, &x) in e.iter().enumerate() {
                    if x != 0 {
                        for (k, y) in image[j].iter().enumerate() {
                            w[k] += i64::from(x) * y;
                        }
                    }
                }
                let u = &x_tau * &LaurentPoly::exp(r, 1, &w);
                let term = if blocks == 1 {
                    u.scale(&b.augmentation())
                } else {
                    LaurentPoly::tensor(&u, b)?
                };
                out += &term;
            }
        }
        Ok(out)
    }

    /// Whether every component lies in its stated span: cofactor variables
    /// belong to the cone.
    pub fn is_normal(&self, fan: &Fan) -> bool {
        self.comps.iter().all(|(&t, comp)| {
            comp.keys().all(|e| e.iter().enumerate().all(|(j, &x)| x == 0 || fan.cone(t).contains(&j)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{positive_chamber, WeylFan};
    use crate::roots::RootSystem;
    use crate::weyl::WeylGroup;
    use proptest::prelude::*;

    fn chamber(t: &str) -> WeylFan {
        WeylFan::chamber(WeylGroup::new(&RootSystem::new(t.parse().unwrap())).unwrap())
    }

    fn x(d: usize, e: &[i64]) -> LaurentPoly {
        assert_eq!(e.len(), d);
        LaurentPoly::exp(d, 1, e)
    }

    /// Ideal membership oracle: the Stanley–Reisner ideal is radical, so a
    /// polynomial lies in it iff it vanishes after setting `X_j = 1` for the
    /// rays outside each maximal cone.
    fn in_sr_ideal(fan: &Fan, p: &LaurentPoly) -> bool {
        fan.maximal_cones().into_iter().all(|s| {
            let cone = fan.cone(s).to_vec();
            p.map_exponents(1, |e| {
                e.iter().enumerate().map(|(j, &a)| if cone.contains(&j) { a } else { 0 }).collect()
            })
            .is_zero()
        })
    }

    #[test]
    fn one_and_variable() {
        let f = positive_chamber(1);
        let one = SRElement::from_poly(&f, &LaurentPoly::one(1, 1));
        assert_eq!(one.c_tau_decompose(), BTreeMap::from([(0, LaurentPoly::one(1, 1))]));
        let xr = SRElement::from_poly(&f, &x(1, &[1]));
        let ray = f.index_of(&[0]).unwrap();
        // X_ρ = 1 − (1 − X_ρ)
        assert_eq!(
            xr.c_tau_decompose(),
            BTreeMap::from([(0, LaurentPoly::one(1, 1)), (ray, LaurentPoly::constant(1, 1, -1))])
        );
        assert_eq!(xr, SRElement::variable(&f, 0, 0));
    }

    #[test]
    fn a1_full_fan_relation() {
        let wf = chamber("A1");
        let f = wf.full();
        // (1 − X_ρ)(1 − X_{−ρ}) lies in the ideal
        let p = &(&LaurentPoly::one(2, 1) - &x(2, &[1, 0])) * &(&LaurentPoly::one(2, 1) - &x(2, &[0, 1]));
        assert!(SRElement::from_poly(f, &p).is_zero());
        let a = SRElement::from_poly(f, &(&LaurentPoly::one(2, 1) - &x(2, &[1, 0])));
        let b = SRElement::from_poly(f, &(&LaurentPoly::one(2, 1) - &x(2, &[0, 1])));
        assert!(a.mul(&b, f).is_zero());
    }

    #[test]
    fn single_cone_monomial_unchanged() {
        let f = positive_chamber(2);
        let p = x(2, &[3, -2]);
        let e = SRElement::from_poly(&f, &p);
        assert!(e.is_normal(&f));
        assert_eq!(e.recombine(&f), p);
    }

    #[test]
    fn weyl_action_permutes_components() {
        let wf = chamber("A2");
        let f = wf.full();
        let g = wf.group();
        let e = SRElement::from_poly(f, &x(6, &[2, -1, 0, 1, 0, 0]));
        for w in 0..g.order() {
            let we = e.act(f, wf.ray_permutation(w), g.matrix(w));
            for t in e.support() {
                let t2 = wf.act_cone(w, t);
                assert!(we.component(t2).is_some());
            }
            assert_eq!(we.support().count(), e.support().count());
            // the action commutes with normalization
            let p = e.recombine(f);
            let perm = wf.ray_permutation(w);
            let wp = p.map_exponents(1, |a| {
                let mut out = Exp::from_elem(0, 6);
                for (j, &v) in a.iter().enumerate() {
                    out[perm[j]] = v;
                }
                out
            });
            assert_eq!(SRElement::from_poly(f, &wp), we);
        }
    }

    #[test]
    fn localization_of_chamber_variables() {
        let rs = RootSystem::new("A2".parse().unwrap());
        let f = positive_chamber(2);
        let s = f.maximal_cones()[0];
        let dual: Vec<Vec<i64>> = f.dual_basis(s).iter().map(|m| rs.alpha_to_omega(m)).collect();
        let x1 = SRElement::variable(&f, 0, 0);
        assert_eq!(x1.localize(&f, s, &dual).unwrap(), LaurentPoly::exp(2, 1, rs.simple_root(0)));
    }

    fn fans() -> Vec<Fan> {
        let split = Fan::new(
            2,
            alloc::vec![alloc::vec![1, 0], alloc::vec![1, 1], alloc::vec![0, 1]],
            alloc::vec![alloc::vec![0], alloc::vec![1], alloc::vec![2], alloc::vec![0, 1], alloc::vec![1, 2]],
        )
        .unwrap();
        alloc::vec![
            chamber("A1").full().clone(),
            chamber("A2").full().clone(),
            chamber("B2").full().clone(),
            chamber("A3").full().clone(),
            positive_chamber(3),
            split,
        ]
    }

    fn raw(d: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-2i64..=2, d), -4i64..=4), 0..5).prop_map(move |ts| {
            let mut p = LaurentPoly::zero(d, 1);
            for (e, c) in ts {
                p += &LaurentPoly::exp(d, 1, &e).scale(&BigInt::from(c));
            }
            p
        })
    }

    fn fan_and_polys(k: usize) -> impl Strategy<Value = (usize, Vec<LaurentPoly>)> {
        (0..6usize).prop_flat_map(move |i| {
            let d = fans()[i].num_rays();
            (Just(i), prop::collection::vec(raw(d), k))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn decomposition_round_trip((i, ps) in fan_and_polys(1)) {
            let f = &fans()[i];
            let e = SRElement::from_poly(f, &ps[0]);
            prop_assert!(e.is_normal(f));
            prop_assert!(in_sr_ideal(f, &(&ps[0] - &e.recombine(f))));
            prop_assert_eq!(SRElement::from_poly(f, &e.recombine(f)), e.clone());
            prop_assert_eq!(e.normal_form(f), e);
        }

        #[test]
        fn normal_form_is_a_ring_map((i, ps) in fan_and_polys(2)) {
            let f = &fans()[i];
            let (a, b) = (SRElement::from_poly(f, &ps[0]), SRElement::from_poly(f, &ps[1]));
            prop_assert_eq!(SRElement::from_poly(f, &(&ps[0] * &ps[1])), a.mul(&b, f));
            prop_assert_eq!(SRElement::from_poly(f, &(&ps[0] + &ps[1])), a.add(&b));
        }

        #[test]
        fn localization_detects_the_ideal((i, ps) in fan_and_polys(1)) {
            let f = &fans()[i];
            let e = SRElement::from_poly(f, &ps[0]);
            let all_zero = f.maximal_cones().into_iter().all(|s| {
                let dual = f.dual_basis(s);
                e.localize(f, s, &dual).unwrap().is_zero()
            });
            prop_assert_eq!(all_zero, e.is_zero());
        }
    }
}
