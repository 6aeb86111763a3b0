//! The equivariant K-ring `K_{G×G}(X)` as congruence data on the closed
//! orbits, its wonderful-case decomposition over the Steinberg basis, and
//! the `W`-invariant description through the Stanley–Reisner ring of `T̄`.
//!
//! Two-block polynomials use the `(u, v)` split: the first block is the
//! character of `T×1`, the second that of `diag(T)`. A character `(p, q)` in
//! this split is the character `(p, q − p)` of `T×T`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fan::{Fan, WeylFan};
use crate::laurent::{Block, Exp, LaurentPoly};
use crate::roots::RootSystem;
use crate::sr::SRElement;
use crate::steinberg::Steinberg;
use crate::subset::RootSubset;
use crate::weyl::WeylGroup;

/// A family `(f_σ)` of two-block polynomials indexed by the maximal cones of
/// a subdivision of the positive chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseClass {
    pub values: BTreeMap<usize, LaurentPoly>,
}

impl PiecewiseClass {
    /// The constant family `f_σ = f`.
    pub fn constant(plus: &Fan, f: &LaurentPoly) -> Self {
        PiecewiseClass { values: plus.maximal_cones().into_iter().map(|s| (s, f.clone())).collect() }
    }

    fn check_complete(&self, plus: &Fan) -> Result<()> {
        for s in plus.maximal_cones() {
            if !self.values.contains_key(&s) {
                return Err(Error::MissingCone(s));
            }
        }
        Ok(())
    }
}

fn first_block_char(chi: &[i64]) -> Vec<i64> {
    let mut out = chi.to_vec();
    out.extend(core::iter::repeat_n(0, chi.len()));
    out
}

/// Membership in `K_{G×G}(X)`: for every maximal cone `σ` with a facet in the
/// wall of `α`, `(1, s_α)f_σ ≡ f_σ mod (1 − e^{−α(u)})`; for adjacent cones,
/// `f_σ ≡ f_{σ'} mod (1 − e^{−χ(u)})`.
pub fn membership_check(rs: &RootSystem, plus: &Fan, pc: &PiecewiseClass) -> Result<bool> {
    Ok(membership_failure(rs, plus, pc)?.is_none())
}

/// Like [`membership_check`], describing the first failing congruence.
pub fn membership_failure(rs: &RootSystem, plus: &Fan, pc: &PiecewiseClass) -> Result<Option<String>> {
    pc.check_complete(plus)?;
    for s in plus.maximal_cones() {
        let f = &pc.values[&s];
        if f.blocks() != 2 {
            return Err(Error::BlockMismatch { expected: 2, actual: f.blocks() });
        }
        for i in plus.wall_roots(s) {
            let moved = f.act(&rs.reflection_matrix(i), Block::Second)?;
            if !LaurentPoly::congruent_mod_character(&moved, f, &first_block_char(rs.simple_root(i)))? {
                return Ok(Some(format!("wall congruence for α{} fails on cone {}", i + 1, plus.label(s))));
            }
        }
    }
    for adj in plus.adjacencies() {
        let chi = first_block_char(&rs.alpha_to_omega(&adj.chi));
        if !LaurentPoly::congruent_mod_character(&pc.values[&adj.sigma], &pc.values[&adj.sigma2], &chi)? {
            return Ok(Some(format!(
                "cones {} and {} disagree modulo 1 - e^-{:?}",
                plus.label(adj.sigma),
                plus.label(adj.sigma2),
                adj.chi
            )));
        }
    }
    Ok(None)
}

/// Rewrites a two-block polynomial from the `(u, v)` split to `T×T`
/// coordinates.
pub fn to_torus_pair(f: &LaurentPoly) -> LaurentPoly {
    let r = f.rank();
    f.map_exponents(2, |e| {
        let mut out = Exp::from_slice(e);
        for k in 0..r {
            out[r + k] = e[r + k] - e[k];
        }
        out
    })
}

/// Values `f_{σ,x,y} = (x, y)·f_σ` at all `T×T`-fixed points (in `T×T`
/// coordinates), after checking membership and then the curve congruences
/// on the expanded data.
pub fn fixed_point_expansion(
    group: &WeylGroup,
    plus: &Fan,
    pc: &PiecewiseClass,
) -> Result<BTreeMap<(usize, usize, usize), LaurentPoly>> {
    let rs = group.root_system();
    if let Some(why) = membership_failure(rs, plus, pc)? {
        return Err(Error::NotMember(why));
    }
    let n = group.order();
    let r = group.rank();
    let mut out = BTreeMap::new();
    for s in plus.maximal_cones() {
        let f = to_torus_pair(&pc.values[&s]);
        for x in 0..n {
            for y in 0..n {
                out.insert((s, x, y), f.act_pair(group.matrix(x), group.matrix(y))?);
            }
        }
    }
    let pair = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().chain(b).copied().collect() };
    let zero = vec![0i64; r];
    let check = |p: (usize, usize, usize), q: (usize, usize, usize), chi: Vec<i64>, kind: &str| -> Result<()> {
        if LaurentPoly::congruent_mod_character(&out[&p], &out[&q], &chi)? {
            Ok(())
        } else {
            Err(Error::Invariant(format!(
                "{kind} congruence fails between ({}, {}, {}) and ({}, {}, {})",
                plus.label(p.0),
                group.name(p.1),
                group.name(p.2),
                plus.label(q.0),
                group.name(q.1),
                group.name(q.2)
            )))
        }
    };
    for s in plus.maximal_cones() {
        let walls = plus.wall_roots(s);
        for x in 0..n {
            for y in 0..n {
                for i in 0..r {
                    let xa = group.act(x, rs.simple_root(i));
                    let ya = group.act(y, rs.simple_root(i));
                    check((s, x, y), (s, group.mul_gen(x, i), y), pair(&xa, &zero), "closed-orbit")?;
                    check((s, x, y), (s, x, group.mul_gen(y, i)), pair(&zero, &ya), "closed-orbit")?;
                    if walls.contains(&i) {
                        let neg: Vec<i64> = ya.iter().map(|t| -t).collect();
                        check((s, x, y), (s, group.mul_gen(x, i), group.mul_gen(y, i)), pair(&xa, &neg), "wall")?;
                    }
                }
            }
        }
    }
    for adj in plus.adjacencies() {
        let chi = rs.alpha_to_omega(&adj.chi);
        for x in 0..n {
            for y in 0..n {
                let neg: Vec<i64> = group.act(y, &chi).iter().map(|t| -t).collect();
                check((adj.sigma, x, y), (adj.sigma2, x, y), pair(&group.act(x, &chi), &neg), "adjacency")?;
            }
        }
    }
    Ok(out)
}

/// Coordinates of an element of `K_{G×G}(X)` over the free basis
/// `{λ_{I(v)}(u)·(1 ⊗ f_v)}`: `f = Σ_v coords[v]·λ_{I(v)}(u)·(1 ⊗ f_v)` with
/// `coords[v] ∈ R(T) ⊗ R(T)^W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WonderfulDecomposition {
    pub coords: Vec<LaurentPoly>,
}

impl WonderfulDecomposition {
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(v, _)| v)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// The wonderful case: the positive chamber is a single cone.
#[derive(Debug, Clone)]
pub struct Wonderful<'a> {
    st: &'a Steinberg,
    /// `λ_I(u) = Π_{α∈I}(1 − e^{−α(u)})` by bitmask.
    lambda: Vec<LaurentPoly>,
    basis_2: Vec<LaurentPoly>,
}

impl<'a> Wonderful<'a> {
    pub fn new(st: &'a Steinberg) -> Self {
        let rs = st.root_system();
        let r = rs.rank();
        let lambda: Vec<LaurentPoly> = (0..1u32 << r)
            .map(|mask| {
                RootSubset(mask).indices().fold(LaurentPoly::one(r, 2), |acc, i| {
                    &acc * &LaurentPoly::one_minus_exp_neg(r, 2, &first_block_char(rs.simple_root(i)))
                })
            })
            .collect();
        let basis_2 = st.modified_basis().iter().map(|b| b.poly.embed(Block::Second)).collect();
        Wonderful { st, lambda, basis_2 }
    }

    pub fn steinberg(&self) -> &Steinberg {
        self.st
    }

    fn rank(&self) -> usize {
        self.st.rank()
    }

    /// `λ_I(u)` in the two-block ring.
    pub fn lambda(&self, i: RootSubset) -> &LaurentPoly {
        &self.lambda[i.0 as usize]
    }

    /// The free generator `λ_{I(v)}(u)·(1 ⊗ f_v)`.
    pub fn generator(&self, v: usize) -> LaurentPoly {
        &self.lambda[self.st.subset_of(v).0 as usize] * &self.basis_2[v]
    }

    /// All `|W|` free generators, in Weyl order.
    pub fn generators(&self) -> Vec<LaurentPoly> {
        (0..self.st.order()).map(|v| self.generator(v)).collect()
    }

    /// Expansion in the second block: `f = Σ_v g_v·(1 ⊗ f_v)` with
    /// `g_v ∈ R(T) ⊗ R(T)^W`.
    pub fn expand_second(&self, f: &LaurentPoly) -> Result<Vec<LaurentPoly>> {
        if f.blocks() != 2 {
            return Err(Error::BlockMismatch { expected: 2, actual: f.blocks() });
        }
        let r = self.rank();
        let mut g = vec![LaurentPoly::zero(r, 2); self.st.order()];
        for (mu, slice) in f.split_first() {
            let e = self.st.expand(&slice)?;
            let shift: Vec<i32> = mu.iter().copied().chain(core::iter::repeat_n(0, r)).collect();
            for v in e.support() {
                g[v] += &e.coords[v].embed(Block::Second).shift(&shift);
            }
        }
        Ok(g)
    }

    /// Decomposition over the free basis; fails with `NotInSubring` when a
    /// second-block coordinate is not divisible by `λ_{I(v)}(u)`.
    pub fn decompose(&self, f: &LaurentPoly) -> Result<WonderfulDecomposition> {
        let g = self.expand_second(f)?;
        let mut coords = Vec::with_capacity(g.len());
        for (v, gv) in g.into_iter().enumerate() {
            let i = self.st.subset_of(v);
            let q = gv.div_exact(self.lambda(i)).ok_or_else(|| Error::NotInSubring {
                v: self.st.group().name(v),
                subset: i.to_label(),
            })?;
            coords.push(q);
        }
        Ok(WonderfulDecomposition { coords })
    }

    pub fn assemble(&self, d: &WonderfulDecomposition) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank(), 2);
        for v in d.support() {
            out += &(&d.coords[v] * &self.generator(v));
        }
        out
    }

    /// The component `λ_I(u)·Σ_{v∈C^I} coords[v]·(1 ⊗ f_v)` of `A_I`.
    pub fn component(&self, d: &WonderfulDecomposition, i: RootSubset) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank(), 2);
        for v in d.support().filter(|&v| self.st.subset_of(v) == i) {
            out += &(&d.coords[v] * &self.generator(v));
        }
        out
    }

    /// Membership through the single-cone congruences
    /// `(1, s_α)f ≡ f mod (1 − e^{−α(u)})`.
    pub fn is_member(&self, f: &LaurentPoly) -> Result<bool> {
        let plus = crate::fan::positive_chamber(self.rank());
        let pc = PiecewiseClass::constant(&plus, f);
        membership_check(self.st.root_system(), &plus, &pc)
    }

    /// Product by multiplying and re-decomposing, with the support bound
    /// `J ⊆ I ∪ I'` over contributing pairs enforced.
    pub fn multiply(&self, a: &WonderfulDecomposition, b: &WonderfulDecomposition) -> Result<WonderfulDecomposition> {
        let prod = &self.assemble(a) * &self.assemble(b);
        let d = self.decompose(&prod)?;
        let ia: Vec<RootSubset> = a.support().map(|v| self.st.subset_of(v)).collect();
        let ib: Vec<RootSubset> = b.support().map(|v| self.st.subset_of(v)).collect();
        for w in d.support() {
            let j = self.st.subset_of(w);
            let ok = ia.iter().any(|&x| ib.iter().any(|&y| j.is_subset_of(x.union(y))));
            if !ok {
                return Err(Error::SupportViolation(format!(
                    "product has a component at {} ({}) outside every I ∪ I'",
                    j,
                    self.st.group().name(w)
                )));
            }
        }
        Ok(d)
    }

    /// Decomposition of the generator `λ_{I(v)}(u)·(1 ⊗ f_v)`.
    pub fn unit_vector(&self, v: usize) -> WonderfulDecomposition {
        let r = self.rank();
        let mut coords = vec![LaurentPoly::zero(r, 2); self.st.order()];
        coords[v] = LaurentPoly::one(r, 2);
        WonderfulDecomposition { coords }
    }

    /// Product of two generators through the componentwise rule: the
    /// coordinate at `w ∈ C^J` is `λ_{I∩I'}(u)·λ_{(I∪I')∖J}(u) ⊗ a^w_{v,v'}`.
    pub fn generator_product(&self, v: usize, v2: usize) -> Result<WonderfulDecomposition> {
        let r = self.rank();
        let (i, i2) = (self.st.subset_of(v), self.st.subset_of(v2));
        let a = self.st.structure_constants(v, v2)?;
        let mut coords = vec![LaurentPoly::zero(r, 2); self.st.order()];
        for w in a.support() {
            let j = self.st.subset_of(w);
            let lam = self.lambda(i.intersection(i2)) * self.lambda(i.union(i2).difference(j));
            coords[w] = &lam * &a.coords[w].embed(Block::Second);
        }
        Ok(WonderfulDecomposition { coords })
    }
}

/// Decomposition of a `W`-invariant element of `K_T(T̄) ⊗ R(T)` into its
/// components at the cones of `F_+`; the component at `τ` lies in
/// `C_τ ⊗ R(T)^{W_τ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularDecomposition {
    /// Keyed by cone index in `F_+`; each value is supported on the image of
    /// that cone in the full fan.
    pub components: BTreeMap<usize, SRElement>,
}

fn generators_of(group: &WeylGroup) -> Vec<usize> {
    (0..group.rank()).map(|i| group.index_of_word(&[i])).collect()
}

fn act_weyl(wf: &WeylFan, w: usize, e: &SRElement) -> SRElement {
    e.act(wf.full(), wf.ray_permutation(w), wf.group().matrix(w))
}

/// Whether `e` is fixed by the diagonal action of `W`.
pub fn is_diag_invariant(wf: &WeylFan, e: &SRElement) -> bool {
    generators_of(wf.group()).into_iter().all(|s| act_weyl(wf, s, e) == *e)
}

/// Splits an invariant element of `K_T(T̄) ⊗ R(T)` over the cones of `F_+`,
/// checking that each component is `W_τ`-invariant and that the component
/// at `w(τ)` is `w` applied to the component at `τ`.
pub fn regular_decompose(wf: &WeylFan, e: &SRElement) -> Result<RegularDecomposition> {
    if !is_diag_invariant(wf, e) {
        return Err(Error::NotInvariant);
    }
    let full = wf.full();
    let mut components = BTreeMap::new();
    for tau in 0..wf.plus().num_cones() {
        let c = wf.embed(tau);
        let comp = e.restrict(|t| t == c);
        if comp.is_zero() {
            continue;
        }
        let (stab, _) = wf.stabilizer(c);
        for &w in &stab {
            if act_weyl(wf, w, &comp) != comp {
                return Err(Error::Invariant(format!(
                    "component at {} is not fixed by its stabilizer",
                    wf.plus().label(tau)
                )));
            }
        }
        components.insert(tau, comp);
    }
    for c in e.support() {
        let (tau, w) = wf.orbit_rep(c);
        let expected = components.get(&tau).map(|comp| act_weyl(wf, w, comp));
        if expected.as_ref() != Some(&e.restrict(|t| t == c)) {
            return Err(Error::Invariant(format!(
                "component at {} is not the translate of the component at {}",
                full.label(c),
                wf.plus().label(tau)
            )));
        }
    }
    Ok(RegularDecomposition { components })
}

/// `Σ_τ Σ_{w∈W/W_τ} w·(component at τ)`.
pub fn regular_assemble(wf: &WeylFan, dec: &RegularDecomposition) -> SRElement {
    let mut out: Option<SRElement> = None;
    for (&tau, comp) in &dec.components {
        let c = wf.embed(tau);
        let mut seen = Vec::new();
        for w in 0..wf.group().order() {
            let img = wf.act_cone(w, c);
            if seen.contains(&img) {
                continue;
            }
            seen.push(img);
            let t = act_weyl(wf, w, comp);
            out = Some(match out {
                None => t,
                Some(acc) => acc.add(&t),
            });
        }
    }
    out.unwrap_or_else(|| SRElement::zero(wf.full().num_rays(), wf.group().rank()))
}

/// The piece `F_τ` of the multifiltration: components at cones having `τ`
/// as a face, reassembled into an invariant element.
pub fn filtration(wf: &WeylFan, dec: &RegularDecomposition, tau: usize) -> Result<SRElement> {
    if tau >= wf.plus().num_cones() {
        return Err(Error::ConeNotInFan(format!("{tau}")));
    }
    let kept = RegularDecomposition {
        components: dec
            .components
            .iter()
            .filter(|(&s, _)| wf.plus().is_face(tau, s))
            .map(|(&s, c)| (s, c.clone()))
            .collect(),
    };
    Ok(regular_assemble(wf, &kept))
}

/// The restriction `K_T(T̄) ⊗ R(T) → Π_σ R(T) ⊗ R(T)` to the maximal cones of
/// `F_+`, landing in the `(u, v)` split.
pub fn restrict_to_plus(wf: &WeylFan, e: &SRElement) -> Result<PiecewiseClass> {
    let rs = wf.group().root_system();
    let mut values = BTreeMap::new();
    for s in wf.plus().maximal_cones() {
        let c = wf.embed(s);
        let dual: Vec<Vec<i64>> = wf.full().dual_basis(c).iter().map(|m| rs.alpha_to_omega(m)).collect();
        values.insert(s, e.localize(wf.full(), c, &dual)?);
    }
    Ok(PiecewiseClass { values })
}
