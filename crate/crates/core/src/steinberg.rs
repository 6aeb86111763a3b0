//! The Steinberg basis of `R(T)` over `R(T)^W`, its modified variant indexed
//! by the cells `C^I`, and expansion of arbitrary elements in that basis.
//!
//! Expansion works by leading-term reduction. Every weight `λ` is written
//! uniquely as `x^{-1}μ` with `μ` dominant and `x` of minimal length; then
//! `μ − p_x` is dominant and `e^λ` is the leading monomial of
//! `m(μ − p_x)·f_x^∅`, where `m(·)` is the orbit sum. Leading means: largest
//! height of the dominant conjugate, and among equal heights, smallest
//! length of `x`. Subtracting these products terminates and produces the
//! coordinates over `{f_x^∅}`; a unitriangular integer change of basis then
//! gives the coordinates over the modified basis.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{Block, Exp, LaurentPoly};
use crate::linalg::{self, PolyMatrix};
use crate::matrix::{solve_rational, IntMatrix};
use crate::report::Report;
use crate::roots::RootSystem;
use crate::subset::RootSubset;
use crate::weyl::WeylGroup;

/// `f_v = f_v^{Δ∖I}` for the unique `I` with `v ∈ C^I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinbergElement {
    pub v: usize,
    pub subset: RootSubset,
    pub poly: LaurentPoly,
}

/// Coordinates over the modified basis, indexed like the Weyl group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinbergExpansion {
    pub coords: Vec<LaurentPoly>,
}

impl SteinbergExpansion {
    pub fn coord(&self, v: usize) -> &LaurentPoly {
        &self.coords[v]
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(v, _)| v)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

#[derive(Debug, Clone)]
pub struct Steinberg {
    group: WeylGroup,
    basis: Vec<SteinbergElement>,
    /// `v^{-1} p_v`, the exponent of `f_v^∅`.
    empty: Vec<Vec<i64>>,
    p: Vec<Vec<i64>>,
    /// Scaled height functional `λ ↦ det(A)·Σ_i (A^{-1}λ)_i`.
    height: Vec<i64>,
    /// Rows of the inverse change of basis: `f_w^∅ = Σ_v inv[w][v] f_v`.
    inv: Vec<Vec<(usize, BigInt)>>,
}

impl Steinberg {
    pub fn new(group: WeylGroup) -> Result<Self> {
        let rs = group.root_system();
        let r = rs.rank();
        let n = group.order();
        let a: Vec<Vec<i64>> = rs.cartan_matrix().to_vec();
        let at = IntMatrix::from_rows(&a).transpose().rows();
        let (h, _) = solve_rational(&at, &vec![1; r]).ok_or(Error::SingularSystem)?;
        let height = h.into_iter().map(|x| x as i64).collect();
        let p: Vec<Vec<i64>> = (0..n).map(|v| group.p_exponent(v)).collect();
        let empty = (0..n).map(|v| group.act(group.inverse(v), &p[v])).collect();
        let mut st = Steinberg { group, basis: Vec::new(), empty, p, height, inv: Vec::new() };
        for v in 0..n {
            let subset = st.group.c_set_index(v);
            let poly = st.f_v(v, subset.complement(r))?;
            st.basis.push(SteinbergElement { v, subset, poly });
        }
        // T[v][w]: coordinates of f_v over {f_w^∅}; integer, unitriangular
        let mut t = vec![vec![BigInt::zero(); n]; n];
        for v in 0..n {
            let coords = st.expand_empty(&st.basis[v].poly);
            for (w, c) in coords.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let k = c.as_constant().ok_or_else(|| {
                    Error::Invariant(format!("non-constant transition coefficient at {}", st.group.name(v)))
                })?;
                if (w < v) || (w == v && !k.is_one()) {
                    return Err(Error::Invariant(format!(
                        "transition to the modified basis is not unitriangular at {}",
                        st.group.name(v)
                    )));
                }
                t[v][w] = k;
            }
        }
        // inv = T^{-1}, upper unitriangular: inv[w][v] for v ≥ w
        let mut inv = vec![vec![BigInt::zero(); n]; n];
        for w in 0..n {
            inv[w][w] = BigInt::one();
            for v in w + 1..n {
                let mut s = BigInt::zero();
                for k in w..v {
                    if !inv[w][k].is_zero() && !t[k][v].is_zero() {
                        s += &inv[w][k] * &t[k][v];
                    }
                }
                inv[w][v] = -s;
            }
        }
        st.inv = inv
            .into_iter()
            .map(|row| row.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Ok(st)
    }

    pub fn for_root_system(rs: &RootSystem) -> Result<Self> {
        Self::new(WeylGroup::new(rs)?)
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn root_system(&self) -> &RootSystem {
        self.group.root_system()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(self.rank(), 1)
    }

    fn mono(&self, lambda: &[i64]) -> LaurentPoly {
        LaurentPoly::exp(self.rank(), 1, lambda)
    }

    /// Simple reflections as matrices on the weight lattice.
    pub fn generators(&self) -> Vec<IntMatrix> {
        (0..self.rank()).map(|i| self.group.matrix(self.group.index_of_word(&[i])).clone()).collect()
    }

    /// `p_v = ∏_{v^{-1}α_i < 0} e^{ω_i}`.
    pub fn p_v(&self, v: usize) -> LaurentPoly {
        self.mono(&self.p[v])
    }

    /// `f_v^I = Σ_{x ∈ W_I(v)\W_I} x^{-1} v^{-1} p_v`.
    pub fn f_v(&self, v: usize, i: RootSubset) -> Result<LaurentPoly> {
        let (_, reps) = self.group.stabilizer_and_reps(v, i)?;
        let mu = &self.empty[v];
        let mut out = self.zero();
        for x in reps {
            out += &self.mono(&self.group.act(self.group.inverse(x), mu));
        }
        Ok(out)
    }

    /// The modified basis `{f_v}` in canonical order; `f_1 = 1`.
    pub fn modified_basis(&self) -> &[SteinbergElement] {
        &self.basis
    }

    pub fn basis_poly(&self, v: usize) -> &LaurentPoly {
        &self.basis[v].poly
    }

    /// `I(v)`.
    pub fn subset_of(&self, v: usize) -> RootSubset {
        self.basis[v].subset
    }

    /// Orbit of a weight under `W`, in discovery order.
    pub fn orbit(&self, lambda: &[i64]) -> Vec<Vec<i64>> {
        orbit_under(self.root_system(), lambda, RootSubset::full(self.rank()))
    }

    /// `Σ_{μ ∈ Wλ} e^μ`.
    pub fn orbit_sum(&self, lambda: &[i64]) -> LaurentPoly {
        let mut out = self.zero();
        for mu in self.orbit(lambda) {
            out += &self.mono(&mu);
        }
        out
    }

    /// Orbit sum under the parabolic subgroup `W_I`.
    pub fn parabolic_orbit_sum(&self, lambda: &[i64], i: RootSubset) -> LaurentPoly {
        let mut out = self.zero();
        for mu in orbit_under(self.root_system(), lambda, i) {
            out += &self.mono(&mu);
        }
        out
    }

    /// Dominant conjugate `μ` of `λ` and the shortest `x` with `xλ = μ`.
    pub fn dominant(&self, lambda: &[i64]) -> (Vec<i64>, usize) {
        let rs = self.root_system();
        let mut mu = lambda.to_vec();
        let mut x = 0;
        while let Some(i) = mu.iter().position(|&c| c < 0) {
            let c = mu[i];
            for (m, a) in mu.iter_mut().zip(rs.simple_root(i)) {
                *m -= c * a;
            }
            x = self.group.gen_mul(i, x);
        }
        while let Some(k) = (0..self.rank())
            .find(|&k| mu[k] == 0 && self.group.length(self.group.gen_mul(k, x)) < self.group.length(x))
        {
            x = self.group.gen_mul(k, x);
        }
        (mu, x)
    }

    fn key(&self, e: &[i32]) -> (i64, Reverse<usize>) {
        let lambda: Vec<i64> = e.iter().map(|&x| x as i64).collect();
        let (mu, x) = self.dominant(&lambda);
        let h = mu.iter().zip(&self.height).map(|(a, b)| a * b).sum();
        (h, Reverse(self.group.length(x)))
    }

    /// Coordinates of `g` over the unmodified basis `{f_w^∅}`.
    fn expand_empty(&self, g: &LaurentPoly) -> Vec<LaurentPoly> {
        let n = self.order();
        let mut rem = g.clone();
        let mut heap: BinaryHeap<((i64, Reverse<usize>), Exp)> = BinaryHeap::new();
        for (e, _) in g.terms() {
            heap.push((self.key(e), e.clone()));
        }
        let mut coef: Vec<BTreeMap<Vec<i64>, BigInt>> = vec![BTreeMap::new(); n];
        let mut orbits: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
        while let Some((_, e)) = heap.pop() {
            let c = rem.coeff(&e);
            if c.is_zero() {
                continue;
            }
            let lambda: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            let (mu, x) = self.dominant(&lambda);
            let d: Vec<i64> = mu.iter().zip(&self.p[x]).map(|(a, b)| a - b).collect();
            *coef[x].entry(d.clone()).or_default() += &c;
            let orbit = orbits.entry(d.clone()).or_insert_with(|| self.orbit(&d));
            for eta in orbit.iter() {
                let te: Exp = eta.iter().zip(&self.empty[x]).map(|(a, b)| (a + b) as i32).collect();
                let fresh = rem.coeff(&te).is_zero();
                rem.add_term(te.clone(), -c.clone());
                if fresh {
                    heap.push((self.key(&te), te));
                }
            }
        }
        debug_assert!(rem.is_zero());
        coef.into_iter()
            .map(|m| {
                let mut out = self.zero();
                for (d, c) in m {
                    out += &orbits[&d].iter().fold(self.zero(), |acc, eta| &acc + &self.mono(eta)).scale(&c);
                }
                out
            })
            .collect()
    }

    /// Unique coordinates `g = Σ_v a_v f_v` with `a_v ∈ R(T)^W`.
    pub fn expand(&self, g: &LaurentPoly) -> Result<SteinbergExpansion> {
        if g.blocks() != 1 {
            return Err(Error::BlockMismatch { expected: 1, actual: g.blocks() });
        }
        if g.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), actual: g.rank() });
        }
        let b = self.expand_empty(g);
        let mut coords = vec![self.zero(); self.order()];
        for (w, bw) in b.iter().enumerate() {
            if bw.is_zero() {
                continue;
            }
            for (v, c) in &self.inv[w] {
                coords[*v] += &bw.scale(c);
            }
        }
        Ok(SteinbergExpansion { coords })
    }

    /// `Σ_v a_v f_v`.
    pub fn reconstruct(&self, e: &SteinbergExpansion) -> LaurentPoly {
        let mut out = self.zero();
        for v in e.support() {
            out += &(&e.coords[v] * &self.basis[v].poly);
        }
        out
    }

    pub fn is_invariant_expansion(&self, e: &SteinbergExpansion) -> bool {
        let gens = self.generators();
        e.coords.iter().all(|c| c.is_invariant(&gens, Block::First).unwrap_or(false))
    }

    /// Structure constants `a^w_{v,v'}` of `f_v·f_{v'}`, with the support
    /// bound `I(w) ⊆ I(v) ∪ I(v')` enforced.
    pub fn structure_constants(&self, v: usize, v2: usize) -> Result<SteinbergExpansion> {
        let prod = &self.basis[v].poly * &self.basis[v2].poly;
        let e = self.expand(&prod)?;
        let allowed = self.subset_of(v).union(self.subset_of(v2));
        for w in e.support() {
            if !self.subset_of(w).is_subset_of(allowed) {
                return Err(Error::SupportViolation(format!(
                    "f_{}·f_{} has a coordinate at {} (cell {}) outside the cells below {}",
                    self.group.name(v),
                    self.group.name(v2),
                    self.group.name(w),
                    self.subset_of(w),
                    allowed
                )));
            }
        }
        Ok(e)
    }

    /// `M[u][v] = u(f_v)`.
    pub fn steinberg_matrix(&self) -> PolyMatrix {
        let n = self.order();
        (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| self.basis[v].poly.act(self.group.matrix(u), Block::First).unwrap())
                    .collect()
            })
            .collect()
    }

    /// Whether `det M ≠ 0`, by a modular evaluation witness and, if that is
    /// inconclusive, exact elimination.
    pub fn determinant_nonzero(&self) -> Result<bool> {
        let m = self.steinberg_matrix();
        if linalg::det_nonzero_witness(&m) {
            return Ok(true);
        }
        Ok(!linalg::bareiss_det(&m)?.is_zero())
    }

    /// Expansion by solving `M a = (u(g))_u` with Bareiss elimination. Kept as
    /// an independent check of [`Steinberg::expand`]; only practical for small `|W|`.
    pub fn expand_by_elimination(&self, g: &LaurentPoly) -> Result<SteinbergExpansion> {
        let m = self.steinberg_matrix();
        let b: PolyMatrix = (0..self.order())
            .map(|u| vec![g.act(self.group.matrix(u), Block::First).unwrap()])
            .collect();
        let (y, det) = linalg::bareiss_solve(&m, &b)?;
        let coords = y
            .into_iter()
            .map(|row| {
                row[0]
                    .div_exact(&det)
                    .ok_or_else(|| Error::InexactDivision(String::from("final division by det M")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SteinbergExpansion { coords })
    }

    /// Identities (1) and (2) relating Steinberg bases for different parabolics.
    pub fn verify_prop_1_8(&self) -> Report {
        let w = &self.group;
        let r = self.rank();
        let mut rep = Report::new();
        for i in RootSubset::all(r) {
            let k = i.complement(r);
            for v in w.minimal_coset_reps(k) {
                let name = format!("(1) I={i} v={}", w.name(v));
                let res = (|| -> Result<bool> {
                    let (_, reps) = w.stabilizer_and_reps(v, k)?;
                    let lhs = self.f_v(v, k)?;
                    let mut rhs = self.zero();
                    for x in reps {
                        rhs += &self.f_v(w.mul(v, x), RootSubset::EMPTY)?;
                    }
                    Ok(lhs == rhs)
                })();
                record(&mut rep, "prop1.8", name, res);
            }
        }
        for i in RootSubset::all(r) {
            let ki = i.complement(r);
            for j in i.subsets().filter(|&j| j != i) {
                let kj = j.complement(r);
                for v in w.minimal_coset_reps(kj) {
                    let name = format!("(2) J={j} I={i} v={}", w.name(v));
                    let res = (|| -> Result<bool> {
                        let (_, reps) = w.stabilizer_and_reps(v, kj)?;
                        let mut primes = Vec::new();
                        for x in reps {
                            let xp = w.min_rep_of(x, ki);
                            if !primes.contains(&xp) {
                                primes.push(xp);
                            }
                        }
                        let lhs = self.f_v(v, kj)?;
                        let mut rhs = self.zero();
                        for xp in primes {
                            let vx = w.mul(v, xp);
                            if !w.is_min_rep(vx, ki) {
                                return Ok(false);
                            }
                            rhs += &self.f_v(vx, ki)?;
                        }
                        Ok(lhs == rhs)
                    })();
                    record(&mut rep, "prop1.8", name, res);
                }
            }
        }
        rep
    }

    /// Partition and direct-sum statements for the modified basis.
    pub fn verify_lemma_1_9(&self) -> Report {
        let w = &self.group;
        let r = self.rank();
        let cs = w.c_sets();
        let mut rep = Report::new();
        let suite = "lemma1.9";
        for i in RootSubset::all(r) {
            let k = i.complement(r);
            let reps = w.minimal_coset_reps(k);
            let cells: BTreeSet<usize> =
                i.subsets().flat_map(|j| cs[j.0 as usize].iter().copied()).collect();
            let disjoint: usize = i.subsets().map(|j| cs[j.0 as usize].len()).sum();
            let same = cells.len() == disjoint && cells == reps.iter().copied().collect();
            rep.record(suite, format!("partition I={i}"), same, format!("|W^(Δ∖I)|={}", reps.len()));
            rep.record(
                suite,
                format!("rank I={i}"),
                cells.len() * w.parabolic(k).len() == w.order(),
                format!("{} basis elements", cells.len()),
            );

            // (1.13): every W_{Δ∖I}-invariant element expands inside ⊔_{J⊆I} C^J
            let mut samples: Vec<(String, LaurentPoly)> = Vec::new();
            for &v in &reps {
                if let Ok(f) = self.f_v(v, k) {
                    samples.push((format!("f_{}^(Δ∖I)", w.name(v)), f));
                }
            }
            for lambda in sample_weights(r) {
                samples.push((format!("orbit sum {lambda:?}"), self.parabolic_orbit_sum(&lambda, k)));
            }
            for (label, g) in samples {
                let name = format!("(1.13) I={i} {label}");
                let res = self.expand(&g).map(|e| {
                    e.support().all(|x| cells.contains(&x)) && self.reconstruct(&e) == g
                });
                record(&mut rep, suite, name, res);
            }

            // unitriangularity of f_v^{Δ∖I} against the modified basis
            for &v in &reps {
                let name = format!("unitriangular I={i} v={}", w.name(v));
                let res = self.f_v(v, k).and_then(|f| self.expand(&f)).map(|e| {
                    e.coords[v].is_one() && e.support().all(|x| x == v || w.length(x) > w.length(v))
                });
                record(&mut rep, suite, name, res);
            }

            // (1.14): the pieces coming from J ⊊ I never touch C^I
            for j in i.subsets().filter(|&j| j != i) {
                let kj = j.complement(r);
                let ok = w.minimal_coset_reps(kj).into_iter().all(|v| {
                    self.f_v(v, kj)
                        .and_then(|f| self.expand(&f))
                        .map(|e| e.support().all(|x| !cs[i.0 as usize].contains(&x)))
                        .unwrap_or(false)
                });
                rep.record(suite, format!("(1.14) J={j} I={i}"), ok, "");
            }
        }
        let det = self.determinant_nonzero();
        record(&mut rep, suite, String::from("det M ≠ 0"), det);
        rep
    }
}

fn record(rep: &mut Report, suite: &str, name: String, res: Result<bool>) {
    match res {
        Ok(ok) => rep.record(suite, name, ok, ""),
        Err(e) => rep.record(suite, name, false, format!("{e}")),
    }
}

/// A handful of weights used to probe invariant subrings.
fn sample_weights(r: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        out.push(e.clone());
        e[i] = -2;
        out.push(e);
    }
    out.push(vec![1; r]);
    out.push(vec![-1; r]);
    let mut mixed = vec![0; r];
    mixed[0] = 2;
    mixed[r - 1] -= 1;
    out.push(mixed);
    out
}

/// Orbit of `λ` under the parabolic subgroup `W_I`, by closure under its
/// simple reflections.
pub fn orbit_under(rs: &RootSystem, lambda: &[i64], i: RootSubset) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = vec![lambda.to_vec()];
    seen.insert(lambda.to_vec());
    let mut k = 0;
    while k < out.len() {
        let cur = out[k].clone();
        for s in i.indices() {
            let c = cur[s];
            if c == 0 {
                continue;
            }
            let img: Vec<i64> = cur.iter().zip(rs.simple_root(s)).map(|(a, b)| a - c * b).collect();
            if seen.insert(img.clone()) {
                out.push(img);
            }
        }
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn st(s: &str) -> Steinberg {
        Steinberg::for_root_system(&RootSystem::new(s.parse().unwrap())).unwrap()
    }

    fn e(r: usize, l: &[i64]) -> LaurentPoly {
        LaurentPoly::exp(r, 1, l)
    }

    #[test]
    fn p_v_examples() {
        let a1 = st("A1");
        assert!(a1.p_v(0).is_one());
        assert_eq!(a1.p_v(1), e(1, &[1]));
        let a2 = st("A2");
        let s1 = a2.group().parse("s1").unwrap();
        assert_eq!(a2.p_v(s1), e(2, &[1, 0]));
    }

    #[test]
    fn f_v_examples() {
        let a1 = st("A1");
        assert_eq!(a1.f_v(1, RootSubset::EMPTY).unwrap(), e(1, &[-1]));
        assert!(a1.f_v(0, RootSubset::full(1)).unwrap().is_one());
        let a2 = st("A2");
        let s1 = a2.group().parse("s1").unwrap();
        let f = a2.f_v(s1, RootSubset::singleton(1)).unwrap();
        assert_eq!(f, &e(2, &[-1, 1]) + &e(2, &[0, -1]));
        assert!(matches!(
            a2.f_v(s1, RootSubset::singleton(0)),
            Err(Error::NotMinimalRep { .. })
        ));
    }

    #[test]
    fn modified_basis_examples() {
        let a1 = st("A1");
        let b = a1.modified_basis();
        assert_eq!(b.len(), 2);
        assert!(b[0].poly.is_one());
        assert_eq!(b[1].poly, e(1, &[-1]));
        let a2 = st("A2");
        assert_eq!(a2.modified_basis().len(), 6);
        assert_eq!(a2.basis_poly(5), &e(2, &[-1, -1]));
    }

    #[test]
    fn basis_elements_are_orbit_sums_with_unit_coefficients() {
        for s in ["A2", "B2", "G2", "A3"] {
            let t = st(s);
            let r = t.rank();
            for b in t.modified_basis() {
                let k = b.subset.complement(r);
                let gens: Vec<IntMatrix> = k
                    .indices()
                    .map(|i| t.group().matrix(t.group().index_of_word(&[i])).clone())
                    .collect();
                assert!(b.poly.is_invariant(&gens, Block::First).unwrap());
                assert!(b.poly.terms().all(|(_, c)| c.is_one()));
                let (_, reps) = t.group().stabilizer_and_reps(b.v, k).unwrap();
                assert_eq!(b.poly.num_terms(), reps.len());
            }
        }
    }

    #[test]
    fn a1_expansion() {
        let a1 = st("A1");
        let ex = a1.expand(&e(1, &[-2])).unwrap();
        assert_eq!(ex.coords[0], LaurentPoly::constant(1, 1, -1));
        assert_eq!(ex.coords[1], &e(1, &[1]) + &e(1, &[-1]));
        let sc = a1.structure_constants(1, 1).unwrap();
        assert_eq!(sc, ex);
    }

    #[test]
    fn basis_round_trip() {
        for s in ["A1", "A2", "B2", "G2"] {
            let t = st(s);
            for v in 0..t.order() {
                let ex = t.expand(t.basis_poly(v)).unwrap();
                for w in 0..t.order() {
                    assert_eq!(ex.coords[w].is_one(), v == w);
                    assert!(v == w || ex.coords[w].is_zero());
                }
            }
        }
    }

    #[test]
    fn structure_constants_symmetric_and_invariant() {
        let t = st("A2");
        for v in 0..6 {
            for v2 in 0..6 {
                let a = t.structure_constants(v, v2).unwrap();
                assert_eq!(a, t.structure_constants(v2, v).unwrap());
                assert!(t.is_invariant_expansion(&a));
                assert_eq!(t.reconstruct(&a), t.basis_poly(v) * t.basis_poly(v2));
            }
        }
        let one = t.structure_constants(0, 3).unwrap();
        assert!(one.coords[3].is_one() && one.support().count() == 1);
    }

    #[test]
    fn elimination_agrees_with_reduction() {
        for s in ["A1", "A2"] {
            let t = st(s);
            let r = t.rank();
            let gs = [e(r, &vec![-2; r]), &e(r, &vec![1; r]) + &e(r, &vec![3; r]), t.basis_poly(t.order() - 1).clone()];
            for g in gs {
                assert_eq!(t.expand(&g).unwrap(), t.expand_by_elimination(&g).unwrap());
            }
        }
    }

    #[test]
    fn determinants_nonzero() {
        for s in ["A1", "A2", "B2", "G2"] {
            assert!(st(s).determinant_nonzero().unwrap(), "{s}");
        }
    }

    #[test]
    fn a1_bareiss_determinant() {
        let t = st("A1");
        let d = linalg::bareiss_det(&t.steinberg_matrix()).unwrap();
        // det [[1, e^-ω], [1, e^ω]] = e^ω − e^{-ω}
        assert_eq!(d, &e(1, &[1]) - &e(1, &[-1]));
    }

    #[test]
    fn prop_1_8_and_lemma_1_9() {
        let a1 = st("A1");
        let rep = a1.verify_prop_1_8();
        assert_eq!(rep.len(), 4);
        assert!(rep.all_passed());
        for s in ["A2", "B2", "G2", "A3"] {
            let t = st(s);
            let rep = t.verify_prop_1_8();
            assert!(rep.all_passed(), "{s}: {:?}", rep.failures().next());
            let rep = t.verify_lemma_1_9();
            assert!(rep.all_passed(), "{s}: {:?}", rep.failures().next());
        }
    }

    #[test]
    fn invariant_coefficients_are_linear() {
        let t = st("B2");
        let c = &t.orbit_sum(&[1, 0]) + &LaurentPoly::constant(2, 1, 3);
        for v in 0..t.order() {
            let ex = t.expand(&(&c * t.basis_poly(v))).unwrap();
            assert_eq!(ex.coords[v], c);
            assert_eq!(ex.support().count(), 1);
        }
    }

    fn small_poly(r: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-3i64..=3, r), -3i64..=3), 0..5).prop_map(move |ts| {
            let mut p = LaurentPoly::zero(r, 1);
            for (l, c) in ts {
                p += &LaurentPoly::exp(r, 1, &l).scale(&BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn expansion_reconstructs_with_invariant_coordinates(g in small_poly(2), ty in 0usize..3) {
            let t = st(["A2", "B2", "G2"][ty]);
            let ex = t.expand(&g).unwrap();
            prop_assert!(t.is_invariant_expansion(&ex));
            prop_assert_eq!(t.reconstruct(&ex), g);
        }

        #[test]
        fn round_trip_from_invariant_coordinates(ws in prop::collection::vec((prop::collection::vec(0i64..=2, 2), -2i64..=2), 6)) {
            let t = st("A2");
            let coords: Vec<LaurentPoly> = ws.iter()
                .map(|(l, c)| t.orbit_sum(l).scale(&BigInt::from(*c)))
                .collect();
            let ex = SteinbergExpansion { coords };
            prop_assert_eq!(t.expand(&t.reconstruct(&ex)).unwrap(), ex);
        }
    }
}
