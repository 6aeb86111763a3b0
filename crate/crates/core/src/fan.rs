//! Smooth fans in the coweight space of the adjoint torus.
//!
//! Rays are integer vectors in the basis of fundamental coweights `ω_i^∨`,
//! so the positive Weyl chamber is the nonnegative orthant and a coweight
//! `n` pairs with a root `Σ c_i α_i` as `Σ n_i c_i`. Characters attached to
//! facets are therefore produced in simple-root coordinates and converted to
//! the fundamental-weight basis on request.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{gcd_all, IntMatrix, is_unimodular_family, primitive_normal, solve_rational};
use crate::roots::RootSystem;
use crate::weyl::WeylGroup;

/// A cone, given by the sorted indices of its rays.
pub type Cone = Vec<usize>;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cone_label(rays: &[Vec<i64>], c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(|&j| format!("{:?}", rays[j])).collect();
    format!("<{}>", parts.join(","))
}

/// Nonempty proper subsets of a cone, as sorted index lists.
fn proper_faces(c: &[usize]) -> impl Iterator<Item = Cone> + '_ {
    let k = c.len();
    (1..(1u32 << k) - 1).map(move |mask| {
        (0..k).filter(|&b| mask >> b & 1 == 1).map(|b| c[b]).collect()
    })
}

/// A facet shared by two maximal cones, with the primitive character
/// orthogonal to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    pub sigma: usize,
    pub sigma2: usize,
    pub facet: usize,
    /// Simple-root coordinates; positive on the ray of `sigma` off the facet.
    pub chi: Vec<i64>,
}

/// A simplicial fan, closed under faces. Cone 0 is the zero cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Cone>,
    index: BTreeMap<Cone, usize>,
}

impl Fan {
    /// Builds a fan from rays and cones, checking that rays are primitive,
    /// cones are unimodular and the collection is closed under faces.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Cone>) -> Result<Self> {
        for r in &rays {
            if r.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, actual: r.len() });
            }
            if gcd_all(r) != 1 {
                return Err(Error::NotSmooth(format!("ray {r:?} is not primitive")));
            }
        }
        for (j, r) in rays.iter().enumerate() {
            if rays[..j].contains(r) {
                return Err(Error::NotSmooth(format!("ray {r:?} is listed twice")));
            }
        }
        let mut set: BTreeMap<Cone, ()> = BTreeMap::new();
        for c in cones {
            let mut c = c;
            c.sort_unstable();
            if c.windows(2).any(|w| w[0] == w[1]) || c.iter().any(|&j| j >= rays.len()) {
                return Err(Error::ConeNotInFan(format!("{c:?}")));
            }
            let vecs: Vec<Vec<i64>> = c.iter().map(|&j| rays[j].clone()).collect();
            if !is_unimodular_family(&vecs, rank) {
                return Err(Error::NotSmooth(cone_label(&rays, &c)));
            }
            set.insert(c, ());
        }
        set.insert(Vec::new(), ());
        for c in set.keys() {
            for f in proper_faces(c) {
                if !set.contains_key(&f) {
                    return Err(Error::NotFaceClosed(cone_label(&rays, &f)));
                }
            }
        }
        Ok(Self::from_closed(rank, rays, set.into_keys().collect()))
    }

    /// Builds a fan from its maximal cones, adding all faces.
    pub fn from_maximal(rank: usize, rays: Vec<Vec<i64>>, maximal: &[Cone]) -> Result<Self> {
        let mut all: BTreeMap<Cone, ()> = BTreeMap::new();
        for c in maximal {
            let mut c = c.clone();
            c.sort_unstable();
            for f in proper_faces(&c) {
                all.insert(f, ());
            }
            all.insert(c, ());
        }
        Self::new(rank, rays, all.into_keys().collect())
    }

    fn from_closed(rank: usize, rays: Vec<Vec<i64>>, mut cones: Vec<Cone>) -> Self {
        cones.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = cones.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Fan { rank, rays, cones, index }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, j: usize) -> &[i64] {
        &self.rays[j]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &[usize] {
        &self.cones[i]
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.cones[i].len()
    }

    /// Index of the cone with exactly these rays (any order).
    pub fn index_of(&self, rays: &[usize]) -> Option<usize> {
        let mut c = rays.to_vec();
        c.sort_unstable();
        c.dedup();
        self.index.get(&c).copied()
    }

    pub fn label(&self, i: usize) -> String {
        cone_label(&self.rays, &self.cones[i])
    }

    /// Indices of the cones of dimension `rank`.
    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cones[i].len() == self.rank).collect()
    }

    /// Whether `tau` is a face of `sigma`.
    pub fn is_face(&self, tau: usize, sigma: usize) -> bool {
        self.cones[tau].iter().all(|j| self.cones[sigma].contains(j))
    }

    /// The cone spanned by two cones, if it belongs to the fan.
    pub fn join(&self, tau: usize, sigma: usize) -> Option<usize> {
        let mut c = self.cones[tau].clone();
        c.extend_from_slice(&self.cones[sigma]);
        self.index_of(&c)
    }

    /// Primitive character (simple-root coordinates) vanishing on the facet
    /// `sigma ∖ {ray}` and positive on `ray`.
    pub fn facet_character(&self, sigma: usize, ray: usize) -> Vec<i64> {
        let facet: Vec<Vec<i64>> = self.cones[sigma]
            .iter()
            .filter(|&&j| j != ray)
            .map(|&j| self.rays[j].clone())
            .collect();
        let chi = primitive_normal(&facet, self.rank).expect("cone rays are independent");
        if dot(&chi, &self.rays[ray]) < 0 {
            chi.into_iter().map(|x| -x).collect()
        } else {
            chi
        }
    }

    /// Pairs of maximal cones sharing a facet, in cone order.
    pub fn adjacencies(&self) -> Vec<Adjacency> {
        let maximal = self.maximal_cones();
        let mut out = Vec::new();
        for (a, &s) in maximal.iter().enumerate() {
            for &t in &maximal[a + 1..] {
                let common: Vec<usize> =
                    self.cones[s].iter().copied().filter(|j| self.cones[t].contains(j)).collect();
                if common.len() + 1 != self.rank {
                    continue;
                }
                let extra = *self.cones[s].iter().find(|j| !common.contains(j)).unwrap();
                out.push(Adjacency {
                    sigma: s,
                    sigma2: t,
                    facet: self.index[&common],
                    chi: self.facet_character(s, extra),
                });
            }
        }
        out
    }

    /// Simple roots `α_i` whose wall `α_i = 0` contains a facet of `sigma`.
    pub fn wall_roots(&self, sigma: usize) -> Vec<usize> {
        (0..self.rank)
            .filter(|&i| {
                let off: Vec<usize> =
                    self.cones[sigma].iter().copied().filter(|&j| self.rays[j][i] != 0).collect();
                off.len() == 1
            })
            .collect()
    }

    /// Dual basis of the rays of a maximal cone, in simple-root coordinates:
    /// `m[j]` pairs to 1 with the `j`-th ray of the cone and 0 with the others.
    pub fn dual_basis(&self, sigma: usize) -> Vec<Vec<i64>> {
        let c = &self.cones[sigma];
        let rows: Vec<Vec<i64>> = c.iter().map(|&j| self.rays[j].clone()).collect();
        (0..c.len())
            .map(|k| {
                let mut e = vec![0; c.len()];
                e[k] = 1;
                let (x, d) = solve_rational(&rows, &e).expect("maximal cones are unimodular");
                x.into_iter().map(|v| (v / d) as i64).collect()
            })
            .collect()
    }

    /// Checks that the fan is a smooth subdivision of the positive chamber
    /// `{n : n_i ≥ 0}`.
    pub fn check_positive_subdivision(&self) -> Result<()> {
        let r = self.rank;
        for ray in &self.rays {
            if ray.iter().any(|&x| x < 0) {
                return Err(Error::SupportMismatch(format!("ray {ray:?} lies outside the chamber")));
            }
        }
        let maximal = self.maximal_cones();
        if maximal.is_empty() {
            return Err(Error::SupportMismatch("no full-dimensional cone".into()));
        }
        for i in 0..self.cones.len() {
            if !maximal.iter().any(|&s| self.is_face(i, s)) {
                return Err(Error::SupportMismatch(format!(
                    "cone {} is not a face of a full-dimensional cone",
                    self.label(i)
                )));
            }
        }
        for f in (0..self.cones.len()).filter(|&i| self.cones[i].len() + 1 == r) {
            let around: Vec<usize> = maximal.iter().copied().filter(|&s| self.is_face(f, s)).collect();
            let in_wall = (0..r).any(|i| self.cones[f].iter().all(|&j| self.rays[j][i] == 0));
            let ok = match (in_wall, around.len()) {
                (true, 1) => true,
                (false, 2) => {
                    let chi = self.facet_character(around[0], extra_of(self, around[0], f));
                    dot(&chi, &self.rays[extra_of(self, around[1], f)]) < 0
                }
                _ => false,
            };
            if !ok {
                return Err(Error::SupportMismatch(format!(
                    "facet {} is bounded by {} full-dimensional cone(s)",
                    self.label(f),
                    around.len()
                )));
            }
        }
        // a point of the open chamber off every facet hyperplane is covered once
        let covered = (0..8i64)
            .find_map(|attempt| {
                let p: Vec<i64> =
                    (0..r as i64).map(|k| 1_000_003 + 7919 * k * k + 104_729 * attempt * (k + 1)).collect();
                let mut count = 0;
                for &s in &maximal {
                    let rows: Vec<Vec<i64>> = self.cones[s].iter().map(|&j| self.rays[j].clone()).collect();
                    let t = IntMatrix::from_rows(&rows).transpose().rows();
                    let (x, _) = solve_rational(&t, &p)?;
                    if x.contains(&0) {
                        return None;
                    }
                    if x.iter().all(|&c| c > 0) {
                        count += 1;
                    }
                }
                Some(count)
            })
            .unwrap_or(0);
        if covered != 1 {
            return Err(Error::SupportMismatch(format!(
                "a generic chamber point is covered {covered} times"
            )));
        }
        Ok(())
    }
}

fn extra_of(fan: &Fan, sigma: usize, facet: usize) -> usize {
    *fan.cones[sigma].iter().find(|j| !fan.cones[facet].contains(j)).unwrap()
}

/// The positive chamber fan: all faces of `cone(ω_1^∨, …, ω_r^∨)`.
pub fn positive_chamber(rank: usize) -> Fan {
    let rays: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut e = vec![0; rank];
            e[i] = 1;
            e
        })
        .collect();
    Fan::from_maximal(rank, rays, &[(0..rank).collect()]).expect("the chamber is smooth")
}

/// Validates a user-supplied smooth subdivision of the positive chamber.
pub fn subdivided_positive_fan(rs: &RootSystem, rays: Vec<Vec<i64>>, cones: Vec<Cone>) -> Result<Fan> {
    let fan = Fan::new(rs.rank(), rays, cones)?;
    fan.check_positive_subdivision()?;
    Ok(fan)
}

/// A `W`-stable fan `F = W·F_+` together with its positive part.
#[derive(Debug, Clone)]
pub struct WeylFan {
    group: WeylGroup,
    plus: Fan,
    full: Fan,
    /// `perm[w][j]`: index of the ray `w(ρ_j)` in the full fan.
    perm: Vec<Vec<usize>>,
    /// Index in the full fan of each cone of `F_+`.
    embed: Vec<usize>,
}

impl WeylFan {
    pub fn new(group: WeylGroup, plus: Fan) -> Result<Self> {
        plus.check_positive_subdivision()?;
        let r = group.rank();
        let mut rays: Vec<Vec<i64>> = plus.rays().to_vec();
        for w in 0..group.order() {
            for j in 0..plus.num_rays() {
                let img = group.act_coweight(w, plus.ray(j));
                if !rays.contains(&img) {
                    rays.push(img);
                }
            }
        }
        let ray_index: BTreeMap<Vec<i64>, usize> =
            rays.iter().enumerate().map(|(j, v)| (v.clone(), j)).collect();
        let perm: Vec<Vec<usize>> = (0..group.order())
            .map(|w| rays.iter().map(|v| ray_index[&group.act_coweight(w, v)]).collect())
            .collect();
        let mut cones: BTreeMap<Cone, ()> = BTreeMap::new();
        for w in 0..group.order() {
            for c in plus.cones() {
                let mut img: Cone = c.iter().map(|&j| perm[w][j]).collect();
                img.sort_unstable();
                cones.insert(img, ());
            }
        }
        let full = Fan::from_closed(r, rays, cones.into_keys().collect());
        let embed = plus.cones().iter().map(|c| full.index_of(c).unwrap()).collect();
        Ok(WeylFan { group, plus, full, perm, embed })
    }

    /// The fan of Weyl chambers.
    pub fn chamber(group: WeylGroup) -> Self {
        let plus = positive_chamber(group.rank());
        Self::new(group, plus).expect("the chamber fan is valid")
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn plus(&self) -> &Fan {
        &self.plus
    }

    pub fn full(&self) -> &Fan {
        &self.full
    }

    /// Index in the full fan of a cone of `F_+`.
    pub fn embed(&self, tau: usize) -> usize {
        self.embed[tau]
    }

    /// Index in `F_+` of a cone of the full fan, if it lies in the chamber.
    pub fn plus_index(&self, c: usize) -> Option<usize> {
        self.embed.iter().position(|&x| x == c)
    }

    pub fn ray_permutation(&self, w: usize) -> &[usize] {
        &self.perm[w]
    }

    /// `w(τ)` for a cone of the full fan.
    pub fn act_cone(&self, w: usize, c: usize) -> usize {
        let img: Vec<usize> = self.full.cone(c).iter().map(|&j| self.perm[w][j]).collect();
        self.full.index_of(&img).expect("the fan is W-stable")
    }

    /// `W_τ = {w : w(τ) = τ}` for a cone of the full fan, and whether every
    /// element of it fixes `τ` pointwise.
    pub fn stabilizer(&self, c: usize) -> (Vec<usize>, bool) {
        let stab: Vec<usize> = (0..self.group.order()).filter(|&w| self.act_cone(w, c) == c).collect();
        let pointwise = stab
            .iter()
            .all(|&w| self.full.cone(c).iter().all(|&j| self.perm[w][j] == j));
        (stab, pointwise)
    }

    /// Cone stabilizer for a cone given by its rays in the full fan.
    pub fn cone_stabilizer(&self, rays: &[usize]) -> Result<(Vec<usize>, bool)> {
        let c = self.full.index_of(rays).ok_or_else(|| Error::ConeNotInFan(format!("{rays:?}")))?;
        Ok(self.stabilizer(c))
    }

    /// The unique cone of `F_+` in the orbit of `c`, and an element `w`
    /// with `w(rep) = c`.
    pub fn orbit_rep(&self, c: usize) -> (usize, usize) {
        for w in 0..self.group.order() {
            let back = self.act_cone(self.group.inverse(w), c);
            if let Some(t) = self.plus_index(back) {
                return (t, w);
            }
        }
        unreachable!("every cone is a translate of a cone in the chamber")
    }

    /// Number of `T×T`-fixed points, `|F_+(l)|·|W|²`.
    pub fn fixed_point_count(&self) -> usize {
        let n = self.group.order();
        self.plus.maximal_cones().len() * n * n
    }
}

/// Adjacent-cone congruence test for a family of one-block Laurent
/// polynomials indexed by the maximal cones of `plus`.
pub fn localization_check(
    rs: &RootSystem,
    plus: &Fan,
    family: &BTreeMap<usize, crate::laurent::LaurentPoly>,
) -> Result<bool> {
    for s in plus.maximal_cones() {
        if !family.contains_key(&s) {
            return Err(Error::MissingCone(s));
        }
    }
    for adj in plus.adjacencies() {
        let chi = rs.alpha_to_omega(&adj.chi);
        if !crate::laurent::LaurentPoly::congruent_mod_character(&family[&adj.sigma], &family[&adj.sigma2], &chi)? {
            return Ok(false);
        }
    }
    Ok(true)
}
