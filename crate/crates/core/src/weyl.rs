//! Enumeration of the Weyl group and its coset combinatorics.
//!
//! Elements are stored in a canonical order: by length, then by the
//! lexicographically smallest reduced word. Index 0 is the identity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::roots::RootSystem;
use crate::subset::RootSubset;

/// Default bound on the rank accepted by [`WeylGroup::new`].
pub const DEFAULT_MAX_RANK: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Zero-based generator indices of the lex-smallest reduced word.
    pub word: Vec<usize>,
    /// Action on the weight lattice in the ω-basis.
    pub matrix: IntMatrix,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Serialized form `s1.s2.s1`, or `1` for the identity.
    pub fn name(&self) -> String {
        format_word(&self.word)
    }
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut s = String::new();
    for (k, g) in word.iter().enumerate() {
        if k > 0 {
            s.push('.');
        }
        s.push('s');
        s.push_str(&(g + 1).to_string());
    }
    s
}

/// Parses `s1.s2`, `1` (identity) and, in rank one, the bare `s`.
pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in s.split('.') {
        let idx = match part.strip_prefix('s') {
            Some("") if rank == 1 => 1,
            Some(d) => d.parse::<usize>().map_err(|_| Error::UnknownWord(s.to_string()))?,
            None => return Err(Error::UnknownWord(s.to_string())),
        };
        if idx == 0 || idx > rank {
            return Err(Error::UnknownWord(s.to_string()));
        }
        out.push(idx - 1);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    coweight: Vec<IntMatrix>,
    index: BTreeMap<IntMatrix, usize>,
    right_gen: Vec<Vec<usize>>,
    left_gen: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    descent: Vec<RootSubset>,
}

impl WeylGroup {
    /// Enumerates `W` with the default rank bound.
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_max_rank(rs, DEFAULT_MAX_RANK)
    }

    pub fn with_max_rank(rs: &RootSystem, max_rank: usize) -> Result<Self> {
        let r = rs.rank();
        if r > max_rank {
            return Err(Error::RankBoundExceeded { what: "rank", actual: r, limit: max_rank });
        }
        let gens: Vec<IntMatrix> = (0..r).map(|i| rs.reflection_matrix(i)).collect();
        let cogens: Vec<IntMatrix> = (0..r).map(|i| rs.coweight_reflection_matrix(i)).collect();

        let mut elements = vec![WeylElement { word: Vec::new(), matrix: IntMatrix::identity(r) }];
        let mut coweight = vec![IntMatrix::identity(r)];
        let mut index = BTreeMap::new();
        index.insert(IntMatrix::identity(r), 0usize);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &w in &level {
                for k in 0..r {
                    let m = elements[w].matrix.mul(&gens[k]);
                    if index.contains_key(&m) {
                        continue;
                    }
                    let mut word = elements[w].word.clone();
                    word.push(k);
                    let cm = coweight[w].mul(&cogens[k]);
                    index.insert(m.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(WeylElement { word, matrix: m });
                    coweight.push(cm);
                }
            }
            level = next;
        }
        // Discovery order is already (length, lex word); assert rather than re-sort.
        debug_assert!(elements
            .windows(2)
            .all(|p| (p[0].word.len(), &p[0].word) < (p[1].word.len(), &p[1].word)));

        let n = elements.len();
        let mut right_gen = vec![vec![0; r]; n];
        let mut left_gen = vec![vec![0; r]; n];
        for (w, e) in elements.iter().enumerate() {
            for k in 0..r {
                right_gen[w][k] = index[&e.matrix.mul(&gens[k])];
                left_gen[w][k] = index[&gens[k].mul(&e.matrix)];
            }
        }
        let mut inverse = vec![0; n];
        for (w, e) in elements.iter().enumerate() {
            let mut x = 0;
            for &k in e.word.iter().rev() {
                x = right_gen[x][k];
            }
            inverse[w] = x;
        }
        let descent = (0..n)
            .map(|w| {
                RootSubset::from_indices(
                    (0..r).filter(|&k| elements[right_gen[w][k]].length() < elements[w].length()),
                )
            })
            .collect();
        Ok(WeylGroup { rs: rs.clone(), elements, coweight, index, right_gen, left_gen, inverse, descent })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn name(&self, w: usize) -> String {
        self.elements[w].name()
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length()
    }

    pub fn matrix(&self, w: usize) -> &IntMatrix {
        &self.elements[w].matrix
    }

    /// Action of `w` on the coweight lattice in the basis of fundamental
    /// coweights.
    pub fn coweight_matrix(&self, w: usize) -> &IntMatrix {
        &self.coweight[w]
    }

    pub fn index_of_matrix(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the element represented by a (not necessarily reduced) word.
    pub fn index_of_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |x, &k| self.right_gen[x][k])
    }

    pub fn parse(&self, s: &str) -> Result<usize> {
        let word = parse_word(s, self.rank())?;
        Ok(self.index_of_word(&word))
    }

    /// `w s_k`.
    pub fn mul_gen(&self, w: usize, k: usize) -> usize {
        self.right_gen[w][k]
    }

    /// `s_k w`.
    pub fn gen_mul(&self, k: usize, w: usize) -> usize {
        self.left_gen[w][k]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[b].word.iter().fold(a, |x, &k| self.right_gen[x][k])
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    /// Right descent set `{α_k : l(w s_k) < l(w)}`.
    pub fn descent_set(&self, w: usize) -> RootSubset {
        self.descent[w]
    }

    /// Length computed as the number of positive roots sent to negative ones.
    pub fn inversion_count(&self, w: usize) -> usize {
        let m = self.matrix(w);
        self.rs
            .positive_roots()
            .iter()
            .filter(|b| self.rs.root_sign(&m.apply(&b.omega)) == Some(false))
            .count()
    }

    pub fn act(&self, w: usize, weight: &[i64]) -> Vec<i64> {
        self.matrix(w).apply(weight)
    }

    pub fn act_coweight(&self, w: usize, coweight: &[i64]) -> Vec<i64> {
        self.coweight[w].apply(coweight)
    }

    /// Whether `w` lies in the parabolic subgroup `W_I`.
    pub fn in_parabolic(&self, w: usize, i: RootSubset) -> bool {
        self.elements[w].word.iter().all(|&k| i.contains(k))
    }

    /// `W_I`, in canonical order.
    pub fn parabolic(&self, i: RootSubset) -> Vec<usize> {
        (0..self.order()).filter(|&w| self.in_parabolic(w, i)).collect()
    }

    /// Whether `w ∈ W^I`, i.e. `l(w s_α) > l(w)` for all `α ∈ I`.
    pub fn is_min_rep(&self, w: usize, i: RootSubset) -> bool {
        self.descent[w].intersection(i).is_empty()
    }

    /// `W^I`, sorted by length then lex word.
    pub fn minimal_coset_reps(&self, i: RootSubset) -> Vec<usize> {
        (0..self.order()).filter(|&w| self.is_min_rep(w, i)).collect()
    }

    /// Minimal representative of the left coset `w W_I`.
    pub fn min_rep_of(&self, w: usize, i: RootSubset) -> usize {
        let mut x = w;
        loop {
            match self.descent[x].intersection(i).indices().next() {
                Some(k) => x = self.right_gen[x][k],
                None => return x,
            }
        }
    }

    /// The subset `I(v)` with `v ∈ C^{I(v)}`; it is the right descent set.
    pub fn c_set_index(&self, v: usize) -> RootSubset {
        self.descent[v]
    }

    /// `C^I` for every `I ⊆ Δ`, indexed by bitmask.
    pub fn c_sets(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut out = vec![Vec::new(); 1 << r];
        for w in 0..self.order() {
            out[self.descent[w].0 as usize].push(w);
        }
        out
    }

    /// Stabilizer `W_I(v)` of the monomial `v^{-1} p_v` in `W_I` and the
    /// shortest representatives of the right cosets `W_I(v) x`.
    pub fn stabilizer_and_reps(&self, v: usize, i: RootSubset) -> Result<(Vec<usize>, Vec<usize>)> {
        if !self.is_min_rep(v, i) {
            return Err(Error::NotMinimalRep { word: self.name(v), subset: i.to_label() });
        }
        let mu = self.act(self.inverse(v), &self.p_exponent(v));
        let mut stab = Vec::new();
        let mut reps = Vec::new();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        for x in self.parabolic(i) {
            if self.act(x, &mu) == mu {
                stab.push(x);
            }
            // W_I(v)x is determined by x^{-1}μ; canonical order puts the shortest first
            if seen.insert(self.act(self.inverse(x), &mu)) {
                reps.push(x);
            }
        }
        Ok((stab, reps))
    }

    /// Exponent of `p_v = e^{Σ ω_i}` over `i` with `v^{-1}α_i < 0`.
    pub fn p_exponent(&self, v: usize) -> Vec<i64> {
        let vinv = self.inverse(v);
        (0..self.rank())
            .map(|i| {
                let img = self.act(vinv, self.rs.simple_root(i));
                i64::from(self.rs.root_sign(&img) == Some(false))
            })
            .collect()
    }
}
