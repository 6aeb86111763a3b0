//! Cartan data and root systems of the simple types.
//!
//! Weights are written in the fundamental-weight basis `ω_1..ω_r`, roots
//! additionally in the simple-root basis. The Cartan matrix convention is
//! `cartan[i][j] = ⟨α_i^∨, α_j⟩`, so column `j` holds the `ω`-coordinates
//! of `α_j`. Numbering of simple roots follows Bourbaki.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A Cartan type such as `A2` or `G2`; only admissible pairs can be built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanLabel {
    family: Family,
    rank: usize,
}

impl CartanLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanLabel { family, rank })
        } else {
            Err(Error::InvalidCartanLabel { family: family.letter(), rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of the Weyl group, from the classical formulas.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Number of positive roots, from the classical formulas.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        match self.family {
            // α_n short
            Family::B => a[n - 1][n - 2] = -2,
            // α_n long
            Family::C => a[n - 2][n - 1] = -2,
            // α_1, α_2 long; α_3, α_4 short
            Family::F => a[2][1] = -2,
            // α_1 short, α_2 long
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnparseableLabel(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnparseableLabel(s.to_string()))?;
        CartanLabel::new(fam, rank)
    }
}

/// A root together with its coordinates in both bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the simple-root basis.
    pub alpha: Vec<i64>,
    /// Coordinates in the fundamental-weight basis.
    pub omega: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    label: CartanLabel,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    /// ω-coordinates of every root mapped to its sign (true = positive).
    sign: BTreeMap<Vec<i64>, bool>,
}

impl RootSystem {
    pub fn new(label: CartanLabel) -> Self {
        let cartan = label.cartan_matrix();
        let r = label.rank();
        let pairing = |i: usize, beta: &[i64]| -> i64 {
            (0..r).map(|j| cartan[i][j] * beta[j]).sum()
        };
        // closure of the simple roots under simple reflections, in α-coordinates
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                let c = pairing(i, &beta);
                let mut img = beta.clone();
                img[i] -= c;
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let to_omega = |beta: &[i64]| -> Vec<i64> { (0..r).map(|i| pairing(i, beta)).collect() };
        let mut positive: Vec<Root> = seen
            .iter()
            .filter(|b| b.iter().all(|&x| x >= 0))
            .map(|b| Root { alpha: b.clone(), omega: to_omega(b) })
            .collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.alpha.iter().sum();
            let hb: i64 = b.alpha.iter().sum();
            ha.cmp(&hb).then_with(|| b.alpha.cmp(&a.alpha))
        });
        let mut sign = BTreeMap::new();
        for b in &seen {
            sign.insert(to_omega(b), b.iter().all(|&x| x >= 0));
        }
        let simple_roots = (0..r).map(|j| (0..r).map(|i| cartan[i][j]).collect()).collect();
        RootSystem { label, cartan, simple_roots, positive_roots: positive, sign }
    }

    pub fn label(&self) -> CartanLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `α_j` in ω-coordinates.
    pub fn simple_root(&self, j: usize) -> &[i64] {
        &self.simple_roots[j]
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Sign of a root given in ω-coordinates; `None` if it is not a root.
    pub fn root_sign(&self, omega: &[i64]) -> Option<bool> {
        self.sign.get(omega).copied()
    }

    pub fn fundamental_weight(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }

    /// Converts simple-root coordinates to ω-coordinates.
    pub fn alpha_to_omega(&self, beta: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| self.cartan[i][j] * beta[j]).sum())
            .collect()
    }

    /// Matrix of `s_i` on the weight lattice in the ω-basis:
    /// `s_i(λ) = λ − λ_i α_i`.
    pub fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        let mut m = IntMatrix::identity(r);
        for k in 0..r {
            m.set(k, i, m.get(k, i) - self.cartan[k][i]);
        }
        m
    }

    /// Matrix of `s_i` on the coweight lattice in the basis of fundamental
    /// coweights `ω_j^∨` (dual to the simple roots):
    /// `s_i(n) = n − ⟨n, α_i⟩ α_i^∨` with `α_i^∨ = Σ_j cartan[i][j] ω_j^∨`.
    pub fn coweight_reflection_matrix(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        let mut m = IntMatrix::identity(r);
        for k in 0..r {
            m.set(k, i, m.get(k, i) - self.cartan[i][k]);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn admissible_labels() {
        for ok in ["A1", "A4", "B2", "C3", "D4", "E6", "E8", "F4", "G2"] {
            assert!(ok.parse::<CartanLabel>().is_ok(), "{ok}");
        }
        for bad in ["A0", "B1", "C1", "D3", "E5", "E9", "F3", "G3"] {
            assert!(matches!(
                bad.parse::<CartanLabel>(),
                Err(Error::InvalidCartanLabel { .. })
            ), "{bad}");
        }
        assert!(matches!("X2".parse::<CartanLabel>(), Err(Error::UnparseableLabel(_))));
    }

    #[test]
    fn rank_one_cartan() {
        let r = rs("A1");
        assert_eq!(r.cartan_matrix(), &[vec![2]]);
        assert_eq!(r.positive_roots().len(), 1);
        assert_eq!(r.simple_root(0), &[2]);
    }

    #[test]
    fn a2_positive_roots() {
        let r = rs("A2");
        let alphas: Vec<_> = r.positive_roots().iter().map(|x| x.alpha.clone()).collect();
        assert_eq!(alphas, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(r.simple_root(0), &[2, -1]);
    }

    #[test]
    fn positive_root_counts_match_classification() {
        for s in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let l: CartanLabel = s.parse().unwrap();
            assert_eq!(RootSystem::new(l).positive_roots().len(), l.positive_root_count(), "{s}");
        }
    }

    #[test]
    fn cartan_diagonal_and_independence() {
        for s in ["B3", "C3", "F4", "G2", "D5", "E7"] {
            let r = rs(s);
            let a = r.cartan_matrix();
            assert!((0..r.rank()).all(|i| a[i][i] == 2));
            assert_ne!(crate::matrix::det_i64(a), 0);
        }
    }

    #[test]
    fn reflections_preserve_roots() {
        let r = rs("G2");
        for i in 0..2 {
            let m = r.reflection_matrix(i);
            for root in r.positive_roots() {
                let img = m.apply(&root.omega);
                assert!(r.root_sign(&img).is_some());
            }
            let img = m.apply(r.simple_root(i));
            assert_eq!(img, r.simple_root(i).iter().map(|x| -x).collect::<Vec<_>>());
        }
    }
}
