//! Sparse Laurent polynomials with big-integer coefficients: the group ring
//! `Z[Λ]` and its tensor square `Z[Λ] ⊗ Z[Λ]`.
//!
//! Exponents are concatenated blocks of `rank` coordinates each, written in
//! the fundamental-weight basis. Terms are kept in a `BTreeMap`, so iteration
//! is in lexicographic exponent order and the last term is the leading one.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::matrix::{gcd_all, IntMatrix};

pub type Exp = SmallVec<[i32; 8]>;

/// Which tensor factor a Weyl group element acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    First,
    Second,
    Diagonal,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    rank: usize,
    blocks: usize,
    terms: BTreeMap<Exp, BigInt>,
}

impl LaurentPoly {
    pub fn zero(rank: usize, blocks: usize) -> Self {
        LaurentPoly { rank, blocks, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, blocks: usize) -> Self {
        Self::monomial(rank, blocks, &vec_zero(rank * blocks), BigInt::one())
    }

    pub fn constant(rank: usize, blocks: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(rank, blocks, &vec_zero(rank * blocks), c.into())
    }

    /// `c·e^λ`.
    pub fn monomial(rank: usize, blocks: usize, exp: &[i32], c: BigInt) -> Self {
        assert_eq!(exp.len(), rank * blocks, "exponent length");
        let mut p = Self::zero(rank, blocks);
        if !c.is_zero() {
            p.terms.insert(Exp::from_slice(exp), c);
        }
        p
    }

    /// `e^λ` for a weight given with `i64` coordinates.
    pub fn exp(rank: usize, blocks: usize, lambda: &[i64]) -> Self {
        let e: Exp = lambda.iter().map(|&x| to_i32(x)).collect();
        Self::monomial(rank, blocks, &e, BigInt::one())
    }

    pub fn from_terms<I>(rank: usize, blocks: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, BigInt)>,
    {
        let mut p = Self::zero(rank, blocks);
        for (e, c) in terms {
            assert_eq!(e.len(), rank * blocks, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn width(&self) -> usize {
        self.rank * self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// The lexicographically largest term.
    pub fn leading(&self) -> Option<(&Exp, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// The constant term, when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, o: &Self) {
        assert!(
            self.rank == o.rank && self.blocks == o.blocks,
            "Laurent polynomials from different rings"
        );
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank, self.blocks);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        LaurentPoly { rank: self.rank, blocks: self.blocks, terms }
    }

    /// Multiplication by the monomial `e^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly { rank: self.rank, blocks: self.blocks, terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank, self.blocks);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Applies a map on exponent vectors term by term; the map must be
    /// injective for the result to be a ring automorphism.
    pub fn map_exponents<F>(&self, blocks: usize, mut f: F) -> Self
    where
        F: FnMut(&[i32]) -> Exp,
    {
        let mut out = Self::zero(self.rank, blocks);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Action of the matrix `m` (an element of `W` in the ω-basis) on the
    /// chosen exponent block(s).
    pub fn act(&self, m: &IntMatrix, block: Block) -> Result<Self> {
        let r = self.rank;
        let range: &[usize] = match (block, self.blocks) {
            (Block::First, _) => &[0],
            (Block::Second, 2) => &[1],
            (Block::Diagonal, 1) => &[0],
            (Block::Diagonal, 2) => &[0, 1],
            (_, b) => return Err(Error::BlockMismatch { expected: 2, actual: b }),
        };
        Ok(self.map_exponents(self.blocks, |e| {
            let mut out = Exp::from_slice(e);
            for &b in range {
                let seg = &e[b * r..(b + 1) * r];
                for (k, x) in m.apply_i32(seg).enumerate() {
                    out[b * r + k] = x;
                }
            }
            out
        }))
    }

    /// Action of `(x, y) ∈ W × W` on a two-block polynomial.
    pub fn act_pair(&self, x: &IntMatrix, y: &IntMatrix) -> Result<Self> {
        if self.blocks != 2 {
            return Err(Error::BlockMismatch { expected: 2, actual: self.blocks });
        }
        let r = self.rank;
        Ok(self.map_exponents(2, |e| {
            x.apply_i32(&e[..r]).chain(y.apply_i32(&e[r..])).collect()
        }))
    }

    pub fn is_invariant(&self, gens: &[IntMatrix], block: Block) -> Result<bool> {
        for g in gens {
            if self.act(g, block)? != *self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of coefficients: the ring map `e^λ ↦ 1`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `f ⊗ g` in the two-block ring.
    pub fn tensor(f: &Self, g: &Self) -> Result<Self> {
        if f.blocks != 1 {
            return Err(Error::BlockMismatch { expected: 1, actual: f.blocks });
        }
        if g.blocks != 1 {
            return Err(Error::BlockMismatch { expected: 1, actual: g.blocks });
        }
        if f.rank != g.rank {
            return Err(Error::DimensionMismatch { expected: f.rank, actual: g.rank });
        }
        let mut out = Self::zero(f.rank, 2);
        for (a, x) in &f.terms {
            for (b, y) in &g.terms {
                let e: Exp = a.iter().chain(b.iter()).copied().collect();
                out.add_term(e, x * y);
            }
        }
        Ok(out)
    }

    /// Embeds a one-block polynomial into the chosen factor of the two-block ring.
    pub fn embed(&self, block: Block) -> Self {
        assert_eq!(self.blocks, 1);
        let r = self.rank;
        self.map_exponents(2, |e| {
            let mut out: Exp = SmallVec::from_elem(0, 2 * r);
            match block {
                Block::First => out[..r].copy_from_slice(e),
                Block::Second => out[r..].copy_from_slice(e),
                Block::Diagonal => {
                    out[..r].copy_from_slice(e);
                    out[r..].copy_from_slice(e);
                }
            }
            out
        })
    }

    /// Groups a two-block polynomial by its first-block exponent:
    /// `f = Σ_μ e^{(μ,0)}·(1 ⊗ g_μ)`.
    pub fn split_first(&self) -> BTreeMap<Exp, LaurentPoly> {
        assert_eq!(self.blocks, 2);
        let r = self.rank;
        let mut out: BTreeMap<Exp, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(Exp::from_slice(&e[..r]))
                .or_insert_with(|| LaurentPoly::zero(r, 1))
                .add_term(Exp::from_slice(&e[r..]), c.clone());
        }
        out
    }

    /// Restricts one block along the augmentation, keeping the other.
    pub fn augment_block(&self, block: Block) -> Self {
        assert_eq!(self.blocks, 2);
        let r = self.rank;
        self.map_exponents(1, |e| match block {
            Block::First => Exp::from_slice(&e[r..]),
            _ => Exp::from_slice(&e[..r]),
        })
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check_same(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.rank, self.blocks));
        }
        if d.terms.len() == 1 {
            let (de, dc) = d.terms.iter().next().unwrap();
            let mut out = Self::zero(self.rank, self.blocks);
            for (e, c) in &self.terms {
                let (q, rem) = c.div_rem(dc);
                if !rem.is_zero() {
                    return None;
                }
                out.terms.insert(e.iter().zip(de).map(|(a, b)| a - b).collect(), q);
            }
            return Some(out);
        }
        let n = self.width();
        let (amin, amax) = self.bounds();
        let (dmin, dmax) = d.bounds();
        let lo: Vec<i32> = (0..n).map(|k| amin[k] - dmin[k]).collect();
        let hi: Vec<i32> = (0..n).map(|k| amax[k] - dmax[k]).collect();
        if (0..n).any(|k| lo[k] > hi[k]) {
            return None;
        }
        let (dle, dlc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut q = Self::zero(self.rank, self.blocks);
        while let Some((le, lc)) = rem.leading() {
            let (qc, r) = lc.div_rem(&dlc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exp = le.iter().zip(&dle).map(|(a, b)| a - b).collect();
            if (0..n).any(|k| qe[k] < lo[k] || qe[k] > hi[k]) {
                return None;
            }
            for (e, c) in &d.terms {
                let te: Exp = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(te, -(c * &qc));
            }
            q.terms.insert(qe, qc);
        }
        Some(q)
    }

    /// Coordinatewise minimum and maximum of the exponents.
    pub fn bounds(&self) -> (Vec<i32>, Vec<i32>) {
        let n = self.width();
        let mut lo = alloc::vec![i32::MAX; n];
        let mut hi = alloc::vec![i32::MIN; n];
        for e in self.terms.keys() {
            for k in 0..n {
                lo[k] = lo[k].min(e[k]);
                hi[k] = hi[k].max(e[k]);
            }
        }
        (lo, hi)
    }

    /// Whether `self` lies in the ideal generated by `1 − e^{−χ}`.
    ///
    /// `Z[Λ]/(1 − e^{χ})` is the group ring of `Λ/Zχ`, so membership means the
    /// coefficients sum to zero on every coset of `Zχ`.
    pub fn in_character_ideal(&self, chi: &[i64]) -> Result<bool> {
        if chi.len() != self.width() {
            return Err(Error::DimensionMismatch { expected: self.width(), actual: chi.len() });
        }
        let Some(k) = chi.iter().position(|&x| x != 0) else {
            return Err(Error::ZeroCharacter);
        };
        let ck = chi[k];
        let mut sums: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let q = (e[k] as i64).div_euclid(ck);
            let rep: Vec<i64> = e.iter().zip(chi).map(|(&a, &b)| a as i64 - q * b).collect();
            *sums.entry(rep).or_default() += c;
        }
        Ok(sums.values().all(|s| s.is_zero()))
    }

    /// `f ≡ g mod (1 − e^{−χ})`.
    pub fn congruent_mod_character(f: &Self, g: &Self, chi: &[i64]) -> Result<bool> {
        (f - g).in_character_ideal(chi)
    }

    /// `1 − e^{−χ}` in the ring of `self`.
    pub fn one_minus_exp_neg(rank: usize, blocks: usize, chi: &[i64]) -> Self {
        let neg: Vec<i64> = chi.iter().map(|x| -x).collect();
        &Self::one(rank, blocks) - &Self::exp(rank, blocks, &neg)
    }

    /// Primitive part of a character and its multiplicity.
    pub fn primitive(chi: &[i64]) -> (Vec<i64>, i64) {
        let g = gcd_all(chi);
        if g == 0 {
            return (chi.to_vec(), 0);
        }
        (chi.iter().map(|x| x / g).collect(), g)
    }
}

fn vec_zero(n: usize) -> Exp {
    SmallVec::from_elem(0, n)
}

fn to_i32(x: i64) -> i32 {
    i32::try_from(x).expect("exponent out of range")
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            let is_const = e.iter().all(|&x| x == 0);
            if is_const {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            f.write_str("e^(")?;
            for (i, x) in e.iter().enumerate() {
                if i > 0 {
                    f.write_str(if self.rank > 0 && i % self.rank == 0 { "|" } else { "," })?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<'a> AddAssign<&'a LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &'a LaurentPoly) {
        self.check_same(o);
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &'a LaurentPoly) {
        self.check_same(o);
        for (e, c) in &o.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl<'a> Mul<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &'a LaurentPoly) -> LaurentPoly {
        self.check_same(o);
        let mut out = LaurentPoly::zero(self.rank, self.blocks);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        let (small, big) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        for (a, x) in &small.terms {
            for (b, y) in &big.terms {
                let e: Exp = a.iter().zip(b.iter()).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}
