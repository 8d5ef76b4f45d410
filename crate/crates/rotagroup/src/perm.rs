//! Exact permutation algebra on the points `0..n`.
//!
//! A permutation is stored as its image array: `images[x]` is where `x` goes.
//! The composition convention throughout the crate is `(p ∘ q)(x) = p(q(x))`,
//! so in a product written left to right the rightmost factor acts first.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image array is not a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("cycles overlap or reference points outside 0..{0}")]
    BadCycles(usize),
    #[error("point set is not invariant under the permutation")]
    NotInvariant,
    #[error("point set must be strictly increasing and within 0..{0}")]
    BadPointSet(usize),
}

/// A permutation of `{0, …, n−1}` by image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(PermError::NotBijective(n));
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles; each listed point maps to
    /// the next one, the last back to the first.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x >= degree || y >= degree || touched[x] {
                    return Err(PermError::BadCycles(degree));
                }
                touched[x] = true;
                images[x] = y;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `(self ∘ other)(x) = self(other(x))`; `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// Conjugation `self · x · self⁻¹`: if `x(a) = b` then the result maps
    /// `self(a)` to `self(b)`.
    pub fn conjugate(&self, x: &Self) -> Result<Self, PermError> {
        if self.degree() != x.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), x.degree()));
        }
        let mut images = vec![0; self.degree()];
        for (a, &b) in x.images.iter().enumerate() {
            images[self.images[a]] = self.images[b];
        }
        Ok(Permutation { images })
    }

    /// Commutator `[self, h] = self · h · self⁻¹ · h⁻¹`.
    pub fn commutator(&self, h: &Self) -> Result<Self, PermError> {
        let gh = self.compose(h)?;
        let hg = h.compose(self)?;
        Ok(gh.compose(&hg.inverse()).expect("equal degrees"))
    }

    /// `e`-fold composition; negative `e` uses the inverse. Computed per
    /// cycle, so huge exponents are cheap.
    pub fn power(&self, e: i64) -> Self {
        let mut images = vec![0; self.degree()];
        for cycle in self.cycles() {
            let len = cycle.len() as i64;
            let shift = e.rem_euclid(len) as usize;
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + shift) % cycle.len()];
            }
        }
        Permutation { images }
    }

    /// Like [`power`](Self::power) for arbitrary-precision exponents.
    pub fn power_big(&self, e: &BigUint) -> Self {
        let mut images = vec![0; self.degree()];
        for cycle in self.cycles() {
            let len = BigUint::from(cycle.len());
            let shift = (e % len).to_usize().expect("shift < cycle length");
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + shift) % cycle.len()];
            }
        }
        Permutation { images }
    }

    /// `+1` for even permutations, `−1` for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Disjoint cycles including fixed points, each starting at its minimum
    /// point, ordered by that minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut y = self.images[start];
            while y != start {
                seen[y] = true;
                cycle.push(y);
                y = self.images[y];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType {
            cycles: self.cycles().iter().map(|c| (c[0], c.len())).collect(),
        }
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn element_order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x != y)
            .map(|(x, _)| x)
            .collect()
    }

    /// Restriction to an invariant point set, re-indexed by position in
    /// `points` (which must be strictly increasing).
    pub fn restrict(&self, points: &[usize]) -> Result<Self, PermError> {
        let n = self.degree();
        if points.windows(2).any(|w| w[0] >= w[1]) || points.iter().any(|&p| p >= n) {
            return Err(PermError::BadPointSet(n));
        }
        let mut pos = BTreeMap::new();
        for (i, &p) in points.iter().enumerate() {
            pos.insert(p, i);
        }
        let mut images = Vec::with_capacity(points.len());
        for &p in points {
            match pos.get(&self.images[p]) {
                Some(&q) => images.push(q),
                None => return Err(PermError::NotInvariant),
            }
        }
        Ok(Permutation { images })
    }

    /// Sign of the restriction to an invariant point set.
    pub fn sign_on(&self, points: &[usize]) -> Result<i8, PermError> {
        Ok(self.restrict(points)?.sign())
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moved: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if moved.is_empty() {
            return write!(f, "()");
        }
        for cycle in moved {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// Canonical cycle structure: one `(representative, length)` entry per cycle,
/// the representative being the cycle's minimum point. Fixed points appear as
/// 1-cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleType {
    cycles: Vec<(usize, usize)>,
}

impl CycleType {
    pub fn cycles(&self) -> &[(usize, usize)] {
        &self.cycles
    }

    /// Cycle-length multiset as `length → multiplicity`.
    pub fn length_multiset(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &(_, len) in &self.cycles {
            *out.entry(len).or_insert(0) += 1;
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.cycles.iter().map(|&(_, len)| len).sum()
    }
}
