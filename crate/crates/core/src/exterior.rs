//! Exterior algebras on odd-degree generators.
//!
//! Monomials are subsets of generator indices, always written in increasing
//! index order. Since every generator has odd degree, the Koszul sign of a
//! product is exactly the parity of the permutation that sorts the
//! concatenated index sequence, and `z ∧ z = 0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub const MAX_GENERATORS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExteriorAlgebra {
    degrees: Vec<u32>,
}

impl ExteriorAlgebra {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                got: degrees.len(),
                max: MAX_GENERATORS,
            });
        }
        if let Some(&bad) = degrees.iter().find(|&&d| d % 2 == 0) {
            return Err(Error::EvenGeneratorDegree(bad));
        }
        Ok(Self { degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_of(&self, m: Monomial) -> u32 {
        m.indices().map(|i| self.degrees[i]).sum()
    }

    /// The unit `1`.
    pub fn one(&self) -> ExteriorElement {
        ExteriorElement::monomial(self, Monomial::EMPTY, Rational::one())
    }

    pub fn zero(&self) -> ExteriorElement {
        ExteriorElement {
            algebra: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Generator `z_{index+1}` (indices are zero-based).
    pub fn generator(&self, index: usize) -> Result<ExteriorElement> {
        if index >= self.rank() {
            return Err(Error::GeneratorOutOfRange {
                index,
                count: self.rank(),
            });
        }
        Ok(ExteriorElement::monomial(self, Monomial::single(index), Rational::one()))
    }

    /// All `2^n` basis monomials with their degrees, sorted by degree and then
    /// by index sequence.
    pub fn basis(&self) -> Vec<(Monomial, u32)> {
        let n = self.rank();
        let count: u128 = 1u128 << n;
        let mut out: Vec<(Monomial, u32)> = (0..count)
            .map(|mask| {
                let m = Monomial(mask as u64);
                (m, self.degree_of(m))
            })
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        out
    }
}

/// A set of generator indices, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const EMPTY: Monomial = Monomial(0);

    pub fn single(index: usize) -> Self {
        Monomial(1u64 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Monomial(indices.into_iter().fold(0u64, |m, i| m | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Zero-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// `self ∧ other` as `(sign, monomial)`, or `None` when they share an index.
    pub fn wedge(self, other: Monomial) -> Option<(i8, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // inversions: pairs (i in self, j in other) with i > j
        let inversions: u32 = other
            .indices()
            .map(|j| if j >= 63 { 0 } else { (self.0 >> (j + 1)).count_ones() })
            .sum();
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Monomial(self.0 | other.0)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<String> = self.indices().map(|i| format!("z{}", i + 1)).collect();
        write!(f, "{}", names.join("∧"))
    }
}

/// A rational linear combination of monomials in a fixed [`ExteriorAlgebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    algebra: ExteriorAlgebra,
    terms: BTreeMap<Monomial, Rational>,
}

impl ExteriorElement {
    pub fn monomial(algebra: &ExteriorAlgebra, m: Monomial, c: Rational) -> Self {
        let mut e = algebra.zero();
        e.add_term(m, c);
        e
    }

    pub fn algebra(&self) -> &ExteriorAlgebra {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| self.algebra.degree_of(*m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.bits() >> self.algebra.rank() == 0 || self.algebra.rank() == 64);
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_algebra(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.algebra.zero();
        for (m, a) in self.terms() {
            out.add_term(m, a * c);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_algebra(other)?;
        let mut out = self.algebra.zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if let Some((sign, m)) = a.wedge(b) {
                    let c = x * y;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Rescales every monomial by `sign(m)`, extended linearly.
    pub fn map_signs<F: Fn(Monomial) -> i8>(&self, sign: F) -> Self {
        let mut out = self.algebra.zero();
        for (m, c) in self.terms() {
            out.add_term(m, if sign(m) < 0 { -c.clone() } else { c.clone() });
        }
        out
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms().collect();
        ordered.sort_by_key(|(m, _)| (self.algebra.degree_of(*m), *m));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let mag = c.abs();
            match (i == 0, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if m.is_empty() {
                write!(f, "{}", rational::format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}·{m}", rational::format_rational(&mag))?;
            }
        }
        Ok(())
    }
}
