//! Truncated power series: the ring `Q[h]/(h^m)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// An element of `Q[h]/(h^m)`. The coefficient vector always has length `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroOrder);
        }
        Ok(Self { coeffs })
    }

    /// Integer coefficients, padded with zeros or truncated to `order`.
    pub fn from_ints(order: usize, coeffs: &[i64]) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut c: Vec<Rational> = coeffs.iter().take(order).map(|&x| rational::int(x)).collect();
        c.resize(order, Rational::zero());
        Ok(Self { coeffs: c })
    }

    pub fn zero(order: usize) -> Result<Self> {
        Self::from_ints(order, &[])
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::from_ints(order, &[1])
    }

    /// `a + b h` truncated to `order`.
    pub fn linear(order: usize, a: Rational, b: Rational) -> Result<Self> {
        let mut s = Self::zero(order)?;
        s.coeffs[0] = a;
        if order > 1 {
            s.coeffs[1] = b;
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `h^i`; zero beyond the truncation.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitutes `h ↦ c·h`, i.e. pulls back along a map multiplying the
    /// hyperplane class by `c`.
    pub fn rescale_variable(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(self.order());
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power *= c;
        }
        Self { coeffs }
    }

    /// Integer coefficients, if every coefficient is integral.
    fn integer_coeffs(&self) -> Option<Vec<&BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer()))
            .collect()
    }

    fn from_integers(coeffs: Vec<BigInt>) -> Self {
        Self {
            coeffs: coeffs.into_iter().map(Rational::from_integer).collect(),
        }
    }

    /// Cauchy product, dropping every power `h^k` with `k >= m`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let m = self.order();
        if let (Some(a), Some(b)) = (self.integer_coeffs(), other.integer_coeffs()) {
            let mut coeffs = vec![BigInt::zero(); m];
            for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, y) in b[..m - i].iter().enumerate() {
                    coeffs[i + j] += *x * *y;
                }
            }
            return Ok(Self::from_integers(coeffs));
        }
        let mut coeffs = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..m - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self { coeffs })
    }

    /// Multiplicative inverse by the usual recurrence
    /// `b_k = -(a_1 b_{k-1} + ... + a_k b_0) / a_0`.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let m = self.order();
        let support: Vec<usize> = (1..m).filter(|&i| !self.coeffs[i].is_zero()).collect();

        // integer series with constant term ±1 stay integral
        if let Some(a) = self.integer_coeffs().filter(|a| a[0].abs().is_one()) {
            let unit = a[0].clone();
            let mut out = vec![unit.clone()];
            for k in 1..m {
                let acc: BigInt = support
                    .iter()
                    .take_while(|&&i| i <= k)
                    .map(|&i| a[i] * &out[k - i])
                    .sum();
                out.push(-acc * &unit);
            }
            return Ok(Self::from_integers(out));
        }

        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(m);
        out.push(inv0.clone());
        for k in 1..m {
            let mut acc = Rational::zero();
            for &i in support.iter().take_while(|&&i| i <= k) {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Integer power; negative exponents need a unit.
    ///
    /// For a unit `a` this uses the power recurrence
    /// `a_0 b_j = (1/j) Σ_{i=1}^{j} ((k+1)i - j) a_i b_{j-i}`, which costs
    /// `O(m · nnz(a))`. Non-units fall back to repeated squaring.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if !self.is_unit() {
            if k < 0 {
                return Err(Error::NonUnit);
            }
            return self.pow_by_squaring(k as u64);
        }
        let m = self.order();
        let a0 = &self.coeffs[0];
        let support: Vec<usize> = (1..m).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let mut b0 = Rational::one();
        let base = if k < 0 { a0.recip() } else { a0.clone() };
        for _ in 0..k.unsigned_abs() {
            b0 *= &base;
        }
        let inv0 = a0.recip();
        let kp1 = Rational::from_integer(BigInt::from(k) + 1);
        let mut out = vec![b0];
        for j in 1..m {
            let jr = Rational::from_integer(BigInt::from(j));
            let mut acc = Rational::zero();
            for &i in support.iter().take_while(|&&i| i <= j) {
                let weight = &kp1 * Rational::from_integer(BigInt::from(i)) - &jr;
                acc += weight * &self.coeffs[i] * &out[j - i];
            }
            out.push(acc * &inv0 / jr);
        }
        Ok(Self { coeffs: out })
    }

    fn pow_by_squaring(&self, mut e: u64) -> Result<Self> {
        let mut acc = Self::one(self.order())?;
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Projects to `Q[h]/(h^order)`. Only lowering the order is a ring map, so
    /// raising it is an error.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if order > self.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: order,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..order].to_vec(),
        })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{i}"),
            };
            if power.is_empty() {
                write!(f, "{}", rational::format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{}·{power}", rational::format_rational(&mag))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " mod h^{}", self.order())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl From<TruncatedSeries> for SeriesRepr {
    fn from(s: TruncatedSeries) -> Self {
        SeriesRepr {
            order: s.order(),
            coeffs: s.coeffs.iter().map(rational::format_rational).collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for TruncatedSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        if r.coeffs.len() != r.order {
            return Err(Error::CoefficientCount {
                len: r.coeffs.len(),
                order: r.order,
            });
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| rational::parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        TruncatedSeries::new(coeffs)
    }
}
