//! Polynomials in a degree variable `t` and a weight variable `u`.
//!
//! These carry Poincaré–Serre data: the coefficient of `t^k u^w` is the
//! dimension of the weight-`w` graded piece of `H^k`. A Tate twist `Q(-m)`
//! sitting in degree `k` is the monomial `t^k u^{2m}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::rational::{self, Rational};

/// Exponent pair, ordered lexicographically with `t` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Exponent {
    pub t: u32,
    pub u: u32,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { t: 0, u: 0 };

    pub fn new(t: u32, u: u32) -> Self {
        Self { t, u }
    }

    fn checked_sub(self, other: Exponent) -> Option<Exponent> {
        Some(Exponent {
            t: self.t.checked_sub(other.t)?,
            u: self.u.checked_sub(other.u)?,
        })
    }
}

impl Add for Exponent {
    type Output = Exponent;

    fn add(self, o: Exponent) -> Exponent {
        Exponent {
            t: self.t + o.t,
            u: self.u + o.u,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    /// The least remaining term of the running remainder could not be
    /// eliminated by any admissible quotient term.
    #[error("inexact division: obstruction at {} (coefficient {})", monomial_str(*.term), rational::format_rational(.coefficient))]
    Inexact { term: Exponent, coefficient: Rational },
}

/// Finite sum of `c · t^a u^b` with no zero coefficients stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct BigradedPolynomial {
    terms: BTreeMap<Exponent, Rational>,
}

impl BigradedPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn monomial(t: u32, u: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Exponent::new(t, u), c);
        p
    }

    /// Sums like terms; zero results are dropped.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (t, u, c) in terms {
            p.add_term(Exponent::new(t, u), c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(t, u, c)| (t, u, rational::int(c))))
    }

    /// `1 + t^a u^b`, the Poincaré–Serre polynomial of an exterior generator.
    pub fn one_plus(t: u32, u: u32) -> Self {
        Self::from_int_terms(&[(0, 0, 1), (t, u, 1)])
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(t, u)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, t: u32, u: u32) -> Rational {
        self.terms
            .get(&Exponent::new(t, u))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn least_term(&self) -> Option<(Exponent, &Rational)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn greatest_term(&self) -> Option<(Exponent, &Rational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn max_t(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.t).max()
    }

    pub fn max_u(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.u).max()
    }

    pub fn scale_monomial(&self, e: Exponent, c: &Rational) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for (f, a) in &self.terms {
            out.terms.insert(*f + e, a * c);
        }
        out
    }

    /// Forgets weights: substitutes `u = 1`.
    pub fn specialize_weight(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e.t, 0, c.clone())))
    }

    /// Coefficients of `t^0, t^1, ...` after forgetting weights. These are the
    /// Betti numbers when the polynomial holds Poincaré–Serre data.
    pub fn degree_coefficients(&self) -> Vec<Rational> {
        let Some(top) = self.max_t() else {
            return Vec::new();
        };
        let mut out = vec![Rational::zero(); top as usize + 1];
        for (e, c) in self.terms() {
            out[e.t as usize] += c;
        }
        out
    }

    /// Value at `t = u = 1`.
    pub fn total(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Checks every coefficient is a nonnegative integer, as Poincaré–Serre
    /// data must be. Returns the first offending term otherwise.
    pub fn validate_poincare_serre(&self) -> Result<(), (Exponent, Rational)> {
        for (e, c) in self.terms() {
            if !c.is_integer() || c.is_negative() {
                return Err((e, c.clone()));
            }
        }
        Ok(())
    }

    /// Betti numbers as integers; `None` unless the data validates.
    pub fn betti_numbers(&self) -> Option<Vec<BigInt>> {
        self.validate_poincare_serre().ok()?;
        Some(self.degree_coefficients().into_iter().map(|c| c.to_integer()).collect())
    }

    /// Exact quotient `q` with `q · divisor = self`.
    ///
    /// Repeatedly eliminates the lex-least term of the running remainder
    /// against the lex-least term of the divisor. A candidate quotient term is
    /// rejected when its exponents are negative, exceed the per-variable degree
    /// bound `deg(self) - deg(divisor)`, lie lex-above the forced leading term
    /// `lead(self)/lead(divisor)`, or sit at that leading exponent with the
    /// wrong coefficient. Rejection reports the remainder term being
    /// eliminated.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self, DivisionError> {
        let Some((d_low_e, d_low_c)) = divisor.least_term() else {
            return Err(DivisionError::ZeroDivisor);
        };
        let Some((top_e, top_c)) = self.greatest_term() else {
            return Ok(Self::zero());
        };
        let (d_top_e, d_top_c) = divisor.greatest_term().expect("nonzero divisor");
        let lead = top_e.checked_sub(d_top_e).map(|e| (e, top_c / d_top_c));
        let bound_t = self.max_t().unwrap().checked_sub(divisor.max_t().unwrap());
        let bound_u = self.max_u().unwrap().checked_sub(divisor.max_u().unwrap());

        let mut quotient = Self::zero();
        let mut rem = self.clone();
        while let Some((e, c)) = rem.least_term() {
            let fail = || DivisionError::Inexact {
                term: e,
                coefficient: c.clone(),
            };
            let (Some((lead_e, lead_c)), Some(bt), Some(bu)) = (&lead, bound_t, bound_u) else {
                return Err(fail());
            };
            let cand_e = e.checked_sub(d_low_e).ok_or_else(fail)?;
            if cand_e.t > bt || cand_e.u > bu || cand_e > *lead_e {
                return Err(fail());
            }
            let cand_c = c / d_low_c;
            if cand_e == *lead_e && cand_c != *lead_c {
                return Err(fail());
            }
            let step = divisor.scale_monomial(cand_e, &cand_c);
            quotient.add_term(cand_e, cand_c);
            rem = &rem - &step;
        }
        Ok(quotient)
    }
}

impl Add for &BigradedPolynomial {
    type Output = BigradedPolynomial;

    fn add(self, o: &BigradedPolynomial) -> BigradedPolynomial {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &BigradedPolynomial {
    type Output = BigradedPolynomial;

    fn sub(self, o: &BigradedPolynomial) -> BigradedPolynomial {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &BigradedPolynomial {
    type Output = BigradedPolynomial;

    fn neg(self) -> BigradedPolynomial {
        BigradedPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &BigradedPolynomial {
    type Output = BigradedPolynomial;

    fn mul(self, o: &BigradedPolynomial) -> BigradedPolynomial {
        let mut out = BigradedPolynomial::zero();
        for (e, a) in self.terms() {
            for (f, b) in o.terms() {
                out.add_term(e + f, a * b);
            }
        }
        out
    }
}

impl Mul for BigradedPolynomial {
    type Output = BigradedPolynomial;

    fn mul(self, o: BigradedPolynomial) -> BigradedPolynomial {
        &self * &o
    }
}

impl std::iter::Product for BigradedPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

fn monomial_str(e: Exponent) -> String {
    let var = |name: &str, k: u32| match k {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{k}")),
    };
    let parts: Vec<String> = [var("t", e.t), var("u", e.u)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("·")
    }
}

/// Ascending `(t, u)` order, `·` between factors, unit coefficients elided:
/// `1 + t·u^2 + t^3·u^4 + t^4·u^6`.
impl fmt::Display for BigradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if e == Exponent::ZERO {
                write!(f, "{}", rational::format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", monomial_str(e))?;
            } else {
                write!(f, "{}·{}", rational::format_rational(&mag), monomial_str(e))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    t: u32,
    u: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl From<BigradedPolynomial> for PolyRepr {
    fn from(p: BigradedPolynomial) -> Self {
        PolyRepr {
            terms: p
                .terms()
                .map(|(e, c)| TermRepr {
                    t: e.t,
                    u: e.u,
                    c: rational::format_rational(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyRepr> for BigradedPolynomial {
    type Error = Error;

    fn try_from(r: PolyRepr) -> Result<Self, Error> {
        let mut p = Self::zero();
        for term in r.terms {
            let e = Exponent::new(term.t, term.u);
            let c = rational::parse_rational(&term.c)?;
            if p.terms.contains_key(&e) {
                return Err(Error::DuplicateTerm(e));
            }
            if !c.is_zero() {
                p.terms.insert(e, c);
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn p(terms: &[(u32, u32, i64)]) -> BigradedPolynomial {
        BigradedPolynomial::from_int_terms(terms)
    }

    #[test]
    fn products() {
        let a = BigradedPolynomial::one_plus(1, 2);
        assert_eq!(&a * &BigradedPolynomial::one(), a);
        let gl2 = &a * &BigradedPolynomial::one_plus(3, 4);
        assert_eq!(gl2, p(&[(0, 0, 1), (1, 2, 1), (3, 4, 1), (4, 6, 1)]));
        let x = p(&[(0, 0, 1), (1, 0, 1)]);
        assert_eq!(&x * &x, p(&[(0, 0, 1), (1, 0, 2), (2, 0, 1)]));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let x = p(&[(0, 0, 1), (1, 0, 1)]);
        let y = p(&[(0, 0, 1), (1, 0, -1)]);
        let prod = &x * &y;
        assert_eq!(prod, p(&[(0, 0, 1), (2, 0, -1)]));
        assert_eq!(prod.len(), 2);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn self_division() {
        let ps = BigradedPolynomial::one_plus(1, 2)
            * BigradedPolynomial::one_plus(3, 4)
            * BigradedPolynomial::one_plus(5, 6);
        assert_eq!(ps.exact_divide(&ps).unwrap(), BigradedPolynomial::one());
    }

    #[test]
    fn division_recovers_tate_twist() {
        let ps = BigradedPolynomial::one_plus(1, 2)
            * BigradedPolynomial::one_plus(3, 4)
            * BigradedPolynomial::one_plus(5, 6);
        let twist = BigradedPolynomial::one_plus(6, 12);
        let total = &ps * &twist;
        assert_eq!(total.exact_divide(&ps).unwrap(), twist);
    }

    #[test]
    fn inexact_division_reports_first_obstruction() {
        let total = p(&[(0, 0, 1), (2, 0, 1)]);
        let divisor = p(&[(0, 0, 1), (1, 0, 1)]);
        let err = total.exact_divide(&divisor).unwrap_err();
        assert_eq!(
            err,
            DivisionError::Inexact {
                term: Exponent::new(1, 0),
                coefficient: int(-1)
            }
        );
    }

    #[test]
    fn division_edge_cases() {
        let d = p(&[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(d.exact_divide(&BigradedPolynomial::zero()), Err(DivisionError::ZeroDivisor));
        assert_eq!(BigradedPolynomial::zero().exact_divide(&d).unwrap(), BigradedPolynomial::zero());
        // divisor of higher degree than the total
        assert!(p(&[(0, 0, 1)]).exact_divide(&d).is_err());
        // weight mismatch: u-degree too small
        assert!(p(&[(0, 0, 1), (1, 0, 1)]).exact_divide(&d).is_err());
        // rational quotient
        let half = BigradedPolynomial::monomial(2, 1, ratio(1, 2));
        let q = (&half * &d).exact_divide(&d).unwrap();
        assert_eq!(q, half);
    }

    #[test]
    fn display_order_and_signs() {
        let gl2 = p(&[(0, 0, 1), (1, 2, 1), (3, 4, 1), (4, 6, 1)]);
        assert_eq!(gl2.to_string(), "1 + t·u^2 + t^3·u^4 + t^4·u^6");
        let q = BigradedPolynomial::from_terms([(0, 3, ratio(-1, 2)), (2, 0, int(3)), (1, 1, int(-1))]);
        assert_eq!(q.to_string(), "-1/2·u^3 - t·u + 3·t^2");
        assert_eq!(BigradedPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn validator() {
        assert!(p(&[(0, 0, 1), (3, 4, 2)]).validate_poincare_serre().is_ok());
        assert_eq!(
            p(&[(0, 0, 1), (1, 0, -1)]).validate_poincare_serre(),
            Err((Exponent::new(1, 0), int(-1)))
        );
        let frac = BigradedPolynomial::monomial(1, 0, ratio(1, 2));
        assert!(frac.validate_poincare_serre().is_err());
        assert_eq!(frac.betti_numbers(), None);
    }

    #[test]
    fn json_shape() {
        let q = BigradedPolynomial::from_terms([(0, 0, int(1)), (6, 12, ratio(-2, 3))]);
        let j = serde_json::to_string(&q).unwrap();
        assert_eq!(j, r#"{"terms":[{"t":0,"u":0,"c":"1"},{"t":6,"u":12,"c":"-2/3"}]}"#);
        assert_eq!(serde_json::from_str::<BigradedPolynomial>(&j).unwrap(), q);
        let dup = r#"{"terms":[{"t":1,"u":0,"c":"1"},{"t":1,"u":0,"c":"2"}]}"#;
        assert!(serde_json::from_str::<BigradedPolynomial>(dup).is_err());
        let dec = r#"{"terms":[{"t":1,"u":0,"c":"1.5"}]}"#;
        assert!(serde_json::from_str::<BigradedPolynomial>(dec).is_err());
    }

    pub(crate) fn poly(max_terms: usize) -> impl Strategy<Value = BigradedPolynomial> {
        prop::collection::vec((0u32..6, 0u32..6, -9i64..10, 1i64..5), 0..=max_terms).prop_map(|ts| {
            BigradedPolynomial::from_terms(ts.into_iter().map(|(t, u, a, b)| (t, u, ratio(a, b))))
        })
    }

    proptest! {
        #[test]
        fn division_round_trip(q in poly(8), d in poly(8).prop_filter("nonzero", |d| !d.is_zero())) {
            let total = &q * &d;
            prop_assert_eq!(total.exact_divide(&d).unwrap(), q);
        }

        #[test]
        fn product_commutes(a in poly(6), b in poly(6)) {
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn json_round_trip(a in poly(8)) {
            let j = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<BigradedPolynomial>(&j).unwrap(), a);
        }
    }
}
