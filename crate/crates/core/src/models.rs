//! Rational cohomology of `GL_n(C)`, of `P^n`, and of the sphere `Q_n`.
//!
//! `H*(GL_n; Q)` is the exterior algebra on generators `η_1, ..., η_n` with
//! `η_ℓ` in degree `2ℓ - 1` and of pure Hodge type `(ℓ, ℓ)`, hence weight
//! `2ℓ`. Generators are identified with abstract exterior generators; the
//! normalisation constant is fixed to one.

use crate::bigraded::BigradedPolynomial;
use crate::error::{Error, Result};
use crate::exterior::{ExteriorAlgebra, ExteriorElement, Monomial};
use crate::rational::Rational;
use crate::series::TruncatedSeries;

use num_traits::One;

/// `H*(GL_n(C); Q)` together with Hodge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlCohomology {
    n: u32,
    algebra: ExteriorAlgebra,
}

impl GlCohomology {
    pub fn new(n: u32) -> Result<Self> {
        let algebra = ExteriorAlgebra::new((1..=n).map(|l| 2 * l - 1).collect())?;
        Ok(Self { n, algebra })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn algebra(&self) -> &ExteriorAlgebra {
        &self.algebra
    }

    /// Weight `2ℓ` of `η_ℓ`, for `ℓ = 1..=n`.
    pub fn weights(&self) -> Vec<u32> {
        (1..=self.n).map(|l| 2 * l).collect()
    }

    /// The generator `η_ℓ`, `1 <= ℓ <= n`.
    pub fn eta(&self, ell: u32) -> Result<ExteriorElement> {
        if ell == 0 {
            return Err(Error::GeneratorOutOfRange {
                index: 0,
                count: self.n as usize,
            });
        }
        self.algebra.generator(ell as usize - 1)
    }

    /// `η_{ℓ_1} ∧ ... ∧ η_{ℓ_k}` in the given order.
    pub fn eta_product(&self, ells: &[u32]) -> Result<ExteriorElement> {
        ells.iter()
            .try_fold(self.algebra.one(), |acc, &l| acc.wedge(&self.eta(l)?))
    }

    pub fn dimension(&self) -> u128 {
        1u128 << self.n
    }

    pub fn top_degree(&self) -> u32 {
        self.n * self.n
    }

    /// Weight of a basis monomial: the sum of `2ℓ` over its generators.
    pub fn weight_of(&self, m: Monomial) -> u32 {
        m.indices().map(|i| 2 * (i as u32 + 1)).sum()
    }

    /// Poincaré–Serre polynomial read off the monomial basis, independent of
    /// the closed-form product in [`gl_poincare_serre`].
    pub fn basis_poincare_serre(&self) -> BigradedPolynomial {
        BigradedPolynomial::from_terms(
            self.algebra
                .basis()
                .into_iter()
                .map(|(m, deg)| (deg, self.weight_of(m), Rational::one())),
        )
    }

    /// Identifies the algebra of `x` as `H*(GL_n)` for some `n`.
    pub fn of_element(x: &ExteriorElement) -> Result<Self> {
        let degrees = x.algebra().degrees();
        let is_gl = degrees
            .iter()
            .enumerate()
            .all(|(i, &d)| d == 2 * i as u32 + 1);
        if !is_gl {
            return Err(Error::NotGeneralLinear);
        }
        Self::new(degrees.len() as u32)
    }
}

/// `∏_{ℓ=1}^{n} (1 + t^{2ℓ-1})`; the empty product `1` for `n = 0`.
pub fn gl_poincare(n: u32) -> BigradedPolynomial {
    (1..=n)
        .map(|l| BigradedPolynomial::one_plus(2 * l - 1, 0))
        .product()
}

/// `∏_{ℓ=1}^{n} (1 + t^{2ℓ-1} u^{2ℓ})`.
pub fn gl_poincare_serre(n: u32) -> BigradedPolynomial {
    (1..=n)
        .map(|l| BigradedPolynomial::one_plus(2 * l - 1, 2 * l))
        .product()
}

/// `H*(P^n; Q) = Q[h]/(h^{n+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectiveSpace {
    pub n: u32,
}

impl ProjectiveSpace {
    pub fn order(&self) -> usize {
        self.n as usize + 1
    }

    /// The hyperplane class `h`.
    pub fn hyperplane(&self) -> TruncatedSeries {
        let order = self.order();
        TruncatedSeries::linear(order, Rational::from_integer(0.into()), Rational::one())
            .expect("positive order")
    }

    /// `1 + t^2 u^2 + ... + t^{2n} u^{2n}`: each `h^i` is of type `(i, i)`.
    pub fn poincare_serre(&self) -> BigradedPolynomial {
        BigradedPolynomial::from_terms((0..=self.n).map(|i| (2 * i, 2 * i, Rational::one())))
    }
}

/// The sphere-like variety `Q_n`, homotopy equivalent to `S^{2n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereModel {
    pub n: u32,
}

impl SphereModel {
    /// `1 + t^{2n-1} u^{2n}`. The weight is forced by the fibration
    /// `Q_n`-bundle over `GL_{n-1}` with pure-type generators.
    pub fn poincare_serre(&self) -> BigradedPolynomial {
        BigradedPolynomial::one_plus(2 * self.n - 1, 2 * self.n)
    }
}

/// Checks `PS(Q_n) · PS(GL_{n-1}) = PS(GL_n)`.
pub fn sphere_fibration_check(n: u32) -> bool {
    n >= 1 && sphere_fibration_check_with(&SphereModel { n }.poincare_serre(), n)
}

/// As [`sphere_fibration_check`] with an arbitrary sphere polynomial.
pub fn sphere_fibration_check_with(sphere: &BigradedPolynomial, n: u32) -> bool {
    n >= 1 && sphere * &gl_poincare_serre(n - 1) == gl_poincare_serre(n)
}

/// Transposition `g ↦ gᵗ`: `η_ℓ ↦ (-1)^{ℓ-1} η_ℓ`, extended multiplicatively.
pub fn transposition_involution(x: &ExteriorElement) -> Result<ExteriorElement> {
    GlCohomology::of_element(x)?;
    // generator with zero-based index i is η_{i+1}, sign (-1)^i
    Ok(x.map_signs(|m| {
        let odd = m.indices().filter(|i| i % 2 == 1).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }))
}

/// Inversion `g ↦ g^{-1}`: multiplication by `(-1)^k` on `H^k`.
pub fn inversion_involution(x: &ExteriorElement) -> Result<ExteriorElement> {
    GlCohomology::of_element(x)?;
    let alg = x.algebra().clone();
    Ok(x.map_signs(|m| if alg.degree_of(m).is_multiple_of(2) { 1 } else { -1 }))
}

/// Restriction along `GL_{n-1} ⊂ GL_n`: `η_ℓ ↦ η_ℓ` for `ℓ < n` and
/// `η_n ↦ 0`.
pub fn restrict_to_smaller(x: &ExteriorElement) -> Result<ExteriorElement> {
    let gl = GlCohomology::of_element(x)?;
    if gl.n == 0 {
        return Err(Error::NotGeneralLinear);
    }
    let smaller = GlCohomology::new(gl.n - 1)?;
    let top = gl.n as usize - 1;
    let mut out = smaller.algebra().zero();
    for (m, c) in x.terms() {
        if m.indices().any(|i| i == top) {
            continue;
        }
        out = out.checked_add(&ExteriorElement::monomial(smaller.algebra(), m, c.clone()))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ExteriorAlgebra;
    use crate::rational::int;

    fn p(terms: &[(u32, u32, i64)]) -> BigradedPolynomial {
        BigradedPolynomial::from_int_terms(terms)
    }

    #[test]
    fn gl_poincare_small() {
        assert_eq!(gl_poincare(0), BigradedPolynomial::one());
        assert_eq!(gl_poincare(1), p(&[(0, 0, 1), (1, 0, 1)]));
        assert_eq!(gl_poincare(2), p(&[(0, 0, 1), (1, 0, 1), (3, 0, 1), (4, 0, 1)]));
        let g3 = gl_poincare(3);
        assert_eq!(g3.len(), 8);
        assert!(g3.terms().all(|(_, c)| *c == int(1)));
        assert_eq!(g3.max_t(), Some(9));
    }

    #[test]
    fn gl_poincare_serre_small() {
        assert_eq!(gl_poincare_serre(1), p(&[(0, 0, 1), (1, 2, 1)]));
        assert_eq!(
            gl_poincare_serre(2),
            p(&[(0, 0, 1), (1, 2, 1), (3, 4, 1), (4, 6, 1)])
        );
        for n in 1..=6 {
            assert_eq!(gl_poincare_serre(n).specialize_weight(), gl_poincare(n));
        }
    }

    #[test]
    fn basis_agrees_with_product() {
        for n in 0..=7 {
            let gl = GlCohomology::new(n).unwrap();
            assert_eq!(gl.basis_poincare_serre(), gl_poincare_serre(n));
        }
    }

    #[test]
    fn fibration() {
        assert!(sphere_fibration_check(2));
        assert!(sphere_fibration_check(5));
        assert!(!sphere_fibration_check_with(&BigradedPolynomial::one_plus(2, 2), 2));
        assert!(!sphere_fibration_check(0));
    }

    #[test]
    fn transposition_signs() {
        let gl = GlCohomology::new(3).unwrap();
        let e1 = gl.eta(1).unwrap();
        let e2 = gl.eta(2).unwrap();
        assert_eq!(transposition_involution(&e1).unwrap(), e1);
        assert_eq!(transposition_involution(&e2).unwrap(), e2.scale(&int(-1)));
        let top = gl.eta_product(&[1, 2, 3]).unwrap();
        assert_eq!(transposition_involution(&top).unwrap(), top.scale(&int(-1)));
    }

    #[test]
    fn inversion_signs() {
        let gl = GlCohomology::new(2).unwrap();
        let e1 = gl.eta(1).unwrap();
        assert_eq!(inversion_involution(&e1).unwrap(), e1.scale(&int(-1)));
        let e12 = gl.eta_product(&[1, 2]).unwrap();
        assert_eq!(inversion_involution(&e12).unwrap(), e12);
        assert_eq!(inversion_involution(&gl.algebra().one()).unwrap(), gl.algebra().one());
    }

    #[test]
    fn involutions_reject_foreign_algebras() {
        let alg = ExteriorAlgebra::new(vec![3, 1]).unwrap();
        let x = alg.generator(0).unwrap();
        assert_eq!(transposition_involution(&x).unwrap_err(), Error::NotGeneralLinear);
        assert_eq!(inversion_involution(&x).unwrap_err(), Error::NotGeneralLinear);
    }

    #[test]
    fn restriction_kills_top_generator() {
        let gl = GlCohomology::new(3).unwrap();
        let small = GlCohomology::new(2).unwrap();
        assert_eq!(restrict_to_smaller(&gl.eta(2).unwrap()).unwrap(), small.eta(2).unwrap());
        assert!(restrict_to_smaller(&gl.eta(3).unwrap()).unwrap().is_zero());
        let x = gl.eta_product(&[2, 1]).unwrap();
        assert_eq!(restrict_to_smaller(&x).unwrap(), small.eta_product(&[2, 1]).unwrap());
    }

    #[test]
    fn projective_space() {
        let p2 = ProjectiveSpace { n: 2 };
        let h = p2.hyperplane();
        assert_eq!(h.order(), 3);
        assert!(h.pow(3).unwrap().coeffs().iter().all(|c| *c == int(0)));
        assert_eq!(p2.poincare_serre(), p(&[(0, 0, 1), (2, 2, 1), (4, 4, 1)]));
    }
}
