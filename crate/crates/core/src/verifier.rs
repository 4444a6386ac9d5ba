//! Numerical ledger for smooth degree-`d` hypersurfaces in `P^n`.
//!
//! The varieties involved (the discriminant, its strata `Σ^{(ℓ)}`, the two
//! components `T_1`, `T_2` of the preimage of the stratum of polynomials
//! singular at `e_0`) are never built; only their degrees, multiplicities and
//! class coefficients are. Every quantity with two derivations is computed
//! both ways and a disagreement is an [`Error::CrossCheck`].

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{pow, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rational::{self, Rational};
use crate::series::TruncatedSeries;

/// Degree-`d` hypersurfaces in `P^n`, i.e. forms in `n + 1` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuliInstance {
    pub n: u32,
    pub d: u32,
}

impl ModuliInstance {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n < 1 || d < 2 {
            return Err(Error::InvalidInstance { n, d });
        }
        Ok(Self { n, d })
    }

    /// `d >= 3`, the range in which the Leray sequence of the quotient map
    /// degenerates.
    pub fn satisfies_hypothesis(&self) -> bool {
        self.d >= 3
    }

    /// `GL_{n+1}` acts transitively on smooth forms when `d <= 2` or
    /// `(n, d) = (1, 3)`; there is no moduli space to speak of then.
    pub fn acts_transitively(&self) -> bool {
        self.d <= 2 || (self.d == 3 && self.n == 1)
    }

    fn n_big(&self) -> BigInt {
        BigInt::from(self.n)
    }

    fn d_big(&self) -> BigInt {
        BigInt::from(self.d)
    }

    fn sign_n(&self) -> BigInt {
        if self.n.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    }

    /// `(1 - d)^k`
    fn one_minus_d_pow(&self, k: u32) -> BigInt {
        pow(BigInt::one() - self.d_big(), k as usize)
    }

    /// `(d - 1)^k`
    fn d_minus_one_pow(&self, k: u32) -> BigInt {
        pow(self.d_big() - 1, k as usize)
    }
}

/// Degree of the discriminant: `(n + 1)(d - 1)^n`.
pub fn discriminant_degree(inst: &ModuliInstance) -> BigInt {
    (inst.n_big() + 1) * inst.d_minus_one_pow(inst.n)
}

/// Milnor number `∏ (a_i - 1)` of the Brieskorn–Pham singularity
/// `x_1^{a_1} + ... + x_k^{a_k}`.
pub fn milnor_brieskorn(exponents: &[u32]) -> Result<BigInt> {
    exponents.iter().try_fold(BigInt::one(), |acc, &a| {
        if a < 2 {
            return Err(Error::MilnorExponent(a));
        }
        Ok(acc * (a - 1))
    })
}

/// Intersection multiplicity `d - 1` of `Σ_{n,d}` with the slice
/// `x_0^d + h(x_1, ..., x_n)`.
pub fn iota_multiplier(inst: &ModuliInstance) -> BigInt {
    inst.d_big() - 1
}

/// `c(γ*E / F) = (1 + (d-1)h)^{-1} (1 - h)^{-1}` on `X = V(f)`, as an element
/// of `Q[h]/(h^n)`.
pub fn gauss_chern_total(inst: &ModuliInstance) -> TruncatedSeries {
    let order = inst.n as usize;
    let d1 = Rational::from_integer(inst.d_big() - 1);
    let a = TruncatedSeries::linear(order, Rational::one(), d1).expect("n >= 1");
    let b = TruncatedSeries::linear(order, Rational::one(), -Rational::one()).expect("n >= 1");
    a.inverse()
        .and_then(|x| x.checked_mul(&b.inverse()?))
        .expect("units of equal order")
}

/// Same class computed through the Whitney formula on the defining exact
/// sequences:
///
/// * `0 → E → O^{(n+1)^2} → O(1)^{n+1} → 0` on `P^n`, so `c(E) = (1+h)^{-n-1}`;
/// * `γ*O(1) = O_X(d-1)`, so `c(γ*E)` is `c(E)` with `h ↦ (d-1)h_X`;
/// * `0 → O_X(-1) → O_X^{n+1} → Q_X → 0`, so `c(Q_X) = (1-h_X)^{-1}`;
/// * `0 → F → O_X^{(n+1)^2} → Q_X ⊕ O_X(d-1)^n → 0`, so
///   `c(F) = c(Q_X)^{-1} (1+(d-1)h_X)^{-n}`.
pub fn gauss_chern_total_whitney(inst: &ModuliInstance) -> Result<TruncatedSeries> {
    let n = inst.n as usize;
    let one = Rational::one();
    let line = |order: usize, k: Rational| TruncatedSeries::linear(order, one.clone(), k);

    let c_e = line(n + 1, one.clone())?.pow(-(inst.n as i64) - 1)?;
    let d1 = Rational::from_integer(inst.d_big() - 1);
    let c_gamma_e = c_e.rescale_variable(&d1).truncate(n)?;

    let c_q = line(n, -one.clone())?.inverse()?;
    let c_f = c_q.inverse()?.checked_mul(&line(n, d1)?.pow(-(inst.n as i64))?)?;
    c_gamma_e.checked_div(&c_f)
}

/// `(1 - (1-d)^n) / d`.
pub fn chern_top_closed_form(inst: &ModuliInstance) -> Rational {
    Rational::new(BigInt::one() - inst.one_minus_d_pow(inst.n), inst.d_big())
}

/// `Σ_{i=0}^{n-1} (1-d)^i`.
pub fn chern_top_geometric_sum(inst: &ModuliInstance) -> Rational {
    let sum: BigInt = (0..inst.n).map(|i| inst.one_minus_d_pow(i)).sum();
    Rational::from_integer(sum)
}

/// Coefficient of `h_X^{n-1}` in [`gauss_chern_total`], cross-checked against
/// the closed form and the geometric sum, and required to be an integer.
pub fn chern_top_coefficient(inst: &ModuliInstance) -> Result<Rational> {
    let series = gauss_chern_total(inst).coeff(inst.n as usize - 1);
    let closed = chern_top_closed_form(inst);
    let geometric = chern_top_geometric_sum(inst);
    if series != closed || series != geometric {
        return Err(Error::CrossCheck(format!(
            "c_(n-1) for {inst:?}: series {series}, closed form {closed}, geometric sum {geometric}"
        )));
    }
    if !series.is_integer() {
        return Err(Error::CrossCheck(format!(
            "c_(n-1) for {inst:?} is not an integer: {series}"
        )));
    }
    Ok(series)
}

/// Degree of `c_{n-1}(γ*E/F)` on the degree-`d` hypersurface:
/// `d · c_{n-1} = 1 - (1-d)^n`.
pub fn chern_degree(inst: &ModuliInstance) -> Result<BigInt> {
    let top = chern_top_coefficient(inst)?;
    let via_coeff = (top * Rational::from_integer(inst.d_big())).to_integer();
    let closed = BigInt::one() - inst.one_minus_d_pow(inst.n);
    if via_coeff != closed {
        return Err(Error::CrossCheck(format!(
            "chern degree for {inst:?}: {via_coeff} vs {closed}"
        )));
    }
    Ok(closed)
}

/// Coefficient of `[T_1]` in `[T_2]`: `(-1)^n (1 - (1-d)^n)`, also obtained as
/// the transposition sign `(-1)^n` times [`chern_degree`].
pub fn t2_coefficient(inst: &ModuliInstance) -> Result<BigInt> {
    let closed = inst.sign_n() * (BigInt::one() - inst.one_minus_d_pow(inst.n));
    let via_transpose = inst.sign_n() * chern_degree(inst)?;
    if closed != via_transpose {
        return Err(Error::CrossCheck(format!(
            "[T_2] coefficient for {inst:?}: {closed} vs {via_transpose}"
        )));
    }
    Ok(closed)
}

/// Multiplicity `d (d-1)^n` of the component `T_1`.
pub fn t1_multiplicity(inst: &ModuliInstance) -> BigInt {
    inst.d_big() * inst.d_minus_one_pow(inst.n)
}

/// `(d-1)^{n+1} + (-1)^n`.
pub fn pullback_closed_form(inst: &ModuliInstance) -> BigInt {
    inst.d_minus_one_pow(inst.n + 1) + inst.sign_n()
}

/// Coefficient of `[T_1]` in `r_n^*[S]`: `d(d-1)^n + [T_2]`, checked against
/// `(d-1)^{n+1} + (-1)^n`.
pub fn pullback_coefficient(inst: &ModuliInstance) -> Result<BigInt> {
    let summed = t1_multiplicity(inst) + t2_coefficient(inst)?;
    let closed = pullback_closed_form(inst);
    if summed != closed {
        return Err(Error::CrossCheck(format!(
            "pullback coefficient for {inst:?}: {summed} vs {closed}"
        )));
    }
    Ok(summed)
}

/// Codimension of `Σ^{(ℓ)}_{n,d}` in the space of forms, `1 <= ℓ <= n+1`.
pub fn codim_sigma_ell(inst: &ModuliInstance, ell: u32) -> Result<u32> {
    codim_in_range(ell, inst.n + 1)
}

/// Codimension of the rank stratum `D_{m,ℓ}` in `m × m` matrices, `1 <= ℓ <= m`.
pub fn codim_rank_locus(m: u32, ell: u32) -> Result<u32> {
    codim_in_range(ell, m)
}

fn codim_in_range(ell: u32, max: u32) -> Result<u32> {
    if ell == 0 || ell > max {
        return Err(Error::StratumOutOfRange { ell, max });
    }
    Ok(ell)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifierReport {
    pub n: u32,
    pub d: u32,
    pub satisfies_hypothesis: bool,
    pub acts_transitively: bool,
    #[serde(with = "rational::serde_bigint")]
    pub discriminant_degree: BigInt,
    #[serde(with = "rational::serde_bigint")]
    pub iota_multiplier: BigInt,
    #[serde(with = "rational::serde_bigint")]
    pub t1_multiplicity: BigInt,
    #[serde(with = "rational::serde_bigint")]
    pub t2_coefficient: BigInt,
    #[serde(with = "rational::serde_bigint")]
    pub pullback_coefficient: BigInt,
    #[serde(with = "rational::serde_str")]
    pub chern_top_coefficient: Rational,
    #[serde(with = "rational::serde_bigint")]
    pub chern_degree: BigInt,
    pub nonvanishing: bool,
}

impl VerifierReport {
    pub fn instance(&self) -> ModuliInstance {
        ModuliInstance { n: self.n, d: self.d }
    }

    /// `key: value` lines with aligned values; the last line is the verdict.
    pub fn render_table(&self) -> String {
        let rows: Vec<(&str, String)> = vec![
            ("n", self.n.to_string()),
            ("d", self.d.to_string()),
            ("hypothesis d >= 3", self.satisfies_hypothesis.to_string()),
            ("transitive action", self.acts_transitively.to_string()),
            ("discriminant degree", self.discriminant_degree.to_string()),
            ("iota multiplier", self.iota_multiplier.to_string()),
            ("c_(n-1) coefficient", rational::format_rational(&self.chern_top_coefficient)),
            ("chern degree", self.chern_degree.to_string()),
            ("T1 multiplicity", self.t1_multiplicity.to_string()),
            ("T2 coefficient", self.t2_coefficient.to_string()),
            ("pullback coefficient", self.pullback_coefficient.to_string()),
            ("nonvanishing", self.nonvanishing.to_string()),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0) + 1;
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{:<width$} {v}", format!("{k}:"));
        }
        out
    }
}

/// Assembles every quantity for one instance. Fails only when two
/// derivations of the same number disagree, or when an instance with `d >= 3`
/// has vanishing pullback coefficient.
pub fn verify_instance(inst: &ModuliInstance) -> Result<VerifierReport> {
    let iota = iota_multiplier(inst);
    let milnor = milnor_brieskorn(&[inst.d])?;
    if iota != milnor {
        return Err(Error::CrossCheck(format!("iota multiplier {iota} vs Milnor number {milnor}")));
    }
    let whitney = gauss_chern_total_whitney(inst)?;
    if whitney != gauss_chern_total(inst) {
        return Err(Error::CrossCheck(format!(
            "c(γ*E/F) for {inst:?}: direct {} vs Whitney {whitney}",
            gauss_chern_total(inst)
        )));
    }
    let chern_top = chern_top_coefficient(inst)?;
    let chern_deg = chern_degree(inst)?;
    let t1 = t1_multiplicity(inst);
    let t2 = t2_coefficient(inst)?;
    let pullback = pullback_coefficient(inst)?;
    let nonvanishing = !pullback.is_zero();
    if inst.satisfies_hypothesis() && !nonvanishing {
        return Err(Error::CrossCheck(format!("pullback coefficient vanishes for {inst:?}")));
    }
    Ok(VerifierReport {
        n: inst.n,
        d: inst.d,
        satisfies_hypothesis: inst.satisfies_hypothesis(),
        acts_transitively: inst.acts_transitively(),
        discriminant_degree: discriminant_degree(inst),
        iota_multiplier: iota,
        t1_multiplicity: t1,
        t2_coefficient: t2,
        pullback_coefficient: pullback,
        chern_top_coefficient: chern_top,
        chern_degree: chern_deg,
        nonvanishing,
    })
}

/// One grid point of a [`sweep`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub instance: ModuliInstance,
    pub report: Option<VerifierReport>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSummary {
    pub rows: Vec<SweepRow>,
}

impl SweepSummary {
    pub fn violation_count(&self) -> usize {
        self.rows.iter().map(|r| r.violations.len()).sum()
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3} {:>3} {:>24} {:>12} {:>24} {:>5}  status",
            "n", "d", "disc degree", "c_(n-1)", "pullback", "nv"
        );
        for row in &self.rows {
            let inst = row.instance;
            match &row.report {
                Some(r) => {
                    let _ = writeln!(
                        out,
                        "{:>3} {:>3} {:>24} {:>12} {:>24} {:>5}  {}",
                        inst.n,
                        inst.d,
                        short(&r.discriminant_degree.to_string()),
                        short(&rational::format_rational(&r.chern_top_coefficient)),
                        short(&r.pullback_coefficient.to_string()),
                        r.nonvanishing,
                        if row.violations.is_empty() { "ok" } else { "VIOLATION" }
                    );
                }
                None => {
                    let _ = writeln!(out, "{:>3} {:>3}  error: {}", inst.n, inst.d, row.violations.join("; "));
                }
            }
        }
        for row in self.rows.iter().filter(|r| r.report.is_some()) {
            for v in &row.violations {
                let _ = writeln!(out, "violation at (n={}, d={}): {v}", row.instance.n, row.instance.d);
            }
        }
        let _ = writeln!(out, "{} violations", self.violation_count());
        out
    }
}

fn short(s: &str) -> String {
    if s.len() <= 24 {
        s.to_string()
    } else {
        format!("{}…({} digits)", &s[..8], s.trim_start_matches('-').len())
    }
}

/// Runs [`verify_instance`] on `1 <= n <= n_max`, `2 <= d <= d_max` and
/// re-checks the identities that tie the numbers together.
pub fn sweep(n_max: u32, d_max: u32, exec: Execution) -> SweepSummary {
    let grid: Vec<ModuliInstance> = (1..=n_max)
        .flat_map(|n| (2..=d_max).map(move |d| ModuliInstance { n, d }))
        .collect();
    SweepSummary {
        rows: exec.map(&grid, check_row),
    }
}

fn check_row(inst: &ModuliInstance) -> SweepRow {
    let report = match verify_instance(inst) {
        Ok(r) => r,
        Err(e) => {
            return SweepRow {
                instance: *inst,
                report: None,
                violations: vec![e.to_string()],
            }
        }
    };
    let mut violations = Vec::new();
    let closed_disc = (BigInt::from(inst.n) + 1) * pow(BigInt::from(inst.d) - 1, inst.n as usize);
    if report.discriminant_degree != closed_disc {
        violations.push("discriminant degree".to_string());
    }
    let numer = BigInt::one() - pow(BigInt::one() - BigInt::from(inst.d), inst.n as usize);
    if !numer.is_multiple_of(&BigInt::from(inst.d)) {
        violations.push("1 - (1-d)^n not divisible by d".to_string());
    }
    let lhs = &report.t1_multiplicity + &report.t2_coefficient;
    if lhs != pullback_closed_form(inst) {
        violations.push("pullback identity".to_string());
    }
    let expect_zero = inst.d == 2 && inst.n % 2 == 1;
    if report.nonvanishing == expect_zero {
        violations.push(format!(
            "nonvanishing = {} but expected {}",
            report.nonvanishing, !expect_zero
        ));
    }
    if report.chern_degree != report.chern_top_coefficient.to_integer() * BigInt::from(inst.d) {
        violations.push("chern degree vs coefficient".to_string());
    }
    SweepRow {
        instance: *inst,
        report: Some(report),
        violations,
    }
}
