//! Operators in the first Weyl algebra with rational coefficients.
//!
//! [`WeylOp`] stores the normal-ordered form `Σ c_{a,b} yᵃ∂ᵇ`; [`ThetaOp`]
//! stores the θ-graded form `Σ yᵃ p_a(θ)` with `θ = y∂`. The Fourier map is
//! taken in normal order, ramifications in θ-graded form, and
//! [`check_chain`] walks the reduction from `∂ⁿ − yᵐ` to the hypergeometric
//! operator, asserting each link exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::check_coprime;
use crate::error::{Error, Result};
use crate::hypergeom::hyp_params;
use crate::poly::{fmt_rational, int, QPoly, Rational};

/// Normal-ordered Weyl operator `Σ c_{a,b} yᵃ∂ᵇ`, keyed by `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeylOp {
    terms: BTreeMap<(u32, u32), Rational>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

impl WeylOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c·yᵃ∂ᵇ`.
    pub fn monomial(a: u32, b: u32, c: Rational) -> Self {
        let mut op = Self::zero();
        op.add_term(a, b, c);
        op
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn d() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    fn add_term(&mut self, a: u32, b: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, v * c);
        }
        out
    }

    /// Normal-ordered product, using `∂ᵇyᶜ = Σ_k C(b,k)·c!/(c−k)!·y^{c−k}∂^{b−k}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), u) in &self.terms {
            for (&(c, d), v) in &other.terms {
                let uv = u * v;
                for k in 0..=b.min(c) {
                    let w = Rational::from_integer(binomial(b, k) * falling(c, k));
                    out.add_term(a + c - k, b - k + d, &uv * w);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Human-readable form in the named variable, e.g. `y^2∂^2 + y∂ - 1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (&(a, b), c) in self.terms.iter().rev() {
            let mono = format!("{}{}", power(var, a), power(&format!("∂{}", sub_var(var)), b));
            push_signed(&mut out, c, &mono);
        }
        out
    }
}

fn sub_var(var: &str) -> String {
    match var {
        "y" => String::new(),
        v => format!("_{v}"),
    }
}

fn power(base: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

fn push_signed(out: &mut String, c: &Rational, mono: &str) {
    let neg = c.is_negative();
    let mag = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        out.push_str(&fmt_rational(&mag));
    } else if !mag.is_one() {
        out.push_str(&fmt_rational(&mag));
        out.push_str(mono);
    } else {
        out.push_str(mono);
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("y"))
    }
}

/// θ-graded operator `Σ yᵃ·p_a(θ)`, keyed by the y-degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ThetaOp {
    terms: BTreeMap<u32, QPoly>,
}

impl ThetaOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, QPoly::one())
    }

    /// `yᵃ·p(θ)`.
    pub fn term(a: u32, p: QPoly) -> Self {
        let mut op = Self::zero();
        op.add_term(a, &p);
        op
    }

    pub fn theta() -> Self {
        Self::term(0, QPoly::x())
    }

    /// `c·yᵃ`.
    pub fn y_pow(a: u32, c: Rational) -> Self {
        Self::term(a, QPoly::constant(c))
    }

    fn add_term(&mut self, a: u32, p: &QPoly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.get(&a) {
            Some(q) => q + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&a);
        } else {
            self.terms.insert(a, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<u32, QPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&a, p) in &other.terms {
            out.add_term(a, p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&a, p) in &self.terms {
            out.add_term(a, &p.scale(c));
        }
        out
    }

    /// Skew product: `yᵃp(θ) · yᵇq(θ) = y^{a+b} p(θ+b) q(θ)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&a, p) in &self.terms {
            for (&b, q) in &other.terms {
                out.add_term(a + b, &(&p.shift(&int(b as i64)) * q));
            }
        }
        out
    }

    /// Human-readable form in ascending y-degree, e.g. `θ^2 - 3θ + 2 - y^3`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (&a, p) in &self.terms {
            if a == 0 {
                out.push_str(&p.render("θ"));
            } else if p.degree() == Some(0) {
                push_signed(&mut out, &p.coeff(0), &power(var, a));
            } else {
                let piece = format!("{}·({})", power(var, a), p.render("θ"));
                out.push_str(if out.is_empty() { "" } else { " + " });
                out.push_str(&piece);
            }
        }
        out
    }
}

impl fmt::Display for ThetaOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("y"))
    }
}

pub fn weyl_mul(a: &WeylOp, b: &WeylOp) -> WeylOp {
    a.mul(b)
}

/// `∏_{k=0}^{b−1}(θ − k)`, the θ-polynomial equal to `yᵇ∂ᵇ`.
pub fn falling_theta(b: u32) -> QPoly {
    QPoly::from_roots((0..b).map(|k| int(k as i64)))
}

pub fn theta_to_weyl(t: &ThetaOp) -> WeylOp {
    let theta = WeylOp::monomial(1, 1, Rational::one());
    let mut out = WeylOp::zero();
    for (&a, p) in t.terms() {
        // p(θ) in normal order, then left-multiply by yᵃ (no reordering needed)
        let mut acc = WeylOp::zero();
        let mut theta_pow = WeylOp::one();
        for c in p.coeffs() {
            acc = acc.add(&theta_pow.scale(c));
            theta_pow = theta_pow.mul(&theta);
        }
        out = out.add(&WeylOp::monomial(a, 0, Rational::one()).mul(&acc));
    }
    out
}

/// Inverse of [`theta_to_weyl`]. Each term `yᵃ∂ᵇ` needs `a ≥ b` and becomes
/// `y^{a−b}·∏_{k<b}(θ − k)`.
pub fn weyl_to_theta(w: &WeylOp) -> Result<ThetaOp> {
    let mut out = ThetaOp::zero();
    for (&(a, b), c) in w.terms() {
        if a < b {
            return Err(Error::NotThetaExpressible { a, b });
        }
        out.add_term(a - b, &falling_theta(b).scale(c));
    }
    Ok(out)
}

/// The Fourier isomorphism `z ↦ ∂_w`, `∂_z ↦ −w`, re-normal-ordered.
pub fn fourier(w: &WeylOp) -> WeylOp {
    let mut out = WeylOp::zero();
    for (&(a, b), c) in w.terms() {
        let sign = if b % 2 == 0 { c.clone() } else { -c.clone() };
        let img = WeylOp::monomial(0, a, Rational::one()).mul(&WeylOp::monomial(b, 0, sign));
        out = out.add(&img);
    }
    out
}

/// Pullback along `y = c·vᵈ`: `yᵃp(θ_y) ↦ cᵃ·v^{da}·p(θ_v/d)`.
pub fn pullback(t: &ThetaOp, d: u32, c: &Rational) -> ThetaOp {
    assert!(d >= 1, "ramification degree must be positive");
    let inv_d = Rational::new(BigInt::one(), BigInt::from(d));
    let mut out = ThetaOp::zero();
    let mut c_pow = Rational::one();
    let max_a = t.terms().keys().next_back().copied().unwrap_or(0);
    let mut pows = Vec::with_capacity(max_a as usize + 1);
    for _ in 0..=max_a {
        pows.push(c_pow.clone());
        c_pow *= c;
    }
    for (&a, p) in t.terms() {
        out.add_term(d * a, &p.dilate(&inv_d).scale(&pows[a as usize]));
    }
    out
}

/// Substitution `y = vᵈ`, `θ_y = θ_v/d`.
pub fn ramify(t: &ThetaOp, d: u32) -> ThetaOp {
    pullback(t, d, &Rational::one())
}

/// Substitution `vᵈ = c·w`, `θ_v = d·θ_w`: `v^{da}p(θ_v) ↦ (c·w)ᵃ p(d·θ_w)`.
pub fn rescale_ramify(t: &ThetaOp, d: u32, c: &Rational) -> Result<ThetaOp> {
    if d == 0 {
        return Err(Error::InvalidInput("rescale degree must be positive".into()));
    }
    let d_rat = int(d as i64);
    let mut out = ThetaOp::zero();
    for (&a, p) in t.terms() {
        if a % d != 0 {
            return Err(Error::DivisibilityViolation { exponent: a, d });
        }
        let k = a / d;
        let ck = (0..k).fold(Rational::one(), |acc, _| acc * c);
        out.add_term(k, &p.dilate(&d_rat).scale(&ck));
    }
    Ok(out)
}

fn first_weyl_difference(lhs: &WeylOp, rhs: &WeylOp) -> Option<String> {
    let keys: BTreeSet<_> = lhs.terms().keys().chain(rhs.terms().keys()).copied().collect();
    keys.into_iter().rev().find_map(|(a, b)| {
        let (l, r) = (lhs.coeff(a, b), rhs.coeff(a, b));
        (l != r).then(|| format!("coefficient of y^{a}∂^{b}: {} vs {}", fmt_rational(&l), fmt_rational(&r)))
    })
}

fn first_theta_difference(lhs: &ThetaOp, rhs: &ThetaOp) -> Option<String> {
    let keys: BTreeSet<_> = lhs.terms().keys().chain(rhs.terms().keys()).copied().collect();
    keys.into_iter().rev().find_map(|a| {
        let l = lhs.terms().get(&a).cloned().unwrap_or_default();
        let r = rhs.terms().get(&a).cloned().unwrap_or_default();
        (l != r).then(|| format!("θ-part of y^{a}: {} vs {}", l.render("θ"), r.render("θ")))
    })
}

/// Outcome of one identity in the reduction chain.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub label: &'static str,
    pub statement: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<String>,
    /// Scalar `u` with `lhs = u·rhs`, for identities checked up to a unit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

impl IdentityCheck {
    fn weyl(label: &'static str, statement: String, lhs: &WeylOp, rhs: &WeylOp) -> Self {
        let diff = first_weyl_difference(lhs, rhs);
        IdentityCheck { label, statement, passed: diff.is_none(), first_difference: diff, unit: None }
    }

    fn theta(label: &'static str, statement: String, lhs: &ThetaOp, rhs: &ThetaOp) -> Self {
        let diff = first_theta_difference(lhs, rhs);
        IdentityCheck { label, statement, passed: diff.is_none(), first_difference: diff, unit: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedOperator {
    pub name: &'static str,
    pub form: String,
}

/// All operators of the chain and the six identity checks.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub n: usize,
    pub m: usize,
    pub operators: Vec<NamedOperator>,
    pub checks: Vec<IdentityCheck>,
}

impl ChainReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The operators of the reduction chain for a coprime pair `(n, m)`.
#[derive(Clone, Debug)]
pub struct ChainOperators {
    /// `∂ⁿ − yᵐ`
    pub p: WeylOp,
    /// `∏_{k=1}^n (θ − k) − y^{n+m}`
    pub q: ThetaOp,
    /// `∏ (θ_v/n − k) − v^{n(n+m)}`
    pub l: ThetaOp,
    /// `∏ ((n+m)/n·θ_w − k) − (n+m)ⁿ wⁿ`
    pub s: ThetaOp,
    /// `∏ ((n+m)/n·(−1 − z∂) − k) − (−1)ⁿ(n+m)ⁿ∂ⁿ`
    pub r: WeylOp,
    /// `(−1)ⁿ(n+m)ⁿ(n^{−n}∏(z∂ + 1 + kn/(n+m)) − ∂ⁿ)`
    pub r_factored: WeylOp,
    /// `(z/n)ⁿ∏(θ + kn/(n+m)) − ∏(θ − k)`
    pub r_tilde: ThetaOp,
    /// `∏(θ − α_k) − x∏(θ − β_k)`
    pub hyp: ThetaOp,
}

impl ChainOperators {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        check_coprime(n, m)?;
        let params = hyp_params(n, m)?;
        let (nn, nm) = (n as u32, (n + m) as u32);
        let (n_r, nm_r) = (int(n as i64), int((n + m) as i64));
        let sign_n = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
        let nm_pow_n = (0..n).fold(Rational::one(), |acc, _| acc * &nm_r);
        let n_pow_n = (0..n).fold(Rational::one(), |acc, _| acc * &n_r);
        let ratio = &nm_r / &n_r;

        let p = WeylOp::monomial(0, nn, Rational::one()).sub(&WeylOp::monomial(m as u32, 0, Rational::one()));

        let prod_theta_minus_k = QPoly::from_roots((1..=n as i64).map(int));
        let q = ThetaOp::term(0, prod_theta_minus_k.clone()).sub(&ThetaOp::y_pow(nm, Rational::one()));

        let l_poly = (1..=n as i64).fold(QPoly::one(), |acc, k| {
            &acc * &QPoly::new(vec![-int(k), n_r.recip()])
        });
        let l = ThetaOp::term(0, l_poly).sub(&ThetaOp::y_pow(nn * nm, Rational::one()));

        let s_poly = (1..=n as i64).fold(QPoly::one(), |acc, k| &acc * &QPoly::new(vec![-int(k), ratio.clone()]));
        let s = ThetaOp::term(0, s_poly).sub(&ThetaOp::y_pow(nn, nm_pow_n.clone()));

        // (n+m)/n·(−1 − θ) − k  =  −(n+m)/n − k − (n+m)/n·θ
        let r_poly = (1..=n as i64).fold(QPoly::one(), |acc, k| {
            &acc * &QPoly::new(vec![-&ratio - int(k), -ratio.clone()])
        });
        let r = theta_to_weyl(&ThetaOp::term(0, r_poly))
            .sub(&WeylOp::monomial(0, nn, &sign_n * &nm_pow_n));

        let shifted = QPoly::from_roots((1..=n as i64).map(|k| -(Rational::one() + int(k) * &n_r / &nm_r)));
        let r_factored = theta_to_weyl(&ThetaOp::term(0, shifted.scale(&n_pow_n.recip())))
            .sub(&WeylOp::monomial(0, nn, Rational::one()))
            .scale(&(&sign_n * &nm_pow_n));

        let r_tilde = ThetaOp::term(
            nn,
            QPoly::from_roots((1..=n as i64).map(|k| -(int(k) * &n_r / &nm_r))).scale(&n_pow_n.recip()),
        )
        .sub(&ThetaOp::term(0, prod_theta_minus_k));

        let hyp = ThetaOp::term(0, QPoly::from_roots(params.alpha.iter().cloned()))
            .sub(&ThetaOp::term(1, QPoly::from_roots(params.beta.iter().cloned())));

        Ok(ChainOperators { p, q, l, s, r, r_factored, r_tilde, hyp })
    }
}

/// Exact scalar `u` with `lhs = u·rhs`, if one exists.
fn proportionality(lhs: &ThetaOp, rhs: &ThetaOp) -> Option<Rational> {
    let (&a, p) = rhs.terms().iter().next_back()?;
    let q = lhs.terms().get(&a)?;
    let deg = p.degree()?;
    let u = q.coeff(deg) / p.coeff(deg);
    (!u.is_zero() && rhs.scale(&u) == *lhs).then_some(u)
}

/// Builds every operator of the reduction chain and checks identities
/// (C1)–(C6) exactly.
pub fn check_chain(n: usize, m: usize) -> Result<ChainReport> {
    let ops = ChainOperators::new(n, m)?;
    let nn = n as u32;
    let nm_r = int((n + m) as i64);
    let sign_n = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    let mut checks = Vec::with_capacity(6);

    // C1: Q·y = y^{n+1}·P
    let lhs = theta_to_weyl(&ops.q).mul(&WeylOp::y());
    let rhs = WeylOp::monomial(nn + 1, 0, Rational::one()).mul(&ops.p);
    checks.push(IdentityCheck::weyl("C1", "Q·y = y^(n+1)·P".into(), &lhs, &rhs));

    // C2: ramify(Q, n) = L
    checks.push(IdentityCheck::theta("C2", "ramify(Q, n) = L".into(), &ramify(&ops.q, nn), &ops.l));

    // C3: rescale_ramify(L, n+m, n+m) = S
    let rescaled = rescale_ramify(&ops.l, (n + m) as u32, &nm_r)?;
    checks.push(IdentityCheck::theta("C3", "rescale_ramify(L, n+m, n+m) = S".into(), &rescaled, &ops.s));

    // C4: F(R) = S, with both expressions for R agreeing
    let mut c4 = IdentityCheck::weyl("C4", "F(R) = S".into(), &fourier(&ops.r), &theta_to_weyl(&ops.s));
    if c4.passed {
        if let Some(d) = first_weyl_difference(&ops.r, &ops.r_factored) {
            c4.passed = false;
            c4.first_difference = Some(format!("factored form of R differs: {d}"));
        }
    }
    checks.push(c4);

    // C5: (−1)ⁿ(n+m)^{−n}·z^{n+1}·R = R̃·z
    let nm_pow_n = (0..n).fold(Rational::one(), |acc, _| acc * &nm_r);
    let lhs = WeylOp::monomial(nn + 1, 0, Rational::one()).mul(&ops.r).scale(&(&sign_n / &nm_pow_n));
    let rhs = theta_to_weyl(&ops.r_tilde).mul(&WeylOp::y());
    checks.push(IdentityCheck::weyl("C5", "(-1)^n (n+m)^(-n) z^(n+1) R = R~ z".into(), &lhs, &rhs));

    // C6: pullback of Hyp along x = zⁿ/nⁿ is a unit multiple of R̃
    let n_pow_n = (0..n).fold(Rational::one(), |acc, _| acc * int(n as i64));
    let pulled = pullback(&ops.hyp, nn, &n_pow_n.recip());
    let statement = "pullback of Hyp(α,β) along x = z^n/n^n = u·R~".to_string();
    checks.push(match proportionality(&pulled, &ops.r_tilde) {
        Some(u) => IdentityCheck {
            label: "C6",
            statement,
            passed: true,
            first_difference: None,
            unit: Some(fmt_rational(&u)),
        },
        None => {
            let mut c = IdentityCheck::theta("C6", statement, &pulled, &ops.r_tilde);
            c.passed = false;
            c
        }
    });

    let operators = vec![
        NamedOperator { name: "P", form: ops.p.render("y") },
        NamedOperator { name: "Q", form: ops.q.render("y") },
        NamedOperator { name: "L", form: ops.l.render("v") },
        NamedOperator { name: "S", form: ops.s.render("w") },
        NamedOperator { name: "R", form: ops.r.render("z") },
        NamedOperator { name: "R~", form: ops.r_tilde.render("z") },
        NamedOperator { name: "Hyp", form: ops.hyp.render("x") },
    ];
    Ok(ChainReport { n, m, operators, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn products() {
        let (y, d) = (WeylOp::y(), WeylOp::d());
        let yd = WeylOp::monomial(1, 1, int(1));
        assert_eq!(d.mul(&y), yd.add(&WeylOp::one()));
        assert_eq!(y.mul(&d), yd);
        let d2y = d.pow(2).mul(&y);
        assert_eq!(d2y, WeylOp::monomial(1, 2, int(1)).add(&WeylOp::monomial(0, 1, int(2))));
        // ∂y − y∂ = 1
        assert_eq!(d.mul(&y).sub(&y.mul(&d)), WeylOp::one());
    }

    #[test]
    fn theta_conversions() {
        let theta_sq = ThetaOp::term(0, QPoly::from_i64(&[0, 0, 1]));
        assert_eq!(
            theta_to_weyl(&theta_sq),
            WeylOp::monomial(2, 2, int(1)).add(&WeylOp::monomial(1, 1, int(1)))
        );
        assert_eq!(theta_to_weyl(&ThetaOp::theta()), WeylOp::monomial(1, 1, int(1)));
        let t = weyl_to_theta(&WeylOp::monomial(3, 3, int(1))).unwrap();
        assert_eq!(t, ThetaOp::term(0, QPoly::from_i64(&[0, 2, -3, 1])));
        assert_eq!(weyl_to_theta(&WeylOp::d()), Err(Error::NotThetaExpressible { a: 0, b: 1 }));
    }

    #[test]
    fn fourier_images() {
        assert_eq!(fourier(&WeylOp::y()), WeylOp::d());
        assert_eq!(fourier(&WeylOp::d().pow(2)), WeylOp::monomial(2, 0, int(1)));
        let zd = WeylOp::monomial(1, 1, int(1));
        assert_eq!(
            fourier(&zd),
            WeylOp::monomial(1, 1, int(-1)).sub(&WeylOp::one())
        );
    }

    #[test]
    fn ramifications() {
        assert_eq!(ramify(&ThetaOp::theta(), 3), ThetaOp::term(0, QPoly::new(vec![int(0), rat(1, 3)])));
        assert_eq!(ramify(&ThetaOp::y_pow(1, int(1)), 2), ThetaOp::y_pow(2, int(1)));
        let ops = ChainOperators::new(2, 1).unwrap();
        // L = (θ/2 − 1)(θ/2 − 2) − v⁶
        let expected_l = ThetaOp::term(0, QPoly::new(vec![int(2), rat(-3, 2), rat(1, 4)]))
            .sub(&ThetaOp::y_pow(6, int(1)));
        assert_eq!(ramify(&ops.q, 2), expected_l);
        // S = (3θ/2 − 1)(3θ/2 − 2) − 9w²
        let expected_s = ThetaOp::term(0, QPoly::new(vec![int(2), rat(-9, 2), rat(9, 4)]))
            .sub(&ThetaOp::y_pow(2, int(9)));
        assert_eq!(rescale_ramify(&expected_l, 3, &int(3)).unwrap(), expected_s);
    }

    #[test]
    fn rescale_examples() {
        let v_pow = ThetaOp::y_pow(5, int(1));
        assert_eq!(rescale_ramify(&v_pow, 5, &int(5)).unwrap(), ThetaOp::y_pow(1, int(5)));
        assert_eq!(
            rescale_ramify(&ThetaOp::theta(), 5, &int(5)).unwrap(),
            ThetaOp::term(0, QPoly::from_i64(&[0, 5]))
        );
        assert_eq!(
            rescale_ramify(&ThetaOp::y_pow(3, int(1)), 2, &int(2)),
            Err(Error::DivisibilityViolation { exponent: 3, d: 2 })
        );
    }

    #[test]
    fn skew_relation() {
        // θ·y = y·(θ + 1)
        let lhs = ThetaOp::theta().mul(&ThetaOp::y_pow(1, int(1)));
        assert_eq!(lhs, ThetaOp::term(1, QPoly::from_i64(&[1, 1])));
        let a = ThetaOp::term(2, QPoly::from_i64(&[1, 2])).add(&ThetaOp::theta());
        let b = ThetaOp::term(1, QPoly::from_i64(&[0, 0, 1]));
        assert_eq!(theta_to_weyl(&a.mul(&b)), theta_to_weyl(&a).mul(&theta_to_weyl(&b)));
    }

    #[test]
    fn chain_small_pairs() {
        for (n, m) in [(2, 1), (1, 1), (3, 2)] {
            let report = check_chain(n, m).unwrap();
            for c in &report.checks {
                assert!(c.passed, "({n},{m}) {}: {:?}", c.label, c.first_difference);
            }
            let u = report.checks[5].unit.clone().unwrap();
            let expected = -(0..n).fold(Rational::one(), |acc, _| acc * int(n as i64)).recip();
            assert_eq!(u, fmt_rational(&expected));
        }
        assert_eq!(check_chain(2, 4).unwrap_err(), Error::NotCoprime { n: 2, m: 4 });
    }

    #[test]
    fn rendering() {
        let op = WeylOp::monomial(2, 2, int(1)).add(&WeylOp::monomial(1, 1, int(1))).sub(&WeylOp::one());
        assert_eq!(op.render("y"), "y^2∂^2 + y∂ - 1");
        assert_eq!(WeylOp::monomial(0, 1, rat(-1, 2)).render("z"), "-1/2∂_z");
        let t = ThetaOp::term(0, QPoly::from_i64(&[2, -3, 1])).sub(&ThetaOp::y_pow(3, int(1)));
        assert_eq!(t.render("y"), "θ^2 - 3θ + 2 - y^3");
        let h = ThetaOp::term(0, QPoly::x()).sub(&ThetaOp::term(1, QPoly::from_i64(&[1, 1])));
        assert_eq!(h.render("x"), "θ + x·(-θ - 1)");
    }
}
