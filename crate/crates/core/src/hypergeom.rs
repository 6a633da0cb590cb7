//! Monodromy of the auxiliary hypergeometric system and the quiver of its
//! pullback.
//!
//! Everything lives over Q(ζ_{n+m}). The basis is the one in which `T0` and
//! `T∞⁻¹` are companion matrices; `P := T0` cycles `e_j ↦ e_{j+1}`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{check_coprime, lambda_coeffs, zeta_pow, CycNum, CycPoly};
use crate::error::{Error, Result};
use crate::linalg::ExactMat;
use crate::ordering::dominance_order;
use crate::poly::{fmt_rational, Rational};

/// Exponents of `Hyp(α, β)` attached to a coprime pair `(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypParams {
    pub n: usize,
    pub m: usize,
    /// `α_k = k/n`
    pub alpha: Vec<Rational>,
    /// `β_k = −k/(n+m)`
    pub beta: Vec<Rational>,
    /// `γ = Σ(β_k − α_k)`
    pub gamma: Rational,
}

pub fn hyp_params(n: usize, m: usize) -> Result<HypParams> {
    check_coprime(n, m)?;
    let frac = |num: usize, den: usize| Rational::new(BigInt::from(num), BigInt::from(den));
    let alpha: Vec<Rational> = (1..=n).map(|k| frac(k, n)).collect();
    let beta: Vec<Rational> = (1..=n).map(|k| -frac(k, n + m)).collect();
    for (j, a) in alpha.iter().enumerate() {
        for (k, b) in beta.iter().enumerate() {
            if (a - b).is_integer() {
                return Err(Error::InvariantFailure(format!(
                    "α_{} − β_{} = {} is an integer",
                    j + 1,
                    k + 1,
                    fmt_rational(&(a - b))
                )));
            }
        }
    }
    let gamma = beta.iter().sum::<Rational>() - alpha.iter().sum::<Rational>();
    Ok(HypParams { n, m, alpha, beta, gamma })
}

/// Companion matrix of a monic polynomial: ones on the sub-diagonal, last
/// column `−(c_0, …, c_{d−1})ᵀ`.
pub fn companion(p: &CycPoly) -> Result<ExactMat> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidInput("companion matrix needs degree ≥ 1".into())),
    };
    let order = p.order();
    Ok(ExactMat::from_fn(order, d, d, |i, j| {
        if j == d - 1 {
            -p.coeff(i)
        } else if i == j + 1 {
            CycNum::one(order)
        } else {
            CycNum::zero(order)
        }
    }))
}

/// Monodromy generators in the Levelt basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyData {
    pub n: usize,
    pub m: usize,
    /// λ_1, …, λ_n
    pub lambda: Vec<CycNum>,
    pub t0: ExactMat,
    pub t1: ExactMat,
    pub tinf: ExactMat,
    pub tinf_inv: ExactMat,
    /// Generator of `im(1 − T1)`.
    pub c: Vec<CycNum>,
}

impl MonodromyData {
    pub fn order(&self) -> usize {
        self.n + self.m
    }

    /// The cyclic permutation `P = T0`.
    pub fn p(&self) -> &ExactMat {
        &self.t0
    }

    /// `−λ_n`, the non-trivial eigenvalue of the pseudo-reflection `T1`.
    pub fn reflection_eigenvalue(&self) -> CycNum {
        -&self.lambda[self.n - 1]
    }
}

pub fn build_monodromy(n: usize, m: usize) -> Result<MonodromyData> {
    let lambda = lambda_coeffs(n, m)?;
    let order = n + m;
    let one = CycNum::one(order);

    let mut xn_minus_one = vec![CycNum::zero(order); n];
    xn_minus_one[0] = -&one;
    let t0 = companion(&CycPoly::monic_from_lower(order, &xn_minus_one)?)?;

    // Xⁿ + λ_1Xⁿ⁻¹ + … + λ_n, ascending lower coefficients λ_n, …, λ_1
    let lower: Vec<CycNum> = lambda.iter().rev().cloned().collect();
    let tinf_inv = companion(&CycPoly::monic_from_lower(order, &lower)?)?;
    let tinf = tinf_inv.inverse()?;
    let t1 = t0.inverse()?.try_mul(&tinf_inv)?;

    let defect = t1.one_minus()?;
    for j in 0..n - 1 {
        if defect.col(j).iter().any(|e| !e.is_zero()) {
            return Err(Error::InvariantFailure(format!("column {j} of 1 − T1 is non-zero")));
        }
    }
    let c = defect.col(n - 1);
    let mut expected: Vec<CycNum> = (1..n).rev().map(|i| lambda[i - 1].clone()).collect();
    expected.push(&one + &lambda[n - 1]);
    if c != expected {
        return Err(Error::InvariantFailure(
            "last column of 1 − T1 differs from (λ_{n−1}, …, λ_1, 1 + λ_n)".into(),
        ));
    }
    if defect.rank() != 1 {
        return Err(Error::InvariantFailure("T1 is not a pseudo-reflection".into()));
    }
    Ok(MonodromyData { n, m, lambda, t0, t1, tinf, tinf_inv, c })
}

/// `[Pᵏ·T1·P⁻ᵏ for k = 0..n−1]`.
pub fn local_monodromies(md: &MonodromyData) -> Result<Vec<ExactMat>> {
    (0..md.n as i64)
        .map(|k| md.p().pow(k)?.try_mul(&md.t1)?.try_mul(&md.p().pow(-k)?))
        .collect()
}

/// One vanishing-cycle space `Φ` with its maps `u: Ψ → Φ`, `v: Φ → Ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverNode {
    /// `k` for the singularity `n·ζ_nᵏ`.
    pub exponent: usize,
    pub phi_dim: usize,
    pub u: ExactMat,
    pub v: ExactMat,
}

/// Linear-algebra data `(Ψ, Φ_s, u_s, v_s)` with nodes in ascending dominance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub order: usize,
    pub psi_dim: usize,
    pub nodes: Vec<QuiverNode>,
    pub gauge: String,
}

impl Quiver {
    /// Validates shapes and the invertibility of `1 − v·u` and `1 − u·v`.
    pub fn new(order: usize, psi_dim: usize, nodes: Vec<QuiverNode>, gauge: impl Into<String>) -> Result<Self> {
        let q = Quiver { order, psi_dim, nodes, gauge: gauge.into() };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, node) in self.nodes.iter().enumerate() {
            let (u, v) = (&node.u, &node.v);
            if u.rows() != node.phi_dim || u.cols() != self.psi_dim || v.rows() != self.psi_dim || v.cols() != node.phi_dim {
                return Err(Error::DimensionMismatch(format!(
                    "node {i}: u is {}x{}, v is {}x{}, expected {}x{} and {}x{}",
                    u.rows(),
                    u.cols(),
                    v.rows(),
                    v.cols(),
                    node.phi_dim,
                    self.psi_dim,
                    self.psi_dim,
                    node.phi_dim
                )));
            }
            if u.order() != self.order || v.order() != self.order {
                return Err(Error::OrderMismatch { left: self.order, right: u.order().max(v.order()) });
            }
            if v.try_mul(u)?.one_minus()?.inverse().is_err() {
                return Err(Error::InvariantFailure(format!("node {i}: 1 − v·u is singular")));
            }
            if u.try_mul(v)?.one_minus()?.inverse().is_err() {
                return Err(Error::InvariantFailure(format!("node {i}: 1 − u·v is singular")));
            }
        }
        Ok(())
    }

    pub fn total_phi_dim(&self) -> usize {
        self.nodes.iter().map(|n| n.phi_dim).sum()
    }

    /// Replaces each `(u_k, v_k)` by `(g_k⁻¹u_k, v_k g_k)`.
    pub fn regauge(&self, g: &[ExactMat]) -> Result<Quiver> {
        if g.len() != self.nodes.len() {
            return Err(Error::DimensionMismatch(format!("{} gauge blocks for {} nodes", g.len(), self.nodes.len())));
        }
        let nodes = self
            .nodes
            .iter()
            .zip(g)
            .map(|(node, gk)| {
                Ok(QuiverNode {
                    exponent: node.exponent,
                    phi_dim: node.phi_dim,
                    u: gk.inverse()?.try_mul(&node.u)?,
                    v: node.v.try_mul(gk)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(self.order, self.psi_dim, nodes, format!("{} (regauged)", self.gauge))
    }
}

pub const AIRY_GAUGE: &str = "phi_k = P^k c";

/// Row `r` with `a = c·r`, found by pivoting on the first non-zero entry of
/// `c` and then checked against the full product.
fn factor_rank_one(a: &ExactMat, c: &[CycNum]) -> Result<ExactMat> {
    let order = a.order();
    let p = c
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::InvariantFailure("zero generator".into()))?;
    let inv = c[p].inv()?;
    let r: Vec<CycNum> = a.row(p).iter().map(|x| x * &inv).collect();
    let row = ExactMat::row_vector(order, &r);
    if ExactMat::column(order, c).try_mul(&row)? != *a {
        return Err(Error::InvariantFailure("1 − PᵏT1P⁻ᵏ is not c_k times a row".into()));
    }
    Ok(row)
}

/// The quiver of the pulled-back system: `Ψ = Qⁿ`, one line `Φ_k` per
/// singularity `n·ζ_nᵏ`, generated by `c_k = Pᵏc`. Nodes are listed in
/// ascending dominance.
pub fn build_airy_quiver(n: usize, m: usize) -> Result<Quiver> {
    let md = build_monodromy(n, m)?;
    airy_quiver_from(&md)
}

pub fn airy_quiver_from(md: &MonodromyData) -> Result<Quiver> {
    let order = md.order();
    let c = ExactMat::column(order, &md.c);
    let locals = local_monodromies(md)?;
    let mut by_exponent = Vec::with_capacity(md.n);
    for (k, local) in locals.iter().enumerate() {
        let ck = md.p().pow(k as i64)?.try_mul(&c)?.col(0);
        let u = factor_rank_one(&local.one_minus()?, &ck)?;
        by_exponent.push(QuiverNode { exponent: k, phi_dim: 1, u, v: ExactMat::column(order, &ck) });
    }
    let nodes = dominance_order(md.n)
        .ascending
        .iter()
        .map(|&k| by_exponent[k].clone())
        .collect();
    Quiver::new(order, md.n, nodes, AIRY_GAUGE)
}

/// `exp(2πiγ)` written in Q(ζ_{n+m}): `(−1)^{n+1} ζ^{−n(n+1)/2}`.
pub fn exp_two_pi_i_gamma(params: &HypParams) -> CycNum {
    let (n, order) = (params.n, params.n + params.m);
    let z = zeta_pow(order, -((n * (n + 1) / 2) as i64));
    if n % 2 == 1 {
        z
    } else {
        -z
    }
}

/// Evaluates `exp(2πiγ)` from the rational exponent alone and compares it
/// with both `−λ_n` and [`exp_two_pi_i_gamma`].
pub fn gamma_matches_reflection(params: &HypParams, md: &MonodromyData) -> bool {
    let order = params.n + params.m;
    // exp(2πiγ) = ζ_{2N}^{2Nγ}
    let two_n_gamma = &params.gamma * Rational::from_integer(BigInt::from(2 * order));
    if !two_n_gamma.is_integer() {
        return false;
    }
    let modulus = BigInt::from(2 * order);
    let r = ((two_n_gamma.to_integer() % &modulus) + &modulus) % &modulus;
    let Ok(r) = usize::try_from(r) else { return false };
    let value = if r % 2 == 0 {
        zeta_pow(order, (r / 2) as i64)
    } else if order % 2 == 1 {
        // ζ_{2N}^r = −ζ_{2N}^{r+N} and r + N is even
        -zeta_pow(order, ((r + order) / 2) as i64)
    } else {
        return false;
    };
    value == md.reflection_eigenvalue() && value == exp_two_pi_i_gamma(params)
}
