//! Stokes multipliers from quiver data, and their specialisation to the
//! generalised Airy family.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::{check_coprime, CycNum};
use crate::error::{Error, Result};
use crate::hypergeom::{airy_quiver_from, build_monodromy, Quiver, AIRY_GAUGE};
use crate::linalg::{minus_scalar, ExactMat};
use crate::ordering::{dominance_order, theta0, DominanceOrder, Turn};

pub const SEQUENCE_RULE: &str = "S_even=S_b, S_odd=inv(S_mb)";

/// Block-triangular multipliers `(S_b, S_mb)` of a quiver whose nodes are in
/// ascending dominance.
///
/// `S_b` has identity diagonal blocks and `u_i v_j` above the diagonal;
/// `S_mb` has `1 − u_k v_k` on the diagonal and `−u_i v_j` below it.
pub fn assemble(q: &Quiver) -> Result<(ExactMat, ExactMat)> {
    q.validate()?;
    let order = q.order;
    let dim = q.total_phi_dim();
    if dim == 0 {
        return Err(Error::InvalidInput("quiver has no vanishing cycles".into()));
    }
    let offsets: Vec<usize> = q
        .nodes
        .iter()
        .scan(0, |acc, node| {
            let start = *acc;
            *acc += node.phi_dim;
            Some(start)
        })
        .collect();
    let mut s_b = ExactMat::identity(order, dim);
    let mut s_mb = ExactMat::zeros(order, dim, dim);
    for (i, a) in q.nodes.iter().enumerate() {
        for (j, b) in q.nodes.iter().enumerate() {
            let uv = a.u.try_mul(&b.v)?;
            match i.cmp(&j) {
                std::cmp::Ordering::Less => s_b.set_block(offsets[i], offsets[j], &uv)?,
                std::cmp::Ordering::Greater => s_mb.set_block(offsets[i], offsets[j], &uv.neg())?,
                std::cmp::Ordering::Equal => {
                    let t = uv.one_minus()?;
                    if t.inverse().is_err() {
                        return Err(Error::InvariantFailure(format!("diagonal block T_{} is singular", i + 1)));
                    }
                    s_mb.set_block(offsets[i], offsets[i], &t)?;
                }
            }
        }
    }
    Ok((s_b, s_mb))
}

/// Block-diagonal matrix `diag(g_1, …, g_r)`.
pub fn block_diagonal(order: usize, blocks: &[ExactMat]) -> Result<ExactMat> {
    let dim: usize = blocks.iter().map(ExactMat::rows).sum();
    let mut out = ExactMat::zeros(order, dim.max(1), dim.max(1));
    let mut at = 0;
    for g in blocks {
        out.set_block(at, at, g)?;
        at += g.rows();
    }
    Ok(out)
}

/// Stokes data of `∂ⁿ − yᵐ` pulled back along `ρ_n`, relative to `θ_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesData {
    pub n: usize,
    pub m: usize,
    pub theta0: Turn,
    pub lambda: Vec<CycNum>,
    pub dominance: DominanceOrder,
    pub s_b: ExactMat,
    pub s_mb: ExactMat,
    pub s_mb_inv: ExactMat,
    pub gauge: String,
}

impl StokesData {
    pub fn order(&self) -> usize {
        self.n + self.m
    }

    /// `S_1, …, S_{2(n+m)}` with `S_{2k} = S_b` and `S_{2k−1} = S_mb⁻¹`.
    pub fn sequence(&self) -> Vec<ExactMat> {
        (1..=2 * self.order())
            .map(|j| if j % 2 == 0 { self.s_b.clone() } else { self.s_mb_inv.clone() })
            .collect()
    }

    /// `S_1·S_2⋯S_{2(n+m)}`, printed as a diagnostic only.
    pub fn sequence_product(&self) -> Result<ExactMat> {
        let base = self.s_mb_inv.try_mul(&self.s_b)?;
        base.pow(self.order() as i64)
    }
}

#[derive(Serialize, Deserialize)]
struct StokesRepr {
    n: usize,
    m: usize,
    order: usize,
    theta0: Turn,
    lambda: Vec<CycNum>,
    dominance: Vec<usize>,
    #[serde(rename = "S_b")]
    s_b: ExactMat,
    #[serde(rename = "S_mb")]
    s_mb: ExactMat,
    sequence_rule: String,
    gauge: String,
}

impl Serialize for StokesData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StokesRepr {
            n: self.n,
            m: self.m,
            order: self.order(),
            theta0: self.theta0,
            lambda: self.lambda.clone(),
            dominance: self.dominance.ascending.clone(),
            s_b: self.s_b.clone(),
            s_mb: self.s_mb.clone(),
            sequence_rule: SEQUENCE_RULE.into(),
            gauge: self.gauge.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StokesData {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = StokesRepr::deserialize(d)?;
        if r.sequence_rule != SEQUENCE_RULE {
            return Err(D::Error::custom(format!("unknown sequence rule {:?}", r.sequence_rule)));
        }
        if r.order != r.n + r.m {
            return Err(D::Error::custom("order must equal n + m"));
        }
        let s_mb_inv = r.s_mb.inverse().map_err(D::Error::custom)?;
        Ok(StokesData {
            n: r.n,
            m: r.m,
            theta0: r.theta0,
            lambda: r.lambda,
            dominance: DominanceOrder { n: r.n, ascending: r.dominance },
            s_b: r.s_b,
            s_mb: r.s_mb,
            s_mb_inv,
            gauge: r.gauge,
        })
    }
}

impl StokesData {
    pub fn to_latex(&self) -> String {
        format!(
            "% (n, m) = ({}, {}), theta_0 = {}/{} \\cdot 2\\pi\n\
             S_{{2k}} = S_{{\\mathfrak b}} = {}\n\
             S_{{2k-1}}^{{-1}} = S_{{-\\mathfrak b}} = {}\n",
            self.n,
            self.m,
            self.theta0.num(),
            self.theta0.den(),
            self.s_b.to_latex(),
            self.s_mb.to_latex()
        )
    }
}

impl fmt::Display for StokesData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(n, m) = ({}, {}) over Q(ζ_{})", self.n, self.m, self.order())?;
        writeln!(f, "θ_0 = {}", self.theta0)?;
        for (i, l) in self.lambda.iter().enumerate() {
            writeln!(f, "λ_{} = {l}", i + 1)?;
        }
        writeln!(f, "dominance: {}", self.dominance.chain())?;
        writeln!(f, "gauge: {}", self.gauge)?;
        writeln!(f, "S_b (= S_2k):\n{}", self.s_b)?;
        writeln!(f, "S_mb (= S_(2k-1)^-1):\n{}", self.s_mb)?;
        write!(f, "{} matrices in sequence, rule {SEQUENCE_RULE}", 2 * self.order())
    }
}

/// Runs the full pipeline for `(n, m)` and checks the shape of the result.
pub fn airy_stokes(n: usize, m: usize) -> Result<StokesData> {
    check_coprime(n, m)?;
    let md = build_monodromy(n, m)?;
    let quiver = airy_quiver_from(&md)?;
    let (s_b, s_mb) = assemble(&quiver)?;
    let s_mb_inv = s_mb.inverse()?;
    let order = n + m;
    let lambda = md.lambda.clone();
    let minus_ln = md.reflection_eigenvalue();
    let dominance = dominance_order(n);

    if !s_b.is_upper_triangular() || !s_mb.is_lower_triangular() {
        return Err(Error::InvariantFailure("Stokes multipliers are not triangular".into()));
    }
    for i in 0..n {
        if !s_b.get(i, i).is_one() {
            return Err(Error::InvariantFailure(format!("S_b[{i},{i}] is not 1")));
        }
        if *s_mb.get(i, i) != minus_ln {
            return Err(Error::InvariantFailure(format!("S_mb[{i},{i}] is not −λ_n")));
        }
        for j in i + 1..n {
            let s = s_b.get(i, j);
            if !lambda[..n - 1].contains(s) {
                return Err(Error::InvariantFailure(format!("S_b[{i},{j}] = {s} is not among λ_1..λ_(n-1)")));
            }
            // cross-check against the closed index formula
            let (ki, kj) = (dominance.ascending[i], dominance.ascending[j]);
            let idx = (kj + n - ki) % n;
            if *s != lambda[idx - 1] {
                return Err(Error::InvariantFailure(format!(
                    "S_b[{i},{j}] = {s} but the index formula predicts λ_{idx}"
                )));
            }
            if *s_mb.get(j, i) != -&lambda[(ki + n - kj) % n - 1] {
                return Err(Error::InvariantFailure(format!("S_mb[{j},{i}] disagrees with the index formula")));
            }
        }
    }
    if s_mb.try_mul(&s_mb_inv)? != ExactMat::identity(order, n) {
        return Err(Error::InvariantFailure("S_mb·S_mb⁻¹ ≠ 1".into()));
    }
    Ok(StokesData {
        n,
        m,
        theta0: theta0(n, m),
        lambda,
        dominance,
        s_b,
        s_mb,
        s_mb_inv,
        gauge: AIRY_GAUGE.into(),
    })
}

/// `(S − 1)ⁿ = 0` and `rank(S − 1) = n − 1`.
pub fn is_regular_unipotent(s: &ExactMat) -> bool {
    if !s.is_square() {
        return false;
    }
    let n = s.rows();
    let Ok(nil) = s.one_minus().map(|m| m.neg()) else { return false };
    let nilpotent = nil.pow(n as i64).map(|p| p.is_zero()).unwrap_or(false);
    nilpotent && nil.rank() == n - 1
}

/// `rank(S_mb + λ_n) = n − 1`: `S_mb` is `−λ_n` times a regular unipotent.
pub fn lower_is_regular(data: &StokesData) -> Result<bool> {
    let minus_ln = -&data.lambda[data.n - 1];
    Ok(minus_scalar(&data.s_mb, &minus_ln)?.rank() == data.n - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    SL,
    Sp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisVerdict {
    pub group: Group,
    pub n: usize,
    pub n_parity: &'static str,
}

impl fmt::Display for GaloisVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            Group::SL => write!(f, "SL({})", self.n),
            Group::Sp => write!(f, "Sp({})", self.n),
        }
    }
}

pub fn galois_group(n: usize, m: usize) -> Result<GaloisVerdict> {
    check_coprime(n, m)?;
    if n == 1 {
        return Err(Error::OutOfScope("rank-one connection: the SL/Sp classification needs n ≥ 2".into()));
    }
    Ok(if n % 2 == 1 {
        GaloisVerdict { group: Group::SL, n, n_parity: "odd" }
    } else {
        GaloisVerdict { group: Group::Sp, n, n_parity: "even" }
    })
}

/// Stokes data of `(n, m)` and `(m, n)`, both over Q(ζ_{n+m}).
#[derive(Clone, Debug, Serialize)]
pub struct FourierPairReport {
    pub order: usize,
    pub field: String,
    pub left: StokesData,
    pub right: StokesData,
}

pub fn fourier_pair_report(n: usize, m: usize) -> Result<FourierPairReport> {
    let left = airy_stokes(n, m)?;
    let right = airy_stokes(m, n)?;
    Ok(FourierPairReport { order: n + m, field: format!("Q(zeta_{})", n + m), left, right })
}
