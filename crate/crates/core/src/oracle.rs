//! Numeric monodromy of `Hyp(α, β)` by integrating the θ-frame system around
//! loops, compared with the exact predictions through conjugation invariants.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::cyclotomic::rational_to_f64;
use crate::error::{Error, Result};
use crate::hypergeom::{hyp_params, HypParams};
use crate::poly::QPoly;

pub type CMat = DMatrix<Complex64>;

/// `θY = B(x)Y` with `Y = (y, θy, …, θ^{n−1}y)`; `dY/dx = B(x)Y/x`.

#[derive(Clone, Debug)]
pub struct HypSystem {
    pub n: usize,
    /// Ascending coefficients of `∏(θ − α_k)`, monic.
    pub a: Vec<f64>,
    /// Ascending coefficients of `∏(θ − β_k)`, monic.
    pub b: Vec<f64>,
}

fn coeffs_f64(p: &QPoly) -> Vec<f64> {
    p.coeffs().iter().map(rational_to_f64).collect()
}

pub fn hyp_system(params: &HypParams) -> HypSystem {
    HypSystem {
        n: params.n,
        a: coeffs_f64(&QPoly::from_roots(params.alpha.iter().cloned())),
        b: coeffs_f64(&QPoly::from_roots(params.beta.iter().cloned())),
    }
}

impl HypSystem {
    /// `B(x)`: shift rows plus `(x·Σb_jY_j − Σa_jY_j)/(1 − x)` in the last row.
    pub fn theta_matrix(&self, x: Complex64) -> Result<CMat> {
        if x == Complex64::new(1.0, 0.0) {
            return Err(Error::Pole("1".into()));
        }
        let n = self.n;
        let mut m = CMat::zeros(n, n);
        for i in 0..n - 1 {
            m[(i, i + 1)] = Complex64::new(1.0, 0.0);
        }
        let denom = Complex64::new(1.0, 0.0) - x;
        for j in 0..n {
            m[(n - 1, j)] = (x * self.b[j] - self.a[j]) / denom;
        }
        Ok(m)
    }

    /// `A(x) = B(x)/x`.
    pub fn matrix(&self, x: Complex64) -> Result<CMat> {
        if x == Complex64::new(0.0, 0.0) {
            return Err(Error::Pole("0".into()));
        }
        Ok(self.theta_matrix(x)? / x)
    }

    /// `lim_{x→0} x·A(x)`, a companion matrix of `∏(θ − α_k)`.
    pub fn residue_at_zero(&self) -> CMat {
        self.theta_matrix(Complex64::new(0.0, 0.0)).expect("x = 0 is regular for B")
    }
}

/// A piece of a loop, parametrised over `s ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    Segment { from: Complex64, to: Complex64 },
    Arc { center: Complex64, radius: f64, start: f64, sweep: f64 },
}

impl Piece {
    fn point(&self, s: f64) -> Complex64 {
        match *self {
            Piece::Segment { from, to } => from + (to - from) * s,
            Piece::Arc { center, radius, start, sweep } => center + Complex64::from_polar(radius, start + sweep * s),
        }
    }

    fn velocity(&self, s: f64) -> Complex64 {
        match *self {
            Piece::Segment { from, to } => to - from,
            Piece::Arc { radius, start, sweep, .. } => {
                Complex64::new(0.0, sweep) * Complex64::from_polar(radius, start + sweep * s)
            }
        }
    }

    fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { from, to } => Piece::Segment { from: to, to: from },
            Piece::Arc { center, radius, start, sweep } => Piece::Arc { center, radius, start: start + sweep, sweep: -sweep },
        }
    }
}

/// Which regular singular point a loop encircles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LoopAround {
    Zero,
    One,
}

impl LoopAround {
    pub fn center(&self) -> f64 {
        match self {
            LoopAround::Zero => 0.0,
            LoopAround::One => 1.0,
        }
    }
}

/// A closed loop based at `base`, counter-clockwise unless reversed.
#[derive(Clone, Debug)]
pub struct LoopPath {
    pub base: Complex64,
    pub pieces: Vec<Piece>,
}

impl LoopPath {
    /// Circle of the given radius about `0` or `1`, joined to the real base
    /// point by a radial segment when the base is not on the circle.
    pub fn around(which: LoopAround, base: f64, radius: f64) -> Self {
        let c = which.center();
        let dir = if base >= c { 1.0 } else { -1.0 };
        let start_pt = c + dir * radius;
        let start_angle = if dir > 0.0 { 0.0 } else { PI };
        let mut pieces = Vec::new();
        let base_c = Complex64::new(base, 0.0);
        let start_c = Complex64::new(start_pt, 0.0);
        if (start_pt - base).abs() > 1e-15 {
            pieces.push(Piece::Segment { from: base_c, to: start_c });
        }
        pieces.push(Piece::Arc { center: Complex64::new(c, 0.0), radius, start: start_angle, sweep: TAU });
        if (start_pt - base).abs() > 1e-15 {
            pieces.push(Piece::Segment { from: start_c, to: base_c });
        }
        LoopPath { base: base_c, pieces }
    }

    pub fn reversed(&self) -> Self {
        LoopPath { base: self.base, pieces: self.pieces.iter().rev().map(Piece::reversed).collect() }
    }
}

/// Integration controls.
#[derive(Clone, Copy, Debug)]
pub struct Integrator {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Integrator {
    pub fn for_tolerance(tol: f64) -> Self {
        let local = (tol * 1e-5).max(1e-13);
        Integrator { rtol: local, atol: local, max_steps: 200_000 }
    }
}

// Dormand–Prince 5(4) tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn rhs(sys: &HypSystem, piece: &Piece, s: f64, y: &CMat) -> Result<CMat> {
    let x = piece.point(s);
    Ok(sys.matrix(x)? * y * piece.velocity(s))
}

/// Transports `y` along one piece with an adaptive Dormand–Prince step.
fn integrate_piece(sys: &HypSystem, piece: &Piece, mut y: CMat, ctl: &Integrator, steps: &mut usize) -> Result<CMat> {
    let mut s = 0.0;
    let mut h: f64 = 0.01;
    let mut k1 = rhs(sys, piece, s, &y)?;
    while s < 1.0 {
        if *steps >= ctl.max_steps {
            return Err(Error::ToleranceNotMet { what: "step budget exhausted".into(), error: f64::INFINITY, tol: ctl.rtol });
        }
        h = h.min(1.0 - s);
        let mut k = Vec::with_capacity(7);
        k.push(k1.clone());
        for stage in 1..7 {
            let mut arg = y.clone();
            for (j, kj) in k.iter().enumerate().take(stage) {
                if A[stage][j] != 0.0 {
                    arg += kj * Complex64::new(h * A[stage][j], 0.0);
                }
            }
            k.push(rhs(sys, piece, s + C[stage] * h, &arg)?);
        }
        let mut y5 = y.clone();
        let mut err = CMat::zeros(y.nrows(), y.ncols());
        for j in 0..7 {
            y5 += &k[j] * Complex64::new(h * B5[j], 0.0);
            err += &k[j] * Complex64::new(h * (B5[j] - B4[j]), 0.0);
        }
        let ratio = err
            .iter()
            .zip(y5.iter())
            .map(|(e, v)| e.norm() / (ctl.atol + ctl.rtol * v.norm()))
            .fold(0.0, f64::max);
        *steps += 1;
        if ratio <= 1.0 {
            s += h;
            y = y5;
            // first-same-as-last
            k1 = k.pop().expect("seven stages");
        }
        let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
    }
    Ok(y)
}

/// Continues the identity frame along `path`; the result is the monodromy
/// matrix in the θ-frame at the base point.
pub fn transport(sys: &HypSystem, path: &LoopPath, ctl: &Integrator) -> Result<CMat> {
    let mut y = CMat::identity(sys.n, sys.n);
    let mut steps = 0;
    for piece in &path.pieces {
        y = integrate_piece(sys, piece, y, ctl, &mut steps)?;
    }
    Ok(y)
}

/// Numeric monodromy of one loop.
#[derive(Clone, Debug, Serialize)]
pub struct NumMonodromy {
    pub around: LoopAround,
    pub base_point: (f64, f64),
    pub radius: f64,
    #[serde(serialize_with = "ser_cmat")]
    pub matrix: CMat,
    pub est_error: f64,
}

fn ser_cmat<S: serde::Serializer>(m: &CMat, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<(f64, f64)>> = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| (m[(i, j)].re, m[(i, j)].im)).collect()).collect();
    rows.serialize(s)
}

/// Options for [`monodromy_loop`]; the defaults are base point `1/2` and
/// radius `1/2`.
#[derive(Clone, Copy, Debug)]
pub struct LoopOptions {
    pub base: f64,
    pub radius: f64,
    pub max_steps: usize,
    pub reversed: bool,
}

impl Default for LoopOptions {
    fn default() -> Self {
        LoopOptions { base: 0.5, radius: 0.5, max_steps: 200_000, reversed: false }
    }
}

/// Integrates around the loop twice, with local tolerance `tol·10⁻⁵` and
/// `tol·10⁻⁷` (floored near machine precision). The error estimate is the
/// largest entry of the difference, relative to `max(1, max |M_ij|)`.
pub fn monodromy_loop(params: &HypParams, which: LoopAround, opts: LoopOptions, tol: f64) -> Result<NumMonodromy> {
    let sys = hyp_system(params);
    let mut path = LoopPath::around(which, opts.base, opts.radius);
    if opts.reversed {
        path = path.reversed();
    }
    let coarse = Integrator { max_steps: opts.max_steps, ..Integrator::for_tolerance(tol) };
    let fine = Integrator { rtol: (coarse.rtol / 100.0).max(1e-14), atol: (coarse.atol / 100.0).max(1e-14), ..coarse };
    let m_coarse = transport(&sys, &path, &coarse)?;
    let m_fine = transport(&sys, &path, &fine)?;
    let scale = m_fine.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let est_error = (&m_coarse - &m_fine).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale;
    if est_error > tol {
        return Err(Error::ToleranceNotMet { what: format!("loop around {}", which.center()), error: est_error, tol });
    }
    if m_fine.clone().try_inverse().is_none() {
        return Err(Error::InvariantFailure("numeric monodromy is singular".into()));
    }
    Ok(NumMonodromy { around: which, base_point: (opts.base, 0.0), radius: opts.radius, matrix: m_fine, est_error })
}

/// Eigenvalues from the complex Schur form.
pub fn eigenvalues_c(m: &CMat) -> Vec<Complex64> {
    let t = m.clone().schur().unpack().1;
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Characteristic polynomial, ascending and monic, expanded from the Schur
/// eigenvalues.
pub fn char_poly_c(m: &CMat) -> Vec<Complex64> {
    poly_from_roots(&eigenvalues_c(m))
}

/// Characteristic polynomial by Faddeev–LeVerrier; exact-arithmetic style
/// recursion, only reliable for well-scaled matrices.
pub fn char_poly_leverrier(m: &CMat) -> Vec<Complex64> {
    let n = m.nrows();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut mk = CMat::zeros(n, n);
    let id = CMat::identity(n, n);
    for k in 1..=n {
        mk = m * (&mk + &id * coeffs[n - k + 1]);
        coeffs[n - k] = -mk.trace() / k as f64;
    }
    coeffs
}

/// `∏(X − r)`, ascending.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        p = next;
    }
    p
}

fn e2pii(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x)
}

/// Coefficientwise comparison of two characteristic polynomials.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub label: String,
    pub expected: Vec<(f64, f64)>,
    pub numeric: Vec<(f64, f64)>,
    pub max_residual: f64,
    /// Index of the worst coefficient.
    pub worst_coefficient: usize,
    pub passed: bool,
}

fn compare(label: &str, expected: &[Complex64], numeric: &[Complex64], tol: f64) -> Comparison {
    let (worst, max_residual) = expected
        .iter()
        .zip(numeric)
        .map(|(e, v)| (e - v).norm())
        .enumerate()
        .fold((0, 0.0), |acc, (i, r)| if r > acc.1 { (i, r) } else { acc });
    Comparison {
        label: label.into(),
        expected: expected.iter().map(|z| (z.re, z.im)).collect(),
        numeric: numeric.iter().map(|z| (z.re, z.im)).collect(),
        max_residual,
        worst_coefficient: worst,
        passed: max_residual <= tol,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub m: usize,
    pub tol: f64,
    pub loop0_error: f64,
    pub loop1_error: f64,
    pub comparisons: Vec<Comparison>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.passed)
    }

    /// One line per failed comparison naming the offending coefficient.
    pub fn failures(&self) -> Vec<String> {
        self.comparisons
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                let i = c.worst_coefficient;
                format!(
                    "{}: coefficient of X^{i} expected {:.3e}{:+.3e}i, got {:.3e}{:+.3e}i (|diff| = {:.3e} > {:.1e})",
                    c.label, c.expected[i].0, c.expected[i].1, c.numeric[i].0, c.numeric[i].1, c.max_residual, self.tol
                )
            })
            .collect()
    }
}

/// Compares the numeric loops with `Xⁿ − 1`, `(X − 1)^{n−1}(X − e^{2πiγ})`
/// and `∏(X − e^{−2πiβ_k})` for `(M_0M_1)⁻¹`.
pub fn validate(n: usize, m: usize, tol: f64) -> Result<OracleReport> {
    let params = hyp_params(n, m)?;
    let m0 = monodromy_loop(&params, LoopAround::Zero, LoopOptions::default(), tol)?;
    let m1 = monodromy_loop(&params, LoopAround::One, LoopOptions::default(), tol)?;

    let mut xn1 = vec![Complex64::new(0.0, 0.0); n + 1];
    xn1[0] = Complex64::new(-1.0, 0.0);
    xn1[n] = Complex64::new(1.0, 0.0);
    let c0 = compare("loop 0 vs X^n - 1", &xn1, &char_poly_c(&m0.matrix), tol);

    let gamma = rational_to_f64(&params.gamma);
    let mut roots1 = vec![Complex64::new(1.0, 0.0); n - 1];
    roots1.push(e2pii(gamma));
    let c1 = compare("loop 1 vs {1^(n-1), exp(2 pi i gamma)}", &poly_from_roots(&roots1), &char_poly_c(&m1.matrix), tol);

    // eigenvalues of (M_0M_1)⁻¹ are the reciprocals of those of M_0M_1
    let prod = &m0.matrix * &m1.matrix;
    let mu = eigenvalues_c(&prod);
    if mu.iter().any(|z| z.norm() < f64::EPSILON) {
        return Err(Error::InvariantFailure("M_0·M_1 is numerically singular".into()));
    }
    let inv_mu: Vec<Complex64> = mu.iter().map(|z| z.inv()).collect();
    let roots_inf: Vec<Complex64> = params.beta.iter().map(|b| e2pii(-rational_to_f64(b))).collect();
    let c2 = compare("(M0 M1)^-1 vs prod(X - exp(-2 pi i beta_k))", &poly_from_roots(&roots_inf), &poly_from_roots(&inv_mu), tol);

    Ok(OracleReport { n, m, tol, loop0_error: m0.est_error, loop1_error: m1.est_error, comparisons: vec![c0, c1, c2] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rank_one_system() {
        let sys = hyp_system(&hyp_params(1, 1).unwrap());
        assert_eq!(sys.a, vec![-1.0, 1.0]);
        assert_eq!(sys.b, vec![0.5, 1.0]);
        let x = c(0.25);
        let a = sys.matrix(x).unwrap()[(0, 0)];
        let expected = (c(-1.0) - x * 0.5) / (x * (x - 1.0));
        assert!((a - expected).norm() < 1e-14);
        assert!(matches!(sys.matrix(c(0.0)), Err(Error::Pole(_))));
        assert!(matches!(sys.matrix(c(1.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn residue_char_poly() {
        let params = hyp_params(3, 2).unwrap();
        let sys = hyp_system(&params);
        let cp = char_poly_c(&sys.residue_at_zero());
        for (got, want) in cp.iter().zip(&sys.a) {
            assert!((got - c(*want)).norm() < 1e-12);
        }
    }

    #[test]
    fn loops_for_2_1() {
        let params = hyp_params(2, 1).unwrap();
        let m0 = monodromy_loop(&params, LoopAround::Zero, LoopOptions::default(), 1e-6).unwrap();
        let cp = char_poly_c(&m0.matrix);
        assert!((cp[0] + 1.0).norm() < 1e-6 && cp[1].norm() < 1e-6);
        let m1 = monodromy_loop(&params, LoopAround::One, LoopOptions::default(), 1e-6).unwrap();
        let cp = char_poly_c(&m1.matrix);
        // {1, −1}: X² − 1
        assert!((cp[0] + 1.0).norm() < 1e-6 && cp[1].norm() < 1e-6);
    }

    #[test]
    fn validate_small_pairs() {
        for (n, m, tol) in [(2, 1, 1e-6), (1, 1, 1e-6), (3, 2, 1e-5)] {
            let r = validate(n, m, tol).unwrap();
            assert!(r.passed(), "({n},{m}): {:?}", r.failures());
        }
    }

    #[test]
    fn determinant_of_loop0() {
        for n in 1..=4 {
            let params = hyp_params(n, 1).unwrap();
            let m0 = monodromy_loop(&params, LoopAround::Zero, LoopOptions::default(), 1e-6).unwrap();
            let expected = if n % 2 == 1 { 1.0 } else { -1.0 };
            assert!((m0.matrix.determinant() - c(expected)).norm() < 1e-6);
        }
    }

    #[test]
    fn reversal_and_homotopy() {
        let params = hyp_params(3, 2).unwrap();
        for which in [LoopAround::Zero, LoopAround::One] {
            let fwd = monodromy_loop(&params, which, LoopOptions::default(), 1e-6).unwrap();
            let back = monodromy_loop(&params, which, LoopOptions { reversed: true, ..Default::default() }, 1e-6).unwrap();
            let prod = &fwd.matrix * &back.matrix;
            assert!((prod - CMat::identity(3, 3)).iter().all(|z| z.norm() < 1e-6));
            let small = monodromy_loop(&params, which, LoopOptions { radius: 0.4, ..Default::default() }, 1e-6).unwrap();
            assert!((&small.matrix - &fwd.matrix).iter().all(|z| z.norm() < 1e-6));
        }
    }

    #[test]
    fn char_poly_of_diagonal() {
        let m = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2.0), c(3.0)]));
        let cp = char_poly_c(&m);
        assert_eq!(cp, vec![c(6.0), c(-5.0), c(1.0)]);
    }
}
