//! The `verify` grid: exact invariants plus the numeric oracle for every
//! coprime pair below a bound.

use airy_stokes::cyclotomic::{check_coprime, CycNum, CycPoly};
use airy_stokes::hypergeom::{gamma_matches_reflection, hyp_params};
use airy_stokes::stokes::lower_is_regular;
use airy_stokes::{airy_stokes, build_monodromy, check_chain, is_generic, is_regular_unipotent, oracle, theta0, ExactMat, StokesData};
use rayon::prelude::*;
use serde::Serialize;

pub const CHAIN_BOUND: usize = 10;
pub const ORACLE_MAX_N: usize = 5;
pub const ORACLE_TOL: f64 = 1e-5;

#[derive(Clone, Debug, Serialize)]
pub struct PairResult {
    pub n: usize,
    pub m: usize,
    pub exact: Result<(), String>,
    /// `None` when the pair is outside the chain bound.
    pub chain: Option<Result<(), String>>,
    /// `None` when `n` exceeds the oracle range.
    pub oracle: Option<Result<(), String>>,
}

impl PairResult {
    pub fn passed(&self) -> bool {
        self.exact.is_ok()
            && self.chain.as_ref().is_none_or(Result::is_ok)
            && self.oracle.as_ref().is_none_or(Result::is_ok)
    }
}

pub fn coprime_pairs(bound: usize) -> Vec<(usize, usize)> {
    (2..=bound)
        .flat_map(|s| (1..s).map(move |n| (n, s - n)))
        .filter(|&(n, m)| check_coprime(n, m).is_ok())
        .collect()
}

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn exact_suite(n: usize, m: usize) -> Result<(), String> {
    let err = |e: airy_stokes::Error| e.to_string();
    let data = airy_stokes(n, m).map_err(err)?;
    let order = n + m;
    ensure(is_regular_unipotent(&data.s_b), "S_b is not regular unipotent")?;
    ensure(lower_is_regular(&data).map_err(err)?, "rank(S_mb + λ_n) ≠ n − 1")?;
    ensure(data.sequence().len() == 2 * order, "sequence length")?;

    let md = build_monodromy(n, m).map_err(err)?;
    let mut lower = vec![CycNum::zero(order); n];
    lower[0] = CycNum::from_int(order, -1);
    ensure(md.t0.char_poly().map_err(err)? == CycPoly::monic_from_lower(order, &lower).map_err(err)?, "char poly of T0")?;
    let lam_rev: Vec<CycNum> = md.lambda.iter().rev().cloned().collect();
    ensure(
        md.tinf_inv.char_poly().map_err(err)? == CycPoly::monic_from_lower(order, &lam_rev).map_err(err)?,
        "char poly of T∞⁻¹",
    )?;
    ensure(md.t1.one_minus().map_err(err)?.rank() == 1, "rank(1 − T1) ≠ 1")?;
    let expected_trace = &CycNum::from_int(order, n as i64 - 1) - &md.lambda[n - 1];
    ensure(md.t1.trace().map_err(err)? == expected_trace, "trace(T1) ≠ n − 1 − λ_n")?;
    ensure(gamma_matches_reflection(&hyp_params(n, m).map_err(err)?, &md), "exp(2πiγ) ≠ −λ_n")?;
    ensure(is_generic(theta0(n, m), n, m).map_err(err)?, "θ_0 is a Stokes direction")?;

    if m == 1 {
        let ones = ExactMat::from_fn(order, n, n, |i, j| if i <= j { CycNum::one(order) } else { CycNum::zero(order) });
        ensure(data.s_b == ones, "m = 1: S_b is not all-ones")?;
        ensure(data.s_mb == ones.transpose().neg(), "m = 1: S_mb is not all −1")?;
    }
    let json = serde_json::to_string(&data).map_err(|e| e.to_string())?;
    let back: StokesData = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    ensure(back == data, "JSON round trip")
}

fn chain_suite(n: usize, m: usize) -> Result<(), String> {
    let report = check_chain(n, m).map_err(|e| e.to_string())?;
    match report.checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(format!("{} failed: {}", c.label, c.first_difference.clone().unwrap_or_default())),
    }
}

fn oracle_suite(n: usize, m: usize) -> Result<(), String> {
    let report = oracle::validate(n, m, ORACLE_TOL).map_err(|e| e.to_string())?;
    if report.passed() {
        Ok(())
    } else {
        Err(report.failures().join("; "))
    }
}

pub fn run_pair(n: usize, m: usize) -> PairResult {
    PairResult {
        n,
        m,
        exact: exact_suite(n, m),
        chain: (n + m <= CHAIN_BOUND).then(|| chain_suite(n, m)),
        oracle: (n <= ORACLE_MAX_N).then(|| oracle_suite(n, m)),
    }
}

pub fn run_grid(bound: usize) -> Vec<PairResult> {
    coprime_pairs(bound).into_par_iter().map(|(n, m)| run_pair(n, m)).collect()
}

fn cell(r: &Option<Result<(), String>>) -> &'static str {
    match r {
        None => "-",
        Some(Ok(())) => "pass",
        Some(Err(_)) => "FAIL",
    }
}

pub fn render_table(results: &[PairResult]) -> String {
    let mut out = format!("{:>3} {:>3}  {:<6} {:<6} {:<6}\n", "n", "m", "exact", "chain", "oracle");
    for r in results {
        let exact = if r.exact.is_ok() { "pass" } else { "FAIL" };
        out.push_str(&format!("{:>3} {:>3}  {:<6} {:<6} {:<6}\n", r.n, r.m, exact, cell(&r.chain), cell(&r.oracle)));
        for e in [r.exact.as_ref().err(), r.chain.as_ref().and_then(|c| c.as_ref().err()), r.oracle.as_ref().and_then(|c| c.as_ref().err())]
            .into_iter()
            .flatten()
        {
            out.push_str(&format!("         {e}\n"));
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("{} pairs, {} failed\n", results.len(), failed));
    out
}
