//! Acceptance suite. One line per criterion; exits non-zero if any fails.
//!
//! Run with `cargo test -p airy-stokes --test acceptance`.

use std::time::{Duration, Instant};

use airy_stokes::cyclotomic::check_coprime;
use airy_stokes::hypergeom::{gamma_matches_reflection, QuiverNode};
use airy_stokes::linalg::minus_scalar;
use airy_stokes::ordering::dominance_order_float;
use airy_stokes::stokes::block_diagonal;
use airy_stokes::{
    airy_stokes, assemble, build_monodromy, check_chain, dominance_order, hyp_params, is_generic, lambda_coeffs,
    oracle, theta0, zeta_pow, CycNum, ExactMat, Quiver,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RIGID_LIMIT: Duration = Duration::from_secs(1);
const REGULAR_LIMIT: Duration = Duration::from_secs(30);
const CHAIN_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_PAIR_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_TOL: f64 = 1e-5;
const GRID_BOUND: usize = 12;
const LAMBDA_BOUND: usize = 24;
const CHAIN_BOUND: usize = 10;
const DOMINANCE_MAX_N: usize = 200;
const QUIVER_CASES: u64 = 20;

type Outcome = Result<String, String>;

fn pairs(bound: usize) -> Vec<(usize, usize)> {
    (2..=bound)
        .flat_map(|s| (1..s).map(move |n| (n, s - n)))
        .filter(|&(n, m)| check_coprime(n, m).is_ok())
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: airy_stokes::Error) -> String {
    err.to_string()
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {:.2?}, limit {limit:?}", elapsed))
}

fn upper_ones(order: usize, n: usize) -> ExactMat {
    ExactMat::from_fn(order, n, n, |i, j| if i <= j { CycNum::one(order) } else { CycNum::zero(order) })
}

fn rigid_closed_form() -> Outcome {
    let start = Instant::now();
    for n in 2..=8 {
        let order = n + 1;
        let data = airy_stokes(n, 1).map_err(e)?;
        let minus_lower = upper_ones(order, n).transpose().neg();
        ensure(data.s_b == upper_ones(order, n), || format!("n = {n}: S_b is not all-ones upper triangular"))?;
        ensure(data.s_mb == minus_lower, || format!("n = {n}: S_mb is not all-(-1) lower triangular"))?;
        for (j, s) in data.sequence().iter().enumerate().filter(|(j, _)| j % 2 == 0) {
            let inv = s.inverse().map_err(e)?;
            ensure(inv == minus_lower, || format!("n = {n}: inverse of S_{} is not all-(-1) lower triangular", j + 1))?;
        }
    }
    let t = start.elapsed();
    within(t, RIGID_LIMIT)?;
    Ok(format!("n = 2..8, m = 1; S_2k all-ones, S_2k-1^-1 = S_mb all -1 ({t:.2?})"))
}

fn regular_unipotence() -> Outcome {
    let start = Instant::now();
    let grid = pairs(GRID_BOUND);
    for &(n, m) in &grid {
        let data = airy_stokes(n, m).map_err(e)?;
        let order = n + m;
        let id = CycNum::one(order);
        let r_b = minus_scalar(&data.s_b, &id).map_err(e)?.rank();
        ensure(r_b == n - 1, || format!("({n}, {m}): rank(S_b - I) = {r_b}"))?;
        let r_mb = minus_scalar(&data.s_mb, &(-&data.lambda[n - 1])).map_err(e)?.rank();
        ensure(r_mb == n - 1, || format!("({n}, {m}): rank(S_mb + λ_n) = {r_mb}"))?;
    }
    let t = start.elapsed();
    within(t, REGULAR_LIMIT)?;
    Ok(format!("{} coprime pairs with n + m ≤ {GRID_BOUND} ({t:.2?})", grid.len()))
}

fn entry_membership() -> Outcome {
    let grid = pairs(GRID_BOUND);
    for &(n, m) in &grid {
        let data = airy_stokes(n, m).map_err(e)?;
        let allowed = &data.lambda[..n - 1];
        let minus_allowed: Vec<CycNum> = allowed.iter().map(|l| -l).collect();
        let minus_ln = -&data.lambda[n - 1];
        for i in 0..n {
            ensure(data.s_b.get(i, i).is_one(), || format!("({n}, {m}): S_b[{i}][{i}] ≠ 1"))?;
            ensure(*data.s_mb.get(i, i) == minus_ln, || format!("({n}, {m}): S_mb[{i}][{i}] ≠ -λ_n"))?;
            for j in 0..n {
                let (b, mb) = (data.s_b.get(i, j), data.s_mb.get(i, j));
                if i < j {
                    ensure(allowed.contains(b), || format!("({n}, {m}): S_b[{i}][{j}] = {b} not a λ_k, k < n"))?;
                    ensure(mb.is_zero(), || format!("({n}, {m}): S_mb[{i}][{j}] ≠ 0"))?;
                } else if i > j {
                    ensure(b.is_zero(), || format!("({n}, {m}): S_b[{i}][{j}] ≠ 0"))?;
                    ensure(minus_allowed.contains(mb), || format!("({n}, {m}): S_mb[{i}][{j}] = {mb} not a -λ_k, k < n"))?;
                }
            }
        }
    }
    Ok(format!("{} coprime pairs with n + m ≤ {GRID_BOUND}", grid.len()))
}

fn lambda_nonzero() -> Outcome {
    let grid = pairs(LAMBDA_BOUND);
    for &(n, m) in &grid {
        let lambda = lambda_coeffs(n, m).map_err(e)?;
        if let Some(i) = lambda.iter().position(CycNum::is_zero) {
            return Err(format!("({n}, {m}): λ_{} = 0", i + 1));
        }
    }
    Ok(format!("{} coprime pairs with n + m ≤ {LAMBDA_BOUND}", grid.len()))
}

fn pseudo_reflection() -> Outcome {
    let grid = pairs(GRID_BOUND);
    for &(n, m) in &grid {
        let order = n + m;
        let md = build_monodromy(n, m).map_err(e)?;
        let rank = md.t1.one_minus().map_err(e)?.rank();
        ensure(rank == 1, || format!("({n}, {m}): rank(1 - T1) = {rank}"))?;
        let trace = md.t1.trace().map_err(e)?;
        let expected = CycNum::from_int(order, n as i64 - 1).try_sub(&md.lambda[n - 1]).map_err(e)?;
        ensure(trace == expected, || format!("({n}, {m}): trace(T1) = {trace}, expected {expected}"))?;
        let power = zeta_pow(order, -((n * (n + 1) / 2) as i64));
        let closed = if n % 2 == 1 { power } else { -&power };
        ensure(closed == -&md.lambda[n - 1], || format!("({n}, {m}): (-1)^(n+1) ζ^(-n(n+1)/2) ≠ -λ_n"))?;
        let params = hyp_params(n, m).map_err(e)?;
        ensure(gamma_matches_reflection(&params, &md), || format!("({n}, {m}): exp(2πiγ) ≠ -λ_n"))?;
    }
    Ok(format!("{} coprime pairs with n + m ≤ {GRID_BOUND}", grid.len()))
}

fn operator_chain() -> Outcome {
    let start = Instant::now();
    let grid = pairs(CHAIN_BOUND);
    for &(n, m) in &grid {
        let report = check_chain(n, m).map_err(e)?;
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!("({n}, {m}): {} failed: {}", c.label, c.first_difference.clone().unwrap_or_default()));
        }
    }
    let t = start.elapsed();
    within(t, CHAIN_LIMIT)?;
    Ok(format!("C1-C6 on {} coprime pairs with n + m ≤ {CHAIN_BOUND} ({t:.2?})", grid.len()))
}

fn genericity() -> Outcome {
    let grid = pairs(GRID_BOUND);
    for &(n, m) in &grid {
        ensure(is_generic(theta0(n, m), n, m).map_err(e)?, || format!("({n}, {m}): θ_0 is a Stokes direction"))?;
    }
    Ok(format!("θ_0 = 1/(3n(n+m)) turn on {} coprime pairs with n + m ≤ {GRID_BOUND}", grid.len()))
}

fn dominance() -> Outcome {
    for n in 1..=DOMINANCE_MAX_N {
        let (float, _) = dominance_order_float(n);
        ensure(dominance_order(n) == float, || format!("n = {n}: D-rule differs from float sort"))?;
    }
    let chain = dominance_order(7).chain();
    ensure(chain == "1 > ζ^6 > ζ > ζ^5 > ζ^2 > ζ^4 > ζ^3", || format!("n = 7: got {chain}"))?;
    Ok(format!("n ≤ {DOMINANCE_MAX_N}; n = 7: {chain}"))
}

fn numeric_oracle() -> Outcome {
    let mut worst: (f64, (usize, usize)) = (0.0, (0, 0));
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for n in 1..=5 {
        for m in 1..=4 {
            if check_coprime(n, m).is_err() {
                continue;
            }
            count += 1;
            let start = Instant::now();
            let report = oracle::validate(n, m, ORACLE_TOL).map_err(e)?;
            let t = start.elapsed();
            slowest = slowest.max(t);
            ensure(t < ORACLE_PAIR_LIMIT, || format!("({n}, {m}): took {t:.2?}, limit {ORACLE_PAIR_LIMIT:?}"))?;
            // loop 0 against Xⁿ − 1, loop 1 against (X − 1)^{n−1}(X − e^{2πiγ})
            for c in &report.comparisons[..2] {
                ensure(c.passed, || format!("({n}, {m}): {}", report.failures().join("; ")))?;
                if c.max_residual > worst.0 {
                    worst = (c.max_residual, (n, m));
                }
            }
        }
    }
    Ok(format!(
        "{count} pairs, n ≤ 5, m ≤ 4; worst residual {:.2e} at {:?}, tol {ORACLE_TOL:e}; slowest pair {slowest:.2?}",
        worst.0, worst.1
    ))
}

fn random_entry(rng: &mut ChaCha8Rng, order: usize) -> CycNum {
    (0..order).fold(CycNum::zero(order), |acc, k| {
        let c = CycNum::from_int(order, rng.gen_range(-2..=2));
        acc.try_add(&c.try_mul(&zeta_pow(order, k as i64)).unwrap()).unwrap()
    })
}

fn random_mat(rng: &mut ChaCha8Rng, order: usize, rows: usize, cols: usize) -> ExactMat {
    ExactMat::from_fn(order, rows, cols, |_, _| random_entry(rng, order))
}

fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
    let order = [3, 4, 5, 7, 8][rng.gen_range(0..5)];
    let psi_dim = rng.gen_range(1..=3);
    let count = rng.gen_range(2..=4);
    loop {
        let nodes: Vec<QuiverNode> = (0..count)
            .map(|k| {
                let phi_dim = rng.gen_range(1..=3);
                QuiverNode {
                    exponent: k,
                    phi_dim,
                    u: random_mat(rng, order, phi_dim, psi_dim),
                    v: random_mat(rng, order, psi_dim, phi_dim),
                }
            })
            .collect();
        if let Ok(q) = Quiver::new(order, psi_dim, nodes, "random") {
            return q;
        }
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, order: usize, dim: usize) -> ExactMat {
    loop {
        let g = random_mat(rng, order, dim, dim);
        if g.inverse().is_ok() {
            return g;
        }
    }
}

/// Entry `(r, c)` of `(S_b, S_mb)` summed directly from the node data.
fn hand_blocks(q: &Quiver) -> (ExactMat, ExactMat) {
    let order = q.order;
    let owner: Vec<(usize, usize)> =
        q.nodes.iter().enumerate().flat_map(|(k, node)| (0..node.phi_dim).map(move |a| (k, a))).collect();
    let dim = owner.len();
    let uv = |r: usize, c: usize| {
        let ((i, a), (j, b)) = (owner[r], owner[c]);
        (0..q.psi_dim).fold(CycNum::zero(order), |acc, p| {
            acc.try_add(&q.nodes[i].u.get(a, p).try_mul(q.nodes[j].v.get(p, b)).unwrap()).unwrap()
        })
    };
    let delta = |r: usize, c: usize| if r == c { CycNum::one(order) } else { CycNum::zero(order) };
    let s_b = ExactMat::from_fn(order, dim, dim, |r, c| {
        if owner[r].0 < owner[c].0 {
            uv(r, c)
        } else if owner[r].0 == owner[c].0 {
            delta(r, c)
        } else {
            CycNum::zero(order)
        }
    });
    let s_mb = ExactMat::from_fn(order, dim, dim, |r, c| {
        if owner[r].0 > owner[c].0 {
            -&uv(r, c)
        } else if owner[r].0 == owner[c].0 {
            delta(r, c).try_sub(&uv(r, c)).unwrap()
        } else {
            CycNum::zero(order)
        }
    });
    (s_b, s_mb)
}

fn general_assembly() -> Outcome {
    let mut blocky = 0;
    for seed in 0..QUIVER_CASES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng);
        if q.nodes.iter().any(|node| node.phi_dim > 1) {
            blocky += 1;
        }
        let (s_b, s_mb) = assemble(&q).map_err(e)?;
        let (hb, hmb) = hand_blocks(&q);
        ensure(s_b == hb && s_mb == hmb, || format!("seed {seed}: assemble differs from the block formula"))?;

        let g: Vec<ExactMat> = q.nodes.iter().map(|node| random_invertible(&mut rng, q.order, node.phi_dim)).collect();
        let big = block_diagonal(q.order, &g).map_err(e)?;
        let big_inv = big.inverse().map_err(e)?;
        let (gb, gmb) = assemble(&q.regauge(&g).map_err(e)?).map_err(e)?;
        let conj = |s: &ExactMat| big_inv.try_mul(s).and_then(|x| x.try_mul(&big));
        ensure(gb == conj(&s_b).map_err(e)?, || format!("seed {seed}: regauged S_b ≠ G⁻¹ S_b G"))?;
        ensure(gmb == conj(&s_mb).map_err(e)?, || format!("seed {seed}: regauged S_mb ≠ G⁻¹ S_mb G"))?;
    }
    ensure(blocky > 0, || "no case with phi_dim > 1".into())?;
    Ok(format!("{QUIVER_CASES} seeded quivers ({blocky} with phi_dim > 1), block formula and gauge conjugation"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("rigid closed form", rigid_closed_form),
        ("regular unipotence", regular_unipotence),
        ("entry membership and diagonal", entry_membership),
        ("lambda coefficients non-zero", lambda_nonzero),
        ("pseudo-reflection identity", pseudo_reflection),
        ("operator chain", operator_chain),
        ("genericity of theta_0", genericity),
        ("dominance order", dominance),
        ("numeric oracle", numeric_oracle),
        ("general assembly", general_assembly),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
