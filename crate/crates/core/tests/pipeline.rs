use airy_stokes::hypergeom::QuiverNode;
use airy_stokes::{
    airy_stokes, assemble, build_airy_quiver, build_monodromy, lambda_coeffs, zeta_pow, CycNum, ExactMat, Quiver,
    StokesData,
};

#[test]
fn quiver_assembly_matches_pipeline() {
    for (n, m) in [(2, 1), (3, 2), (4, 3), (5, 2), (6, 5)] {
        let data = airy_stokes(n, m).unwrap();
        let (s_b, s_mb) = assemble(&build_airy_quiver(n, m).unwrap()).unwrap();
        assert_eq!(s_b, data.s_b);
        assert_eq!(s_mb, data.s_mb);
        assert_eq!(data.s_mb.try_mul(&data.s_mb_inv).unwrap(), ExactMat::identity(n + m, n));
    }
}

#[test]
fn rank_one_case() {
    for m in 1..=5 {
        let data = airy_stokes(1, m).unwrap();
        let seq = data.sequence();
        assert_eq!(seq.len(), 2 * (1 + m));
        assert!(seq[1].get(0, 0).is_one());
        assert_eq!(seq[0].inverse().unwrap().get(0, 0), &(-&data.lambda[0]));
    }
}

#[test]
fn pair_2_3() {
    let data = airy_stokes(2, 3).unwrap();
    let z = |k| zeta_pow(5, k);
    let s = -&z(4).try_add(&z(3)).unwrap();
    assert_eq!(data.lambda[0], s);
    assert_eq!(data.s_b.get(0, 1), &s);
    assert_eq!(data.s_mb.get(0, 0), &(-&z(2)));
    assert_eq!(data.s_mb.get(1, 1), &(-&z(2)));
}

#[test]
fn two_node_block_quiver() {
    let order = 3;
    let w = zeta_pow(order, 1);
    let int = |v: i64| CycNum::from_int(order, v);
    let u1 = ExactMat::from_rows(order, vec![vec![int(1), int(0)], vec![int(0), w.clone()]]).unwrap();
    let v1 = ExactMat::from_ints(order, &[&[0, 1], &[2, 0]]).unwrap();
    let u2 = ExactMat::from_ints(order, &[&[1, 1], &[0, 1]]).unwrap();
    let v2 = ExactMat::from_ints(order, &[&[1, 0], &[1, 1]]).unwrap();
    let q = Quiver::new(
        order,
        2,
        vec![
            QuiverNode { exponent: 0, phi_dim: 2, u: u1.clone(), v: v1 },
            QuiverNode { exponent: 1, phi_dim: 2, u: u2.clone(), v: v2.clone() },
        ],
        "test",
    )
    .unwrap();
    let (s_b, s_mb) = assemble(&q).unwrap();
    assert_eq!((s_b.rows(), s_b.cols()), (4, 4));
    // u1·v2 = [[1, 0], [ω, ω]]
    let expected = ExactMat::from_rows(order, vec![vec![int(1), int(0)], vec![w.clone(), w.clone()]]).unwrap();
    assert_eq!(s_b.block(0, 2, 2, 2), expected);
    assert!(s_b.block(2, 0, 2, 2).is_zero());
    assert!(s_mb.block(0, 2, 2, 2).is_zero());
    assert_eq!(s_mb.block(2, 2, 2, 2), u2.try_mul(&v2).unwrap().one_minus().unwrap());
}

#[test]
fn lambda_and_monodromy_agree() {
    let md = build_monodromy(4, 3).unwrap();
    assert_eq!(md.lambda, lambda_coeffs(4, 3).unwrap());
    assert_eq!(md.t0.pow(4).unwrap(), ExactMat::identity(7, 4));
}

#[test]
fn json_round_trip() {
    let data = airy_stokes(3, 4).unwrap();
    let json = serde_json::to_string(&data).unwrap();
    assert_eq!(serde_json::from_str::<StokesData>(&json).unwrap(), data);
    assert_eq!(json, serde_json::to_string(&airy_stokes(3, 4).unwrap()).unwrap());
}
