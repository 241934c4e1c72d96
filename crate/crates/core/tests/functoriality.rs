use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subhom_core::{
    build_rips, inclusion_chain_map, induced_on_homology, reduce, FieldMatrix, PointCloud, PrimeField,
    SimplicialComplex,
};

const F3: PrimeField = PrimeField::F3;

fn map(sub: &SimplicialComplex, full: &SimplicialComplex, vertex_map: Option<&[u32]>) -> FieldMatrix {
    let s = reduce(&sub.chain_complex(F3)).unwrap();
    let f = reduce(&full.chain_complex(F3)).unwrap();
    let chain = inclusion_chain_map(sub, full, vertex_map, 1, F3).unwrap();
    induced_on_homology(&s, &f, &chain, 1).unwrap().matrix
}

fn noisy_circle(rng: &mut ChaCha8Rng, n: usize) -> PointCloud {
    let pts: Vec<[f64; 2]> = (0..n)
        .map(|_| {
            let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let r = 1.0 + rng.random_range(-0.05..0.05);
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    PointCloud::from_points(&pts).unwrap()
}

#[test]
fn growing_the_threshold_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let cloud = noisy_circle(&mut rng, 60);
        let (r1, r2, r3) = (0.3, 0.45, 0.8);
        let a = build_rips(&cloud, r1, 2).unwrap();
        let b = build_rips(&cloud, r2, 2).unwrap();
        let c = build_rips(&cloud, r3, 2).unwrap();
        assert_eq!(map(&a, &c, None), map(&b, &c, None).mul(&map(&a, &b, None)));
    }
}

#[test]
fn sub_sample_loop_maps_onto_the_full_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cloud = noisy_circle(&mut rng, 200);
    let mut indices: Vec<usize> = (0..200).filter(|_| rng.random_bool(0.5)).collect();
    indices.sort_unstable();
    let sample = cloud.select(&indices);
    let full = build_rips(&cloud, 0.5, 2).unwrap();
    let sub = build_rips(&sample, 0.5, 2).unwrap();
    let vertex_map: Vec<u32> = indices.iter().map(|&i| i as u32).collect();
    let m = map(&sub, &full, Some(&vertex_map));
    assert_eq!((m.rows(), m.cols()), (1, 1));
    assert_ne!(m.get(0, 0), 0);
}

#[test]
fn relabelled_vertices_keep_orientation() {
    // a square traversed through a vertex map that reverses its order
    let sq = SimplicialComplex::closure(4, &[[0u32, 1], [1, 2], [2, 3], [0, 3]]).unwrap();
    let reversed: Vec<u32> = vec![3, 2, 1, 0];
    let m = map(&sq, &sq, Some(&reversed));
    assert_eq!((m.rows(), m.cols()), (1, 1));
    // reflection reverses the loop
    assert_eq!(m.get(0, 0), F3.neg(1));
}

#[test]
fn missing_simplices_are_reported() {
    let hollow = SimplicialComplex::closure(3, &[[0u32, 1], [1, 2]]).unwrap();
    let other = SimplicialComplex::closure(3, &[[0u32, 1], [0, 2]]).unwrap();
    assert!(inclusion_chain_map(&hollow, &other, None, 1, F3).is_err());
}
