use pdg_core::functors::*;
use pdg_core::pdgmod::Module;
use pdg_core::zigzag::ZigzagAlgebra;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alg(n: u32, p: u32, l: u32) -> ZigzagAlgebra {
    ZigzagAlgebra::new(n, p, l).unwrap()
}

#[test]
fn tl_relations_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (n, p) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for l in [0, 1] {
            let a = alg(n, p, l);
            for c in verify_tl_relations(&a, &mut rng).unwrap() {
                assert!(c.passed(), "{n} {p} {l} {} on {}: {:?}", c.relation, c.object, c.certificate);
            }
        }
    }
}

#[test]
fn braid_r2_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (n, p) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for l in [0, 1] {
            let a = alg(n, p, l);
            for i in 1..n {
                for c in verify_braid_r2(&a, i, &mut rng).unwrap() {
                    assert!(c.passed(), "{n} {p} {l} {} on {}: {:?}", c.relation, c.object, c.certificate);
                }
            }
        }
    }
}

#[test]
fn adjunction_data_are_chain_maps() {
    for (n, p) in [(2, 3), (3, 3), (3, 2)] {
        for l in [0, 1] {
            let a = alg(n, p, l);
            for (_, m) in generators(&a).unwrap() {
                for i in 1..n {
                    adjunction_maps(&a, i, &m).unwrap().check().unwrap();
                }
            }
        }
    }
}

#[test]
fn dual_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (n, p) in [(2, 2), (3, 3), (3, 5)] {
        for l in [0, 1] {
            let a = alg(n, p, l);
            for i in 1..n {
                certify_dual(&a, i, &mut rng).unwrap_or_else(|e| panic!("{n} {p} {l} {i}: {e}"));
            }
        }
    }
}

#[test]
fn cap_agrees_with_cells() {
    for (n, p) in [(3, 3), (3, 2)] {
        for l in [0, 1] {
            let a = alg(n, p, l);
            for (_, m) in generators(&a).unwrap() {
                let mm = Module::compile(&a, &m).unwrap();
                for i in 1..n {
                    let x = cap(&a, i, &mm).unwrap().decompose().non_contractible(p);
                    let y = cap_cells(i, &m, p).complex.decompose().non_contractible(p);
                    assert_eq!(x, y);
                }
            }
        }
    }
}

#[test]
fn braid_r3_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [2, 3] {
        for l in [0, 1] {
            let a = alg(3, p, l);
            for c in verify_braid_r3(&a, 1, 2, &mut rng).unwrap() {
                assert!(c.passed(), "{p} {l} {} on {}: {:?}", c.relation, c.object, c.certificate);
            }
        }
    }
}
