use pdg_core::pcomplex::PComplex;
use pdg_core::pdgmod::{find_quasi_iso, ses_extend, ModError, Module, Side};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use pdg_core::resolve::*;
use pdg_core::zigzag::ZigzagAlgebra;

fn alg(n: u32, p: u32, l: u32) -> ZigzagAlgebra {
    ZigzagAlgebra::new(n, p, l).unwrap()
}

#[test]
fn ny_resolutions_are_quasi_isomorphic_to_simples() {
    for p in [2, 3, 5] {
        for n in 2..=4 {
            for lambda in [0, 1] {
                let a = alg(n, p, lambda);
                for i in 1..n {
                    for side in [Side::Left, Side::Right] {
                        let r = ny_resolution(&a, i, side).unwrap_or_else(|e| panic!("{p} {n} {lambda} {i} {side:?}: {e}"));
                        assert!(r.is_quasi_iso(), "{p} {n} {lambda} {i} {side:?}");
                        let dec = r.module.underlying().complex.decompose().non_contractible(p);
                        assert_eq!(dec.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1)]);
                    }
                }
            }
        }
    }
}

#[test]
fn ny_example_shape() {
    let a = alg(2, 3, 1);
    let r = ny_resolution(&a, 1, Side::Left).unwrap();
    let cells: Vec<(u32, i64)> = r.diagram.cells.iter().map(|c| (c.vertex, c.shift)).collect();
    assert_eq!(cells, vec![(1, -4), (2, -3), (2, -1), (1, 0)]);
}

#[test]
fn ses_assembly_matches() {
    for p in [2, 3, 5] {
        let a = alg(4, p, 1);
        for i in 1..4 {
            let d = ny_from_ses(&a, i).unwrap();
            let r = ny_resolution(&a, i, Side::Left).unwrap();
            assert_eq!(d.canonical(), r.diagram.canonical());
        }
    }
}

#[test]
fn tau_transport() {
    let a1 = alg(3, 3, 1);
    let a0 = alg(3, 3, 0);
    let l = ny_resolution(&a1, 2, Side::Left).unwrap();
    let r0 = ny_resolution(&a0, 2, Side::Right).unwrap();
    assert_eq!(l.diagram.tau(&a1).canonical(), r0.diagram.canonical());
}

#[test]
fn ln_resolutions_left() {
    for p in [2, 3, 5] {
        for n in 2..=4 {
            let a = alg(n, p, 0);
            assert!(ln_resolution(&a, Side::Left).unwrap().is_quasi_iso());
        }
    }
    assert!(ln_resolution(&alg(3, 3, 1), Side::Left).is_err());
}

#[test]
fn ln_resolution_right_needs_vanishing_loop() {
    for p in [2, 3, 5] {
        assert!(ln_resolution(&alg(2, p, 0), Side::Right).unwrap().is_quasi_iso());
        for n in 3..=4 {
            let e = ln_resolution(&alg(n, p, 0), Side::Right).unwrap_err();
            assert!(matches!(e, ModError::NotNilpotent { .. }), "{e}");
        }
    }
}

#[test]
fn ses_variant_two_resolves_repeated_simple() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [2, 3, 5] {
        let a = alg(3, p, 1);
        for i in 1..3 {
            let (k, l, m, phi, psi) = ny_ses(&a, i).unwrap();
            let d = ses_extend(&a, &k, &l, &m, &phi, &psi, 2).unwrap();
            let v = PComplex::indecomposable(p, p - 2, 4 - 2 * p as i64);
            let target = Module::simple_tensor(&a, i, Side::Left, &v);
            find_quasi_iso(&a, &d, &target, &mut rng, 20).unwrap();
        }
    }
}

#[test]
fn appendix_maps() {
    for p in [2, 3, 5] {
        for n in 3..=4 {
            let a = alg(n, p, 1);
            for i in 1..=n - 2 {
                let lit = psi_map_literal(&a, i).unwrap();
                assert!(lit.check_chain(&a).is_err());
                let psi = psi_map(&a, i).unwrap();
                psi.check_chain(&a).unwrap_or_else(|e| panic!("psi {p} {n} {i}: {e}"));
                assert_eq!(stable_class(&a, &psi).unwrap(), (1, false), "psi {p} {n} {i}");
                let phi = phi_map(&a, i).unwrap();
                phi.check_chain(&a).unwrap_or_else(|e| panic!("phi {p} {n} {i}: {e}"));
                assert_eq!(stable_class(&a, &phi).unwrap(), (1, false), "phi {p} {n} {i}");
            }
        }
    }
}

#[test]
fn p2_diagram() {
    let a = alg(3, 2, 1);
    let m = phi_map_p2(&a, 1).unwrap();
    m.check_chain(&a).unwrap();
    assert_eq!(m.components(), phi_map(&a, 1).unwrap().components());
}

#[test]
fn projective_and_simple_validate() {
    let a = alg(3, 3, 1);
    for i in 1..=3 {
        for s in [Side::Left, Side::Right] {
            Module::projective(&a, i, s).validate(&a).unwrap();
            Module::simple(&a, i, s).validate(&a).unwrap();
        }
    }
}

