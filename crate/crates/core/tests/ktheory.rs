use pdg_core::arith::{cyc_identity, cyc_matmul, CycInt};
use pdg_core::functors::Functor;
use pdg_core::ktheory::*;
use pdg_core::pdgmod::{cone_cells, CellMap, Side};
use pdg_core::resolve::{ny_from_ses, ny_resolution};
use pdg_core::zigzag::ZigzagAlgebra;
use proptest::prelude::*;

fn alg(n: u32, p: u32, l: u32) -> ZigzagAlgebra {
    ZigzagAlgebra::new(n, p, l).unwrap()
}

fn poly(p: u32, terms: &[(i64, i64)]) -> CycInt {
    terms.iter().fold(CycInt::zero(p), |acc, &(e, c)| &acc + &(&CycInt::q_pow(p, e) * &CycInt::from_int(p, c)))
}

#[test]
fn gram_entries_n2() {
    let a = alg(2, 3, 1);
    let c = gram(&a);
    let (p1, p2) = (K0Vector::unit(3, 2, 1), K0Vector::unit(3, 2, 2));
    assert_eq!(pairing(&c, &p1, &p1), CycInt::one(3));
    assert_eq!(pairing(&c, &p2, &p2), poly(3, &[(0, 1), (2, 1)]));
    assert_eq!(pairing(&c, &p1, &p2), CycInt::q_pow(3, 1));
}

#[test]
fn simple_l1_symbol() {
    let a = alg(2, 3, 1);
    let s = simple_symbol(&a, 1).unwrap();
    assert_eq!(s.coords, vec![poly(3, &[(0, 1), (2, 1)]), poly(3, &[(3, 1), (5, 1)])]);
}

#[test]
fn resolution_symbols_are_dual_to_projectives() {
    for p in [2, 3, 5] {
        for n in 2..=4 {
            for l in [0, 1] {
                let a = alg(n, p, l);
                let c = gram(&a);
                let dual = dual_basis(&a).unwrap();
                let top = if l == 0 { n } else { n - 1 };
                for j in 1..=top {
                    let s = simple_symbol(&a, j).unwrap();
                    let col: Vec<CycInt> = dual.iter().map(|r| r[j as usize - 1].clone()).collect();
                    assert_eq!(s.coords, col, "{p} {n} {l} {j}");
                    for i in 1..=n {
                        let e = pairing(&c, &K0Vector::unit(p, n as usize, i), &s);
                        assert_eq!(e, CycInt::from_int(p, (i == j) as i64));
                    }
                }
            }
        }
    }
}

#[test]
fn gram_is_perfect() {
    for p in [2, 3, 5, 7] {
        for n in 2..=4 {
            assert!(gram_perfect(&alg(n, p, 1)), "{p} {n}");
        }
    }
}

#[test]
fn gram_form_bar_symmetry_fails_on_the_diagonal() {
    for p in [2, 3, 5] {
        let c = gram(&alg(3, p, 1));
        assert!(!form_is_hermitian(&c));
        assert_eq!(hermitian_twist(&c), None);
    }
}

#[test]
fn shifts_act_on_symbols() {
    for p in [2, 3, 5] {
        let a = alg(3, p, 1);
        let m = ny_resolution(&a, 2, Side::Left).unwrap().diagram;
        let s = symbol_cells(&m, 3, p);
        assert_eq!(symbol_cells(&m.shift(p, 1, 0), 3, p), s.scale(&CycInt::from_int(p, -1)));
        assert_eq!(symbol_cells(&m.shift(p, 2, 0), 3, p), s);
        assert_eq!(symbol_cells(&m.shift(p, 2, 0), 3, p), s.shift(-2 * p as i64));
        assert_eq!(symbol_cells(&m.degree_shift(3), 3, p), s.shift(3));
    }
}

#[test]
fn symbols_vanish_on_cones_of_identities_and_match_ses_outputs() {
    for p in [2, 3, 5] {
        for n in 2..=4 {
            let a = alg(n, p, 1);
            for i in 1..n {
                let m = ny_resolution(&a, i, Side::Left).unwrap().diagram;
                let mut id = CellMap::zero(m.len(), 0);
                for c in 0..m.len() {
                    id.push(c, c, a.element(pdg_core::zigzag::NormalPath::idempotent(m.cells[c].vertex)));
                }
                let cone = cone_cells(&m, &m, &id, p, a.field());
                assert!(symbol_cells(&cone, n, p).is_zero());
                let ses = ny_from_ses(&a, i).unwrap();
                assert_eq!(symbol_cells(&ses, n, p), symbol_cells(&m, n, p));
            }
        }
    }
}

#[test]
fn tl_matrices_and_self_adjointness() {
    for (n, p) in [(2, 2), (3, 2), (3, 3), (4, 3), (4, 5)] {
        for l in [0, 1] {
            let a = alg(n, p, l);
            let c = gram(&a);
            let us: Vec<_> = (1..n).map(|i| decat(&a, Functor::U(i)).unwrap()).collect();
            for (name, ok) in tl_presentation(&us, p) {
                assert!(ok, "{n} {p} {l} {name}");
            }
            for u in &us {
                assert!(is_self_adjoint(&c, u));
            }
        }
    }
}

#[test]
fn decat_is_multiplicative() {
    let a = alg(3, 3, 1);
    let gens = [Functor::U(1), Functor::U(2), Functor::T(1), Functor::T(2), Functor::TPrime(1), Functor::TPrime(2)];
    for f in gens {
        for g in gens {
            let fg = decat_word(&a, &[f, g]).unwrap();
            let prod = cyc_matmul(&decat(&a, f).unwrap(), &decat(&a, g).unwrap(), 3);
            assert_eq!(fg, prod, "{f:?} {g:?}");
        }
    }
    for i in 1..3 {
        let t = decat(&a, Functor::T(i)).unwrap();
        let tp = decat(&a, Functor::TPrime(i)).unwrap();
        assert_eq!(cyc_matmul(&t, &tp, 3), cyc_identity(3, 3));
    }
}

#[test]
fn braid_classes_are_linear_in_u() {
    for p in [2, 3, 5, 7] {
        for n in 2..=5 {
            let a = alg(n, p, 1);
            let mut ts = Vec::new();
            for i in 1..n {
                let u = decat(&a, Functor::U(i)).unwrap();
                let t = decat(&a, Functor::T(i)).unwrap();
                let tp = decat(&a, Functor::TPrime(i)).unwrap();
                assert_eq!(t, id_plus(&u, &CycInt::q_pow(p, 1)));
                assert_eq!(tp, id_plus(&u, &CycInt::q_pow(p, -1)));
                let printed = id_plus(&u, &-&CycInt::q_pow(p, p as i64 + 1));
                let printed_prime = id_plus(&u, &-&CycInt::q_pow(p, p as i64 - 1));
                assert!(equal_at_root(&t, &printed));
                assert!(equal_at_root(&tp, &printed_prime));
                assert_eq!(t == printed, p == 2);
                ts.push(t);
            }
            for (name, ok) in braid_relations(&ts, p) {
                assert!(ok, "{p} {n} {name}");
            }
        }
    }
}

proptest! {
    #[test]
    fn pairing_is_semilinear(a in -6i64..6, b in -6i64..6, x in proptest::collection::vec(-3i64..4, 3), y in proptest::collection::vec(-3i64..4, 3)) {
        let p = 3;
        let c = gram(&alg(3, p, 1));
        let xv = K0Vector { coords: x.iter().enumerate().map(|(k, &v)| poly(p, &[(k as i64, v)])).collect() };
        let yv = K0Vector { coords: y.iter().enumerate().map(|(k, &v)| poly(p, &[(2 * k as i64, v)])).collect() };
        let base = pairing(&c, &xv, &yv);
        prop_assert_eq!(pairing(&c, &xv.shift(a), &yv.shift(b)), base.shift(b - a));
        prop_assert_eq!(pairing(&c, &xv.add(&yv), &yv), &base + &pairing(&c, &yv, &yv));
    }
}
