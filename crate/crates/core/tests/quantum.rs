use pdg_core::arith::{cyc_det, cyc_identity, cyc_matmul, CycInt};
use pdg_core::quantum::*;
use pdg_core::zigzag::ZigzagAlgebra;

const SIGNS: [Sign; 2] = [Sign::Positive, Sign::Inverse];

fn q(p: u32, e: i64) -> CycInt {
    CycInt::q_pow(p, e)
}

#[test]
fn tensor_rep_examples() {
    let p = 3;
    let r = tensor_rep(2, p, Coproduct::Standard);
    // columns are images; index bits i_1 i_2
    let col: Vec<CycInt> = r.f.iter().map(|row| row[0].clone()).collect();
    assert_eq!(col, vec![CycInt::zero(p), CycInt::one(p), q(p, -1), CycInt::zero(p)]);
    assert_eq!(r.k[0][0], q(p, 2));
}

#[test]
fn quantum_group_relations() {
    for p in [2, 3, 5] {
        for n in 1..=6 {
            for cop in [Coproduct::Standard, Coproduct::Opposite] {
                for (name, ok) in tensor_rep(n, p, cop).relations() {
                    assert!(ok, "{p} {n} {cop:?} {name}");
                }
            }
        }
    }
}

#[test]
fn braid_operators_commute_with_the_opposite_coproduct_only() {
    for p in [2, 3, 5] {
        for n in 2..=4 {
            let std = tensor_rep(n, p, Coproduct::Standard);
            let op = tensor_rep(n, p, Coproduct::Opposite);
            for i in 1..n {
                for s in SIGNS {
                    let t = braid_op(n, p, i, s);
                    assert!(op.commutes_with(&t));
                    assert!(!std.commutes_with(&t));
                }
            }
        }
    }
}

#[test]
fn weight_spaces() {
    assert_eq!(weight_space(3, 1).len(), 3);
    assert_eq!(weight_space(2, 2), vec![0]);
    for n in 1..=6u32 {
        let total: usize = (0..=n).map(|k| weight_space(n, n as i64 - 2 * k as i64).len()).sum();
        assert_eq!(total, 1 << n);
        if n >= 2 {
            assert_eq!(weight_space(n, n as i64 - 2).len(), n as usize);
        }
    }
}

#[test]
fn l_basis_examples() {
    let p = 5;
    let l = l_basis(2, p);
    // v01 has index 1, v10 index 2
    assert_eq!(l[0][2], CycInt::one(p));
    assert_eq!(l[0][1], -&q(p, 1));
    assert_eq!(l[1][1], CycInt::one(p));
    let l3 = l_basis(3, p);
    assert_eq!(l3[2].iter().filter(|x| !x.is_zero()).count(), 1);
    assert!(l3[2][1].is_one());
    for n in 2..=6 {
        assert!(cyc_det(&l_change_of_basis(n, p), p).is_unit());
    }
}

#[test]
fn local_braid_examples() {
    for p in [2, 3, 5] {
        let t = local_braid(p, Sign::Positive);
        assert_eq!(t[2][1], q(p, 1));
        assert_eq!(t[1][1], &CycInt::one(p) - &q(p, 2));
        let tp = local_braid(p, Sign::Inverse);
        assert_eq!(cyc_matmul(&tp, &t, p), cyc_identity(p, 4));
    }
}

#[test]
fn weight_space_is_stable_and_matches_burau() {
    for p in [2, 3, 5, 7] {
        for n in 2..=6 {
            for i in 1..n {
                for s in SIGNS {
                    let r = restrict_to_l_basis(&braid_op(n, p, i, s), n, p).expect("stable");
                    assert_eq!(r, burau_matrix(n, p, i, s), "{p} {n} {i} {s:?}");
                }
            }
        }
    }
}

#[test]
fn burau_examples_and_relations() {
    let p = 3;
    let t = burau_matrix(2, p, 1, Sign::Positive);
    assert_eq!(t[0][0], -&q(p, 2));
    assert_eq!((t[0][1].clone(), t[1][1].clone()), (q(p, 1), CycInt::one(p)));
    for p in [2, 3, 5, 7] {
        for n in 2..=6 {
            let ts: Vec<_> = (1..n).map(|i| burau_matrix(n, p, i, Sign::Positive)).collect();
            for (name, ok) in pdg_core::ktheory::braid_relations(&ts, p) {
                assert!(ok, "{p} {n} {name}");
            }
            for i in 1..n {
                let t = burau_matrix(n, p, i, Sign::Positive);
                let tp = burau_matrix(n, p, i, Sign::Inverse);
                assert_eq!(cyc_matmul(&tp, &t, p), cyc_identity(p, n as usize));
                assert!(quadratic_relation(&t, p, Sign::Positive));
                assert!(quadratic_relation(&tp, p, Sign::Inverse));
            }
        }
    }
}

#[test]
fn braid_words() {
    let p = 5;
    let w = |s: &str| burau_word(&parse_braid_word(s, 3).unwrap(), 3, p);
    assert_eq!(w("s1 S1"), cyc_identity(p, 3));
    assert_eq!(w(""), cyc_identity(p, 3));
    assert_eq!(w("s1 s2 s1"), w("s2 s1 s2"));
    assert!(parse_braid_word("s3", 3).is_err());
    assert!(parse_braid_word("x1", 3).is_err());
}

#[test]
fn commuting_squares() {
    for (n, p) in [(2, 3), (3, 2), (3, 3), (4, 5)] {
        for l in [0, 1] {
            let a = ZigzagAlgebra::new(n, p, l).unwrap();
            for i in 1..n {
                for s in SIGNS {
                    let r = commuting_square(&a, i, s).unwrap();
                    assert!(r.equal_over_o2p && r.equal_over_op, "{n} {p} {l} {i} {s:?}");
                    assert!(r.printed_over_o2p);
                    assert_eq!(r.printed_over_op, p == 2);
                    let expected = match s {
                        Sign::Positive => q(p, 1),
                        Sign::Inverse => q(p, -1),
                    };
                    assert_eq!(r.factor, Some(expected));
                }
            }
        }
    }
}
