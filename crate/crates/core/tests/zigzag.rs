use pdg_core::zigzag::*;

#[test]
fn dimension_formula() {
    for n in 2..=5u32 {
        let a = ZigzagAlgebra::new(n, 3, 1).unwrap();
        let want: u32 = (1..=n).flat_map(|i| (1..=n).map(move |j| i.min(j))).sum();
        assert_eq!(a.dim() as u32, want);
    }
}

#[test]
fn normal_forms_match_relation_quotient() {
    for p in [2, 3, 5] {
        for n in 2..=4 {
            let a = ZigzagAlgebra::new(n, p, 1).unwrap();
            let brute = quotient_dims_by_relations(n, p);
            for s in 1..=n {
                for t in 1..=n {
                    let mut want = std::collections::BTreeMap::new();
                    for np in a.paths_between(s, t) {
                        *want.entry(np.degree()).or_insert(0usize) += 1;
                    }
                    assert_eq!(brute.get(&(s, t)).cloned().unwrap_or_default(), want, "{p} {n} {s} {t}");
                }
            }
        }
    }
}

#[test]
fn differentials_for_every_lambda() {
    for p in [2, 3, 5] {
        for n in 2..=4 {
            for l in 0..p {
                let a = ZigzagAlgebra::new(n, p, l).unwrap();
                assert!(a.verify().is_ok(), "{p} {n} {l}");
                assert!(a.tau_intertwines(), "{p} {n} {l}");
            }
        }
    }
}

#[test]
fn loop_differential() {
    for p in [3, 5] {
        let a = ZigzagAlgebra::new(3, p, 1).unwrap();
        let c = a.loop_at(2);
        assert_eq!(a.differential(&c), a.mul(&c, &c));
    }
}

#[test]
fn lambda_constraint_sets() {
    assert_eq!(lambda_constraints(2), vec![0, 1]);
    for p in [3, 5, 7] {
        assert_eq!(lambda_constraints(p), vec![1]);
    }
}

#[test]
fn rejects_bad_parameters() {
    assert!(ZigzagAlgebra::new(1, 3, 1).is_err());
    assert!(ZigzagAlgebra::new(3, 4, 1).is_err());
}
