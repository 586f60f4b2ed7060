//! One line per acceptance criterion; exact arithmetic throughout.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use pdg_core::arith::{cyc_identity, cyc_matmul, CycInt};
use pdg_core::functors::{certify_dual, verify_braid_r2, verify_braid_r3, verify_tl_relations, Functor};
use pdg_core::ktheory::{
    braid_relations, decat, equal_at_root, gram, gram_perfect, id_plus, is_self_adjoint, linear_factor, tl_presentation,
};
use pdg_core::pcomplex::{disguised_sum, iota, PComplex};
use pdg_core::pdgmod::{find_quasi_iso, hom_cell, ses_extend, tensor_cells_left, Module, Side};
use pdg_core::quantum::{burau_matrix, commuting_square, quadratic_relation, tensor_rep, Coproduct, Sign};
use pdg_core::resolve::{ny_ses, ny_from_ses, ny_resolution, phi_map, psi_map, stable_class, NYResolution};
use pdg_core::zigzag::{lambda_constraints, quotient_dims_by_relations, ZigzagAlgebra};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn alg(n: u32, p: u32, l: u32) -> ZigzagAlgebra {
    ZigzagAlgebra::new(n, p, l).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn algebra() -> Verdict {
    for n in 2..=5u32 {
        let want: u32 = (1..=n).flat_map(|i| (1..=n).map(move |j| i.min(j))).sum();
        ensure(alg(n, 3, 1).dim() as u32 == want, || format!("dimension at n = {n}"))?;
    }
    let mut count = 0;
    for p in [2, 3, 5] {
        for n in 2..=4 {
            let brute = quotient_dims_by_relations(n, p);
            let a = alg(n, p, 1);
            for s in 1..=n {
                for t in 1..=n {
                    let mut want = BTreeMap::new();
                    for np in a.paths_between(s, t) {
                        *want.entry(np.degree()).or_insert(0usize) += 1;
                    }
                    ensure(brute.get(&(s, t)).cloned().unwrap_or_default() == want, || {
                        format!("oracle mismatch p={p} n={n} ({s}|{t})")
                    })?;
                }
            }
            for l in 0..p {
                let b = alg(n, p, l);
                b.verify().map_err(|e| format!("p={p} n={n} lambda={l}: {e}"))?;
                ensure(b.tau_intertwines(), || format!("tau p={p} n={n} lambda={l}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("dimension formula n=2..5, relation oracle n<=4, d^p=0, Leibniz and tau on {count} algebras"))
}

fn lambdas() -> Verdict {
    ensure(lambda_constraints(2) == vec![0, 1], || "p=2".into())?;
    for p in [3, 5, 7] {
        ensure(lambda_constraints(p) == vec![1], || format!("p={p}: {:?}", lambda_constraints(p)))?;
    }
    Ok("{0,1} for p=2 and {1} for p=3,5,7".into())
}

fn resolutions() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut count = 0;
    for p in [2, 3, 5] {
        for n in 2..=4 {
            for l in [0, 1] {
                let a = alg(n, p, l);
                for i in 1..n {
                    for side in [Side::Left, Side::Right] {
                        let r = ny_resolution(&a, i, side).map_err(|e| format!("p={p} n={n} lambda={l} i={i}: {e}"))?;
                        r.module.validate(&a).map_err(|e| format!("p={p} n={n} lambda={l} i={i}: {e}"))?;
                        ensure(r.is_quasi_iso(), || format!("augmentation p={p} n={n} lambda={l} i={i} {side:?}"))?;
                        count += 1;
                    }
                    if l == 1 {
                        let d = ny_from_ses(&a, i).map_err(|e| e.to_string())?;
                        let r1 = NYResolution::from_diagram(&a, i, Side::Left, d).map_err(|e| e.to_string())?;
                        ensure(r1.is_quasi_iso(), || format!("variant 1 p={p} n={n} i={i}"))?;
                        let (k, lm, m, phi, psi) = ny_ses(&a, i).map_err(|e| e.to_string())?;
                        let d2 = ses_extend(&a, &k, &lm, &m, &phi, &psi, 2).map_err(|e| e.to_string())?;
                        let v = PComplex::indecomposable(p, p - 2, 4 - 2 * p as i64);
                        let target = Module::simple_tensor(&a, i, Side::Left, &v);
                        find_quasi_iso(&a, &d2, &target, &mut rng, 40).map_err(|e| format!("variant 2 p={p} n={n} i={i}: {e}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{count} resolutions with quasi-isomorphic augmentations; both SES variants certified"))
}

fn rhom() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    for p in [2, 3, 5] {
        for n in 2..=4 {
            for l in [0, 1] {
                let a = alg(n, p, l);
                for i in 1..n {
                    let left = ny_resolution(&a, i, Side::Left).unwrap().diagram;
                    let right = ny_resolution(&a, i, Side::Right).unwrap().diagram;
                    for j in 1..=n {
                        let simple = Module::simple(&a, j, Side::Left);
                        let h = hom_cell(&left, &simple).complex.decompose().non_contractible(p);
                        let t = tensor_cells_left(&right, &simple).decompose().non_contractible(p);
                        let (hw, tw): (Vec<((u32, i64), usize)>, Vec<((u32, i64), usize)>) = match i.abs_diff(j) {
                            0 => (
                                vec![((0, 0), 1), ((0, 2 * p as i64 - 2), 1)],
                                vec![((0, 2 - 2 * p as i64), 1), ((0, 0), 1)],
                            ),
                            1 => (vec![((p - 2, 1), 1)], vec![((p - 2, 3 - 2 * p as i64), 1)]),
                            _ => (vec![], vec![]),
                        };
                        let (hw, tw): (BTreeMap<_, _>, BTreeMap<_, _>) = (hw.into_iter().collect(), tw.into_iter().collect());
                        ensure(h == hw, || format!("RHOM p={p} n={n} lambda={l} ({i},{j}): {h:?}"))?;
                        ensure(t == tw, || format!("tensor p={p} n={n} lambda={l} ({i},{j}): {t:?}"))?;
                        count += 1;
                    }
                    if n <= 3 {
                        certify_dual(&a, i, &mut rng).map_err(|e| format!("dual p={p} n={n} lambda={l} i={i}: {e}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{count} (i,j) pairs for RHOM and tensor; dual module certified for n<=3"))
}

fn temperley_lieb() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut certs = 0;
    for (n, p) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for l in [0, 1] {
            for c in verify_tl_relations(&alg(n, p, l), &mut rng).map_err(|e| e.to_string())? {
                c.certificate.as_ref().map_err(|e| format!("{} on {} n={n} p={p} lambda={l}: {e}", c.relation, c.object))?;
                certs += 1;
            }
        }
    }
    for p in [2, 3, 5] {
        for n in 2..=4 {
            for l in [0, 1] {
                let a = alg(n, p, l);
                let us: Vec<_> = (1..n).map(|i| decat(&a, Functor::U(i)).unwrap()).collect();
                for (name, ok) in tl_presentation(&us, p) {
                    ensure(ok, || format!("{name} p={p} n={n}"))?;
                }
                let c = gram(&a);
                ensure(us.iter().all(|u| is_self_adjoint(&c, u)), || format!("adjointness p={p} n={n}"))?;
            }
        }
        for n in 2..=4 {
            ensure(gram_perfect(&alg(n, p, 1)), || format!("Gram p={p} n={n}"))?;
        }
    }
    Ok(format!("{certs} relation certificates; K_0 presentation, self-adjoint u_i and unimodular Gram matrix for n<=4"))
}

fn braiding() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut certs = 0;
    for (n, p) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for l in [0, 1] {
            let a = alg(n, p, l);
            let mut checks = Vec::new();
            for i in 1..n {
                checks.extend(verify_braid_r2(&a, i, &mut rng).map_err(|e| e.to_string())?);
            }
            if n == 3 {
                checks.extend(verify_braid_r3(&a, 1, 2, &mut rng).map_err(|e| e.to_string())?);
            }
            for c in checks {
                c.certificate.as_ref().map_err(|e| format!("{} on {} n={n} p={p} lambda={l}: {e}", c.relation, c.object))?;
                certs += 1;
            }
        }
    }
    let mut exact_over_op = true;
    for p in [2, 3, 5, 7] {
        for n in 2..=6 {
            let a = alg(n, p, 1);
            let mut ts = Vec::new();
            for i in 1..n {
                let u = decat(&a, Functor::U(i)).unwrap();
                let t = decat(&a, Functor::T(i)).unwrap();
                let tp = decat(&a, Functor::TPrime(i)).unwrap();
                let printed = id_plus(&u, &-&CycInt::q_pow(p, p as i64 + 1));
                let printed_prime = id_plus(&u, &-&CycInt::q_pow(p, p as i64 - 1));
                ensure(equal_at_root(&t, &printed) && equal_at_root(&tp, &printed_prime), || {
                    format!("printed identity p={p} n={n} i={i}")
                })?;
                ensure(linear_factor(&t, &u) == Some(CycInt::q_pow(p, 1)), || format!("factor p={p} n={n} i={i}"))?;
                exact_over_op &= t == printed && tp == printed_prime;
                ensure(cyc_matmul(&t, &tp, p) == cyc_identity(p, n as usize), || format!("inverse p={p} n={n}"))?;
                ts.push(t);
            }
            for (name, ok) in braid_relations(&ts, p) {
                ensure(ok, || format!("{name} p={p} n={n}"))?;
            }
        }
    }
    Ok(format!(
        "{certs} R2/R3 certificates; printed classes hold after q -> zeta_2p (over O_p [T_i] = Id + q u_i, printed form exact over O_p: {exact_over_op}); braid relations n<=6"
    ))
}

fn appendix() -> Verdict {
    let mut count = 0;
    for p in [2, 3, 5] {
        let f = pdg_core::arith::Field::new(p).unwrap();
        for k in 1..p {
            ensure(f.inv(f.factorial(k)).is_some(), || format!("{k}! mod {p}"))?;
        }
        for n in 3..=4 {
            let a = alg(n, p, 1);
            for i in 1..=n - 2 {
                for (name, m) in [("psi", psi_map(&a, i)), ("phi", phi_map(&a, i))] {
                    let m = m.map_err(|e| e.to_string())?;
                    m.check_chain(&a).map_err(|e| format!("{name} p={p} n={n} i={i}: {e}"))?;
                    let s = stable_class(&a, &m).map_err(|e| e.to_string())?;
                    ensure(s == (1, false), || format!("{name} p={p} n={n} i={i}: stable class {s:?}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} maps are chain maps, not null-homotopic, in one-dimensional stable hom spaces"))
}

fn quantum() -> Verdict {
    for p in [2, 3, 5] {
        for n in 1..=6 {
            for cop in [Coproduct::Standard, Coproduct::Opposite] {
                for (name, ok) in tensor_rep(n, p, cop).relations() {
                    ensure(ok, || format!("{name} p={p} n={n} {cop:?}"))?;
                }
            }
        }
    }
    for p in [2, 3, 5, 7] {
        for n in 2..=6 {
            let ts: Vec<_> = (1..n).map(|i| burau_matrix(n, p, i, Sign::Positive)).collect();
            for (name, ok) in braid_relations(&ts, p) {
                ensure(ok, || format!("Burau {name} p={p} n={n}"))?;
            }
            for i in 1..n {
                let tp = burau_matrix(n, p, i, Sign::Inverse);
                let t = &ts[i as usize - 1];
                ensure(cyc_matmul(&tp, t, p) == cyc_identity(p, n as usize), || format!("inverse p={p} n={n}"))?;
                ensure(quadratic_relation(t, p, Sign::Positive), || format!("quadratic p={p} n={n}"))?;
            }
        }
    }
    let mut factors = BTreeMap::new();
    for (n, p) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for l in [0, 1] {
            let a = alg(n, p, l);
            for i in 1..n {
                for s in [Sign::Positive, Sign::Inverse] {
                    let r = commuting_square(&a, i, s).map_err(|e| e.to_string())?;
                    ensure(r.equal_over_o2p && r.printed_over_o2p, || format!("square n={n} p={p} lambda={l} i={i} {s:?}"))?;
                    let f = r.factor.map(|c| c.to_string()).unwrap_or_else(|| "none".into());
                    factors.insert((p, format!("{s:?}")), (f, r.printed_factor.to_string()));
                }
            }
        }
    }
    let notes: Vec<String> =
        factors.iter().map(|((p, s), (f, printed))| format!("p={p} {s}: {f} vs printed {printed}")).collect();
    Ok(format!("relations n<=6, Burau identities, squares over O_2p; O_p factors [{}]", notes.join("; ")))
}

fn chain_types(c: &PComplex) -> BTreeMap<(u32, i64), usize> {
    let mut out = BTreeMap::new();
    for ch in c.jordan_basis() {
        *out.entry((ch.j(), ch.bottom)).or_insert(0) += 1;
    }
    out
}

fn pcomplexes() -> Verdict {
    for p in [2, 3, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + p as u64);
        for k in 0..500 {
            let (c, truth) = disguised_sum(p, 12, &mut rng);
            let dec = c.decompose();
            ensure(dec == truth, || format!("decompose p={p} sample {k}"))?;
            ensure(chain_types(&c) == truth.summands, || format!("chain oracle p={p} sample {k}"))?;
        }
        for k in 0..100 {
            let (a, _) = disguised_sum(p, 6, &mut rng);
            let (b, _) = disguised_sum(p, 6, &mut rng);
            ensure(a.direct_sum(&b).symbol() == &a.symbol() + &b.symbol(), || format!("additivity p={p} {k}"))?;
            ensure(a.tensor(&b).symbol() == &a.symbol() * &b.symbol(), || format!("multiplicativity p={p} {k}"))?;
            let x = a.shift(2, 0).decompose().non_contractible(p);
            let y = a.shift(0, -2 * p as i64).decompose().non_contractible(p);
            ensure(x == y, || format!("shift p={p} {k}"))?;
        }
    }
    for p in [2, 3, 5, 7] {
        let i = iota(p);
        ensure(i.is_chain_map() && i.is_quasi_iso(), || format!("iota p={p}"))?;
        ensure(i.cone().unwrap().is_acyclic(), || format!("cone of iota p={p}"))?;
    }
    Ok("1500 disguised sums match; symbol additive and multiplicative; iota quasi-iso for p<=7; [2] = {-2p}".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("algebra", algebra),
        ("lambda constraints", lambdas),
        ("resolutions", resolutions),
        ("RHOM tables", rhom),
        ("Temperley-Lieb", temperley_lieb),
        ("braiding", braiding),
        ("appendix", appendix),
        ("quantum and Burau", quantum),
        ("p-complex engine", pcomplexes),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
