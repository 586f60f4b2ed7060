use std::collections::BTreeMap;

use pdg_core::pcomplex::PComplex;
use pdg_core::pdgmod::*;
use pdg_core::resolve::ny_resolution;
use pdg_core::zigzag::{NormalPath, ZigzagAlgebra};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alg(n: u32, p: u32, l: u32) -> ZigzagAlgebra {
    ZigzagAlgebra::new(n, p, l).unwrap()
}

fn table(entries: &[((u32, i64), usize)]) -> BTreeMap<(u32, i64), usize> {
    entries.iter().copied().collect()
}

#[test]
fn rhom_of_simples() {
    for p in [2, 3, 5] {
        for n in 2..=4 {
            for l in [0, 1] {
                let a = alg(n, p, l);
                for i in 1..n {
                    let r = ny_resolution(&a, i, Side::Left).unwrap();
                    for j in 1..=n {
                        let h = hom_cell(&r.diagram, &Module::simple(&a, j, Side::Left));
                        let got = h.complex.decompose().non_contractible(p);
                        let want = match i.abs_diff(j) {
                            0 => table(&[((0, 0), 1), ((0, 2 * p as i64 - 2), 1)]),
                            1 => table(&[((p - 2, 1), 1)]),
                            _ => table(&[]),
                        };
                        assert_eq!(got, want, "{p} {n} {l} {i} {j}");
                    }
                }
            }
        }
    }
}

#[test]
fn tensor_of_simples() {
    for p in [2, 3, 5] {
        for n in 2..=4 {
            for l in [0, 1] {
                let a = alg(n, p, l);
                for i in 1..n {
                    let r = ny_resolution(&a, i, Side::Right).unwrap();
                    for j in 1..=n {
                        let t = tensor_cells_left(&r.diagram, &Module::simple(&a, j, Side::Left));
                        let got = t.decompose().non_contractible(p);
                        let want = match i.abs_diff(j) {
                            0 => table(&[((0, 0), 1), ((0, 2 - 2 * p as i64), 1)]),
                            1 => table(&[((p - 2, 3 - 2 * p as i64), 1)]),
                            _ => table(&[]),
                        };
                        assert_eq!(got, want, "{p} {n} {l} {i} {j}");
                    }
                }
            }
        }
    }
}

#[test]
fn hom_complex_agrees_with_cell_hom() {
    for p in [2, 3] {
        let a = alg(3, p, 1);
        let targets = [
            Module::simple(&a, 2, Side::Left),
            Module::projective(&a, 3, Side::Left),
            Module::compile(&a, &ny_resolution(&a, 1, Side::Left).unwrap().diagram).unwrap(),
        ];
        for i in 1..3 {
            let d = ny_resolution(&a, i, Side::Left).unwrap().diagram;
            let m = Module::compile(&a, &d).unwrap();
            for t in &targets {
                let general = hom_complex(&m, t);
                assert!(general.validate().is_ok());
                assert_eq!(general.decompose(), hom_cell(&d, t).complex.decompose(), "{p} {i}");
            }
        }
    }
}

#[test]
fn hom_from_projective_is_vertex_part() {
    let a = alg(3, 3, 1);
    let m = Module::compile(&a, &ny_resolution(&a, 2, Side::Left).unwrap().diagram).unwrap();
    for i in 1..=3 {
        let h = hom_complex(&Module::projective(&a, i, Side::Left), &m);
        let dims: BTreeMap<i64, usize> = m.vertex_dims().get(&i).cloned().unwrap_or_default();
        assert_eq!(h.dims.into_iter().filter(|x| x.1 > 0).collect::<BTreeMap<_, _>>(), dims);
    }
}

#[test]
fn trivial_algebra_hom() {
    let v0 = PComplex::unit(3);
    assert_eq!(v0.hom(&v0.degree_shift(2)).decompose().non_contractible(3), table(&[((0, 2), 1)]));
}

#[test]
fn cone_of_identity_is_acyclic_and_zero_is_not_quasi_iso() {
    for p in [2, 3, 5] {
        let a = alg(3, p, 1);
        let d = ny_resolution(&a, 1, Side::Left).unwrap().diagram;
        let mut id = CellMap::zero(d.len(), 0);
        for c in 0..d.len() {
            id.push(c, c, a.element(NormalPath::idempotent(d.cells[c].vertex)));
        }
        let cone = Module::compile(&a, &cone_cells(&d, &d, &id, p, a.field())).unwrap();
        assert!(cone.underlying().complex.is_acyclic());
        let l = Module::simple(&a, 1, Side::Left);
        assert!(ModMap::identity(&l).is_quasi_iso(&l, &l));
        assert!(!ModMap::zero(&l).is_quasi_iso(&l, &l));
    }
}

#[test]
fn underlying_match_does_not_give_module_quasi_iso() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [2, 3, 5] {
        let a = alg(2, p, 1);
        let mut d = CellDiagram::new(Side::Left);
        d.add_cell(1, 0);
        let tgt = Module::simple(&a, 1, Side::Left).direct_sum(&Module::simple(&a, 2, Side::Left).degree_shift(1));
        let src = Module::compile(&a, &d).unwrap();
        assert_eq!(
            src.underlying().complex.decompose().non_contractible(p),
            tgt.underlying().complex.decompose().non_contractible(p)
        );
        assert!(find_quasi_iso(&a, &d, &tgt, &mut rng, 60).is_err());
    }
}

#[test]
fn example_cell_modules_compile() {
    let a = alg(3, 5, 1);
    let mut d = CellDiagram::new(Side::Left);
    d.add_cell(2, 0);
    d.add_cell(2, 0);
    d.add_edge(0, 1, a.loop_at(2), a.field());
    assert!(Module::compile(&a, &d).is_ok());
    let mut e = CellDiagram::new(Side::Left);
    e.add_cell(1, 1);
    e.add_cell(3, 1);
    e.add_edge(0, 1, a.walk(&[1, 2, 3]), a.field());
    assert!(Module::compile(&a, &e).is_ok());
    assert!(truncated_splice(&a, &[], &[]).unwrap().is_empty());
}
