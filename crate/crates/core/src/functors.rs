//! Cup and cap functors, the Temperley-Lieb functors U_i and the braiding functors T_i, T_i'.
//!
//! Functors are evaluated on left cell modules. Simple tensor factors are replaced by their
//! NY resolutions and auxiliary p-complexes by minimal models, so every result is again a
//! finite cell module.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::linalg::{solve, Mat};
use crate::pcomplex::{PComplex, PMap};
use crate::pdgmod::{
    closed_maps, cocone_cells, cone_cells, find_quasi_iso, hom_cell, tensor_cells_left, CellDiagram, CellMap,
    Leg, ModError, ModMap, Module, QuasiIsoCertificate, Side,
};
use crate::resolve::ny_resolution;
use crate::zigzag::{AlgElement, NormalPath, ZigzagAlgebra};

fn check_index(alg: &ZigzagAlgebra, i: u32) -> Result<(), ModError> {
    if i < 1 || i >= alg.n {
        return Err(ModError::Unsupported(format!("index {i} outside 1..{}", alg.n - 1)));
    }
    Ok(())
}

/// ∪_i(V) = L_i ⊗ V.
pub fn cup(alg: &ZigzagAlgebra, i: u32, v: &PComplex) -> Result<Module, ModError> {
    check_index(alg, i)?;
    Ok(Module::simple_tensor(alg, i, Side::Left, v))
}

/// ∩_i(M) = _iL ⊗^L M computed with the right NY resolution of _iL.
pub fn cap(alg: &ZigzagAlgebra, i: u32, m: &Module) -> Result<PComplex, ModError> {
    check_index(alg, i)?;
    let r = ny_resolution(alg, i, Side::Right)?;
    Ok(tensor_cells_left(&r.diagram, m))
}

/// _iL ⊗_A M for a left cell module, which is already cofibrant.
#[derive(Clone, Debug)]
pub struct CapCells {
    pub complex: PComplex,
    /// Basis position (degree, index) of every cell over vertex i.
    pub pos: BTreeMap<usize, (i64, usize)>,
}

pub fn cap_cells(i: u32, d: &CellDiagram, p: u32) -> CapCells {
    assert_eq!(d.side, Side::Left);
    let f = crate::arith::Field::new(p).expect("prime");
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    let mut pos = BTreeMap::new();
    for (c, cell) in d.cells.iter().enumerate() {
        if cell.vertex == i {
            let e = dims.entry(cell.shift).or_insert(0);
            pos.insert(c, (cell.shift, *e));
            *e += 1;
        }
    }
    let mut diff: BTreeMap<i64, Mat> = BTreeMap::new();
    for (&deg, &n) in &dims {
        if let Some(&n2) = dims.get(&(deg + 2)) {
            diff.insert(deg, Mat::zeros(n2, n));
        }
    }
    let e = NormalPath::idempotent(i);
    for edge in &d.edges {
        let (Some(&(ds, cs)), Some(&(_, ct))) = (pos.get(&edge.from), pos.get(&edge.to)) else { continue };
        let a = edge.label.coeff(&e);
        if a != 0 {
            diff.get_mut(&ds).unwrap().add_at(&f, ct, cs, a);
        }
    }
    CapCells { complex: PComplex::new(p, dims, diff), pos }
}

fn left_resolution(alg: &ZigzagAlgebra, i: u32) -> Result<CellDiagram, ModError> {
    Ok(ny_resolution(alg, i, Side::Left)?.diagram)
}

/// U_i(M) = p(L_i) ⊗ min(∩_i(M)[−1]){−1}.
pub fn tl_functor(alg: &ZigzagAlgebra, i: u32, m: &CellDiagram) -> Result<CellDiagram, ModError> {
    check_index(alg, i)?;
    let v = cap_cells(i, m, alg.p).complex.shift(-1, 0);
    let (vmin, _, _) = v.minimal_model();
    Ok(left_resolution(alg, i)?.tensor_complex(&vmin).degree_shift(-1))
}

/// Coordinates of the augmentation component ((last cell of p(L_i), v), e_i) inside a compiled
/// p(L_i) ⊗ V, listed in the basis order of V.
fn augmentation_coords(res: &CellDiagram, v: &PComplex, nmod: &Module, i: u32) -> Vec<usize> {
    let nv = v.total_dim();
    let last = res.len() - 1;
    let basis = nmod.cell_basis.as_ref().expect("compiled");
    let index: BTreeMap<(usize, NormalPath), usize> = basis.iter().enumerate().map(|(k, x)| (*x, k)).collect();
    (0..nv).map(|k| index[&(last * nv + k, NormalPath::idempotent(i))]).collect()
}

fn basis_order(v: &PComplex) -> Vec<(i64, usize)> {
    v.dims.iter().flat_map(|(d, n)| (0..*n).map(move |k| (*d, k))).collect()
}

/// The unit M → p(L_i) ⊗ min ∩_i(M) lifting g_c ↦ (i) ⊗ [c] along the augmentation.
pub fn unit_map(alg: &ZigzagAlgebra, i: u32, m: &CellDiagram) -> Result<(CellDiagram, CellMap), ModError> {
    check_index(alg, i)?;
    let f = alg.field();
    let cap = cap_cells(i, m, alg.p);
    let (vmin, _, proj) = cap.complex.minimal_model();
    let res = left_resolution(alg, i)?;
    let target = res.tensor_complex(&vmin);
    let nmod = Module::compile(alg, &target)?;
    if vmin.total_dim() == 0 {
        return Ok((target, CellMap::zero(m.len(), 0)));
    }
    let (h, z) = closed_maps(m, &nmod);
    let aug = augmentation_coords(&res, &vmin, &nmod, i);
    let vorder = basis_order(&vmin);
    let vidx: BTreeMap<(i64, usize), usize> = vorder.iter().enumerate().map(|(k, x)| (*x, k)).collect();
    // One equation per (cell over i, basis vector of V_min).
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    let cols: Vec<Vec<Vec<u32>>> = z.iter().map(|x| h.images(0, x)).collect();
    for (&c, &(deg, idx)) in &cap.pos {
        let mut e = vec![0u32; cap.complex.dim(deg)];
        e[idx] = 1;
        let image = proj.block(deg).apply(&e, f);
        for (k, &vk) in aug.iter().enumerate() {
            let (vd, vi) = vorder[k];
            let want = if vd == deg { image.get(vi).copied().unwrap_or(0) } else { 0 };
            rows.push(cols.iter().map(|im| im[c][vk]).collect());
            rhs.push(want);
            let _ = vidx.get(&(vd, vi));
        }
    }
    let mat = Mat::from_rows(&rows, z.len());
    let y = solve(&mat, &rhs, f).ok_or_else(|| ModError::NotChainMap(String::from("unit does not lift")))?;
    let mut x = vec![0u32; h.complex.dim(0)];
    for (k, zk) in z.iter().enumerate() {
        for (xi, zi) in x.iter_mut().zip(zk) {
            *xi = f.add(*xi, f.mul(y[k], *zi));
        }
    }
    let images = h.images(0, &x);
    let mut map = CellMap::zero(m.len(), 0);
    for (c, img) in images.iter().enumerate() {
        for (t, a) in nmod.labels_of_vector(img, f) {
            map.push(c, t, a);
        }
    }
    Ok((target, map))
}

/// T_i(M) = cocone(M → p(L_i) ⊗ ∩_i(M)).
pub fn braid_t(alg: &ZigzagAlgebra, i: u32, m: &CellDiagram) -> Result<CellDiagram, ModError> {
    let (target, g) = unit_map(alg, i, m)?;
    Ok(cocone_cells(m, &target, &g, alg.p, alg.field()))
}

/// The evaluation p(L_i) ⊗ min HOM(p(L_i), M) → M.
pub fn counit_map(alg: &ZigzagAlgebra, i: u32, m: &CellDiagram) -> Result<(CellDiagram, CellMap), ModError> {
    check_index(alg, i)?;
    let f = alg.field();
    let res = left_resolution(alg, i)?;
    let mmod = Module::compile(alg, m)?;
    let h = hom_cell(&res, &mmod);
    let (wmin, incl, _) = h.complex.minimal_model();
    let source = res.tensor_complex(&wmin);
    let worder = basis_order(&wmin);
    let nw = worder.len();
    let mut map = CellMap::zero(source.len(), 0);
    for d in 0..res.len() {
        for (k, &(deg, idx)) in worder.iter().enumerate() {
            let mut e = vec![0u32; wmin.dim(deg)];
            e[idx] = 1;
            let w = incl.block(deg).apply(&e, f);
            let images = h.images(deg, &w);
            for (t, a) in mmod.labels_of_vector(&images[d], f) {
                map.push(d * nw + k, t, a);
            }
        }
    }
    Ok((source, map))
}

/// T_i'(M) = cone(p(L_i) ⊗ HOM(p(L_i), M) → M).
pub fn braid_t_prime(alg: &ZigzagAlgebra, i: u32, m: &CellDiagram) -> Result<CellDiagram, ModError> {
    let (source, ev) = counit_map(alg, i, m)?;
    Ok(cone_cells(&source, m, &ev, alg.p, alg.field()))
}

/// Generators of the TL algebra and the braid group, as functors on left cell modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Functor {
    U(u32),
    T(u32),
    TPrime(u32),
}

impl Functor {
    pub fn apply(&self, alg: &ZigzagAlgebra, m: &CellDiagram) -> Result<CellDiagram, ModError> {
        match *self {
            Functor::U(i) => tl_functor(alg, i, m),
            Functor::T(i) => braid_t(alg, i, m),
            Functor::TPrime(i) => braid_t_prime(alg, i, m),
        }
    }

    pub fn index(&self) -> u32 {
        match *self {
            Functor::U(i) | Functor::T(i) | Functor::TPrime(i) => i,
        }
    }
}

/// Applies a word of functors; the rightmost acts first.
pub fn apply_word(alg: &ZigzagAlgebra, word: &[Functor], m: &CellDiagram) -> Result<CellDiagram, ModError> {
    let mut cur = m.clone();
    for f in word.iter().rev() {
        cur = f.apply(alg, &cur)?;
    }
    Ok(cur)
}

/// Generating objects: P_1..P_n and the NY resolutions p(L_j), j ≤ n−1.
pub fn generators(alg: &ZigzagAlgebra) -> Result<Vec<(String, CellDiagram)>, ModError> {
    let mut out = Vec::new();
    for j in 1..=alg.n {
        let mut d = CellDiagram::new(Side::Left);
        d.add_cell(j, 0);
        out.push((format!("P{j}"), d));
    }
    for j in 1..alg.n {
        out.push((format!("L{j}"), left_resolution(alg, j)?));
    }
    Ok(out)
}

/// Outcome of one relation check on one object.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub relation: String,
    pub object: String,
    pub certificate: Result<QuasiIsoCertificate, String>,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.certificate.is_ok()
    }
}

fn certify<R: RngCore>(
    alg: &ZigzagAlgebra,
    src: &CellDiagram,
    tgt: &CellDiagram,
    rng: &mut R,
) -> Result<QuasiIsoCertificate, String> {
    let tmod = Module::compile(alg, tgt).map_err(|e| format!("{e}"))?;
    find_quasi_iso(alg, src, &tmod, rng, 40).map(QuasiIsoCertificate::single)
}

/// TL relations (i) U_iU_i ≅ U_i[−1]{−1} ⊕ U_i[1]{1}, (ii) U_iU_j = U_jU_i for |i−j| > 1 and
/// (iii) U_iU_jU_i ≅ U_i for |i−j| = 1, on every generating object.
pub fn verify_tl_relations<R: RngCore>(alg: &ZigzagAlgebra, rng: &mut R) -> Result<Vec<RelationCheck>, ModError> {
    let n = alg.n;
    let p = alg.p;
    let mut out = Vec::new();
    for (name, m) in generators(alg)? {
        for i in 1..n {
            let ui = tl_functor(alg, i, &m)?;
            let uu = tl_functor(alg, i, &ui)?;
            let rhs = ui.shift(p, -1, -1).direct_sum(&ui.shift(p, 1, 1));
            out.push(RelationCheck {
                relation: format!("U{i}U{i}"),
                object: name.clone(),
                certificate: certify(alg, &uu, &rhs, rng),
            });
            for j in 1..n {
                if i.abs_diff(j) > 1 && i < j {
                    let a = tl_functor(alg, i, &tl_functor(alg, j, &m)?)?;
                    let b = tl_functor(alg, j, &tl_functor(alg, i, &m)?)?;
                    let certificate = if a.canonical() == b.canonical() {
                        Ok(QuasiIsoCertificate::default())
                    } else {
                        Err(String::from("composites differ"))
                    };
                    out.push(RelationCheck { relation: format!("U{i}U{j}=U{j}U{i}"), object: name.clone(), certificate });
                }
                if i.abs_diff(j) == 1 {
                    let uju = tl_functor(alg, i, &tl_functor(alg, j, &ui)?)?;
                    out.push(RelationCheck {
                        relation: format!("U{i}U{j}U{i}"),
                        object: name.clone(),
                        certificate: certify(alg, &uju, &ui, rng),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// T_iT_i' ≅ Id ≅ T_i'T_i on every generating object.
pub fn verify_braid_r2<R: RngCore>(alg: &ZigzagAlgebra, i: u32, rng: &mut R) -> Result<Vec<RelationCheck>, ModError> {
    let mut out = Vec::new();
    for (name, m) in generators(alg)? {
        for (label, word) in [
            (format!("T{i}T{i}'"), [Functor::T(i), Functor::TPrime(i)]),
            (format!("T{i}'T{i}"), [Functor::TPrime(i), Functor::T(i)]),
        ] {
            let lhs = apply_word(alg, &word, &m)?;
            out.push(RelationCheck { relation: label, object: name.clone(), certificate: certify(alg, &lhs, &m, rng) });
        }
    }
    Ok(out)
}

/// T_iT_jT_i ≅ T_jT_iT_j for |i−j| = 1, and T_iT_j ≅ T_jT_i for |i−j| > 1, on every generating object.
pub fn verify_braid_r3<R: RngCore>(
    alg: &ZigzagAlgebra,
    i: u32,
    j: u32,
    rng: &mut R,
) -> Result<Vec<RelationCheck>, ModError> {
    let mut out = Vec::new();
    let (lw, rw): (Vec<Functor>, Vec<Functor>) = if i.abs_diff(j) == 1 {
        (vec![Functor::T(i), Functor::T(j), Functor::T(i)], vec![Functor::T(j), Functor::T(i), Functor::T(j)])
    } else {
        (vec![Functor::T(i), Functor::T(j)], vec![Functor::T(j), Functor::T(i)])
    };
    let label = if lw.len() == 3 { format!("T{i}T{j}T{i}") } else { format!("T{i}T{j}") };
    for (name, m) in generators(alg)? {
        let lhs = apply_word(alg, &lw, &m)?;
        let rhs = apply_word(alg, &rw, &m)?;
        let certificate = if lw.len() == 2 && lhs.canonical() == rhs.canonical() {
            Ok(QuasiIsoCertificate::default())
        } else {
            certify(alg, &lhs, &rhs, rng)
        };
        out.push(RelationCheck { relation: label.clone(), object: name, certificate });
    }
    Ok(out)
}

/// Explicit unit and counit data for the biadjunction of ∪_i and ∩_i, evaluated on a cell module.
#[derive(Clone, Debug)]
pub struct AdjunctionData {
    /// ε_1: evaluation p(L_i) ⊗ HOM(p(L_i), M) → M.
    pub eps1: (Module, Module, ModMap),
    /// η_1: inclusion of Ṽ_0 into the top cell of ∩_i(L_i), a stable cycle in degree 2 − 2p.
    pub eta1: PMap,
    /// ε_2: projection of ∩_i(L_i) onto its degree 0 factor.
    pub eps2: PMap,
    /// η_2: M → L_i ⊗ ∩_i(M), g_c ↦ (i) ⊗ [c].
    pub eta2: (Module, Module, ModMap),
}

/// Projection of p(_iL) ⊗ L_i onto its two cells over vertex i (top and bottom), as maps of p-complexes.
fn simple_cap_maps(alg: &ZigzagAlgebra, i: u32) -> Result<(PMap, PMap), ModError> {
    let l = Module::simple(alg, i, Side::Left);
    let c = cap(alg, i, &l)?;
    let unit = PComplex::unit(alg.p);
    let top = PComplex::unit(alg.p).degree_shift(2 - 2 * alg.p as i64);
    // cap(i, L_i) has one basis vector per cell over vertex i: degrees 2 − 2p and 0.
    let mut eta = top.zero_map(&c, 0);
    eta.blocks.insert(2 - 2 * alg.p as i64, Mat::identity(1));
    let mut eps = c.zero_map(&unit, 0);
    eps.blocks.insert(0, Mat::identity(1));
    Ok((eta, eps))
}

pub fn adjunction_maps(alg: &ZigzagAlgebra, i: u32, m: &CellDiagram) -> Result<AdjunctionData, ModError> {
    check_index(alg, i)?;
    let f = alg.field();
    let (source, ev) = counit_map(alg, i, m)?;
    let smod = Module::compile(alg, &source)?;
    let mmod = Module::compile(alg, m)?;
    let evm = crate::pdgmod::cell_map_to_mod(&smod, &mmod, &ev);
    let (eta1, eps2) = simple_cap_maps(alg, i)?;
    let cap = cap_cells(i, m, alg.p);
    let target = Module::simple_tensor(alg, i, Side::Left, &cap.complex);
    let basis = mmod.cell_basis.as_ref().expect("compiled");
    let order = basis_order(&cap.complex);
    let tidx: BTreeMap<(i64, usize), usize> = order.iter().enumerate().map(|(k, x)| (*x, k)).collect();
    let cols: Vec<Vec<(usize, u32)>> = basis
        .iter()
        .map(|(c, np)| match cap.pos.get(c) {
            Some(pos) if np.degree() == 0 => vec![(tidx[pos], 1)],
            _ => Vec::new(),
        })
        .collect();
    let eta2 = ModMap { qdeg: 0, cols };
    let _ = f;
    Ok(AdjunctionData { eps1: (smod, mmod.clone(), evm), eta1, eps2, eta2: (mmod, target, eta2) })
}

impl AdjunctionData {
    pub fn check(&self) -> Result<(), ModError> {
        self.eps1.2.check(&self.eps1.0, &self.eps1.1)?;
        self.eta2.2.check(&self.eta2.0, &self.eta2.1)?;
        if !self.eta1.is_chain_map() || !self.eps2.is_chain_map() {
            return Err(ModError::NotChainMap(String::from("η_1 or ε_2")));
        }
        Ok(())
    }
}

/// Searches for a quasi-isomorphism with the negated differential convention of dual modules.
pub fn certify_dual<R: RngCore>(alg: &ZigzagAlgebra, i: u32, rng: &mut R) -> Result<Vec<Leg>, String> {
    let p = alg.p;
    let r = ny_resolution(alg, i, Side::Left).map_err(|e| format!("{e}"))?;
    let dual = r.diagram.dual(alg.field());
    let shifted = PComplex::vtilde(p, p - 2).degree_shift(p as i64);
    let v = shifted.tensor(&shifted).degree_shift(-2);
    let t1 = Module::simple_tensor(alg, i, Side::Right, &v);
    let t2 = Module::simple_tensor(alg, i, Side::Right, &PComplex::unit(p).degree_shift(2 * p as i64 - 2));
    Ok(vec![find_quasi_iso(alg, &dual, &t1, rng, 40)?, find_quasi_iso(alg, &dual, &t2, rng, 40)?])
}

/// Label helper used by tests and reports: the scalar multiple of an idempotent.
pub fn scalar(i: u32, c: u32) -> AlgElement {
    AlgElement::term(NormalPath::idempotent(i), c)
}
