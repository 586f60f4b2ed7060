//! Finite cell resolutions of the simple modules and the explicit maps between them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::Field;
use crate::pdgmod::{
    cell_map_to_mod, ses_extend, CellDiagram, CellMap, ModError, ModMap, Module, Side,
};
use crate::zigzag::{AlgElement, ZigzagAlgebra};

/// A cell resolution of a simple module together with its augmentation.
#[derive(Clone, Debug)]
pub struct NYResolution {
    pub i: u32,
    pub side: Side,
    pub lambda: u32,
    pub diagram: CellDiagram,
    pub module: Module,
    pub simple: Module,
    /// Projection of the head of the final P_i onto the simple module.
    pub augmentation: ModMap,
}

impl NYResolution {
    /// Compiles `diagram` as a resolution of the simple at vertex `i` and attaches the augmentation.
    pub fn from_diagram(alg: &ZigzagAlgebra, i: u32, side: Side, diagram: CellDiagram) -> Result<Self, ModError> {
        let module = Module::compile(alg, &diagram)?;
        let simple = Module::simple(alg, i, side);
        let last = diagram.len() - 1;
        let basis = module.cell_basis.as_ref().expect("compiled");
        let cols: Vec<Vec<(usize, u32)>> = basis
            .iter()
            .map(|(c, np)| if *c == last && np.degree() == 0 { vec![(0, 1)] } else { Vec::new() })
            .collect();
        let augmentation = ModMap { qdeg: 0, cols };
        augmentation.check(&module, &simple)?;
        Ok(NYResolution { i, side, lambda: alg.lambda, diagram, module, simple, augmentation })
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.augmentation.is_quasi_iso(&self.module, &self.simple)
    }
}

fn range_error(what: &str) -> ModError {
    ModError::Unsupported(String::from(what))
}

/// The λ = 1 template for either side.
fn ny_template(alg: &ZigzagAlgebra, i: u32, side: Side) -> CellDiagram {
    let f = alg.field();
    let p = alg.p as i64;
    let n = alg.n;
    let lo = (i > 1).then_some(i - 1);
    let hi = (i < n).then_some(i + 1);
    let mut d = CellDiagram::new(side);
    let top = d.add_cell(i, 2 - 2 * p);
    // Left: P_{i−1} row carries the vertical arrows into P_{i+1}; right: the reverse.
    let (first, second) = match side {
        Side::Left => (lo, hi),
        Side::Right => (hi, lo),
    };
    let mut rows: Vec<(Option<usize>, Option<usize>)> = Vec::new();
    for k in 0..p - 1 {
        let s = 3 - 2 * p + 2 * k;
        let a = first.map(|v| d.add_cell(v, s));
        let b = second.map(|v| d.add_cell(v, s));
        rows.push((a, b));
    }
    let bottom = d.add_cell(i, 0);
    let cell_of = |row: &(Option<usize>, Option<usize>), v: u32| -> Option<usize> {
        if Some(v) == first {
            row.0
        } else {
            row.1
        }
    };
    let arrow = |a: u32, b: u32| alg.arrow(a, b);
    for (v, sign) in [(lo, 1u32), (hi, f.neg(1))] {
        let Some(v) = v else { continue };
        let c0 = cell_of(&rows[0], v).unwrap();
        let clast = cell_of(rows.last().unwrap(), v).unwrap();
        let (out_label, in_label) = match side {
            Side::Left => (arrow(i, v), arrow(v, i)),
            Side::Right => (arrow(v, i), arrow(i, v)),
        };
        d.add_edge(top, c0, out_label.scale(sign, f), f);
        d.add_edge(clast, bottom, in_label, f);
        for w in rows.windows(2) {
            d.add_edge(cell_of(&w[0], v).unwrap(), cell_of(&w[1], v).unwrap(), AlgElement::idempotent(v), f);
        }
    }
    if let (Some(a), Some(b)) = (lo, hi) {
        let vertical = alg.walk(&[a, i, b]);
        for row in &rows {
            d.add_edge(row.0.unwrap(), row.1.unwrap(), vertical.clone(), f);
        }
    }
    d
}

/// Resolution of L_i (left) or _iL (right) over ∂_λ, λ ∈ {0, 1}; λ = 0 is the τ-transport
/// of the λ = 1 template on the other side.
pub fn ny_resolution(alg: &ZigzagAlgebra, i: u32, side: Side) -> Result<NYResolution, ModError> {
    if i < 1 || i >= alg.n {
        return Err(range_error("need 1 ≤ i ≤ n−1"));
    }
    let diagram = match alg.lambda {
        1 => ny_template(alg, i, side),
        0 => {
            let other = alg.opposite();
            ny_template(&other, i, side.flip()).tau(&other)
        }
        _ => return Err(range_error("λ must be 0 or 1")),
    };
    NYResolution::from_diagram(alg, i, side, diagram)
}

/// The same resolution assembled from its short exact sequence (λ = 1, left).
pub fn ny_from_ses(alg: &ZigzagAlgebra, i: u32) -> Result<CellDiagram, ModError> {
    let (k, l, m, phi, psi) = ny_ses(alg, i)?;
    ses_extend(alg, &k, &l, &m, &phi, &psi, 1)
}

/// 0 → P_i{2} → (P_{i−1}{1} → P_{i+1}{1}) → P_i → 0 for λ = 1.
#[allow(clippy::type_complexity)]
pub fn ny_ses(
    alg: &ZigzagAlgebra,
    i: u32,
) -> Result<(CellDiagram, CellDiagram, CellDiagram, CellMap, CellMap), ModError> {
    if alg.lambda != 1 || i < 1 || i >= alg.n {
        return Err(range_error("λ = 1 and 1 ≤ i ≤ n−1"));
    }
    let f = alg.field();
    let mut k = CellDiagram::new(Side::Left);
    k.add_cell(i, 2);
    let mut l = CellDiagram::new(Side::Left);
    let lo = (i > 1).then(|| l.add_cell(i - 1, 1));
    let hi = l.add_cell(i + 1, 1);
    if let Some(a) = lo {
        l.add_edge(a, hi, alg.walk(&[i - 1, i, i + 1]), f);
    }
    let mut m = CellDiagram::new(Side::Left);
    m.add_cell(i, 0);
    let mut phi = CellMap::zero(1, 0);
    let mut psi = CellMap::zero(l.len(), 0);
    if let Some(a) = lo {
        phi.push(0, a, alg.arrow(i, i - 1));
        psi.push(a, 0, alg.arrow(i - 1, i));
    }
    phi.push(0, hi, alg.arrow(i, i + 1).neg(f));
    psi.push(hi, 0, alg.arrow(i + 1, i));
    Ok((k, l, m, phi, psi))
}

/// Resolution of L_n (left) or _nL (right) for λ = 0.
pub fn ln_resolution(alg: &ZigzagAlgebra, side: Side) -> Result<NYResolution, ModError> {
    if alg.lambda != 0 {
        return Err(range_error("the L_n resolution is for λ = 0"));
    }
    let f = alg.field();
    let n = alg.n;
    let p = alg.p as i64;
    let mut d = CellDiagram::new(side);
    let cells: Vec<usize> = (0..p - 1).map(|k| d.add_cell(n - 1, 3 - 2 * p + 2 * k)).collect();
    let last = d.add_cell(n, 0);
    for w in cells.windows(2) {
        d.add_edge(w[0], w[1], AlgElement::idempotent(n - 1), f);
    }
    let label = match side {
        Side::Left => alg.arrow(n - 1, n),
        Side::Right => alg.arrow(n, n - 1),
    };
    d.add_edge(*cells.last().unwrap(), last, label, f);
    NYResolution::from_diagram(alg, n, side, d)
}

/// A map between two cell resolutions, with components keyed by (source cell, target cell).
#[derive(Clone, Debug)]
pub struct AppendixMap {
    pub source: CellDiagram,
    pub target: CellDiagram,
    pub map: CellMap,
}

impl AppendixMap {
    pub fn components(&self) -> BTreeMap<(usize, usize), AlgElement> {
        let mut out = BTreeMap::new();
        for (c, imgs) in self.map.images.iter().enumerate() {
            for (t, a) in imgs {
                out.insert((c, *t), a.clone());
            }
        }
        out
    }

    pub fn to_mod(&self, alg: &ZigzagAlgebra) -> Result<(Module, Module, ModMap), ModError> {
        let s = Module::compile(alg, &self.source)?;
        let t = Module::compile(alg, &self.target)?;
        let m = cell_map_to_mod(&s, &t, &self.map);
        Ok((s, t, m))
    }

    pub fn check_chain(&self, alg: &ZigzagAlgebra) -> Result<(), ModError> {
        let (s, t, m) = self.to_mod(alg)?;
        m.check(&s, &t)
    }
}

fn appendix_range(alg: &ZigzagAlgebra, i: u32) -> Result<(), ModError> {
    if alg.lambda != 1 {
        return Err(range_error("appendix maps are for λ = 1"));
    }
    if i < 1 || i + 2 > alg.n {
        return Err(range_error("need 1 ≤ i ≤ n−2"));
    }
    Ok(())
}

/// Resolution of L_{i+1} in the shape P_{i+1}^{p−1} → (P_i, P_{i+2}) → P_{i+1}^{p−1},
/// the top copy at `top`.
fn two_row_resolution(alg: &ZigzagAlgebra, i: u32, top: i64) -> (CellDiagram, Vec<usize>, usize, usize, Vec<usize>) {
    let f = alg.field();
    let p = alg.p as i64;
    let mut d = CellDiagram::new(Side::Left);
    let upper: Vec<usize> = (0..p - 1).map(|k| d.add_cell(i + 1, top + 2 * k)).collect();
    let mid = top + 2 * (p - 2) + 1;
    let a = d.add_cell(i, mid);
    let b = d.add_cell(i + 2, mid);
    let lower: Vec<usize> = (0..p - 1).map(|k| d.add_cell(i + 1, mid + 1 + 2 * k)).collect();
    for row in [&upper, &lower] {
        for w in row.windows(2) {
            d.add_edge(w[0], w[1], AlgElement::idempotent(i + 1), f);
        }
    }
    let u = *upper.last().unwrap();
    d.add_edge(u, b, alg.arrow(i + 1, i + 2).neg(f), f);
    d.add_edge(u, a, alg.arrow(i + 1, i), f);
    d.add_edge(b, lower[0], alg.arrow(i + 2, i + 1), f);
    d.add_edge(a, lower[0], alg.arrow(i, i + 1), f);
    d.add_edge(a, b, alg.walk(&[i, i + 1, i + 2]), f);
    (d, upper, a, b, lower)
}

/// Cells of the λ = 1 left resolution of L_i by role.
struct NyCells {
    top: usize,
    lo: Vec<usize>,
    hi: Vec<usize>,
    bottom: usize,
}

fn ny_cells(d: &CellDiagram, i: u32) -> NyCells {
    let top = 0;
    let bottom = d.len() - 1;
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for (k, c) in d.cells.iter().enumerate().take(bottom).skip(1) {
        if c.vertex + 1 == i {
            lo.push(k);
        } else {
            hi.push(k);
        }
    }
    NyCells { top, lo, hi, bottom }
}

/// ψ_{i+1}: L_{i+1}[1]{2p−1} → L_i. The identity on the P_{i+1} row is completed by the
/// identity P_i{0} → P_i{0}; without it the map does not commute with ∂.
pub fn psi_map(alg: &ZigzagAlgebra, i: u32) -> Result<AppendixMap, ModError> {
    let mut m = psi_map_literal(alg, i)?;
    let (_, _, a, _, _) = two_row_resolution(alg, i, 3 - 2 * alg.p as i64);
    let bottom = m.target.len() - 1;
    m.map.push(a, bottom, AlgElement::idempotent(i));
    Ok(m)
}

/// ψ_{i+1} with only the identity components on the P_{i+1} row.
pub fn psi_map_literal(alg: &ZigzagAlgebra, i: u32) -> Result<AppendixMap, ModError> {
    appendix_range(alg, i)?;
    let p = alg.p as i64;
    let (source, upper, _, _, _) = two_row_resolution(alg, i, 3 - 2 * p);
    let target = ny_template(alg, i, Side::Left);
    let cells = ny_cells(&target, i);
    let mut map = CellMap::zero(source.len(), 0);
    for (r, &c) in upper.iter().enumerate() {
        map.push(c, cells.hi[r], AlgElement::idempotent(i + 1));
    }
    Ok(AppendixMap { source, target, map })
}

/// c / d in F_p where c is ± a product of factorials; asserts the denominators are invertible.
fn frac(f: &Field, num: i64, den: &[u32]) -> u32 {
    let mut r = f.from_i64(num);
    for &k in den {
        let fk = f.factorial(k);
        let inv = f.inv(fk).unwrap_or_else(|| panic!("{k}! is not invertible mod {}", f.p()));
        r = f.mul(r, inv);
    }
    r
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// φ_i: L_i → L_{i+1}[1]{1} from the component list; valid for every prime p.
pub fn phi_map(alg: &ZigzagAlgebra, i: u32) -> Result<AppendixMap, ModError> {
    appendix_range(alg, i)?;
    let f = alg.field();
    let p = alg.p as i64;
    let pu = alg.p;
    let source = ny_template(alg, i, Side::Left);
    let sc = ny_cells(&source, i);
    let (target, _upper, ta, tb, lower) = two_row_resolution(alg, i, 5 - 4 * p);
    let c = |v: u32, k: i64| -> AlgElement {
        let l = alg.loop_at(v);
        if k == 0 {
            AlgElement::idempotent(v)
        } else if l.is_zero() {
            AlgElement::zero()
        } else {
            alg.pow(&l, k as u32)
        }
    };
    let mul = |a: &AlgElement, b: &AlgElement| alg.mul(a, b);
    let mut map = CellMap::zero(source.len(), 0);
    // Row index k of P_{i±1}{−1−2k}; the template lists rows by increasing shift.
    let row = |cells: &[usize], k: i64| cells[(p - 2 - k) as usize];
    for j in 0..=p - 2 {
        let x = frac(f, sign(j + 1) * f.factorial((p - j - 2) as u32) as i64, &[]);
        let lab = mul(&alg.arrow(i, i + 1), &c(i + 1, p - j - 2)).scale(x, f);
        map.push(sc.bottom, lower[j as usize], lab);
    }
    let b = mul(&alg.walk(&[i, i + 1, i + 2]), &c(i + 2, p - 2)).neg(f);
    map.push(sc.bottom, tb, b);
    for k in 0..=p - 2 {
        let src = row(&sc.hi, k);
        for j in 0..=p - 3 - k {
            let x = frac(f, sign(k + j) * f.factorial((p - 2 - j) as u32) as i64, &[(k + 1) as u32]);
            map.push(src, lower[j as usize], c(i + 1, p - j - k - 2).scale(x, f));
        }
        map.push(src, lower[(p - 2 - k) as usize], AlgElement::idempotent(i + 1).neg(f));
        if k <= p - 3 {
            let x = frac(f, sign(k), &[(k + 1) as u32]);
            map.push(src, tb, mul(&alg.arrow(i + 1, i + 2), &c(i + 2, p - k - 2)).scale(x, f));
        }
    }
    let last_hi = row(&sc.hi, p - 2);
    map.push(last_hi, tb, alg.arrow(i + 1, i + 2).neg(f));
    map.push(last_hi, ta, alg.arrow(i + 1, i).scale(2 % pu, f));
    if i > 1 {
        for k in 0..=p - 2 {
            let src = row(&sc.lo, k);
            for j in 0..=p - 3 - k {
                let x = frac(f, sign(k + 1) * k, &[(k + 1) as u32, (j + 1) as u32]);
                let lab = mul(&alg.walk(&[i - 1, i, i + 1]), &c(i + 1, p - j - k - 3)).scale(x, f);
                map.push(src, lower[j as usize], lab);
            }
            if (1..=p - 3).contains(&k) {
                let x = frac(f, sign(k + 1) * k, &[(k + 1) as u32]);
                let lab = mul(&alg.walk(&[i - 1, i, i + 1, i + 2]), &c(i + 2, p - k - 3)).scale(x, f);
                map.push(src, tb, lab);
            }
        }
        map.push(row(&sc.lo, p - 2), ta, alg.arrow(i - 1, i).scale(2 % pu, f));
    }
    map.push(sc.top, ta, AlgElement::idempotent(i));
    merge_map(&mut map, f);
    Ok(AppendixMap { source, target, map })
}

fn merge_map(m: &mut CellMap, f: &Field) {
    for imgs in &mut m.images {
        let mut acc: BTreeMap<usize, AlgElement> = BTreeMap::new();
        for (t, a) in imgs.drain(..) {
            let e = acc.entry(t).or_default();
            *e = e.add(&a, f);
        }
        *imgs = acc.into_iter().filter(|(_, a)| !a.is_zero()).collect();
    }
}

/// The separately printed p = 2 diagram for φ_i.
pub fn phi_map_p2(alg: &ZigzagAlgebra, i: u32) -> Result<AppendixMap, ModError> {
    appendix_range(alg, i)?;
    if alg.p != 2 {
        return Err(range_error("the dedicated diagram is for p = 2"));
    }
    let source = ny_template(alg, i, Side::Left);
    let sc = ny_cells(&source, i);
    let (target, _, ta, tb, lower) = two_row_resolution(alg, i, -3);
    let mut map = CellMap::zero(source.len(), 0);
    map.push(sc.top, ta, AlgElement::idempotent(i));
    map.push(sc.hi[0], lower[0], AlgElement::idempotent(i + 1));
    map.push(sc.hi[0], tb, alg.arrow(i + 1, i + 2));
    map.push(sc.bottom, lower[0], alg.arrow(i, i + 1));
    map.push(sc.bottom, tb, alg.walk(&[i, i + 1, i + 2]));
    Ok(AppendixMap { source, target, map })
}

/// Dimension of the stable hom space at degree 0 containing the map, and whether the map
/// is null-homotopic there.
pub fn stable_class(alg: &ZigzagAlgebra, m: &AppendixMap) -> Result<(usize, bool), ModError> {
    let (_, t, _) = m.to_mod(alg)?;
    let h = crate::pdgmod::hom_cell(&m.source, &t);
    let stable = h.complex.slash_homology(1).get(&0).copied().unwrap_or(0);
    let images: Vec<Vec<u32>> = m.map.images.iter().map(|l| t.vector_of_labels(l, alg.field())).collect();
    let x = h.vector(0, &images);
    let null = in_image_of_power(&h.complex, 0, &x);
    Ok((stable, null))
}

/// Whether x ∈ im ∂^{p−1} landing in degree d.
pub fn in_image_of_power(c: &crate::pcomplex::PComplex, d: i64, x: &[u32]) -> bool {
    let f = c.field();
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    let p = c.p as i64;
    let m = c.power_block(d - 2 * (p - 1), c.p - 1);
    if m.cols == 0 {
        return false;
    }
    crate::linalg::solve(&m, x, &f).is_some()
}

/// Short description used in reports.
pub fn describe(m: &AppendixMap, alg: &ZigzagAlgebra) -> String {
    let mut parts = Vec::new();
    for ((s, t), a) in m.components() {
        let (cs, ct) = (m.source.cells[s], m.target.cells[t]);
        parts.push(format!(
            "P{}{{{}}}->P{}{{{}}}: {}",
            cs.vertex,
            cs.shift,
            ct.vertex,
            ct.shift,
            a.render(alg.n, alg.p)
        ));
    }
    parts.join("; ")
}
