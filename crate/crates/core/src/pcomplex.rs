//! Finite graded p-complexes over F_p.
//!
//! The differential has degree +2 and ∂^p = 0. Indecomposables are indexed by
//! `(j, b)`: a chain of length j+1 occupying degrees b, b+2, …, b+2j.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::arith::{cyc_reduce, qint_laurent, CycInt, Field, LaurentPoly};
use crate::linalg::{inverse, kernel, rank, solve, span_basis, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PComplex {
    pub p: u32,
    /// Nonzero dimensions by degree.
    pub dims: BTreeMap<i64, usize>,
    /// `diff[d]` maps degree d to degree d+2 (rows = dim d+2, cols = dim d). Missing means zero.
    pub diff: BTreeMap<i64, Mat>,
}

/// First failing degree together with the nonzero product ∂^p starting there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: i64,
    pub witness: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Decomposition {
    /// Multiplicity of each indecomposable (j, b).
    pub summands: BTreeMap<(u32, i64), usize>,
}

impl Decomposition {
    pub fn non_contractible(&self, p: u32) -> BTreeMap<(u32, i64), usize> {
        self.summands.iter().filter(|((j, _), _)| *j < p - 1).map(|(k, v)| (*k, *v)).collect()
    }

    pub fn is_contractible(&self, p: u32) -> bool {
        self.summands.keys().all(|(j, _)| *j == p - 1)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut d = BTreeMap::new();
        for ((j, b), m) in &self.summands {
            for k in 0..=*j as i64 {
                *d.entry(b + 2 * k).or_insert(0) += m;
            }
        }
        d
    }

    /// Multiset union.
    pub fn merge(&self, o: &Decomposition) -> Decomposition {
        let mut s = self.summands.clone();
        for (k, v) in &o.summands {
            *s.entry(*k).or_insert(0) += v;
        }
        Decomposition { summands: s }
    }
}

/// A degree-preserving (up to `qdeg`) linear map between p-complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMap {
    pub source: PComplex,
    pub target: PComplex,
    pub qdeg: i64,
    /// `blocks[d]` maps source degree d to target degree d + qdeg.
    pub blocks: BTreeMap<i64, Mat>,
}

impl PComplex {
    pub fn zero(p: u32) -> PComplex {
        PComplex { p, dims: BTreeMap::new(), diff: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        Field::new(self.p).expect("prime")
    }

    pub fn dim(&self, d: i64) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Builds from dims and blocks, dropping zero dimensions.
    pub fn new(p: u32, dims: BTreeMap<i64, usize>, diff: BTreeMap<i64, Mat>) -> PComplex {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|(_, v)| *v > 0).collect();
        let diff = diff
            .into_iter()
            .filter(|(d, m)| dims.contains_key(d) && dims.contains_key(&(d + 2)) && !m.is_zero())
            .collect();
        PComplex { p, dims, diff }
    }

    /// The (j+1)-dimensional indecomposable with bottom degree b.
    pub fn indecomposable(p: u32, j: u32, b: i64) -> PComplex {
        assert!(j < p, "indecomposables have length at most p");
        let mut dims = BTreeMap::new();
        let mut diff = BTreeMap::new();
        for k in 0..=j as i64 {
            dims.insert(b + 2 * k, 1);
            if k < j as i64 {
                diff.insert(b + 2 * k, Mat::identity(1));
            }
        }
        PComplex::new(p, dims, diff)
    }

    /// Balanced Ṽ_j, degrees −j..j.
    pub fn vtilde(p: u32, j: u32) -> PComplex {
        Self::indecomposable(p, j, -(j as i64))
    }

    /// Ṽ_0 in degree 0, the unit for ⊗.
    pub fn unit(p: u32) -> PComplex {
        Self::indecomposable(p, 0, 0)
    }

    pub fn block(&self, d: i64) -> Mat {
        match self.diff.get(&d) {
            Some(m) => m.clone(),
            None => Mat::zeros(self.dim(d + 2), self.dim(d)),
        }
    }

    /// ∂^k from degree d to degree d + 2k.
    pub fn power_block(&self, d: i64, k: u32) -> Mat {
        let f = self.field();
        let mut m = Mat::identity(self.dim(d));
        for s in 0..k as i64 {
            m = self.block(d + 2 * s).mul(&m, &f);
        }
        m
    }

    pub fn validate(&self) -> Result<(), Violation> {
        for (&d, m) in &self.diff {
            if m.rows != self.dim(d + 2) || m.cols != self.dim(d) {
                return Err(Violation { degree: d, witness: m.clone() });
            }
        }
        for &d in self.dims.keys() {
            let m = self.power_block(d, self.p);
            if !m.is_zero() {
                return Err(Violation { degree: d, witness: m });
            }
        }
        Ok(())
    }

    /// Translates every degree by l (the grading shift {l}).
    pub fn degree_shift(&self, l: i64) -> PComplex {
        PComplex {
            p: self.p,
            dims: self.dims.iter().map(|(d, v)| (d + l, *v)).collect(),
            diff: self.diff.iter().map(|(d, m)| (d + l, m.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, o: &PComplex) -> PComplex {
        let mut asm = Assembly::new(self.p);
        asm.part(self, 0);
        asm.part(o, 0);
        asm.build()
    }

    /// Σ_d dim C_d q^d.
    pub fn graded_dim(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.dims.iter().map(|(d, v)| (*d, *v as i64)))
    }

    /// Per degree: dim ker ∂^k − dim im ∂^{p−k} landing there.
    pub fn slash_homology(&self, k: u32) -> BTreeMap<i64, usize> {
        assert!(k >= 1 && k < self.p, "slash homology index out of range");
        let f = self.field();
        let mut out = BTreeMap::new();
        for &d in self.dims.keys() {
            let ker = self.dim(d) - rank(&self.power_block(d, k), &f);
            let im = rank(&self.power_block(d - 2 * (self.p - k) as i64, self.p - k), &f);
            let h = ker - im;
            if h > 0 {
                out.insert(d, h);
            }
        }
        out
    }

    fn power_rank(&self, d: i64, k: u32, f: &Field) -> usize {
        if k >= self.p {
            return 0;
        }
        if self.dim(d) == 0 || self.dim(d + 2 * k as i64) == 0 {
            return 0;
        }
        if k == 0 {
            return self.dim(d);
        }
        rank(&self.power_block(d, k), f)
    }

    /// Graded Jordan type of ∂ by inclusion–exclusion on ranks of its powers.
    pub fn decompose(&self) -> Decomposition {
        let f = self.field();
        let mut summands = BTreeMap::new();
        let mut cache: BTreeMap<(i64, u32), usize> = BTreeMap::new();
        let mut r = |d: i64, k: u32| -> usize {
            *cache.entry((d, k)).or_insert_with(|| self.power_rank(d, k, &f))
        };
        for &b in self.dims.keys() {
            for j in 0..self.p {
                let n = r(b, j) as i64 - r(b, j + 1) as i64 - r(b - 2, j + 1) as i64 + r(b - 2, j + 2) as i64;
                if n > 0 {
                    summands.insert((j, b), n as usize);
                }
            }
        }
        Decomposition { summands }
    }

    pub fn symbol(&self) -> CycInt {
        symbol_of(&self.decompose(), self.p)
    }

    /// Both acyclicity criteria, (decomposition, slash homology).
    pub fn acyclicity_criteria(&self) -> (bool, bool) {
        let by_decomposition = self.decompose().is_contractible(self.p);
        let by_homology = (1..self.p).all(|k| self.slash_homology(k).is_empty());
        (by_decomposition, by_homology)
    }

    pub fn is_acyclic(&self) -> bool {
        let (a, b) = self.acyclicity_criteria();
        assert_eq!(a, b, "acyclicity criteria disagree");
        a
    }

    /// Fast acyclicity test through the decomposition only.
    pub fn is_contractible(&self) -> bool {
        self.decompose().is_contractible(self.p)
    }

    pub fn tensor(&self, o: &PComplex) -> PComplex {
        let f = self.field();
        let idx = TensorIndex::new(self, o);
        let mut diff = BTreeMap::new();
        for (&e, &n) in &idx.dims {
            let Some(&n2) = idx.dims.get(&(e + 2)) else { continue };
            let mut m = Mat::zeros(n2, n);
            for (&dc, &cdim) in &self.dims {
                let dd = e - dc;
                let ddim = o.dim(dd);
                if ddim == 0 {
                    continue;
                }
                let src = idx.offset(dc, dd);
                if let Some(bc) = self.diff.get(&dc) {
                    let tgt = idx.offset(dc + 2, dd);
                    for i2 in 0..bc.rows {
                        for i in 0..cdim {
                            let a = bc.get(i2, i);
                            if a == 0 {
                                continue;
                            }
                            for j in 0..ddim {
                                m.add_at(&f, tgt + i2 * ddim + j, src + i * ddim + j, a);
                            }
                        }
                    }
                }
                if let Some(bd) = o.diff.get(&dd) {
                    let tgt = idx.offset(dc, dd + 2);
                    let d2 = bd.rows;
                    for i in 0..cdim {
                        for j2 in 0..d2 {
                            for j in 0..ddim {
                                let a = bd.get(j2, j);
                                if a != 0 {
                                    m.add_at(&f, tgt + i * d2 + j2, src + i * ddim + j, a);
                                }
                            }
                        }
                    }
                }
            }
            diff.insert(e, m);
        }
        PComplex::new(self.p, idx.dims.clone(), diff)
    }

    /// [h]{l}: |h| tensorings with Ṽ_{p−2}{∓p}, then the grading shift {l}.
    pub fn shift(&self, h: i64, l: i64) -> PComplex {
        let mut c = self.clone();
        let unit = shift_unit(self.p, h.signum());
        for _ in 0..h.unsigned_abs() {
            c = c.tensor(&unit);
        }
        c.degree_shift(l)
    }

    pub fn identity_map(&self) -> PMap {
        PMap {
            source: self.clone(),
            target: self.clone(),
            qdeg: 0,
            blocks: self.dims.iter().map(|(d, n)| (*d, Mat::identity(*n))).collect(),
        }
    }

    pub fn zero_map(&self, target: &PComplex, qdeg: i64) -> PMap {
        PMap { source: self.clone(), target: target.clone(), qdeg, blocks: BTreeMap::new() }
    }

    /// Internal hom over the ground field with ∂f = ∂∘f − f∘∂.
    pub fn hom(&self, o: &PComplex) -> PComplex {
        let f = self.field();
        let degs = hom_degrees(self, o);
        let mut dims = BTreeMap::new();
        let mut diff = BTreeMap::new();
        for &l in &degs {
            dims.insert(l, hom_dim(self, o, l));
        }
        for &l in &degs {
            if dims.contains_key(&(l + 2)) {
                diff.insert(l, hom_differential(self, o, l, &f));
            }
        }
        PComplex::new(self.p, dims, diff)
    }
}

fn shift_unit(p: u32, sign: i64) -> PComplex {
    match sign {
        1 => PComplex::vtilde(p, p - 2).degree_shift(-(p as i64)),
        -1 => PComplex::vtilde(p, p - 2).degree_shift(p as i64),
        _ => PComplex::unit(p),
    }
}

pub fn symbol_of(dec: &Decomposition, p: u32) -> CycInt {
    let mut acc = LaurentPoly::zero();
    for ((j, b), m) in &dec.summands {
        if *j == p - 1 {
            continue;
        }
        let term = qint_laurent(j + 1).shift(b + *j as i64);
        acc = &acc + &term.scale(&num_bigint::BigInt::from(*m as u64));
    }
    cyc_reduce(p, &acc)
}

/// Offsets of the basis of C ⊗ D: degree e lists pairs (dc, dd) by increasing dc, row-major inside.
struct TensorIndex {
    dims: BTreeMap<i64, usize>,
    offsets: BTreeMap<(i64, i64), usize>,
}

impl TensorIndex {
    fn new(c: &PComplex, d: &PComplex) -> TensorIndex {
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        let mut offsets = BTreeMap::new();
        for (&dc, &nc) in &c.dims {
            for (&dd, &nd) in &d.dims {
                let e = dc + dd;
                let cur = dims.entry(e).or_insert(0);
                offsets.insert((dc, dd), *cur);
                *cur += nc * nd;
            }
        }
        TensorIndex { dims, offsets }
    }

    fn offset(&self, dc: i64, dd: i64) -> usize {
        self.offsets[&(dc, dd)]
    }
}

/// Index of basis vector (i in degree dc) ⊗ (j in degree dd) of C ⊗ D, within its degree.
pub fn tensor_index(c: &PComplex, d: &PComplex, dc: i64, i: usize, dd: i64, j: usize) -> usize {
    let mut off = 0;
    for (&x, &nx) in &c.dims {
        if x >= dc {
            break;
        }
        off += nx * d.dim(dc + dd - x);
    }
    off + i * d.dim(dd) + j
}

fn hom_degrees(c: &PComplex, d: &PComplex) -> Vec<i64> {
    let mut v: Vec<i64> = Vec::new();
    for dc in c.dims.keys() {
        for dd in d.dims.keys() {
            v.push(dd - dc);
        }
    }
    v.sort();
    v.dedup();
    v
}

fn hom_dim(c: &PComplex, d: &PComplex, l: i64) -> usize {
    c.dims.iter().map(|(dc, n)| n * d.dim(dc + l)).sum()
}

/// Offset of the block Hom(C_dc, D_{dc+l}) inside Hom_l; entries stored row-major (target row, source col).
fn hom_offset(c: &PComplex, d: &PComplex, l: i64, dc: i64) -> usize {
    c.dims.iter().take_while(|(x, _)| **x < dc).map(|(x, n)| n * d.dim(x + l)).sum()
}

fn hom_differential(c: &PComplex, d: &PComplex, l: i64, f: &Field) -> Mat {
    let n0 = hom_dim(c, d, l);
    let n1 = hom_dim(c, d, l + 2);
    let mut m = Mat::zeros(n1, n0);
    for (&dc, &nc) in &c.dims {
        let nd = d.dim(dc + l);
        if nd == 0 {
            continue;
        }
        let src = hom_offset(c, d, l, dc);
        // ∂_D ∘ g : C_dc → D_{dc+l+2}
        if let Some(bd) = d.diff.get(&(dc + l)) {
            let tgt = hom_offset(c, d, l + 2, dc);
            for r2 in 0..bd.rows {
                for r in 0..nd {
                    let a = bd.get(r2, r);
                    if a == 0 {
                        continue;
                    }
                    for s in 0..nc {
                        m.add_at(f, tgt + r2 * nc + s, src + r * nc + s, a);
                    }
                }
            }
        }
        // −g ∘ ∂_C : C_{dc−2} → D_{dc+l}
        if let Some(bc) = c.diff.get(&(dc - 2)) {
            let ncm = bc.cols;
            let tgt = hom_offset(c, d, l + 2, dc - 2);
            for r in 0..nd {
                for s in 0..nc {
                    for s0 in 0..ncm {
                        let a = bc.get(s, s0);
                        if a != 0 {
                            m.add_at(f, tgt + r * ncm + s0, src + r * nc + s, f.neg(a));
                        }
                    }
                }
            }
        }
    }
    m
}

impl PMap {
    pub fn block(&self, d: i64) -> Mat {
        match self.blocks.get(&d) {
            Some(m) => m.clone(),
            None => Mat::zeros(self.target.dim(d + self.qdeg), self.source.dim(d)),
        }
    }

    pub fn is_chain_map(&self) -> bool {
        let f = self.source.field();
        let mut degs: Vec<i64> = self.source.dims.keys().copied().collect();
        degs.extend(self.source.dims.keys().map(|d| d - 2));
        degs.sort();
        degs.dedup();
        degs.iter().all(|&d| {
            let lhs = self.target.block(d + self.qdeg).mul(&self.block(d), &f);
            let rhs = self.block(d + 2).mul(&self.source.block(d), &f);
            lhs == rhs
        })
    }

    pub fn compose(&self, after: &PMap) -> PMap {
        let f = self.source.field();
        let mut blocks = BTreeMap::new();
        for &d in self.source.dims.keys() {
            let m = after.block(d + self.qdeg).mul(&self.block(d), &f);
            if !m.is_zero() {
                blocks.insert(d, m);
            }
        }
        PMap { source: self.source.clone(), target: after.target.clone(), qdeg: self.qdeg + after.qdeg, blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    /// Cone: source repeated p−1 times in degrees shifted by −2(p−1), …, −2, then −f into the target.
    pub fn cone(&self) -> Result<PComplex, ()> {
        if self.qdeg != 0 || !self.is_chain_map() {
            return Err(());
        }
        let p = self.source.p;
        let f = self.source.field();
        let mut asm = Assembly::new(p);
        let copies: Vec<usize> =
            (0..p - 1).map(|k| asm.part(&self.source, -2 * (p as i64 - 1) + 2 * k as i64)).collect();
        let tgt = asm.part(&self.target, 0);
        for w in copies.windows(2) {
            asm.link_identity(w[0], w[1], &self.source);
        }
        asm.link(copies[copies.len() - 1], tgt, &self.blocks_negated(&f));
        Ok(asm.build())
    }

    /// Cocone: source in degree 0, then −f into the target repeated p−1 times at shifts 2, …, 2(p−1).
    pub fn cocone(&self) -> Result<PComplex, ()> {
        if self.qdeg != 0 || !self.is_chain_map() {
            return Err(());
        }
        let p = self.source.p;
        let f = self.source.field();
        let mut asm = Assembly::new(p);
        let src = asm.part(&self.source, 0);
        let copies: Vec<usize> = (0..p - 1).map(|k| asm.part(&self.target, 2 + 2 * k as i64)).collect();
        asm.link(src, copies[0], &self.blocks_negated(&f));
        for w in copies.windows(2) {
            asm.link_identity(w[0], w[1], &self.target);
        }
        Ok(asm.build())
    }

    fn blocks_negated(&self, f: &Field) -> BTreeMap<i64, Mat> {
        self.blocks.iter().map(|(d, m)| (*d, m.neg(f))).collect()
    }

    /// Whether f lies in ∂^{p−1}(Hom_{qdeg−2(p−1)}) of the internal hom complex.
    pub fn is_null_homotopic(&self) -> bool {
        let f = self.source.field();
        let (c, d) = (&self.source, &self.target);
        let p = c.p as i64;
        let l0 = self.qdeg - 2 * (p - 1);
        let mut m = Mat::identity(hom_dim(c, d, l0));
        for s in 0..p - 1 {
            m = hom_differential(c, d, l0 + 2 * s, &f).mul(&m, &f);
        }
        let target = self.as_hom_vector();
        if target.iter().all(|&x| x == 0) {
            return true;
        }
        solve(&m, &target, &f).is_some()
    }

    /// Coordinates of f inside Hom_qdeg(source, target).
    pub fn as_hom_vector(&self) -> Vec<u32> {
        let (c, d) = (&self.source, &self.target);
        let l = self.qdeg;
        let mut v = vec![0u32; hom_dim(c, d, l)];
        for (&dc, &nc) in &c.dims {
            let nd = d.dim(dc + l);
            if nd == 0 {
                continue;
            }
            let off = hom_offset(c, d, l, dc);
            let b = self.block(dc);
            for r in 0..nd {
                for s in 0..nc {
                    v[off + r * nc + s] = b.get(r, s);
                }
            }
        }
        v
    }

    /// Quasi-isomorphism test through the cone; both acyclicity criteria must agree.
    pub fn is_quasi_iso(&self) -> bool {
        self.cone().map(|c| c.is_acyclic()).unwrap_or(false)
    }

    /// Tensor product of maps of degree 0, acting on C ⊗ D.
    pub fn tensor(&self, o: &PMap) -> PMap {
        let f = self.source.field();
        let src = self.source.tensor(&o.source);
        let tgt = self.target.tensor(&o.target);
        let mut blocks = BTreeMap::new();
        for (&e, &n) in &src.dims {
            let mut m = Mat::zeros(tgt.dim(e + self.qdeg + o.qdeg), n);
            for (&dc, &nc) in &self.source.dims {
                let dd = e - dc;
                let nd = o.source.dim(dd);
                if nd == 0 {
                    continue;
                }
                let a = self.block(dc);
                let b = o.block(dd);
                for i in 0..nc {
                    for j in 0..nd {
                        let col = tensor_index(&self.source, &o.source, dc, i, dd, j);
                        for i2 in 0..a.rows {
                            let x = a.get(i2, i);
                            if x == 0 {
                                continue;
                            }
                            for j2 in 0..b.rows {
                                let y = b.get(j2, j);
                                if y == 0 {
                                    continue;
                                }
                                let row = tensor_index(
                                    &self.target,
                                    &o.target,
                                    dc + self.qdeg,
                                    i2,
                                    dd + o.qdeg,
                                    j2,
                                );
                                m.add_at(&f, row, col, f.mul(x, y));
                            }
                        }
                    }
                }
            }
            blocks.insert(e, m);
        }
        PMap { source: src, target: tgt, qdeg: self.qdeg + o.qdeg, blocks }
    }
}

/// Assembles a complex from shifted parts plus off-diagonal blocks between parts.
pub struct Assembly {
    p: u32,
    parts: Vec<(PComplex, i64)>,
    links: Vec<(usize, usize, BTreeMap<i64, Mat>)>,
}

impl Assembly {
    pub fn new(p: u32) -> Assembly {
        Assembly { p, parts: Vec::new(), links: Vec::new() }
    }

    /// Adds `c{shift}`; returns its part index.
    pub fn part(&mut self, c: &PComplex, shift: i64) -> usize {
        self.parts.push((c.clone(), shift));
        self.parts.len() - 1
    }

    /// Adds a block from part `a` to part `b`; `blocks[d]` acts on the unshifted degree d of part a.
    pub fn link(&mut self, a: usize, b: usize, blocks: &BTreeMap<i64, Mat>) {
        self.links.push((a, b, blocks.clone()));
    }

    pub fn link_identity(&mut self, a: usize, b: usize, c: &PComplex) {
        let blocks = c.dims.iter().map(|(d, n)| (*d, Mat::identity(*n))).collect();
        self.link(a, b, &blocks);
    }

    fn offsets(&self) -> (BTreeMap<i64, usize>, Vec<BTreeMap<i64, usize>>) {
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        let mut offs = Vec::new();
        for (c, s) in &self.parts {
            let mut o = BTreeMap::new();
            for (d, n) in &c.dims {
                let cur = dims.entry(d + s).or_insert(0);
                o.insert(d + s, *cur);
                *cur += n;
            }
            offs.push(o);
        }
        (dims, offs)
    }

    /// Offset of part `k` inside the assembled degree `d` (shifted degree).
    pub fn offset(&self, k: usize, d: i64) -> usize {
        self.offsets().1[k].get(&d).copied().unwrap_or(0)
    }

    pub fn build(&self) -> PComplex {
        let f = Field::new(self.p).expect("prime");
        let (dims, offs) = self.offsets();
        let mut diff: BTreeMap<i64, Mat> = BTreeMap::new();
        for &d in dims.keys() {
            if let Some(&n2) = dims.get(&(d + 2)) {
                diff.insert(d, Mat::zeros(n2, dims[&d]));
            }
        }
        let mut put = |d: i64, r0: usize, c0: usize, m: &Mat| {
            if let Some(t) = diff.get_mut(&d) {
                for r in 0..m.rows {
                    for c in 0..m.cols {
                        let v = m.get(r, c);
                        if v != 0 {
                            t.add_at(&f, r0 + r, c0 + c, v);
                        }
                    }
                }
            }
        };
        for (k, (c, s)) in self.parts.iter().enumerate() {
            for (d, m) in &c.diff {
                put(d + s, offs[k][&(d + 2 + s)], offs[k][&(d + s)], m);
            }
        }
        for (a, b, blocks) in &self.links {
            let (_, sa) = &self.parts[*a];
            let (_, sb) = &self.parts[*b];
            for (d, m) in blocks {
                if m.rows == 0 || m.cols == 0 {
                    continue;
                }
                let ds = d + sa;
                let dt = ds + 2;
                // Target degree in part b's own grading is dt − sb.
                let _ = dt - sb;
                put(ds, offs[*b][&dt], offs[*a][&ds], m);
            }
        }
        PComplex::new(self.p, dims, diff)
    }
}

/// ι: Ṽ_0 → Ṽ_{p−2} ⊗ Ṽ_{p−2}, ũ_0 ↦ Σ (−1)^i ṽ_i ⊗ ṽ_{p−2−i}, with Ṽ_{p−2} balanced and ∂ṽ_i = ṽ_{i+1}.
pub fn iota(p: u32) -> PMap {
    let f = Field::new(p).expect("prime");
    let v = PComplex::vtilde(p, p - 2);
    let t = v.tensor(&v);
    let src = PComplex::unit(p);
    let mut m = Mat::zeros(t.dim(0), 1);
    let base = -(p as i64 - 2);
    for i in 0..=(p as i64 - 2) {
        let row = tensor_index(&v, &v, base + 2 * i, 0, base + 2 * (p as i64 - 2 - i), 0);
        m.set(row, 0, if i % 2 == 0 { 1 } else { f.neg(1) });
    }
    let mut blocks = BTreeMap::new();
    blocks.insert(0, m);
    PMap { source: src, target: t, qdeg: 0, blocks }
}

/// Kernel basis of ∂ restricted to degree d.
pub fn cycles(c: &PComplex, d: i64) -> Vec<Vec<u32>> {
    kernel(&c.block(d), &c.field())
}

/// One Jordan chain: `vectors[k]` lives in degree `bottom + 2k` and ∂ maps each vector to the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanChain {
    pub bottom: i64,
    pub vectors: Vec<Vec<u32>>,
}

impl JordanChain {
    pub fn j(&self) -> u32 {
        self.vectors.len() as u32 - 1
    }
}

impl PComplex {
    /// Graded Jordan basis of ∂; chain generators of length L in degree b are chosen
    /// as a complement of ker ∂^{L−1} + ∂(ker ∂^{L+1}) inside ker ∂^L.
    pub fn jordan_basis(&self) -> Vec<JordanChain> {
        let f = self.field();
        let p = self.p;
        let ker = |d: i64, l: u32| -> Vec<Vec<u32>> {
            let n = self.dim(d);
            if l == 0 || n == 0 {
                return Vec::new();
            }
            if l >= p {
                return (0..n)
                    .map(|i| {
                        let mut v = vec![0; n];
                        v[i] = 1;
                        v
                    })
                    .collect();
            }
            kernel(&self.power_block(d, l), &f)
        };
        let mut chains = Vec::new();
        for &b in self.dims.keys() {
            let n = self.dim(b);
            for l in (1..=p).rev() {
                let kl = ker(b, l);
                if kl.is_empty() {
                    continue;
                }
                let mut span: Vec<Vec<u32>> = ker(b, l - 1);
                let below = self.block(b - 2);
                for v in ker(b - 2, l + 1) {
                    span.push(below.apply(&v, &f));
                }
                let mut basis = span_basis(&span, n, &f);
                for x in kl {
                    let mut trial = basis.clone();
                    trial.push(x.clone());
                    let nb = span_basis(&trial, n, &f);
                    if nb.len() > basis.len() {
                        basis = nb;
                        let mut vectors = vec![x.clone()];
                        let mut cur = x;
                        for k in 0..(l as i64 - 1) {
                            cur = self.block(b + 2 * k).apply(&cur, &f);
                            vectors.push(cur.clone());
                        }
                        chains.push(JordanChain { bottom: b, vectors });
                    }
                }
            }
        }
        chains
    }

    /// Non-contractible part with split inclusion and projection, both chain maps.
    pub fn minimal_model(&self) -> (PComplex, PMap, PMap) {
        let f = self.field();
        let p = self.p;
        let chains = self.jordan_basis();
        // Per degree: list of (chain index, position) in the order used for the basis matrix.
        let mut cols: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, ch) in chains.iter().enumerate() {
            for k in 0..ch.vectors.len() {
                cols.entry(ch.bottom + 2 * k as i64).or_default().push((ci, k));
            }
        }
        let keep: Vec<usize> = (0..chains.len()).filter(|&c| chains[c].j() < p - 1).collect();
        let mut min = PComplex::zero(p);
        let mut asm = Assembly::new(p);
        for &c in &keep {
            asm.part(&PComplex::indecomposable(p, chains[c].j(), chains[c].bottom), 0);
        }
        if !keep.is_empty() {
            min = asm.build();
        }
        // Position of (chain, k) inside the minimal model's degree.
        let mut min_pos: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut counter: BTreeMap<i64, usize> = BTreeMap::new();
        for &c in &keep {
            for k in 0..chains[c].vectors.len() {
                let d = chains[c].bottom + 2 * k as i64;
                let e = counter.entry(d).or_insert(0);
                min_pos.insert((c, k), *e);
                *e += 1;
            }
        }
        let mut incl = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for (&d, list) in &cols {
            let n = self.dim(d);
            let mut bmat = Mat::zeros(n, list.len());
            for (col, &(c, k)) in list.iter().enumerate() {
                for r in 0..n {
                    bmat.set(r, col, chains[c].vectors[k][r]);
                }
            }
            let binv = inverse(&bmat, &f).expect("Jordan basis spans");
            let m = min.dim(d);
            if m == 0 {
                continue;
            }
            let mut inc = Mat::zeros(n, m);
            let mut pr = Mat::zeros(m, n);
            for (col, &(c, k)) in list.iter().enumerate() {
                if let Some(&mp) = min_pos.get(&(c, k)) {
                    for r in 0..n {
                        inc.set(r, mp, chains[c].vectors[k][r]);
                        pr.set(mp, r, binv.get(col, r));
                    }
                }
            }
            incl.insert(d, inc);
            proj.insert(d, pr);
        }
        let inc = PMap { source: min.clone(), target: self.clone(), qdeg: 0, blocks: incl };
        let pr = PMap { source: self.clone(), target: min.clone(), qdeg: 0, blocks: proj };
        (min, inc, pr)
    }
}

/// A direct sum of random indecomposables of total dimension at most `max_dim`, conjugated
/// degreewise by random invertible matrices. Returns the complex with its known decomposition.
pub fn disguised_sum<R: RngCore>(p: u32, max_dim: usize, rng: &mut R) -> (PComplex, Decomposition) {
    let f = Field::new(p).expect("prime");
    let mut truth = Decomposition::default();
    let mut c = PComplex::zero(p);
    let mut left = max_dim;
    while left > 0 {
        let j = (rng.next_u32() % p).min(left as u32 - 1);
        let b = (rng.next_u32() % 7) as i64 - 3;
        if rng.next_u32() % 5 == 0 && c.total_dim() > 0 {
            break;
        }
        c = c.direct_sum(&PComplex::indecomposable(p, j, b));
        *truth.summands.entry((j, b)).or_insert(0) += 1;
        left -= j as usize + 1;
    }
    let mut g: BTreeMap<i64, (Mat, Mat)> = BTreeMap::new();
    for (&d, &n) in &c.dims {
        loop {
            let mut m = Mat::zeros(n, n);
            for x in m.data.iter_mut() {
                *x = rng.next_u32() % p;
            }
            if let Some(inv) = inverse(&m, &f) {
                g.insert(d, (m, inv));
                break;
            }
        }
    }
    let diff = c
        .diff
        .iter()
        .map(|(&d, m)| (d, g[&(d + 2)].0.mul(&m.mul(&g[&d].1, &f), &f)))
        .collect();
    (PComplex::new(p, c.dims.clone(), diff), truth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(PComplex::unit(3).validate().is_ok());
        assert!(PComplex::indecomposable(3, 2, 0).validate().is_ok());
        let mut dims = BTreeMap::new();
        let mut diff = BTreeMap::new();
        for d in [0, 2, 4] {
            dims.insert(d, 1);
        }
        diff.insert(0, Mat::identity(1));
        diff.insert(2, Mat::identity(1));
        let c = PComplex::new(2, dims, diff);
        assert_eq!(c.validate().unwrap_err().degree, 0);
    }

    #[test]
    fn slash_homology_of_v1() {
        let c = PComplex::vtilde(3, 1);
        assert_eq!(c.slash_homology(1), BTreeMap::from([(1, 1)]));
        assert_eq!(c.slash_homology(2), BTreeMap::from([(-1, 1)]));
    }

    #[test]
    fn symbol_examples() {
        for p in [2, 3, 5] {
            assert!(PComplex::indecomposable(p, p - 1, 5).symbol().is_zero());
            let v = PComplex::vtilde(p, p - 2).degree_shift(p as i64);
            assert_eq!(v.symbol(), -&CycInt::one(p));
        }
    }

    #[test]
    fn minimal_model_of_sum() {
        let c = PComplex::indecomposable(3, 2, 0)
            .direct_sum(&PComplex::indecomposable(3, 1, 2))
            .direct_sum(&PComplex::unit(3));
        let (m, i, pr) = c.minimal_model();
        assert_eq!(m.decompose(), c.decompose().non_contractible(3).into_iter().fold(
            Decomposition::default(),
            |mut d, (k, v)| {
                d.summands.insert(k, v);
                d
            }
        ));
        assert!(i.is_chain_map() && pr.is_chain_map());
        assert_eq!(i.compose(&pr), m.identity_map());
    }

    #[test]
    fn iota_small() {
        let i2 = iota(2);
        assert_eq!(i2.block(0).data, vec![1]);
        for p in [2, 3, 5] {
            assert!(iota(p).is_chain_map());
            assert!(iota(p).is_quasi_iso());
        }
    }
}
