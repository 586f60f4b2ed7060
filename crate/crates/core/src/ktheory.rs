//! The Grothendieck lattice K_0 over 𝕆_p in the basis of indecomposable projectives.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{
    bar, cyc_identity, cyc_inverse, cyc_det, cyc_matadd, cyc_matmul, cyc_matrix_to_root, cyc_matscale, cyc_reduce,
    CycInt, CycMatrix,
};
use crate::functors::{apply_word, Functor};
use crate::pdgmod::{CellDiagram, ModError, Side};
use crate::resolve::{ln_resolution, ny_resolution};
use crate::zigzag::ZigzagAlgebra;

/// Coordinates in the basis [P_1], …, [P_n].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K0Vector {
    pub coords: Vec<CycInt>,
}

impl K0Vector {
    pub fn zero(p: u32, n: usize) -> K0Vector {
        K0Vector { coords: vec![CycInt::zero(p); n] }
    }

    /// [P_i], 1-based.
    pub fn unit(p: u32, n: usize, i: u32) -> K0Vector {
        let mut v = Self::zero(p, n);
        v.coords[i as usize - 1] = CycInt::one(p);
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, o: &K0Vector) -> K0Vector {
        K0Vector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &K0Vector) -> K0Vector {
        K0Vector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &CycInt) -> K0Vector {
        K0Vector { coords: self.coords.iter().map(|a| s * a).collect() }
    }

    /// Multiplies by q^k, the symbol of the grading shift {k}.
    pub fn shift(&self, k: i64) -> K0Vector {
        K0Vector { coords: self.coords.iter().map(|a| a.shift(k)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Σ_c q^{s_c}[P_{a_c}] over the cells of a diagram with `n` vertices.
pub fn symbol_cells(d: &CellDiagram, n: u32, p: u32) -> K0Vector {
    let mut v = K0Vector::zero(p, n as usize);
    for c in &d.cells {
        let k = c.vertex as usize - 1;
        v.coords[k] = &v.coords[k] + &CycInt::q_pow(p, c.shift);
    }
    v
}

/// C_{vw} = graded dimension of e_v A e_w.
pub fn gram(alg: &ZigzagAlgebra) -> CycMatrix {
    let n = alg.n;
    (1..=n).map(|v| (1..=n).map(|w| cyc_reduce(alg.p, &alg.graded_dim(v, w))).collect()).collect()
}

/// ⟨x, y⟩ = Σ bar(x_v) C_{vw} y_w.
pub fn pairing(c: &CycMatrix, x: &K0Vector, y: &K0Vector) -> CycInt {
    let p = c[0][0].p();
    let mut acc = CycInt::zero(p);
    for (v, xv) in x.coords.iter().enumerate() {
        let xb = bar(xv);
        for (w, yw) in y.coords.iter().enumerate() {
            acc = &acc + &(&xb * &(&c[v][w] * yw));
        }
    }
    acc
}

pub fn gram_perfect(alg: &ZigzagAlgebra) -> bool {
    cyc_det(&gram(alg), alg.p).is_unit()
}

/// [L_j] dual to the projectives under the pairing: the columns of C^{-1}.
pub fn dual_basis(alg: &ZigzagAlgebra) -> Option<CycMatrix> {
    cyc_inverse(&gram(alg), alg.p)
}

/// [L_j] read off a finite cell resolution: NY for j < n, the λ = 0 resolution for j = n.
pub fn simple_symbol(alg: &ZigzagAlgebra, j: u32) -> Result<K0Vector, ModError> {
    let r = if j == alg.n { ln_resolution(alg, Side::Left)? } else { ny_resolution(alg, j, Side::Left)? };
    Ok(symbol_cells(&r.diagram, alg.n, alg.p))
}

pub fn projective(j: u32) -> CellDiagram {
    let mut d = CellDiagram::new(Side::Left);
    d.add_cell(j, 0);
    d
}

/// Matrix whose j-th column is the symbol of the word applied to P_j.
pub fn decat_word(alg: &ZigzagAlgebra, word: &[Functor]) -> Result<CycMatrix, ModError> {
    let n = alg.n as usize;
    let mut m = vec![vec![CycInt::zero(alg.p); n]; n];
    for j in 1..=alg.n {
        let out = apply_word(alg, word, &projective(j))?;
        let s = symbol_cells(&out, alg.n, alg.p);
        for (k, c) in s.coords.into_iter().enumerate() {
            m[k][j as usize - 1] = c;
        }
    }
    Ok(m)
}

pub fn decat(alg: &ZigzagAlgebra, f: Functor) -> Result<CycMatrix, ModError> {
    decat_word(alg, &[f])
}

pub fn mat_bar(a: &CycMatrix) -> CycMatrix {
    a.iter().map(|r| r.iter().map(bar).collect()).collect()
}

pub fn transpose(a: &CycMatrix) -> CycMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// ⟨x, y⟩ = bar⟨y, x⟩ on all basis pairs.
pub fn form_is_hermitian(c: &CycMatrix) -> bool {
    transpose(&mat_bar(c)) == *c
}

/// The smallest k ≥ 0 with ⟨x, y⟩ = q^k·bar⟨y, x⟩ for all basis pairs, if any.
pub fn hermitian_twist(c: &CycMatrix) -> Option<i64> {
    let p = c[0][0].p();
    let ct = transpose(&mat_bar(c));
    (0..2 * p as i64).find(|&k| cyc_matscale(&ct, &CycInt::q_pow(p, k)) == *c)
}

/// ⟨ux, y⟩ = ⟨x, uy⟩ for all x, y, i.e. bar(u)^T C = C u.
pub fn is_self_adjoint(c: &CycMatrix, u: &CycMatrix) -> bool {
    let p = c[0][0].p();
    cyc_matmul(&transpose(&mat_bar(u)), c, p) == cyc_matmul(c, u, p)
}

/// Named identities of the TL presentation for the given u_1, …, u_{n−1}.
pub fn tl_presentation(us: &[CycMatrix], p: u32) -> Vec<(String, bool)> {
    let circle = &(-&CycInt::q_pow(p, 1)) - &CycInt::q_pow(p, -1);
    let mut out = Vec::new();
    for (a, ua) in us.iter().enumerate() {
        let sq = cyc_matmul(ua, ua, p);
        out.push((format!("u{0}u{0} = -(q+q^-1)u{0}", a + 1), sq == cyc_matscale(ua, &circle)));
        for (b, ub) in us.iter().enumerate() {
            if a.abs_diff(b) == 1 {
                let aba = cyc_matmul(&cyc_matmul(ua, ub, p), ua, p);
                out.push((format!("u{0}u{1}u{0} = u{0}", a + 1, b + 1), aba == *ua));
            } else if a < b {
                let ab = cyc_matmul(ua, ub, p);
                let ba = cyc_matmul(ub, ua, p);
                out.push((format!("u{}u{} = u{}u{}", a + 1, b + 1, b + 1, a + 1), ab == ba));
            }
        }
    }
    out
}

/// Id + c·u.
pub fn id_plus(u: &CycMatrix, c: &CycInt) -> CycMatrix {
    let p = c.p();
    cyc_matadd(&cyc_identity(p, u.len()), &cyc_matscale(u, c))
}

/// A ±q^k with t = Id + (±q^k)·u over 𝕆_p, if one exists.
pub fn linear_factor(t: &CycMatrix, u: &CycMatrix) -> Option<CycInt> {
    let p = u[0][0].p();
    for k in 0..2 * p as i64 {
        for s in [1, -1] {
            let c = &CycInt::q_pow(p, k) * &CycInt::from_int(p, s);
            if id_plus(u, &c) == *t {
                return Some(c);
            }
        }
    }
    None
}

/// Equality after q ↦ ζ_{2p}.
pub fn equal_at_root(a: &CycMatrix, b: &CycMatrix) -> bool {
    cyc_matrix_to_root(a) == cyc_matrix_to_root(b)
}

/// Braid relations among the given generator matrices t_1, …, t_{n−1}.
pub fn braid_relations(ts: &[CycMatrix], p: u32) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    for a in 0..ts.len() {
        for b in a + 1..ts.len() {
            let (ta, tb) = (&ts[a], &ts[b]);
            if b == a + 1 {
                let l = cyc_matmul(&cyc_matmul(ta, tb, p), ta, p);
                let r = cyc_matmul(&cyc_matmul(tb, ta, p), tb, p);
                out.push((format!("t{0}t{1}t{0} = t{1}t{0}t{1}", a + 1, b + 1), l == r));
            } else {
                let l = cyc_matmul(ta, tb, p);
                let r = cyc_matmul(tb, ta, p);
                out.push((format!("t{0}t{1} = t{1}t{0}", a + 1, b + 1), l == r));
            }
        }
    }
    out
}

/// Rewrites a matrix in the P basis into the basis of the given columns.
pub fn change_basis(m: &CycMatrix, basis: &CycMatrix, p: u32) -> Option<CycMatrix> {
    let inv = cyc_inverse(basis, p)?;
    Some(cyc_matmul(&cyc_matmul(&inv, m, p), basis, p))
}
