//! The small quantum group acting on V_1^{⊗n} over 𝕆_p, the second highest weight space and the
//! Burau matrices.
//!
//! Tensor basis vectors v_{i_1}⊗⋯⊗v_{i_n} are indexed by the integer with bits i_1 … i_n, the
//! first factor being the most significant bit.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{cyc_identity, cyc_inverse, cyc_matmul, cyc_matrix_to_root, qint, CycInt, CycMatrix};
use crate::functors::Functor;
use crate::ktheory::{change_basis, decat, dual_basis, id_plus, linear_factor};
use crate::pdgmod::ModError;
use crate::zigzag::ZigzagAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coproduct {
    /// Δ(E) = E⊗1 + K⊗E, Δ(F) = 1⊗F + F⊗K^{-1}.
    Standard,
    /// Δ^op(E) = 1⊗E + E⊗K, Δ^op(F) = F⊗1 + K^{-1}⊗F.
    Opposite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Inverse,
}

#[derive(Clone, Debug)]
pub struct TensorRep {
    pub n: u32,
    pub p: u32,
    pub e: CycMatrix,
    pub f: CycMatrix,
    pub k: CycMatrix,
    pub kinv: CycMatrix,
}

fn zeros(p: u32, r: usize, c: usize) -> CycMatrix {
    vec![vec![CycInt::zero(p); c]; r]
}

pub fn kron(a: &CycMatrix, b: &CycMatrix, p: u32) -> CycMatrix {
    let (ar, ac) = (a.len(), a[0].len());
    let (br, bc) = (b.len(), b[0].len());
    let mut out = zeros(p, ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    if !b[k][l].is_zero() {
                        out[i * br + k][j * bc + l] = &a[i][j] * &b[k][l];
                    }
                }
            }
        }
    }
    out
}

fn add(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

fn sub(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn is_zero(a: &CycMatrix) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// E, F, K, K^{-1} on V_1 in the basis v_0, v_1.
fn v1(p: u32) -> [CycMatrix; 4] {
    let z = CycInt::zero(p);
    let o = CycInt::one(p);
    let e = vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]];
    let f = vec![vec![z.clone(), z.clone()], vec![o, z.clone()]];
    let k = vec![vec![CycInt::q_pow(p, 1), z.clone()], vec![z.clone(), CycInt::q_pow(p, -1)]];
    let kinv = vec![vec![CycInt::q_pow(p, -1), z.clone()], vec![z, CycInt::q_pow(p, 1)]];
    [e, f, k, kinv]
}

/// V_1^{⊗n} through the iterated coproduct.
pub fn tensor_rep(n: u32, p: u32, cop: Coproduct) -> TensorRep {
    assert!(n >= 1);
    let [e1, f1, k1, kinv1] = v1(p);
    let id1 = cyc_identity(p, 2);
    let (mut e, mut f, mut k, mut kinv) = (e1.clone(), f1.clone(), k1.clone(), kinv1.clone());
    for m in 1..n {
        let idm = cyc_identity(p, 1 << m);
        let (ne, nf) = match cop {
            Coproduct::Standard => (
                add(&kron(&e, &id1, p), &kron(&k, &e1, p)),
                add(&kron(&idm, &f1, p), &kron(&f, &kinv1, p)),
            ),
            Coproduct::Opposite => (
                add(&kron(&idm, &e1, p), &kron(&e, &k1, p)),
                add(&kron(&f, &id1, p), &kron(&kinv, &f1, p)),
            ),
        };
        e = ne;
        f = nf;
        k = kron(&k, &k1, p);
        kinv = kron(&kinv, &kinv1, p);
    }
    TensorRep { n, p, e, f, k, kinv }
}

/// Σ_r (1 − 2i_r) for the basis vector with index `b`.
pub fn weight_of(n: u32, b: usize) -> i64 {
    n as i64 - 2 * b.count_ones() as i64
}

/// Tensor basis indices of weight `w`.
pub fn weight_space(n: u32, w: i64) -> Vec<usize> {
    (0..1usize << n).filter(|&b| weight_of(n, b) == w).collect()
}

fn pow(a: &CycMatrix, k: u32, p: u32) -> CycMatrix {
    let mut acc = cyc_identity(p, a.len());
    for _ in 0..k {
        acc = cyc_matmul(&acc, a, p);
    }
    acc
}

impl TensorRep {
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// The four defining relations, each as a named matrix identity. The quotient
    /// (K − K^{-1})/(q − q^{-1}) is evaluated as [w] on each weight-w vector.
    pub fn relations(&self) -> Vec<(String, bool)> {
        let p = self.p;
        let id = cyc_identity(p, self.dim());
        let mm = |a: &CycMatrix, b: &CycMatrix| cyc_matmul(a, b, p);
        let scale = |a: &CycMatrix, s: i64| -> CycMatrix {
            let c = CycInt::q_pow(p, s);
            a.iter().map(|r| r.iter().map(|x| &c * x).collect()).collect()
        };
        let mut h = zeros(p, self.dim(), self.dim());
        for (b, row) in h.iter_mut().enumerate() {
            let w = weight_of(self.n, b);
            let qw = qint(p, w.unsigned_abs() as u32);
            row[b] = if w < 0 { -&qw } else { qw };
        }
        let ef = sub(&mm(&self.e, &self.f), &mm(&self.f, &self.e));
        vec![
            ("KK^-1 = 1".into(), mm(&self.k, &self.kinv) == id && mm(&self.kinv, &self.k) == id),
            ("KE = q^2 EK".into(), mm(&self.k, &self.e) == scale(&mm(&self.e, &self.k), 2)),
            ("KF = q^-2 FK".into(), mm(&self.k, &self.f) == scale(&mm(&self.f, &self.k), -2)),
            ("K^-1E = q^-2 EK^-1".into(), mm(&self.kinv, &self.e) == scale(&mm(&self.e, &self.kinv), -2)),
            ("K^-1F = q^2 FK^-1".into(), mm(&self.kinv, &self.f) == scale(&mm(&self.f, &self.kinv), 2)),
            ("EF - FE = (K - K^-1)/(q - q^-1)".into(), ef == h),
            ("E^p = 0".into(), is_zero(&pow(&self.e, p, p))),
            ("F^p = 0".into(), is_zero(&pow(&self.f, p, p))),
        ]
    }

    /// Whether `op` commutes with E, F and K.
    pub fn commutes_with(&self, op: &CycMatrix) -> bool {
        let p = self.p;
        [&self.e, &self.f, &self.k].iter().all(|x| cyc_matmul(x, op, p) == cyc_matmul(op, x, p))
    }
}

/// The local operator t̃ or t̃′ on V_1^{⊗2}, basis order v00, v01, v10, v11.
pub fn local_braid(p: u32, sign: Sign) -> CycMatrix {
    let q = |e: i64| CycInt::q_pow(p, e);
    let one = CycInt::one(p);
    let mut m = zeros(p, 4, 4);
    m[0][0] = one.clone();
    m[3][3] = one.clone();
    match sign {
        Sign::Positive => {
            // v01 ↦ q v10 + (1 − q²) v01, v10 ↦ q v01
            m[2][1] = q(1);
            m[1][1] = &one - &q(2);
            m[1][2] = q(1);
        }
        Sign::Inverse => {
            // v01 ↦ q^{-1} v10, v10 ↦ (1 − q^{-2}) v10 + q^{-1} v01
            m[2][1] = q(-1);
            m[2][2] = &one - &q(-2);
            m[1][2] = q(-1);
        }
    }
    m
}

/// t_i = Id^{⊗i−1} ⊗ t̃ ⊗ Id^{⊗n−i−1}.
pub fn braid_op(n: u32, p: u32, i: u32, sign: Sign) -> CycMatrix {
    assert!(1 <= i && i < n);
    let left = cyc_identity(p, 1 << (i - 1));
    let right = cyc_identity(p, 1 << (n - i - 1));
    kron(&kron(&left, &local_braid(p, sign), p), &right, p)
}

/// l_1, …, l_n as vectors in the tensor basis.
pub fn l_basis(n: u32, p: u32) -> Vec<Vec<CycInt>> {
    assert!(n >= 2);
    let unit = |r: u32| 1usize << (n - r);
    (1..=n)
        .map(|r| {
            let mut v = vec![CycInt::zero(p); 1 << n];
            v[unit(r)] = CycInt::one(p);
            if r < n {
                v[unit(r + 1)] = -&CycInt::q_pow(p, 1);
            }
            v
        })
        .collect()
}

/// The l-basis in coordinates of the weight-(n−2) tensor basis e_1, …, e_n (e_r has v_1 in slot r),
/// as columns.
pub fn l_change_of_basis(n: u32, p: u32) -> CycMatrix {
    let ls = l_basis(n, p);
    (1..=n).map(|r| ls.iter().map(|l| l[1usize << (n - r)].clone()).collect()).collect()
}

/// The operator restricted to the weight-(n−2) space, in the l-basis.
pub fn restrict_to_l_basis(op: &CycMatrix, n: u32, p: u32) -> Option<CycMatrix> {
    let idx: Vec<usize> = (1..=n).map(|r| 1usize << (n - r)).collect();
    for &i in &idx {
        for (row, r) in op.iter().enumerate() {
            if !idx.contains(&row) && !r[i].is_zero() {
                return None;
            }
        }
    }
    let block: CycMatrix = idx.iter().map(|&r| idx.iter().map(|&c| op[r][c].clone()).collect()).collect();
    let b = l_change_of_basis(n, p);
    let binv = cyc_inverse(&b, p)?;
    Some(cyc_matmul(&cyc_matmul(&binv, &block, p), &b, p))
}

/// The printed Burau matrix: column j holds t_i(l_j).
pub fn burau_matrix(n: u32, p: u32, i: u32, sign: Sign) -> CycMatrix {
    assert!(1 <= i && i < n);
    let e = match sign {
        Sign::Positive => 1,
        Sign::Inverse => -1,
    };
    let mut m = cyc_identity(p, n as usize);
    let ii = i as usize - 1;
    m[ii][ii] = -&CycInt::q_pow(p, 2 * e);
    for j in 0..n as usize {
        if j.abs_diff(ii) == 1 {
            m[ii][j] = CycInt::q_pow(p, e);
        }
    }
    m
}

/// (t + q^{±2})(t − 1) = 0.
pub fn quadratic_relation(t: &CycMatrix, p: u32, sign: Sign) -> bool {
    let e = match sign {
        Sign::Positive => 2,
        Sign::Inverse => -2,
    };
    let id = cyc_identity(p, t.len());
    let a = add(t, &id.iter().map(|r| r.iter().map(|x| x.shift(e)).collect()).collect::<CycMatrix>());
    let b = sub(t, &id);
    is_zero(&cyc_matmul(&a, &b, p))
}

/// Outcome of comparing [𝔗_i] (or [𝔗_i′]) with the Burau matrix under [L_j] ↦ l_j.
#[derive(Clone, Debug)]
pub struct SquareReport {
    pub equal_over_op: bool,
    pub equal_over_o2p: bool,
    /// c with [𝔗] = Id + c·[𝔘_i] over 𝕆_p.
    pub factor: Option<CycInt>,
    /// The printed coefficient, −q^{p+1} or −q^{p−1}.
    pub printed_factor: CycInt,
    /// Whether Id + printed·[𝔘_i] equals [𝔗] over 𝕆_p, and after q ↦ ζ_{2p}.
    pub printed_over_op: bool,
    pub printed_over_o2p: bool,
}

impl SquareReport {
    pub fn describe(&self) -> String {
        let f = self.factor.as_ref().map(|c| format!("{c}")).unwrap_or_else(|| "none".into());
        format!(
            "square over O_p {}, over O_2p {}; [T] = Id + ({})u over O_p; printed coefficient {} agrees over O_p {}, over O_2p {}",
            self.equal_over_op, self.equal_over_o2p, f, self.printed_factor, self.printed_over_op, self.printed_over_o2p
        )
    }
}

pub fn commuting_square(alg: &ZigzagAlgebra, i: u32, sign: Sign) -> Result<SquareReport, ModError> {
    let (n, p) = (alg.n, alg.p);
    let f = match sign {
        Sign::Positive => Functor::T(i),
        Sign::Inverse => Functor::TPrime(i),
    };
    let t = decat(alg, f)?;
    let u = decat(alg, Functor::U(i))?;
    let simples = dual_basis(alg).ok_or_else(|| ModError::Unsupported("Gram matrix not invertible".into()))?;
    let tl = change_basis(&t, &simples, p).expect("dual basis is invertible");
    let b = burau_matrix(n, p, i, sign);
    let printed_factor = match sign {
        Sign::Positive => -&CycInt::q_pow(p, p as i64 + 1),
        Sign::Inverse => -&CycInt::q_pow(p, p as i64 - 1),
    };
    let printed = id_plus(&u, &printed_factor);
    Ok(SquareReport {
        equal_over_op: tl == b,
        equal_over_o2p: cyc_matrix_to_root(&tl) == cyc_matrix_to_root(&b),
        factor: linear_factor(&t, &u),
        printed_over_op: printed == t,
        printed_over_o2p: cyc_matrix_to_root(&printed) == cyc_matrix_to_root(&t),
        printed_factor,
    })
}

/// Parses a braid word over s1, S1, s2, … (capital = inverse) into (index, sign) letters.
pub fn parse_braid_word(word: &str, n: u32) -> Result<Vec<(u32, Sign)>, String> {
    let mut out = Vec::new();
    for tok in word.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        let sign = match tok.chars().next() {
            Some('s') => Sign::Positive,
            Some('S') => Sign::Inverse,
            _ => return Err(format!("bad generator '{tok}'")),
        };
        let i: u32 = tok[1..].parse().map_err(|_| format!("bad generator '{tok}'"))?;
        if i < 1 || i >= n {
            return Err(format!("generator '{tok}' outside 1..{}", n - 1));
        }
        out.push((i, sign));
    }
    Ok(out)
}

/// Product of Burau matrices along a word; the leftmost letter is the leftmost factor.
pub fn burau_word(letters: &[(u32, Sign)], n: u32, p: u32) -> CycMatrix {
    letters
        .iter()
        .fold(cyc_identity(p, n as usize), |acc, &(i, s)| cyc_matmul(&acc, &burau_matrix(n, p, i, s), p))
}
