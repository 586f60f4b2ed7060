//! Coefficient arithmetic: the prime field F_p, integer Laurent polynomials,
//! the cyclotomic quotients 𝕆_p = Z[q]/(Ψ_p(q²)) and O_{2p} = Z[q]/Φ_{2p}(q),
//! the bar involution and quantum integers.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Trial-division primality test.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p. Elements are plain `u32` residues; all arithmetic goes through here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Field {
    /// Returns `None` unless `p` is prime.
    pub fn new(p: u32) -> Option<Field> {
        if is_prime(p) {
            Some(Field { p })
        } else {
            None
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.p - b % self.p)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    pub fn from_bigint(&self, a: &BigInt) -> u32 {
        let r = a.mod_floor(&BigInt::from(self.p));
        u32::try_from(r).unwrap_or(0)
    }

    /// Signed representative in (−p/2, p/2], convenient for display.
    pub fn signed(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }

    /// k! in F_p.
    pub fn factorial(&self, k: u32) -> u32 {
        (1..=k).fold(1 % self.p, |acc, j| self.mul(acc, j % self.p))
    }
}

/// A standalone element of F_p carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub residue: u32,
    pub p: u32,
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Fp {
        Fp {
            residue: value.rem_euclid(p as i64) as u32,
            p,
        }
    }

    fn field(&self) -> Field {
        Field { p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn inv(&self) -> Option<Fp> {
        self.field().inv(self.residue).map(|r| Fp { residue: r, p: self.p })
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        Fp { residue: self.field().add(self.residue, o.residue), p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        Fp { residue: self.field().sub(self.residue, o.residue), p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp { residue: self.field().mul(self.residue, o.residue), p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { residue: self.field().neg(self.residue), p: self.p }
    }
}

/// Finitely supported integer Laurent polynomial in q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, c: i64) -> Self {
        let mut l = Self::zero();
        l.add_term(exp, BigInt::from(c));
        l
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut l = Self::zero();
        for (e, c) in terms {
            l.add_term(e, BigInt::from(c));
        }
        l
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies by q^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// q ↦ q^{−1}.
    pub fn bar(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.coeffs {
            out.add_term(*e, c * k);
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &o.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

fn write_poly<'a, I: Iterator<Item = (i64, &'a BigInt)>>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let unit = a.is_one();
        match e {
            0 => write!(f, "{}", a)?,
            _ => {
                if !unit {
                    write!(f, "{}", a)?;
                }
                if e == 1 {
                    f.write_str("q")?;
                } else {
                    write!(f, "q^{}", e)?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.terms())
    }
}

/// Element of 𝕆_p = Z[q]/(Ψ_p(q²)) in the monomial basis 1, q, …, q^{2p−3}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    c: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt { p, c: vec![BigInt::zero(); 2 * p as usize - 2] }
    }

    pub fn one(p: u32) -> Self {
        Self::q_pow(p, 0)
    }

    pub fn from_int(p: u32, k: i64) -> Self {
        let mut x = Self::zero(p);
        x.c[0] = BigInt::from(k);
        x
    }

    pub fn q_pow(p: u32, e: i64) -> Self {
        cyc_reduce(p, &LaurentPoly::monomial(e, 1))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Coefficients of 1, q, …, q^{2p−3}.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn from_coeffs(p: u32, coeffs: &[BigInt]) -> Self {
        let mut l = LaurentPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            l.add_term(e as i64, c.clone());
        }
        cyc_reduce(p, &l)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let mut l = LaurentPoly::zero();
        for (e, c) in self.c.iter().enumerate() {
            l.add_term(e as i64, c.clone());
        }
        l
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.p)
    }

    /// Multiplies by q^k.
    pub fn shift(&self, k: i64) -> Self {
        cyc_reduce(self.p, &self.to_laurent().shift(k))
    }

    /// Integer matrix of multiplication by `self` in the monomial basis (column j = self·q^j).
    pub fn mult_matrix(&self) -> Vec<Vec<BigInt>> {
        let m = self.c.len();
        let mut mat = vec![vec![BigInt::zero(); m]; m];
        for j in 0..m {
            let col = self.shift(j as i64);
            for i in 0..m {
                mat[i][j] = col.c[i].clone();
            }
        }
        mat
    }

    /// Units are exactly the elements whose multiplication matrix has determinant ±1
    /// (the norm, equivalently the resultant against Ψ_p(q²)).
    pub fn is_unit(&self) -> bool {
        let d = det_bigint(&self.mult_matrix());
        d.abs().is_one()
    }

    pub fn inverse(&self) -> Option<CycInt> {
        let mat = self.mult_matrix();
        let d = det_bigint(&mat);
        if !d.abs().is_one() {
            return None;
        }
        let m = mat.len();
        // y = M^{-1} e_0, via the first column of the adjugate.
        let mut y = Vec::with_capacity(m);
        for i in 0..m {
            let minor: Vec<Vec<BigInt>> = (0..m)
                .filter(|&r| r != 0)
                .map(|r| (0..m).filter(|&c| c != i).map(|c| mat[r][c].clone()).collect())
                .collect();
            let mut cof = det_bigint(&minor);
            if i % 2 == 1 {
                cof = -cof;
            }
            y.push(cof * &d);
        }
        Some(CycInt::from_coeffs(self.p, &y))
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, o: &CycInt) -> CycInt {
        CycInt { p: self.p, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, o: &CycInt) -> CycInt {
        CycInt { p: self.p, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, c: self.c.iter().map(|a| -a.clone()).collect() }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, o: &CycInt) -> CycInt {
        cyc_reduce(self.p, &(&self.to_laurent() * &o.to_laurent()))
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.c.iter().enumerate().map(|(e, c)| (e as i64, c)))
    }
}

/// Canonical representative in 𝕆_p.
pub fn cyc_reduce(p: u32, x: &LaurentPoly) -> CycInt {
    assert!(p >= 2, "cyclotomic quotient needs p >= 2");
    let two_p = 2 * p as i64;
    let m = 2 * p as usize - 2;
    let mut c = vec![BigInt::zero(); m];
    for (e, v) in x.terms() {
        let e = e.rem_euclid(two_p) as usize;
        if e < m {
            c[e] += v;
        } else {
            // q^{2p−2} = −(1 + q² + ⋯ + q^{2p−4}), and q times that.
            let parity = e - m;
            for k in 0..(p as usize - 1) {
                c[2 * k + parity] -= v;
            }
        }
    }
    CycInt { p, c }
}

pub fn bar(x: &CycInt) -> CycInt {
    cyc_reduce(x.p, &x.to_laurent().bar())
}

/// Quantum integer [m] = q^{−m+1} + q^{−m+3} + ⋯ + q^{m−1}.
pub fn qint(p: u32, m: u32) -> CycInt {
    cyc_reduce(p, &qint_laurent(m))
}

pub fn qint_laurent(m: u32) -> LaurentPoly {
    let m = m as i64;
    LaurentPoly::from_terms((0..m).map(|k| (-m + 1 + 2 * k, 1)))
}

/// Element of O_{2p} = Z[q]/Φ_{2p}(q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyc2p {
    p: u32,
    c: Vec<BigInt>,
}

fn cyc2p_degree(p: u32) -> usize {
    if p == 2 {
        2
    } else {
        p as usize - 1
    }
}

impl Cyc2p {
    pub fn zero(p: u32) -> Self {
        Cyc2p { p, c: vec![BigInt::zero(); cyc2p_degree(p)] }
    }

    pub fn one(p: u32) -> Self {
        cyc2p_reduce(p, &LaurentPoly::one())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let mut l = LaurentPoly::zero();
        for (e, c) in self.c.iter().enumerate() {
            l.add_term(e as i64, c.clone());
        }
        l
    }
}

impl Add for &Cyc2p {
    type Output = Cyc2p;
    fn add(self, o: &Cyc2p) -> Cyc2p {
        Cyc2p { p: self.p, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Cyc2p {
    type Output = Cyc2p;
    fn sub(self, o: &Cyc2p) -> Cyc2p {
        Cyc2p { p: self.p, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Cyc2p {
    type Output = Cyc2p;
    fn mul(self, o: &Cyc2p) -> Cyc2p {
        cyc2p_reduce(self.p, &(&self.to_laurent() * &o.to_laurent()))
    }
}

impl fmt::Display for Cyc2p {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.c.iter().enumerate().map(|(e, c)| (e as i64, c)))
    }
}

/// Reduction modulo Φ_{2p}: q^p = −1, and for odd p also Φ_p(−q) = 0.
pub fn cyc2p_reduce(p: u32, x: &LaurentPoly) -> Cyc2p {
    let pi = p as i64;
    let deg = cyc2p_degree(p);
    let mut c = vec![BigInt::zero(); deg.max(p as usize)];
    for (e, v) in x.terms() {
        let e = e.rem_euclid(2 * pi);
        if e >= pi {
            c[(e - pi) as usize] -= v;
        } else {
            c[e as usize] += v;
        }
    }
    if p != 2 {
        // q^{p−1} = −Σ_{k<p−1} (−1)^k q^k
        let top = c[p as usize - 1].clone();
        if !top.is_zero() {
            for k in 0..(p as usize - 1) {
                if k % 2 == 0 {
                    c[k] -= &top;
                } else {
                    c[k] += &top;
                }
            }
        }
        c.truncate(deg);
    }
    Cyc2p { p, c }
}

/// Base change 𝕆_p → O_{2p}, q ↦ ζ_{2p}.
pub fn to_root(x: &CycInt) -> Cyc2p {
    cyc2p_reduce(x.p, &x.to_laurent())
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Square matrix over 𝕆_p.
pub type CycMatrix = Vec<Vec<CycInt>>;

pub fn cyc_identity(p: u32, n: usize) -> CycMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { CycInt::one(p) } else { CycInt::zero(p) }).collect())
        .collect()
}

pub fn cyc_matmul(a: &CycMatrix, b: &CycMatrix, p: u32) -> CycMatrix {
    let n = a.len();
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let k = b.len();
    let mut out = vec![vec![CycInt::zero(p); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = LaurentPoly::zero();
            for t in 0..k {
                if a[i][t].is_zero() || b[t][j].is_zero() {
                    continue;
                }
                acc = &acc + &(&a[i][t].to_laurent() * &b[t][j].to_laurent());
            }
            out[i][j] = cyc_reduce(p, &acc);
        }
    }
    out
}

pub fn cyc_matadd(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn cyc_matscale(a: &CycMatrix, s: &CycInt) -> CycMatrix {
    a.iter().map(|r| r.iter().map(|x| s * x).collect()).collect()
}

/// Determinant by cofactor expansion along the first row; intended for n ≤ 7.
pub fn cyc_det(a: &CycMatrix, p: u32) -> CycInt {
    let n = a.len();
    match n {
        0 => CycInt::one(p),
        1 => a[0][0].clone(),
        _ => {
            let mut acc = CycInt::zero(p);
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: CycMatrix = (1..n)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| a[r][c].clone()).collect())
                    .collect();
                let term = &a[0][j] * &cyc_det(&minor, p);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Inverse via the adjugate; `None` when the determinant is not a unit of 𝕆_p.
pub fn cyc_inverse(a: &CycMatrix, p: u32) -> Option<CycMatrix> {
    let n = a.len();
    let dinv = cyc_det(a, p).inverse()?;
    let mut out = vec![vec![CycInt::zero(p); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: CycMatrix = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c].clone()).collect())
                .collect();
            let mut cof = cyc_det(&minor, p);
            if (i + j) % 2 == 1 {
                cof = -&cof;
            }
            out[i][j] = &cof * &dinv;
        }
    }
    Some(out)
}

pub fn cyc_matrix_to_root(a: &CycMatrix) -> Vec<Vec<Cyc2p>> {
    a.iter().map(|r| r.iter().map(to_root).collect()).collect()
}

/// Renders a matrix row by row, for reports and panics.
pub fn cyc_matrix_string(a: &CycMatrix) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for r in a {
        s.push('[');
        for (k, x) in r.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{}", x);
        }
        s.push_str("]\n");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_inverse_roundtrip() {
        let f = Field::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert!(Field::new(9).is_none());
    }

    #[test]
    fn fp_wrapper() {
        let a = Fp::new(-1, 5);
        assert_eq!(a.residue, 4);
        assert_eq!((a * a).residue, 1);
        assert!(Fp::new(0, 5).inv().is_none());
    }

    #[test]
    fn defining_relations() {
        for p in [2u32, 3, 5, 7] {
            let psi = LaurentPoly::from_terms((0..p as i64).map(|k| (2 * k, 1)));
            assert!(cyc_reduce(p, &psi).is_zero());
            assert!(CycInt::q_pow(p, 2 * p as i64).is_one());
            assert_eq!(CycInt::q_pow(p, 1), cyc_reduce(p, &LaurentPoly::monomial(1, 1)));
        }
    }

    #[test]
    fn bar_of_q() {
        let p = 5;
        assert_eq!(bar(&CycInt::q_pow(p, 1)), CycInt::q_pow(p, 2 * p as i64 - 1));
        assert!(bar(&CycInt::one(p)).is_one());
    }

    #[test]
    fn root_specialization() {
        for p in [2u32, 3, 5, 7] {
            let qp = CycInt::q_pow(p, p as i64);
            assert_eq!(to_root(&qp), cyc2p_reduce(p, &LaurentPoly::monomial(0, -1)));
            assert!(to_root(&(&CycInt::one(p) + &qp)).is_zero());
            assert!(to_root(&CycInt::zero(p)).is_zero());
        }
    }

    #[test]
    fn quantum_integers() {
        let p = 5;
        assert_eq!(qint(p, 2), cyc_reduce(p, &LaurentPoly::from_terms([(-1, 1), (1, 1)])));
        assert!(qint(p, p).is_zero());
        assert!(qint(p, 0).is_zero());
    }

    #[test]
    fn units() {
        let p = 3;
        let q = CycInt::q_pow(p, 1);
        assert!(q.is_unit());
        let inv = q.inverse().unwrap();
        assert!((&q * &inv).is_one());
        assert!(!CycInt::from_int(p, 2).is_unit());
        // 1 + q² is a unit in 𝕆_3 since 1 + q² = −q⁴.
        let x = cyc_reduce(p, &LaurentPoly::from_terms([(0, 1), (2, 1)]));
        assert!(x.is_unit());
    }

    #[test]
    fn display() {
        let x = cyc_reduce(3, &LaurentPoly::from_terms([(0, 1), (1, -2), (3, 1)]));
        assert_eq!(alloc::format!("{}", x), "1 - 2q + q^3");
        assert_eq!(alloc::format!("{}", CycInt::zero(3)), "0");
    }
}
