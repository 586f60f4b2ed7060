//! The zigzag algebra A_n^! with differential ∂_λ and the anti-automorphism τ.
//!
//! Paths compose left to right: (i|j)·(j|k) = (i|j|k). Every nonzero path equals a
//! monotone walk followed by a power of the loop c_t at its target.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{is_prime, Field, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalPath {
    pub source: u32,
    pub target: u32,
    pub loops: u32,
}

impl NormalPath {
    pub fn new(source: u32, target: u32, loops: u32) -> NormalPath {
        NormalPath { source, target, loops }
    }

    pub fn idempotent(i: u32) -> NormalPath {
        NormalPath::new(i, i, 0)
    }

    pub fn degree(&self) -> i64 {
        (self.source as i64 - self.target as i64).abs() + 2 * self.loops as i64
    }

    pub fn is_valid(&self, n: u32) -> bool {
        (1..=n).contains(&self.source)
            && (1..=n).contains(&self.target)
            && self.loops < self.source.min(self.target)
    }

    /// Vertex sequence of the normal form; loops go up unless the target is n.
    pub fn word(&self, n: u32) -> Vec<u32> {
        let mut w = alloc::vec![self.source];
        let mut v = self.source;
        while v != self.target {
            v = if v < self.target { v + 1 } else { v - 1 };
            w.push(v);
        }
        let t = self.target;
        let other = if t < n { t + 1 } else { t - 1 };
        for _ in 0..self.loops {
            w.push(other);
            w.push(t);
        }
        w
    }

    pub fn reversed(&self) -> NormalPath {
        NormalPath::new(self.target, self.source, self.loops)
    }

    pub fn render(&self, n: u32) -> String {
        let w: Vec<String> = self.word(n).iter().map(|v| format!("{v}")).collect();
        format!("({})", w.join("|"))
    }
}

/// Product of two normal paths, or `None` when it vanishes.
pub fn path_product(a: &NormalPath, b: &NormalPath) -> Option<NormalPath> {
    if a.target != b.source {
        return None;
    }
    let (s, t, u) = (a.source as i64, a.target as i64, b.target as i64);
    let back = ((s - t).abs() + (t - u).abs() - (s - u).abs()) / 2;
    let loops = a.loops as i64 + b.loops as i64 + back;
    if loops >= s.min(u) {
        None
    } else {
        Some(NormalPath::new(a.source, b.target, loops as u32))
    }
}

/// F_p-linear combination of normal paths; stored coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AlgElement {
    pub terms: BTreeMap<NormalPath, u32>,
}

impl AlgElement {
    pub fn zero() -> AlgElement {
        AlgElement::default()
    }

    pub fn path(np: NormalPath) -> AlgElement {
        let mut terms = BTreeMap::new();
        terms.insert(np, 1);
        AlgElement { terms }
    }

    pub fn term(np: NormalPath, c: u32) -> AlgElement {
        let mut e = AlgElement::zero();
        if c != 0 {
            e.terms.insert(np, c);
        }
        e
    }

    pub fn idempotent(i: u32) -> AlgElement {
        Self::path(NormalPath::idempotent(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, np: &NormalPath) -> u32 {
        self.terms.get(np).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, np: NormalPath, c: u32, f: &Field) {
        let v = f.add(self.coeff(&np), c);
        if v == 0 {
            self.terms.remove(&np);
        } else {
            self.terms.insert(np, v);
        }
    }

    pub fn add(&self, o: &AlgElement, f: &Field) -> AlgElement {
        let mut r = self.clone();
        for (np, c) in &o.terms {
            r.add_term(*np, *c, f);
        }
        r
    }

    pub fn scale(&self, s: u32, f: &Field) -> AlgElement {
        let mut r = AlgElement::zero();
        for (np, c) in &self.terms {
            r.add_term(*np, f.mul(*c, s), f);
        }
        r
    }

    pub fn neg(&self, f: &Field) -> AlgElement {
        self.scale(f.neg(1), f)
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|t| t.degree());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Common (source, target), if all terms agree.
    pub fn endpoints(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|t| (t.source, t.target));
        let e = it.next()?;
        it.all(|x| x == e).then_some(e)
    }

    pub fn render(&self, n: u32, p: u32) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let f = Field::new(p).expect("prime");
        let mut out = String::new();
        for (k, (np, c)) in self.terms.iter().enumerate() {
            let s = f.signed(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if s < 0 { " - " } else { " + " });
            }
            if mag != 1 {
                out.push_str(&format!("{mag}"));
            }
            out.push_str(&np.render(n));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgError {
    TooFewVertices(u32),
    NotPrime(u32),
    Parse(String),
    Invariant(String),
}

impl fmt::Display for AlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgError::TooFewVertices(n) => write!(f, "need n >= 2, got {n}"),
            AlgError::NotPrime(p) => write!(f, "{p} is not prime"),
            AlgError::Parse(s) => write!(f, "cannot parse path expression: {s}"),
            AlgError::Invariant(s) => write!(f, "algebra invariant failed: {s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZigzagAlgebra {
    pub n: u32,
    pub p: u32,
    pub lambda: u32,
    field: Field,
    basis: Vec<NormalPath>,
    index: BTreeMap<NormalPath, usize>,
    dtable: Vec<AlgElement>,
}

impl ZigzagAlgebra {
    pub fn new(n: u32, p: u32, lambda: u32) -> Result<ZigzagAlgebra, AlgError> {
        if n < 2 {
            return Err(AlgError::TooFewVertices(n));
        }
        if !is_prime(p) {
            return Err(AlgError::NotPrime(p));
        }
        let field = Field::new(p).expect("prime");
        let lambda = lambda % p;
        let mut basis = Vec::new();
        for s in 1..=n {
            for t in 1..=n {
                for k in 0..s.min(t) {
                    basis.push(NormalPath::new(s, t, k));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut alg = ZigzagAlgebra { n, p, lambda, field, basis, index, dtable: Vec::new() };
        alg.dtable = alg.basis.iter().map(|b| alg.differential_of_word(b)).collect();
        Ok(alg)
    }

    /// Builds and checks degree, nilpotence and Leibniz on all basis data.
    pub fn build(n: u32, p: u32, lambda: u32) -> Result<ZigzagAlgebra, AlgError> {
        let a = Self::new(n, p, lambda)?;
        a.verify()?;
        Ok(a)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> &[NormalPath] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, np: &NormalPath) -> Option<usize> {
        self.index.get(np).copied()
    }

    /// Basis of e_s A e_t.
    pub fn paths_between(&self, s: u32, t: u32) -> Vec<NormalPath> {
        (0..s.min(t)).map(|k| NormalPath::new(s, t, k)).collect()
    }

    pub fn graded_dim(&self, s: u32, t: u32) -> LaurentPoly {
        LaurentPoly::from_terms(self.paths_between(s, t).iter().map(|np| (np.degree(), 1)))
    }

    pub fn arrow(&self, i: u32, j: u32) -> AlgElement {
        assert!(i.abs_diff(j) == 1 && (1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        AlgElement::path(NormalPath::new(i, j, 0))
    }

    pub fn loop_at(&self, i: u32) -> AlgElement {
        self.element(NormalPath::new(i, i, 1))
    }

    /// The basis element, or zero if the loop count is out of range.
    pub fn element(&self, np: NormalPath) -> AlgElement {
        if np.is_valid(self.n) {
            AlgElement::path(np)
        } else {
            AlgElement::zero()
        }
    }

    /// Product along a vertex walk, e.g. [1, 2, 3] for (1|2|3).
    pub fn walk(&self, w: &[u32]) -> AlgElement {
        assert!(!w.is_empty());
        let mut acc = AlgElement::idempotent(w[0]);
        for pair in w.windows(2) {
            acc = self.mul(&acc, &self.arrow(pair[0], pair[1]));
        }
        acc
    }

    pub fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        let f = &self.field;
        let mut r = AlgElement::zero();
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                if let Some(z) = path_product(x, y) {
                    r.add_term(z, f.mul(*cx, *cy), f);
                }
            }
        }
        r
    }

    pub fn pow(&self, a: &AlgElement, k: u32) -> AlgElement {
        let (s, _) = a.endpoints().expect("nonzero element");
        let mut r = AlgElement::idempotent(s);
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }

    fn arrow_differential(&self, i: u32, j: u32) -> AlgElement {
        let f = &self.field;
        let coeff = if j == i + 1 { self.lambda } else { f.sub(1, self.lambda) };
        let a = AlgElement::path(NormalPath::new(i, j, 0));
        self.mul(&a, &self.loop_at(j)).scale(coeff, f)
    }

    fn differential_of_word(&self, np: &NormalPath) -> AlgElement {
        let f = &self.field;
        let w = np.word(self.n);
        let mut r = AlgElement::zero();
        for k in 0..w.len().saturating_sub(1) {
            let left = self.walk(&w[..=k]);
            let right = self.walk(&w[k + 1..]);
            let d = self.arrow_differential(w[k], w[k + 1]);
            r = r.add(&self.mul(&self.mul(&left, &d), &right), f);
        }
        r
    }

    pub fn differential(&self, a: &AlgElement) -> AlgElement {
        let f = &self.field;
        let mut r = AlgElement::zero();
        for (np, c) in &a.terms {
            r = r.add(&self.dtable[self.index[np]].scale(*c, f), f);
        }
        r
    }

    pub fn tau(&self, a: &AlgElement) -> AlgElement {
        AlgElement { terms: a.terms.iter().map(|(np, c)| (np.reversed(), *c)).collect() }
    }

    /// The same quiver with parameter 1 − λ, the target of τ-transport.
    pub fn opposite(&self) -> ZigzagAlgebra {
        Self::new(self.n, self.p, self.field.sub(1, self.lambda)).expect("valid")
    }

    pub fn verify(&self) -> Result<(), AlgError> {
        let f = &self.field;
        for (i, b) in self.basis.iter().enumerate() {
            let d = &self.dtable[i];
            if !d.is_zero() && d.degree() != Some(b.degree() + 2) {
                return Err(AlgError::Invariant(format!("degree of d{}", b.render(self.n))));
            }
            let mut x = AlgElement::path(*b);
            for _ in 0..self.p {
                x = self.differential(&x);
            }
            if !x.is_zero() {
                return Err(AlgError::Invariant(format!("d^p{} != 0", b.render(self.n))));
            }
        }
        for a in &self.basis {
            for b in &self.basis {
                let (ea, eb) = (AlgElement::path(*a), AlgElement::path(*b));
                let lhs = self.differential(&self.mul(&ea, &eb));
                let rhs = self
                    .mul(&self.differential(&ea), &eb)
                    .add(&self.mul(&ea, &self.differential(&eb)), f);
                if lhs != rhs {
                    return Err(AlgError::Invariant(format!(
                        "Leibniz fails on {} {}",
                        a.render(self.n),
                        b.render(self.n)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, a: &AlgElement) -> String {
        a.render(self.n, self.p)
    }

    /// Parses sums like "-(1|2) + 2(2|3|2)", also "c_2" for loops and "0".
    pub fn parse(&self, s: &str) -> Result<AlgElement, AlgError> {
        let f = &self.field;
        let err = || AlgError::Parse(String::from(s));
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(AlgElement::zero());
        }
        let mut acc = AlgElement::zero();
        let bytes: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut first = true;
        while pos < bytes.len() {
            while pos < bytes.len() && bytes[pos] == ' ' {
                pos += 1;
            }
            let mut sign = 1i64;
            if pos < bytes.len() && (bytes[pos] == '+' || bytes[pos] == '-') {
                if bytes[pos] == '-' {
                    sign = -1;
                }
                pos += 1;
            } else if !first {
                return Err(err());
            }
            first = false;
            while pos < bytes.len() && bytes[pos] == ' ' {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mag: i64 = if pos > start {
                bytes[start..pos].iter().collect::<String>().parse().map_err(|_| err())?
            } else {
                1
            };
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
            }
            let mut factor: Option<AlgElement> = None;
            loop {
                if pos < bytes.len() && bytes[pos] == '(' {
                    let close = bytes[pos..].iter().position(|&c| c == ')').ok_or_else(err)? + pos;
                    let inner: String = bytes[pos + 1..close].iter().collect();
                    let w: Result<Vec<u32>, _> = inner.split('|').map(|x| x.trim().parse::<u32>()).collect();
                    let w = w.map_err(|_| err())?;
                    if w.iter().any(|v| *v < 1 || *v > self.n)
                        || w.windows(2).any(|x| x[0].abs_diff(x[1]) != 1)
                    {
                        return Err(err());
                    }
                    let e = self.walk(&w);
                    factor = Some(match factor {
                        None => e,
                        Some(g) => self.mul(&g, &e),
                    });
                    pos = close + 1;
                } else if pos + 1 < bytes.len() && bytes[pos] == 'c' && bytes[pos + 1] == '_' {
                    pos += 2;
                    let st = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let i: u32 = bytes[st..pos].iter().collect::<String>().parse().map_err(|_| err())?;
                    if i < 1 || i > self.n {
                        return Err(err());
                    }
                    let mut e = self.loop_at(i);
                    if pos < bytes.len() && bytes[pos] == '^' {
                        pos += 1;
                        let st = pos;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let k: u32 = bytes[st..pos].iter().collect::<String>().parse().map_err(|_| err())?;
                        e = if k == 0 { AlgElement::idempotent(i) } else { self.pow(&self.loop_at(i), k) };
                        if k > 0 && self.loop_at(i).is_zero() {
                            e = AlgElement::zero();
                        }
                    }
                    factor = Some(match factor {
                        None => e,
                        Some(g) => self.mul(&g, &e),
                    });
                } else {
                    break;
                }
            }
            let term = factor.ok_or_else(err)?;
            acc = acc.add(&term.scale(f.from_i64(sign * mag), f), f);
        }
        Ok(acc)
    }
}

/// λ ∈ F_p satisfying the three reduced symbol equations.
pub fn lambda_constraints(p: u32) -> Vec<u32> {
    let f = Field::new(p).expect("prime");
    (0..p)
        .filter(|&l| {
            let l = l as i64;
            let eq = |lhs: i64, rhs: i64| f.from_i64(lhs) == f.from_i64(rhs);
            eq(2 * (1 + l * (3 - l)), (l + 3 * l) + ((1 - l) + (3 - l)))
                && eq(2 * ((1 - l) + (3 - l)), 4 + ((1 - l) * (1 - l) + (1 - l) * (3 - l)))
                && eq(2 * (l + 3 * l), (l * l + (l + 2) * l) + 4)
        })
        .collect()
}

/// Graded dimensions of e_s A e_t computed from scratch: walks in the doubled A_n quiver modulo
/// the two-sided ideal of (i|i−1|i) − (i|i+1|i) for 1 < i < n and (1|2|1), degree by degree.
pub fn quotient_dims_by_relations(n: u32, p: u32) -> BTreeMap<(u32, u32), BTreeMap<i64, usize>> {
    use crate::linalg::{rank, Mat};
    let f = Field::new(p).expect("prime");
    let step = |v: u32| -> Vec<u32> { [v.wrapping_sub(1), v + 1].into_iter().filter(|w| (1..=n).contains(w)).collect() };
    // walks[L] lists every walk with L arrows
    let mut walks: Vec<Vec<Vec<u32>>> = alloc::vec![(1..=n).map(|v| alloc::vec![v]).collect()];
    let mut out: BTreeMap<(u32, u32), BTreeMap<i64, usize>> = BTreeMap::new();
    for len in 0usize.. {
        if len > 0 {
            let next: Vec<Vec<u32>> = walks[len - 1]
                .iter()
                .flat_map(|w| {
                    let last = *w.last().unwrap();
                    step(last).into_iter().map(move |v| {
                        let mut x = w.clone();
                        x.push(v);
                        x
                    })
                })
                .collect();
            walks.push(next);
        }
        let mut by_ends: BTreeMap<(u32, u32), Vec<&Vec<u32>>> = BTreeMap::new();
        for w in &walks[len] {
            by_ends.entry((w[0], *w.last().unwrap())).or_default().push(w);
        }
        let mut any = false;
        for ((s, t), ws) in by_ends {
            let index: BTreeMap<&Vec<u32>, usize> = ws.iter().enumerate().map(|(k, w)| (*w, k)).collect();
            let mut rows: Vec<Vec<u32>> = Vec::new();
            for w in &ws {
                for k in 0..w.len().saturating_sub(2) {
                    let i = w[k];
                    if w[k + 2] != i {
                        continue;
                    }
                    let mut row = alloc::vec![0u32; ws.len()];
                    if i == 1 {
                        if w[k + 1] == 2 {
                            row[index[*w]] = 1;
                        }
                    } else if i < n && w[k + 1] == i - 1 {
                        let mut other = (*w).clone();
                        other[k + 1] = i + 1;
                        row[index[*w]] = 1;
                        row[index[&other]] = f.neg(1);
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
            let r = if rows.is_empty() { 0 } else { rank(&Mat::from_rows(&rows, ws.len()), &f) };
            let d = ws.len() - r;
            if d > 0 {
                any = true;
                out.entry((s, t)).or_default().insert(len as i64, d);
            }
        }
        if !any {
            break;
        }
    }
    out
}

impl ZigzagAlgebra {
    /// τ∘∂_λ = ∂_{1−λ}∘τ on every basis path, and τ(ab) = τ(b)τ(a) on all basis pairs.
    pub fn tau_intertwines(&self) -> bool {
        let other = self.opposite();
        let anti = self.basis.iter().all(|a| {
            self.basis.iter().all(|b| {
                let (ea, eb) = (AlgElement::path(*a), AlgElement::path(*b));
                self.tau(&self.mul(&ea, &eb)) == other.mul(&self.tau(&eb), &self.tau(&ea))
            })
        });
        anti && self.basis.iter().all(|b| {
            let x = AlgElement::path(*b);
            self.tau(&self.differential(&x)) == other.differential(&self.tau(&x))
        })
    }
}
