//! Exact matrices in `SO(2n+1)` and `GL_r`, coset representatives and the formal
//! level-raising evaluations.
//!
//! Positions `1..=2n+1` carry the basis `e_{-n}, ..., e_{-1}, e_0, e_1, ..., e_n`, and
//! `k' = 2n+2-k`. The Gram matrix is `antidiag(J_n, 2, J_n)`. The torus element
//! `diag(t_1, ..., t_n, 1, t_n^{-1}, ..., t_1^{-1})` has `ε_i` at position `i`.
//! The uniformiser `ϖ` is the rational prime `p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::symbolics::{HalfInt, QLaurent, UnitSign};

/// `p^k` for any integer `k`.
pub fn pi_pow(p: u64, k: i64) -> BigRational {
    let base = BigInt::from(p);
    let pw = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(pw)
    } else {
        BigRational::new(BigInt::one(), pw)
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn int_valuation(x: &BigInt, p: &BigInt) -> i64 {
    let mut v = 0;
    let mut x = x.abs();
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// `p`-adic valuation; `None` for zero.
pub fn valuation(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    Some(int_valuation(x.numer(), &pb) - int_valuation(x.denom(), &pb))
}

/// Dense matrix over `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &BigRational) {
        let k = i * self.cols + j;
        self.data[k] += v;
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &BigRational) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, o: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &QMat) -> QMat {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigRational> {
        self.data.iter()
    }

    /// Smallest valuation among nonzero entries.
    pub fn min_valuation(&self, p: u64) -> Option<i64> {
        self.data.iter().filter_map(|x| valuation(x, p)).min()
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return BigRational::zero();
            };
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                }
                det = -det;
            }
            let pv = a.get(c, c).clone();
            det *= &pv;
            for r in c + 1..n {
                let f = a.get(r, c) / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(c, j) * &f;
                    a.data[r * n + j] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            for j in 0..n {
                a.data.swap(piv * n + j, c * n + j);
                inv.data.swap(piv * n + j, c * n + j);
            }
            let pv = a.get(c, c).clone();
            for j in 0..n {
                let k = c * n + j;
                a.data[k] = &a.data[k] / &pv;
                inv.data[k] = &inv.data[k] / &pv;
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let va = a.get(c, j) * &f;
                    let vi = inv.get(c, j) * &f;
                    a.data[r * n + j] -= va;
                    inv.data[r * n + j] -= vi;
                }
            }
        }
        Some(inv)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, o: &QMat) -> QMat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = QMat::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for QMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Roots of `SO(2n+1)`, indices `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Root {
    /// `ε_i + ε_j`, `i < j`.
    Sum(usize, usize),
    /// `-ε_i - ε_j`, `i < j`.
    NegSum(usize, usize),
    /// `ε_i - ε_j`, `i ≠ j`.
    Diff(usize, usize),
    /// `ε_i`.
    Short(usize),
    /// `-ε_i`.
    NegShort(usize),
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Sum(i, j) => write!(f, "e{i}+e{j}"),
            Root::NegSum(i, j) => write!(f, "-e{i}-e{j}"),
            Root::Diff(i, j) => write!(f, "e{i}-e{j}"),
            Root::Short(i) => write!(f, "e{i}"),
            Root::NegShort(i) => write!(f, "-e{i}"),
        }
    }
}

/// An element of `SO(2n+1)(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElement {
    pub n: usize,
    pub matrix: QMat,
}

/// Zero-based index of position `k` (1-based).
fn ix(k: usize) -> usize {
    k - 1
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement { n, matrix: QMat::identity(2 * n + 1) }
    }

    /// `k' = 2n + 2 - k`.
    pub fn prime(n: usize, k: usize) -> usize {
        2 * n + 2 - k
    }

    pub fn mid(n: usize) -> usize {
        n + 1
    }

    pub fn gram(n: usize) -> QMat {
        let d = 2 * n + 1;
        let mut g = QMat::zero(d, d);
        for k in 1..=d {
            let v = if k == n + 1 { rat(2) } else { rat(1) };
            g.set(ix(k), ix(d + 1 - k), v);
        }
        g
    }

    pub fn preserves_form(&self) -> bool {
        let g = GroupElement::gram(self.n);
        &(&self.matrix.transpose() * &g) * &self.matrix == g
    }

    pub fn det(&self) -> BigRational {
        self.matrix.det()
    }

    /// `g^{-1} = B^{-1} g^T B`.
    pub fn inverse(&self) -> GroupElement {
        let g = GroupElement::gram(self.n);
        let ginv = g.inverse().expect("Gram matrix is invertible");
        GroupElement { n: self.n, matrix: &(&ginv * &self.matrix.transpose()) * &g }
    }

    pub fn times(&self, o: &GroupElement) -> GroupElement {
        assert_eq!(self.n, o.n);
        GroupElement { n: self.n, matrix: &self.matrix * &o.matrix }
    }

    /// Entry at 1-based positions.
    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        self.matrix.get(ix(i), ix(j))
    }

    fn unipotent(n: usize, entries: &[(usize, usize, BigRational)]) -> GroupElement {
        let mut g = GroupElement::identity(n);
        for (i, j, v) in entries {
            g.matrix.add_at(ix(*i), ix(*j), v);
        }
        g
    }

    fn check_index(n: usize, i: usize) -> Result<(), Error> {
        if i == 0 || i > n {
            return Err(Error::InvalidRoot(format!("index {i} outside 1..={n}")));
        }
        Ok(())
    }

    /// The root element `x_β(t)`.
    pub fn root(n: usize, root: Root, t: &BigRational) -> Result<GroupElement, Error> {
        let pr = |k| GroupElement::prime(n, k);
        let mid = GroupElement::mid(n);
        let neg = -t.clone();
        let sq = t * t;
        let g = match root {
            Root::Sum(i, j) | Root::NegSum(i, j) => {
                GroupElement::check_index(n, i)?;
                GroupElement::check_index(n, j)?;
                if i >= j {
                    return Err(Error::InvalidRoot(format!("{root} needs i < j")));
                }
                if matches!(root, Root::Sum(..)) {
                    GroupElement::unipotent(n, &[(i, pr(j), t.clone()), (j, pr(i), neg)])
                } else {
                    GroupElement::unipotent(n, &[(pr(j), i, t.clone()), (pr(i), j, neg)])
                }
            }
            Root::Diff(i, j) => {
                GroupElement::check_index(n, i)?;
                GroupElement::check_index(n, j)?;
                if i == j {
                    return Err(Error::InvalidRoot(format!("{root} needs i != j")));
                }
                GroupElement::unipotent(n, &[(i, j, t.clone()), (pr(j), pr(i), neg)])
            }
            Root::Short(i) => {
                GroupElement::check_index(n, i)?;
                GroupElement::unipotent(
                    n,
                    &[(i, mid, t * rat(2)), (mid, pr(i), neg), (i, pr(i), -sq)],
                )
            }
            Root::NegShort(i) => {
                GroupElement::check_index(n, i)?;
                GroupElement::unipotent(
                    n,
                    &[(mid, i, neg), (pr(i), mid, t * rat(2)), (pr(i), i, -sq)],
                )
            }
        };
        Ok(g)
    }

    /// `w_{ε_i,m}`: `e(i) ↦ -ϖ^m e(i')`, `e(i') ↦ -ϖ^{-m} e(i)`, `e_0 ↦ -e_0`.
    pub fn weyl_eps(n: usize, i: usize, m: i64, p: u64) -> Result<GroupElement, Error> {
        GroupElement::check_index(n, i)?;
        let (a, b, mid) = (ix(i), ix(GroupElement::prime(n, i)), ix(GroupElement::mid(n)));
        let mut g = GroupElement::identity(n);
        g.matrix.set(a, a, BigRational::zero());
        g.matrix.set(b, b, BigRational::zero());
        g.matrix.set(b, a, -pi_pow(p, m));
        g.matrix.set(a, b, -pi_pow(p, -m));
        g.matrix.set(mid, mid, rat(-1));
        Ok(g)
    }

    /// `w_{S,m} = ∏_{j∈S} w_{ε_j,m}`.
    pub fn weyl_set(n: usize, s: &[usize], m: i64, p: u64) -> Result<GroupElement, Error> {
        s.iter().try_fold(GroupElement::identity(n), |acc, &j| {
            Ok(acc.times(&GroupElement::weyl_eps(n, j, m, p)?))
        })
    }

    /// `w_{ε_k-ε_h}`: `e(k) ↦ -e(h)`, `e(h) ↦ e(k)` and correspondingly on `k', h'`.
    pub fn weyl_diff(n: usize, k: usize, h: usize) -> Result<GroupElement, Error> {
        let one = BigRational::one();
        let a = GroupElement::root(n, Root::Diff(k, h), &one)?;
        let b = GroupElement::root(n, Root::Diff(h, k), &-one.clone())?;
        Ok(a.times(&b).times(&a))
    }

    /// `diag(t_1, ..., t_n, 1, t_n^{-1}, ..., t_1^{-1})`.
    pub fn torus(t: &[BigRational]) -> Result<GroupElement, Error> {
        let n = t.len();
        let mut g = GroupElement::identity(n);
        for (i, ti) in t.iter().enumerate() {
            if ti.is_zero() {
                return Err(Error::Domain("torus entries must be nonzero".into()));
            }
            let k = i + 1;
            g.matrix.set(ix(k), ix(k), ti.clone());
            g.matrix.set(ix(GroupElement::prime(n, k)), ix(GroupElement::prime(n, k)), ti.recip());
        }
        Ok(g)
    }

    /// `ϖ^λ` for a cocharacter `λ = Σ λ_i ε_i^*`.
    pub fn cocharacter(lambda: &[i64], p: u64) -> GroupElement {
        let t: Vec<BigRational> = lambda.iter().map(|&l| pi_pow(p, l)).collect();
        GroupElement::torus(&t).expect("powers of p are nonzero")
    }

    /// `λ_S = Σ_{i∈S} ε_i^*` as a vector.
    pub fn lambda_set(n: usize, s: &[usize]) -> Vec<i64> {
        (1..=n).map(|i| i64::from(s.contains(&i))).collect()
    }

    /// `u(X) = [[I, 0, X], [0, 1, 0], [0, 0, I]]`.
    pub fn u(x: &QMat) -> GroupElement {
        let n = x.rows();
        let mut g = GroupElement::identity(n);
        for i in 0..n {
            for j in 0..n {
                g.matrix.set(i, n + 1 + j, x.get(i, j).clone());
            }
        }
        g
    }

    /// Block diagonal `diag(A, 1, D)`.
    pub fn block_diag(a: &QMat, d: &QMat) -> GroupElement {
        let n = a.rows();
        let mut g = GroupElement::identity(n);
        for i in 0..n {
            for j in 0..n {
                g.matrix.set(i, j, a.get(i, j).clone());
                g.matrix.set(n + 1 + i, n + 1 + j, d.get(i, j).clone());
            }
        }
        g
    }
}

impl GroupElement {
    /// `[[a, 0, b], [0, 1, 0], [c, 0, d]]` with `n × n` blocks.
    pub fn from_blocks(a: &QMat, b: &QMat, c: &QMat, d: &QMat) -> GroupElement {
        let n = a.rows();
        let mut g = GroupElement::identity(n);
        for i in 0..n {
            for j in 0..n {
                g.matrix.set(i, j, a.get(i, j).clone());
                g.matrix.set(i, n + 1 + j, b.get(i, j).clone());
                g.matrix.set(n + 1 + i, j, c.get(i, j).clone());
                g.matrix.set(n + 1 + i, n + 1 + j, d.get(i, j).clone());
            }
        }
        g
    }
}

/// `X = Σ x_{ij} (E_{i,n+1-j} - E_{j,n+1-i})`, so that `u(X) = ∏ x_{ε_i+ε_j}(x_{ij})`.
pub fn x_matrix(n: usize, coords: &BTreeMap<(usize, usize), BigRational>) -> QMat {
    let mut x = QMat::zero(n, n);
    for (&(i, j), v) in coords {
        x.add_at(i - 1, n - j, v);
        x.add_at(j - 1, n - i, &-v.clone());
    }
    x
}

/// What `build_element` should construct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSpec {
    Root { root: Root, value: BigRational },
    Weyl { set: Vec<usize>, m: i64 },
    WeylDiff { k: usize, h: usize },
    Torus { lambda: Vec<i64> },
    Unipotent { x: QMat },
}

pub fn build_element(n: usize, p: u64, spec: &ElementSpec) -> Result<GroupElement, Error> {
    match spec {
        ElementSpec::Root { root, value } => GroupElement::root(n, *root, value),
        ElementSpec::Weyl { set, m } => GroupElement::weyl_set(n, set, *m, p),
        ElementSpec::WeylDiff { k, h } => GroupElement::weyl_diff(n, *k, *h),
        ElementSpec::Torus { lambda } => {
            if lambda.len() != n {
                return Err(Error::Domain(format!("cocharacter needs {n} entries")));
            }
            Ok(GroupElement::cocharacter(lambda, p))
        }
        ElementSpec::Unipotent { x } => {
            if x.rows() != n || x.cols() != n {
                return Err(Error::Domain(format!("u(X) needs an {n}x{n} block")));
            }
            let jx = QMat::from_rows(
                (0..n).map(|i| (0..n).map(|j| x.get(n - 1 - i, n - 1 - j).clone()).collect()).collect(),
            );
            if x.transpose() != jx.scale(&rat(-1)) {
                return Err(Error::Domain("u(X) needs tX = -J X J".into()));
            }
            Ok(GroupElement::u(x))
        }
    }
}

/// `I_S = {ε_i+ε_j : i < j, i ∉ S}`.
pub fn i_set(n: usize, s: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        if s.contains(&i) {
            continue;
        }
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(1 << items.len());
    for mask in 0u64..(1u64 << items.len()) {
        out.push(items.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x).collect());
    }
    out
}

/// All assignments of residues `0..p` to `keys`, in lexicographic order.
fn residue_assignments(keys: &[(usize, usize)], p: u64) -> Vec<Vec<(usize, usize, u64)>> {
    let mut out = vec![Vec::new()];
    for &(i, j) in keys {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for prefix in &out {
            for y in 0..p {
                let mut v: Vec<(usize, usize, u64)> = prefix.clone();
                v.push((i, j, y));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `w_{S,m+1} ∏_{β ∈ I_S} x_β(ϖ^{-m-1} y_β)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CosetRep {
    pub s: Vec<usize>,
    /// `(i, j, y)` for `β = ε_i + ε_j`.
    pub y: Vec<(usize, usize, u64)>,
}

/// Representatives of `K_{n,m+1} / (K_{n,m} ∩ K_{n,m+1})`.
pub fn enumerate_coset_reps(n: usize, _m: i64, p: u64) -> Vec<CosetRep> {
    let all: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    for s in subsets(&all).into_iter().filter(|s| s.len() % 2 == 0) {
        for y in residue_assignments(&i_set(n, &s), p) {
            out.push(CosetRep { s: s.clone(), y });
        }
    }
    out
}

pub fn coset_rep_matrix(n: usize, rep: &CosetRep, m: i64, p: u64) -> Result<GroupElement, Error> {
    let mut g = GroupElement::weyl_set(n, &rep.s, m + 1, p)?;
    let scale = pi_pow(p, -m - 1);
    for &(i, j, y) in &rep.y {
        let t = &scale * rat(y as i64);
        g = g.times(&GroupElement::root(n, Root::Sum(i, j), &t)?);
    }
    Ok(g)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    pub fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !cond {
            self.failures.push(what());
        }
    }
}

fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().filter(|x| !b.contains(x)).chain(b.iter().filter(|x| !a.contains(x))).copied().collect();
    v.sort();
    v
}

/// Pairwise check that no two representatives share a coset. For `S ≠ S'` every
/// `ℓ ∈ S △ S'` must give `⟨h e, e⟩ = -ϖ^{-m-1}` with `h = A'^{-1}A` and
/// `e = e_{n+1-ℓ}`; for `S = S'` some entry of `h` must have valuation `< -m`.
pub fn verify_coset_distinctness(n: usize, reps: &[CosetRep], m: i64, p: u64) -> Result<VerificationReport, Error> {
    let mats: Vec<GroupElement> =
        reps.iter().map(|r| coset_rep_matrix(n, r, m, p)).collect::<Result<_, _>>()?;
    let invs: Vec<GroupElement> = mats.iter().map(GroupElement::inverse).collect();
    let mut report = VerificationReport::default();
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            let h = invs[b].times(&mats[a]);
            let s2 = sym_diff(&reps[a].s, &reps[b].s);
            if s2.is_empty() {
                let v = h.matrix.min_valuation(p);
                report.check(v.is_some_and(|v| v < -m), || {
                    format!("{:?} vs {:?}: entries stay within p^-{m} (min valuation {v:?})", reps[a], reps[b])
                });
            } else {
                for &l in &s2 {
                    let pairing = h.at(l, GroupElement::prime(n, l));
                    let v = valuation(pairing, p);
                    report.check(*pairing == -pi_pow(p, -m - 1) && v == Some(-m - 1), || {
                        format!("{:?} vs {:?}: pairing at l = {l} is {pairing} (valuation {v:?})", reps[a], reps[b])
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `Σ_{|S| even} p^{|I_S|}`.
pub fn coset_count(n: usize, p: u64) -> u64 {
    let all: Vec<usize> = (1..=n).collect();
    subsets(&all)
        .into_iter()
        .filter(|s| s.len() % 2 == 0)
        .map(|s| p.pow(i_set(n, &s).len() as u32))
        .sum()
}

/// `J_S = {ε_i - ε_j : i < j ≤ r, i ∈ S, j ∉ S}`.
pub fn j_set(r: usize, s: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &i in s {
        for j in i + 1..=r {
            if !s.contains(&j) {
                out.push((i, j));
            }
        }
    }
    out.sort();
    out
}

/// `∏_{β ∈ J_S} χ_β(y_β) ϖ^{ν_S}` in `GL_r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HeckeCosetRep {
    pub s: Vec<usize>,
    pub y: Vec<(usize, usize, u64)>,
}

/// Representatives for `T_i`; `i = 0` gives the identity coset.
pub fn enumerate_hecke_reps(r: usize, i: usize, p: u64) -> Result<Vec<HeckeCosetRep>, Error> {
    if r == 0 || (i > 0 && i >= r) {
        return Err(Error::Domain(format!("need 0 <= i <= r-1, got i = {i}, r = {r}")));
    }
    let pool: Vec<usize> = (1..r).collect();
    let mut out = Vec::new();
    for s in subsets(&pool).into_iter().filter(|s| s.len() == i) {
        for y in residue_assignments(&j_set(r, &s), p) {
            out.push(HeckeCosetRep { s: s.clone(), y });
        }
    }
    Ok(out)
}

pub fn hecke_count(r: usize, i: usize, p: u64) -> u64 {
    let pool: Vec<usize> = (1..r).collect();
    subsets(&pool)
        .into_iter()
        .filter(|s| s.len() == i)
        .map(|s| p.pow(j_set(r, &s).len() as u32))
        .sum()
}

pub fn hecke_rep_matrix(r: usize, rep: &HeckeCosetRep, p: u64) -> QMat {
    let mut g = QMat::identity(r);
    for &(i, j, y) in &rep.y {
        let mut x = QMat::identity(r);
        x.set(i - 1, j - 1, rat(y as i64));
        g = &g * &x;
    }
    let mut d = QMat::identity(r);
    for &i in &rep.s {
        d.set(i - 1, i - 1, pi_pow(p, 1));
    }
    &g * &d
}

/// Membership in `Γ_{r,1}`: integral, unit determinant, last row `≡ (0, ..., 0, *)` mod `p`.
pub fn in_gamma_r1(g: &QMat, p: u64) -> bool {
    let r = g.rows();
    let integral = g.entries().all(|x| valuation(x, p).is_none_or(|v| v >= 0));
    let unit_det = valuation(&g.det(), p) == Some(0);
    let last_row = (0..r - 1).all(|j| valuation(g.get(r - 1, j), p).is_none_or(|v| v >= 1));
    integral && unit_det && last_row
}

/// Pairwise check that `g'^{-1} g ∉ Γ_{r,1}`.
pub fn verify_hecke_distinctness(r: usize, reps: &[HeckeCosetRep], p: u64) -> VerificationReport {
    let mats: Vec<QMat> = reps.iter().map(|x| hecke_rep_matrix(r, x, p)).collect();
    let invs: Vec<QMat> = mats.iter().map(|m| m.inverse().expect("invertible")).collect();
    let mut report = VerificationReport::default();
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            let h = &invs[b] * &mats[a];
            report.check(!in_gamma_r1(&h, p), || format!("{:?} and {:?} share a coset", reps[a], reps[b]));
        }
    }
    report
}

/// Parity of `|S_1|` in the level-raising sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityClass {
    Even,
    Odd,
}

impl ParityClass {
    pub fn of(k: usize) -> Self {
        if k.is_multiple_of(2) {
            ParityClass::Even
        } else {
            ParityClass::Odd
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    Theta,
    ThetaPrime,
}

/// `x_{r,ξ+1}`, or `x_{n,n} w_{ε_n,a+1}` when `r = n`. Coefficients at the twisted
/// point carry an implicit common factor `ε = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportPoint {
    Base,
    Twisted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCoefficient {
    pub point: SupportPoint,
    pub parity: ParityClass,
    pub coefficient: QLaurent,
}

/// Coefficients of the formal sums `Σ_{S_1} Σ_y π'(u(S_1, y)) v'` grouped by parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRaisingState {
    pub n: usize,
    pub r: usize,
    pub chi_sign: UnitSign,
    pub s: HalfInt,
    pub coefficients: Vec<ClassCoefficient>,
}

impl LevelRaisingState {
    pub fn get(&self, point: SupportPoint, parity: ParityClass) -> QLaurent {
        self.coefficients
            .iter()
            .find(|c| c.point == point && c.parity == parity)
            .map(|c| c.coefficient.clone())
            .unwrap_or_default()
    }

    fn keys(&self) -> Vec<(SupportPoint, ParityClass)> {
        let mut k: Vec<_> = self.coefficients.iter().map(|c| (c.point, c.parity)).collect();
        k.sort();
        k.dedup();
        k
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.coefficient.is_zero())
    }

    /// `self - k · other`, class by class.
    pub fn minus_scaled(&self, k: i64, other: &LevelRaisingState) -> LevelRaisingState {
        let mut keys = self.keys();
        keys.extend(other.keys());
        keys.sort();
        keys.dedup();
        let coefficients = keys
            .into_iter()
            .map(|(point, parity)| ClassCoefficient {
                point,
                parity,
                coefficient: &self.get(point, parity) - &other.get(point, parity).scale(k),
            })
            .collect();
        LevelRaisingState { coefficients, ..self.clone() }
    }
}

fn check_nr(n: usize, r: usize) -> Result<(), Error> {
    if r == 0 || r > n {
        return Err(Error::Domain(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    Ok(())
}

/// The two class coefficients of `θ(f_s)`: `(A, B)` with
/// `A = χ^{r+1} q^{(r-1)(s+n-r/2)+(n-r)}` and `B = χ^r q^{r(s+n-r/2)}`.
fn class_coefficients(n: usize, r: usize, chi: UnitSign, s: HalfInt) -> (QLaurent, QLaurent) {
    let (ni, ri) = (n as i64, r as i64);
    let e = s + HalfInt::int(ni) - HalfInt::from_twice(ri);
    let a = QLaurent::monomial(chi.pow(r as u64 + 1).value(), e * (ri - 1) + HalfInt::int(ni - ri));
    let b = QLaurent::monomial(chi.pow(r as u64).value(), e * ri);
    (a, b)
}

/// Coefficients at the base point: `A` on `|S_1| ≡ r-1`, `B` on `|S_1| ≡ r` (mod 2) for
/// `θ`, and the other way round for `θ'`. When `r = n` only `S_1 = ∅` occurs, and the
/// twisted point is filled from the other operator.
pub fn theta_evaluate(
    n: usize,
    r: usize,
    chi: UnitSign,
    s: HalfInt,
    which: Operator,
) -> Result<LevelRaisingState, Error> {
    check_nr(n, r)?;
    let (a, b) = class_coefficients(n, r, chi, s);
    let on_class = |op: Operator, parity: ParityClass| -> QLaurent {
        let a_class = ParityClass::of(r + 1);
        let gets_a = (parity == a_class) == (op == Operator::Theta);
        if gets_a {
            a.clone()
        } else {
            b.clone()
        }
    };
    let other = match which {
        Operator::Theta => Operator::ThetaPrime,
        Operator::ThetaPrime => Operator::Theta,
    };
    let mut coefficients = Vec::new();
    if r < n {
        for parity in [ParityClass::Even, ParityClass::Odd] {
            coefficients.push(ClassCoefficient { point: SupportPoint::Base, parity, coefficient: on_class(which, parity) });
        }
    } else {
        let parity = ParityClass::Even;
        coefficients.push(ClassCoefficient { point: SupportPoint::Base, parity, coefficient: on_class(which, parity) });
        coefficients.push(ClassCoefficient { point: SupportPoint::Twisted, parity, coefficient: on_class(other, parity) });
    }
    Ok(LevelRaisingState { n, r, chi_sign: chi, s, coefficients })
}

/// `θ(f_{-r/2}) - χ(ϖ) θ'(f_{-r/2})`, which must vanish class by class.
pub fn kernel_check(n: usize, r: usize, chi: UnitSign) -> Result<LevelRaisingState, Error> {
    let s = -HalfInt::from_twice(r as i64);
    let theta = theta_evaluate(n, r, chi, s, Operator::Theta)?;
    let theta_p = theta_evaluate(n, r, chi, s, Operator::ThetaPrime)?;
    let residual = theta.minus_scaled(chi.value(), &theta_p);
    if let Some(bad) = residual.coefficients.iter().find(|c| !c.coefficient.is_zero()) {
        return Err(Error::Inconsistency(format!(
            "kernel residual {} on {:?}/{:?} at n = {n}, r = {r}",
            bad.coefficient, bad.point, bad.parity
        )));
    }
    Ok(residual)
}

/// `λ(θ(f_{r/2}) - χ(ϖ)θ'(f_{r/2}))` up to the Whittaker constant: the `S_1 = ∅` terms
/// times the volume `q^{(n-r)(n-r-1)/2}` of the `y`-sum.
pub fn whittaker_value(n: usize, r: usize, chi: UnitSign) -> Result<QLaurent, Error> {
    let s = HalfInt::from_twice(r as i64);
    let theta = theta_evaluate(n, r, chi, s, Operator::Theta)?;
    let theta_p = theta_evaluate(n, r, chi, s, Operator::ThetaPrime)?;
    let diff = theta.minus_scaled(chi.value(), &theta_p);
    let vol = ((n - r) * (n - r).saturating_sub(1) / 2) as i64;
    Ok(diff.get(SupportPoint::Base, ParityClass::Even).shift(HalfInt::int(vol)))
}

/// `u` with `a = u·b` when `a = ±b`.
pub fn unit_ratio(a: &QLaurent, b: &QLaurent) -> Option<UnitSign> {
    if a == b {
        Some(UnitSign::Plus)
    } else if *a == -b {
        Some(UnitSign::Minus)
    } else {
        None
    }
}

/// Units of `Z_(p)` used as sample values of `y ∈ o^×`.
fn sample_units(p: u64) -> Vec<i64> {
    [1i64, 2, 3, 4, 5, 7].into_iter().filter(|y| y % p as i64 != 0).take(3).collect()
}

/// Two residue assignments on `pairs`: all ones, and `y_{ij} = (i + 2j) mod p`.
fn sample_assignments(pairs: &[(usize, usize)], p: u64) -> Vec<Vec<(usize, usize, i64)>> {
    vec![
        pairs.iter().map(|&(i, j)| (i, j, 1)).collect(),
        pairs.iter().map(|&(i, j)| (i, j, ((i + 2 * j) as u64 % p) as i64)).collect(),
    ]
}

fn product(n: usize, factors: impl IntoIterator<Item = Result<GroupElement, Error>>) -> Result<GroupElement, Error> {
    factors.into_iter().try_fold(GroupElement::identity(n), |acc, g| Ok(acc.times(&g?)))
}

/// `E^n_{a,b}` (1-based).
fn elementary(n: usize, a: usize, b: usize) -> QMat {
    let mut e = QMat::zero(n, n);
    e.set(a - 1, b - 1, rat(1));
    e
}

/// `Y = y (E^n_{n+1-h,k} - E^n_{n+1-k,h})`.
pub fn y_matrix(n: usize, k: usize, h: usize, y: &BigRational) -> QMat {
    elementary(n, n + 1 - h, k).sub(&elementary(n, n + 1 - k, h)).scale(y)
}

fn record(report: &mut VerificationReport, ok: bool, what: impl FnOnce() -> String) {
    report.check(ok, what);
}

/// Every constructed generator preserves the form and has determinant 1.
pub fn check_generators(n: usize, m_max: i64, p: u64) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    let t = rat(3) / rat(2);
    let mut gens: Vec<(String, GroupElement)> = Vec::new();
    for i in 1..=n {
        gens.push((format!("x_{{e{i}}}"), GroupElement::root(n, Root::Short(i), &t)?));
        gens.push((format!("x_{{-e{i}}}"), GroupElement::root(n, Root::NegShort(i), &t)?));
        for m in -m_max - 1..=m_max + 1 {
            gens.push((format!("w_{{e{i},{m}}}"), GroupElement::weyl_eps(n, i, m, p)?));
        }
        for j in 1..=n {
            if i < j {
                gens.push((format!("x_{{e{i}+e{j}}}"), GroupElement::root(n, Root::Sum(i, j), &t)?));
                gens.push((format!("x_{{-e{i}-e{j}}}"), GroupElement::root(n, Root::NegSum(i, j), &t)?));
                gens.push((format!("w_{{e{i}-e{j}}}"), GroupElement::weyl_diff(n, i, j)?));
            }
            if i != j {
                gens.push((format!("x_{{e{i}-e{j}}}"), GroupElement::root(n, Root::Diff(i, j), &t)?));
            }
        }
    }
    for (name, g) in gens {
        record(&mut rep, g.preserves_form() && g.det().is_one(), || format!("n={n}: {name} is not in SO(2n+1)"));
    }
    Ok(rep)
}

/// `w_{ε_i,m}^2 = 1` and `w_{S,m+1} w_{S,m} = ϖ^{-λ_S}`.
pub fn check_weyl_relations(n: usize, m_max: i64, p: u64) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    let id = GroupElement::identity(n);
    let all: Vec<usize> = (1..=n).collect();
    for m in 0..=m_max {
        for i in 1..=n {
            let w = GroupElement::weyl_eps(n, i, m, p)?;
            record(&mut rep, w.times(&w) == id, || format!("n={n}: w_{{e{i},{m}}}^2 != 1"));
        }
        for s in subsets(&all) {
            let lhs = GroupElement::weyl_set(n, &s, m + 1, p)?.times(&GroupElement::weyl_set(n, &s, m, p)?);
            let lam: Vec<i64> = GroupElement::lambda_set(n, &s).iter().map(|x| -x).collect();
            record(&mut rep, lhs == GroupElement::cocharacter(&lam, p), || {
                format!("n={n}, m={m}, S={s:?}: w_{{S,m+1}} w_{{S,m}} != p^-lambda_S")
            });
        }
    }
    Ok(rep)
}

/// Conjugation by `w_{S,m+1}`: `x_{ε_i+ε_j}(ϖ^{-m-1}y) ↦ x_{ε_i-ε_j}(-y)` for `i ∉ S ∋ j`,
/// and `w_{S,m+1}` commutes with `x_{ε_i+ε_j}` when `i, j ∉ S`.
pub fn check_conjugation(n: usize, m_max: i64, p: u64) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    let all: Vec<usize> = (1..=n).collect();
    for m in 0..=m_max {
        for s in subsets(&all) {
            let w = GroupElement::weyl_set(n, &s, m + 1, p)?;
            for (i, j) in i_set(n, &s) {
                for y in sample_units(p) {
                    let y = rat(y);
                    let x = GroupElement::root(n, Root::Sum(i, j), &(pi_pow(p, -m - 1) * &y))?;
                    let lhs = w.times(&x).times(&w);
                    let rhs = if s.contains(&j) { GroupElement::root(n, Root::Diff(i, j), &-y.clone())? } else { x };
                    record(&mut rep, lhs == rhs, || format!("n={n}, m={m}, S={s:?}: conjugation of e{i}+e{j} fails"));
                }
            }
        }
    }
    Ok(rep)
}

/// The product identity for `x_{r,c+1} w_{S,m+1} ∏_{I_S} x_β(ϖ^{-m-1}y_β) w_{S,m}` with `r ∈ S`,
/// `m = c_1 + 2c_2` and `c = c_1 + c_2`, where `x_{r,j} = x_{-ε_r}(ϖ^j)`.
pub fn check_eva(n: usize, m_max: i64, p: u64) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    let all: Vec<usize> = (1..=n).collect();
    let x_r = |r: usize, j: i64| GroupElement::root(n, Root::NegShort(r), &pi_pow(p, j));
    for c2 in 0..=m_max / 2 {
        for c1 in 0..=m_max - 2 * c2 {
            let (m, c) = (c1 + 2 * c2, c1 + c2);
            for s in subsets(&all) {
                let lam: Vec<i64> = GroupElement::lambda_set(n, &s).iter().map(|x| -x).collect();
                let minus: Vec<(usize, usize)> = i_set(n, &s).into_iter().filter(|(_, j)| s.contains(j)).collect();
                let plus: Vec<(usize, usize)> = i_set(n, &s).into_iter().filter(|(_, j)| !s.contains(j)).collect();
                for ys in sample_assignments(&i_set(n, &s), p) {
                    let y_of = |i: usize, j: usize| rat(ys.iter().find(|t| t.0 == i && t.1 == j).map_or(0, |t| t.2));
                    let scaled = |i, j| pi_pow(p, -m - 1) * y_of(i, j);
                    for &r in &s {
                        let lhs = product(
                            n,
                            [x_r(r, c + 1), GroupElement::weyl_set(n, &s, m + 1, p)]
                                .into_iter()
                                .chain(ys.iter().map(|&(i, j, _)| GroupElement::root(n, Root::Sum(i, j), &scaled(i, j))))
                                .chain([GroupElement::weyl_set(n, &s, m, p)]),
                        )?;
                        let rhs = product(
                            n,
                            minus
                                .iter()
                                .map(|&(i, j)| GroupElement::root(n, Root::Diff(i, j), &-y_of(i, j)))
                                .chain(plus.iter().map(|&(i, j)| GroupElement::root(n, Root::Sum(i, j), &scaled(i, j))))
                                .chain([Ok(GroupElement::cocharacter(&lam, p)), x_r(r, c)]),
                        )?;
                        record(&mut rep, lhs == rhs, || format!("n={n}, c1={c1}, c2={c2}, S={s:?}, r={r}: product identity fails"));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// For `X` with `x_{kh} = 0`: `YXY = 0`, `(I+YX)(I-YX) = I`, and
/// `x_{-ε_k-ε_h}(ϖ^{m+1}y) u(ϖ^{-m-1}X) x_{-ε_k-ε_h}(-ϖ^{m+1}y)` equals both
/// `[[I-XY, ϖ^{-m-1}X], [-ϖ^{m+1}YXY, I+YX]]` and `u(ϖ^{-m-1}(X-XYX)) diag(I-XY, 1, I+YX)`.
pub fn check_u_block(n: usize, m_max: i64, p: u64) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    let id = QMat::identity(n);
    let zero = QMat::zero(n, n);
    for m in 0..=m_max {
        let (lo, hi) = (pi_pow(p, m + 1), pi_pow(p, -m - 1));
        for k in 1..=n {
            for h in k + 1..=n {
                let coords: BTreeMap<(usize, usize), BigRational> = i_set(n, &[])
                    .into_iter()
                    .filter(|&ij| ij != (k, h))
                    .map(|(i, j)| ((i, j), rat((i * j + i) as i64 % 5 + 1)))
                    .collect();
                let x = x_matrix(n, &coords);
                for y in [rat(1), rat(2), rat(p as i64 + 1)] {
                    let ym = y_matrix(n, k, h, &y);
                    let what = |msg: &str| format!("n={n}, m={m}, (k,h)=({k},{h}), y={y}: {msg}");
                    let xy = &x * &ym;
                    let yx = &ym * &x;
                    let yxy = &yx * &ym;
                    record(&mut rep, yxy.is_zero(), || what("YXY != 0"));
                    record(&mut rep, (&id.add(&yx) * &id.sub(&yx)) == id, || what("(I+YX)(I-YX) != I"));
                    let lower = GroupElement::from_blocks(&id, &zero, &ym.scale(&lo), &id);
                    let xm = GroupElement::root(n, Root::NegSum(k, h), &(&lo * &y))?;
                    record(&mut rep, xm == lower, || what("x_{-ek-eh} is not block lower unipotent in Y"));
                    let xm_inv = GroupElement::root(n, Root::NegSum(k, h), &-(&lo * &y))?;
                    let lhs = xm.times(&GroupElement::u(&x.scale(&hi))).times(&xm_inv);
                    let blocks = GroupElement::from_blocks(
                        &id.sub(&xy),
                        &x.scale(&hi),
                        &yxy.scale(&-lo.clone()),
                        &id.add(&yx),
                    );
                    record(&mut rep, lhs == blocks, || what("block form mismatch"));
                    let factored = GroupElement::u(&x.sub(&(&xy * &x)).scale(&hi))
                        .times(&GroupElement::block_diag(&id.sub(&xy), &id.add(&yx)));
                    record(&mut rep, lhs == factored, || what("u(X - XYX) diag(I-XY, 1, I+YX) mismatch"));
                }
            }
        }
    }
    Ok(rep)
}

/// `x_{ε_k+ε_h}(ϖ^{-m-1}y) = x_{-ε_k-ε_h}(ϖ^{m+1}y^{-1}) w_{{k,h},m+1} x_{-ε_k-ε_h}(ϖ^{m+1}y)
/// (-y^{-1})^{ε_k^*+ε_h^*} w_{ε_k-ε_h}` exactly. Replacing the second `y` by `y^{-1}`
/// changes the right-hand side by a right factor `x_{-ε_k-ε_h}(z)` with `v(z) ≥ m+1`,
/// which is checked as well, together with
/// `w_{{k,h},m+1} x_{-ε_k-ε_h}(ϖ^{m+1}y^{-1}) w_{{k,h},m+1} = x_{ε_k+ε_h}(-ϖ^{-m-1}y^{-1})`.
pub fn check_step2(n: usize, m_max: i64, p: u64) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    for m in 0..=m_max {
        let (lo, hi) = (pi_pow(p, m + 1), pi_pow(p, -m - 1));
        for k in 1..=n {
            for h in k + 1..=n {
                let w1 = GroupElement::weyl_set(n, &[k, h], m + 1, p)?;
                let wd = GroupElement::weyl_diff(n, k, h)?;
                for yv in sample_units(p) {
                    let y = rat(yv);
                    let yi = y.recip();
                    let what = |msg: &str| format!("n={n}, m={m}, (k,h)=({k},{h}), y={y}: {msg}");
                    let mut t = vec![rat(1); n];
                    t[k - 1] = -yi.clone();
                    t[h - 1] = -yi.clone();
                    let tor = GroupElement::torus(&t)?;
                    let lhs = GroupElement::root(n, Root::Sum(k, h), &(&hi * &y))?;
                    let xa = GroupElement::root(n, Root::NegSum(k, h), &(&lo * &yi))?;
                    let xb = GroupElement::root(n, Root::NegSum(k, h), &(&lo * &y))?;
                    let exact = xa.times(&w1).times(&xb).times(&tor).times(&wd);
                    record(&mut rep, lhs == exact, || what("identity fails"));
                    let displayed = xa.times(&w1).times(&xa).times(&tor).times(&wd);
                    let d = exact.inverse().times(&displayed);
                    let z = d.at(GroupElement::prime(n, h), k).clone();
                    let is_root = GroupElement::root(n, Root::NegSum(k, h), &z)? == d;
                    let deep = valuation(&z, p).is_none_or(|v| v > m);
                    record(&mut rep, is_root && deep, || what("discrepancy is not in x_{-ek-eh}(p^{m+1})"));
                    let comp = w1.times(&xa).times(&w1);
                    let rhs = GroupElement::root(n, Root::Sum(k, h), &-(&hi * &yi))?;
                    record(&mut rep, comp == rhs, || what("companion conjugation fails"));
                }
            }
        }
    }
    Ok(rep)
}

/// All matrix identities for `1 ≤ n ≤ n_max`, `0 ≤ m ≤ m_max`.
pub fn relation_suite(n_max: usize, m_max: i64, p: u64) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    for n in 1..=n_max {
        rep.merge(check_generators(n, m_max, p)?);
        rep.merge(check_weyl_relations(n, m_max, p)?);
        rep.merge(check_conjugation(n, m_max, p)?);
        rep.merge(check_eva(n, m_max, p)?);
        rep.merge(check_u_block(n, m_max, p)?);
        rep.merge(check_step2(n, m_max, p)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_and_generators() {
        let t = rat(5) / rat(3);
        for n in 1..=3 {
            for i in 1..=n {
                for root in [Root::Short(i), Root::NegShort(i)] {
                    let g = GroupElement::root(n, root, &t).unwrap();
                    assert!(g.preserves_form(), "{root}");
                    assert_eq!(g.det(), rat(1));
                }
                let w = GroupElement::weyl_eps(n, i, 2, 3).unwrap();
                assert!(w.preserves_form());
                assert_eq!(w.det(), rat(1));
                for j in 1..=n {
                    if i < j {
                        assert!(GroupElement::root(n, Root::Sum(i, j), &t).unwrap().preserves_form());
                        assert!(GroupElement::root(n, Root::NegSum(i, j), &t).unwrap().preserves_form());
                    }
                    if i != j {
                        assert!(GroupElement::root(n, Root::Diff(i, j), &t).unwrap().preserves_form());
                    }
                }
            }
        }
        assert!(GroupElement::root(2, Root::Sum(2, 1), &t).is_err());
        assert!(GroupElement::root(2, Root::Short(3), &t).is_err());
    }

    #[test]
    fn inverse_via_gram() {
        let g = GroupElement::root(3, Root::Short(2), &rat(7))
            .unwrap()
            .times(&GroupElement::weyl_eps(3, 1, 1, 2).unwrap());
        assert_eq!(g.times(&g.inverse()), GroupElement::identity(3));
    }

    #[test]
    fn relations_small() {
        for p in [2, 3] {
            let rep = relation_suite(3, 1, p).unwrap();
            assert!(rep.ok(), "{:#?}", rep.failures);
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_coset_reps(1, 0, 3).len(), 1);
        assert_eq!(enumerate_coset_reps(2, 0, 3).len(), 4);
        assert_eq!(enumerate_hecke_reps(3, 1, 2).unwrap().len(), 6);
        assert_eq!(enumerate_hecke_reps(3, 0, 2).unwrap().len(), 1);
        assert!(enumerate_hecke_reps(3, 3, 2).is_err());
    }

    #[test]
    fn theta_example() {
        let q = |c: i64, e: i64| QLaurent::monomial(c, HalfInt::int(e));
        let st = theta_evaluate(3, 2, UnitSign::Minus, HalfInt::ONE, Operator::Theta).unwrap();
        assert_eq!(st.get(SupportPoint::Base, ParityClass::Odd), q(-1, 4));
        assert_eq!(st.get(SupportPoint::Base, ParityClass::Even), q(1, 6));
    }
}
