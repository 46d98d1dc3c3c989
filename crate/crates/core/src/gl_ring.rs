//! Segments over supercuspidal lines, their products, the comultiplication `M*`,
//! derivatives, unramified-constituent counting and Hecke eigenvalues.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::symbolics::{HalfInt, QLaurent, UnitSign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelfDualKind {
    Orthogonal,
    Symplectic,
    None,
}

impl fmt::Display for SelfDualKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelfDualKind::Orthogonal => "orthogonal",
            SelfDualKind::Symplectic => "symplectic",
            SelfDualKind::None => "none",
        })
    }
}

fn is_zero_half(h: &HalfInt) -> bool {
    *h == HalfInt::ZERO
}

/// A supercuspidal representation `ρ = ρ^u|·|^twist` of some `GL_k`, kept as opaque data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SupercuspidalLabel {
    pub name: String,
    pub dim_k: u32,
    pub ramified: bool,
    pub selfdual_kind: SelfDualKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unram_sign: Option<UnitSign>,
    #[serde(default)]
    pub base_conductor: u32,
    #[serde(default, skip_serializing_if = "is_zero_half")]
    pub twist: HalfInt,
}

impl SupercuspidalLabel {
    /// The trivial character of `F^×`.
    pub fn chi() -> Self {
        SupercuspidalLabel::unramified("chi", UnitSign::Plus)
    }

    /// The unramified quadratic character with `χ'(ϖ) = -1`.
    pub fn chi_prime() -> Self {
        SupercuspidalLabel::unramified("chi'", UnitSign::Minus)
    }

    pub fn unramified(name: &str, sign: UnitSign) -> Self {
        SupercuspidalLabel {
            name: name.to_string(),
            dim_k: 1,
            ramified: false,
            selfdual_kind: SelfDualKind::Orthogonal,
            unram_sign: Some(sign),
            base_conductor: 0,
            twist: HalfInt::ZERO,
        }
    }

    pub fn ramified(name: &str, dim_k: u32, kind: SelfDualKind, base_conductor: u32) -> Self {
        SupercuspidalLabel {
            name: name.to_string(),
            dim_k,
            ramified: true,
            selfdual_kind: kind,
            unram_sign: None,
            base_conductor,
            twist: HalfInt::ZERO,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |reason: &str| {
            Err(Error::InvalidLabel { name: self.name.clone(), reason: reason.to_string() })
        };
        if self.dim_k == 0 {
            return bad("dim_k must be positive");
        }
        if self.ramified {
            if self.unram_sign.is_some() {
                return bad("a ramified label carries no unramified sign");
            }
            if self.base_conductor == 0 {
                return bad("a ramified label needs base_conductor >= 1");
            }
        } else {
            if self.dim_k != 1 {
                return bad("an unramified label has dim_k = 1");
            }
            if self.selfdual_kind != SelfDualKind::Orthogonal {
                return bad("an unramified label is orthogonal");
            }
            if self.unram_sign.is_none() {
                return bad("an unramified label needs unram_sign");
            }
            if self.base_conductor != 0 {
                return bad("an unramified label has base_conductor 0");
            }
        }
        if self.selfdual_kind == SelfDualKind::Symplectic && !self.dim_k.is_multiple_of(2) {
            return bad("a symplectic label has even dim_k");
        }
        Ok(())
    }

    pub fn is_unramified(&self) -> bool {
        !self.ramified
    }

    pub fn with_twist(&self, twist: HalfInt) -> Self {
        SupercuspidalLabel { twist, ..self.clone() }
    }

    /// The unitary part `ρ^u`.
    pub fn unitary(&self) -> Self {
        self.with_twist(HalfInt::ZERO)
    }

    pub fn dual(&self) -> Self {
        self.with_twist(-self.twist)
    }

    pub fn same_line(&self, other: &SupercuspidalLabel) -> bool {
        self.unitary() == other.unitary()
    }
}

impl fmt::Display for SupercuspidalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist == HalfInt::ZERO {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}|.|^({})", self.name, self.twist)
        }
    }
}

/// `Δ_ρ[x,y]`; when `x - y < 0` this is the trivial representation of `GL_0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub label: SupercuspidalLabel,
    pub x: HalfInt,
    pub y: HalfInt,
}

impl Segment {
    pub fn new(label: SupercuspidalLabel, x: HalfInt, y: HalfInt) -> Result<Self, Error> {
        if !(x - y).is_integer() {
            return Err(Error::InvalidSegment(format!("x - y = {} is not an integer", x - y)));
        }
        Ok(Segment { label, x, y })
    }

    /// `ρ|·|^x`, a segment of length one.
    pub fn singleton(label: SupercuspidalLabel, x: HalfInt) -> Self {
        Segment { label, x, y: x }
    }

    pub fn validate(&self) -> Result<(), Error> {
        self.label.validate()?;
        Segment::new(self.label.clone(), self.x, self.y).map(|_| ())
    }

    /// Number of cuspidal factors, `max(x - y + 1, 0)`.
    pub fn length(&self) -> i64 {
        ((self.x - self.y).twice() / 2 + 1).max(0)
    }

    pub fn is_empty(&self) -> bool {
        self.length() == 0
    }

    /// `GL` rank of the segment.
    pub fn dim(&self) -> i64 {
        self.length() * self.label.dim_k as i64
    }

    /// Moves the label twist into the exponents.
    pub fn normalized(&self) -> Segment {
        let t = self.label.twist;
        Segment { label: self.label.unitary(), x: self.x + t, y: self.y + t }
    }

    /// Exponents `x, x-1, ..., y` after normalisation.
    pub fn exponents(&self) -> Vec<HalfInt> {
        let s = self.normalized();
        (0..s.length()).map(|k| s.x - HalfInt::int(k)).collect()
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{}[{},{}]", self.label, self.x, self.y)
    }
}

/// The conductor of a segment: `x - y` on unramified lines and `(x-y+1)·c(ρ)` otherwise.
pub fn segment_conductor(seg: &Segment) -> i64 {
    if seg.is_empty() {
        return 0;
    }
    if seg.label.is_unramified() {
        seg.length() - 1
    } else {
        seg.length() * seg.label.base_conductor as i64
    }
}

/// An induced product of segments; the empty product is the trivial representation of `GL_0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SegmentProduct {
    pub factors: Vec<Segment>,
}

impl SegmentProduct {
    pub fn new(factors: Vec<Segment>) -> Self {
        SegmentProduct { factors }
    }

    pub fn one() -> Self {
        SegmentProduct::default()
    }

    /// Normalised factors, empty segments dropped, sorted. Products commute in the
    /// Grothendieck group so this is a faithful key.
    pub fn canonical(&self) -> SegmentProduct {
        let mut f: Vec<Segment> =
            self.factors.iter().filter(|s| !s.is_empty()).map(Segment::normalized).collect();
        f.sort();
        SegmentProduct { factors: f }
    }

    pub fn times(&self, other: &SegmentProduct) -> SegmentProduct {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        SegmentProduct { factors: f }.canonical()
    }

    pub fn dim(&self) -> i64 {
        self.factors.iter().map(Segment::dim).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.iter().all(Segment::is_empty)
    }
}

impl fmt::Display for SegmentProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonempty: Vec<String> =
            self.factors.iter().filter(|s| !s.is_empty()).map(|s| s.to_string()).collect();
        if nonempty.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", nonempty.join(" x "))
        }
    }
}

/// Integer combination of segment products.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GLFormalSum {
    terms: BTreeMap<SegmentProduct, i64>,
}

impl GLFormalSum {
    pub fn zero() -> Self {
        GLFormalSum::default()
    }

    pub fn single(p: SegmentProduct) -> Self {
        let mut s = GLFormalSum::zero();
        s.add(p, 1);
        s
    }

    pub fn add(&mut self, p: SegmentProduct, mult: i64) {
        if mult == 0 {
            return;
        }
        let key = p.canonical();
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_sum(&mut self, other: &GLFormalSum) {
        for (p, c) in &other.terms {
            self.add(p.clone(), *c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SegmentProduct, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn multiplicity(&self, p: &SegmentProduct) -> i64 {
        self.terms.get(&p.canonical()).copied().unwrap_or(0)
    }
}

/// Integer combination of pairs `τ ⊗ τ'` of segment products.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorFormalSum {
    terms: BTreeMap<(SegmentProduct, SegmentProduct), i64>,
}

impl TensorFormalSum {
    pub fn zero() -> Self {
        TensorFormalSum::default()
    }

    /// `1 ⊗ 1`.
    pub fn unit() -> Self {
        let mut s = TensorFormalSum::zero();
        s.add(SegmentProduct::one(), SegmentProduct::one(), 1);
        s
    }

    pub fn add(&mut self, left: SegmentProduct, right: SegmentProduct, mult: i64) {
        if mult == 0 {
            return;
        }
        let key = (left.canonical(), right.canonical());
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SegmentProduct, &SegmentProduct, i64)> {
        self.terms.iter().map(|((l, r), c)| (l, r, *c))
    }

    pub fn multiplicity(&self, left: &SegmentProduct, right: &SegmentProduct) -> i64 {
        self.terms.get(&(left.canonical(), right.canonical())).copied().unwrap_or(0)
    }

    /// Number of distinct basis pairs.
    pub fn distinct_len(&self) -> usize {
        self.terms.len()
    }

    /// Number of terms counted with multiplicity.
    pub fn total_count(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Factorwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn times(&self, other: &TensorFormalSum) -> TensorFormalSum {
        let mut out = TensorFormalSum::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                out.add(l1.times(l2), r1.times(r2), c1 * c2);
            }
        }
        out
    }
}

pub fn is_unramified_segment(seg: &Segment) -> bool {
    seg.is_empty() || (seg.x == seg.y && seg.label.is_unramified())
}

/// True iff every factor is unramified; the unramified constituent then has multiplicity one.
pub fn has_unramified_constituent(p: &SegmentProduct) -> bool {
    p.factors.iter().all(is_unramified_segment)
}

/// `M*(Δ_ρ[x,y])` computed from the double sum for `Δ_{ρ|·|^y}[x-y, 0]`.
pub fn comult_m_star(seg: &Segment) -> TensorFormalSum {
    let s = seg.normalized();
    if s.is_empty() {
        return TensorFormalSum::unit();
    }
    let rho = s.label.clone();
    let (x, y) = (s.x, s.y);
    let big_x = s.length() - 1;
    let mut out = TensorFormalSum::zero();
    for i in 0..=big_x + 1 {
        for j in 0..=i {
            let hi = HalfInt::int;
            let dual = Segment { label: rho.clone(), x: -y, y: hi(i - big_x) - y };
            let head = Segment { label: rho.clone(), x, y: x + hi(1 - j) };
            let tail = Segment { label: rho.clone(), x: x - hi(j), y: x + hi(1 - i) };
            out.add(SegmentProduct::new(vec![dual, head]), SegmentProduct::new(vec![tail]), 1);
        }
    }
    out
}

pub fn m_star_product(p: &SegmentProduct) -> TensorFormalSum {
    p.factors.iter().fold(TensorFormalSum::unit(), |acc, s| acc.times(&comult_m_star(s)))
}

/// Number of terms of `M*(p)`, with multiplicity, whose left factor has an unramified constituent.
pub fn m_star_ur_count(p: &SegmentProduct) -> i64 {
    m_star_product(p)
        .terms()
        .filter(|(l, _, _)| has_unramified_constituent(l))
        .map(|(_, _, c)| c)
        .sum()
}

fn matches_at(seg: &Segment, at: &SupercuspidalLabel, exponent: HalfInt) -> bool {
    !seg.is_empty() && seg.label.same_line(at) && exponent == at.twist
}

/// `L_{ρ'|·|^z}(Δ_ρ[x,y])`; `at` carries `z` as its twist.
pub fn left_derivative(seg: &Segment, at: &SupercuspidalLabel) -> GLFormalSum {
    let s = seg.normalized();
    if matches_at(&s, at, s.x) {
        GLFormalSum::single(SegmentProduct::new(vec![Segment { x: s.x - HalfInt::ONE, ..s }]))
    } else {
        GLFormalSum::zero()
    }
}

/// `R_{ρ'|·|^z}(Δ_ρ[x,y])`.
pub fn right_derivative(seg: &Segment, at: &SupercuspidalLabel) -> GLFormalSum {
    let s = seg.normalized();
    if matches_at(&s, at, s.y) {
        GLFormalSum::single(SegmentProduct::new(vec![Segment { y: s.y + HalfInt::ONE, ..s }]))
    } else {
        GLFormalSum::zero()
    }
}

fn leibniz(
    p: &SegmentProduct,
    at: &SupercuspidalLabel,
    d: fn(&Segment, &SupercuspidalLabel) -> GLFormalSum,
) -> GLFormalSum {
    let mut out = GLFormalSum::zero();
    for (i, seg) in p.factors.iter().enumerate() {
        for (dp, c) in d(seg, at).terms() {
            let mut f = p.factors.clone();
            f.remove(i);
            f.extend(dp.factors.iter().cloned());
            out.add(SegmentProduct::new(f), c);
        }
    }
    out
}

/// Left derivative of a product by the Leibniz rule.
pub fn left_derivative_product(p: &SegmentProduct, at: &SupercuspidalLabel) -> GLFormalSum {
    leibniz(p, at, left_derivative)
}

pub fn right_derivative_product(p: &SegmentProduct, at: &SupercuspidalLabel) -> GLFormalSum {
    leibniz(p, at, right_derivative)
}

/// Coefficients `c_i` (in `t = q^{-s}`) of `∏ (1 - ε q^{-e} t)`.
pub fn inverse_l_polynomial(factors: &[(UnitSign, HalfInt)]) -> Vec<QLaurent> {
    let mut poly = vec![QLaurent::one()];
    for (eps, e) in factors {
        let lin = QLaurent::monomial(-eps.value(), -*e);
        let mut next = vec![QLaurent::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] = &next[i] + c;
            next[i + 1] = &next[i + 1] + &(c * &lin);
        }
        poly = next;
    }
    while poly.len() > 1 && poly.last().is_some_and(QLaurent::is_zero) {
        poly.pop();
    }
    poly
}

/// Solves `L(s)^{-1} = Σ_{i<r} (-1)^i λ_i q^{-i(s+(r-1)/2) + i(i-1)/2}` for `λ_0, ..., λ_{r-1}`.
///
/// `factors` lists `(ε, e)` for the linear factors `1 - ε q^{-(s+e)}` of `L(s)^{-1}`.
pub fn hecke_eigenvalues(factors: &[(UnitSign, HalfInt)], r: usize) -> Result<Vec<QLaurent>, Error> {
    if r == 0 {
        return Err(Error::Domain("r must be positive".into()));
    }
    let poly = inverse_l_polynomial(factors);
    let degree = poly.len() - 1;
    if degree >= r {
        return Err(Error::HeckeDegree { degree, r });
    }
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let c = poly.get(i).cloned().unwrap_or_default();
        let ii = i as i64;
        let shift = HalfInt::from_twice(ii * (r as i64 - 1)) - HalfInt::int(ii * (ii - 1) / 2);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.push(c.shift(shift).scale(sign));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn label_validation() {
        assert!(SupercuspidalLabel::chi().validate().is_ok());
        let mut bad = SupercuspidalLabel::ramified("rho", 3, SelfDualKind::Symplectic, 1);
        assert!(bad.validate().is_err());
        bad.dim_k = 2;
        assert!(bad.validate().is_ok());
        bad.base_conductor = 0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn unramified_segments() {
        let chi = SupercuspidalLabel::chi();
        assert!(is_unramified_segment(&Segment::singleton(chi.clone(), h("5/2"))));
        assert!(!is_unramified_segment(&Segment::new(chi.clone(), h("3/2"), h("1/2")).unwrap()));
        assert!(is_unramified_segment(&Segment::new(chi, h("1"), h("2")).unwrap()));
    }

    #[test]
    fn m_star_at_zero() {
        let rho = SupercuspidalLabel::ramified("rho", 2, SelfDualKind::Symplectic, 1);
        let m = comult_m_star(&Segment::singleton(rho.clone(), HalfInt::ZERO));
        assert_eq!(m.total_count(), 3);
        let one = SegmentProduct::one();
        let r00 = SegmentProduct::new(vec![Segment::singleton(rho, HalfInt::ZERO)]);
        assert_eq!(m.multiplicity(&r00, &one), 2);
        assert_eq!(m.multiplicity(&one, &r00), 1);
    }

    #[test]
    fn derivatives() {
        let chi = SupercuspidalLabel::chi();
        let seg = Segment::new(chi.clone(), h("5/2"), h("1/2")).unwrap();
        let l = left_derivative(&seg, &chi.with_twist(h("5/2")));
        let expect = SegmentProduct::new(vec![Segment::new(chi.clone(), h("3/2"), h("1/2")).unwrap()]);
        assert_eq!(l.multiplicity(&expect), 1);
        assert!(left_derivative(&seg, &chi.with_twist(h("3/2"))).is_zero());
        let r = right_derivative(&Segment::singleton(chi.clone(), h("1/2")), &chi.with_twist(h("1/2")));
        assert_eq!(r.multiplicity(&SegmentProduct::one()), 1);
    }

    #[test]
    fn hecke_degree_error() {
        let f = [(UnitSign::Plus, HalfInt::ONE), (UnitSign::Minus, HalfInt::ONE)];
        assert!(matches!(hecke_eigenvalues(&f, 2), Err(Error::HeckeDegree { degree: 2, r: 2 })));
        assert_eq!(hecke_eigenvalues(&[], 3).unwrap(), vec![QLaurent::one(), QLaurent::zero(), QLaurent::zero()]);
    }
}
