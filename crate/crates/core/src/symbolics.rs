//! Half-integers, signs and Laurent polynomials in `q` with half-integral exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of `½Z`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        let t = s.trim();
        match t.split_once('/') {
            None => t.parse::<i64>().map(HalfInt::int).map_err(|_| bad()),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => Ok(HalfInt::int(num)),
                    "2" => Ok(HalfInt::from_twice(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + o.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - o.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        HalfInt { twice: self.twice * k }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, o: HalfInt) {
        self.twice += o.twice;
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(HalfInt::int(n)),
            Raw::Str(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

/// `+1` or `-1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum UnitSign {
    Minus,
    Plus,
}

impl UnitSign {
    pub fn value(self) -> i64 {
        match self {
            UnitSign::Plus => 1,
            UnitSign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(UnitSign::Plus),
            -1 => Some(UnitSign::Minus),
            _ => None,
        }
    }

    pub fn pow(self, e: u64) -> Self {
        if e.is_multiple_of(2) {
            UnitSign::Plus
        } else {
            self
        }
    }
}

impl Mul for UnitSign {
    type Output = UnitSign;
    fn mul(self, o: UnitSign) -> UnitSign {
        if self == o {
            UnitSign::Plus
        } else {
            UnitSign::Minus
        }
    }
}

impl Neg for UnitSign {
    type Output = UnitSign;
    fn neg(self) -> UnitSign {
        self * UnitSign::Minus
    }
}

impl fmt::Display for UnitSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

impl Serialize for UnitSign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for UnitSign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        UnitSign::from_value(v).ok_or_else(|| de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// A Laurent polynomial `Σ c_e q^e` with `e ∈ ½Z` and integer coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QLaurent {
    coeffs: BTreeMap<HalfInt, i64>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::monomial(1, HalfInt::ZERO)
    }

    pub fn constant(c: i64) -> Self {
        QLaurent::monomial(c, HalfInt::ZERO)
    }

    /// `c·q^e`.
    pub fn monomial(c: i64, e: HalfInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(e, c);
        }
        QLaurent { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (HalfInt, i64)>>(terms: I) -> Self {
        let mut out = QLaurent::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: HalfInt, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: HalfInt) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (HalfInt, i64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_degree(&self) -> Option<HalfInt> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<HalfInt> {
        self.coeffs.keys().next().copied()
    }

    pub fn scale(&self, k: i64) -> Self {
        QLaurent::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: HalfInt) -> Self {
        QLaurent::from_terms(self.terms().map(|(d, c)| (d + e, c)))
    }

    /// Exact value at an integer `q > 1`; every exponent must be integral.
    pub fn eval(&self, q: i64) -> Result<BigRational, Error> {
        if q < 2 {
            return Err(Error::Domain(format!("evaluation point q = {q} must exceed 1")));
        }
        let base = BigRational::from_integer(BigInt::from(q));
        let mut total = BigRational::zero();
        for (e, c) in self.terms() {
            let k = e
                .to_integer()
                .ok_or_else(|| Error::Domain(format!("exponent {e} is not integral")))?;
            let power = if k >= 0 {
                num_traits::pow(base.clone(), k as usize)
            } else {
                BigRational::one() / num_traits::pow(base.clone(), (-k) as usize)
            };
            total += power * BigRational::from_integer(BigInt::from(c));
        }
        Ok(total)
    }
}

/// The exact product of two Laurent polynomials.
pub fn qlaurent_mul(a: &QLaurent, b: &QLaurent) -> QLaurent {
    let mut out = QLaurent::zero();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            out.add_term(ea + eb, ca * cb);
        }
    }
    out
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, o: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, o: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, o: &QLaurent) -> QLaurent {
        qlaurent_mul(self, o)
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        self.scale(-1)
    }
}

impl Add for QLaurent {
    type Output = QLaurent;
    fn add(self, o: QLaurent) -> QLaurent {
        &self + &o
    }
}

impl Sub for QLaurent {
    type Output = QLaurent;
    fn sub(self, o: QLaurent) -> QLaurent {
        &self - &o
    }
}

impl Mul for QLaurent {
    type Output = QLaurent;
    fn mul(self, o: QLaurent) -> QLaurent {
        qlaurent_mul(&self, &o)
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        self.scale(-1)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if *e == HalfInt::ZERO {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            if *e == HalfInt::ONE {
                write!(f, "q")?;
            } else {
                write!(f, "q^({e})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(HalfInt, i64)> = self.terms().collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(HalfInt, i64)>::deserialize(d)?;
        Ok(QLaurent::from_terms(pairs))
    }
}
