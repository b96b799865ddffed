//! Univariate integer polynomials `Z[x]` with the lexicographic total order.
//!
//! `f > g` holds when the highest coefficient on which `f` and `g` differ is
//! larger in `f`. Under this order `f > 0` exactly when the leading coefficient
//! of `f` is positive, and the positive cone `P[x] = {f : f >= 0}` is closed
//! under addition and multiplication, which makes `Z[x]` an ordered ring.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sign of a polynomial under the lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderSign {
    Negative,
    Zero,
    Positive,
}

impl OrderSign {
    pub fn is_positive(self) -> bool {
        self == OrderSign::Positive
    }

    /// `true` for members of `P[x]`, i.e. zero or positive.
    pub fn is_nonnegative(self) -> bool {
        self != OrderSign::Negative
    }
}

impl Mul for OrderSign {
    type Output = OrderSign;

    fn mul(self, rhs: OrderSign) -> OrderSign {
        use OrderSign::*;
        match (self, rhs) {
            (Zero, _) | (_, Zero) => Zero,
            (Positive, Positive) | (Negative, Negative) => Positive,
            _ => Negative,
        }
    }
}

impl Neg for OrderSign {
    type Output = OrderSign;

    fn neg(self) -> OrderSign {
        match self {
            OrderSign::Negative => OrderSign::Positive,
            OrderSign::Zero => OrderSign::Zero,
            OrderSign::Positive => OrderSign::Negative,
        }
    }
}

/// An element of `Z[x]`, stored densely from the constant term upwards.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector. Equality and hashing are therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZxPoly {
    coeffs: Vec<BigInt>,
}

impl ZxPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZxPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        ZxPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZxPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZxPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        ZxPoly::from_i64s(&[0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        ZxPoly::new(vec![c.into()])
    }

    /// `c * x^deg`.
    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c.into();
        ZxPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// `true` for the units `1` and `-1` of `Z[x]`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].magnitude().is_one()
    }

    pub fn order_sign(&self) -> OrderSign {
        match self.coeffs.last() {
            None => OrderSign::Zero,
            Some(c) if c.is_positive() => OrderSign::Positive,
            Some(_) => OrderSign::Negative,
        }
    }

    /// Membership in the positive cone `P[x]`.
    pub fn in_positive_cone(&self) -> bool {
        self.order_sign().is_nonnegative()
    }

    pub fn abs(&self) -> ZxPoly {
        if self.order_sign() == OrderSign::Negative {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, c: &BigInt) -> ZxPoly {
        if c.is_zero() {
            return ZxPoly::zero();
        }
        ZxPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> ZxPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZxPoly { coeffs }
    }

    /// Gcd of the coefficients together with the primitive part.
    ///
    /// The content is positive; the sign of `self` stays on the primitive part.
    pub fn content_primitive(&self) -> Result<(BigInt, ZxPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let content = self.content();
        let primitive = ZxPoly {
            coeffs: self.coeffs.iter().map(|c| c / &content).collect(),
        };
        Ok((content, primitive))
    }

    /// Gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division `self / d`, or `None` when `d` does not divide `self` in `Z[x]`.
    pub fn div_exact(&self, d: &ZxPoly) -> Option<ZxPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(ZxPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let lc = d.leading_coeff().unwrap();
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZxPoly::new(quot))
    }

    /// Pseudo-remainder of `self` by `d`: the remainder of `lc(d)^k * self`
    /// for the smallest `k` making the division exact over the integers.
    fn pseudo_rem(&self, d: &ZxPoly) -> ZxPoly {
        let dd = d.degree().expect("pseudo-remainder by zero");
        let lc = d.leading_coeff().unwrap();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading_coeff().unwrap().clone();
            let g = rl.gcd(lc);
            let a = lc / &g;
            let b = &rl / &g;
            r = &r.scale(&a) - &d.scale(&b).shift(rd - dd);
        }
        r
    }

    /// Greatest common divisor in `Z[x]`, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &ZxPoly) -> ZxPoly {
        if self.is_zero() {
            return other.abs();
        }
        if other.is_zero() {
            return self.abs();
        }
        let (ca, mut a) = self.content_primitive().unwrap();
        let (cb, mut b) = other.content_primitive().unwrap();
        let c = ca.gcd(&cb);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() {
                r
            } else {
                r.content_primitive().unwrap().1
            };
        }
        a.abs().scale(&c)
    }

    /// Evaluation at an integer point.
    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

impl Ord for ZxPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.coeffs.len().max(other.coeffs.len());
        for i in (0..n).rev() {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            let ord = match (a, b) {
                (Some(a), Some(b)) => a.cmp(b),
                (Some(a), None) => a.sign().cmp(&num_bigint::Sign::NoSign),
                (None, Some(b)) => num_bigint::Sign::NoSign.cmp(&b.sign()),
                (None, None) => Ordering::Equal,
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ZxPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total-order comparison; `Greater` iff `f - g` is positive.
pub fn compare(f: &ZxPoly, g: &ZxPoly) -> Ordering {
    f.cmp(g)
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], negate_b: bool) -> ZxPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(if negate_b { x - y } else { x + y });
    }
    ZxPoly::new(out)
}

impl Add for &ZxPoly {
    type Output = ZxPoly;
    fn add(self, rhs: &ZxPoly) -> ZxPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &ZxPoly {
    type Output = ZxPoly;
    fn sub(self, rhs: &ZxPoly) -> ZxPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &ZxPoly {
    type Output = ZxPoly;
    fn mul(self, rhs: &ZxPoly) -> ZxPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZxPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZxPoly::new(out)
    }
}

impl Neg for &ZxPoly {
    type Output = ZxPoly;
    fn neg(self) -> ZxPoly {
        ZxPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ZxPoly {
            type Output = ZxPoly;
            fn $m(self, rhs: ZxPoly) -> ZxPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ZxPoly> for ZxPoly {
            type Output = ZxPoly;
            fn $m(self, rhs: &ZxPoly) -> ZxPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ZxPoly {
    type Output = ZxPoly;
    fn neg(self) -> ZxPoly {
        -&self
    }
}

impl AddAssign<&ZxPoly> for ZxPoly {
    fn add_assign(&mut self, rhs: &ZxPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ZxPoly> for ZxPoly {
    fn sub_assign(&mut self, rhs: &ZxPoly) {
        *self = &*self - rhs;
    }
}

impl From<i64> for ZxPoly {
    fn from(c: i64) -> Self {
        ZxPoly::constant(c)
    }
}

impl fmt::Display for ZxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZxPoly({self})")
    }
}

impl Serialize for ZxPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut small = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => small.push(v as i128),
                None => small.push(
                    c.to_i128()
                        .ok_or_else(|| S::Error::custom("coefficient exceeds 128 bits"))?,
                ),
            }
        }
        if small.iter().all(|&c| i64::try_from(c).is_ok()) {
            serializer.collect_seq(small.iter().map(|&c| c as i64))
        } else {
            serializer.collect_seq(small)
        }
    }
}

impl<'de> Deserialize<'de> for ZxPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i128>::deserialize(deserializer)?;
        if raw.last() == Some(&0) {
            return Err(D::Error::custom(
                "polynomial has a trailing zero coefficient",
            ));
        }
        Ok(ZxPoly::new(raw.into_iter().map(BigInt::from).collect()))
    }
}
