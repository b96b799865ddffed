//! Fourier–Motzkin elimination over the ordered field `Q(x)`.
//!
//! A row `sum a_l t_l + c > 0` (or `>= 0`) has `Z[x]` entries and carries the
//! nonnegative multipliers expressing it in terms of the input rows, so an
//! infeasible system comes with a Farkas certificate. Every projection level
//! is kept for back-substitution.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::linalg::{primitive_vector, ZxVector};
use crate::ring::{compare, OrderSign, ZxPoly};

const ROW_CAP: usize = 4000;

#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub coeffs: ZxVector,
    pub constant: ZxPoly,
    pub strict: bool,
    origin: ZxVector,
}

impl Row {
    pub fn new(coeffs: ZxVector, constant: ZxPoly, strict: bool) -> Row {
        Row {
            coeffs,
            constant,
            strict,
            origin: Vec::new(),
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(ZxPoly::is_zero)
    }

    fn holds_trivially(&self) -> bool {
        let s = self.constant.order_sign();
        if self.strict {
            s == OrderSign::Positive
        } else {
            s.is_nonnegative()
        }
    }

    /// Divides by the positive gcd of every entry, multipliers included.
    fn normalize(&mut self) {
        let mut all: ZxVector = self.coeffs.clone();
        all.push(self.constant.clone());
        all.extend(self.origin.iter().cloned());
        let g = all.iter().fold(ZxPoly::zero(), |g, e| g.gcd(e));
        if g.is_zero() || g.is_one() {
            return;
        }
        let div = |p: &ZxPoly| p.div_exact(&g).expect("gcd divides every entry");
        self.coeffs = self.coeffs.iter().map(div).collect();
        self.constant = div(&self.constant);
        self.origin = self.origin.iter().map(div).collect();
    }

    fn key(&self) -> (ZxVector, bool) {
        let mut v = self.coeffs.clone();
        v.push(self.constant.clone());
        (primitive_vector(&v), self.strict)
    }
}

/// An element of `Q(x)` as `num / den` with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Frac {
    pub num: ZxPoly,
    pub den: ZxPoly,
}

impl Frac {
    pub fn poly(p: ZxPoly) -> Frac {
        Frac {
            num: p,
            den: ZxPoly::one(),
        }
    }

    pub fn new(num: ZxPoly, den: ZxPoly) -> Frac {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Frac::poly(ZxPoly::zero());
        }
        let (num, den) = if den.order_sign() == OrderSign::Negative {
            (-num, -den)
        } else {
            (num, den)
        };
        let g = num.gcd(&den);
        Frac {
            num: num.div_exact(&g).unwrap(),
            den: den.div_exact(&g).unwrap(),
        }
    }

    pub fn add(&self, o: &Frac) -> Frac {
        Frac::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn mul_poly(&self, p: &ZxPoly) -> Frac {
        Frac::new(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &ZxPoly) -> Frac {
        Frac::new(self.num.clone(), &self.den * p)
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn cmp(&self, o: &Frac) -> Ordering {
        compare(&(&self.num * &o.den), &(&o.num * &self.den))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Bound {
    pub value: Frac,
    pub strict: bool,
}

/// Admissible values of one variable once the earlier ones are fixed.
#[derive(Clone, Debug, Default)]
pub(crate) struct Interval {
    pub lo: Option<Bound>,
    pub hi: Option<Bound>,
}

impl Interval {
    pub fn contains(&self, t: &Frac) -> bool {
        let above = self.lo.as_ref().is_none_or(|b| match t.cmp(&b.value) {
            Ordering::Greater => true,
            Ordering::Equal => !b.strict,
            Ordering::Less => false,
        });
        let below = self.hi.as_ref().is_none_or(|b| match t.cmp(&b.value) {
            Ordering::Less => true,
            Ordering::Equal => !b.strict,
            Ordering::Greater => false,
        });
        above && below
    }

    /// Whether some value in `[a, b]` could lie in the interval.
    pub fn meets(&self, a: &Frac, b: &Frac) -> bool {
        let lo_ok = self.lo.as_ref().is_none_or(|l| match b.cmp(&l.value) {
            Ordering::Greater => true,
            Ordering::Equal => !l.strict,
            Ordering::Less => false,
        });
        let hi_ok = self.hi.as_ref().is_none_or(|h| match a.cmp(&h.value) {
            Ordering::Less => true,
            Ordering::Equal => !h.strict,
            Ordering::Greater => false,
        });
        lo_ok && hi_ok
    }

    /// A value inside a nonempty interval, preferring small polynomials.
    pub fn pick(&self) -> Frac {
        let simple =
            std::iter::once(ZxPoly::zero()).chain((0..=3usize).flat_map(|d| {
                (1..=4i64).flat_map(move |c| [c, -c].map(|s| ZxPoly::monomial(s, d)))
            }));
        for p in simple {
            let t = Frac::poly(p);
            if self.contains(&t) {
                return t;
            }
        }
        let one = Frac::poly(ZxPoly::one());
        let t = match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => l.value.add(&h.value).div_poly(&ZxPoly::constant(2)),
            (Some(l), None) => l.value.add(&one),
            (None, Some(h)) => h.value.add(&one.neg()),
            (None, None) => Frac::poly(ZxPoly::zero()),
        };
        if self.contains(&t) {
            return t;
        }
        Frac::poly(ZxPoly::one())
    }
}

pub(crate) enum Projection {
    /// `levels[k]` constrains the variables `0..k`.
    Feasible(Vec<Vec<Row>>),
    /// Nonnegative multipliers over the input rows combining to a false row.
    Infeasible(ZxVector),
    TooLarge,
}

fn clean(rows: Vec<Row>) -> Result<Vec<Row>, ZxVector> {
    let mut seen: BTreeMap<(ZxVector, bool), ()> = BTreeMap::new();
    let mut out = Vec::new();
    for mut r in rows {
        if r.is_trivial() {
            if r.holds_trivially() {
                continue;
            }
            return Err(r.origin);
        }
        r.normalize();
        if seen.insert(r.key(), ()).is_none() {
            out.push(r);
        }
    }
    Ok(out)
}

/// Eliminates the variables from last to first.
pub(crate) fn project(rows: &[Row], nvars: usize) -> Projection {
    let n = rows.len();
    let start: Vec<Row> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            debug_assert_eq!(r.coeffs.len(), nvars);
            let mut r = r.clone();
            r.origin = (0..n)
                .map(|j| {
                    if i == j {
                        ZxPoly::one()
                    } else {
                        ZxPoly::zero()
                    }
                })
                .collect();
            r
        })
        .collect();
    let mut cur = match clean(start) {
        Ok(c) => c,
        Err(o) => return Projection::Infeasible(o),
    };
    let mut levels: Vec<Vec<Row>> = vec![Vec::new(); nvars + 1];
    levels[nvars] = cur.clone();
    for k in (0..nvars).rev() {
        let mut next = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for r in &cur {
            match r.coeffs[k].order_sign() {
                OrderSign::Positive => pos.push(r),
                OrderSign::Negative => neg.push(r),
                OrderSign::Zero => next.push(truncate((*r).clone(), k)),
            }
        }
        if pos.len() * neg.len() + next.len() > ROW_CAP {
            return Projection::TooLarge;
        }
        for p in &pos {
            for q in &neg {
                let a = &p.coeffs[k];
                let b = -&q.coeffs[k];
                let comb = |x: &ZxPoly, y: &ZxPoly| &(&b * x) + &(a * y);
                let row = Row {
                    coeffs: p
                        .coeffs
                        .iter()
                        .zip(&q.coeffs)
                        .map(|(x, y)| comb(x, y))
                        .collect(),
                    constant: comb(&p.constant, &q.constant),
                    strict: p.strict || q.strict,
                    origin: p
                        .origin
                        .iter()
                        .zip(&q.origin)
                        .map(|(x, y)| comb(x, y))
                        .collect(),
                };
                next.push(truncate(row, k));
            }
        }
        cur = match clean(next) {
            Ok(c) => c,
            Err(o) => return Projection::Infeasible(o),
        };
        levels[k] = cur.clone();
    }
    Projection::Feasible(levels)
}

fn truncate(mut r: Row, k: usize) -> Row {
    debug_assert!(r.coeffs[k..].iter().skip(1).all(ZxPoly::is_zero));
    r.coeffs.truncate(k);
    r
}

/// Bounds on variable `k` from `levels[k + 1]` given values for `0..k`.
pub(crate) fn interval(levels: &[Vec<Row>], k: usize, prefix: &[Frac]) -> Interval {
    let mut iv = Interval::default();
    for r in &levels[k + 1] {
        let mut b = Frac::poly(r.constant.clone());
        for (c, t) in r.coeffs.iter().zip(prefix) {
            if !c.is_zero() {
                b = b.add(&t.mul_poly(c));
            }
        }
        let a = &r.coeffs[k];
        match a.order_sign() {
            OrderSign::Zero => {}
            OrderSign::Positive => {
                let v = b.neg().div_poly(a);
                let tighter = iv.lo.as_ref().is_none_or(|l| match v.cmp(&l.value) {
                    Ordering::Greater => true,
                    Ordering::Equal => r.strict && !l.strict,
                    Ordering::Less => false,
                });
                if tighter {
                    iv.lo = Some(Bound {
                        value: v,
                        strict: r.strict,
                    });
                }
            }
            OrderSign::Negative => {
                let v = b.div_poly(&-a);
                let tighter = iv.hi.as_ref().is_none_or(|h| match v.cmp(&h.value) {
                    Ordering::Less => true,
                    Ordering::Equal => r.strict && !h.strict,
                    Ordering::Greater => false,
                });
                if tighter {
                    iv.hi = Some(Bound {
                        value: v,
                        strict: r.strict,
                    });
                }
            }
        }
    }
    iv
}

/// Checks a Farkas certificate against `rows`: the multipliers are
/// nonnegative, cancel every variable, and leave a false constant row.
pub(crate) fn verify_farkas(rows: &[Row], lambda: &[ZxPoly]) -> bool {
    if lambda.len() != rows.len() || lambda.iter().any(|l| !l.in_positive_cone()) {
        return false;
    }
    let nvars = rows.first().map_or(0, |r| r.coeffs.len());
    for k in 0..nvars {
        let s = rows
            .iter()
            .zip(lambda)
            .fold(ZxPoly::zero(), |acc, (r, l)| acc + &r.coeffs[k] * l);
        if !s.is_zero() {
            return false;
        }
    }
    let c = rows
        .iter()
        .zip(lambda)
        .fold(ZxPoly::zero(), |acc, (r, l)| acc + &r.constant * l);
    match c.order_sign() {
        OrderSign::Negative => true,
        OrderSign::Zero => rows
            .iter()
            .zip(lambda)
            .any(|(r, l)| r.strict && !l.is_zero()),
        OrderSign::Positive => false,
    }
}

/// Back-substitutes a point of a feasible projection, choosing simple values.
pub(crate) fn sample(levels: &[Vec<Row>]) -> Vec<Frac> {
    let nvars = levels.len() - 1;
    let mut t = Vec::with_capacity(nvars);
    for k in 0..nvars {
        let iv = interval(levels, k, &t);
        t.push(iv.pick());
    }
    t
}
