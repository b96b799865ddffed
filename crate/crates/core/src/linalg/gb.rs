//! Strong Gröbner bases of submodules of `Z[x]^n`.
//!
//! Terms are `c * x^d * e_p`. Positions are split into a head block
//! `0..head` and a tail block `head..width`; every head term is larger than
//! every tail term, so basis elements whose head vanishes generate exactly
//! the submodule with zero head. Inside a block the higher degree wins and
//! ties go to the smaller position.
//!
//! A set `G` is a strong basis when the leading term of every module element
//! is divisible by the leading term of some `g` in `G` (same position, lower
//! or equal degree, leading coefficient dividing). Completion uses the two
//! critical elements of a Euclidean coefficient ring: the S-vector built from
//! the lcm of the leading coefficients and the G-vector built from their
//! Bezout combination.

use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::ring::{OrderSign, ZxPoly};

use super::ZxVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Lead {
    pub pos: usize,
    pub deg: usize,
}

/// Leading term inside `block`, if any entry there is nonzero.
fn lead_in(v: &[ZxPoly], block: Range<usize>) -> Option<Lead> {
    let deg = block.clone().filter_map(|p| v[p].degree()).max()?;
    let pos = block
        .into_iter()
        .find(|&p| v[p].degree() == Some(deg))
        .unwrap();
    Some(Lead { pos, deg })
}

fn sub_multiple(f: &mut [ZxPoly], g: &[ZxPoly], q: &BigInt, shift: usize) {
    for (fe, ge) in f.iter_mut().zip(g) {
        if ge.is_zero() {
            continue;
        }
        *fe -= &ge.scale(q).shift(shift);
    }
}

/// A basis element together with its cached leading data.
#[derive(Clone, Debug)]
struct Elem {
    v: ZxVector,
    lead: Lead,
}

impl Elem {
    fn new(mut v: ZxVector, layout: Layout) -> Option<Elem> {
        let l = layout.lead(&v)?;
        if v[l.pos].order_sign() == OrderSign::Negative {
            for e in v.iter_mut() {
                *e = -&*e;
            }
        }
        Some(Elem { v, lead: l })
    }

    fn lc(&self) -> &BigInt {
        self.v[self.lead.pos].leading_coeff().unwrap()
    }
}

#[derive(Clone, Copy, Debug)]
struct Layout {
    head: usize,
    width: usize,
}

impl Layout {
    fn blocks(self) -> [Range<usize>; 2] {
        [0..self.head, self.head..self.width]
    }

    fn lead(self, v: &[ZxPoly]) -> Option<Lead> {
        self.blocks().into_iter().find_map(|b| lead_in(v, b))
    }
}

/// Reduces the terms of `f` inside `block` against `basis`.
///
/// A term `c x^d e_p` is cancelled when some element has leading term
/// `a x^k e_p` with `k <= d` and `a | c`. Otherwise `c` is replaced by a
/// remainder modulo some such `a` whenever that shrinks `|c|`. A rewrite only
/// touches smaller terms, so one sweep in decreasing term order suffices.
fn reduce_block(f: &mut ZxVector, basis: &[&Elem], block: Range<usize>) {
    let Some(top) = block.clone().filter_map(|p| f[p].degree()).max() else {
        return;
    };
    for d in (0..=top).rev() {
        for p in block.clone() {
            loop {
                let c = f[p].coeff(d);
                if c.is_zero() {
                    break;
                }
                let candidates = || basis.iter().filter(|g| g.lead.pos == p && g.lead.deg <= d);
                let exact = candidates()
                    .filter(|g| c.is_multiple_of(g.lc()))
                    .min_by(|a, b| a.lc().cmp(b.lc()).then(a.lead.deg.cmp(&b.lead.deg)));
                if let Some(g) = exact {
                    let q = &c / g.lc();
                    sub_multiple(f, &g.v, &q, d - g.lead.deg);
                    break;
                }
                // leading coefficients are positive; pick the quotient that
                // leaves the smallest remainder in absolute value
                let step = candidates()
                    .map(|g| {
                        let a = g.lc();
                        let mut q = c.div_floor(a);
                        let mut r = &c - &q * a;
                        if (&r - a).abs() < r {
                            r -= a;
                            q += 1;
                        }
                        (r.abs(), q, g)
                    })
                    .filter(|(r, _, _)| r < &c.abs())
                    .min_by(|a, b| a.0.cmp(&b.0));
                match step {
                    Some((_, q, g)) => sub_multiple(f, &g.v, &q, d - g.lead.deg),
                    None => break,
                }
            }
        }
    }
}

fn reduce_full(f: &mut ZxVector, basis: &[&Elem], layout: Layout) {
    for b in layout.blocks() {
        reduce_block(f, basis, b);
    }
}

fn divides(g: &Elem, f: &Elem) -> bool {
    g.lead.pos == f.lead.pos && g.lead.deg <= f.lead.deg && f.lc().is_multiple_of(g.lc())
}

/// Completion state: live basis elements (removed ones leave a `None`),
/// open pairs, and vectors waiting to be reduced and inserted.
struct Work {
    layout: Layout,
    slots: Vec<Option<Elem>>,
    pairs: Vec<(usize, usize)>,
    pending: Vec<ZxVector>,
}

impl Work {
    fn drain_pending(&mut self) {
        while let Some(mut v) = self.pending.pop() {
            let live: Vec<&Elem> = self.slots.iter().flatten().collect();
            reduce_full(&mut v, &live, self.layout);
            let Some(e) = Elem::new(v, self.layout) else {
                continue;
            };
            // elements the newcomer now covers are reduced again later
            for k in 0..self.slots.len() {
                if self.slots[k].as_ref().is_some_and(|f| divides(&e, f)) {
                    let f = self.slots[k].take().unwrap();
                    self.pending.push(f.v);
                }
            }
            self.pairs
                .retain(|&(i, j)| self.slots[i].is_some() && self.slots[j].is_some());
            let idx = self.slots.len();
            for (j, other) in self.slots.iter().enumerate() {
                if other.as_ref().is_some_and(|o| o.lead.pos == e.lead.pos) {
                    self.pairs.push((j, idx));
                }
            }
            self.slots.push(Some(e));
        }
    }

    /// Picks the open pair with the smallest lcm term.
    fn next_pair(&mut self) -> Option<(usize, usize)> {
        let key = |&(i, j): &(usize, usize)| {
            let (a, b) = (
                self.slots[i].as_ref().unwrap(),
                self.slots[j].as_ref().unwrap(),
            );
            let block = usize::from(a.lead.pos < self.layout.head);
            (
                block,
                a.lead.deg.max(b.lead.deg),
                std::cmp::Reverse(a.lead.pos),
                a.lc().lcm(b.lc()),
            )
        };
        let best = (0..self.pairs.len()).min_by_key(|&k| key(&self.pairs[k]))?;
        Some(self.pairs.swap_remove(best))
    }
}

pub(crate) struct Basis {
    elems: Vec<Elem>,
    layout: Layout,
}

impl Basis {
    /// Computes a minimal, tail-reduced strong basis of the module generated
    /// by `gens`, with positions `0..head` forming the dominant block.
    pub(crate) fn compute(gens: &[ZxVector], head: usize) -> Basis {
        let width = gens.first().map_or(head, Vec::len);
        let layout = Layout { head, width };
        let mut work = Work {
            layout,
            slots: Vec::new(),
            pairs: Vec::new(),
            pending: Vec::new(),
        };
        work.pending.extend(gens.iter().cloned());
        work.drain_pending();

        while let Some((i, j)) = work.next_pair() {
            let (fi, fj) = match (&work.slots[i], &work.slots[j]) {
                (Some(a), Some(b)) => (a, b),
                _ => continue,
            };
            let (a, b) = (fi.lc().clone(), fj.lc().clone());
            let top = fi.lead.deg.max(fj.lead.deg);
            let (si, sj) = (top - fi.lead.deg, top - fj.lead.deg);

            let l = a.lcm(&b);
            let mut s =
                fi.v.iter()
                    .map(|e| e.scale(&(&l / &a)).shift(si))
                    .collect::<ZxVector>();
            sub_multiple(&mut s, &fj.v, &(&l / &b), sj);
            work.pending.push(s);

            if !b.is_multiple_of(&a) && !a.is_multiple_of(&b) {
                let eg = a.extended_gcd(&b);
                let gvec: ZxVector =
                    fi.v.iter()
                        .zip(&fj.v)
                        .map(|(x, y)| &x.scale(&eg.x).shift(si) + &y.scale(&eg.y).shift(sj))
                        .collect();
                work.pending.push(gvec);
            }
            work.drain_pending();
        }

        let elems = work.slots.into_iter().flatten().collect();
        Basis {
            elems: minimalize(elems, layout),
            layout,
        }
    }

    pub(crate) fn elements(&self) -> impl Iterator<Item = &ZxVector> {
        self.elems.iter().map(|e| &e.v)
    }

    /// Reduces the head block of `f`.
    pub(crate) fn reduce_head(&self, f: &mut ZxVector) {
        let refs: Vec<&Elem> = self.elems.iter().collect();
        reduce_block(f, &refs, 0..self.layout.head);
    }

    /// Reduces every term of `f`.
    #[cfg(test)]
    pub(crate) fn reduce(&self, f: &mut ZxVector) {
        let refs: Vec<&Elem> = self.elems.iter().collect();
        reduce_full(f, &refs, self.layout);
    }
}

/// Drops elements whose leading term is divisible by another leading term,
/// then reduces the tails of the survivors against each other.
fn minimalize(mut elems: Vec<Elem>, layout: Layout) -> Vec<Elem> {
    elems.sort_by(|a, b| {
        a.lead
            .pos
            .cmp(&b.lead.pos)
            .then(a.lead.deg.cmp(&b.lead.deg))
            .then(a.lc().cmp(b.lc()))
    });
    let mut kept: Vec<Elem> = Vec::new();
    for e in elems {
        let covered = kept.iter().any(|k| divides(k, &e));
        if !covered {
            kept.push(e);
        }
    }
    for i in 0..kept.len() {
        let mut v = kept[i].v.clone();
        let others: Vec<&Elem> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, e)| e)
            .collect();
        reduce_full(&mut v, &others, layout);
        let l = layout
            .lead(&v)
            .expect("leading term survives tail reduction");
        debug_assert_eq!(l, kept[i].lead);
        drop(others);
        kept[i].v = v;
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZxPoly {
        ZxPoly::from_i64s(c)
    }

    fn reduces_to_zero(b: &Basis, v: &ZxVector) -> bool {
        let mut f = v.clone();
        b.reduce(&mut f);
        f.iter().all(ZxPoly::is_zero)
    }

    #[test]
    fn ideal_two_and_x() {
        // the ideal (2, x) in Z[x] viewed as a rank-one module
        let b = Basis::compute(&[vec![p(&[2])], vec![p(&[0, 1])]], 1);
        assert!(reduces_to_zero(&b, &vec![p(&[2, 1])]));
        assert!(reduces_to_zero(&b, &vec![p(&[0, 3, 1])]));
        assert!(!reduces_to_zero(&b, &vec![p(&[1])]));
        assert!(!reduces_to_zero(&b, &vec![p(&[3, 1])]));
    }

    #[test]
    fn gcd_combination_found() {
        // (2) and (3) generate the unit ideal
        let b = Basis::compute(&[vec![p(&[2])], vec![p(&[3])]], 1);
        assert!(reduces_to_zero(&b, &vec![p(&[1])]));
        assert_eq!(b.elements().count(), 1);
    }

    #[test]
    fn module_membership() {
        let gens = vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[0, 1]), p(&[2])]];
        let b = Basis::compute(&gens, 2);
        assert!(reduces_to_zero(&b, &vec![p(&[]), p(&[1])]));
        assert!(reduces_to_zero(&b, &vec![p(&[0, 1]), p(&[3])]));
        assert!(!reduces_to_zero(&b, &vec![p(&[1]), p(&[])]));
    }
}
