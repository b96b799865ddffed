//! Bounded search for polynomial points of a projected system.
//!
//! Variables are fixed in elimination order. For each one the admissible
//! `Q(x)` interval comes from the next projection level, and candidates are
//! built top coefficient first: with the leading coefficients fixed, the
//! completions inside the box form a contiguous range of the total order, so
//! a prefix whose range misses the interval is skipped whole.

use super::fm::{interval, Frac, Interval, Row};
use crate::ring::ZxPoly;
use crate::verdict::SearchBounds;

pub(crate) const NODE_BUDGET: usize = 200_000;

pub(crate) enum Outcome {
    Found(Vec<ZxPoly>),
    Exhausted,
    OutOfBudget,
}

struct Searcher<'a> {
    levels: &'a [Vec<Row>],
    bounds: SearchBounds,
    budget: usize,
    starved: bool,
    prefix: Vec<Frac>,
    values: Vec<ZxPoly>,
}

/// Coefficient choices ordered by absolute value, positive first.
fn choices(b: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=b).flat_map(|c| [c, -c]))
}

impl Searcher<'_> {
    fn nvars(&self) -> usize {
        self.levels.len() - 1
    }

    fn var(&mut self, k: usize) -> bool {
        if k == self.nvars() {
            return true;
        }
        let iv = interval(self.levels, k, &self.prefix);
        let mut coeffs = vec![0i64; self.bounds.max_deg + 1];
        self.digit(k, &iv, self.bounds.max_deg as isize, &mut coeffs)
    }

    fn digit(&mut self, k: usize, iv: &Interval, pos: isize, coeffs: &mut Vec<i64>) -> bool {
        if self.budget == 0 {
            self.starved = true;
            return false;
        }
        self.budget -= 1;
        if pos < 0 {
            let p = ZxPoly::from_i64s(coeffs);
            let f = Frac::poly(p.clone());
            if !iv.contains(&f) {
                return false;
            }
            self.prefix.push(f);
            self.values.push(p);
            if self.var(k + 1) {
                return true;
            }
            self.prefix.pop();
            self.values.pop();
            return false;
        }
        let b = i64::from(self.bounds.coeff_box);
        let pos_u = pos as usize;
        for c in choices(b) {
            coeffs[pos_u] = c;
            let mut lo = coeffs.clone();
            let mut hi = coeffs.clone();
            for i in 0..pos_u {
                lo[i] = -b;
                hi[i] = b;
            }
            let lo = Frac::poly(ZxPoly::from_i64s(&lo));
            let hi = Frac::poly(ZxPoly::from_i64s(&hi));
            if iv.meets(&lo, &hi) && self.digit(k, iv, pos - 1, coeffs) {
                return true;
            }
            if self.starved {
                break;
            }
        }
        coeffs[pos_u] = 0;
        false
    }
}

/// Looks for polynomial values, inside `bounds`, of the variables of a
/// feasible projection.
pub(crate) fn search(levels: &[Vec<Row>], bounds: SearchBounds) -> Outcome {
    let mut s = Searcher {
        levels,
        bounds,
        budget: NODE_BUDGET,
        starved: false,
        prefix: Vec::new(),
        values: Vec::new(),
    };
    if s.var(0) {
        Outcome::Found(s.values)
    } else if s.starved {
        Outcome::OutOfBudget
    } else {
        Outcome::Exhausted
    }
}

#[cfg(test)]
mod tests {
    use super::super::fm::{project, Projection};
    use super::*;

    fn p(c: &[i64]) -> ZxPoly {
        ZxPoly::from_i64s(c)
    }

    #[test]
    fn finds_polynomial_in_window() {
        // x - 1 <= t <= x + 1 and 2 t >= 2x + 1 leaves t = x + 1
        let rows = vec![
            Row::new(vec![p(&[1])], p(&[1, -1]), false),
            Row::new(vec![p(&[-1])], p(&[1, 1]), false),
            Row::new(vec![p(&[2])], p(&[-1, -2]), false),
        ];
        let Projection::Feasible(levels) = project(&rows, 1) else {
            panic!()
        };
        match search(&levels, SearchBounds::new(2, 3)) {
            Outcome::Found(t) => assert_eq!(t, vec![p(&[1, 1])]),
            _ => panic!("expected a point"),
        }
    }

    #[test]
    fn window_without_polynomials_exhausts() {
        // 2t = 1 has a rational but no polynomial solution
        let rows = vec![
            Row::new(vec![p(&[2])], p(&[-1]), false),
            Row::new(vec![p(&[-2])], p(&[1]), false),
        ];
        let Projection::Feasible(levels) = project(&rows, 1) else {
            panic!()
        };
        assert!(matches!(
            search(&levels, SearchBounds::new(2, 12)),
            Outcome::Exhausted
        ));
    }

    #[test]
    fn bounds_limit_the_search() {
        // t >= x^3 is out of reach at degree 2
        let rows = vec![Row::new(vec![p(&[1])], p(&[0, 0, 0, -1]), false)];
        let Projection::Feasible(levels) = project(&rows, 1) else {
            panic!()
        };
        assert!(matches!(
            search(&levels, SearchBounds::new(2, 12)),
            Outcome::Exhausted
        ));
        assert!(matches!(
            search(&levels, SearchBounds::new(3, 1)),
            Outcome::Found(_)
        ));
    }
}
