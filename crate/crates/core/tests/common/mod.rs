#![allow(dead_code)]

use pdt_core::linalg::unit_vector;
use pdt_core::semimodule::AffineSemimodule;
use pdt_core::{SearchBounds, ZxPoly, ZxVector};

pub fn p(c: &[i64]) -> ZxPoly {
    ZxPoly::from_i64s(c)
}

pub fn v(cs: &[&[i64]]) -> ZxVector {
    cs.iter().map(|c| p(c)).collect()
}

pub fn bounds() -> SearchBounds {
    SearchBounds::new(2, SearchBounds::DEFAULT_BOX)
}

/// P[x](x-1, x-2) in Z[x]^1.
pub fn line() -> AffineSemimodule {
    AffineSemimodule::new(1, vec![v(&[&[-1, 1]]), v(&[&[-2, 1]])]).unwrap()
}

/// P[x]((x,1), (x,2), (x,3)).
pub fn planar() -> AffineSemimodule {
    AffineSemimodule::new(
        2,
        vec![
            v(&[&[0, 1], &[1]]),
            v(&[&[0, 1], &[2]]),
            v(&[&[0, 1], &[3]]),
        ],
    )
    .unwrap()
}

/// P[x]((x,1,1), (1,x,1), (1,1,x), (1,1,1)).
pub fn spatial() -> AffineSemimodule {
    AffineSemimodule::new(
        3,
        vec![
            v(&[&[0, 1], &[1], &[1]]),
            v(&[&[1], &[0, 1], &[1]]),
            v(&[&[1], &[1], &[0, 1]]),
            v(&[&[1], &[1], &[1]]),
        ],
    )
    .unwrap()
}

/// P[x]((2,0), (1,1), (0,1)), which is not face-saturated.
pub fn unsaturated() -> AffineSemimodule {
    AffineSemimodule::new(2, vec![v(&[&[2], &[]]), v(&[&[1], &[1]]), v(&[&[], &[1]])]).unwrap()
}

pub fn affine_space(n: usize) -> AffineSemimodule {
    AffineSemimodule::new(n, (0..n).map(|i| unit_vector(n, i)).collect()).unwrap()
}

/// `{0, e1, ..., en}`.
pub fn simplex(n: usize) -> Vec<ZxVector> {
    let mut pts = vec![vec![ZxPoly::zero(); n]];
    pts.extend((0..n).map(|i| unit_vector(n, i)));
    pts
}
