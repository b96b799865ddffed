//! Binomial and toric `P[σ]`-ideals, represented by their support lattices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    check_dim, is_zero_vector, rank_of_vectors, syzygy_basis, vec_sub, Lattice, ZxMatrix, ZxVector,
};
use crate::ring::{OrderSign, ZxPoly};
use crate::semimodule::AffineSemimodule;
use crate::verdict::{SearchBounds, Verdict};

/// `Y^plus - Y^minus` with exponent vectors in `P[x]^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binomial {
    pub plus: ZxVector,
    pub minus: ZxVector,
}

impl Binomial {
    pub fn new(plus: ZxVector, minus: ZxVector) -> Result<Self> {
        check_dim(plus.len(), minus.len())?;
        if plus.iter().chain(&minus).any(|e| !e.in_positive_cone()) {
            return Err(Error::DegenerateInput(
                "binomial exponents must lie in P[x]".into(),
            ));
        }
        if plus == minus {
            return Err(Error::DegenerateInput(
                "binomial with equal monomials".into(),
            ));
        }
        Ok(Binomial { plus, minus })
    }

    /// Splits `v` into `v+ - v-` by the sign of each entry.
    pub fn from_difference(v: &[ZxPoly]) -> Self {
        let mut plus = Vec::with_capacity(v.len());
        let mut minus = Vec::with_capacity(v.len());
        for e in v {
            match e.order_sign() {
                OrderSign::Positive => {
                    plus.push(e.clone());
                    minus.push(ZxPoly::zero());
                }
                OrderSign::Negative => {
                    plus.push(ZxPoly::zero());
                    minus.push(-e);
                }
                OrderSign::Zero => {
                    plus.push(ZxPoly::zero());
                    minus.push(ZxPoly::zero());
                }
            }
        }
        Binomial { plus, minus }
    }

    pub fn difference(&self) -> ZxVector {
        vec_sub(&self.plus, &self.minus)
    }

    /// Multiplies both monomials by `Y^e`.
    pub fn shifted(&self, e: &[ZxPoly]) -> Self {
        let add = |a: &ZxVector| a.iter().zip(e).map(|(x, y)| x + y).collect();
        Binomial {
            plus: add(&self.plus),
            minus: add(&self.minus),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ToricIdealHandle {
    pub support: Lattice,
    pub generators: Vec<Binomial>,
}

pub fn binomials_from_lattice(l: &Lattice) -> ToricIdealHandle {
    let generators = l
        .generators()
        .iter()
        .filter(|g| !is_zero_vector(g))
        .map(|g| Binomial::from_difference(g))
        .collect();
    ToricIdealHandle {
        support: l.clone(),
        generators,
    }
}

/// The toric ideal of the points `U` (columns), supported on `Syz(U)`.
pub fn toric_ideal_from_points(u: &ZxMatrix) -> Result<ToricIdealHandle> {
    Ok(binomials_from_lattice(&syzygy_basis(u)?))
}

pub fn binomial_member(h: &ToricIdealHandle, b: &Binomial) -> Result<bool> {
    h.support.contains(&b.difference())
}

/// `(v, g)` with `<u_i, v> = g` for every point and `g != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityWitness {
    pub v: ZxVector,
    pub g: ZxPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homogeneity {
    pub answer: bool,
    pub witness: Option<HomogeneityWitness>,
}

/// Whether the all-ones vector is orthogonal to `Syz(U)`, with a witness
/// `(v, g)` when one is found.
pub fn is_homogeneous(u: &ZxMatrix) -> Result<Homogeneity> {
    let m = u.cols();
    let n = u.rows();
    if m == 0 {
        return Ok(Homogeneity {
            answer: true,
            witness: None,
        });
    }
    let ones = vec![ZxPoly::one(); m];
    let syz = syzygy_basis(u)?;
    let answer = syz.complement().contains(&ones)?;
    if !answer {
        return Ok(Homogeneity {
            answer,
            witness: None,
        });
    }
    // the row space of U contains g * (1, ..., 1) for some g != 0; find the
    // smallest such combination in the lattice spanned by the rows
    let rows = u.row_vectors();
    let row_lattice = Lattice::new(m, rows.clone())?;
    let line = Lattice::new(m, vec![ones])?;
    let meet = row_lattice.intersect(&line)?;
    let witness = meet
        .generators()
        .iter()
        .find(|w| !is_zero_vector(w))
        .and_then(|w| {
            let cert = row_lattice.member(w).ok()??;
            Some(HomogeneityWitness {
                v: cert.coefficients,
                g: w[0].clone(),
            })
        });
    debug_assert!(witness.as_ref().is_none_or(|w| w.v.len() == n));
    Ok(Homogeneity {
        answer,
        witness: witness.map(normalize_witness),
    })
}

fn normalize_witness(w: HomogeneityWitness) -> HomogeneityWitness {
    if w.g.order_sign() == OrderSign::Negative {
        HomogeneityWitness {
            v: w.v.iter().map(|c| -c).collect(),
            g: -&w.g,
        }
    } else {
        w
    }
}

/// Affine: `rank(U)`. Projective: the rank of `{u_j - u_1}`.
pub fn sigma_dimension(u: &ZxMatrix, projective: bool) -> usize {
    let cols = u.columns();
    if !projective || cols.is_empty() {
        return rank_of_vectors(&cols, u.rows());
    }
    let diffs: Vec<ZxVector> = cols[1..].iter().map(|c| vec_sub(c, &cols[0])).collect();
    rank_of_vectors(&diffs, u.rows())
}

/// The ideal of the invariant subvariety of a face: the coordinates outside
/// the face together with the toric binomials, and the generators of `k[F]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantSubvariety {
    pub face: Vec<usize>,
    pub outside: Vec<usize>,
    pub face_generators: Vec<ZxVector>,
    pub binomials: Vec<Binomial>,
}

pub fn invariant_subvariety_ideal(
    s: &AffineSemimodule,
    indices: &[usize],
    bounds: SearchBounds,
) -> Result<InvariantSubvariety> {
    let mut face = indices.to_vec();
    face.sort_unstable();
    face.dedup();
    if !matches!(s.is_face(&face, bounds)?, Verdict::Yes(_)) {
        return Err(Error::NotAFace(face));
    }
    let outside = (0..s.len()).filter(|i| !face.contains(i)).collect();
    let face_generators = face.iter().map(|&i| s.generators()[i].clone()).collect();
    let binomials = binomials_from_lattice(s.syz()).generators;
    Ok(InvariantSubvariety {
        face,
        outside,
        face_generators,
        binomials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZxPoly {
        ZxPoly::from_i64s(c)
    }

    fn v(cs: &[&[i64]]) -> ZxVector {
        cs.iter().map(|c| p(c)).collect()
    }

    fn planar() -> ZxMatrix {
        ZxMatrix::from_columns(
            &[
                v(&[&[0, 1], &[1]]),
                v(&[&[0, 1], &[2]]),
                v(&[&[0, 1], &[3]]),
            ],
            2,
        )
        .unwrap()
    }

    fn simplex() -> ZxMatrix {
        ZxMatrix::from_columns(&[v(&[&[], &[]]), v(&[&[1], &[]]), v(&[&[], &[1]])], 2).unwrap()
    }

    #[test]
    fn sign_split() {
        let b = Binomial::from_difference(&v(&[&[1], &[-2], &[1]]));
        assert_eq!(b.plus, v(&[&[1], &[], &[1]]));
        assert_eq!(b.minus, v(&[&[], &[2], &[]]));
        let b = Binomial::from_difference(&v(&[&[0, 1], &[0, -1]]));
        assert_eq!((b.plus, b.minus), (v(&[&[0, 1], &[]]), v(&[&[], &[0, 1]])));
    }

    #[test]
    fn toric_ideal_of_planar_points() {
        let h = toric_ideal_from_points(&planar()).unwrap();
        assert!(h
            .support
            .equals(&Lattice::new(3, vec![v(&[&[1], &[-2], &[1]])]).unwrap())
            .unwrap());
        assert_eq!(h.generators.len(), 1);
        let g = &h.generators[0];
        let forward =
            (g.plus.clone(), g.minus.clone()) == (v(&[&[1], &[], &[1]]), v(&[&[], &[2], &[]]));
        let backward =
            (g.minus.clone(), g.plus.clone()) == (v(&[&[1], &[], &[1]]), v(&[&[], &[2], &[]]));
        assert!(forward || backward);
        assert!(h.support.is_toric());
    }

    #[test]
    fn simplex_ideal() {
        let h = toric_ideal_from_points(&simplex()).unwrap();
        assert_eq!(h.generators.len(), 1);
        assert_eq!(
            h.generators[0]
                .difference()
                .iter()
                .filter(|e| !e.is_zero())
                .count(),
            1
        );
        let std = ZxMatrix::identity(3);
        assert!(toric_ideal_from_points(&std).unwrap().generators.is_empty());
    }

    #[test]
    fn binomial_membership() {
        let h = toric_ideal_from_points(&planar()).unwrap();
        let b = Binomial::new(v(&[&[2], &[], &[2]]), v(&[&[], &[4], &[]])).unwrap();
        assert!(binomial_member(&h, &b).unwrap());
        let b = Binomial::new(v(&[&[1], &[], &[]]), v(&[&[], &[1], &[]])).unwrap();
        assert!(!binomial_member(&h, &b).unwrap());
    }

    #[test]
    fn homogeneity() {
        let h = is_homogeneous(&planar()).unwrap();
        assert_eq!(
            h,
            Homogeneity {
                answer: true,
                witness: Some(HomogeneityWitness {
                    v: v(&[&[1], &[]]),
                    g: p(&[0, 1])
                })
            }
        );
        assert!(!is_homogeneous(&simplex()).unwrap().answer);
        assert!(is_homogeneous(&ZxMatrix::identity(2)).unwrap().answer);
    }

    #[test]
    fn sigma_dimensions() {
        assert_eq!(sigma_dimension(&planar(), false), 2);
        assert_eq!(sigma_dimension(&planar(), true), 1);
        assert_eq!(sigma_dimension(&simplex(), true), 2);
    }

    #[test]
    fn invariant_subvariety() {
        let s = AffineSemimodule::new(2, planar().columns()).unwrap();
        let d = invariant_subvariety_ideal(&s, &[0], SearchBounds::new(2, 12)).unwrap();
        assert_eq!(d.outside, vec![1, 2]);
        assert_eq!(d.face_generators, vec![v(&[&[0, 1], &[1]])]);
        assert!(matches!(
            invariant_subvariety_ideal(&s, &[1], SearchBounds::new(2, 12)),
            Err(Error::NotAFace(_))
        ));
    }
}
