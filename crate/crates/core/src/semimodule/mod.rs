//! Affine `P[x]`-semimodules `S = P[x](U)` and their faces.
//!
//! Membership and face questions are linear systems over `Z[x]` with sign
//! constraints in the total order. Both go through exact Fourier–Motzkin
//! elimination over `Q(x)`: infeasibility gives a definitive No with a Farkas
//! certificate, feasibility gives a sample point. Faces need no integrality
//! (the constraints are homogeneous and strict, so a `Q(x)` point scales to a
//! `Z[x]` witness). Membership does, and the remaining integer search is
//! bounded by [`SearchBounds`].

mod fm;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    check_dim, combine, is_zero_vector, primitive_vector, rank_of_vectors, syzygy_basis,
    unit_vector, Lattice, ZxMatrix, ZxVector,
};
use crate::ring::{OrderSign, ZxPoly};
use crate::verdict::{Obstruction, SearchBounds, Verdict};

use fm::{project, verify_farkas, Projection, Row};
use search::Outcome;

/// `S = P[x](U)` for a list `U` of vectors in `Z[x]^n`, with its difference
/// lattice `S^md = Z[x](U)`, the relations `Syz(U)` and the functionals
/// `N = Syz(U)^C` cached.
#[derive(Clone, Debug)]
pub struct AffineSemimodule {
    ambient: usize,
    generators: Vec<ZxVector>,
    md: Lattice,
    syz: Lattice,
    dual: Lattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub indices: Vec<usize>,
    pub witness: Option<ZxVector>,
    pub rank: usize,
}

/// Result of testing every subset of generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceLattice {
    pub rank: usize,
    pub faces: Vec<Face>,
    /// Subsets whose verdict stayed Unknown, with their ranks.
    pub unresolved: Vec<(Vec<usize>, usize)>,
}

impl FaceLattice {
    pub fn facets(&self) -> Vec<&Face> {
        self.faces
            .iter()
            .filter(|f| f.rank + 1 == self.rank)
            .collect()
    }

    pub fn edges(&self) -> Vec<&Face> {
        self.faces.iter().filter(|f| f.rank == 1).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    fn require_rank(&self, rank: usize) -> Result<()> {
        let open: Vec<Vec<usize>> = self
            .unresolved
            .iter()
            .filter(|(_, r)| *r == rank)
            .map(|(i, _)| i.clone())
            .collect();
        if open.is_empty() {
            Ok(())
        } else {
            Err(Error::UnresolvedFaces(open))
        }
    }

    /// Facets, failing if an undecided subset could have been one.
    pub fn definite_facets(&self) -> Result<Vec<&Face>> {
        if self.rank > 0 {
            self.require_rank(self.rank - 1)?;
        }
        Ok(self.facets())
    }

    pub fn definite_edges(&self) -> Result<Vec<&Face>> {
        self.require_rank(1)?;
        Ok(self.edges())
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.unresolved.is_empty() {
            Ok(())
        } else {
            Err(Error::UnresolvedFaces(
                self.unresolved.iter().map(|(i, _)| i.clone()).collect(),
            ))
        }
    }
}

/// Per-face outcome of the saturation test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub indices: Vec<usize>,
    /// An element of `sat(F^md) ∩ S^md` outside `F^md`, if any.
    pub violation: Option<ZxVector>,
}

#[derive(Serialize, Deserialize)]
struct SemimoduleData {
    ambient: usize,
    generators: Vec<ZxVector>,
}

impl Serialize for AffineSemimodule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SemimoduleData {
            ambient: self.ambient,
            generators: self.generators.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineSemimodule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let data = SemimoduleData::deserialize(d)?;
        AffineSemimodule::new(data.ambient, data.generators).map_err(serde::de::Error::custom)
    }
}

/// Sign-constrained combination problem: `sum g_i u_i = w` with `g_i` in
/// `P[x]` unless `free[i]`.
pub(crate) struct Combination<'a> {
    pub gens: &'a [ZxVector],
    pub free: &'a [bool],
    pub md: &'a Lattice,
    pub syz: &'a [ZxVector],
}

impl Combination<'_> {
    fn rows(&self, base: &[ZxPoly]) -> (Vec<usize>, Vec<Row>) {
        let constrained: Vec<usize> = (0..self.gens.len()).filter(|&i| !self.free[i]).collect();
        let rows = constrained
            .iter()
            .map(|&i| {
                Row::new(
                    self.syz.iter().map(|s| s[i].clone()).collect(),
                    base[i].clone(),
                    false,
                )
            })
            .collect();
        (constrained, rows)
    }

    pub fn solve(&self, w: &[ZxPoly], bounds: SearchBounds) -> Result<Verdict<ZxVector>> {
        let Some(cert) = self.md.member(w)? else {
            return Ok(Verdict::No(Obstruction::NotInLattice));
        };
        let base = cert.coefficients;
        let (constrained, rows) = self.rows(&base);
        let levels = match project(&rows, self.syz.len()) {
            Projection::Infeasible(lambda) => {
                let mut multipliers = vec![ZxPoly::zero(); self.gens.len()];
                for (&i, l) in constrained.iter().zip(lambda) {
                    multipliers[i] = l;
                }
                return Ok(Verdict::No(Obstruction::Farkas { multipliers }));
            }
            Projection::TooLarge => return Ok(Verdict::Unknown(bounds)),
            Projection::Feasible(levels) => levels,
        };
        // with no relations the solution is unique and already feasible
        let t = if self.syz.is_empty() {
            Vec::new()
        } else {
            match search::search(&levels, bounds) {
                Outcome::Found(t) => t,
                Outcome::Exhausted | Outcome::OutOfBudget => return Ok(Verdict::Unknown(bounds)),
            }
        };
        let mut g = base;
        for (tj, s) in t.iter().zip(self.syz) {
            for (gi, si) in g.iter_mut().zip(s) {
                *gi += &(tj * si);
            }
        }
        let n = w.len();
        let ok = combine(self.gens, &g, n) == w
            && g.iter()
                .zip(self.free)
                .all(|(gi, &f)| f || gi.in_positive_cone());
        if !ok {
            return Err(Error::InternalInconsistency(
                "combination does not re-verify".into(),
            ));
        }
        Ok(Verdict::Yes(g))
    }

    /// Re-checks a negative answer for `w`.
    pub fn refutes(&self, w: &[ZxPoly], why: &Obstruction) -> Result<bool> {
        match why {
            Obstruction::NotInLattice => Ok(self.md.member(w)?.is_none()),
            Obstruction::Farkas { multipliers } => {
                let Some(cert) = self.md.member(w)? else {
                    return Ok(false);
                };
                if multipliers.len() != self.gens.len()
                    || multipliers
                        .iter()
                        .zip(self.free)
                        .any(|(l, &f)| f && !l.is_zero())
                {
                    return Ok(false);
                }
                let (constrained, rows) = self.rows(&cert.coefficients);
                let lambda: ZxVector = constrained
                    .iter()
                    .map(|&i| multipliers[i].clone())
                    .collect();
                Ok(verify_farkas(&rows, &lambda))
            }
            _ => Ok(false),
        }
    }
}

impl AffineSemimodule {
    /// Builds `P[x](U)`, rejecting a generator that is a `P[x]`-combination
    /// of the others (found with default bounds).
    pub fn new(ambient: usize, generators: Vec<ZxVector>) -> Result<Self> {
        let s = Self::unchecked(ambient, generators)?;
        let bounds = s.default_bounds();
        for i in 0..s.generators.len() {
            if s.redundant(i, bounds)? {
                return Err(Error::RedundantGenerator { index: i });
            }
        }
        Ok(s)
    }

    /// Keeps the generators that are not `P[x]`-combinations of the kept
    /// ones, trying the last generator first.
    pub fn minimalized(
        ambient: usize,
        generators: Vec<ZxVector>,
        bounds: SearchBounds,
    ) -> Result<Self> {
        let mut s = Self::unchecked(ambient, generators)?;
        let mut i = s.generators.len();
        while i > 0 {
            i -= 1;
            if s.redundant(i, bounds)? {
                let mut g = s.generators.clone();
                g.remove(i);
                s = Self::unchecked(ambient, g)?;
            }
        }
        Ok(s)
    }

    pub(crate) fn unchecked(ambient: usize, generators: Vec<ZxVector>) -> Result<Self> {
        for g in &generators {
            check_dim(ambient, g.len())?;
        }
        let md = Lattice::new(ambient, generators.clone())?;
        let m = generators.len();
        let syz = if m == 0 {
            Lattice::zero(0)
        } else {
            syzygy_basis(&ZxMatrix::from_columns(&generators, ambient)?)?
        };
        let mut s = AffineSemimodule {
            ambient,
            generators,
            md,
            syz,
            dual: Lattice::zero(m),
        };
        s.dual = s.face_functionals(&[])?;
        Ok(s)
    }

    fn redundant(&self, i: usize, bounds: SearchBounds) -> Result<bool> {
        let mut others = self.generators.clone();
        let target = others.remove(i);
        let rest = Self::unchecked(self.ambient, others)?;
        Ok(rest.sm_member(&target, bounds)?.is_yes())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[ZxVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `S^md`.
    pub fn md(&self) -> &Lattice {
        &self.md
    }

    /// `Syz(U)` in `Z[x]^m`.
    pub fn syz(&self) -> &Lattice {
        &self.syz
    }

    /// `N = Syz(U)^C`, functionals on `S^md` written by their values on `U`.
    pub fn dual(&self) -> &Lattice {
        &self.dual
    }

    pub fn rank(&self) -> usize {
        self.md.rank()
    }

    pub fn default_bounds(&self) -> SearchBounds {
        SearchBounds::for_generators(&self.generators)
    }

    pub(crate) fn rank_of(&self, indices: &[usize]) -> usize {
        let vs: Vec<ZxVector> = indices
            .iter()
            .map(|&i| self.generators[i].clone())
            .collect();
        rank_of_vectors(&vs, self.ambient)
    }

    fn check_indices(&self, indices: &[usize]) -> Result<Vec<usize>> {
        let m = self.generators.len();
        if let Some(&bad) = indices.iter().find(|&&i| i >= m) {
            return Err(Error::BadIndex { index: bad, len: m });
        }
        let mut v = indices.to_vec();
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    /// `{phi in N : phi_i = 0 for i in inside}`.
    pub fn face_functionals(&self, inside: &[usize]) -> Result<Lattice> {
        let m = self.generators.len();
        let mut rows: Vec<ZxVector> = self
            .syz
            .generators()
            .iter()
            .filter(|g| !is_zero_vector(g))
            .cloned()
            .collect();
        rows.extend(inside.iter().map(|&i| unit_vector(m, i)));
        if rows.is_empty() {
            return Ok(Lattice::full(m));
        }
        syzygy_basis(&ZxMatrix::from_rows(&rows, m)?)
    }

    fn combination(&self) -> (Vec<bool>, Vec<ZxVector>) {
        (
            vec![false; self.generators.len()],
            self.syz.generators().to_vec(),
        )
    }

    /// Membership in `S` with a certificate `g` in `P[x]^m`.
    pub fn sm_member(&self, w: &[ZxPoly], bounds: SearchBounds) -> Result<Verdict<ZxVector>> {
        check_dim(self.ambient, w.len())?;
        let (free, syz) = self.combination();
        Combination {
            gens: &self.generators,
            free: &free,
            md: &self.md,
            syz: &syz,
        }
        .solve(w, bounds)
    }

    /// Re-checks the evidence of a negative membership answer.
    pub fn refutes_member(&self, w: &[ZxPoly], why: &Obstruction) -> Result<bool> {
        check_dim(self.ambient, w.len())?;
        let (free, syz) = self.combination();
        Combination {
            gens: &self.generators,
            free: &free,
            md: &self.md,
            syz: &syz,
        }
        .refutes(w, why)
    }

    /// Whether the generators indexed by `indices` span a face; Yes carries
    /// the values of a separating functional on every generator.
    pub fn is_face(&self, indices: &[usize], bounds: SearchBounds) -> Result<Verdict<ZxVector>> {
        let inside = self.check_indices(indices)?;
        let m = self.generators.len();
        let outside: Vec<usize> = (0..m).filter(|i| !inside.contains(i)).collect();
        if outside.is_empty() {
            return Ok(Verdict::Yes(vec![ZxPoly::zero(); m]));
        }
        let r = self.rank_of(&inside);
        for &j in &outside {
            let mut with = inside.clone();
            with.push(j);
            if self.rank_of(&with) == r {
                return Ok(Verdict::No(Obstruction::Spanned { generator: j }));
            }
        }
        let w = self.face_functionals(&inside)?;
        let wg = w.generators().to_vec();
        let rows: Vec<Row> = outside
            .iter()
            .map(|&j| {
                Row::new(
                    wg.iter().map(|g| g[j].clone()).collect(),
                    ZxPoly::zero(),
                    true,
                )
            })
            .collect();
        let levels = match project(&rows, wg.len()) {
            Projection::Infeasible(lambda) => {
                if wg.len() == 1 {
                    return Ok(Verdict::No(Obstruction::MixedSignLine {
                        generator: wg[0].clone(),
                    }));
                }
                let mut multipliers = vec![ZxPoly::zero(); m];
                for (&j, l) in outside.iter().zip(lambda) {
                    multipliers[j] = l;
                }
                return Ok(Verdict::No(Obstruction::Farkas { multipliers }));
            }
            Projection::TooLarge => return Ok(Verdict::Unknown(bounds)),
            Projection::Feasible(levels) => levels,
        };
        let t = fm::sample(&levels);
        let den = t.iter().fold(ZxPoly::one(), |acc, f| {
            let g = acc.gcd(&f.den);
            &acc * &f.den.div_exact(&g).unwrap()
        });
        let coeffs: ZxVector = t
            .iter()
            .map(|f| (&f.num * &den).div_exact(&f.den).unwrap())
            .collect();
        let phi = primitive_vector(&combine(&wg, &coeffs, m));
        if !self.separates(&inside, &phi)? {
            return Err(Error::InternalInconsistency(
                "sampled functional does not separate".into(),
            ));
        }
        let cert = w
            .member(&phi)?
            .ok_or_else(|| Error::InternalInconsistency("witness left its lattice".into()))?;
        if !cert.coefficients.iter().all(|c| bounds.admits(c)) {
            return Ok(Verdict::Unknown(bounds));
        }
        Ok(Verdict::Yes(phi))
    }

    /// Checks a face witness: orthogonal to `Syz(U)`, zero inside, positive outside.
    pub fn separates(&self, inside: &[usize], phi: &[ZxPoly]) -> Result<bool> {
        check_dim(self.generators.len(), phi.len())?;
        if !self.dual.contains(phi)? {
            return Ok(false);
        }
        Ok(phi.iter().enumerate().all(|(i, v)| {
            if inside.contains(&i) {
                v.is_zero()
            } else {
                v.order_sign() == OrderSign::Positive
            }
        }))
    }

    /// Re-checks the evidence of a negative face answer.
    pub fn refutes_face(&self, indices: &[usize], why: &Obstruction) -> Result<bool> {
        let inside = self.check_indices(indices)?;
        let m = self.generators.len();
        match why {
            Obstruction::Spanned { generator } => {
                let j = *generator;
                if j >= m || inside.contains(&j) {
                    return Ok(false);
                }
                let mut with = inside.clone();
                with.push(j);
                Ok(self.rank_of(&with) == self.rank_of(&inside))
            }
            Obstruction::MixedSignLine { generator } => {
                let w = self.face_functionals(&inside)?;
                if w.rank() != 1 || !w.contains(generator)? {
                    return Ok(false);
                }
                let signs: Vec<OrderSign> = (0..m)
                    .filter(|i| !inside.contains(i))
                    .map(|j| generator[j].order_sign())
                    .collect();
                Ok(
                    signs.contains(&OrderSign::Negative) && signs.contains(&OrderSign::Positive)
                        || signs.contains(&OrderSign::Zero),
                )
            }
            Obstruction::Farkas { multipliers } => {
                if multipliers.len() != m || is_zero_vector(multipliers) {
                    return Ok(false);
                }
                let w = self.face_functionals(&inside)?;
                let nonneg = multipliers.iter().all(ZxPoly::in_positive_cone);
                let zero_inside = inside.iter().all(|&i| multipliers[i].is_zero());
                let cancels = w.generators().iter().all(|g| {
                    g.iter()
                        .zip(multipliers)
                        .fold(ZxPoly::zero(), |acc, (a, b)| acc + a * b)
                        .is_zero()
                });
                Ok(nonneg && zero_inside && cancels)
            }
            _ => Ok(false),
        }
    }

    /// Tests every subset of generators. Faces come sorted by size, then
    /// lexicographically; undecided subsets are listed separately.
    pub fn enumerate_faces(&self, bounds: SearchBounds) -> Result<FaceLattice> {
        let m = self.generators.len();
        if m > 20 {
            return Err(Error::DegenerateInput(format!(
                "{m} generators is too many for subset enumeration"
            )));
        }
        let mut subsets: Vec<Vec<usize>> = (0u32..1 << m)
            .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let mut faces = Vec::new();
        let mut unresolved = Vec::new();
        let mut refuted = Vec::new();
        for idx in subsets {
            let rank = self.rank_of(&idx);
            match self.is_face(&idx, bounds)? {
                Verdict::Yes(w) => faces.push(Face {
                    indices: idx,
                    witness: Some(w),
                    rank,
                }),
                Verdict::No(_) => refuted.push(idx),
                Verdict::Unknown(_) => unresolved.push((idx, rank)),
            }
        }
        // faces are closed under intersection
        for a in &faces {
            for b in &faces {
                let both: Vec<usize> = a
                    .indices
                    .iter()
                    .copied()
                    .filter(|i| b.indices.contains(i))
                    .collect();
                if refuted.contains(&both) {
                    return Err(Error::InternalInconsistency(format!(
                        "faces {:?} and {:?} meet in the non-face {both:?}",
                        a.indices, b.indices
                    )));
                }
            }
        }
        Ok(FaceLattice {
            rank: self.rank(),
            faces,
            unresolved,
        })
    }

    pub fn facets(&self, bounds: SearchBounds) -> Result<Vec<Face>> {
        let fl = self.enumerate_faces(bounds)?;
        Ok(fl.definite_facets()?.into_iter().cloned().collect())
    }

    pub fn edges(&self, bounds: SearchBounds) -> Result<Vec<Face>> {
        let fl = self.enumerate_faces(bounds)?;
        Ok(fl.definite_edges()?.into_iter().cloned().collect())
    }

    /// `S ∩ (-S) = {0}`, i.e. the empty subset spans a face.
    pub fn is_pointed(&self, bounds: SearchBounds) -> Result<Verdict<ZxVector>> {
        self.is_face(&[], bounds)
    }

    /// Whether the `md`-lattices of the facets meet in `{0}`.
    pub fn is_compact(&self, bounds: SearchBounds) -> Result<bool> {
        let fl = self.enumerate_faces(bounds)?;
        let mut acc = self.md.clone();
        for f in fl.definite_facets()? {
            acc = acc.intersect(&self.face_md(&f.indices))?;
        }
        Ok(acc.rank() == 0)
    }

    /// `F^md` for the face spanned by `indices`.
    pub fn face_md(&self, indices: &[usize]) -> Lattice {
        let gens = indices
            .iter()
            .map(|&i| self.generators[i].clone())
            .collect();
        Lattice::new(self.ambient, gens).expect("generators share the ambient dimension")
    }

    /// Whether the standard normal vectors of the facets form a basis of `N`.
    pub fn is_smooth_semimodule(&self, bounds: SearchBounds) -> Result<Verdict<Vec<ZxVector>>> {
        let fl = self.enumerate_faces(bounds)?;
        let mut normals = Vec::new();
        for f in fl.definite_facets()? {
            normals.push(crate::divisor::standard_normal_vector(self, f)?.values);
        }
        let m = self.generators.len();
        if rank_of_vectors(&normals, m) != normals.len() {
            return Ok(Verdict::No(Obstruction::NotABasis { missing: None }));
        }
        let span = Lattice::new(m, normals.clone())?;
        for g in self.dual.generators() {
            if !span.contains(g)? {
                return Ok(Verdict::No(Obstruction::NotABasis {
                    missing: Some(g.clone()),
                }));
            }
        }
        Ok(Verdict::Yes(normals))
    }

    /// For each face, compares `sat(F^md) ∩ S^md` with `F^md`.
    pub fn face_saturation_check(&self, bounds: SearchBounds) -> Result<Vec<SaturationReport>> {
        let fl = self.enumerate_faces(bounds)?;
        fl.require_complete()?;
        let mut out = Vec::new();
        for f in &fl.faces {
            let fmd = self.face_md(&f.indices);
            let sat = fmd.saturate().intersect(&self.md)?;
            let mut violation = None;
            for g in sat.generators() {
                if !fmd.contains(g)? {
                    violation = Some(g.clone());
                    break;
                }
            }
            out.push(SaturationReport {
                indices: f.indices.clone(),
                violation,
            });
        }
        Ok(out)
    }

    /// Whether sending the generators of `self` to `images` defines a
    /// `P[x]`-semimodule morphism into `target`. Yes carries, per image, its
    /// `P[x]`-coefficients over the target generators.
    pub fn check_morphism(
        &self,
        target: &AffineSemimodule,
        images: &[ZxVector],
        bounds: SearchBounds,
    ) -> Result<Verdict<Vec<ZxVector>>> {
        check_dim(self.generators.len(), images.len())?;
        for im in images {
            check_dim(target.ambient, im.len())?;
        }
        for s in self.syz.generators() {
            let image = combine(images, s, target.ambient);
            if !is_zero_vector(&image) {
                return Ok(Verdict::No(Obstruction::SyzygyViolated {
                    syzygy: s.clone(),
                }));
            }
        }
        let mut certs = Vec::new();
        let mut unknown = false;
        for (index, im) in images.iter().enumerate() {
            match target.sm_member(im, bounds)? {
                Verdict::Yes(g) => certs.push(g),
                Verdict::No(reason) => {
                    return Ok(Verdict::No(Obstruction::Image {
                        index,
                        reason: Box::new(reason),
                    }))
                }
                Verdict::Unknown(_) => unknown = true,
            }
        }
        if unknown {
            return Ok(Verdict::Unknown(bounds));
        }
        Ok(Verdict::Yes(certs))
    }
}
