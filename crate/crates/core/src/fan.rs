//! Fans of affine `P[x]`-semimodules: gluing, compatibility, projective fans
//! and the equivalence classes of faces across cones.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    check_dim, is_zero_vector, syzygy_basis, vec_neg, vec_sub, Lattice, ZxMatrix, ZxVector,
};
use crate::ring::ZxPoly;
use crate::semimodule::{AffineSemimodule, Combination, Face};
use crate::verdict::{Obstruction, SearchBounds, Verdict};

/// `S + Z[x](v_1) + ... + Z[x](v_k)`.
#[derive(Clone, Debug)]
pub struct GluedSemimodule {
    base: AffineSemimodule,
    free_part: Vec<ZxVector>,
    all: Vec<ZxVector>,
    free: Vec<bool>,
    md: Lattice,
    syz: Vec<ZxVector>,
}

impl GluedSemimodule {
    pub fn new(base: AffineSemimodule, free_part: Vec<ZxVector>) -> Result<Self> {
        let n = base.ambient();
        for v in &free_part {
            check_dim(n, v.len())?;
        }
        let mut all = base.generators().to_vec();
        all.extend(free_part.iter().cloned());
        let mut free = vec![false; base.len()];
        free.extend(std::iter::repeat_n(true, free_part.len()));
        let md = Lattice::new(n, all.clone())?;
        let syz = if all.is_empty() {
            Vec::new()
        } else {
            syzygy_basis(&ZxMatrix::from_columns(&all, n)?)?
                .generators()
                .to_vec()
        };
        Ok(GluedSemimodule {
            base,
            free_part,
            all,
            free,
            md,
            syz,
        })
    }

    pub fn base(&self) -> &AffineSemimodule {
        &self.base
    }

    pub fn free_part(&self) -> &[ZxVector] {
        &self.free_part
    }

    fn problem(&self) -> Combination<'_> {
        Combination {
            gens: &self.all,
            free: &self.free,
            md: &self.md,
            syz: &self.syz,
        }
    }

    /// Yes carries coefficients over the base generators followed by the free vectors.
    pub fn member(&self, w: &[ZxPoly], bounds: SearchBounds) -> Result<Verdict<ZxVector>> {
        check_dim(self.base.ambient(), w.len())?;
        self.problem().solve(w, bounds)
    }

    pub fn refutes_member(&self, w: &[ZxPoly], why: &Obstruction) -> Result<bool> {
        check_dim(self.base.ambient(), w.len())?;
        self.problem().refutes(w, why)
    }

    /// Semimodule generators: the base generators and both signs of each free vector.
    pub fn spanning_set(&self) -> Vec<ZxVector> {
        let mut out = self.base.generators().to_vec();
        for v in &self.free_part {
            out.push(v.clone());
            out.push(vec_neg(v));
        }
        out
    }

    /// Whether every element of `other` lies in `self`, by its spanning set.
    pub fn contains(&self, other: &GluedSemimodule, bounds: SearchBounds) -> Result<Verdict<()>> {
        let mut unknown = false;
        for (index, g) in other.spanning_set().iter().enumerate() {
            match self.member(g, bounds)? {
                Verdict::Yes(_) => {}
                Verdict::No(reason) => {
                    return Ok(Verdict::No(Obstruction::Image {
                        index,
                        reason: Box::new(reason),
                    }))
                }
                Verdict::Unknown(_) => unknown = true,
            }
        }
        Ok(if unknown {
            Verdict::Unknown(bounds)
        } else {
            Verdict::Yes(())
        })
    }
}

pub fn glued(s: &AffineSemimodule, vs: Vec<ZxVector>) -> Result<GluedSemimodule> {
    GluedSemimodule::new(s.clone(), vs)
}

pub fn glued_member(
    g: &GluedSemimodule,
    w: &[ZxPoly],
    bounds: SearchBounds,
) -> Result<Verdict<ZxVector>> {
    g.member(w, bounds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub i: usize,
    pub j: usize,
    pub u: ZxVector,
}

/// A list of cones with gluing elements `u_ij`, stored for `i < j` with
/// `u_ji = -u_ij`.
#[derive(Clone, Debug)]
pub struct Fan {
    cones: Vec<AffineSemimodule>,
    gluing: BTreeMap<(usize, usize), ZxVector>,
}

#[derive(Serialize, Deserialize)]
struct FanData {
    cones: Vec<AffineSemimodule>,
    #[serde(default)]
    gluing: Vec<Gluing>,
}

impl Serialize for Fan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FanData {
            cones: self.cones.clone(),
            gluing: self.gluing_list(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let data = FanData::deserialize(d)?;
        Fan::new(data.cones, data.gluing).map_err(serde::de::Error::custom)
    }
}

/// Evidence for a compatible fan: the gluing elements that passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanCertificate {
    pub gluing: Vec<Gluing>,
    pub pairs: usize,
    pub triples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFace {
    pub cone: usize,
    pub face: Face,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceClass {
    pub members: Vec<ConeFace>,
    pub rank: usize,
    pub corank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub rank: usize,
    pub classes: Vec<FaceClass>,
    /// Class indices grouped by corank.
    pub by_corank: BTreeMap<usize, Vec<usize>>,
}

impl Classification {
    /// The corank-one classes, which index the prime divisors.
    pub fn prime_classes(&self) -> Vec<&FaceClass> {
        self.by_corank
            .get(&1)
            .map(|ix| ix.iter().map(|&i| &self.classes[i]).collect())
            .unwrap_or_default()
    }
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

fn first_failure(checks: impl IntoIterator<Item = Result<Verdict<()>>>) -> Result<Verdict<()>> {
    let mut unknown = None;
    for c in checks {
        match c? {
            Verdict::Yes(()) => {}
            Verdict::No(o) => return Ok(Verdict::No(o)),
            Verdict::Unknown(b) => unknown = Some(b),
        }
    }
    Ok(unknown.map_or(Verdict::Yes(()), Verdict::Unknown))
}

fn fan_no<T>(condition: char, cones: Vec<usize>, detail: impl Into<String>) -> Verdict<T> {
    Verdict::No(Obstruction::Fan {
        condition,
        cones,
        detail: detail.into(),
    })
}

impl Fan {
    pub fn new(cones: Vec<AffineSemimodule>, gluing: Vec<Gluing>) -> Result<Self> {
        let Some(first) = cones.first() else {
            return Err(Error::DegenerateInput(
                "a fan needs at least one cone".into(),
            ));
        };
        let n = first.ambient();
        for c in &cones {
            check_dim(n, c.ambient())?;
        }
        let mut map = BTreeMap::new();
        for g in gluing {
            let k = cones.len();
            for idx in [g.i, g.j] {
                if idx >= k {
                    return Err(Error::BadIndex { index: idx, len: k });
                }
            }
            check_dim(n, g.u.len())?;
            if g.i == g.j {
                return Err(Error::DegenerateInput(format!(
                    "gluing of cone {} with itself",
                    g.i
                )));
            }
            let (key, u) = if g.i < g.j {
                ((g.i, g.j), g.u)
            } else {
                ((g.j, g.i), vec_neg(&g.u))
            };
            if let Some(old) = map.insert(key, u.clone()) {
                if old != u {
                    return Err(Error::DegenerateInput(format!(
                        "conflicting gluing for cones {key:?}"
                    )));
                }
            }
        }
        Ok(Fan { cones, gluing: map })
    }

    /// The fan of a single affine semimodule.
    pub fn single(s: AffineSemimodule) -> Self {
        Fan {
            cones: vec![s],
            gluing: BTreeMap::new(),
        }
    }

    pub fn cones(&self) -> &[AffineSemimodule] {
        &self.cones
    }

    pub fn ambient(&self) -> usize {
        self.cones[0].ambient()
    }

    /// The common difference lattice, taken from the first cone.
    pub fn md(&self) -> &Lattice {
        self.cones[0].md()
    }

    pub fn rank(&self) -> usize {
        self.cones[0].rank()
    }

    /// `u_ij`, if stored.
    pub fn gluing(&self, i: usize, j: usize) -> Option<ZxVector> {
        if i < j {
            self.gluing.get(&(i, j)).cloned()
        } else {
            self.gluing.get(&(j, i)).map(|u| vec_neg(u))
        }
    }

    pub fn gluing_list(&self) -> Vec<Gluing> {
        self.gluing
            .iter()
            .map(|(&(i, j), u)| Gluing { i, j, u: u.clone() })
            .collect()
    }

    /// Checks condition (b) for one pair and one candidate `u`.
    fn pair_check(
        &self,
        i: usize,
        j: usize,
        u: &ZxVector,
        bounds: SearchBounds,
    ) -> Result<Verdict<()>> {
        let (si, sj) = (&self.cones[i], &self.cones[j]);
        let mu = vec_neg(u);
        let in_i = si.sm_member(u, bounds)?.map(|_| ());
        if in_i.is_no() {
            return Ok(fan_no(
                'b',
                vec![i, j],
                format!("u_{i}{j} is not in cone {i}"),
            ));
        }
        let in_j = sj.sm_member(&mu, bounds)?.map(|_| ());
        if in_j.is_no() {
            return Ok(fan_no(
                'b',
                vec![i, j],
                format!("-u_{i}{j} is not in cone {j}"),
            ));
        }
        let gi = glued(si, vec![mu])?;
        let gj = glued(sj, vec![u.clone()])?;
        let both = first_failure([
            Ok(in_i),
            Ok(in_j),
            gi.contains(&gj, bounds),
            gj.contains(&gi, bounds),
        ])?;
        Ok(match both {
            Verdict::No(_) => fan_no('b', vec![i, j], "glued semimodules differ"),
            other => other,
        })
    }

    /// Candidate gluing elements: generators of cone `i`, negated generators
    /// of cone `j`, their differences, then small combinations in cone `i`.
    fn candidates(&self, i: usize, j: usize) -> Vec<ZxVector> {
        let a = self.cones[i].generators();
        let b = self.cones[j].generators();
        let mut out: Vec<ZxVector> = a.to_vec();
        out.extend(b.iter().map(|v| vec_neg(v)));
        for x in a {
            for y in b {
                out.push(vec_sub(x, y));
            }
        }
        let k = a.len();
        if k <= 6 {
            let mut combos: Vec<Vec<i64>> = (0..3usize.pow(k as u32))
                .map(|mut c| {
                    (0..k)
                        .map(|_| {
                            let d = (c % 3) as i64;
                            c /= 3;
                            d
                        })
                        .collect()
                })
                .collect();
            combos.sort_by_key(|c| c.iter().sum::<i64>());
            for c in combos {
                let v =
                    a.iter()
                        .zip(&c)
                        .fold(vec![ZxPoly::zero(); self.ambient()], |acc, (g, &t)| {
                            acc.iter()
                                .zip(g)
                                .map(|(x, y)| x + &(y * &ZxPoly::constant(t)))
                                .collect()
                        });
                out.push(v);
            }
        }
        let mut seen = Vec::new();
        out.retain(|v| {
            let fresh = !seen.contains(v);
            if fresh {
                seen.push(v.clone());
            }
            fresh
        });
        out
    }

    fn search_gluing(&self, i: usize, j: usize, bounds: SearchBounds) -> Result<ZxVector> {
        for u in self.candidates(i, j) {
            if self.pair_check(i, j, &u, bounds)?.is_yes() {
                return Ok(u);
            }
        }
        Err(Error::MissingGluing(i, j))
    }

    /// The same fan with every missing gluing element found by search.
    pub fn with_resolved_gluing(&self, bounds: SearchBounds) -> Result<Fan> {
        let mut out = self.clone();
        for i in 0..self.cones.len() {
            for j in i + 1..self.cones.len() {
                if let Entry::Vacant(e) = out.gluing.entry((i, j)) {
                    e.insert(self.search_gluing(i, j, bounds)?);
                }
            }
        }
        Ok(out)
    }

    /// Verifies the compatibility conditions (a), (b) and (c).
    pub fn check_fan(&self, bounds: SearchBounds) -> Result<Verdict<FanCertificate>> {
        let k = self.cones.len();
        for i in 1..k {
            if !self.cones[i].md().equals(self.md())? {
                return Ok(fan_no('a', vec![0, i], "difference lattices differ"));
            }
        }
        let fan = self.with_resolved_gluing(bounds)?;
        let mut unknown = false;
        let mut pairs = 0;
        for i in 0..k {
            for j in i + 1..k {
                let u = fan.gluing(i, j).expect("resolved");
                match fan.pair_check(i, j, &u, bounds)? {
                    Verdict::Yes(()) => pairs += 1,
                    Verdict::No(o) => return Ok(Verdict::No(o)),
                    Verdict::Unknown(_) => unknown = true,
                }
            }
        }
        let mut triples = 0;
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    match fan.triple_check(i, j, l, bounds)? {
                        Verdict::Yes(()) => triples += 1,
                        Verdict::No(o) => return Ok(Verdict::No(o)),
                        Verdict::Unknown(_) => unknown = true,
                    }
                }
            }
        }
        if unknown {
            return Ok(Verdict::Unknown(bounds));
        }
        Ok(Verdict::Yes(FanCertificate {
            gluing: fan.gluing_list(),
            pairs,
            triples,
        }))
    }

    fn triple_check(
        &self,
        i: usize,
        j: usize,
        k: usize,
        bounds: SearchBounds,
    ) -> Result<Verdict<()>> {
        let u = self.gluing(i, j).expect("resolved");
        let v = self.gluing(j, k).expect("resolved");
        let w = self.gluing(k, i).expect("resolved");
        let a = [
            glued(&self.cones[i], vec![vec_neg(&u), w.clone()])?,
            glued(&self.cones[j], vec![u, vec_neg(&v)])?,
            glued(&self.cones[k], vec![v, vec_neg(&w)])?,
        ];
        let mut checks = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if x != y {
                    checks.push(a[x].contains(&a[y], bounds));
                }
            }
        }
        Ok(match first_failure(checks)? {
            Verdict::No(_) => fan_no('c', vec![i, j, k], "glued semimodules of the triple differ"),
            other => other,
        })
    }

    /// Unions faces of different cones that share their difference lattice
    /// and contain the gluing element between the cones.
    pub fn classify_faces(&self, bounds: SearchBounds) -> Result<Classification> {
        let fan = self.with_resolved_gluing(bounds)?;
        let mut all: Vec<ConeFace> = Vec::new();
        for (cone, s) in fan.cones.iter().enumerate() {
            let fl = s.enumerate_faces(bounds)?;
            fl.require_complete()?;
            all.extend(fl.faces.into_iter().map(|face| ConeFace { cone, face }));
        }
        let mds: Vec<Lattice> = all
            .iter()
            .map(|cf| fan.cones[cf.cone].face_md(&cf.face.indices))
            .collect();
        let mut parent: Vec<usize> = (0..all.len()).collect();
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                let (fa, fb) = (&all[a], &all[b]);
                if fa.cone == fb.cone || fa.face.rank != fb.face.rank {
                    continue;
                }
                let u = fan.gluing(fa.cone, fb.cone).expect("resolved");
                if mds[a].equals(&mds[b])? && mds[a].contains(&u)? {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let rank = fan.rank();
        let mut groups: BTreeMap<usize, Vec<ConeFace>> = BTreeMap::new();
        for (idx, cf) in all.into_iter().enumerate() {
            let r = find(&mut parent, idx);
            groups.entry(r).or_default().push(cf);
        }
        let mut classes: Vec<FaceClass> = groups
            .into_values()
            .map(|members| {
                let r = members[0].face.rank;
                FaceClass {
                    members,
                    rank: r,
                    corank: rank - r,
                }
            })
            .collect();
        classes.sort_by_key(|c| {
            (
                c.corank,
                c.members[0].cone,
                c.members[0].face.indices.clone(),
            )
        });
        let mut by_corank: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            by_corank.entry(c.corank).or_default().push(i);
        }
        Ok(Classification {
            rank,
            classes,
            by_corank,
        })
    }
}

/// The fan `S_i = P[x](U - u_i)` of a configuration of distinct points,
/// glued by `u_ij = u_j - u_i`.
pub fn projective_fan(points: &[ZxVector], bounds: SearchBounds) -> Result<Fan> {
    let m = points.len();
    if m < 2 {
        return Err(Error::DegenerateInput(
            "a projective fan needs at least two points".into(),
        ));
    }
    let n = points[0].len();
    for p in points {
        check_dim(n, p.len())?;
    }
    for i in 0..m {
        for j in i + 1..m {
            if points[i] == points[j] {
                return Err(Error::DegenerateInput(format!(
                    "points {i} and {j} coincide"
                )));
            }
        }
    }
    let mut cones = Vec::with_capacity(m);
    let mut gluing = Vec::new();
    for i in 0..m {
        let gens: Vec<ZxVector> = (0..m)
            .filter(|&j| j != i)
            .map(|j| vec_sub(&points[j], &points[i]))
            .filter(|v| !is_zero_vector(v))
            .collect();
        cones.push(AffineSemimodule::minimalized(n, gens, bounds)?);
        for j in i + 1..m {
            gluing.push(Gluing {
                i,
                j,
                u: vec_sub(&points[j], &points[i]),
            });
        }
    }
    Fan::new(cones, gluing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vector;

    fn p(c: &[i64]) -> ZxPoly {
        ZxPoly::from_i64s(c)
    }

    fn v(cs: &[&[i64]]) -> ZxVector {
        cs.iter().map(|c| p(c)).collect()
    }

    fn b() -> SearchBounds {
        SearchBounds::new(2, 12)
    }

    fn simplex(n: usize) -> Vec<ZxVector> {
        let mut pts = vec![vec![ZxPoly::zero(); n]];
        pts.extend((0..n).map(|i| unit_vector(n, i)));
        pts
    }

    #[test]
    fn glued_membership() {
        let s = AffineSemimodule::new(1, vec![v(&[&[1]])]).unwrap();
        let g = glued(&s, vec![v(&[&[-1]])]).unwrap();
        assert!(glued_member(&g, &v(&[&[-5]]), b()).unwrap().is_yes());
        let s2 = AffineSemimodule::new(2, vec![v(&[&[1], &[]]), v(&[&[], &[1]])]).unwrap();
        let g2 = glued(&s2, vec![v(&[&[1], &[]])]).unwrap();
        assert!(glued_member(&g2, &v(&[&[-3], &[1]]), b()).unwrap().is_yes());
        let no = glued_member(&g2, &v(&[&[], &[-1]]), b()).unwrap();
        let Verdict::No(why) = no else {
            panic!("{no:?}")
        };
        assert!(g2.refutes_member(&v(&[&[], &[-1]]), &why).unwrap());
    }

    #[test]
    fn projective_line() {
        let fan = projective_fan(&simplex(1), b()).unwrap();
        assert_eq!(fan.cones()[1].generators(), &[v(&[&[-1]])]);
        let cert = fan.check_fan(b()).unwrap();
        assert_eq!(cert.yes().unwrap().pairs, 1);
        let cl = fan.classify_faces(b()).unwrap();
        assert_eq!(cl.prime_classes().len(), 2);
    }

    #[test]
    fn projective_plane() {
        let fan = projective_fan(&simplex(2), b()).unwrap();
        let cert = fan.check_fan(b()).unwrap();
        let c = cert.yes().expect("fan");
        assert_eq!((c.pairs, c.triples), (3, 1));
        let cl = fan.classify_faces(b()).unwrap();
        let primes: Vec<Vec<(usize, Vec<usize>)>> = cl
            .prime_classes()
            .iter()
            .map(|c| {
                c.members
                    .iter()
                    .map(|m| (m.cone, m.face.indices.clone()))
                    .collect()
            })
            .collect();
        assert_eq!(
            primes,
            vec![
                vec![(0, vec![0]), (1, vec![0])],
                vec![(0, vec![1]), (2, vec![0])],
                vec![(1, vec![1]), (2, vec![1])]
            ]
        );
    }

    #[test]
    fn gluing_found_by_search() {
        let fan = projective_fan(&simplex(2), b()).unwrap();
        let bare = Fan::new(fan.cones().to_vec(), Vec::new()).unwrap();
        assert!(bare.check_fan(b()).unwrap().is_yes());
    }

    #[test]
    fn mismatched_lattices_fail_condition_a() {
        let a = AffineSemimodule::new(2, vec![v(&[&[1], &[]])]).unwrap();
        let c = AffineSemimodule::new(2, vec![v(&[&[1], &[]]), v(&[&[], &[1]])]).unwrap();
        let ans = Fan::new(vec![a, c], Vec::new())
            .unwrap()
            .check_fan(b())
            .unwrap();
        assert!(matches!(
            ans,
            Verdict::No(Obstruction::Fan { condition: 'a', .. })
        ));
    }

    #[test]
    fn wrong_gluing_fails_condition_b() {
        let fan = projective_fan(&simplex(1), b()).unwrap();
        let bad = Fan::new(
            fan.cones().to_vec(),
            vec![Gluing {
                i: 0,
                j: 1,
                u: v(&[&[-1]]),
            }],
        )
        .unwrap();
        assert!(matches!(
            bad.check_fan(b()).unwrap(),
            Verdict::No(Obstruction::Fan { condition: 'b', .. })
        ));
    }

    #[test]
    fn coincident_points_rejected() {
        let pts = vec![v(&[&[1]]), v(&[&[1]])];
        assert!(matches!(
            projective_fan(&pts, b()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let fan = projective_fan(&simplex(1), b()).unwrap();
        let s = serde_json::to_string(&fan).unwrap();
        assert_eq!(
            s,
            r#"{"cones":[{"ambient":1,"generators":[[[1]]]},{"ambient":1,"generators":[[[-1]]]}],"gluing":[{"i":0,"j":1,"u":[[1]]}]}"#
        );
        let back: Fan = serde_json::from_str(&s).unwrap();
        assert_eq!(back.gluing_list(), fan.gluing_list());
    }
}
