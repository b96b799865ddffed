//! Normal vectors, valuations, Weil and Cartier divisors, class and Picard modules.

mod presentation;

pub use presentation::{ModulePresentation, Op};

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Classification, ConeFace, Fan};
use crate::linalg::{
    combine, is_zero_vector, primitive_vector, syzygy_basis, unit_vector, Lattice, ZxMatrix,
    ZxVector,
};
use crate::ring::{compare, OrderSign, ZxPoly};
use crate::semimodule::{AffineSemimodule, Face};
use crate::verdict::{Obstruction, SearchBounds, Verdict};

/// The sign-normalized generator of the functionals vanishing on a facet,
/// written by its values on the parent's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalVector {
    pub indices: Vec<usize>,
    pub values: ZxVector,
}

pub fn standard_normal_vector(s: &AffineSemimodule, face: &Face) -> Result<NormalVector> {
    let indices = face.indices.clone();
    if s.rank_of(&indices) + 1 != s.rank() {
        return Err(Error::NotAFacet(indices));
    }
    let w = s.face_functionals(&indices)?;
    let found = w.rank();
    if found != 1 {
        return Err(Error::RankMismatch { expected: 1, found });
    }
    let g = w
        .generators()
        .iter()
        .find(|g| !is_zero_vector(g))
        .expect("rank one");
    let mut values = primitive_vector(g);
    let m = values.len();
    let signs: Vec<OrderSign> = (0..m)
        .filter(|i| !indices.contains(i))
        .map(|j| values[j].order_sign())
        .collect();
    if signs.iter().all(|&s| s == OrderSign::Negative) {
        values = values.iter().map(|v| -v).collect();
    } else if !signs.iter().all(|&s| s == OrderSign::Positive) {
        return Err(Error::MixedSigns(indices));
    }
    Ok(NormalVector { indices, values })
}

/// `phi(u)` for `u = sum c_i u_i`.
pub fn char_value(nv: &NormalVector, certificate: &[ZxPoly]) -> Result<ZxPoly> {
    if certificate.len() != nv.values.len() {
        return Err(Error::BadCertificate);
    }
    Ok(certificate
        .iter()
        .zip(&nv.values)
        .fold(ZxPoly::zero(), |acc, (c, v)| acc + c * v))
}

/// `phi(u)`, with the certificate found by lattice membership.
pub fn char_value_at(s: &AffineSemimodule, nv: &NormalVector, u: &[ZxPoly]) -> Result<ZxPoly> {
    let cert = s.md().member(u)?.ok_or(Error::BadCertificate)?;
    char_value(nv, &cert.coefficients)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponent: ZxVector,
    pub coeff: Ratio<i64>,
}

/// `f = sum alpha_u chi^u` with distinct exponents and nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportedElement {
    pub terms: Vec<Term>,
}

impl SupportedElement {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySupport);
        }
        for (i, t) in terms.iter().enumerate() {
            if *t.coeff.numer() == 0 {
                return Err(Error::DegenerateInput(
                    "zero coefficient in a supported element".into(),
                ));
            }
            if terms[..i].iter().any(|s| s.exponent == t.exponent) {
                return Err(Error::DegenerateInput(
                    "repeated exponent in a supported element".into(),
                ));
            }
        }
        Ok(SupportedElement { terms })
    }

    pub fn character(u: ZxVector) -> Self {
        SupportedElement {
            terms: vec![Term {
                exponent: u,
                coeff: Ratio::from_integer(1),
            }],
        }
    }

    fn check(&self) -> Result<()> {
        if self.terms.is_empty() {
            Err(Error::EmptySupport)
        } else {
            Ok(())
        }
    }
}

/// `min_u phi(u)` over the support of `f`, in the total order.
pub fn valuation(s: &AffineSemimodule, nv: &NormalVector, f: &SupportedElement) -> Result<ZxPoly> {
    f.check()?;
    let mut best: Option<ZxPoly> = None;
    for t in &f.terms {
        let v = char_value_at(s, nv, &t.exponent)?;
        if best.as_ref().is_none_or(|b| compare(&v, b).is_lt()) {
            best = Some(v);
        }
    }
    Ok(best.expect("nonempty support"))
}

/// `nu(f / g) = nu(f) - nu(g)`.
pub fn valuation_quotient(
    s: &AffineSemimodule,
    nv: &NormalVector,
    f: &SupportedElement,
    g: &SupportedElement,
) -> Result<ZxPoly> {
    Ok(valuation(s, nv, f)? - valuation(s, nv, g)?)
}

/// A corank-one face class with the normal vector of each member.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimeDivisor {
    pub id: usize,
    pub members: Vec<ConeFace>,
    pub normals: Vec<NormalVector>,
}

/// `sum a_L D_L`, one coefficient per prime divisor (ids start at 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilDivisor {
    pub coeffs: ZxVector,
}

#[derive(Serialize, Deserialize)]
struct ClassCoeff {
    id: usize,
    coeff: ZxPoly,
}

#[derive(Serialize, Deserialize)]
struct DivisorData {
    classes: Vec<ClassCoeff>,
}

impl Serialize for WeilDivisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let classes = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| ClassCoeff {
                id: i + 1,
                coeff: c.clone(),
            })
            .collect();
        DivisorData { classes }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeilDivisor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let data = DivisorData::deserialize(d)?;
        let n = data.classes.iter().map(|c| c.id).max().unwrap_or(0);
        let mut coeffs = vec![ZxPoly::zero(); n];
        for c in data.classes {
            if c.id == 0 {
                return Err(serde::de::Error::custom("divisor class ids start at 1"));
            }
            coeffs[c.id - 1] = c.coeff;
        }
        Ok(WeilDivisor { coeffs })
    }
}

impl WeilDivisor {
    pub fn zero(n: usize) -> Self {
        WeilDivisor {
            coeffs: vec![ZxPoly::zero(); n],
        }
    }

    /// The prime divisor with the given 1-based id.
    pub fn prime(n: usize, id: usize) -> Self {
        WeilDivisor {
            coeffs: unit_vector(n, id - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }

    pub fn add(&self, other: &WeilDivisor) -> WeilDivisor {
        WeilDivisor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, g: &ZxPoly) -> WeilDivisor {
        WeilDivisor {
            coeffs: self.coeffs.iter().map(|a| a * g).collect(),
        }
    }

    fn padded(&self, n: usize) -> Result<ZxVector> {
        if self.coeffs.len() > n {
            return Err(Error::BadIndex {
                index: self.coeffs.len(),
                len: n,
            });
        }
        let mut c = self.coeffs.clone();
        c.resize(n, ZxPoly::zero());
        Ok(c)
    }
}

impl fmt::Display for WeilDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.order_sign() == OrderSign::Negative;
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            if mag.is_one() {
            } else if mag.is_constant() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "({mag})")?;
            }
            write!(f, "D{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Per-cone data for a Cartier divisor: `u_i` in `M` with its coordinates
/// over the cone's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCharacter {
    pub cone: usize,
    pub u: ZxVector,
    pub certificate: ZxVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartierLocalData {
    pub characters: Vec<LocalCharacter>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessReport {
    pub verdict: Verdict<Vec<Vec<ZxVector>>>,
    pub class_shape: Option<String>,
    pub pic_shape: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcisionReport {
    pub cone: usize,
    /// Prime divisors with no facet in the cone.
    pub omitted: Vec<usize>,
    pub surjective: bool,
    pub chart_shape: String,
    pub quotient_shape: String,
    pub exact: bool,
}

/// A fan together with its prime divisors and their normal vectors.
#[derive(Clone, Debug)]
pub struct DivisorContext {
    fan: Fan,
    classification: Classification,
    primes: Vec<PrimeDivisor>,
    /// For each cone: `(facet indices, prime index, normal vector)`.
    facets: Vec<Vec<(Vec<usize>, usize, NormalVector)>>,
}

impl DivisorContext {
    pub fn new(fan: &Fan, bounds: SearchBounds) -> Result<Self> {
        let fan = fan.with_resolved_gluing(bounds)?;
        let classification = fan.classify_faces(bounds)?;
        let mut primes = Vec::new();
        let mut facets = vec![Vec::new(); fan.cones().len()];
        for (p, class) in classification.prime_classes().into_iter().enumerate() {
            let mut normals = Vec::new();
            for m in &class.members {
                let nv = standard_normal_vector(&fan.cones()[m.cone], &m.face)?;
                facets[m.cone].push((m.face.indices.clone(), p, nv.clone()));
                normals.push(nv);
            }
            primes.push(PrimeDivisor {
                id: p + 1,
                members: class.members.clone(),
                normals,
            });
        }
        let ctx = DivisorContext {
            fan,
            classification,
            primes,
            facets,
        };
        ctx.check_class_consistency()?;
        Ok(ctx)
    }

    /// All members of a class induce the same functional on `M`.
    fn check_class_consistency(&self) -> Result<()> {
        let gens = self.fan.cones()[0].generators();
        for (p, prime) in self.primes.iter().enumerate() {
            for u in gens {
                let mut values = prime
                    .members
                    .iter()
                    .zip(&prime.normals)
                    .map(|(m, nv)| char_value_at(&self.fan.cones()[m.cone], nv, u));
                let first = values.next().expect("classes are nonempty")?;
                for v in values {
                    if v? != first {
                        return Err(Error::InternalInconsistency(format!(
                            "facets of D{} disagree",
                            p + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn primes(&self) -> &[PrimeDivisor] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `phi_L(u)` for the prime divisor with index `p` (0-based).
    pub fn functional(&self, p: usize, u: &[ZxPoly]) -> Result<ZxPoly> {
        let prime = self.primes.get(p).ok_or(Error::BadIndex {
            index: p,
            len: self.primes.len(),
        })?;
        char_value_at(
            &self.fan.cones()[prime.members[0].cone],
            &prime.normals[0],
            u,
        )
    }

    pub fn div_character(&self, u: &[ZxPoly]) -> Result<WeilDivisor> {
        let coeffs = (0..self.primes.len())
            .map(|p| self.functional(p, u))
            .collect::<Result<_>>()?;
        Ok(WeilDivisor { coeffs })
    }

    pub fn div_principal(&self, f: &SupportedElement) -> Result<WeilDivisor> {
        f.check()?;
        let mut coeffs = Vec::with_capacity(self.primes.len());
        for prime in &self.primes {
            let cone = &self.fan.cones()[prime.members[0].cone];
            coeffs.push(valuation(cone, &prime.normals[0], f)?);
        }
        Ok(WeilDivisor { coeffs })
    }

    /// Characteristic divisors of the generators of the first cone.
    fn character_columns(&self) -> Result<Vec<ZxVector>> {
        self.fan.cones()[0]
            .generators()
            .iter()
            .map(|u| Ok(self.div_character(u)?.coeffs))
            .collect()
    }

    pub fn class_module(&self) -> Result<ModulePresentation> {
        ModulePresentation::from_columns(self.primes.len(), &self.character_columns()?)
    }

    /// Whether `d` is characteristic on every cone, with the local characters.
    pub fn is_cartier(&self, d: &WeilDivisor) -> Result<Verdict<CartierLocalData>> {
        let a = d.padded(self.primes.len())?;
        let mut characters = Vec::new();
        for (i, cone) in self.fan.cones().iter().enumerate() {
            let rows = &self.facets[i];
            let target: ZxVector = rows.iter().map(|(_, p, _)| a[*p].clone()).collect();
            let m = cone.len();
            let cols: Vec<ZxVector> = (0..m)
                .map(|k| rows.iter().map(|(_, _, nv)| nv.values[k].clone()).collect())
                .collect();
            let system = Lattice::new(rows.len(), cols)?;
            match system.member(&target)? {
                Some(cert) => {
                    let u = combine(cone.generators(), &cert.coefficients, cone.ambient());
                    characters.push(LocalCharacter {
                        cone: i,
                        u,
                        certificate: cert.coefficients,
                    });
                }
                None => return Ok(Verdict::No(Obstruction::NotCharacteristic { cone: i })),
            }
        }
        Ok(Verdict::Yes(CartierLocalData { characters }))
    }

    /// Generators of the Cartier divisors: divisor parts of the kernel of
    /// `a|_i = Phi_i c_i` over all cones.
    pub fn cartier_lattice(&self) -> Result<Lattice> {
        let s = self.primes.len();
        let sizes: Vec<usize> = self.fan.cones().iter().map(AffineSemimodule::len).collect();
        let width = s + sizes.iter().sum::<usize>();
        let mut eqs = Vec::new();
        let mut offset = s;
        for (i, rows) in self.facets.iter().enumerate() {
            for (_, p, nv) in rows {
                let mut row = vec![ZxPoly::zero(); width];
                row[*p] = ZxPoly::one();
                for (k, v) in nv.values.iter().enumerate() {
                    row[offset + k] = -v;
                }
                eqs.push(row);
            }
            offset += sizes[i];
        }
        if eqs.is_empty() {
            return Ok(Lattice::full(s));
        }
        let kernel = syzygy_basis(&ZxMatrix::from_rows(&eqs, width)?)?;
        let gens: Vec<ZxVector> = kernel
            .generators()
            .iter()
            .map(|g| g[..s].to_vec())
            .filter(|g| !is_zero_vector(g))
            .collect();
        Ok(Lattice::new(s, gens)?.minimalized())
    }

    pub fn pic_module(&self) -> Result<ModulePresentation> {
        if self.fan.cones().len() == 1 {
            return Ok(ModulePresentation::zero());
        }
        let s = self.primes.len();
        let chars = self.character_columns()?;
        let cdiv = self.cartier_lattice()?;
        if cdiv.equals(&Lattice::full(s))? {
            return ModulePresentation::from_columns(s, &chars);
        }
        let basis = cdiv.generators().to_vec();
        let mut cols = Vec::new();
        for c in &chars {
            let cert = cdiv.member(c)?.ok_or_else(|| {
                Error::InternalInconsistency("characteristic divisor is not Cartier".into())
            })?;
            cols.push(cert.coefficients);
        }
        if !basis.is_empty() {
            let syz = syzygy_basis(&ZxMatrix::from_columns(&basis, s)?)?;
            cols.extend(
                syz.generators()
                    .iter()
                    .filter(|g| !is_zero_vector(g))
                    .cloned(),
            );
        }
        ModulePresentation::from_columns(basis.len(), &cols)
    }

    /// Smoothness of every cone, cross-checked against the class and Picard shapes.
    pub fn is_smooth_variety(&self, bounds: SearchBounds) -> Result<SmoothnessReport> {
        if self.fan.md().free_basis().is_err() {
            return Ok(SmoothnessReport {
                verdict: Verdict::Unknown(bounds),
                class_shape: None,
                pic_shape: None,
            });
        }
        let mut normals = Vec::new();
        let mut verdict = None;
        for (cone, s) in self.fan.cones().iter().enumerate() {
            match s.is_smooth_semimodule(bounds)? {
                Verdict::Yes(n) => normals.push(n),
                Verdict::No(reason) => {
                    verdict = Some(Verdict::No(Obstruction::Cone {
                        cone,
                        reason: Box::new(reason),
                    }));
                    break;
                }
                Verdict::Unknown(b) => verdict = verdict.or(Some(Verdict::Unknown(b))),
            }
        }
        let verdict = verdict.unwrap_or(Verdict::Yes(normals));
        let class_shape = self.class_module()?.shape;
        let pic_shape = self.pic_module()?.shape;
        let agree = class_shape == pic_shape && class_shape != "unrecognized";
        if !verdict.is_unknown() && verdict.is_yes() != agree {
            return Err(Error::InternalInconsistency(format!(
                "smoothness verdict {} but Cl is {class_shape} and Pic is {pic_shape}",
                verdict.label()
            )));
        }
        Ok(SmoothnessReport {
            verdict,
            class_shape: Some(class_shape),
            pic_shape: Some(pic_shape),
        })
    }

    /// `D|_{S_i}` on the single-cone fan of cone `i`, whose prime divisors
    /// are the facets of that cone.
    pub fn restrict_divisor(
        &self,
        cone: usize,
        d: &WeilDivisor,
        bounds: SearchBounds,
    ) -> Result<WeilDivisor> {
        let k = self.fan.cones().len();
        if cone >= k {
            return Err(Error::BadIndex {
                index: cone,
                len: k,
            });
        }
        let a = d.padded(self.primes.len())?;
        let chart = DivisorContext::new(&Fan::single(self.fan.cones()[cone].clone()), bounds)?;
        let mut coeffs = Vec::new();
        for prime in chart.primes() {
            let indices = &prime.members[0].face.indices;
            let (_, p, _) = self.facets[cone]
                .iter()
                .find(|(ix, _, _)| ix == indices)
                .ok_or_else(|| {
                    Error::InternalInconsistency("chart facet without a class".into())
                })?;
            coeffs.push(a[*p].clone());
        }
        Ok(WeilDivisor { coeffs })
    }

    /// Checks that restricting to cone `i` maps the class module onto the
    /// chart's, with kernel spanned by the omitted prime divisors.
    pub fn excision(&self, cone: usize, bounds: SearchBounds) -> Result<ExcisionReport> {
        let s = self.primes.len();
        let chart = DivisorContext::new(&Fan::single(self.fan.cones()[cone].clone()), bounds)?;
        let mut omitted = Vec::new();
        let mut hit = vec![false; chart.len()];
        for p in 0..s {
            let r = self.restrict_divisor(cone, &WeilDivisor::prime(s, p + 1), bounds)?;
            if r.is_zero() {
                omitted.push(p + 1);
            }
            for (k, c) in r.coeffs.iter().enumerate() {
                if c.is_one() {
                    hit[k] = true;
                }
            }
        }
        let surjective = hit.iter().all(|&h| h);
        let chart_shape = chart.class_module()?.shape;
        let mut cols = self.character_columns()?;
        cols.extend(omitted.iter().map(|&id| unit_vector(s, id - 1)));
        let quotient_shape = ModulePresentation::from_columns(s, &cols)?.shape;
        let exact = surjective && quotient_shape == chart_shape && chart_shape != "unrecognized";
        Ok(ExcisionReport {
            cone,
            omitted,
            surjective,
            chart_shape,
            quotient_shape,
            exact,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::projective_fan;

    fn p(c: &[i64]) -> ZxPoly {
        ZxPoly::from_i64s(c)
    }

    fn v(cs: &[&[i64]]) -> ZxVector {
        cs.iter().map(|c| p(c)).collect()
    }

    fn b() -> SearchBounds {
        SearchBounds::new(2, 12)
    }

    fn planar() -> AffineSemimodule {
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

    fn spatial() -> AffineSemimodule {
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

    fn affine_space(n: usize) -> AffineSemimodule {
        AffineSemimodule::new(n, (0..n).map(|i| unit_vector(n, i)).collect()).unwrap()
    }

    fn simplex(n: usize) -> Vec<ZxVector> {
        let mut pts = vec![vec![ZxPoly::zero(); n]];
        pts.extend((0..n).map(|i| unit_vector(n, i)));
        pts
    }

    fn face(indices: &[usize]) -> Face {
        Face {
            indices: indices.to_vec(),
            witness: None,
            rank: 0,
        }
    }

    #[test]
    fn planar_normal_vectors() {
        let s = planar();
        assert_eq!(
            standard_normal_vector(&s, &face(&[0])).unwrap().values,
            v(&[&[], &[1], &[2]])
        );
        assert_eq!(
            standard_normal_vector(&s, &face(&[2])).unwrap().values,
            v(&[&[2], &[1], &[]])
        );
        assert!(matches!(
            standard_normal_vector(&s, &face(&[])),
            Err(Error::NotAFacet(_))
        ));
        assert!(matches!(
            standard_normal_vector(&s, &face(&[1])),
            Err(Error::MixedSigns(_))
        ));
    }

    #[test]
    fn spatial_normal_vector() {
        let nv = standard_normal_vector(&spatial(), &face(&[1, 2])).unwrap();
        assert_eq!(nv.values, v(&[&[2, 1], &[], &[], &[1]]));
    }

    #[test]
    fn values_and_valuations() {
        let s = planar();
        let nv = standard_normal_vector(&s, &face(&[0])).unwrap();
        let g = s.generators().to_vec();
        assert_eq!(char_value(&nv, &v(&[&[], &[1], &[]])).unwrap(), p(&[1]));
        assert_eq!(char_value_at(&s, &nv, &v(&[&[], &[]])).unwrap(), p(&[]));
        let u13: ZxVector = g[0].iter().zip(&g[2]).map(|(a, b)| a + b).collect();
        assert_eq!(char_value_at(&s, &nv, &u13).unwrap(), p(&[2]));
        let f = SupportedElement::new(vec![
            Term {
                exponent: g[0].clone(),
                coeff: Ratio::from_integer(1),
            },
            Term {
                exponent: g[1].clone(),
                coeff: Ratio::new(1, 2),
            },
        ])
        .unwrap();
        assert_eq!(valuation(&s, &nv, &f).unwrap(), p(&[]));
        let q = valuation_quotient(
            &s,
            &nv,
            &SupportedElement::character(g[0].clone()),
            &SupportedElement::character(g[1].clone()),
        )
        .unwrap();
        assert_eq!(q, p(&[-1]));
        assert_eq!(SupportedElement::new(vec![]), Err(Error::EmptySupport));
        assert_eq!(char_value(&nv, &v(&[&[1]])), Err(Error::BadCertificate));
    }

    #[test]
    fn planar_divisors() {
        let s = planar();
        let ctx = DivisorContext::new(&Fan::single(s.clone()), b()).unwrap();
        let g = s.generators();
        let d = ctx.div_character(&g[1]).unwrap();
        assert_eq!(d.to_string(), "D1 + D2");
        let f = SupportedElement::new(vec![
            Term {
                exponent: g[0].clone(),
                coeff: Ratio::from_integer(1),
            },
            Term {
                exponent: g[1].clone(),
                coeff: Ratio::from_integer(1),
            },
        ])
        .unwrap();
        assert_eq!(ctx.div_principal(&f).unwrap().to_string(), "D2");
        assert_eq!(ctx.class_module().unwrap().shape, "Z[x]/(2)");
        let Verdict::Yes(data) = ctx.is_cartier(&d).unwrap() else {
            panic!()
        };
        assert_eq!(data.characters[0].u, g[1]);
        let d1 = WeilDivisor::prime(2, 1);
        assert_eq!(
            ctx.is_cartier(&d1).unwrap(),
            Verdict::No(Obstruction::NotCharacteristic { cone: 0 })
        );
        assert!(ctx.is_cartier(&WeilDivisor::zero(2)).unwrap().is_yes());
        assert!(ctx.pic_module().unwrap().is_zero_module());
        let smooth = ctx.is_smooth_variety(b()).unwrap();
        assert!(smooth.verdict.is_no());
    }

    #[test]
    fn spatial_class_module() {
        let ctx = DivisorContext::new(&Fan::single(spatial()), b()).unwrap();
        assert_eq!(ctx.class_module().unwrap().shape, "Z[x]/(x+2) ⊕ Z[x]/(x+2)");
    }

    #[test]
    fn affine_space_is_smooth_with_trivial_class_module() {
        for n in 1..=3 {
            let ctx = DivisorContext::new(&Fan::single(affine_space(n)), b()).unwrap();
            assert_eq!(ctx.class_module().unwrap().shape, "0");
            assert!(ctx.is_smooth_variety(b()).unwrap().verdict.is_yes());
        }
    }

    #[test]
    fn projective_plane() {
        let fan = projective_fan(&simplex(2), b()).unwrap();
        let ctx = DivisorContext::new(&fan, b()).unwrap();
        assert_eq!(ctx.len(), 3);
        let e1 = unit_vector(2, 0);
        let e2 = unit_vector(2, 1);
        assert_eq!(ctx.div_character(&e1).unwrap().to_string(), "D2 - D3");
        assert_eq!(ctx.functional(2, &e1).unwrap(), p(&[-1]));
        assert_eq!(ctx.functional(2, &e2).unwrap(), p(&[-1]));
        assert_eq!(ctx.class_module().unwrap().shape, "free^1");
        assert_eq!(ctx.pic_module().unwrap().shape, "free^1");
        assert!(ctx.is_smooth_variety(b()).unwrap().verdict.is_yes());
        let d3 = WeilDivisor::prime(3, 3);
        assert!(ctx.restrict_divisor(0, &d3, b()).unwrap().is_zero());
        let ex = ctx.excision(0, b()).unwrap();
        assert_eq!(ex.omitted, vec![3]);
        assert!(ex.exact, "{ex:?}");
    }

    #[test]
    fn projective_line_picard() {
        let ctx = DivisorContext::new(&projective_fan(&simplex(1), b()).unwrap(), b()).unwrap();
        assert_eq!(ctx.pic_module().unwrap().shape, "free^1");
    }

    #[test]
    fn divisor_json() {
        let d = WeilDivisor {
            coeffs: v(&[&[1], &[], &[0, 1]]),
        };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"classes":[{"id":1,"coeff":[1]},{"id":2,"coeff":[]},{"id":3,"coeff":[0,1]}]}"#
        );
        assert_eq!(serde_json::from_str::<WeilDivisor>(&s).unwrap(), d);
        assert_eq!(d.to_string(), "D1 + (x)D3");
    }
}
