use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gb::Basis;
use super::{
    check_dim, combine, determinant, independent_rows, is_zero_vector, primitive_vector,
    rank_of_vectors, unit_vector, vec_neg, ZxMatrix, ZxVector,
};
use crate::error::{Error, Result};
use crate::ring::ZxPoly;

/// Coefficients expressing a query as a combination of a lattice's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub coefficients: Vec<ZxPoly>,
}

impl MembershipCertificate {
    /// Re-evaluates the combination and compares it with `query`.
    pub fn verify(&self, generators: &[ZxVector], query: &[ZxPoly]) -> bool {
        self.coefficients.len() == generators.len()
            && combine(generators, &self.coefficients, query.len()) == query
    }
}

const CRAMER_LIMIT: usize = 64;

/// Relations among `generators` read off from maximal minors.
///
/// With `R` a maximal independent set of coordinates and `S` any `r + 1`
/// generators, the alternating vector of `r x r` minors on `R` is a relation
/// supported on `S`. Feeding them to the basis computation up front keeps the
/// relation parts of intermediate elements small.
fn cramer_relations(ambient: usize, generators: &[ZxVector]) -> Vec<ZxVector> {
    let k = generators.len();
    if k == 0 {
        return Vec::new();
    }
    let cols = ZxMatrix::from_columns(generators, ambient)
        .expect("generators share the ambient dimension");
    let rows = independent_rows(&cols);
    let r = rows.len();
    if r >= k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for subset in subsets(k, r + 1).take(CRAMER_LIMIT) {
        let mut rel = vec![ZxPoly::zero(); k];
        for (pos, &s) in subset.iter().enumerate() {
            let others: Vec<usize> = subset.iter().copied().filter(|&t| t != s).collect();
            let mut minor = ZxMatrix::zeros(r, r);
            for (a, &i) in rows.iter().enumerate() {
                for (b, &j) in others.iter().enumerate() {
                    minor.set(a, b, cols.get(i, j).clone());
                }
            }
            let d = determinant(&minor).expect("minor is square");
            rel[s] = if pos % 2 == 0 { d } else { -d };
        }
        if !is_zero_vector(&rel) {
            out.push(primitive_vector(&rel));
        }
    }
    out
}

/// All `size`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (size <= n).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = size;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - size + i {
                c[i] += 1;
                for t in i + 1..size {
                    c[t] = c[t - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// A finitely generated `Z[x]`-submodule of `Z[x]^n`.
///
/// Construction computes a strong Gröbner basis of the generators augmented
/// by unit vectors, `(g_i, e_i)`. Reducing `(v, 0)` to `(0, -c)` proves
/// `v = sum c_i g_i`, and basis elements with vanishing head carry the
/// syzygies of the generators in their tails.
#[derive(Clone)]
pub struct Lattice {
    ambient: usize,
    generators: Vec<ZxVector>,
    basis: Arc<Basis>,
}

impl Lattice {
    pub fn new(ambient: usize, generators: Vec<ZxVector>) -> Result<Self> {
        for g in &generators {
            check_dim(ambient, g.len())?;
        }
        let k = generators.len();
        let augmented: Vec<ZxVector> = generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut v = g.clone();
                v.extend(unit_vector(k, i));
                v
            })
            .collect();
        let mut seeds = augmented;
        for s in cramer_relations(ambient, &generators) {
            let mut v = vec![ZxPoly::zero(); ambient];
            v.extend(s);
            seeds.push(v);
        }
        let basis = Arc::new(Basis::compute(&seeds, ambient));
        Ok(Lattice {
            ambient,
            generators,
            basis,
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice::new(ambient, Vec::new()).unwrap()
    }

    /// All of `Z[x]^n`, generated by the standard basis.
    pub fn full(ambient: usize) -> Self {
        Lattice::new(
            ambient,
            (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        )
        .unwrap()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[ZxVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| is_zero_vector(g))
    }

    /// Dimension of the `Q(x)`-span.
    pub fn rank(&self) -> usize {
        rank_of_vectors(&self.generators, self.ambient)
    }

    /// Exact membership with a certificate over the generators.
    pub fn member(&self, v: &[ZxPoly]) -> Result<Option<MembershipCertificate>> {
        check_dim(self.ambient, v.len())?;
        let k = self.generators.len();
        let mut f: ZxVector = v.to_vec();
        f.extend(std::iter::repeat_n(ZxPoly::zero(), k));
        self.basis.reduce_head(&mut f);
        if !is_zero_vector(&f[..self.ambient]) {
            return Ok(None);
        }
        let cert = MembershipCertificate {
            coefficients: vec_neg(&f[self.ambient..]),
        };
        if !cert.verify(&self.generators, v) {
            return Err(Error::InternalInconsistency(
                "membership certificate does not verify".into(),
            ));
        }
        Ok(Some(cert))
    }

    pub fn contains(&self, v: &[ZxPoly]) -> Result<bool> {
        Ok(self.member(v)?.is_some())
    }

    /// `true` when every generator of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        check_dim(self.ambient, other.ambient)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Lattice) -> Result<bool> {
        Ok(self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    /// Head parts of the strong basis: a strong Gröbner basis of the lattice itself.
    pub fn groebner_generators(&self) -> Vec<ZxVector> {
        self.basis
            .elements()
            .filter(|v| !is_zero_vector(&v[..self.ambient]))
            .map(|v| v[..self.ambient].to_vec())
            .collect()
    }

    /// Generators of the module of relations among this lattice's generators.
    pub fn generator_syzygies(&self) -> Vec<ZxVector> {
        self.basis
            .elements()
            .filter(|v| is_zero_vector(&v[..self.ambient]))
            .map(|v| v[self.ambient..].to_vec())
            .collect()
    }

    /// Same lattice, with every generator that is a combination of the
    /// remaining ones removed (later generators are tried first).
    pub fn minimalized(&self) -> Lattice {
        let mut keep: Vec<ZxVector> = Vec::new();
        for g in &self.generators {
            if !is_zero_vector(g) && !keep.contains(g) {
                keep.push(g.clone());
            }
        }
        let mut i = keep.len();
        while i > 0 {
            i -= 1;
            let others: Vec<ZxVector> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let sub = Lattice::new(self.ambient, others).expect("dimensions already checked");
            if sub.contains(&keep[i]).expect("dimensions already checked") {
                keep.remove(i);
            }
        }
        Lattice::new(self.ambient, keep).expect("dimensions already checked")
    }

    /// A free basis, for lattices known to be free.
    ///
    /// Fails when discarding redundant generators, from either the given
    /// generators or the Gröbner generators, does not bring the count down
    /// to the rank.
    pub fn free_basis(&self) -> Result<Vec<ZxVector>> {
        let rank = self.rank();
        let mut counts = Vec::new();
        for gens in [self.generators.clone(), self.groebner_generators()] {
            let m = Lattice::new(self.ambient, gens)?.minimalized();
            if m.generators.len() == rank {
                return Ok(m.generators);
            }
            counts.push(m.generators.len());
        }
        Err(Error::InternalInconsistency(format!(
            "{} minimal generators for a lattice of rank {rank}",
            counts.iter().min().unwrap()
        )))
    }

    /// `{u : <u, v> = 0 for all v in L}`.
    pub fn complement(&self) -> Lattice {
        let rows: Vec<ZxVector> = self
            .generators
            .iter()
            .filter(|g| !is_zero_vector(g))
            .cloned()
            .collect();
        if rows.is_empty() {
            return Lattice::full(self.ambient);
        }
        let a = ZxMatrix::from_rows(&rows, self.ambient).expect("dimensions already checked");
        syzygy_basis(&a).expect("kernel postconditions hold")
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        check_dim(self.ambient, other.ambient)?;
        let k1 = self.generators.len();
        let mut cols = self.generators.clone();
        cols.extend(other.generators.iter().map(|g| vec_neg(g)));
        if cols.is_empty() {
            return Ok(Lattice::zero(self.ambient));
        }
        let kernel = syzygy_basis(&ZxMatrix::from_columns(&cols, self.ambient)?)?;
        let common: Vec<ZxVector> = kernel
            .generators()
            .iter()
            .map(|a| combine(&self.generators, &a[..k1], self.ambient))
            .filter(|w| !is_zero_vector(w))
            .collect();
        Ok(Lattice::new(self.ambient, common)?.minimalized())
    }

    /// The double complement `(L^C)^C`, the smallest saturated lattice containing `L`.
    pub fn saturate(&self) -> Lattice {
        self.complement().complement()
    }

    /// Saturation test: `g u in L` with `g != 0` forces `u in L`.
    pub fn is_toric(&self) -> bool {
        self.equals(&self.saturate())
            .expect("same ambient dimension")
    }
}

/// Generators of `{v : U v = 0}`, read off a strong basis of the columns of `U`.
///
/// The result is minimalized and checked: every generator annihilates `U`
/// and the rank equals `cols(U) - rank(U)`.
pub fn syzygy_basis(u: &ZxMatrix) -> Result<Lattice> {
    let m = u.cols();
    let columns = Lattice::new(u.rows(), u.columns())?;
    // kernels are saturated, so dividing out the entry gcd stays inside
    let syz = columns
        .generator_syzygies()
        .iter()
        .map(|g| primitive_vector(g))
        .collect();
    let kernel = Lattice::new(m, syz)?.minimalized();
    for g in kernel.generators() {
        if !is_zero_vector(&u.mul_vec(g)?) {
            return Err(Error::InternalInconsistency(
                "syzygy does not annihilate the matrix".into(),
            ));
        }
    }
    let expected = m - u.rank();
    let found = kernel.rank();
    if found != expected {
        return Err(Error::RankMismatch { expected, found });
    }
    Ok(kernel)
}

impl PartialEq for Lattice {
    /// Structural equality of the generator lists; use [`Lattice::equals`] for module equality.
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.generators == other.generators
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("ambient", &self.ambient)
            .field("generators", &self.generators)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeData {
    ambient: usize,
    generators: Vec<ZxVector>,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeData {
            ambient: self.ambient,
            generators: self.generators.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let data = LatticeData::deserialize(deserializer)?;
        Lattice::new(data.ambient, data.generators).map_err(serde::de::Error::custom)
    }
}
