//! Three-valued answers for the search-bounded decision procedures.

use serde::{Deserialize, Serialize};

use crate::linalg::ZxVector;
use crate::ring::ZxPoly;

/// Limits for coefficient searches: polynomial degree and integer box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_deg: usize,
    pub coeff_box: u32,
}

impl SearchBounds {
    pub const DEFAULT_BOX: u32 = 12;

    pub fn new(max_deg: usize, coeff_box: u32) -> Self {
        SearchBounds { max_deg, coeff_box }
    }

    /// Only the zero polynomial fits.
    pub fn starved() -> Self {
        SearchBounds {
            max_deg: 0,
            coeff_box: 0,
        }
    }

    /// Degree `max(2, 2 * d)` for generators of degree at most `d`, box 12.
    pub fn for_generators<'a>(gens: impl IntoIterator<Item = &'a ZxVector>) -> Self {
        let d = gens
            .into_iter()
            .flatten()
            .filter_map(ZxPoly::degree)
            .max()
            .unwrap_or(0);
        SearchBounds {
            max_deg: (2 * d).max(2),
            coeff_box: Self::DEFAULT_BOX,
        }
    }

    pub fn admits(&self, p: &ZxPoly) -> bool {
        p.degree().is_none_or(|d| d <= self.max_deg)
            && p.coeffs()
                .iter()
                .all(|c| c.magnitude() <= &num_bigint::BigUint::from(self.coeff_box))
    }
}

/// Exact evidence behind a negative answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    /// The target is not even a `Z[x]`-combination of the generators.
    NotInLattice,
    /// A generator outside the candidate face lies in the `Q(x)`-span of the face.
    Spanned { generator: usize },
    /// The functionals vanishing on the candidate face form a line whose
    /// generator takes values of both signs outside it.
    MixedSignLine { generator: ZxVector },
    /// Nonnegative multipliers on the sign constraints that cancel every free
    /// parameter and leave a false inequality.
    Farkas { multipliers: ZxVector },
    /// A relation among the source generators that the images break.
    SyzygyViolated { syzygy: ZxVector },
    /// The image of one generator is not in the target.
    Image {
        index: usize,
        reason: Box<Obstruction>,
    },
    /// A compatibility condition of a fan fails for the listed cones.
    Fan {
        condition: char,
        cones: Vec<usize>,
        detail: String,
    },
    /// A divisor is not characteristic on one cone.
    NotCharacteristic { cone: usize },
    /// One cone of a fan fails a per-cone test.
    Cone {
        cone: usize,
        reason: Box<Obstruction>,
    },
    /// Normal vectors of the facets do not form a basis of the dual lattice.
    NotABasis { missing: Option<ZxVector> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "evidence", rename_all = "lowercase")]
pub enum Verdict<Y> {
    Yes(Y),
    No(Obstruction),
    Unknown(SearchBounds),
}

impl<Y> Verdict<Y> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn yes(&self) -> Option<&Y> {
        match self {
            Verdict::Yes(y) => Some(y),
            _ => None,
        }
    }

    pub fn map<Z>(self, f: impl FnOnce(Y) -> Z) -> Verdict<Z> {
        match self {
            Verdict::Yes(y) => Verdict::Yes(f(y)),
            Verdict::No(o) => Verdict::No(o),
            Verdict::Unknown(b) => Verdict::Unknown(b),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No(_) => "no",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bounds_follow_generator_degree() {
        let gens = vec![
            vec![ZxPoly::from_i64s(&[0, 0, 1])],
            vec![ZxPoly::from_i64s(&[3])],
        ];
        assert_eq!(
            SearchBounds::for_generators(&gens),
            SearchBounds::new(4, 12)
        );
        assert_eq!(
            SearchBounds::for_generators(&[vec![ZxPoly::one()]]),
            SearchBounds::new(2, 12)
        );
    }

    #[test]
    fn admits_checks_degree_and_box() {
        let b = SearchBounds::new(1, 3);
        assert!(b.admits(&ZxPoly::from_i64s(&[-3, 2])));
        assert!(!b.admits(&ZxPoly::from_i64s(&[4])));
        assert!(!b.admits(&ZxPoly::from_i64s(&[0, 0, 1])));
        assert!(SearchBounds::starved().admits(&ZxPoly::zero()));
    }

    #[test]
    fn verdict_json_shape() {
        let v: Verdict<ZxVector> = Verdict::No(Obstruction::Spanned { generator: 2 });
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"verdict":"no","evidence":{"kind":"spanned","generator":2}}"#
        );
        let u: Verdict<ZxVector> = Verdict::Unknown(SearchBounds::starved());
        assert_eq!(
            serde_json::to_string(&u).unwrap(),
            r#"{"verdict":"unknown","evidence":{"max_deg":0,"coeff_box":0}}"#
        );
    }
}
