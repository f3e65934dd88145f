//! The semidirect product `F ⋊_θ Z/2` of a free group with an involution.
//!
//! Multiplication convention:
//!
//! ```text
//! (g, ε) · (g', ε') = (g · θ^ε(g'), ε + ε')
//! ```
//!
//! so the Z/2 generator `(e, 1)` conjugates `(g, 0)` to `(θ(g), 0)`. Note that
//! the opposite convention `(g · θ^{ε'}...)` is also common in the literature;
//! everything in this crate uses the one above.

mod dyer_scott;
mod free_product;
mod record;

pub use dyer_scott::{DyerScottClaim, DyerScottMismatch, LambdaBlock};
pub use free_product::{free_product_with_z2, FactorEmbedding, FreeProductReport};
pub use record::{parse_group_record, GroupRecord, InputError};

use crate::freeword::{FreeAutomorphism, Word, WordError};
use crate::intlat::{CanonicalInvolution, IntMatrix};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("theta is not an involution")]
    NotInvolution,
    #[error("orientation has length {got}, expected rank {rank}")]
    OrientationLength { got: usize, rank: usize },
    #[error("orientation is not compatible with theta at generator x{generator}")]
    IncompatibleOrientation { generator: usize },
    #[error("identity element has no order-two test")]
    IdentityElement,
    #[error("empty factor list")]
    EmptyFactors,
    #[error("malformed Dyer-Scott partition: {0}")]
    MalformedPartition(String),
}

/// `F_m ⋊_θ Z/2` for an involution `θ` of `F_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedGroup {
    theta: FreeAutomorphism,
}

impl TwistedGroup {
    pub fn new(theta: FreeAutomorphism) -> Result<Self, GroupError> {
        if !theta.is_involution() {
            return Err(GroupError::NotInvolution);
        }
        Ok(TwistedGroup { theta })
    }

    /// Trivial action: `F_m × Z/2`.
    pub fn direct(rank: usize) -> Self {
        TwistedGroup {
            theta: FreeAutomorphism::identity(rank),
        }
    }

    /// The generator-level involution realizing `A(k, r, s)`: swaps
    /// `x_{2i-1} <-> x_{2i}`, fixes the middle block and inverts the last one.
    pub fn standard(shape: CanonicalInvolution) -> Self {
        let m = shape.dim();
        let mut images = Vec::with_capacity(m);
        for (a, b) in shape.swap_pairs() {
            images.push((a, Word::generator(m, b + 1).expect("in range")));
            images.push((b, Word::generator(m, a + 1).expect("in range")));
        }
        for i in shape.plus_block() {
            images.push((i, Word::generator(m, i + 1).expect("in range")));
        }
        for i in shape.minus_block() {
            images.push((i, Word::generator(m, i + 1).expect("in range").invert()));
        }
        images.sort_by_key(|(i, _)| *i);
        let theta = FreeAutomorphism::new(images.into_iter().map(|(_, w)| w).collect())
            .expect("consistent rank");
        TwistedGroup::new(theta).expect("standard involution")
    }

    pub fn rank(&self) -> usize {
        self.theta.rank()
    }

    pub fn theta(&self) -> &FreeAutomorphism {
        &self.theta
    }

    pub fn abelianization_matrix(&self) -> IntMatrix {
        self.theta.abelianization_matrix()
    }

    pub fn identity(&self) -> SemidirectElement {
        SemidirectElement {
            word: Word::identity(self.rank()),
            flip: false,
        }
    }

    pub fn element(&self, word: Word, flip: bool) -> Result<SemidirectElement, GroupError> {
        if word.rank() != self.rank() {
            return Err(WordError::RankMismatch {
                left: self.rank(),
                right: word.rank(),
            }
            .into());
        }
        Ok(SemidirectElement { word, flip })
    }

    fn twist(&self, flip: bool, g: &Word) -> Word {
        if flip {
            self.theta.apply_unchecked(g)
        } else {
            g.clone()
        }
    }

    fn check(&self, a: &SemidirectElement) -> Result<(), GroupError> {
        if a.word.rank() != self.rank() {
            return Err(WordError::RankMismatch {
                left: self.rank(),
                right: a.word.rank(),
            }
            .into());
        }
        Ok(())
    }

    pub fn multiply(
        &self,
        a: &SemidirectElement,
        b: &SemidirectElement,
    ) -> Result<SemidirectElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &SemidirectElement, b: &SemidirectElement) -> SemidirectElement {
        SemidirectElement {
            word: a.word.mul_unchecked(&self.twist(a.flip, &b.word)),
            flip: a.flip ^ b.flip,
        }
    }

    /// `(g, 0)^-1 = (g^-1, 0)` and `(g, 1)^-1 = (θ(g)^-1, 1)`.
    pub fn invert(&self, a: &SemidirectElement) -> Result<SemidirectElement, GroupError> {
        self.check(a)?;
        Ok(SemidirectElement {
            word: self.twist(a.flip, &a.word).invert(),
            flip: a.flip,
        })
    }

    /// Whether `a · a` is the identity. For `a = (g, 1)` this is `g · θ(g) = e`.
    pub fn has_order_two(&self, a: &SemidirectElement) -> Result<bool, GroupError> {
        self.check(a)?;
        if a.is_identity() {
            return Err(GroupError::IdentityElement);
        }
        Ok(self.mul_unchecked(a, a).is_identity())
    }

    /// `Some(i)` for the first generator `x_i` with `φ(x_i) != φ(θ(x_i))`.
    pub fn orientation_violation(&self, phi: &OrientationHom) -> Result<Option<usize>, GroupError> {
        if phi.values.len() != self.rank() {
            return Err(GroupError::OrientationLength {
                got: phi.values.len(),
                rank: self.rank(),
            });
        }
        Ok((1..=self.rank()).find(|&i| {
            phi.values[i - 1] != phi.on_word(self.theta.image(i))
        }))
    }

    /// Whether `φ` extends to a homomorphism of the semidirect product with `φ(e, 1) = 1`.
    pub fn validate_orientation(&self, phi: &OrientationHom) -> bool {
        matches!(self.orientation_violation(phi), Ok(None))
    }

    pub fn check_orientation(&self, phi: &OrientationHom) -> Result<(), GroupError> {
        match self.orientation_violation(phi)? {
            None => Ok(()),
            Some(generator) => Err(GroupError::IncompatibleOrientation { generator }),
        }
    }

    /// `φ(g, ε) = Σ_i |g|_{x_i} φ(x_i) + ε (mod 2)`.
    pub fn evaluate_orientation(
        &self,
        phi: &OrientationHom,
        a: &SemidirectElement,
    ) -> Result<bool, GroupError> {
        self.check(a)?;
        self.check_orientation(phi)?;
        Ok(phi.on_word(&a.word) ^ a.flip)
    }
}

/// An element `(g, ε)` of the semidirect product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub word: Word,
    pub flip: bool,
}

impl SemidirectElement {
    pub fn is_identity(&self) -> bool {
        self.word.is_identity() && !self.flip
    }
}

/// Orientation character restricted to the free part, one bit per generator.
/// The value on `(e, 1)` is always 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientationHom {
    values: Vec<bool>,
}

impl OrientationHom {
    pub fn new(values: Vec<bool>) -> Self {
        OrientationHom { values }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        OrientationHom {
            values: bits.iter().map(|&b| b & 1 == 1).collect(),
        }
    }

    pub fn trivial(rank: usize) -> Self {
        OrientationHom {
            values: vec![false; rank],
        }
    }

    /// Every bit vector of the given length, in binary counting order.
    pub fn all(rank: usize) -> impl Iterator<Item = OrientationHom> {
        (0u64..1 << rank).map(move |code| OrientationHom {
            values: (0..rank).map(|i| code >> i & 1 == 1).collect(),
        })
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, index: usize) -> bool {
        self.values[index - 1]
    }

    pub fn bits(&self) -> Vec<u8> {
        self.values.iter().map(|&b| u8::from(b)).collect()
    }

    /// Parity of `Σ_i |g|_{x_i} φ(x_i)`, read off from exponent sums.
    pub fn on_word(&self, g: &Word) -> bool {
        g.abelianize()
            .iter()
            .zip(&self.values)
            .filter(|(_, &bit)| bit)
            .fold(false, |acc, (e, _)| acc ^ (e.rem_euclid(2) == 1))
    }

    /// Parity of `φ̄ · v` for an integer vector `v`.
    pub fn on_vector(&self, v: &[num_bigint::BigInt]) -> bool {
        use num_integer::Integer;
        v.iter()
            .zip(&self.values)
            .filter(|(_, &bit)| bit)
            .fold(false, |acc, (e, _)| acc ^ e.is_odd())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(images: &[&str]) -> TwistedGroup {
        TwistedGroup::new(FreeAutomorphism::parse(images).unwrap()).unwrap()
    }

    fn el(g: &TwistedGroup, w: &str, flip: bool) -> SemidirectElement {
        g.element(Word::parse(w, g.rank()).unwrap(), flip).unwrap()
    }

    #[test]
    fn product_convention() {
        // (x, 1)(y, 0) = (x θ(y), 1)
        let g = group(&["x2", "x1"]);
        let p = g.multiply(&el(&g, "x1", true), &el(&g, "x2", false)).unwrap();
        assert_eq!(p, el(&g, "x1 x1", true));
        let e1 = el(&g, "", true);
        assert!(g.multiply(&e1, &e1).unwrap().is_identity());
        assert!(g
            .multiply(&el(&g, "x1", false), &el(&g, "x1^-1", false))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn inverse_is_two_sided() {
        let g = group(&["x1^-1", "x1^-1 x2 x1"]);
        let a = el(&g, "x2 x1 x2", true);
        let inv = g.invert(&a).unwrap();
        assert!(g.multiply(&a, &inv).unwrap().is_identity());
        assert!(g.multiply(&inv, &a).unwrap().is_identity());
    }

    #[test]
    fn order_two() {
        let inv = group(&["x1^-1"]);
        assert!(inv.has_order_two(&el(&inv, "", true)).unwrap());
        assert!(inv.has_order_two(&el(&inv, "x1", true)).unwrap());
        let id = group(&["x1"]);
        assert!(!id.has_order_two(&el(&id, "x1", true)).unwrap());
        assert_eq!(id.has_order_two(&id.identity()), Err(GroupError::IdentityElement));
    }

    #[test]
    fn orientation_validation() {
        let swap = group(&["x2", "x1"]);
        assert!(!swap.validate_orientation(&OrientationHom::from_bits(&[1, 0])));
        assert_eq!(
            swap.orientation_violation(&OrientationHom::from_bits(&[1, 0])).unwrap(),
            Some(1)
        );
        assert!(swap.validate_orientation(&OrientationHom::from_bits(&[1, 1])));
        assert!(swap.validate_orientation(&OrientationHom::trivial(2)));
        let inv = group(&["x1^-1"]);
        assert!(inv.validate_orientation(&OrientationHom::from_bits(&[1])));
        assert!(!inv.validate_orientation(&OrientationHom::from_bits(&[1, 1])));
    }

    #[test]
    fn orientation_evaluation() {
        let id = group(&["x1"]);
        let phi = OrientationHom::from_bits(&[1]);
        assert!(!id.evaluate_orientation(&phi, &el(&id, "x1 x1", false)).unwrap());
        assert!(!id.evaluate_orientation(&phi, &el(&id, "x1", true)).unwrap());
        let swap = group(&["x2", "x1"]);
        let zero = OrientationHom::trivial(2);
        assert!(swap.evaluate_orientation(&zero, &el(&swap, "x1 x2 x1", true)).unwrap());
        assert!(swap
            .evaluate_orientation(&OrientationHom::from_bits(&[1, 0]), &swap.identity())
            .is_err());
    }

    #[test]
    fn standard_theta_matches_block_form() {
        for m in 1..=4 {
            for shape in CanonicalInvolution::all_of_dim(m) {
                let g = TwistedGroup::standard(shape);
                assert_eq!(g.abelianization_matrix(), shape.matrix());
            }
        }
    }

    #[test]
    fn non_involution_rejected() {
        let theta = FreeAutomorphism::parse(&["x1 x2", "x2"]).unwrap();
        assert_eq!(TwistedGroup::new(theta), Err(GroupError::NotInvolution));
    }
}
