use std::fmt;

use num_bigint::BigInt;

use super::{Word, WordError};
use crate::intlat::IntMatrix;

/// An endomorphism of a free group, given by the images of the generators.
///
/// `images[j]` is the image of `x_{j+1}`. Bijectivity is not checked; the
/// involution test is available on demand through [`is_involution`](Self::is_involution).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl FreeAutomorphism {
    pub fn new(images: Vec<Word>) -> Result<Self, WordError> {
        let rank = images.len();
        if let Some(bad) = images.iter().find(|w| w.rank() != rank) {
            return Err(WordError::RankMismatch {
                left: rank,
                right: bad.rank(),
            });
        }
        Ok(FreeAutomorphism { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        FreeAutomorphism {
            rank,
            images: (1..=rank)
                .map(|i| Word::from_reduced_unchecked(rank, vec![super::Letter::pos(i)]))
                .collect(),
        }
    }

    /// Parses one word per generator.
    pub fn parse<S: AsRef<str>>(images: &[S]) -> Result<Self, WordError> {
        let rank = images.len();
        let words = images
            .iter()
            .map(|s| Word::parse(s.as_ref(), rank))
            .collect::<Result<Vec<_>, _>>()?;
        FreeAutomorphism::new(words)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of `x_index` (1-indexed).
    pub fn image(&self, index: usize) -> &Word {
        &self.images[index - 1]
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn apply(&self, g: &Word) -> Result<Word, WordError> {
        if g.rank() != self.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: g.rank(),
            });
        }
        Ok(self.apply_unchecked(g))
    }

    pub(crate) fn apply_unchecked(&self, g: &Word) -> Word {
        let mut out = Word::identity(self.rank);
        for l in g.letters() {
            let img = &self.images[l.index() - 1];
            if l.is_inverted() {
                out = out.mul_unchecked(&img.invert());
            } else {
                out = out.mul_unchecked(img);
            }
        }
        out
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &FreeAutomorphism) -> Result<FreeAutomorphism, WordError> {
        if self.rank != inner.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: inner.rank,
            });
        }
        Ok(FreeAutomorphism {
            rank: self.rank,
            images: inner.images.iter().map(|w| self.apply_unchecked(w)).collect(),
        })
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(j, img)| {
                let back = self.apply_unchecked(img);
                back.len() == 1 && back.letters()[0] == super::Letter::pos(j + 1)
            })
    }

    /// Matrix of the induced map on `Z^rank`: entry `(i, j)` is the exponent sum
    /// of `x_{i+1}` in the image of `x_{j+1}`.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let m = self.rank;
        let mut out = IntMatrix::zeros(m, m);
        for (j, img) in self.images.iter().enumerate() {
            for (i, e) in img.abelianize().into_iter().enumerate() {
                out[(i, j)] = BigInt::from(e);
            }
        }
        out
    }
}

impl fmt::Display for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, img) in self.images.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{} -> {}", j + 1, if img.is_empty() { "e".to_string() } else { img.to_string() })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aut(images: &[&str]) -> FreeAutomorphism {
        FreeAutomorphism::parse(images).unwrap()
    }

    #[test]
    fn inversion_on_rank_one() {
        let theta = aut(&["x1^-1"]);
        let g = Word::parse("x1 x1", 1).unwrap();
        assert_eq!(theta.apply(&g).unwrap(), Word::parse("x1^-1 x1^-1", 1).unwrap());
        assert!(theta.is_involution());
        assert_eq!(theta.abelianization_matrix(), IntMatrix::from_rows(&[vec![-1]]));
    }

    #[test]
    fn identity_is_involution() {
        let id = FreeAutomorphism::identity(3);
        assert!(id.is_involution());
        assert_eq!(id.abelianization_matrix(), IntMatrix::identity(3));
    }

    #[test]
    fn swap() {
        let theta = aut(&["x2", "x1"]);
        assert!(theta.is_involution());
        let g = Word::parse("x1 x2^-1", 2).unwrap();
        assert_eq!(theta.apply(&g).unwrap(), Word::parse("x2 x1^-1", 2).unwrap());
        assert_eq!(
            theta.abelianization_matrix(),
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])
        );
    }

    #[test]
    fn non_involution_detected() {
        // x1 -> x1 x2, x2 -> x2 has infinite order.
        assert!(!aut(&["x1 x2", "x2"]).is_involution());
        // x -> x^2 is not even an automorphism.
        assert!(!aut(&["x1 x1"]).is_involution());
    }

    #[test]
    fn rank_checks() {
        let theta = aut(&["x2", "x1"]);
        assert!(theta.apply(&Word::identity(3)).is_err());
        assert!(theta.compose(&FreeAutomorphism::identity(1)).is_err());
        assert!(FreeAutomorphism::new(vec![Word::identity(2)]).is_err());
    }

    #[test]
    fn conjugating_involution() {
        // x -> x^-1, y -> x^-1 y x
        let theta = aut(&["x1^-1", "x1^-1 x2 x1"]);
        assert!(theta.is_involution());
        assert_eq!(
            theta.abelianization_matrix(),
            IntMatrix::from_rows(&[vec![-1, 0], vec![0, 1]])
        );
    }
}
