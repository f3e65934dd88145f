use serde::Serialize;

use super::{GroupError, OrientationHom, TwistedGroup};
use crate::freeword::{FreeAutomorphism, Letter, Word};

/// Where one factor landed inside the free product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorEmbedding {
    /// 1-based index of the factor's first generator (meaningless when `rank == 0`).
    pub offset: usize,
    pub rank: usize,
    /// The new generator `x_j` whose pair `(x_j, 1)` is this factor's Z/2,
    /// `None` for the distinguished first factor.
    pub involution_generator: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeProductReport {
    pub rank: usize,
    pub factors: Vec<FactorEmbedding>,
}

impl FreeProductReport {
    /// Orientation on the product: each factor's values on its own generators
    /// and 0 on every new `x_j`, since `(x_j, 1)` must map to 1.
    pub fn combine_orientations(&self, phis: &[OrientationHom]) -> Result<OrientationHom, GroupError> {
        let mut values = vec![false; self.rank];
        for (emb, phi) in self.factors.iter().zip(phis) {
            if phi.len() != emb.rank {
                return Err(GroupError::OrientationLength {
                    got: phi.len(),
                    rank: emb.rank,
                });
            }
            values[emb.offset - 1..emb.offset - 1 + emb.rank].copy_from_slice(phi.values());
        }
        Ok(OrientationHom::new(values))
    }
}

fn shift(w: &Word, offset: usize, rank: usize) -> Word {
    let letters = w
        .letters()
        .iter()
        .map(|l| Letter::new(l.index() + offset, l.sign()))
        .collect::<Vec<_>>();
    Word::from_reduced_unchecked(rank, letters)
}

/// Presents the free product of the `F_i ⋊ Z/2` as a single `F ⋊_θ Z/2`.
///
/// Factor generators come first in factor order, followed by one new `x_j`
/// for each factor after the first. `θ(x_j) = x_j^-1`, `θ` agrees with `θ_1`
/// on the first factor, and on the `j`-th factor `θ(g) = x_j^-1 θ_j(g) x_j`.
pub fn free_product_with_z2(
    factors: &[TwistedGroup],
) -> Result<(TwistedGroup, FreeProductReport), GroupError> {
    let Some(first) = factors.first() else {
        return Err(GroupError::EmptyFactors);
    };
    if factors.len() == 1 {
        let report = FreeProductReport {
            rank: first.rank(),
            factors: vec![FactorEmbedding {
                offset: 1,
                rank: first.rank(),
                involution_generator: None,
            }],
        };
        return Ok((first.clone(), report));
    }

    let base: usize = factors.iter().map(TwistedGroup::rank).sum();
    let rank = base + factors.len() - 1;
    let mut images = Vec::with_capacity(rank);
    let mut embeddings = Vec::with_capacity(factors.len());
    let mut offset = 0;
    for (j, factor) in factors.iter().enumerate() {
        let involution_generator = (j > 0).then(|| base + j);
        for img in factor.theta().images() {
            let inner = shift(img, offset, rank);
            images.push(match involution_generator {
                None => inner,
                Some(x) => {
                    let xw = Word::generator(rank, x).expect("in range");
                    xw.invert().mul_unchecked(&inner).mul_unchecked(&xw)
                }
            });
        }
        embeddings.push(FactorEmbedding {
            offset: offset + 1,
            rank: factor.rank(),
            involution_generator,
        });
        offset += factor.rank();
    }
    for x in base + 1..=rank {
        images.push(Word::generator(rank, x).expect("in range").invert());
    }

    let group = TwistedGroup::new(FreeAutomorphism::new(images)?)?;
    Ok((
        group,
        FreeProductReport {
            rank,
            factors: embeddings,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::IntMatrix;

    #[test]
    fn two_z2_factors_give_infinite_dihedral() {
        let z2 = TwistedGroup::direct(0);
        let (g, report) = free_product_with_z2(&[z2.clone(), z2]).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.theta().image(1).to_string(), "x1^-1");
        assert_eq!(report.factors[1].involution_generator, Some(1));
    }

    #[test]
    fn single_factor_unchanged() {
        let g = TwistedGroup::new(FreeAutomorphism::parse(&["x2", "x1"]).unwrap()).unwrap();
        let (out, _) = free_product_with_z2(std::slice::from_ref(&g)).unwrap();
        assert_eq!(out, g);
    }

    #[test]
    fn fixed_generator_with_z2() {
        let (g, _) = free_product_with_z2(&[TwistedGroup::direct(1), TwistedGroup::direct(0)]).unwrap();
        assert_eq!(g.rank(), 2);
        let images: Vec<_> = g.theta().images().iter().map(ToString::to_string).collect();
        assert_eq!(images, ["x1", "x2^-1"]);
    }

    #[test]
    fn later_factors_are_conjugated() {
        let swap = TwistedGroup::new(FreeAutomorphism::parse(&["x2", "x1"]).unwrap()).unwrap();
        let (g, report) = free_product_with_z2(&[TwistedGroup::direct(1), swap]).unwrap();
        assert_eq!(g.rank(), 4);
        assert_eq!(g.theta().image(2).to_string(), "x4^-1 x3 x4");
        assert_eq!(report.factors[1].offset, 2);
        let expected = IntMatrix::from_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 0, -1],
        ]);
        assert_eq!(g.abelianization_matrix(), expected);
    }

    #[test]
    fn orientations_combine() {
        let inv = TwistedGroup::new(FreeAutomorphism::parse(&["x1^-1"]).unwrap()).unwrap();
        let (g, report) = free_product_with_z2(&[TwistedGroup::direct(0), inv]).unwrap();
        let phi = report
            .combine_orientations(&[OrientationHom::trivial(0), OrientationHom::from_bits(&[1])])
            .unwrap();
        assert_eq!(phi.bits(), vec![1, 0]);
        assert!(g.validate_orientation(&phi));
    }

    #[test]
    fn empty_list_rejected() {
        assert_eq!(free_product_with_z2(&[]), Err(GroupError::EmptyFactors));
    }
}
