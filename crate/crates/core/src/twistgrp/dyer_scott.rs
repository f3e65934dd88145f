use serde::{Deserialize, Serialize};

use super::{GroupError, TwistedGroup};
use crate::freeword::Word;
use crate::intlat::CanonicalInvolution;

/// `θ(x) = x^-1` and `θ(y_j) = x^-1 y_j x` for each `y_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaBlock {
    pub x: usize,
    #[serde(default)]
    pub ys: Vec<usize>,
}

/// A claimed free-factor decomposition of `F` adapted to `θ`. Indices are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyerScottClaim {
    #[serde(default)]
    pub fixed: Vec<usize>,
    #[serde(default)]
    pub swaps: Vec<(usize, usize)>,
    #[serde(default)]
    pub lambdas: Vec<LambdaBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DyerScottMismatch {
    pub generator: usize,
    pub expected: String,
    pub actual: String,
}

impl DyerScottClaim {
    /// The claim matching [`TwistedGroup::standard`]: swaps, then fixed
    /// generators, then one lambda block with no `y`'s per inverted generator.
    pub fn standard(shape: CanonicalInvolution) -> Self {
        DyerScottClaim {
            fixed: shape.plus_block().map(|i| i + 1).collect(),
            swaps: shape.swap_pairs().map(|(a, b)| (a + 1, b + 1)).collect(),
            lambdas: shape
                .minus_block()
                .map(|i| LambdaBlock { x: i + 1, ys: vec![] })
                .collect(),
        }
    }

    fn check_partition(&self, rank: usize) -> Result<(), GroupError> {
        let mut seen = vec![false; rank];
        let all = self
            .fixed
            .iter()
            .copied()
            .chain(self.swaps.iter().flat_map(|&(a, b)| [a, b]))
            .chain(self.lambdas.iter().flat_map(|l| std::iter::once(l.x).chain(l.ys.iter().copied())));
        for i in all {
            if i == 0 || i > rank {
                return Err(GroupError::MalformedPartition(format!(
                    "generator {i} out of range for rank {rank}"
                )));
            }
            if std::mem::replace(&mut seen[i - 1], true) {
                return Err(GroupError::MalformedPartition(format!("generator {i} listed twice")));
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(GroupError::MalformedPartition(format!("generator {} not covered", i + 1)));
        }
        Ok(())
    }

    /// Every generator whose image under `θ` differs from what the claim
    /// predicts. An empty list means the claim holds.
    pub fn mismatches(&self, group: &TwistedGroup) -> Result<Vec<DyerScottMismatch>, GroupError> {
        let m = group.rank();
        self.check_partition(m)?;
        let gen = |i: usize| Word::generator(m, i).expect("checked");
        let mut expected: Vec<(usize, Word)> = Vec::with_capacity(m);
        for &i in &self.fixed {
            expected.push((i, gen(i)));
        }
        for &(a, b) in &self.swaps {
            expected.push((a, gen(b)));
            expected.push((b, gen(a)));
        }
        for block in &self.lambdas {
            let x = gen(block.x);
            expected.push((block.x, x.invert()));
            for &y in &block.ys {
                expected.push((y, x.invert().mul_unchecked(&gen(y)).mul_unchecked(&x)));
            }
        }
        expected.sort_by_key(|(i, _)| *i);
        Ok(expected
            .into_iter()
            .filter_map(|(i, want)| {
                let got = group.theta().image(i);
                (got != &want).then(|| DyerScottMismatch {
                    generator: i,
                    expected: want.to_string(),
                    actual: got.to_string(),
                })
            })
            .collect())
    }

    pub fn verify(&self, group: &TwistedGroup) -> Result<bool, GroupError> {
        Ok(self.mismatches(group)?.is_empty())
    }
}
