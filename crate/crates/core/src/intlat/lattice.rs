use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntMatrix};

/// A sublattice of `Z^ambient` given by independent basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient: usize,
    vectors: Vec<Vec<BigInt>>,
    saturated: bool,
}

impl LatticeBasis {
    pub fn new(ambient: usize, vectors: Vec<Vec<BigInt>>, saturated: bool) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient));
        LatticeBasis {
            ambient,
            vectors,
            saturated,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient, &self.vectors)
    }

    /// Integer coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let b = self.matrix();
        let snf = smith_normal_form(&b);
        let uv = snf.u.mul_vec(v);
        let n = self.dim();
        let mut y = vec![BigInt::zero(); n];
        for (i, x) in uv.iter().enumerate() {
            if i < snf.rank {
                let d = &snf.d[(i, i)];
                let (q, r) = x.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(snf.v.mul_vec(&y))
    }

    /// Checks that the index of the basis inside its rational span is one.
    pub fn check_saturated(&self) -> bool {
        let snf = smith_normal_form(&self.matrix());
        snf.rank == self.dim() && snf.invariant_factors().iter().all(One::is_one)
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|x| i64::try_from(x).ok()).collect())
            .collect()
    }
}

/// Basis of `{ v in Z^cols : m v = 0 }`. Integer kernels are always pure.
pub fn kernel_lattice(m: &IntMatrix) -> LatticeBasis {
    let snf = smith_normal_form(m);
    let vectors = (snf.rank..m.cols()).map(|j| snf.v.column(j)).collect();
    LatticeBasis::new(m.cols(), vectors, true)
}
