//! Conjugacy invariants and an explicit normal form for integral involutions.
//!
//! Every involution `M` of `Z^m` is conjugate over `GL_m(Z)` to a block
//! diagonal matrix `A(k, r, s)`: `k` swap blocks `[[0,1],[1,0]]`, then `I_r`,
//! then `-I_s`. The invariants are read off from the fixed lattice
//! `Fix = ker(M - I)` and the anti-fixed lattice `Anti = ker(M + I)`:
//!
//! * `r = dim_F2 Fix / (M + I) Z^m`
//! * `s = dim_F2 Anti / (M - I) Z^m`
//! * `k = dim_F2 Z^m / (Fix + Anti)`
//!
//! The conjugator is built from lifts `z_1..z_k` of a basis of
//! `Z^m / (Fix + Anti)`, corrected so that the vectors `z_i + M z_i` span a
//! pure sublattice of `Fix` (and `z_i - M z_i` one of `Anti`); the +1 and -1
//! blocks are complements of those spans.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{kernel_lattice, smith_normal_form, IntMatrix, LatticeBasis, LatticeError};

/// The block shape `(k, r, s)` of `A(k, r, s)`, with `m = 2k + r + s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalInvolution {
    pub k: usize,
    pub r: usize,
    pub s: usize,
}

impl CanonicalInvolution {
    pub fn new(k: usize, r: usize, s: usize) -> Self {
        CanonicalInvolution { k, r, s }
    }

    pub fn dim(&self) -> usize {
        2 * self.k + self.r + self.s
    }

    /// All shapes with `2k + r + s == m`, ordered by `(k, r, s)` descending in `k` then `r`.
    pub fn all_of_dim(m: usize) -> Vec<CanonicalInvolution> {
        let mut out = Vec::new();
        for k in (0..=m / 2).rev() {
            let rest = m - 2 * k;
            for r in (0..=rest).rev() {
                out.push(CanonicalInvolution::new(k, r, rest - r));
            }
        }
        out
    }

    /// 0-based coordinates in the `-I_s` block.
    pub fn minus_block(&self) -> std::ops::Range<usize> {
        2 * self.k + self.r..self.dim()
    }

    /// 0-based coordinates in the `I_r` block.
    pub fn plus_block(&self) -> std::ops::Range<usize> {
        2 * self.k..2 * self.k + self.r
    }

    /// 0-based coordinate pairs of the swap blocks.
    pub fn swap_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        (0..self.k).map(|i| (2 * i, 2 * i + 1))
    }

    pub fn matrix(&self) -> IntMatrix {
        let m = self.dim();
        let mut a = IntMatrix::zeros(m, m);
        for (i, j) in self.swap_pairs() {
            a[(i, j)] = BigInt::one();
            a[(j, i)] = BigInt::one();
        }
        for i in self.plus_block() {
            a[(i, i)] = BigInt::one();
        }
        for i in self.minus_block() {
            a[(i, i)] = -BigInt::one();
        }
        a
    }

    /// Returns the shape if `m` is literally `A(k, r, s)` for some shape.
    pub fn recognize(m: &IntMatrix) -> Option<CanonicalInvolution> {
        if !m.is_square() {
            return None;
        }
        let n = m.rows();
        let entry = |i: usize, j: usize| m[(i, j)].to_i64();
        let mut i = 0;
        let mut k = 0;
        while i + 1 < n
            && entry(i, i) == Some(0)
            && entry(i, i + 1) == Some(1)
            && entry(i + 1, i) == Some(1)
            && entry(i + 1, i + 1) == Some(0)
        {
            k += 1;
            i += 2;
        }
        let mut r = 0;
        while i < n && entry(i, i) == Some(1) {
            r += 1;
            i += 1;
        }
        let mut s = 0;
        while i < n && entry(i, i) == Some(-1) {
            s += 1;
            i += 1;
        }
        let shape = CanonicalInvolution::new(k, r, s);
        (i == n && shape.matrix() == *m).then_some(shape)
    }
}

fn check_involution(m: &IntMatrix) -> Result<(), LatticeError> {
    if !m.is_square() {
        return Err(LatticeError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !(m * m).is_identity() {
        return Err(LatticeError::NotInvolution);
    }
    let det = m.det();
    if !det.abs().is_one() {
        return Err(LatticeError::NotUnimodular { det: det.to_string() });
    }
    Ok(())
}

struct Eigenlattices {
    fix: LatticeBasis,
    anti: LatticeBasis,
}

fn eigenlattices(m: &IntMatrix) -> Eigenlattices {
    let id = IntMatrix::identity(m.rows());
    Eigenlattices {
        fix: kernel_lattice(&m.sub(&id)),
        anti: kernel_lattice(&m.add(&id)),
    }
}

/// Number of invariant factors equal to 2 of `basis / image`, where `image`
/// is spanned by the columns of `map` (all of which must lie in `basis`).
fn two_rank_of_quotient(basis: &LatticeBasis, map: &IntMatrix) -> Result<usize, LatticeError> {
    let coords: Vec<Vec<BigInt>> = map
        .columns()
        .iter()
        .map(|c| {
            basis.coordinates(c).ok_or_else(|| {
                LatticeError::CanonicalizationFailed("image not contained in eigenlattice".into())
            })
        })
        .collect::<Result<_, _>>()?;
    let c = IntMatrix::from_columns(basis.dim(), &coords);
    let snf = smith_normal_form(&c);
    if snf.rank != basis.dim() {
        return Err(LatticeError::CanonicalizationFailed(
            "eigenlattice quotient is infinite".into(),
        ));
    }
    let two = BigInt::from(2);
    let mut count = 0;
    for d in snf.invariant_factors() {
        if d == two {
            count += 1;
        } else if !d.is_one() {
            return Err(LatticeError::CanonicalizationFailed(format!(
                "unexpected invariant factor {d}"
            )));
        }
    }
    Ok(count)
}

/// Conjugacy invariants `(k, r, s)` of an integral involution.
pub fn involution_invariants(m: &IntMatrix) -> Result<CanonicalInvolution, LatticeError> {
    check_involution(m)?;
    let n = m.rows();
    let id = IntMatrix::identity(n);
    let eig = eigenlattices(m);
    let r = two_rank_of_quotient(&eig.fix, &m.add(&id))?;
    let s = two_rank_of_quotient(&eig.anti, &m.sub(&id))?;
    if r + s > n || (n - r - s) % 2 != 0 {
        return Err(LatticeError::CanonicalizationFailed(format!(
            "inconsistent invariants r={r} s={s} for m={n}"
        )));
    }
    let shape = CanonicalInvolution::new((n - r - s) / 2, r, s);
    let trace = m.trace();
    if trace != BigInt::from(r as i64 - s as i64)
        || eig.fix.dim() != shape.k + r
        || eig.anti.dim() != shape.k + s
    {
        return Err(LatticeError::CanonicalizationFailed(format!(
            "invariants {shape:?} contradict trace {trace} or eigenlattice ranks"
        )));
    }
    Ok(shape)
}

/// Shape and a unimodular `P` with `P^-1 M P = A(k, r, s)`, verified before return.
pub fn canonicalize_involution(
    m: &IntMatrix,
) -> Result<(CanonicalInvolution, IntMatrix), LatticeError> {
    let shape = involution_invariants(m)?;
    let target = shape.matrix();
    match constructive_conjugator(m, shape) {
        Ok(p) if conjugates(m, &p, &target) => Ok((shape, p)),
        other => {
            let reason = match other {
                Ok(_) => "constructed conjugator failed verification".to_string(),
                Err(e) => e.to_string(),
            };
            if m.rows() <= 3 {
                if let Some(p) = search_conjugator(m, &target, 3) {
                    return Ok((shape, p));
                }
            }
            Err(LatticeError::CanonicalizationFailed(reason))
        }
    }
}

/// `P` unimodular and `M P == P A`.
pub fn conjugates(m: &IntMatrix, p: &IntMatrix, a: &IntMatrix) -> bool {
    p.is_unimodular() && m * p == p * a
}

fn constructive_conjugator(
    m: &IntMatrix,
    shape: CanonicalInvolution,
) -> Result<IntMatrix, LatticeError> {
    let n = m.rows();
    let eig = eigenlattices(m);
    let k = shape.k;

    // Lifts of a basis of Z^n / (Fix + Anti): columns of U^-1 where D has a 2.
    let mut columns = eig.fix.vectors().to_vec();
    columns.extend_from_slice(eig.anti.vectors());
    let both = IntMatrix::from_columns(n, &columns);
    let snf = smith_normal_form(&both);
    let u_inv = snf.u.inverse().ok_or_else(|| {
        LatticeError::CanonicalizationFailed("left Smith transform not invertible".into())
    })?;
    let two = BigInt::from(2);
    let mut zs: Vec<Vec<BigInt>> = (0..snf.rank)
        .filter(|&i| snf.d[(i, i)] == two)
        .map(|i| u_inv.column(i))
        .collect();
    if zs.len() != k {
        return Err(LatticeError::CanonicalizationFailed(format!(
            "found {} swap generators, expected {k}",
            zs.len()
        )));
    }

    let mz = |z: &Vec<BigInt>| m.mul_vec(z);
    let plus: Vec<Vec<BigInt>> = zs.iter().map(|z| add(z, &mz(z))).collect();
    let minus: Vec<Vec<BigInt>> = zs.iter().map(|z| sub(z, &mz(z))).collect();

    let (fix_shift, fix_rest) = purify(&eig.fix, &plus)?;
    let (anti_shift, anti_rest) = purify(&eig.anti, &minus)?;
    for (i, z) in zs.iter_mut().enumerate() {
        *z = add(&add(z, &fix_shift[i]), &anti_shift[i]);
    }

    let mut cols = Vec::with_capacity(n);
    for z in &zs {
        cols.push(z.clone());
        cols.push(mz(z));
    }
    cols.extend(fix_rest);
    cols.extend(anti_rest);
    Ok(IntMatrix::from_columns(n, &cols))
}

/// Given vectors `w_i` in `basis` that are independent modulo `2 * basis`,
/// returns shifts `t_i` in `basis` such that the vectors `w_i + 2 t_i` extend
/// to a basis of `basis`, together with the completing vectors.
///
/// Returned shifts are halved: `t_i` is added to `z_i`, which moves
/// `z_i + M z_i` (or `z_i - M z_i`) by `2 t_i`.
#[allow(clippy::type_complexity)]
fn purify(
    basis: &LatticeBasis,
    ws: &[Vec<BigInt>],
) -> Result<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>), LatticeError> {
    let f = basis.dim();
    let coords: Vec<Vec<BigInt>> = ws
        .iter()
        .map(|w| {
            basis.coordinates(w).ok_or_else(|| {
                LatticeError::CanonicalizationFailed("block vector outside eigenlattice".into())
            })
        })
        .collect::<Result<_, _>>()?;
    let reduced: Vec<Vec<bool>> = coords
        .iter()
        .map(|c| c.iter().map(|x| x.is_odd()).collect())
        .collect();
    let lift = lift_mod2_basis(f, &reduced).ok_or_else(|| {
        LatticeError::CanonicalizationFailed("block vectors dependent modulo 2".into())
    })?;
    let b = basis.matrix();
    let mut shifts = Vec::with_capacity(ws.len());
    for (i, c) in coords.iter().enumerate() {
        let target = lift.column(i);
        let half: Vec<BigInt> = target
            .iter()
            .zip(c)
            .map(|(t, x)| {
                let (q, r) = (t - x).div_rem(&BigInt::from(2));
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        shifts.push(b.mul_vec(&half));
    }
    let rest = (ws.len()..f).map(|j| b.mul_vec(&lift.column(j))).collect();
    Ok((shifts, rest))
}

/// A unimodular `n x n` integer matrix whose first columns reduce modulo 2 to
/// `prefix`, or `None` if `prefix` is dependent over the 2-element field.
pub fn lift_mod2_basis(n: usize, prefix: &[Vec<bool>]) -> Option<IntMatrix> {
    // Complete the prefix with standard basis vectors.
    let mut cols: Vec<Vec<bool>> = Vec::with_capacity(n);
    for c in prefix {
        assert_eq!(c.len(), n);
        if !independent_with(&cols, c) {
            return None;
        }
        cols.push(c.clone());
    }
    for j in 0..n {
        let e: Vec<bool> = (0..n).map(|i| i == j).collect();
        if cols.len() < n && independent_with(&cols, &e) {
            cols.push(e);
        }
    }
    debug_assert_eq!(cols.len(), n);

    // Row-reduce G to I over F2, recording the operations; replaying their
    // integer inverses in reverse on I gives a unimodular lift of G.
    enum Op {
        Swap(usize, usize),
        Add { target: usize, source: usize },
    }
    let mut g: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    let mut ops = Vec::new();
    for c in 0..n {
        let p = (c..n).find(|&r| g[r][c])?;
        if p != c {
            g.swap(p, c);
            ops.push(Op::Swap(p, c));
        }
        for r in 0..n {
            if r != c && g[r][c] {
                for j in 0..n {
                    g[r][j] ^= g[c][j];
                }
                ops.push(Op::Add { target: r, source: c });
            }
        }
    }
    let mut y = IntMatrix::identity(n);
    let minus_one = -BigInt::one();
    for op in ops.iter().rev() {
        match *op {
            Op::Swap(a, b) => y.swap_rows(a, b),
            Op::Add { target, source } => y.add_row_multiple(target, source, &minus_one),
        }
    }
    Some(y)
}

fn independent_with(cols: &[Vec<bool>], v: &[bool]) -> bool {
    let mut rows: Vec<Vec<bool>> = cols.to_vec();
    rows.push(v.to_vec());
    f2_rank(rows) == cols.len() + 1
}

fn f2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] {
                    let pivot = rows[rank].clone();
                    for (x, y) in rows[r].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Exhaustive search over conjugators with entries in `[-bound, bound]`.
pub(crate) fn search_conjugator(m: &IntMatrix, a: &IntMatrix, bound: i64) -> Option<IntMatrix> {
    let n = m.rows();
    let cells = n * n;
    let width = (2 * bound + 1) as u64;
    let total = width.checked_pow(cells as u32)?;
    for code in 0..total {
        let mut c = code;
        let mut p = IntMatrix::zeros(n, n);
        for idx in 0..cells {
            p[(idx / n, idx % n)] = BigInt::from((c % width) as i64 - bound);
            c /= width;
        }
        if conjugates(m, &p, a) {
            return Some(p);
        }
    }
    None
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
