//! Free actions of finite groups on the manifolds with infinite fundamental
//! group, found as normal subgroups `N` of a base group `π` with `π / N` finite.
//!
//! A finite `G` acting freely on `M` with `M / G` of type `B` gives an
//! extension `1 → π₁(M) → π₁(B) → G → 1`, and both groups carry the
//! orientation of the action on `Σ(2n)`. So the actions are exactly the
//! normal subgroups of the four base groups whose own type, with the
//! restricted orientation, is that of `M`.
//!
//! Within `Z ⊕ Z/2` the cyclic subgroups of trivial orientation are the
//! `⟨(m, 0)⟩`, with quotient `Z/m ⊕ Z/2`. This is cyclic only for odd `m`,
//! so from `S^1 x S^{2n}` to `S^1 x RP^{2n}` the cyclic groups of order
//! divisible by four never occur.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::ambient::{candidate_subgroups, AmbientElement, AmbientShape, Subgroup};
use super::quotient::{FiniteGroupLabel, FiniteQuotient, QuotientStats};
use super::{classify_vc, ClassifyError, ManifoldLabel, VCGroupSpec, VcShape};
use crate::Parallelism;

pub const DEFAULT_INDEX_BOUND: u64 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverOptions {
    pub index_bound: u64,
    pub parallelism: Parallelism,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            index_bound: DEFAULT_INDEX_BOUND,
            parallelism: Parallelism::default(),
        }
    }
}

/// One covering action: `group` acts freely on the cover with orbit space `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverRow {
    pub group: FiniteGroupLabel,
    pub base: ManifoldLabel,
    pub index: u64,
    /// A subgroup of `π₁(base)` realizing the row.
    pub subgroup: Subgroup,
    pub stats: QuotientStats,
}

impl CoverRow {
    pub fn to_json(&self) -> Value {
        json!({ "group": self.group.to_json(), "base": self.base.name(), "index": self.index })
    }

    fn key(&self) -> (u64, FiniteGroupLabel, ManifoldLabel) {
        (self.index, self.group, self.base)
    }
}

/// A base orbit space with its fundamental group and orientation.
#[derive(Clone, Copy, Debug)]
struct Base {
    label: ManifoldLabel,
    shape: AmbientShape,
    phi_z: bool,
    phi_t: bool,
}

const BASES: [Base; 4] = [
    Base { label: ManifoldLabel::S1xS2n, shape: AmbientShape::Z, phi_z: false, phi_t: false },
    Base { label: ManifoldLabel::S1twistS2n, shape: AmbientShape::Z, phi_z: true, phi_t: false },
    Base { label: ManifoldLabel::S1xRP2n, shape: AmbientShape::ZxZ2, phi_z: false, phi_t: true },
    Base { label: ManifoldLabel::RPsharpRP, shape: AmbientShape::Dinf, phi_z: false, phi_t: true },
];

impl Base {
    fn orientation(&self, a: AmbientElement) -> u8 {
        let z = u8::from(self.phi_z) * u8::from(a.t.rem_euclid(2) == 1);
        let t = u8::from(self.phi_t && a.flip);
        (z + t) % 2
    }

    /// Isomorphism type of `N` together with the orientation restricted to it.
    fn restrict(&self, n: &Subgroup) -> VCGroupSpec {
        let tr = self.orientation(AmbientElement::translation(n.period));
        match (n.shape, n.offset) {
            (_, None) => VCGroupSpec::new(VcShape::Z, Some(tr), None),
            (AmbientShape::ZxZ2, Some(0)) => {
                VCGroupSpec::new(VcShape::ZxZ2, Some(tr), Some(self.orientation(AmbientElement::flip(0))))
            }
            // c = period / 2: N is infinite cyclic on (c, 1).
            (AmbientShape::ZxZ2, Some(c)) => {
                VCGroupSpec::new(VcShape::Z, Some(self.orientation(AmbientElement::flip(c))), None)
            }
            (_, Some(c)) => {
                VCGroupSpec::new(VcShape::ZsemiZ2, Some(tr), Some(self.orientation(AmbientElement::flip(c))))
            }
        }
    }
}

fn row_for(base: &Base, n: &Subgroup, cover: ManifoldLabel) -> Result<Option<CoverRow>, ClassifyError> {
    if n.index() < 2 || !n.is_normal() {
        return Ok(None);
    }
    let label = classify_vc(&base.restrict(n)).label();
    debug_assert!(label.is_some(), "a subgroup of a realizable group is realizable");
    if label != Some(cover) {
        return Ok(None);
    }
    let q = FiniteQuotient::enumerate(n, n.index() as usize)?;
    let stats = q.stats();
    debug_assert_eq!(stats.order as i64, n.index());
    Ok(Some(CoverRow {
        group: q.classify()?,
        base: base.label,
        index: stats.order,
        subgroup: *n,
        stats,
    }))
}

pub fn enumerate_covers(cover: ManifoldLabel, max_index: u64) -> Result<Vec<CoverRow>, ClassifyError> {
    enumerate_covers_with(cover, max_index, CoverOptions::default())
}

/// Every `(G, base, |G|)` with `G` finite acting freely on `cover` and
/// `|G| <= max_index`, sorted by index then label.
pub fn enumerate_covers_with(
    cover: ManifoldLabel,
    max_index: u64,
    options: CoverOptions,
) -> Result<Vec<CoverRow>, ClassifyError> {
    if cover == ManifoldLabel::RP2n {
        return Err(ClassifyError::UnsupportedCover(format!(
            "{cover}: its fundamental group is finite"
        )));
    }
    if max_index > options.index_bound {
        return Err(ClassifyError::IndexBoundExceeded {
            requested: max_index,
            bound: options.index_bound,
        });
    }
    let jobs: Vec<(Base, Subgroup)> = BASES
        .iter()
        .flat_map(|b| candidate_subgroups(b.shape, max_index as i64).into_iter().map(move |n| (*b, n)))
        .collect();
    let run = |(b, n): &(Base, Subgroup)| row_for(b, n, cover);
    #[cfg(feature = "parallel")]
    let found: Vec<_> = if options.parallelism.is_parallel() {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let found: Vec<_> = jobs.iter().map(run).collect();

    let mut rows: Vec<CoverRow> = found.into_iter().filter_map(Result::transpose).collect::<Result<_, _>>()?;
    rows.sort_by(|a, b| a.key().cmp(&b.key()).then(a.subgroup.cmp(&b.subgroup)));
    rows.dedup_by(|a, b| a.key() == b.key());
    Ok(rows)
}
