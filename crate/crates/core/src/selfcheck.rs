//! The acceptance suites, runnable from the library and the CLI.
//!
//! Each check returns a [`CriterionResult`] with a one-line, timing-free
//! summary, so two runs produce byte-identical logs.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::classify::{
    candidate_subgroups, classify_vc, classify_vc_via_realize, enumerate_covers, subgroups_by_closure,
    AmbientShape, FiniteGroupLabel, ManifoldLabel, VCGroupSpec, VcShape,
};
use crate::intlat::{canonicalize_involution, conjugates, involution_invariants, CanonicalInvolution, IntMatrix};
use crate::realize::{find_witness, realizable_canonical, realizable_general, verify_action_model};
use crate::twistgrp::{free_product_with_z2, OrientationHom, TwistedGroup};

pub const SELFCHECK_SEED: u64 = 20_241_014;
pub const ACTION_SAMPLES: usize = 1000;
pub const ACTION_MAX_LENGTH: usize = 4;
pub const CONJUGATE_SAMPLES: usize = 200;

const GOLDEN_COVERS: &str = include_str!("../data/covers_max48.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!("[{mark}] criterion {} {}: {}", self.id, self.name, self.detail)
    }
}

/// Standard `θ` and every compatible orientation, for all block shapes of rank 1 to `max_rank`.
pub fn canonical_fixtures(max_rank: usize) -> Vec<(CanonicalInvolution, TwistedGroup, OrientationHom)> {
    let mut out = Vec::new();
    for m in 1..=max_rank {
        for shape in CanonicalInvolution::all_of_dim(m) {
            let g = TwistedGroup::standard(shape);
            for phi in OrientationHom::all(m) {
                if g.validate_orientation(&phi) {
                    out.push((shape, g.clone(), phi));
                }
            }
        }
    }
    out
}

fn vanishes_on_minus_block(shape: CanonicalInvolution, phi: &OrientationHom) -> bool {
    shape.minus_block().all(|l| !phi.values()[l])
}

fn describe(shape: CanonicalInvolution, phi: &OrientationHom) -> String {
    format!("A({},{},{}) phi={:?}", shape.k, shape.r, shape.s, phi.bits())
}

pub fn canonical_agreement() -> CriterionResult {
    let fixtures = canonical_fixtures(3);
    let mut failures = Vec::new();
    for (shape, g, phi) in &fixtures {
        let expected = vanishes_on_minus_block(*shape, phi);
        let canonical = realizable_canonical(g, phi).map(|v| v.is_realizable());
        let general = realizable_general(g, phi).map(|d| d.verdict.is_realizable());
        let searched = find_witness(g, phi, 4).is_none();
        if canonical != Ok(expected) || general != Ok(expected) || searched != expected {
            failures.push(describe(*shape, phi));
        }
    }
    summarize(
        1,
        "block-form realizability",
        fixtures.len(),
        failures,
        "canonical, general and witness search agree with the sign rule on",
    )
}

fn summarize(id: u8, name: &'static str, total: usize, failures: Vec<String>, what: &str) -> CriterionResult {
    let passed = failures.is_empty();
    let detail = if passed {
        format!("{what} {total}/{total}")
    } else {
        format!("{what} {}/{total}; first failure {}", total - failures.len(), failures[0])
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
    }
}

/// `Q` and `Q^-1` for a product of up to `max_factors` elementary matrices
/// `I + c E_ij` with `0 < |c| <= bound`.
pub fn random_elementary_product(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_factors: usize,
    bound: i64,
) -> (IntMatrix, IntMatrix) {
    let mut q = IntMatrix::identity(n);
    let mut q_inv = IntMatrix::identity(n);
    if n < 2 {
        return (q, q_inv);
    }
    for _ in 0..rng.gen_range(0..=max_factors) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut c = rng.gen_range(1..=bound);
        if rng.gen() {
            c = -c;
        }
        // q <- q (I + c E_ij), q_inv <- (I - c E_ij) q_inv.
        q.add_col_multiple(j, i, &BigInt::from(c));
        q_inv.add_row_multiple(i, j, &BigInt::from(-c));
    }
    (q, q_inv)
}

pub fn canonical_form_round_trip() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(SELFCHECK_SEED);
    let mut failures = Vec::new();
    for sample in 0..CONJUGATE_SAMPLES {
        let m = rng.gen_range(1..=6);
        let shapes = CanonicalInvolution::all_of_dim(m);
        let shape = shapes[rng.gen_range(0..shapes.len())];
        let (q, q_inv) = random_elementary_product(&mut rng, m, 12, 2);
        let a = shape.matrix();
        let conj = &(&q * &a) * &q_inv;
        let ok = involution_invariants(&conj) == Ok(shape)
            && matches!(canonicalize_involution(&conj), Ok((s, p)) if s == shape && conjugates(&conj, &p, &a));
        if !ok {
            failures.push(format!("sample {sample} {shape:?}"));
        }
    }
    summarize(
        2,
        "canonical form round trip",
        CONJUGATE_SAMPLES,
        failures,
        "random conjugates recovered with a verified conjugator:",
    )
}

/// Orbit-space table for every shape and orientation choice.
pub fn expected_orbit_space(spec: &VCGroupSpec) -> Option<ManifoldLabel> {
    let z = spec.phi_z == Some(1);
    let t = spec.phi_t != Some(0);
    match spec.shape {
        VcShape::Z2 => t.then_some(ManifoldLabel::RP2n),
        VcShape::Z => Some(if z { ManifoldLabel::S1twistS2n } else { ManifoldLabel::S1xS2n }),
        VcShape::ZxZ2 => t.then_some(ManifoldLabel::S1xRP2n),
        VcShape::ZsemiZ2 => (t && !z).then_some(ManifoldLabel::RPsharpRP),
    }
}

pub fn orbit_space_table() -> CriterionResult {
    let specs = VCGroupSpec::all();
    let mut failures = Vec::new();
    for spec in &specs {
        let expected = expected_orbit_space(spec);
        if classify_vc(spec).label() != expected || classify_vc_via_realize(spec) != expected {
            failures.push(format!("{spec:?}"));
        }
    }
    let realizable = specs.iter().filter(|s| expected_orbit_space(s).is_some()).count();
    let what = format!("{realizable} realizable and {} rejected inputs match:", specs.len() - realizable);
    summarize(3, "orbit-space table", specs.len(), failures, &what)
}

type RowKey = (u64, FiniteGroupLabel, ManifoldLabel);

/// Rows of the checked-in table of covering actions, by cover label.
pub fn golden_covers() -> Vec<(ManifoldLabel, BTreeSet<RowKey>)> {
    let v: Value = serde_json::from_str(GOLDEN_COVERS).expect("golden table is valid JSON");
    let covers = v["covers"].as_object().expect("covers object");
    covers
        .iter()
        .map(|(cover, rows)| {
            let cover: ManifoldLabel = cover.parse().expect("known label");
            let rows = rows
                .as_array()
                .expect("row list")
                .iter()
                .map(|r| {
                    let group = FiniteGroupLabel::from_parts(
                        r["group"]["family"].as_str().expect("family"),
                        r["group"]["k"].as_u64().expect("k"),
                    )
                    .expect("known family");
                    let base: ManifoldLabel = r["base"].as_str().expect("base").parse().expect("known label");
                    (r["index"].as_u64().expect("index"), group, base)
                })
                .collect();
            (cover, rows)
        })
        .collect()
}

pub fn golden_max_index() -> u64 {
    let v: Value = serde_json::from_str(GOLDEN_COVERS).expect("golden table is valid JSON");
    v["max_index"].as_u64().expect("max_index")
}

pub fn covers_table() -> CriterionResult {
    let max_index = golden_max_index();
    let mut failures = Vec::new();
    let mut total = 0;
    for (cover, expected) in golden_covers() {
        let got: BTreeSet<RowKey> = match enumerate_covers(cover, max_index) {
            Ok(rows) => rows.iter().map(|r| (r.index, r.group, r.base)).collect(),
            Err(e) => {
                failures.push(format!("{cover}: {e}"));
                continue;
            }
        };
        total += expected.len();
        if got != expected {
            let missing = expected.difference(&got).count();
            let extra = got.difference(&expected).count();
            failures.push(format!("{cover}: {missing} missing, {extra} unexpected"));
        }
        if cover == ManifoldLabel::S1xS2n
            && got
                .iter()
                .any(|(_, g, b)| *b == ManifoldLabel::S1xRP2n && matches!(g, FiniteGroupLabel::Cyclic(k) if k % 4 == 0))
        {
            failures.push("cyclic group of order 4k over S1xRP2n".into());
        }
    }
    for shape in [AmbientShape::Z, AmbientShape::ZxZ2, AmbientShape::Dinf] {
        if candidate_subgroups(shape, 12) != subgroups_by_closure(shape, 12, 12, 120) {
            failures.push(format!("closed-form subgroups of {shape:?} disagree with closure search"));
        }
    }
    let passed = failures.is_empty();
    CriterionResult {
        id: 4,
        name: "covering actions",
        passed,
        detail: if passed {
            format!("{total} golden rows reproduced up to index {max_index}; no Cyclic(4k) over S1xRP2n; subgroup closure agrees to index 12")
        } else {
            failures.join("; ")
        },
    }
}

/// Standard factors of rank at most two, including the rank-zero Z/2.
pub fn free_product_factors() -> Vec<TwistedGroup> {
    (0..=2)
        .flat_map(CanonicalInvolution::all_of_dim)
        .map(TwistedGroup::standard)
        .collect()
}

pub fn free_product_structure() -> CriterionResult {
    let factors = free_product_factors();
    let mut lists: Vec<Vec<usize>> = Vec::new();
    for len in 1..=3u32 {
        for code in 0..factors.len().pow(len) {
            let mut c = code;
            let list = (0..len)
                .map(|_| {
                    let i = c % factors.len();
                    c /= factors.len();
                    i
                })
                .collect();
            lists.push(list);
        }
    }
    let mut failures = Vec::new();
    for list in &lists {
        let fs: Vec<TwistedGroup> = list.iter().map(|&i| factors[i].clone()).collect();
        let Ok((g, _)) = free_product_with_z2(&fs) else {
            failures.push(format!("{list:?}: construction failed"));
            continue;
        };
        let n = fs.len();
        let rank = n - 1 + fs.iter().map(TwistedGroup::rank).sum::<usize>();
        let mut blocks: Vec<IntMatrix> = fs.iter().map(TwistedGroup::abelianization_matrix).collect();
        if n > 1 {
            blocks.push(IntMatrix::identity(n - 1).neg());
        }
        let ok = g.theta().is_involution()
            && g.rank() == rank
            && g.abelianization_matrix() == IntMatrix::block_diagonal(&blocks);
        if !ok {
            failures.push(format!("{list:?}"));
        }
    }
    summarize(
        5,
        "free product with Z2",
        lists.len(),
        failures,
        "involution, rank formula and block structure hold for factor lists:",
    )
}

pub fn action_model() -> CriterionResult {
    let fixtures = canonical_fixtures(3);
    let mut failures = Vec::new();
    for (shape, g, phi) in &fixtures {
        let realizable = vanishes_on_minus_block(*shape, phi);
        let ok = match verify_action_model(g, phi, ACTION_SAMPLES, ACTION_MAX_LENGTH, SELFCHECK_SEED) {
            Ok(r) if realizable => r.passed,
            Ok(r) => r.axiom_failures.is_empty() && !r.freeness_failures.is_empty(),
            Err(_) => false,
        };
        if !ok {
            failures.push(describe(*shape, phi));
        }
    }
    let what = format!("{ACTION_SAMPLES}-sample action model matches the verdict on");
    summarize(6, "action model", fixtures.len(), failures, &what)
}

pub fn all_criteria() -> Vec<CriterionResult> {
    vec![
        canonical_agreement(),
        canonical_form_round_trip(),
        orbit_space_table(),
        covers_table(),
        free_product_structure(),
        action_model(),
    ]
}

/// Runs every criterion and renders the log. The flag is true when all pass.
pub fn run_selfcheck() -> (String, bool) {
    let results = all_criteria();
    let mut log = String::new();
    for r in &results {
        log.push_str(&r.line());
        log.push('\n');
    }
    let passed = results.iter().all(|r| r.passed);
    log.push_str(&format!(
        "selfcheck: {}/{} criteria passed (seed {SELFCHECK_SEED})\n",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    ));
    (log, passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_counts() {
        assert_eq!(canonical_fixtures(1).len(), 4);
        assert_eq!(canonical_fixtures(3).len(), 58);
        assert_eq!(free_product_factors().len(), 7);
    }

    #[test]
    fn elementary_products_are_inverse_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=6 {
            let (q, qi) = random_elementary_product(&mut rng, n, 12, 2);
            assert!((&q * &qi).is_identity());
        }
    }

    #[test]
    fn golden_table_loads() {
        let g = golden_covers();
        assert_eq!(g.len(), 4);
        assert_eq!(golden_max_index(), 48);
    }
}
