//! Realizability of a pair `(θ, φ)`.
//!
//! The pair fails to be realizable exactly when some `g ∈ F` satisfies
//! `θ(g) = g^-1` and `φ(g) = 1`: then `(g, 1)` is an orientation-preserving
//! involution, which cannot act freely on an even-dimensional sphere.
//!
//! The general decider is a lattice test. Any such `g` abelianizes into
//! `ker(ρ(θ) + I)` and `φ` factors through the abelianization, so if `φ̄`
//! is even on that kernel no witness can exist. Conversely, in a basis where
//! `θ` takes its standard block form the kernel is spanned by the inverted
//! generators and the differences of swapped pairs. `φ̄` is automatically
//! even on the latter, so an odd value means some inverted generator has
//! `φ = 1`, and that generator is a witness. Since the kernel test does not
//! depend on the basis, it decides every finite-rank case. A negative answer
//! is still only reported together with an explicit witness found by search.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::freeword::{Letter, Word};
use crate::intlat::{kernel_lattice, CanonicalInvolution, IntMatrix, LatticeBasis};
use crate::twistgrp::{GroupError, OrientationHom, SemidirectElement, TwistedGroup};
use crate::Parallelism;

pub const DEFAULT_WITNESS_CAP: usize = 16;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("abelianized theta is not literally a block matrix A(k, r, s)")]
    NotCanonical,
    #[error("witness length bound must be at least 1")]
    InvalidBudget,
}

/// A word `g` with `θ(g) = g^-1` and `φ(g) = 1`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness(Word);

impl Witness {
    pub fn new(group: &TwistedGroup, phi: &OrientationHom, g: Word) -> Option<Witness> {
        is_witness(group, phi, &g).then_some(Witness(g))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

fn is_witness(group: &TwistedGroup, phi: &OrientationHom, g: &Word) -> bool {
    g.rank() == group.rank() && phi.on_word(g) && group.theta().apply_unchecked(g) == g.invert()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Realizable,
    NotRealizable(Witness),
    /// The lattice test found an obstruction but no witness turned up within the budget.
    Unknown { budget_used: usize },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Realizable => "realizable",
            Verdict::NotRealizable(_) => "not_realizable",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            Verdict::NotRealizable(w) => Some(w.word()),
            _ => None,
        }
    }

    pub fn is_realizable(&self) -> bool {
        matches!(self, Verdict::Realizable)
    }
}

/// Output of [`realizable_general`]: the verdict plus its lattice evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    /// Basis of `ker(ρ(θ) + I)`.
    pub kernel_basis: LatticeBasis,
    /// Largest witness length searched, 0 when no search was needed.
    pub budget: usize,
}

impl Decision {
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "verdict": self.verdict.name(),
            "kernel_basis": self.kernel_basis.vectors().iter().map(|v| crate::json::vector(v)).collect::<Vec<_>>(),
            "budget": self.budget,
        });
        if let Some(w) = self.verdict.witness() {
            out["witness"] = Value::String(w.to_string());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Hard cap on the witness length.
    pub cap: usize,
    pub parallelism: Parallelism,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: DEFAULT_WITNESS_CAP,
            parallelism: Parallelism::default(),
        }
    }
}

/// Fast path for `θ` whose abelianization is exactly `A(k, r, s)`.
pub fn realizable_canonical(group: &TwistedGroup, phi: &OrientationHom) -> Result<Verdict, RealizeError> {
    group.check_orientation(phi)?;
    let shape = CanonicalInvolution::recognize(&group.abelianization_matrix())
        .ok_or(RealizeError::NotCanonical)?;
    let mut obstructed = false;
    for l in shape.minus_block() {
        if !phi.values()[l] {
            continue;
        }
        obstructed = true;
        let x = Word::generator(group.rank(), l + 1).expect("in range");
        if let Some(w) = Witness::new(group, phi, x) {
            return Ok(Verdict::NotRealizable(w));
        }
    }
    if !obstructed {
        return Ok(Verdict::Realizable);
    }
    Ok(realizable_general(group, phi)?.verdict)
}

pub fn realizable_general(group: &TwistedGroup, phi: &OrientationHom) -> Result<Decision, RealizeError> {
    realizable_general_with(group, phi, SearchOptions::default())
}

pub fn realizable_general_with(
    group: &TwistedGroup,
    phi: &OrientationHom,
    options: SearchOptions,
) -> Result<Decision, RealizeError> {
    if options.cap == 0 {
        return Err(RealizeError::InvalidBudget);
    }
    group.check_orientation(phi)?;
    let m = group.rank();
    let kernel = kernel_lattice(&group.abelianization_matrix().add(&IntMatrix::identity(m)));
    if !kernel.vectors().iter().any(|v| phi.on_vector(v)) {
        return Ok(Decision {
            verdict: Verdict::Realizable,
            kernel_basis: kernel,
            budget: 0,
        });
    }

    let searcher = Searcher::new(group, phi);
    let mut bound = (2 * group.theta().max_image_len()).max(1).min(options.cap);
    let mut done = 0;
    loop {
        for len in done + 1..=bound {
            if let Some(g) = searcher.search_length(len, options.parallelism) {
                let w = Witness::new(group, phi, g).expect("search returns verified words");
                return Ok(Decision {
                    verdict: Verdict::NotRealizable(w),
                    kernel_basis: kernel,
                    budget: bound,
                });
            }
        }
        if bound >= options.cap {
            return Ok(Decision {
                verdict: Verdict::Unknown { budget_used: bound },
                kernel_basis: kernel,
                budget: bound,
            });
        }
        done = bound;
        bound = (2 * bound).min(options.cap);
    }
}

/// First reduced word of length at most `max_length`, in length-lexicographic
/// order, with `θ(g) = g^-1` and `φ(g) = 1`.
pub fn find_witness(group: &TwistedGroup, phi: &OrientationHom, max_length: usize) -> Option<Word> {
    find_witness_with(group, phi, max_length, Parallelism::default())
}

pub fn find_witness_with(
    group: &TwistedGroup,
    phi: &OrientationHom,
    max_length: usize,
    parallelism: Parallelism,
) -> Option<Word> {
    if phi.len() != group.rank() {
        return None;
    }
    let searcher = Searcher::new(group, phi);
    (1..=max_length).find_map(|len| searcher.search_length(len, parallelism))
}

/// Exhaustive depth-first enumeration of reduced words of a fixed length.
///
/// Along each branch it tracks `(ρ(θ) + I) ḡ` and the parity of `φ̄ · ḡ`, so
/// the word-level test only runs on leaves that pass both necessary conditions.
struct Searcher<'a> {
    group: &'a TwistedGroup,
    phi: Vec<bool>,
    /// Column `i` of `ρ(θ) + I`.
    cols: Vec<Vec<i64>>,
}

struct Branch {
    codes: Vec<usize>,
    image: Vec<i64>,
    parity: bool,
}

impl Branch {
    fn push(&mut self, code: usize, s: &Searcher<'_>) {
        let i = code / 2;
        let sign = if code % 2 == 0 { 1 } else { -1 };
        for (x, c) in self.image.iter_mut().zip(&s.cols[i]) {
            *x += sign * c;
        }
        self.parity ^= s.phi[i];
        self.codes.push(code);
    }

    fn pop(&mut self, s: &Searcher<'_>) {
        let code = self.codes.pop().expect("nonempty");
        let i = code / 2;
        let sign = if code % 2 == 0 { 1 } else { -1 };
        for (x, c) in self.image.iter_mut().zip(&s.cols[i]) {
            *x -= sign * c;
        }
        self.parity ^= s.phi[i];
    }
}

impl<'a> Searcher<'a> {
    fn new(group: &'a TwistedGroup, phi: &OrientationHom) -> Self {
        let m = group.rank();
        let rho = group
            .abelianization_matrix()
            .add(&IntMatrix::identity(m))
            .to_i64_rows()
            .expect("exponent sums fit in i64");
        let cols = (0..m).map(|j| (0..m).map(|i| rho[i][j]).collect()).collect();
        Searcher {
            group,
            phi: phi.values().to_vec(),
            cols,
        }
    }

    fn alphabet(&self) -> usize {
        2 * self.group.rank()
    }

    fn prefixes(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..len.min(2) {
            let mut next = Vec::with_capacity(out.len() * self.alphabet());
            for p in &out {
                for c in 0..self.alphabet() {
                    if p.last() != Some(&(c ^ 1)) {
                        let mut q = p.clone();
                        q.push(c);
                        next.push(q);
                    }
                }
            }
            out = next;
        }
        out
    }

    fn search_length(&self, len: usize, parallelism: Parallelism) -> Option<Word> {
        if self.alphabet() == 0 || len == 0 {
            return None;
        }
        let prefixes = self.prefixes(len);
        let run = |prefix: &Vec<usize>| self.search_prefix(prefix, len);
        #[cfg(feature = "parallel")]
        if parallelism.is_parallel() {
            return prefixes.par_iter().find_map_first(run);
        }
        let _ = parallelism;
        prefixes.iter().find_map(run)
    }

    fn search_prefix(&self, prefix: &[usize], len: usize) -> Option<Word> {
        let mut branch = Branch {
            codes: Vec::with_capacity(len),
            image: vec![0; self.group.rank()],
            parity: false,
        };
        for &c in prefix {
            branch.push(c, self);
        }
        self.dfs(&mut branch, len - prefix.len())
    }

    fn dfs(&self, branch: &mut Branch, remaining: usize) -> Option<Word> {
        if remaining == 0 {
            return self.leaf(branch);
        }
        let last = branch.codes.last().copied();
        for c in 0..self.alphabet() {
            if last == Some(c ^ 1) {
                continue;
            }
            branch.push(c, self);
            let found = self.dfs(branch, remaining - 1);
            branch.pop(self);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn leaf(&self, branch: &Branch) -> Option<Word> {
        if !branch.parity || branch.image.iter().any(|&x| x != 0) {
            return None;
        }
        let letters = branch.codes.iter().map(|&c| Letter::from_code(c)).collect();
        let g = Word::from_reduced_unchecked(self.group.rank(), letters);
        (self.group.theta().apply_unchecked(&g) == g.invert()).then_some(g)
    }
}

/// Result of exercising the explicit action model on random samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionModelReport {
    pub samples: usize,
    pub seed: u64,
    pub max_length: usize,
    pub axiom_failures: Vec<String>,
    /// Words `g` for which `(g, 1)` is an orientation-preserving involution.
    pub freeness_failures: Vec<String>,
    pub passed: bool,
}

/// A point of the model: an orbit coordinate `t ∈ F` and a formal sign,
/// `true` meaning `-1`.
type Point = (Word, bool);

struct ActionModel<'a> {
    group: &'a TwistedGroup,
    phi: &'a OrientationHom,
}

impl ActionModel<'_> {
    /// `(g,0)∘(t,s) = (θ(g) t, sgn(g) s)` and `(g,1)∘(t,s) = (θ(g) θ(t), -sgn(g) s)`.
    fn act(&self, a: &SemidirectElement, p: &Point) -> Point {
        let theta = self.group.theta();
        let tg = theta.apply_unchecked(&a.word);
        let sign = p.1 ^ self.phi.on_word(&a.word);
        if a.flip {
            (tg.mul_unchecked(&theta.apply_unchecked(&p.0)), !sign)
        } else {
            (tg.mul_unchecked(&p.0), sign)
        }
    }

    fn fixed_point_system(&self, g: &Word) -> bool {
        g.mul_unchecked(&self.group.theta().apply_unchecked(g)).is_identity() && self.phi.on_word(g)
    }
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_length: usize) -> Word {
    if rank == 0 {
        return Word::identity(0);
    }
    let len = rng.gen_range(0..=max_length);
    let mut codes: Vec<usize> = Vec::with_capacity(len);
    while codes.len() < len {
        let c = rng.gen_range(0..2 * rank);
        if codes.last() != Some(&(c ^ 1)) {
            codes.push(c);
        }
    }
    Word::from_reduced_unchecked(rank, codes.into_iter().map(Letter::from_code).collect())
}

fn random_element(rng: &mut ChaCha8Rng, rank: usize, max_length: usize) -> SemidirectElement {
    SemidirectElement {
        word: random_word(rng, rank, max_length),
        flip: rng.gen(),
    }
}

fn show(a: &SemidirectElement) -> String {
    format!("({}, {})", a.word, u8::from(a.flip))
}

/// Outcome of one sample: composition failures and freeness violations.
type SampleResult = (Vec<String>, Vec<Word>);

fn run_sample(model: &ActionModel<'_>, seed: u64, index: usize, max_length: usize) -> SampleResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let m = model.group.rank();
    let a = random_element(&mut rng, m, max_length);
    let b = random_element(&mut rng, m, max_length);
    let p: Point = (random_word(&mut rng, m, max_length), rng.gen());
    let mut axioms = Vec::new();
    let mut free = Vec::new();

    if model.act(&a, &model.act(&b, &p)) != model.act(&model.group.mul_unchecked(&a, &b), &p) {
        axioms.push(format!("sample {index}: composition fails for a={} b={}", show(&a), show(&b)));
    }
    if model.act(&model.group.identity(), &p) != p {
        axioms.push(format!("sample {index}: identity moves the point"));
    }
    for c in [&a, &b] {
        if !c.flip {
            continue;
        }
        if model.act(c, &p) == p && !model.fixed_point_system(&c.word) {
            axioms.push(format!("sample {index}: {} fixes a point outside the fixed-point system", show(c)));
        }
        if model.fixed_point_system(&c.word) {
            free.push(c.word.clone());
        }
    }
    // (θ(t) t^-1, 1) fixes the orbit coordinate t, so it must reverse the sign.
    let theta = model.group.theta();
    let h = SemidirectElement {
        word: theta.apply_unchecked(&p.0).mul_unchecked(&p.0.invert()),
        flip: true,
    };
    let q = model.act(&h, &p);
    if q.0 != p.0 {
        axioms.push(format!("sample {index}: {} does not fix the orbit coordinate", show(&h)));
    } else if q.1 == p.1 {
        free.push(h.word);
    }
    (axioms, free)
}

pub fn verify_action_model(
    group: &TwistedGroup,
    phi: &OrientationHom,
    samples: usize,
    max_length: usize,
    seed: u64,
) -> Result<ActionModelReport, RealizeError> {
    verify_action_model_with(group, phi, samples, max_length, seed, Parallelism::default())
}

pub fn verify_action_model_with(
    group: &TwistedGroup,
    phi: &OrientationHom,
    samples: usize,
    max_length: usize,
    seed: u64,
    parallelism: Parallelism,
) -> Result<ActionModelReport, RealizeError> {
    group.check_orientation(phi)?;
    let model = ActionModel { group, phi };
    let run = |i: usize| run_sample(&model, seed, i, max_length);
    #[cfg(feature = "parallel")]
    let results: Vec<SampleResult> = if parallelism.is_parallel() {
        (0..samples).into_par_iter().map(run).collect()
    } else {
        (0..samples).map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<SampleResult> = {
        let _ = parallelism;
        (0..samples).map(run).collect()
    };

    let mut axiom_failures = Vec::new();
    let mut freeness: BTreeSet<Word> = BTreeSet::new();
    for (axioms, free) in results {
        axiom_failures.extend(axioms);
        freeness.extend(free);
    }
    if let Some(w) = find_witness_with(group, phi, max_length, parallelism) {
        freeness.insert(w);
    }
    let freeness_failures: Vec<String> = freeness.iter().map(ToString::to_string).collect();
    Ok(ActionModelReport {
        samples,
        seed,
        max_length,
        passed: axiom_failures.is_empty() && freeness_failures.is_empty(),
        axiom_failures,
        freeness_failures,
    })
}

/// `φ̄ · v (mod 2)` for each vector, as bits.
pub fn kernel_parities(phi: &OrientationHom, kernel: &LatticeBasis) -> Vec<bool> {
    kernel.vectors().iter().map(|v: &Vec<BigInt>| phi.on_vector(v)).collect()
}
