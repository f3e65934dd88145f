//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use twistfree::classify::{
    classify_vc, enumerate_covers, FiniteGroupLabel, ManifoldLabel, VCGroupSpec, VcShape,
};
use twistfree::intlat::CanonicalInvolution;
use twistfree::realize::{find_witness, realizable_canonical, realizable_general, Verdict};
use twistfree::selfcheck::{self, CriterionResult};
use twistfree::twistgrp::{OrientationHom, TwistedGroup};

struct Outcome {
    id: u8,
    name: &'static str,
    passed: bool,
    detail: String,
}

impl Outcome {
    fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!("[{mark}] criterion {} {}: {}", self.id, self.name, self.detail)
    }
}

/// Combines the library's own check with the independent one done here.
fn combine(lib: CriterionResult, own: Result<String, String>, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let mut problems = Vec::new();
    if !lib.passed {
        problems.push(lib.detail.clone());
    }
    let own_detail = match own {
        Ok(d) => d,
        Err(e) => {
            problems.push(e.clone());
            e
        }
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            problems.push(format!("took {elapsed:.2?}, limit {limit:?}"));
        }
    }
    let passed = problems.is_empty();
    let detail = if passed {
        format!("{}; {own_detail} ({elapsed:.2?})", lib.detail)
    } else {
        problems.join("; ")
    };
    Outcome {
        id: lib.id,
        name: lib.name,
        passed,
        detail,
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Sign rule checked directly against all three deciders.
fn block_form_oracle() -> Result<String, String> {
    let mut checked = 0;
    for m in 1..=3 {
        for shape in CanonicalInvolution::all_of_dim(m) {
            let group = TwistedGroup::standard(shape);
            for phi in OrientationHom::all(m).filter(|p| group.validate_orientation(p)) {
                let expected = shape.minus_block().all(|i| !phi.value(i + 1));
                let canonical = realizable_canonical(&group, &phi).map_err(|e| format!("{shape:?}: {e}"))?;
                let general = realizable_general(&group, &phi).map_err(|e| format!("{shape:?}: {e}"))?;
                let witness = find_witness(&group, &phi, 4);
                let ok = canonical.is_realizable() == expected
                    && general.verdict.is_realizable() == expected
                    && witness.is_none() == expected
                    && !matches!(general.verdict, Verdict::Unknown { .. });
                if !ok {
                    return Err(format!("disagreement at {shape:?} phi={:?}", phi.bits()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("sign rule rechecked on {checked}"))
}

fn orbit_table_oracle() -> Result<String, String> {
    use ManifoldLabel::*;
    use VcShape::*;
    let table: [(VcShape, Option<u8>, Option<u8>, Option<ManifoldLabel>); 12] = [
        (Z2, None, Some(1), Some(RP2n)),
        (Z2, None, Some(0), None),
        (Z, Some(0), None, Some(S1xS2n)),
        (Z, Some(1), None, Some(S1twistS2n)),
        (ZxZ2, Some(0), Some(1), Some(S1xRP2n)),
        (ZxZ2, Some(1), Some(1), Some(S1xRP2n)),
        (ZxZ2, Some(0), Some(0), None),
        (ZxZ2, Some(1), Some(0), None),
        (ZsemiZ2, Some(0), Some(1), Some(RPsharpRP)),
        (ZsemiZ2, Some(1), Some(1), None),
        (ZsemiZ2, Some(0), Some(0), None),
        (ZsemiZ2, Some(1), Some(0), None),
    ];
    for (shape, z, t, expected) in table {
        let got = classify_vc(&VCGroupSpec::new(shape, z, t)).label();
        if got != expected {
            return Err(format!("{shape:?} phi_z={z:?} phi_t={t:?}: got {got:?}, expected {expected:?}"));
        }
    }
    if VCGroupSpec::all().len() != table.len() {
        return Err("input enumeration does not match the literal table".into());
    }
    Ok(format!("literal table of {} matches", table.len()))
}

fn covers_oracle() -> Result<String, String> {
    let has = |cover, g, base| -> Result<bool, String> {
        let rows = enumerate_covers(cover, 48).map_err(|e| e.to_string())?;
        Ok(rows.iter().any(|r| r.group == g && r.base == base))
    };
    use FiniteGroupLabel::*;
    use ManifoldLabel::*;
    let required = [
        (S1xS2n, Dihedral(5), RPsharpRP),
        (S1xS2n, Cyclic(7), S1xS2n),
        (S1xS2n, CyclicTimesZ2(6), S1xRP2n),
        (S1twistS2n, Cyclic(9), S1twistS2n),
        (S1twistS2n, Cyclic(8), S1xRP2n),
        (S1xRP2n, Cyclic(5), S1xRP2n),
        (RPsharpRP, Cyclic(2), RPsharpRP),
    ];
    for (cover, g, base) in required {
        if !has(cover, g, base)? {
            return Err(format!("missing {g} acting on {cover} with orbit space {base}"));
        }
    }
    let rows = enumerate_covers(S1xS2n, 48).map_err(|e| e.to_string())?;
    if rows.iter().any(|r| r.base == S1xRP2n && matches!(r.group, Cyclic(k) if k % 4 == 0)) {
        return Err("Cyclic(4k) over S1xRP2n from S1xS2n".into());
    }
    Ok(format!("{} spot rows present", required.len()))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_twistfree");
    let run = || Command::new(bin).arg("selfcheck").output();
    let (passed, detail) = match (run(), run()) {
        (Ok(a), Ok(b)) => {
            let same = a.stdout == b.stdout && a.status.code() == b.status.code();
            let ok = same && a.status.success() && !a.stdout.is_empty();
            let detail = if ok {
                format!("two selfcheck runs produced identical {}-byte logs", a.stdout.len())
            } else if !same {
                "selfcheck logs differ between runs".to_string()
            } else {
                format!("selfcheck exited with {:?}", a.status.code())
            };
            (ok, detail)
        }
        (Err(e), _) | (_, Err(e)) => (false, format!("cannot run selfcheck: {e}")),
    };
    Outcome {
        id: 7,
        name: "determinism",
        passed,
        detail,
    }
}

fn main() -> ExitCode {
    let mut outcomes = Vec::new();

    let ((lib, own), t) = timed(|| (selfcheck::canonical_agreement(), block_form_oracle()));
    outcomes.push(combine(lib, own, t, Some(Duration::from_secs(10))));

    let (lib, t) = timed(selfcheck::canonical_form_round_trip);
    outcomes.push(combine(lib, Ok("200 samples".into()), t, Some(Duration::from_secs(30))));

    let ((lib, own), t) = timed(|| (selfcheck::orbit_space_table(), orbit_table_oracle()));
    outcomes.push(combine(lib, own, t, None));

    let ((lib, own), t) = timed(|| (selfcheck::covers_table(), covers_oracle()));
    outcomes.push(combine(lib, own, t, None));

    let (lib, t) = timed(selfcheck::free_product_structure);
    outcomes.push(combine(lib, Ok("lists of length <= 3".into()), t, None));

    let (lib, t) = timed(selfcheck::action_model);
    outcomes.push(combine(lib, Ok(format!("seed {}", selfcheck::SELFCHECK_SEED)), t, None));

    outcomes.push(determinism());

    for o in &outcomes {
        println!("{}", o.line());
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("acceptance: {passed}/{} criteria passed", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
