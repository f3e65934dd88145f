//! Virtually cyclic groups acting freely on `Σ(2n)`: orbit-space types and
//! covering actions.

mod ambient;
mod covers;
mod quotient;

pub use ambient::{candidate_subgroups, subgroups_by_closure, AmbientElement, AmbientShape, Subgroup};
pub use covers::{enumerate_covers, enumerate_covers_with, CoverOptions, CoverRow, DEFAULT_INDEX_BOUND};
pub use quotient::{identify_finite_quotient, FiniteGroupLabel, FiniteQuotient, QuotientStats};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::freeword::FreeAutomorphism;
use crate::realize::{realizable_general, Verdict};
use crate::twistgrp::{OrientationHom, TwistedGroup};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("subgroup has infinite index")]
    InfiniteIndex,
    #[error("subgroup {0} is not normal")]
    NotNormal(String),
    #[error("quotient is not cyclic, cyclic times Z2 or dihedral: {0}")]
    OutsideFamilies(String),
    #[error("unsupported cover label {0}")]
    UnsupportedCover(String),
    #[error("max index {requested} exceeds the configured bound {bound}")]
    IndexBoundExceeded { requested: u64, bound: u64 },
}

/// The five homotopy types of orbit spaces. The dimension `2n` is symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ManifoldLabel {
    RP2n,
    S1xS2n,
    S1twistS2n,
    S1xRP2n,
    RPsharpRP,
}

impl ManifoldLabel {
    pub const ALL: [ManifoldLabel; 5] = [
        ManifoldLabel::RP2n,
        ManifoldLabel::S1xS2n,
        ManifoldLabel::S1twistS2n,
        ManifoldLabel::S1xRP2n,
        ManifoldLabel::RPsharpRP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ManifoldLabel::RP2n => "RP2n",
            ManifoldLabel::S1xS2n => "S1xS2n",
            ManifoldLabel::S1twistS2n => "S1twistS2n",
            ManifoldLabel::S1xRP2n => "S1xRP2n",
            ManifoldLabel::RPsharpRP => "RPsharpRP",
        }
    }

    /// Conventional notation, with `n` left symbolic.
    pub fn notation(self) -> &'static str {
        match self {
            ManifoldLabel::RP2n => "RP^{2n}",
            ManifoldLabel::S1xS2n => "S^1 x S^{2n}",
            ManifoldLabel::S1twistS2n => "S^1 x~ S^{2n}",
            ManifoldLabel::S1xRP2n => "S^1 x RP^{2n}",
            ManifoldLabel::RPsharpRP => "RP^{2n+1} # RP^{2n+1}",
        }
    }
}

impl fmt::Display for ManifoldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ManifoldLabel {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ManifoldLabel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| ClassifyError::InvalidInput(format!("unknown manifold label {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VcShape {
    Z2,
    Z,
    ZxZ2,
    ZsemiZ2,
}

impl VcShape {
    pub const ALL: [VcShape; 4] = [VcShape::Z2, VcShape::Z, VcShape::ZxZ2, VcShape::ZsemiZ2];

    pub fn name(self) -> &'static str {
        match self {
            VcShape::Z2 => "Z2",
            VcShape::Z => "Z",
            VcShape::ZxZ2 => "ZxZ2",
            VcShape::ZsemiZ2 => "ZsemiZ2",
        }
    }

    pub fn has_infinite_generator(self) -> bool {
        self != VcShape::Z2
    }

    pub fn has_torsion_generator(self) -> bool {
        self != VcShape::Z
    }
}

impl FromStr for VcShape {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VcShape::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| ClassifyError::InvalidInput(format!("unknown shape {s:?}")))
    }
}

/// A virtually cyclic group with orientation data: `phi_z` on the infinite
/// generator `t` and `phi_t` on the torsion generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VCGroupSpec {
    pub shape: VcShape,
    pub phi_z: Option<u8>,
    pub phi_t: Option<u8>,
}

impl VCGroupSpec {
    pub fn new(shape: VcShape, phi_z: Option<u8>, phi_t: Option<u8>) -> Self {
        VCGroupSpec { shape, phi_z, phi_t }
    }

    /// Every combination of orientation bits the shape admits.
    pub fn all() -> Vec<VCGroupSpec> {
        let mut out = Vec::new();
        for shape in VcShape::ALL {
            let zs: &[Option<u8>] = if shape.has_infinite_generator() { &[Some(0), Some(1)] } else { &[None] };
            let ts: &[Option<u8>] = if shape.has_torsion_generator() { &[Some(0), Some(1)] } else { &[None] };
            for &z in zs {
                for &t in ts {
                    out.push(VCGroupSpec::new(shape, z, t));
                }
            }
        }
        out
    }

    /// Parses `{"shape": ..., "phi_z": bit?, "phi_t": bit?}`.
    pub fn from_json(value: &Value) -> Result<VCGroupSpec, crate::twistgrp::InputError> {
        use crate::twistgrp::InputError;
        let obj = value.as_object().ok_or_else(|| InputError::new("", "expected an object"))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "shape" | "phi_z" | "phi_t") {
                return Err(InputError::new(key.as_str(), "unknown field"));
            }
        }
        let shape = obj
            .get("shape")
            .ok_or_else(|| InputError::new("shape", "missing field"))?
            .as_str()
            .ok_or_else(|| InputError::new("shape", "expected a string"))?
            .parse::<VcShape>()
            .map_err(|e| InputError::new("shape", e.to_string()))?;
        let bit = |key: &str| -> Result<Option<u8>, InputError> {
            match obj.get(key) {
                None => Ok(None),
                Some(v) => v
                    .as_u64()
                    .and_then(|b| u8::try_from(b).ok())
                    .map(Some)
                    .ok_or_else(|| InputError::new(key, "expected an integer")),
            }
        };
        Ok(VCGroupSpec::new(shape, bit("phi_z")?, bit("phi_t")?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Realizable(ManifoldLabel),
    NotRealizable { reason: String, witness: Option<String> },
    InvalidInput(String),
}

impl Classification {
    pub fn label(&self) -> Option<ManifoldLabel> {
        match self {
            Classification::Realizable(l) => Some(*l),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Classification::Realizable(l) => json!({ "orbit_space": l.name() }),
            Classification::NotRealizable { reason, witness } => {
                let mut out = json!({ "orbit_space": null, "reason": reason });
                if let Some(w) = witness {
                    out["witness"] = json!(w);
                }
                out
            }
            Classification::InvalidInput(msg) => json!({ "error": msg, "at": "" }),
        }
    }
}

/// Orbit space of a free action of a virtually cyclic group, or the reason
/// no such action exists.
pub fn classify_vc(spec: &VCGroupSpec) -> Classification {
    let shape = spec.shape;
    if spec.phi_z.is_some() && !shape.has_infinite_generator() {
        return Classification::InvalidInput("phi_z given for a finite group".into());
    }
    if spec.phi_t.is_some() && !shape.has_torsion_generator() {
        return Classification::InvalidInput("phi_t given for a torsion-free group".into());
    }
    if spec.phi_z.into_iter().chain(spec.phi_t).any(|b| b > 1) {
        return Classification::InvalidInput("orientation values must be 0 or 1".into());
    }
    let z = spec.phi_z.unwrap_or(0) == 1;
    let t = spec.phi_t.unwrap_or(1) == 1;

    let direct = classify_table(shape, z, t);
    debug_assert_eq!(direct.label(), label_via_realize(shape, z, t), "{spec:?}");
    direct
}

/// The orbit space as predicted by the general realizability decider on the
/// encoding of the group as `F ⋊ Z/2`, ignoring the lookup table.
/// `None` for invalid input or when no free action exists.
pub fn classify_vc_via_realize(spec: &VCGroupSpec) -> Option<ManifoldLabel> {
    if !matches!(classify_vc(spec), Classification::InvalidInput(_)) {
        let z = spec.phi_z.unwrap_or(0) == 1;
        let t = spec.phi_t.unwrap_or(1) == 1;
        return label_via_realize(spec.shape, z, t);
    }
    None
}

fn classify_table(shape: VcShape, z: bool, t: bool) -> Classification {
    let torsion_preserving = || Classification::NotRealizable {
        reason: "the torsion element preserves orientation; a free involution of an even sphere must reverse it"
            .into(),
        witness: None,
    };
    match (shape, z, t) {
        (VcShape::Z2, _, true) => Classification::Realizable(ManifoldLabel::RP2n),
        (VcShape::Z, false, _) => Classification::Realizable(ManifoldLabel::S1xS2n),
        (VcShape::Z, true, _) => Classification::Realizable(ManifoldLabel::S1twistS2n),
        (VcShape::ZxZ2, _, true) => Classification::Realizable(ManifoldLabel::S1xRP2n),
        (VcShape::ZsemiZ2, false, true) => Classification::Realizable(ManifoldLabel::RPsharpRP),
        (VcShape::ZsemiZ2, true, _) => Classification::NotRealizable {
            reason: "the flip inverts t and t reverses orientation, so t followed by the flip is an orientation-preserving involution".into(),
            witness: Some("x1".into()),
        },
        (_, _, false) => torsion_preserving(),
    }
}

/// Encodes the group as `F ⋊ Z/2` and asks the general decider. A torsion
/// generator with `phi_t = 0` is handled first: an orientation-preserving element
/// of order two can never act freely.
fn label_via_realize(shape: VcShape, z: bool, t: bool) -> Option<ManifoldLabel> {
    let phi_bit = u8::from(z);
    let (theta, bits): (FreeAutomorphism, Vec<u8>) = match shape {
        VcShape::Z2 => (FreeAutomorphism::identity(0), vec![]),
        // Z sits with index two in Z ⊕ Z/2, whose action restricts to it.
        VcShape::Z | VcShape::ZxZ2 => (FreeAutomorphism::identity(1), vec![phi_bit]),
        VcShape::ZsemiZ2 => (FreeAutomorphism::parse(&["x1^-1"]).expect("valid"), vec![phi_bit]),
    };
    if shape.has_torsion_generator() && !t {
        // In D_∞ every flip is an involution and the flip times t has
        // orientation z, so with z = 1 it can serve as the Z/2 generator instead.
        // Otherwise every element of order two preserves orientation.
        if !(shape == VcShape::ZsemiZ2 && z) {
            return None;
        }
    }
    let group = TwistedGroup::new(theta).expect("involution");
    let decision = realizable_general(&group, &OrientationHom::from_bits(&bits)).expect("valid orientation");
    if !matches!(decision.verdict, Verdict::Realizable) {
        return None;
    }
    Some(match (shape, z) {
        (VcShape::Z2, _) => ManifoldLabel::RP2n,
        (VcShape::Z, false) => ManifoldLabel::S1xS2n,
        (VcShape::Z, true) => ManifoldLabel::S1twistS2n,
        (VcShape::ZxZ2, _) => ManifoldLabel::S1xRP2n,
        (VcShape::ZsemiZ2, _) => ManifoldLabel::RPsharpRP,
    })
}
