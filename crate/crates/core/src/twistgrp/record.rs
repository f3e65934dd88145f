//! The `{ "rank": m, "theta": [word, ...], "phi": [bit, ...] }` record.

use serde_json::{json, Value};

use super::{GroupError, OrientationHom, TwistedGroup};
use crate::freeword::{FreeAutomorphism, Word};

/// A rejected input, located by a JSON path such as `theta[1]`.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("{at}: {message}")]
pub struct InputError {
    pub at: String,
    pub message: String,
}

impl InputError {
    pub fn new(at: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            at: at.into(),
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "at": self.at, "error": self.message })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRecord {
    pub group: TwistedGroup,
    pub phi: Option<OrientationHom>,
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

impl GroupRecord {
    /// The orientation, validated against `θ`.
    pub fn require_phi(&self, prefix: &str) -> Result<&OrientationHom, InputError> {
        let at = join(prefix, "phi");
        let phi = self
            .phi
            .as_ref()
            .ok_or_else(|| InputError::new(&at, "missing field"))?;
        match self.group.check_orientation(phi) {
            Ok(()) => Ok(phi),
            Err(GroupError::IncompatibleOrientation { generator }) => Err(InputError::new(
                format!("{at}[{}]", generator - 1),
                format!("invalid orientation: phi(x{generator}) != phi(theta(x{generator}))"),
            )),
            Err(e) => Err(InputError::new(at, e.to_string())),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "rank": self.group.rank(),
            "theta": self.group.theta().images().iter().map(ToString::to_string).collect::<Vec<_>>(),
        });
        if let Some(phi) = &self.phi {
            out["phi"] = json!(phi.bits());
        }
        out
    }
}

/// Parses and validates a twisted-group record. `prefix` is prepended to error locations.
pub fn parse_group_record(value: &Value, prefix: &str) -> Result<GroupRecord, InputError> {
    let obj = value
        .as_object()
        .ok_or_else(|| InputError::new(prefix, "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "rank" | "theta" | "phi") {
            return Err(InputError::new(join(prefix, key), "unknown field"));
        }
    }

    let rank_at = join(prefix, "rank");
    let rank = obj
        .get("rank")
        .ok_or_else(|| InputError::new(&rank_at, "missing field"))?
        .as_u64()
        .ok_or_else(|| InputError::new(&rank_at, "expected a non-negative integer"))?;
    let rank = usize::try_from(rank).map_err(|_| InputError::new(&rank_at, "rank too large"))?;

    let theta_at = join(prefix, "theta");
    let theta = obj
        .get("theta")
        .ok_or_else(|| InputError::new(&theta_at, "missing field"))?
        .as_array()
        .ok_or_else(|| InputError::new(&theta_at, "expected an array of words"))?;
    if theta.len() != rank {
        return Err(InputError::new(
            &theta_at,
            format!("expected {rank} images, got {}", theta.len()),
        ));
    }
    let images = theta
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let at = format!("{theta_at}[{j}]");
            let text = w
                .as_str()
                .ok_or_else(|| InputError::new(&at, "expected a word string"))?;
            Word::parse(text, rank).map_err(|e| InputError::new(&at, e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let theta = FreeAutomorphism::new(images).map_err(|e| InputError::new(&theta_at, e.to_string()))?;
    let group = TwistedGroup::new(theta).map_err(|e| InputError::new(&theta_at, e.to_string()))?;

    let phi = match obj.get("phi") {
        None => None,
        Some(v) => {
            let at = join(prefix, "phi");
            let bits = v
                .as_array()
                .ok_or_else(|| InputError::new(&at, "expected an array of bits"))?;
            if bits.len() != rank {
                return Err(InputError::new(
                    &at,
                    format!("expected {rank} bits, got {}", bits.len()),
                ));
            }
            let values = bits
                .iter()
                .enumerate()
                .map(|(i, b)| match b.as_u64() {
                    Some(0) => Ok(false),
                    Some(1) => Ok(true),
                    _ => Err(InputError::new(format!("{at}[{i}]"), "expected 0 or 1")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(OrientationHom::new(values))
        }
    };
    Ok(GroupRecord { group, phi })
}
