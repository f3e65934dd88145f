//! The infinite virtually cyclic groups `Z`, `Z ⊕ Z/2` and `D_∞`, and
//! their finite-index subgroups.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::ClassifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AmbientShape {
    Z,
    ZxZ2,
    /// `Z ⋊ Z/2`, the infinite dihedral group.
    Dinf,
}

impl AmbientShape {
    /// Sign with which a flip acts on translations.
    fn sigma(self) -> i64 {
        match self {
            AmbientShape::Dinf => -1,
            _ => 1,
        }
    }

    pub fn generators(self) -> Vec<AmbientElement> {
        match self {
            AmbientShape::Z => vec![AmbientElement::translation(1)],
            _ => vec![AmbientElement::translation(1), AmbientElement::flip(0)],
        }
    }

    pub fn has_flips(self) -> bool {
        self != AmbientShape::Z
    }

    pub fn identity(self) -> AmbientElement {
        AmbientElement::translation(0)
    }

    pub fn multiply(self, a: AmbientElement, b: AmbientElement) -> AmbientElement {
        let t = if a.flip { b.t * self.sigma() } else { b.t };
        AmbientElement {
            t: a.t + t,
            flip: a.flip ^ b.flip,
        }
    }

    pub fn invert(self, a: AmbientElement) -> AmbientElement {
        if a.flip {
            AmbientElement {
                t: -a.t * self.sigma(),
                flip: true,
            }
        } else {
            AmbientElement { t: -a.t, flip: false }
        }
    }

    pub fn conjugate(self, by: AmbientElement, a: AmbientElement) -> AmbientElement {
        self.multiply(self.multiply(by, a), self.invert(by))
    }

    fn check(self, a: AmbientElement) -> Result<(), ClassifyError> {
        if a.flip && !self.has_flips() {
            return Err(ClassifyError::InvalidInput(format!(
                "element {a} does not belong to {self:?}"
            )));
        }
        Ok(())
    }
}

/// `(t, ε)`: translation by `t`, followed by the flip when `ε = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AmbientElement {
    pub t: i64,
    pub flip: bool,
}

impl AmbientElement {
    pub fn translation(t: i64) -> Self {
        AmbientElement { t, flip: false }
    }

    pub fn flip(t: i64) -> Self {
        AmbientElement { t, flip: true }
    }
}

impl fmt::Display for AmbientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, u8::from(self.flip))
    }
}

/// A finite-index subgroup in normal form: translations `period · Z`, plus
/// the flips `(offset + period · Z, 1)` when `offset` is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    pub shape: AmbientShape,
    pub period: i64,
    pub offset: Option<i64>,
}

impl Subgroup {
    /// The subgroup generated by the given elements.
    pub fn generated_by(shape: AmbientShape, gens: &[AmbientElement]) -> Result<Subgroup, ClassifyError> {
        let mut period = 0i64;
        let mut first_flip: Option<i64> = None;
        for &g in gens {
            shape.check(g)?;
            if !g.flip {
                period = period.gcd(&g.t);
                continue;
            }
            if shape == AmbientShape::ZxZ2 {
                period = period.gcd(&(2 * g.t));
            }
            match first_flip {
                None => first_flip = Some(g.t),
                Some(c) => period = period.gcd(&(g.t - c)),
            }
        }
        if period == 0 {
            return Err(ClassifyError::InfiniteIndex);
        }
        Ok(Subgroup {
            shape,
            period,
            offset: first_flip.map(|c| c.rem_euclid(period)),
        })
    }

    pub fn contains(&self, a: AmbientElement) -> bool {
        if !a.flip {
            return a.t % self.period == 0;
        }
        match self.offset {
            Some(c) => (a.t - c) % self.period == 0,
            None => false,
        }
    }

    pub fn index(&self) -> i64 {
        match (self.shape, self.offset) {
            (AmbientShape::Z, _) | (_, Some(_)) => self.period,
            (_, None) => 2 * self.period,
        }
    }

    /// A generating set in normal form.
    pub fn generators(&self) -> Vec<AmbientElement> {
        let mut out = vec![AmbientElement::translation(self.period)];
        if let Some(c) = self.offset {
            out.push(AmbientElement::flip(c));
        }
        out
    }

    /// Conjugates every generator by every ambient generator and its inverse.
    pub fn is_normal(&self) -> bool {
        let shape = self.shape;
        shape.generators().into_iter().all(|s| {
            let si = shape.invert(s);
            self.generators()
                .into_iter()
                .all(|g| self.contains(shape.conjugate(s, g)) && self.contains(shape.conjugate(si, g)))
        })
    }

    /// Representative of the left coset `aN`: its translation is reduced mod
    /// the period, and a flip is absorbed whenever `N` contains flips.
    pub fn coset_key(&self, a: AmbientElement) -> AmbientElement {
        match self.offset {
            Some(c) if a.flip => AmbientElement::translation((a.t - c).rem_euclid(self.period)),
            _ => AmbientElement {
                t: a.t.rem_euclid(self.period),
                flip: a.flip,
            },
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(ToString::to_string).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Closed-form list of the finite-index subgroups of index at most `max_index`.
pub fn candidate_subgroups(shape: AmbientShape, max_index: i64) -> Vec<Subgroup> {
    let mut out = BTreeSet::new();
    let mut add = |gens: &[AmbientElement]| {
        let n = Subgroup::generated_by(shape, gens).expect("finite index");
        if n.index() <= max_index {
            out.insert(n);
        }
    };
    for m in 1..=max_index {
        let tm = AmbientElement::translation(m);
        add(&[tm]);
        match shape {
            AmbientShape::Z => {}
            AmbientShape::ZxZ2 => {
                add(&[AmbientElement::flip(m)]);
                for j in 0..m {
                    add(&[tm, AmbientElement::flip(j)]);
                }
            }
            AmbientShape::Dinf => {
                for j in 0..m {
                    add(&[tm, AmbientElement::flip(j)]);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Subgroups found by brute force: every subgroup generated by at most two
/// elements with `|t| <= gen_bound`, computed by closing the generators
/// under multiplication inside the window `|t| <= window`, independently
/// of the gcd normal form. Only subgroups of index at most `max_index` are kept.
pub fn subgroups_by_closure(
    shape: AmbientShape,
    max_index: i64,
    gen_bound: i64,
    window: i64,
) -> Vec<Subgroup> {
    let flips: &[bool] = if shape.has_flips() { &[false, true] } else { &[false] };
    let elements: Vec<AmbientElement> = (-gen_bound..=gen_bound)
        .flat_map(|t| flips.iter().map(move |&flip| AmbientElement { t, flip }))
        .filter(|e| *e != shape.identity())
        .collect();
    let mut found = BTreeSet::new();
    for (i, &a) in elements.iter().enumerate() {
        for &b in &elements[i..] {
            if let Some(n) = close(shape, &[a, b], window) {
                if n.index() <= max_index {
                    found.insert(n);
                }
            }
        }
    }
    found.into_iter().collect()
}

fn close(shape: AmbientShape, gens: &[AmbientElement], window: i64) -> Option<Subgroup> {
    let mut steps: Vec<AmbientElement> = gens.to_vec();
    steps.extend(gens.iter().map(|&g| shape.invert(g)));
    let mut seen: HashSet<AmbientElement> = HashSet::new();
    let mut queue = VecDeque::from([shape.identity()]);
    seen.insert(shape.identity());
    while let Some(x) = queue.pop_front() {
        for &s in &steps {
            let y = shape.multiply(x, s);
            if y.t.abs() <= window && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let period = seen.iter().filter(|e| !e.flip && e.t > 0).map(|e| e.t).min()?;
    let offset = seen.iter().filter(|e| e.flip && e.t >= 0).map(|e| e.t).min();
    // Translations and flips must both be full arithmetic progressions inside
    // the inner half of the window, otherwise the window was too small.
    let inner = window / 2;
    for t in -inner..=inner {
        let has = seen.contains(&AmbientElement::translation(t));
        if has != (t % period == 0) {
            return None;
        }
        if let Some(c) = offset {
            if seen.contains(&AmbientElement::flip(t)) != ((t - c) % period == 0) {
                return None;
            }
        }
    }
    Some(Subgroup {
        shape,
        period,
        offset: offset.map(|c| c % period),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_rules() {
        let d = AmbientShape::Dinf;
        let b = AmbientElement::flip(0);
        let t = AmbientElement::translation(1);
        assert_eq!(d.multiply(d.multiply(b, t), b), AmbientElement::translation(-1));
        assert_eq!(d.multiply(b, b), d.identity());
        let z = AmbientShape::ZxZ2;
        assert_eq!(z.multiply(z.multiply(b, t), b), t);
        let x = AmbientElement::flip(5);
        assert_eq!(d.multiply(x, d.invert(x)), d.identity());
        assert_eq!(z.multiply(x, z.invert(x)), z.identity());
    }

    #[test]
    fn normal_forms() {
        let n = Subgroup::generated_by(AmbientShape::ZxZ2, &[AmbientElement::flip(1)]).unwrap();
        assert_eq!((n.period, n.offset, n.index()), (2, Some(1), 2));
        let n = Subgroup::generated_by(AmbientShape::Dinf, &[AmbientElement::flip(1), AmbientElement::flip(4)]).unwrap();
        assert_eq!((n.period, n.offset, n.index()), (3, Some(1), 3));
        assert!(!n.is_normal());
        let n = Subgroup::generated_by(AmbientShape::Dinf, &[AmbientElement::translation(3)]).unwrap();
        assert_eq!(n.index(), 6);
        assert!(n.is_normal());
        assert_eq!(
            Subgroup::generated_by(AmbientShape::Dinf, &[AmbientElement::flip(2)]),
            Err(ClassifyError::InfiniteIndex)
        );
    }

    #[test]
    fn closure_agrees_with_closed_forms() {
        for shape in [AmbientShape::Z, AmbientShape::ZxZ2, AmbientShape::Dinf] {
            let closed = candidate_subgroups(shape, 8);
            let brute = subgroups_by_closure(shape, 8, 8, 60);
            assert_eq!(closed, brute, "{shape:?}");
        }
    }
}
