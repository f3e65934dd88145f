use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use super::ambient::{AmbientElement, AmbientShape, Subgroup};
use super::ClassifyError;

/// Isomorphism class of a finite quotient, spelled one way per class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FiniteGroupLabel {
    Cyclic(u64),
    CyclicTimesZ2(u64),
    /// Dihedral group of order `2k`.
    Dihedral(u64),
}

impl FiniteGroupLabel {
    pub fn normalized(self) -> Self {
        match self {
            FiniteGroupLabel::CyclicTimesZ2(k) if k % 2 == 1 => FiniteGroupLabel::Cyclic(2 * k),
            FiniteGroupLabel::Dihedral(1) => FiniteGroupLabel::Cyclic(2),
            FiniteGroupLabel::Dihedral(2) => FiniteGroupLabel::CyclicTimesZ2(2),
            other => other,
        }
    }

    pub fn order(self) -> u64 {
        match self {
            FiniteGroupLabel::Cyclic(k) => k,
            FiniteGroupLabel::CyclicTimesZ2(k) | FiniteGroupLabel::Dihedral(k) => 2 * k,
        }
    }

    pub fn family(self) -> &'static str {
        match self {
            FiniteGroupLabel::Cyclic(_) => "Cyclic",
            FiniteGroupLabel::CyclicTimesZ2(_) => "CyclicTimesZ2",
            FiniteGroupLabel::Dihedral(_) => "Dihedral",
        }
    }

    pub fn k(self) -> u64 {
        match self {
            FiniteGroupLabel::Cyclic(k) | FiniteGroupLabel::CyclicTimesZ2(k) | FiniteGroupLabel::Dihedral(k) => k,
        }
    }

    pub fn from_parts(family: &str, k: u64) -> Option<Self> {
        match family {
            "Cyclic" => Some(FiniteGroupLabel::Cyclic(k)),
            "CyclicTimesZ2" => Some(FiniteGroupLabel::CyclicTimesZ2(k)),
            "Dihedral" => Some(FiniteGroupLabel::Dihedral(k)),
            _ => None,
        }
    }

    pub fn to_json(self) -> Value {
        json!({ "family": self.family(), "k": self.k() })
    }
}

impl fmt::Display for FiniteGroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family(), self.k())
    }
}

/// Invariants read off a multiplication table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientStats {
    pub order: u64,
    pub abelian: bool,
    pub exponent: u64,
    pub involutions: u64,
    pub max_element_order: u64,
}

/// The quotient `π / N` as an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    /// Coset representatives; index 0 is the identity coset.
    pub representatives: Vec<AmbientElement>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteQuotient {
    /// Coset enumeration: breadth-first over products with the ambient
    /// generators and their inverses, identified through `N`'s coset key.
    pub fn enumerate(n: &Subgroup, limit: usize) -> Result<FiniteQuotient, ClassifyError> {
        if !n.is_normal() {
            return Err(ClassifyError::NotNormal(n.to_string()));
        }
        let shape = n.shape;
        let mut steps = shape.generators();
        steps.extend(shape.generators().into_iter().map(|g| shape.invert(g)));

        let mut reps = vec![shape.identity()];
        let mut lookup: HashMap<AmbientElement, usize> = HashMap::from([(n.coset_key(shape.identity()), 0)]);
        let mut i = 0;
        while i < reps.len() {
            for &s in &steps {
                let y = shape.multiply(reps[i], s);
                let key = n.coset_key(y);
                if !lookup.contains_key(&key) {
                    if reps.len() >= limit {
                        return Err(ClassifyError::InfiniteIndex);
                    }
                    lookup.insert(key, reps.len());
                    reps.push(y);
                }
            }
            i += 1;
        }
        let find = |x: AmbientElement| lookup[&n.coset_key(x)];
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| find(shape.multiply(a, b))).collect())
            .collect();
        Ok(FiniteQuotient {
            representatives: reps,
            table,
        })
    }

    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.table[y][x];
            k += 1;
        }
        k
    }

    pub fn stats(&self) -> QuotientStats {
        let n = self.order();
        let abelian = (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]));
        let orders: Vec<u64> = (0..n).map(|x| self.element_order(x)).collect();
        QuotientStats {
            order: n as u64,
            abelian,
            exponent: orders.iter().fold(1, |acc, &o| acc.lcm(&o)),
            involutions: orders.iter().filter(|&&o| o == 2).count() as u64,
            max_element_order: orders.iter().copied().max().unwrap_or(1),
        }
    }

    /// Classifies among cyclic, cyclic times Z/2 and dihedral groups.
    pub fn classify(&self) -> Result<FiniteGroupLabel, ClassifyError> {
        let st = self.stats();
        let n = st.order;
        let label = if st.abelian && st.exponent == n {
            Some(FiniteGroupLabel::Cyclic(n))
        } else if st.abelian && n % 4 == 0 && st.exponent == n / 2 && st.involutions == 3 {
            Some(FiniteGroupLabel::CyclicTimesZ2(n / 2))
        } else if !st.abelian && n % 2 == 0 {
            let k = n / 2;
            let expected = if k % 2 == 0 { k + 1 } else { k };
            (st.max_element_order == k && st.involutions == expected).then_some(FiniteGroupLabel::Dihedral(k))
        } else {
            None
        };
        label
            .map(FiniteGroupLabel::normalized)
            .ok_or_else(|| ClassifyError::OutsideFamilies(format!("{st:?}")))
    }
}

/// Identifies `π / N` for the subgroup `N` generated by `gens`.
pub fn identify_finite_quotient(
    shape: AmbientShape,
    gens: &[AmbientElement],
) -> Result<FiniteGroupLabel, ClassifyError> {
    let n = Subgroup::generated_by(shape, gens)?;
    let limit = usize::try_from(n.index()).unwrap_or(usize::MAX);
    let q = FiniteQuotient::enumerate(&n, limit)?;
    debug_assert_eq!(q.order() as i64, n.index());
    q.classify()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(
            identify_finite_quotient(AmbientShape::Z, &[AmbientElement::translation(5)]),
            Ok(FiniteGroupLabel::Cyclic(5))
        );
        assert_eq!(
            identify_finite_quotient(AmbientShape::ZxZ2, &[AmbientElement::translation(3)]),
            Ok(FiniteGroupLabel::Cyclic(6))
        );
        assert_eq!(
            identify_finite_quotient(AmbientShape::Dinf, &[AmbientElement::translation(3)]),
            Ok(FiniteGroupLabel::Dihedral(3))
        );
    }

    #[test]
    fn small_cases_normalize() {
        assert_eq!(
            identify_finite_quotient(AmbientShape::Dinf, &[AmbientElement::translation(1)]),
            Ok(FiniteGroupLabel::Cyclic(2))
        );
        assert_eq!(
            identify_finite_quotient(AmbientShape::Dinf, &[AmbientElement::translation(2)]),
            Ok(FiniteGroupLabel::CyclicTimesZ2(2))
        );
        assert_eq!(
            identify_finite_quotient(AmbientShape::ZxZ2, &[AmbientElement::translation(4)]),
            Ok(FiniteGroupLabel::CyclicTimesZ2(4))
        );
        assert_eq!(
            identify_finite_quotient(AmbientShape::ZxZ2, &[AmbientElement::flip(2)]),
            Ok(FiniteGroupLabel::Cyclic(4))
        );
    }

    #[test]
    fn rejects_non_normal_and_infinite() {
        let gens = [AmbientElement::translation(3), AmbientElement::flip(0)];
        assert!(matches!(
            identify_finite_quotient(AmbientShape::Dinf, &gens),
            Err(ClassifyError::NotNormal(_))
        ));
        assert_eq!(
            identify_finite_quotient(AmbientShape::ZxZ2, &[AmbientElement::flip(0)]),
            Err(ClassifyError::InfiniteIndex)
        );
    }

    #[test]
    fn normalization_rules() {
        assert_eq!(FiniteGroupLabel::CyclicTimesZ2(3).normalized(), FiniteGroupLabel::Cyclic(6));
        assert_eq!(FiniteGroupLabel::Dihedral(1).normalized(), FiniteGroupLabel::Cyclic(2));
        assert_eq!(FiniteGroupLabel::Dihedral(2).normalized(), FiniteGroupLabel::CyclicTimesZ2(2));
        assert_eq!(FiniteGroupLabel::Dihedral(5).normalized(), FiniteGroupLabel::Dihedral(5));
    }
}
