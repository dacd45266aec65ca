//! Relations as bare sets of ordered pairs.
//!
//! A pair is stored as `(input, output)`: `holds(r, x, y)` states that `x` is
//! related to `y`, i.e. `(x, y) ∈ r`. Domain and range are computed from the
//! pairs; no source or target carrier is ever stored.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{KernelError, Result};
use crate::value::{cartesian, VSet, Value};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rel {
    pairs: BTreeSet<(Value, Value)>,
}

impl Rel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Value, &Value)> {
        self.pairs.iter().map(|(x, y)| (x, y))
    }

    pub fn insert(&mut self, x: Value, y: Value) -> bool {
        self.pairs.insert((x, y))
    }

    pub fn holds(&self, x: &Value, y: &Value) -> bool {
        self.image(x).any(|z| z == y)
    }

    pub fn dom(&self) -> VSet {
        self.pairs.iter().map(|(x, _)| x.clone()).collect()
    }

    pub fn ran(&self) -> VSet {
        self.pairs.iter().map(|(_, y)| y.clone()).collect()
    }

    /// Images of `x`: every `y` with `holds(x, y)`.
    pub fn image<'a>(&'a self, x: &'a Value) -> impl Iterator<Item = &'a Value> + 'a {
        self.pairs
            .range((x.clone(), Value::int(i64::MIN))..)
            .take_while(move |(a, _)| a == x)
            .map(|(_, y)| y)
    }

    pub fn is_subset(&self, other: &Rel) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// The relation as a set of pair values.
    pub fn to_vset(&self) -> VSet {
        self.pairs
            .iter()
            .map(|(x, y)| Value::pair(x.clone(), y.clone()))
            .collect()
    }

    pub fn to_value(&self) -> Value {
        Value::Set(self.to_vset())
    }

    /// Reads a set of pairs back as a relation.
    pub fn from_vset(s: &VSet) -> Result<Rel> {
        s.iter()
            .map(|v| match v {
                Value::Pair(a, b) => Ok(((**a).clone(), (**b).clone())),
                other => Err(KernelError::NotARelation(other.clone())),
            })
            .collect::<Result<BTreeSet<_>>>()
            .map(|pairs| Rel { pairs })
    }

    pub fn from_value(v: &Value) -> Result<Rel> {
        match v {
            Value::Set(s) => Rel::from_vset(s),
            other => Err(KernelError::TypeMismatch {
                expected: "relation",
                found: other.kind(),
            }),
        }
    }
}

impl FromIterator<(Value, Value)> for Rel {
    fn from_iter<I: IntoIterator<Item = (Value, Value)>>(iter: I) -> Self {
        Rel {
            pairs: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Rel {
    type Item = &'a (Value, Value);
    type IntoIter = std::collections::btree_set::Iter<'a, (Value, Value)>;

    fn into_iter(self) -> Self::IntoIter {
        self.pairs.iter()
    }
}

pub fn dom(r: &Rel) -> VSet {
    r.dom()
}

pub fn ran(r: &Rel) -> VSet {
    r.ran()
}

pub fn holds(r: &Rel, x: &Value, y: &Value) -> bool {
    r.holds(x, y)
}

fn successors(r: &Rel) -> BTreeMap<&Value, Vec<&Value>> {
    let mut m: BTreeMap<&Value, Vec<&Value>> = BTreeMap::new();
    for (x, y) in r.iter() {
        m.entry(x).or_default().push(y);
    }
    m
}

/// `s ∘ r`: relates `x` to `z` whenever some `y` has `holds(r, x, y)` and
/// `holds(s, y, z)`. Total on arbitrary relations.
pub fn compose(s: &Rel, r: &Rel) -> Rel {
    let next = successors(s);
    let mut out = Rel::new();
    for (x, y) in r.iter() {
        if let Some(zs) = next.get(y) {
            for z in zs {
                out.insert(x.clone(), (*z).clone());
            }
        }
    }
    out
}

pub fn converse(r: &Rel) -> Rel {
    r.iter().map(|(x, y)| (y.clone(), x.clone())).collect()
}

pub fn identity(a: &VSet) -> Rel {
    a.iter().map(|x| (x.clone(), x.clone())).collect()
}

/// Whether `r` is a relation from `xs` to `ys`, checked as `dom r ⊆ xs` and
/// `ran r ⊆ ys`.
pub fn is_relation_from(r: &Rel, xs: &VSet, ys: &VSet) -> bool {
    r.iter().all(|(x, _)| xs.contains(x)) && r.iter().all(|(_, y)| ys.contains(y))
}

/// The same predicate evaluated as `r ⊆ xs × ys`.
pub fn is_relation_from_product(r: &Rel, xs: &VSet, ys: &VSet) -> bool {
    r.to_vset().is_subset(&cartesian(xs, ys))
}

/// No two pairs share a first member.
pub fn is_functional(r: &Rel) -> bool {
    functional_witness(r).is_none()
}

/// First input with two distinct images, if any.
pub fn functional_witness(r: &Rel) -> Option<&Value> {
    let mut prev: Option<&Value> = None;
    for (x, _) in r.iter() {
        if prev == Some(x) {
            return Some(x);
        }
        prev = Some(x);
    }
    None
}

/// The point-free form of functionality: `r ∘ r˘ = id (ran r)`.
pub fn is_functional_pointfree(r: &Rel) -> bool {
    compose(r, &converse(r)) == identity(&r.ran())
}

pub fn union(r: &Rel, s: &Rel) -> Rel {
    Rel {
        pairs: r.pairs.union(&s.pairs).cloned().collect(),
    }
}

pub fn intersection(r: &Rel, s: &Rel) -> Rel {
    Rel {
        pairs: r.pairs.intersection(&s.pairs).cloned().collect(),
    }
}

pub fn difference(r: &Rel, s: &Rel) -> Rel {
    Rel {
        pairs: r.pairs.difference(&s.pairs).cloned().collect(),
    }
}

pub fn restrict_dom(r: &Rel, a: &VSet) -> Rel {
    r.iter()
        .filter(|(x, _)| a.contains(x))
        .map(|(x, y)| (x.clone(), y.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Value {
        Value::sym(n)
    }
    fn i(n: i64) -> Value {
        Value::int(n)
    }
    fn rel(ps: &[(Value, Value)]) -> Rel {
        ps.iter().cloned().collect()
    }

    #[test]
    fn dom_and_ran() {
        let r = rel(&[(s("a"), i(1)), (s("b"), i(1))]);
        assert_eq!(dom(&r), crate::value::syms(&["a", "b"]));
        assert_eq!(ran(&r), crate::value::ints(&[1]));
        assert!(dom(&Rel::new()).is_empty());
    }

    #[test]
    fn compose_examples() {
        let r = rel(&[(s("a"), i(1))]);
        assert_eq!(compose(&rel(&[(i(1), s("u"))]), &r), rel(&[(s("a"), s("u"))]));
        assert!(compose(&rel(&[(i(2), s("x"))]), &r).is_empty());
        let r2 = rel(&[(s("a"), i(1)), (s("b"), i(2))]);
        assert_eq!(compose(&r2, &identity(&r2.dom())), r2);
        assert_eq!(compose(&identity(&crate::value::ints(&[1])), &r), r);
    }

    #[test]
    fn converse_examples() {
        assert_eq!(converse(&rel(&[(s("a"), i(1))])), rel(&[(i(1), s("a"))]));
        assert!(converse(&Rel::new()).is_empty());
    }

    #[test]
    fn identity_examples() {
        assert_eq!(
            identity(&crate::value::syms(&["a", "b"])),
            rel(&[(s("a"), s("a")), (s("b"), s("b"))])
        );
        assert!(identity(&VSet::new()).is_empty());
    }

    #[test]
    fn relation_from() {
        let r = rel(&[(s("a"), i(1))]);
        let xs = crate::value::syms(&["a", "b"]);
        let ys = crate::value::ints(&[1, 2]);
        assert!(is_relation_from(&r, &xs, &ys));
        assert!(is_relation_from_product(&r, &xs, &ys));
        let b = crate::value::syms(&["b"]);
        let one = crate::value::ints(&[1]);
        assert!(!is_relation_from(&r, &b, &one));
        assert!(!is_relation_from_product(&r, &b, &one));
    }

    #[test]
    fn functionality() {
        let f = rel(&[(s("a"), i(1)), (s("b"), i(1))]);
        let g = rel(&[(s("a"), i(1)), (s("a"), i(2))]);
        assert!(is_functional(&f));
        assert!(is_functional_pointfree(&f));
        assert!(!is_functional(&g));
        assert!(!is_functional_pointfree(&g));
        assert_eq!(functional_witness(&g), Some(&s("a")));
    }

    #[test]
    fn plumbing_ops() {
        let r = rel(&[(s("a"), i(1)), (s("b"), i(2))]);
        assert!(holds(&rel(&[(s("a"), i(1))]), &s("a"), &i(1)));
        assert!(!holds(&r, &s("a"), &i(2)));
        assert_eq!(intersection(&r, &rel(&[(s("b"), i(2))])), rel(&[(s("b"), i(2))]));
        assert_eq!(restrict_dom(&r, &crate::value::syms(&["a"])), rel(&[(s("a"), i(1))]));
        assert_eq!(union(&r, &Rel::new()), r);
        assert_eq!(difference(&r, &r), Rel::new());
    }

    #[test]
    fn vset_round_trip_rejects_non_pairs() {
        let r = rel(&[(s("a"), i(1))]);
        assert_eq!(Rel::from_vset(&r.to_vset()).unwrap(), r);
        let bad = crate::value::syms(&["a"]);
        assert_eq!(Rel::from_vset(&bad), Err(KernelError::NotARelation(s("a"))));
    }
}
