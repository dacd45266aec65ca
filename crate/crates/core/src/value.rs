//! The closed value universe: atoms, primitive ordered pairs, finite sets and
//! functions.
//!
//! Pairs are a primitive constructor, not Kuratowski sets, so `{a, b}` is never
//! a member of `(a, b)`. Functions are their own kind; the set-of-pairs view is
//! recovered through [`crate::function::graph`].
//!
//! The derived `Ord` is the canonical total order used for printing and for
//! deterministic iteration. It carries no semantic weight.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::function::Fun;

/// A symbolic name or a small integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Int(i64),
    Sym(Arc<str>),
}

impl Atom {
    pub fn sym(name: &str) -> Self {
        Atom::Sym(Arc::from(name))
    }
}

impl From<i64> for Atom {
    fn from(n: i64) -> Self {
        Atom::Int(n)
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::sym(s)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Int(n) => write!(f, "{n}"),
            Atom::Sym(s) => f.write_str(s),
        }
    }
}

/// A finite set of values. Duplicates are impossible by construction.
pub type VSet = BTreeSet<Value>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Atom(Atom),
    Pair(Box<Value>, Box<Value>),
    Set(VSet),
    Fun(Fun),
}

impl Value {
    pub fn sym(name: &str) -> Self {
        Value::Atom(Atom::sym(name))
    }

    pub fn int(n: i64) -> Self {
        Value::Atom(Atom::Int(n))
    }

    pub fn pair(first: Value, second: Value) -> Self {
        Value::Pair(Box::new(first), Box::new(second))
    }

    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn first(&self) -> Option<&Value> {
        self.as_pair().map(|(a, _)| a)
    }

    pub fn second(&self) -> Option<&Value> {
        self.as_pair().map(|(_, b)| b)
    }

    pub fn as_set(&self) -> Option<&VSet> {
        match self {
            Value::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_fun(&self) -> Option<&Fun> {
        match self {
            Value::Fun(f) => Some(f),
            _ => None,
        }
    }

    /// Short name of the value kind, used in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Atom(_) => "atom",
            Value::Pair(..) => "pair",
            Value::Set(_) => "set",
            Value::Fun(_) => "function",
        }
    }
}

impl From<Atom> for Value {
    fn from(a: Atom) -> Self {
        Value::Atom(a)
    }
}

impl From<VSet> for Value {
    fn from(s: VSet) -> Self {
        Value::Set(s)
    }
}

impl From<Fun> for Value {
    fn from(f: Fun) -> Self {
        Value::Fun(f)
    }
}

/// Structural equality. Pairs compare componentwise, sets extensionally and
/// functions by domain plus pointwise values.
pub fn value_eq(a: &Value, b: &Value) -> bool {
    a == b
}

pub fn member(x: &Value, s: &VSet) -> bool {
    s.contains(x)
}

pub fn subset(a: &VSet, b: &VSet) -> bool {
    a.is_subset(b)
}

pub fn union(a: &VSet, b: &VSet) -> VSet {
    a.union(b).cloned().collect()
}

pub fn intersection(a: &VSet, b: &VSet) -> VSet {
    a.intersection(b).cloned().collect()
}

pub fn difference(a: &VSet, b: &VSet) -> VSet {
    a.difference(b).cloned().collect()
}

pub fn size(s: &VSet) -> usize {
    s.len()
}

/// `X × Y` as a set of primitive pairs.
pub fn cartesian(xs: &VSet, ys: &VSet) -> VSet {
    xs.iter()
        .flat_map(|x| ys.iter().map(move |y| Value::pair(x.clone(), y.clone())))
        .collect()
}

/// The tuple `i ↦ vs[i]` on the domain `{0, …, n−1}`.
pub fn tuple_of(vs: &[Value]) -> Fun {
    vs.iter()
        .enumerate()
        .map(|(i, v)| (Value::int(i as i64), v.clone()))
        .collect()
}

/// Builds a set of symbolic atoms; handy in tests and examples.
pub fn syms(names: &[&str]) -> VSet {
    names.iter().map(|n| Value::sym(n)).collect()
}

/// Builds a set of integer atoms.
pub fn ints(ns: &[i64]) -> VSet {
    ns.iter().map(|&n| Value::int(n)).collect()
}

fn write_elems<'a, I>(f: &mut fmt::Formatter<'_>, items: I) -> fmt::Result
where
    I: IntoIterator<Item = &'a Value>,
{
    for (k, v) in items.into_iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(a) => write!(f, "{a}"),
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
            Value::Set(s) => {
                f.write_str("{")?;
                write_elems(f, s)?;
                f.write_str("}")
            }
            Value::Fun(g) => write!(f, "{g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Value {
        Value::sym("a")
    }

    #[test]
    fn pair_equality_is_componentwise() {
        let p = Value::pair(a(), Value::int(1));
        assert!(value_eq(&p, &Value::pair(a(), Value::int(1))));
        assert!(!value_eq(&p, &Value::pair(Value::int(1), a())));
        assert_eq!(p.first(), Some(&a()));
        assert_eq!(p.second(), Some(&Value::int(1)));
    }

    #[test]
    fn function_equality_needs_same_domain() {
        let f: Fun = [(Value::int(0), Value::int(5))].into_iter().collect();
        let g: Fun = [(Value::int(0), Value::int(5)), (Value::int(1), Value::int(6))]
            .into_iter()
            .collect();
        assert!(!value_eq(&Value::Fun(f), &Value::Fun(g)));
    }

    #[test]
    fn pairs_are_not_kuratowski_sets() {
        let p = Value::pair(a(), Value::sym("b"));
        let kuratowski = Value::Set(
            [Value::Set(syms(&["a"])), Value::Set(syms(&["a", "b"]))]
                .into_iter()
                .collect(),
        );
        assert_ne!(p, kuratowski);
        assert!(p.as_set().is_none());
    }

    #[test]
    fn set_ops() {
        let ab = syms(&["a", "b"]);
        let bc = syms(&["b", "c"]);
        assert!(member(&a(), &ab));
        assert_eq!(intersection(&ab, &bc), syms(&["b"]));
        assert_eq!(union(&ab, &bc), syms(&["a", "b", "c"]));
        assert_eq!(difference(&ab, &bc), syms(&["a"]));
        assert!(subset(&VSet::new(), &syms(&["a"])));
        assert_eq!(size(&ab), 2);
    }

    #[test]
    fn cartesian_examples() {
        let got = cartesian(&syms(&["a"]), &ints(&[1, 2]));
        let want: VSet = [
            Value::pair(a(), Value::int(1)),
            Value::pair(a(), Value::int(2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        assert!(cartesian(&VSet::new(), &ints(&[1])).is_empty());
        assert_eq!(cartesian(&syms(&["a", "b", "c"]), &ints(&[1, 2])).len(), 6);
    }

    #[test]
    fn tuples() {
        let t = tuple_of(&[a(), Value::sym("b")]);
        assert_eq!(t.apply(&Value::int(0)).unwrap(), &a());
        assert_eq!(t.apply(&Value::int(1)).unwrap(), &Value::sym("b"));
        assert!(tuple_of(&[]).is_empty());
        assert_eq!(tuple_of(&[Value::sym("x")]).apply(&Value::int(0)).unwrap(), &Value::sym("x"));
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(Value::Set(syms(&["b", "a"])).to_string(), "{a, b}");
        assert_eq!(Value::pair(a(), Value::int(1)).to_string(), "(a, 1)");
        // integers sort before symbols
        let mixed: VSet = [a(), Value::int(3)].into_iter().collect();
        assert_eq!(Value::Set(mixed).to_string(), "{3, a}");
    }
}
