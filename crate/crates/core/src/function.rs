//! Functions fully specified by a domain and a value at each domain element.
//!
//! There is no codomain field. Two functions are equal iff they have the same
//! domain and agree pointwise, which is exactly the derived `Eq` on the
//! underlying table. "Onto" and "into" are predicates taking the target set
//! as an argument.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{KernelError, Result};
use crate::relation::{self, Rel};
use crate::value::{VSet, Value};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fun {
    table: BTreeMap<Value, Value>,
}

impl Fun {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a function from a table, rejecting a key bound to two different
    /// values.
    pub fn from_entries<I>(entries: I) -> Result<Fun>
    where
        I: IntoIterator<Item = (Value, Value)>,
    {
        let mut table = BTreeMap::new();
        for (x, y) in entries {
            match table.get(&x) {
                Some(old) if *old != y => return Err(KernelError::NotFunctional(x)),
                Some(_) => {}
                None => {
                    table.insert(x, y);
                }
            }
        }
        Ok(Fun { table })
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn dom(&self) -> VSet {
        self.table.keys().cloned().collect()
    }

    pub fn ran(&self) -> VSet {
        self.table.values().cloned().collect()
    }

    pub fn contains(&self, x: &Value) -> bool {
        self.table.contains_key(x)
    }

    pub fn get(&self, x: &Value) -> Option<&Value> {
        self.table.get(x)
    }

    pub fn apply(&self, x: &Value) -> Result<&Value> {
        self.table
            .get(x)
            .ok_or_else(|| KernelError::OutsideDomain(x.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Value, &Value)> {
        self.table.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Value> {
        self.table.keys()
    }

    pub fn values(&self) -> impl Iterator<Item = &Value> {
        self.table.values()
    }
}

impl FromIterator<(Value, Value)> for Fun {
    /// Later entries overwrite earlier ones; use [`Fun::from_entries`] when
    /// the input may be non-functional.
    fn from_iter<I: IntoIterator<Item = (Value, Value)>>(iter: I) -> Self {
        Fun {
            table: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Fun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.table.is_empty() {
            return f.write_str("{->}");
        }
        f.write_str("{")?;
        for (k, (x, y)) in self.table.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} -> {y}")?;
        }
        f.write_str("}")
    }
}

/// Equality spelled out: same domain and pointwise agreement.
pub fn fun_eq(f: &Fun, g: &Fun) -> bool {
    f == g
}

pub fn fun_from_graph(r: &Rel) -> Result<Fun> {
    if let Some(x) = relation::functional_witness(r) {
        return Err(KernelError::NotFunctional(x.clone()));
    }
    Ok(r.iter().map(|(x, y)| (x.clone(), y.clone())).collect())
}

/// `{(x, f x) | x ∈ dom f}`.
pub fn graph(f: &Fun) -> Rel {
    f.iter().map(|(x, y)| (x.clone(), y.clone())).collect()
}

pub fn apply<'a>(f: &'a Fun, x: &Value) -> Result<&'a Value> {
    f.apply(x)
}

pub fn identity_fun(a: &VSet) -> Fun {
    a.iter().map(|x| (x.clone(), x.clone())).collect()
}

/// `g ∘ f` with domain `{x ∈ dom f | f x ∈ dom g}`.
pub fn compose_fun(g: &Fun, f: &Fun) -> Fun {
    f.iter()
        .filter_map(|(x, y)| g.get(y).map(|z| (x.clone(), z.clone())))
        .collect()
}

pub fn is_fun_from(f: &Fun, xs: &VSet, ys: &VSet) -> bool {
    is_total_on(f, xs) && f.values().all(|y| ys.contains(y))
}

pub fn is_onto(f: &Fun, ys: &VSet) -> bool {
    f.ran() == *ys
}

pub fn is_total_on(f: &Fun, xs: &VSet) -> bool {
    f.len() == xs.len() && f.keys().all(|x| xs.contains(x))
}

pub fn is_partial_on(f: &Fun, xs: &VSet) -> bool {
    f.keys().all(|x| xs.contains(x))
}

pub fn is_injective(f: &Fun) -> bool {
    injectivity_witness(f).is_none()
}

/// Two distinct inputs with the same image, if any.
pub fn injectivity_witness(f: &Fun) -> Option<(Value, Value)> {
    let mut seen: BTreeMap<&Value, &Value> = BTreeMap::new();
    for (x, y) in f.iter() {
        if let Some(prev) = seen.insert(y, x) {
            return Some((prev.clone(), x.clone()));
        }
    }
    None
}

/// `f⁻` on `ran f`.
pub fn inverse(f: &Fun) -> Result<Fun> {
    if let Some((x, x2)) = injectivity_witness(f) {
        return Err(KernelError::NotInjective(x, x2));
    }
    Ok(f.iter().map(|(x, y)| (y.clone(), x.clone())).collect())
}

/// Defines `g` on `ran f` by `g (f x) = h x`.
pub fn define_by_proxy(f: &Fun, h: &Fun) -> Result<Fun> {
    if f.dom() != h.dom() {
        return Err(KernelError::DomainMismatch);
    }
    let mut g: BTreeMap<&Value, (&Value, &Value)> = BTreeMap::new();
    for (x, y) in f.iter() {
        let z = h.apply(x)?;
        if let Some(&(x0, z0)) = g.get(y) {
            if z0 != z {
                return Err(KernelError::NotWellDefined(x0.clone(), x.clone()));
            }
        } else {
            g.insert(y, (x, z));
        }
    }
    Ok(g.into_iter()
        .map(|(y, (_, z))| (y.clone(), z.clone()))
        .collect())
}

/// Whether `f` is a function from `xs` to `ys` whose every input/output pair
/// satisfies `pred`.
pub fn spec_check<P>(f: &Fun, xs: &VSet, ys: &VSet, pred: P) -> bool
where
    P: Fn(&Value, &Value) -> bool,
{
    is_fun_from(f, xs, ys) && f.iter().all(|(x, y)| pred(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{ints, syms};

    fn s(n: &str) -> Value {
        Value::sym(n)
    }
    fn i(n: i64) -> Value {
        Value::int(n)
    }
    fn fun(ps: &[(Value, Value)]) -> Fun {
        Fun::from_entries(ps.iter().cloned()).unwrap()
    }

    #[test]
    fn from_graph() {
        let f = fun_from_graph(&[(s("a"), i(1)), (s("b"), i(2))].into_iter().collect()).unwrap();
        assert_eq!(f.apply(&s("a")).unwrap(), &i(1));
        assert_eq!(f.apply(&s("b")).unwrap(), &i(2));
        assert!(fun_from_graph(&Rel::new()).unwrap().is_empty());
        let bad: Rel = [(s("a"), i(1)), (s("a"), i(2))].into_iter().collect();
        assert_eq!(fun_from_graph(&bad), Err(KernelError::NotFunctional(s("a"))));
    }

    #[test]
    fn graph_of_function() {
        let f = fun(&[(s("a"), i(1))]);
        assert_eq!(graph(&f), [(s("a"), i(1))].into_iter().collect());
        assert!(graph(&Fun::new()).is_empty());
    }

    #[test]
    fn application() {
        let f = fun(&[(s("a"), i(1)), (s("b"), i(2))]);
        assert_eq!(apply(&f, &s("b")).unwrap(), &i(2));
        assert_eq!(apply(&identity_fun(&syms(&["a"])), &s("a")).unwrap(), &s("a"));
        assert_eq!(
            apply(&fun(&[(s("a"), i(1))]), &s("z")),
            Err(KernelError::OutsideDomain(s("z")))
        );
    }

    #[test]
    fn composition_drops_inputs_leaving_the_domain() {
        let g = fun(&[(i(1), s("u"))]);
        let f = fun(&[(s("a"), i(1)), (s("b"), i(2))]);
        assert_eq!(compose_fun(&g, &f), fun(&[(s("a"), s("u"))]));
        assert_eq!(compose_fun(&f, &identity_fun(&f.dom())), f);
    }

    #[test]
    fn predicates() {
        let f = fun(&[(s("a"), i(1)), (s("b"), i(1))]);
        assert!(is_fun_from(&f, &syms(&["a", "b"]), &ints(&[1, 2])));
        assert!(!is_onto(&f, &ints(&[1, 2])));
        assert!(is_onto(&f, &ints(&[1])));
        assert!(!is_injective(&f));
        let p = fun(&[(i(0), i(1)), (i(2), i(3))]);
        assert!(is_partial_on(&p, &ints(&[0, 1, 2, 3])));
        assert!(!is_total_on(&p, &ints(&[0, 1, 2, 3])));
        assert!(is_total_on(&p, &ints(&[0, 2])));
    }

    #[test]
    fn inverses() {
        let f = fun(&[(s("a"), i(1)), (s("b"), i(2))]);
        assert_eq!(inverse(&f).unwrap(), fun(&[(i(1), s("a")), (i(2), s("b"))]));
        let g = fun(&[(s("a"), i(1)), (s("b"), i(1))]);
        assert_eq!(inverse(&g), Err(KernelError::NotInjective(s("a"), s("b"))));
    }

    #[test]
    fn proxy() {
        let f = fun(&[(s("a"), i(1)), (s("b"), i(1))]);
        let h = fun(&[(s("a"), s("u")), (s("b"), s("u"))]);
        assert_eq!(define_by_proxy(&f, &h).unwrap(), fun(&[(i(1), s("u"))]));
        let h2 = fun(&[(s("a"), s("u")), (s("b"), s("v"))]);
        assert_eq!(
            define_by_proxy(&f, &h2),
            Err(KernelError::NotWellDefined(s("a"), s("b")))
        );
        let h3 = fun(&[(s("a"), s("u"))]);
        assert_eq!(define_by_proxy(&f, &h3), Err(KernelError::DomainMismatch));
    }

    #[test]
    fn square_root_table_meets_its_predicate() {
        let sqrt = fun(&[(i(0), i(0)), (i(1), i(1)), (i(4), i(2))]);
        let squares = |x: &Value, y: &Value| match (x, y) {
            (Value::Atom(crate::Atom::Int(x)), Value::Atom(crate::Atom::Int(y))) => y * y == *x,
            _ => false,
        };
        assert!(spec_check(&sqrt, &ints(&[0, 1, 4]), &ints(&[0, 1, 2]), squares));
        assert!(!spec_check(&fun(&[(i(0), i(1))]), &ints(&[0]), &ints(&[0, 1]), squares));
        assert!(spec_check(&Fun::new(), &VSet::new(), &VSet::new(), squares));
    }

    #[test]
    fn duplicate_entries() {
        assert!(Fun::from_entries([(s("a"), i(1)), (s("a"), i(1))]).is_ok());
        assert_eq!(
            Fun::from_entries([(s("a"), i(1)), (s("a"), i(2))]),
            Err(KernelError::NotFunctional(s("a")))
        );
    }

    #[test]
    fn display() {
        assert_eq!(fun(&[(s("b"), i(2)), (s("a"), i(1))]).to_string(), "{a -> 1, b -> 2}");
        assert_eq!(Fun::new().to_string(), "{->}");
    }
}
