//! Families, products, disjoint unions and currying.
//!
//! A family is just a function; its domain is the index set. Role-specific
//! shape (family of sets, of functions, of relations) is checked where the
//! family is consumed.

use std::collections::BTreeMap;

use crate::error::{KernelError, Result};
use crate::function::Fun;
use crate::value::{cartesian, VSet, Value};

/// A function read as an indexed family.
pub type Fam = Fun;

/// Views every member of `t` as a set, in index order.
pub fn set_members(t: &Fam) -> Result<Vec<(&Value, &VSet)>> {
    t.iter()
        .map(|(i, v)| match v {
            Value::Set(s) => Ok((i, s)),
            _ => Err(KernelError::NotSetFamily(i.clone())),
        })
        .collect()
}

/// Views every member of `f` as a function, in index order.
pub fn function_members(f: &Fam) -> Result<Vec<(&Value, &Fun)>> {
    f.iter()
        .map(|(i, v)| match v {
            Value::Fun(g) => Ok((i, g)),
            _ => Err(KernelError::NotFunctionFamily(i.clone())),
        })
        .collect()
}

/// Every way of picking one element from each option list, in lexicographic
/// order of positions. An empty list of slots yields one empty choice.
pub(crate) fn choices<T: Copy>(slots: &[&[T]]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::with_capacity(slots.len())];
    for opts in slots {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for o in opts.iter() {
                let mut c = prefix.clone();
                c.push(*o);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// The set of choice functions of a set family.
pub fn product(t: &Fam) -> Result<VSet> {
    let members = set_members(t)?;
    let opts: Vec<Vec<&Value>> = members.iter().map(|(_, s)| s.iter().collect()).collect();
    let slots: Vec<&[&Value]> = opts.iter().map(Vec::as_slice).collect();
    Ok(choices(&slots)
        .into_iter()
        .map(|pick| {
            Value::Fun(
                members
                    .iter()
                    .zip(pick)
                    .map(|((i, _), x)| ((*i).clone(), x.clone()))
                    .collect(),
            )
        })
        .collect())
}

/// `pr_i` on `product(t)`.
pub fn projection(t: &Fam, i: &Value) -> Result<Fun> {
    t.apply(i)?;
    let prod = product(t)?;
    Ok(prod
        .into_iter()
        .map(|tup| {
            let x = tup.as_fun().and_then(|f| f.get(i)).cloned().expect("choice function covers the index");
            (tup, x)
        })
        .collect())
}

/// The family of projections, indexed like `t`.
pub fn projections(t: &Fam) -> Result<Fam> {
    let prod = product(t)?;
    let mut out = BTreeMap::new();
    for (i, _) in set_members(t)? {
        let pr: Fun = prod
            .iter()
            .map(|tup| {
                let f = tup.as_fun().expect("product elements are functions");
                (tup.clone(), f.get(i).cloned().expect("choice function covers the index"))
            })
            .collect();
        out.insert(i.clone(), Value::Fun(pr));
    }
    Ok(out.into_iter().collect())
}

/// `(transpose f) s = (i ↦ f_i s)`, defined on the intersection of the member
/// domains.
pub fn transpose(f: &Fam) -> Result<Fun> {
    let members = function_members(f)?;
    let Some(((_, first), rest)) = members.split_first() else {
        return Err(KernelError::EmptyFamily);
    };
    let mut out = BTreeMap::new();
    for s in first.keys() {
        if rest.iter().all(|(_, g)| g.contains(s)) {
            let tup: Fun = members
                .iter()
                .map(|(i, g)| ((*i).clone(), g.get(s).cloned().expect("s is in every domain")))
                .collect();
            out.insert(s.clone(), Value::Fun(tup));
        }
    }
    Ok(out.into_iter().collect())
}

/// `{(i, x) | i ∈ dom t, x ∈ t_i}`.
pub fn disjoint_union(t: &Fam) -> Result<VSet> {
    Ok(set_members(t)?
        .into_iter()
        .flat_map(|(i, s)| s.iter().map(move |x| Value::pair(i.clone(), x.clone())))
        .collect())
}

/// `λ_i x = (i, x)` on `t_i`.
pub fn labeling(t: &Fam, i: &Value) -> Result<Fun> {
    match t.apply(i)? {
        Value::Set(s) => Ok(s
            .iter()
            .map(|x| (x.clone(), Value::pair(i.clone(), x.clone())))
            .collect()),
        _ => Err(KernelError::NotSetFamily(i.clone())),
    }
}

pub fn labelings(t: &Fam) -> Result<Fam> {
    set_members(t)?
        .into_iter()
        .map(|(i, _)| Ok((i.clone(), Value::Fun(labeling(t, i)?))))
        .collect()
}

/// `curry f`: for a function on a set of pairs, `(curry f) x y = f (x, y)`,
/// with `dom (curry f) = {x | (x, _) ∈ dom f}` and `dom ((curry f) x) = {y |
/// (x, y) ∈ dom f}`.
pub fn curry(f: &Fun) -> Result<Fun> {
    let mut rows: BTreeMap<Value, BTreeMap<Value, Value>> = BTreeMap::new();
    for (xy, z) in f.iter() {
        let (x, y) = xy
            .as_pair()
            .ok_or_else(|| KernelError::DomainNotPairs(xy.clone()))?;
        rows.entry(x.clone()).or_default().insert(y.clone(), z.clone());
    }
    Ok(rows
        .into_iter()
        .map(|(x, row)| (x, Value::Fun(row.into_iter().collect())))
        .collect())
}

/// `(uncurry F) (x, y) = F x y` for `x ∈ dom F`, `y ∈ dom (F x)`.
pub fn uncurry_family(big_f: &Fam) -> Result<Fun> {
    Ok(function_members(big_f)?
        .into_iter()
        .flat_map(|(x, g)| {
            g.iter()
                .map(move |(y, z)| (Value::pair(x.clone(), y.clone()), z.clone()))
        })
        .collect())
}

/// All total functions from `xs` to `ys`: `|ys|^|xs|` of them.
pub fn function_space(xs: &VSet, ys: &VSet) -> VSet {
    let targets: Vec<&Value> = ys.iter().collect();
    let slots: Vec<&[&Value]> = xs.iter().map(|_| targets.as_slice()).collect();
    choices(&slots)
        .into_iter()
        .map(|pick| Value::Fun(xs.iter().cloned().zip(pick.into_iter().cloned()).collect()))
        .collect()
}

/// All functions with domain inside `xs` and range inside `ys`:
/// `(|ys| + 1)^|xs|` of them.
pub fn partial_function_space(xs: &VSet, ys: &VSet) -> VSet {
    let targets: Vec<Option<&Value>> = std::iter::once(None).chain(ys.iter().map(Some)).collect();
    let slots: Vec<&[Option<&Value>]> = xs.iter().map(|_| targets.as_slice()).collect();
    choices(&slots)
        .into_iter()
        .map(|pick| {
            Value::Fun(
                xs.iter()
                    .zip(pick)
                    .filter_map(|(x, y)| y.map(|y| (x.clone(), y.clone())))
                    .collect(),
            )
        })
        .collect()
}

/// The evaluation function `α(g, y) = g y` on `(ys → zs) × ys`.
pub fn alpha(ys: &VSet, zs: &VSet) -> Fun {
    cartesian(&function_space(ys, zs), ys)
        .into_iter()
        .map(|gy| {
            let (g, y) = gy.as_pair().expect("cartesian yields pairs");
            let z = g
                .as_fun()
                .and_then(|g| g.get(y))
                .cloned()
                .expect("total function on ys");
            (gy, z)
        })
        .collect()
}

/// `(f ∥ g)(x, y) = (f x, g y)` on `dom f × dom g`, over primitive pairs.
pub fn parallel_pair(f: &Fun, g: &Fun) -> Fun {
    f.iter()
        .flat_map(|(x, fx)| {
            g.iter().map(move |(y, gy)| {
                (
                    Value::pair(x.clone(), y.clone()),
                    Value::pair(fx.clone(), gy.clone()),
                )
            })
        })
        .collect()
}

/// The map `t ↦ (t 0, t 1)` from the product of the two-member family
/// `(xs, ys)` onto `xs × ys`.
pub fn tuple_to_pair(xs: &VSet, ys: &VSet) -> Result<Fun> {
    let fam = crate::value::tuple_of(&[Value::Set(xs.clone()), Value::Set(ys.clone())]);
    let (zero, one) = (Value::int(0), Value::int(1));
    product(&fam)?
        .into_iter()
        .map(|t| {
            let f = t.as_fun().expect("product elements are functions");
            let p = Value::pair(f.apply(&zero)?.clone(), f.apply(&one)?.clone());
            Ok((t, p))
        })
        .collect()
}

/// Extracts a function from a value, for family members.
pub(crate) fn expect_fun(v: &Value) -> Result<&Fun> {
    v.as_fun().ok_or(KernelError::TypeMismatch {
        expected: "function",
        found: v.kind(),
    })
}

pub fn fun_family<I>(members: I) -> Fam
where
    I: IntoIterator<Item = (Value, Fun)>,
{
    members.into_iter().map(|(i, f)| (i, Value::Fun(f))).collect()
}

pub fn set_family<I>(members: I) -> Fam
where
    I: IntoIterator<Item = (Value, VSet)>,
{
    members.into_iter().map(|(i, s)| (i, Value::Set(s))).collect()
}
