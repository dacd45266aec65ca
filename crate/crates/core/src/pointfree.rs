//! Fork, parallel, tabulation and the executable universal properties of
//! products and disjoint unions.
//!
//! Relations carry no carriers, so every construction here takes the source
//! and target sets explicitly.

use crate::error::{KernelError, Result};
use crate::family::{
    self, disjoint_union, function_members, function_space, labelings, product, projections,
    set_members, transpose, uncurry_family, Fam,
};
use crate::function::{compose_fun, graph, identity_fun, injectivity_witness, inverse, is_fun_from, Fun};
use crate::relation::{self, compose, converse, is_relation_from, Rel};
use crate::report::{Instance, LawReport, Outcome};
use crate::value::{VSet, Value};

/// Views every member of `r` as a relation, in index order.
pub fn relation_members(r: &Fam) -> Result<Vec<(&Value, Rel)>> {
    r.iter()
        .map(|(i, v)| match v {
            Value::Set(s) => Rel::from_vset(s)
                .map(|rel| (i, rel))
                .map_err(|_| KernelError::NotRelationFamily(i.clone())),
            _ => Err(KernelError::NotRelationFamily(i.clone())),
        })
        .collect()
}

/// Wraps relations as a family value.
pub fn relation_family<I>(members: I) -> Fam
where
    I: IntoIterator<Item = (Value, Rel)>,
{
    members.into_iter().map(|(i, r)| (i, r.to_value())).collect()
}

fn same_index(a: &Fam, b: &Fam) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(KernelError::EmptyIndex);
    }
    if let Some(i) = a.keys().find(|i| !b.contains(i)).or_else(|| b.keys().find(|i| !a.contains(i))) {
        return Err(KernelError::CarrierMismatch(i.clone()));
    }
    Ok(())
}

/// Validated fork inputs: relation members paired with their target sets.
fn fork_members<'a>(r: &'a Fam, t: &'a Fam, src: &VSet) -> Result<Vec<(&'a Value, Rel, &'a VSet)>> {
    same_index(r, t)?;
    let targets = set_members(t)?;
    let rels = relation_members(r)?;
    rels.into_iter()
        .zip(targets)
        .map(|((i, rel), (_, ti))| {
            if is_relation_from(&rel, src, ti) {
                Ok((i, rel, ti))
            } else {
                Err(KernelError::CarrierMismatch(i.clone()))
            }
        })
        .collect()
}

/// `⟨R⟩` from `src` to `product(t)`, computed pointwise: `s` is related to
/// `t` iff every `R_i` relates `s` to `t i`.
pub fn fork(r: &Fam, t: &Fam, src: &VSet) -> Result<Rel> {
    let members = fork_members(r, t, src)?;
    let prod = product(t)?;
    let mut out = Rel::new();
    for s in src {
        for tup in &prod {
            let tf = tup.as_fun().expect("product elements are functions");
            let all = members.iter().all(|(i, rel, _)| {
                tf.get(i).is_some_and(|y| rel.holds(s, y))
            });
            if all {
                out.insert(s.clone(), tup.clone());
            }
        }
    }
    Ok(out)
}

/// `⟨R⟩` computed point-free as `⋂ i . pr_i˘ ∘ R_i`, restricted to sources
/// in `src`.
pub fn fork_pointfree(r: &Fam, t: &Fam, src: &VSet) -> Result<Rel> {
    let members = fork_members(r, t, src)?;
    let prs = projections(t)?;
    let mut acc: Option<Rel> = None;
    for (i, rel, _) in &members {
        let pr_i = family::expect_fun(prs.apply(i)?)?;
        let term = compose(&converse(&graph(pr_i)), rel);
        acc = Some(match acc {
            None => term,
            Some(a) => relation::intersection(&a, &term),
        });
    }
    let acc = acc.ok_or(KernelError::EmptyIndex)?;
    Ok(relation::restrict_dom(&acc, src))
}

/// `∥R` from `product(t)` to `product(t2)`, computed pointwise.
pub fn par(r: &Fam, t: &Fam, t2: &Fam) -> Result<Rel> {
    let members = par_members(r, t, t2)?;
    let (prod, prod2) = (product(t)?, product(t2)?);
    let mut out = Rel::new();
    for a in &prod {
        let af = a.as_fun().expect("product elements are functions");
        for b in &prod2 {
            let bf = b.as_fun().expect("product elements are functions");
            let all = members.iter().all(|(i, rel)| match (af.get(i), bf.get(i)) {
                (Some(x), Some(y)) => rel.holds(x, y),
                _ => false,
            });
            if all {
                out.insert(a.clone(), b.clone());
            }
        }
    }
    Ok(out)
}

fn par_members<'a>(r: &'a Fam, t: &'a Fam, t2: &'a Fam) -> Result<Vec<(&'a Value, Rel)>> {
    same_index(r, t)?;
    same_index(r, t2)?;
    let rels = relation_members(r)?;
    let (src, dst) = (set_members(t)?, set_members(t2)?);
    rels.into_iter()
        .zip(src.into_iter().zip(dst))
        .map(|((i, rel), ((_, ti), (_, t2i)))| {
            if is_relation_from(&rel, ti, t2i) {
                Ok((i, rel))
            } else {
                Err(KernelError::CarrierMismatch(i.clone()))
            }
        })
        .collect()
}

/// `∥R` built as the fork of `i ↦ R_i ∘ pr_i` from `product(t)`.
pub fn par_via_fork(r: &Fam, t: &Fam, t2: &Fam) -> Result<Rel> {
    let members = par_members(r, t, t2)?;
    let prs = projections(t)?;
    let mut composed = Vec::with_capacity(members.len());
    for (i, rel) in members {
        let pr_i = family::expect_fun(prs.apply(i)?)?;
        composed.push((i.clone(), compose(&rel, &graph(pr_i))));
    }
    fork(&relation_family(composed), t2, &product(t)?)
}

/// The tabulation of `r`: both functions live on the pair set of `r`, with
/// `f (x, y) = x` and `g (x, y) = y`.
pub fn tabulate(r: &Rel) -> (Fun, Fun) {
    let f = r
        .iter()
        .map(|(x, y)| (Value::pair(x.clone(), y.clone()), x.clone()))
        .collect();
    let g = r
        .iter()
        .map(|(x, y)| (Value::pair(x.clone(), y.clone()), y.clone()))
        .collect();
    (f, g)
}

/// Both tabulation laws: `r = g ∘ f˘` and `(f˘ ∘ f) ∩ (g˘ ∘ g) = id`.
pub fn tabulation_laws_hold(r: &Rel, f: &Fun, g: &Fun) -> bool {
    let (gf, gg) = (graph(f), graph(g));
    let recovered = compose(&gg, &converse(&gf));
    let kernel = relation::intersection(&compose(&converse(&gf), &gf), &compose(&converse(&gg), &gg));
    recovered == *r && kernel == relation::identity(&r.to_vset())
}

fn budget(count: u128, cap: u64) -> Option<Outcome> {
    (count > cap as u128).then_some(Outcome::BudgetExceeded(count))
}

fn product_space(sets: &[VSet]) -> Vec<Vec<Value>> {
    let slots: Vec<Vec<&Value>> = sets.iter().map(|s| s.iter().collect()).collect();
    let refs: Vec<&[&Value]> = slots.iter().map(Vec::as_slice).collect();
    family::choices(&refs)
        .into_iter()
        .map(|c| c.into_iter().cloned().collect())
        .collect()
}

/// Checks existence and uniqueness of the mediating map into `product(t)` by
/// trying every candidate `g ∈ src → product(t)` for every family of legs
/// `f_i ∈ src → t_i`.
pub fn check_product_universal(t: &Fam, src: &VSet, cap: u64) -> Result<LawReport> {
    let members = set_members(t)?;
    if members.is_empty() {
        return Err(KernelError::EmptyIndex);
    }
    let id = "fam.product-universal".to_owned();
    let prod = product(t)?;
    let leg_spaces: Vec<VSet> = members.iter().map(|(_, ti)| function_space(src, ti)).collect();
    let families: u128 = leg_spaces.iter().map(|s| s.len() as u128).product();
    let total = families * (prod.len() as u128).pow(src.len() as u32);
    if let Some(outcome) = budget(total, cap) {
        return Ok(LawReport { id, instances: 0, outcome });
    }
    let candidates = function_space(src, &prod);
    let prs = projections(t)?;
    let pr: Vec<&Fun> = members
        .iter()
        .map(|(i, _)| family::expect_fun(prs.apply(i)?))
        .collect::<Result<_>>()?;
    for legs in product_space(&leg_spaces) {
        let f: Fam = members.iter().map(|(i, _)| (*i).clone()).zip(legs.iter().cloned()).collect();
        let solutions: Vec<&Value> = candidates
            .iter()
            .filter(|g| {
                let g = g.as_fun().expect("function space yields functions");
                pr.iter().zip(&legs).all(|(pr_i, f_i)| Value::Fun(compose_fun(pr_i, g)) == *f_i)
            })
            .collect();
        let expected = Value::Fun(transpose(&f)?);
        if solutions.len() != 1 || *solutions[0] != expected {
            let cx = Instance::new()
                .with("T", t.clone())
                .with("S", src.clone())
                .with("f", f)
                .with("solutions", solutions.into_iter().cloned().collect::<VSet>());
            return Ok(LawReport { id, instances: total as u64, outcome: Outcome::Fail(cx) });
        }
    }
    Ok(LawReport { id, instances: total as u64, outcome: Outcome::Pass })
}

/// Dual of [`check_product_universal`]: every `g ∈ disjoint_union(t) → dst`
/// is tried against every family `f_i ∈ t_i → dst`.
pub fn check_sum_universal(t: &Fam, dst: &VSet, cap: u64) -> Result<LawReport> {
    let members = set_members(t)?;
    let id = "fam.sum-universal".to_owned();
    let sum = disjoint_union(t)?;
    let leg_spaces: Vec<VSet> = members.iter().map(|(_, ti)| function_space(ti, dst)).collect();
    let families: u128 = leg_spaces.iter().map(|s| s.len() as u128).product();
    let total = families * (dst.len() as u128).pow(sum.len() as u32);
    if let Some(outcome) = budget(total, cap) {
        return Ok(LawReport { id, instances: 0, outcome });
    }
    let candidates = function_space(&sum, dst);
    let lams = labelings(t)?;
    let lam: Vec<&Fun> = members
        .iter()
        .map(|(i, _)| family::expect_fun(lams.apply(i)?))
        .collect::<Result<_>>()?;
    for legs in product_space(&leg_spaces) {
        let f: Fam = members.iter().map(|(i, _)| (*i).clone()).zip(legs.iter().cloned()).collect();
        let solutions: Vec<&Value> = candidates
            .iter()
            .filter(|g| {
                let g = g.as_fun().expect("function space yields functions");
                lam.iter().zip(&legs).all(|(l, f_i)| Value::Fun(compose_fun(g, l)) == *f_i)
            })
            .collect();
        let expected = Value::Fun(uncurry_family(&f)?);
        if solutions.len() != 1 || *solutions[0] != expected {
            let cx = Instance::new()
                .with("T", t.clone())
                .with("S", dst.clone())
                .with("f", f)
                .with("solutions", solutions.into_iter().cloned().collect::<VSet>());
            return Ok(LawReport { id, instances: total as u64, outcome: Outcome::Fail(cx) });
        }
    }
    Ok(LawReport { id, instances: total as u64, outcome: Outcome::Pass })
}

/// Result of checking a candidate cone or cocone against the canonical one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub report: LawReport,
    /// `transpose γ` (product side) or `uncurry δ` (sum side).
    pub mediator: Fun,
    /// The inverse `h`, present when the mediator is a bijection.
    pub inverse: Option<Fun>,
}

fn bijection_report(
    id: &str,
    mediator: Fun,
    from: &VSet,
    onto: &VSet,
) -> Result<CandidateReport> {
    let id = id.to_owned();
    let instances = from.len() as u64;
    let fail = |cx: Instance, mediator: Fun| {
        Ok(CandidateReport {
            report: LawReport { id: id.clone(), instances, outcome: Outcome::Fail(cx) },
            mediator,
            inverse: None,
        })
    };
    if let Some(x) = from.iter().find(|x| !mediator.contains(x)) {
        return fail(Instance::new().with("unmapped", x.clone()), mediator);
    }
    if let Some((a, b)) = injectivity_witness(&mediator) {
        let image = mediator.apply(&a)?.clone();
        return fail(
            Instance::new().with("x", a).with("x2", b).with("image", image),
            mediator,
        );
    }
    if let Some(y) = onto.iter().find(|y| !mediator.ran().contains(*y)) {
        return fail(Instance::new().with("missed", y.clone()), mediator);
    }
    let h = inverse(&mediator)?;
    debug_assert_eq!(compose_fun(&h, &mediator), identity_fun(from));
    debug_assert_eq!(compose_fun(&mediator, &h), identity_fun(onto));
    Ok(CandidateReport {
        report: LawReport { id, instances, outcome: Outcome::Pass },
        mediator,
        inverse: Some(h),
    })
}

/// Given legs `γ_i ∈ c → t_i`, reports whether `transpose γ` is a bijection
/// from `c` onto `product(t)`, exhibiting its inverse when it is.
pub fn check_product_candidate(gamma: &Fam, c: &VSet, t: &Fam) -> Result<CandidateReport> {
    same_index(gamma, t)?;
    let legs = function_members(gamma)?;
    for ((i, g), (_, ti)) in legs.iter().zip(set_members(t)?) {
        if !is_fun_from(g, c, ti) {
            return Err(KernelError::CarrierMismatch((*i).clone()));
        }
    }
    bijection_report("fam.product-candidate", transpose(gamma)?, c, &product(t)?)
}

/// Given legs `δ_i ∈ t_i → d`, reports whether `uncurry δ` is a bijection
/// from `disjoint_union(t)` onto `d`, exhibiting its inverse when it is.
pub fn check_sum_candidate(delta: &Fam, d: &VSet, t: &Fam) -> Result<CandidateReport> {
    if delta.dom() != t.dom() {
        let i = delta
            .keys()
            .find(|i| !t.contains(i))
            .or_else(|| t.keys().find(|i| !delta.contains(i)))
            .expect("domains differ");
        return Err(KernelError::CarrierMismatch(i.clone()));
    }
    let legs = function_members(delta)?;
    for ((i, g), (_, ti)) in legs.iter().zip(set_members(t)?) {
        if !is_fun_from(g, ti, d) {
            return Err(KernelError::CarrierMismatch((*i).clone()));
        }
    }
    bijection_report("fam.sum-candidate", uncurry_family(delta)?, &disjoint_union(t)?, d)
}
