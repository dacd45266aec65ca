//! The built-in law catalog.

use crate::enumerate::{self, prefixes, Kind};
use crate::error::KernelError;
use crate::family::{
    curry, disjoint_union, labelings, parallel_pair, product, projections, set_members, transpose,
    uncurry_family, alpha, function_members, function_space,
};
use crate::function::{
    compose_fun, define_by_proxy, fun_from_graph, graph, identity_fun, inverse, is_fun_from,
    is_injective, Fun,
};
use crate::pointfree::{
    fork, fork_pointfree, par, par_via_fork,
    relation_members, tabulate, tabulation_laws_hold,
};
use crate::relation::{
    compose, converse, is_functional, is_functional_pointfree, is_relation_from,
    is_relation_from_product, Rel,
};
use crate::report::Instance;
use crate::value::{cartesian, VSet, Value};

use super::{Ctx, Expect, Law, Stage};

fn set<'a>(i: &'a Instance, name: &str) -> &'a VSet {
    i.get(name).and_then(Value::as_set).expect("stage binds a set")
}

fn rel(i: &Instance, name: &str) -> Rel {
    Rel::from_value(i.get(name).expect("stage binds a relation")).expect("stage binds a relation")
}

fn fun<'a>(i: &'a Instance, name: &str) -> &'a Fun {
    i.get(name).and_then(Value::as_fun).expect("stage binds a function")
}

fn p(c: &Ctx) -> VSet {
    c.carrier.clone()
}

fn relations(_: &Instance, c: &Ctx) -> Kind {
    Kind::Relations(p(c), p(c))
}

fn subsets(_: &Instance, c: &Ctx) -> Kind {
    Kind::Subsets(p(c))
}

fn partial_functions(_: &Instance, c: &Ctx) -> Kind {
    Kind::PartialFunctions(p(c), p(c))
}

fn prefixes_from(lo: usize, c: &Ctx) -> Kind {
    Kind::Explicit(prefixes(&c.carrier, lo, c.carrier.len()))
}

fn index_nonempty(_: &Instance, c: &Ctx) -> Kind {
    prefixes_from(1, c)
}

fn index_any(_: &Instance, c: &Ctx) -> Kind {
    prefixes_from(0, c)
}

fn prefix_any(_: &Instance, c: &Ctx) -> Kind {
    prefixes_from(0, c)
}

fn set_family(i: &Instance, c: &Ctx) -> Kind {
    Kind::SetFamilies { index: set(i, "I").clone(), carrier: p(c), nonempty: false }
}

fn set_family_nonempty(i: &Instance, c: &Ctx) -> Kind {
    Kind::SetFamilies { index: set(i, "I").clone(), carrier: p(c), nonempty: true }
}

fn member_sets(i: &Instance, name: &str) -> Vec<(Value, VSet)> {
    set_members(fun(i, name))
        .expect("stage binds a set family")
        .into_iter()
        .map(|(k, s)| (k.clone(), s.clone()))
        .collect()
}

// relations

static R: [Stage; 1] = [Stage { name: "R", space: relations }];

static R_X_Y: [Stage; 3] = [
    Stage { name: "R", space: relations },
    Stage { name: "X", space: subsets },
    Stage { name: "Y", space: subsets },
];

static R_S_T: [Stage; 3] = [
    Stage { name: "R", space: relations },
    Stage { name: "S", space: relations },
    Stage { name: "T", space: relations },
];

static R_S: [Stage; 2] = [
    Stage { name: "R", space: relations },
    Stage { name: "S", space: relations },
];

fn supersets(base: &VSet, within: &VSet) -> Kind {
    let extra: VSet = within.difference(base).cloned().collect();
    Kind::Explicit(
        enumerate::subsets(&extra)
            .into_iter()
            .map(|s| Value::Set(s.union(base).cloned().collect()))
            .collect(),
    )
}

static CODOMAIN: [Stage; 4] = [
    Stage { name: "R", space: relations },
    Stage {
        name: "X",
        space: |i, _| Kind::Explicit(vec![Value::Set(rel(i, "R").dom())]),
    },
    Stage { name: "Y", space: |i, c| supersets(&rel(i, "R").ran(), &c.carrier) },
    Stage { name: "Y2", space: |i, c| supersets(set(i, "Y"), &c.carrier) },
];

fn from_product_equiv(i: &Instance) -> bool {
    let (r, x, y) = (rel(i, "R"), set(i, "X"), set(i, "Y"));
    is_relation_from(&r, x, y) == is_relation_from_product(&r, x, y)
}

fn compose_assoc(i: &Instance) -> bool {
    let (r, s, t) = (rel(i, "R"), rel(i, "S"), rel(i, "T"));
    compose(&t, &compose(&s, &r)) == compose(&compose(&t, &s), &r)
}

fn converse_involution(i: &Instance) -> bool {
    let r = rel(i, "R");
    let c = converse(&r);
    converse(&c) == r && c.dom() == r.ran() && c.ran() == r.dom()
}

fn converse_antidistributes(i: &Instance) -> bool {
    let (r, s) = (rel(i, "R"), rel(i, "S"));
    converse(&compose(&s, &r)) == compose(&converse(&r), &converse(&s))
}

fn functional_pointfree(i: &Instance) -> bool {
    let r = rel(i, "R");
    is_functional(&r) == is_functional_pointfree(&r)
}

/// The unsound reading: a relation that is a relation into both `Y` and a
/// strictly larger `Y2` would have to have `Y = Y2`.
fn codomain_is_attribute(i: &Instance) -> bool {
    let r = rel(i, "R");
    if r.is_empty() {
        return true;
    }
    let (x, y, y2) = (set(i, "X"), set(i, "Y"), set(i, "Y2"));
    !(is_relation_from(&r, x, y) && is_relation_from(&r, x, y2)) || y == y2
}

// functions

static F_G: [Stage; 2] = [
    Stage { name: "f", space: partial_functions },
    Stage { name: "g", space: partial_functions },
];

static F: [Stage; 1] = [Stage { name: "f", space: partial_functions }];

static F_H: [Stage; 2] = [
    Stage { name: "f", space: partial_functions },
    Stage { name: "h", space: |i, c| Kind::Functions(fun(i, "f").dom(), p(c)) },
];

fn equality_thm(i: &Instance) -> bool {
    let (f, g) = (fun(i, "f"), fun(i, "g"));
    let pointwise = f.dom() == g.dom() && f.iter().all(|(x, y)| g.get(x) == Some(y));
    (f == g) == pointwise
}

fn compose_graph_agree(i: &Instance) -> bool {
    let (f, g) = (fun(i, "f"), fun(i, "g"));
    fun_from_graph(&compose(&graph(g), &graph(f))).is_ok_and(|h| h == compose_fun(g, f))
}

fn compose_domain(i: &Instance) -> bool {
    let (f, g) = (fun(i, "f"), fun(i, "g"));
    let h = compose_fun(g, f);
    let want: VSet = f
        .iter()
        .filter(|(_, y)| g.contains(y))
        .map(|(x, _)| x.clone())
        .collect();
    h.dom() == want && h.iter().all(|(x, z)| g.get(f.get(x).unwrap()) == Some(z))
}

fn inverse_iff_injective(i: &Instance) -> bool {
    let f = fun(i, "f");
    let one_to_one = is_functional(&converse(&graph(f)));
    match inverse(f) {
        Ok(inv) => {
            one_to_one
                && inv.dom() == f.ran()
                && compose_fun(&inv, f) == identity_fun(&f.dom())
                && compose_fun(f, &inv) == identity_fun(&f.ran())
        }
        Err(KernelError::NotInjective(a, b)) => !one_to_one && a != b && f.get(&a) == f.get(&b),
        Err(_) => false,
    }
}

fn proxy_welldef(i: &Instance) -> bool {
    let (f, h) = (fun(i, "f"), fun(i, "h"));
    let welldef = f
        .iter()
        .all(|(x, y)| f.iter().all(|(x2, y2)| y != y2 || h.get(x) == h.get(x2)));
    match define_by_proxy(f, h) {
        Ok(g) => {
            welldef
                && g.dom() == f.ran()
                && f.iter().all(|(x, y)| g.get(y) == h.get(x))
                && (!is_injective(f) || inverse(f).is_ok_and(|inv| g == compose_fun(h, &inv)))
        }
        Err(KernelError::NotWellDefined(..)) => !welldef,
        Err(_) => false,
    }
}

// families

/// Every family `f_i ∈ from(t_i) → to(t_i)` over the members of `T`.
fn legs(i: &Instance, dir: fn(&VSet, &VSet) -> (VSet, VSet)) -> Kind {
    let s = set(i, "S");
    Kind::Choices(
        member_sets(i, "T")
            .into_iter()
            .map(|(k, ti)| {
                let (xs, ys) = dir(s, &ti);
                (k, function_space(&xs, &ys).into_iter().collect())
            })
            .collect(),
    )
}

static PRODUCT_UNIVERSAL: [Stage; 4] = [
    Stage { name: "I", space: index_nonempty },
    Stage { name: "T", space: set_family_nonempty },
    Stage { name: "S", space: prefix_any },
    Stage { name: "f", space: |i, _| legs(i, |s, ti| (s.clone(), ti.clone())) },
];

static SUM_UNIVERSAL: [Stage; 4] = [
    Stage { name: "I", space: index_any },
    Stage { name: "T", space: set_family_nonempty },
    Stage { name: "S", space: prefix_any },
    Stage { name: "f", space: |i, _| legs(i, |s, ti| (ti.clone(), s.clone())) },
];

static NONEMPTY_FAMILY: [Stage; 2] = [
    Stage { name: "I", space: index_nonempty },
    Stage { name: "T", space: set_family },
];

static ANY_FAMILY: [Stage; 2] = [
    Stage { name: "I", space: index_any },
    Stage { name: "T", space: set_family },
];

static PAIR_DOMAIN: [Stage; 2] = [
    Stage { name: "D", space: |_, c| Kind::Subsets(cartesian(&c.carrier, &c.carrier)) },
    Stage { name: "f", space: |i, c| Kind::Functions(set(i, "D").clone(), p(c)) },
];

static FUN_FAMILY: [Stage; 2] = [
    Stage { name: "I", space: index_any },
    Stage {
        name: "F",
        space: |i, c| Kind::FunFamilies { index: set(i, "I").clone(), xs: p(c), ys: p(c) },
    },
];

static ALPHA: [Stage; 4] = [
    Stage { name: "X", space: prefix_any },
    Stage { name: "Y", space: prefix_any },
    Stage { name: "Z", space: prefix_any },
    Stage {
        name: "f",
        space: |i, _| Kind::Functions(cartesian(set(i, "X"), set(i, "Y")), set(i, "Z").clone()),
    },
];

// A mediator is a choice of one candidate per point, so the number of
// mediators is the product of the per-point candidate counts.

fn product_universal(i: &Instance) -> bool {
    let (t, s, f) = (fun(i, "T"), set(i, "S"), fun(i, "f"));
    let (Ok(prod), Ok(g), Ok(legs)) = (product(t), transpose(f), function_members(f)) else {
        return false;
    };
    g.dom() == *s
        && s.iter().all(|x| {
            let mut hits = prod.iter().filter(|tuple| {
                let tuple = tuple.as_fun().expect("product yields tuples");
                legs.iter().all(|(k, fk)| tuple.get(k) == fk.get(x))
            });
            hits.next() == g.get(x) && hits.next().is_none()
        })
}

fn sum_universal(i: &Instance) -> bool {
    let (t, s, f) = (fun(i, "T"), set(i, "S"), fun(i, "f"));
    let (Ok(sum), Ok(g), Ok(legs)) = (disjoint_union(t), uncurry_family(f), function_members(f)) else {
        return false;
    };
    g.dom() == sum
        && sum.iter().all(|p| {
            let (k, x) = p.as_pair().expect("disjoint union yields pairs");
            let fk = legs.iter().find(|(j, _)| *j == k).map(|(_, fk)| fk);
            let mut hits = s.iter().filter(|z| fk.and_then(|fk| fk.get(x)) == Some(*z));
            hits.next() == g.get(p) && hits.next().is_none()
        })
}

fn pr_transpose_id(i: &Instance) -> bool {
    let t = fun(i, "T");
    match (projections(t).and_then(|pr| transpose(&pr)), product(t)) {
        (Ok(tr), Ok(prod)) => tr == identity_fun(&prod),
        _ => false,
    }
}

fn lam_uncurry_id(i: &Instance) -> bool {
    let t = fun(i, "T");
    let (Ok(lams), Ok(sum)) = (labelings(t), disjoint_union(t)) else {
        return false;
    };
    let legs_ok = function_members(&lams).is_ok_and(|ls| {
        ls.iter().zip(member_sets(i, "T")).all(|((_, l), (_, ti))| {
            is_injective(l) && is_fun_from(l, &ti, &sum)
        })
    });
    legs_ok && uncurry_family(&lams).is_ok_and(|u| u == identity_fun(&sum))
}

fn curry_roundtrip(i: &Instance) -> bool {
    let (d, f) = (set(i, "D"), fun(i, "f"));
    let Ok(fc) = curry(f) else { return false };
    let dr = Rel::from_vset(d).expect("pair domain");
    let rows_ok = fc.dom() == dr.dom()
        && fc.iter().all(|(x, row)| {
            row.as_fun()
                .is_some_and(|row| row.dom() == dr.image(x).cloned().collect::<VSet>())
        });
    rows_ok && uncurry_family(&fc).is_ok_and(|u| u == *f)
}

fn uncurry_roundtrip_guard(i: &Instance) -> bool {
    let big_f = fun(i, "F");
    let no_empty = big_f.values().all(|v| v.as_fun().is_some_and(|g| !g.is_empty()));
    let round = uncurry_family(big_f)
        .and_then(|u| curry(&u))
        .is_ok_and(|c| c == *big_f);
    round == no_empty
}

fn alpha_curry(i: &Instance) -> bool {
    let (xs, ys, zs, f) = (set(i, "X"), set(i, "Y"), set(i, "Z"), fun(i, "f"));
    let Ok(fc) = curry(f) else { return false };
    let a = alpha(ys, zs);
    let id_y = identity_fun(ys);
    let through = |h: &Fun| compose_fun(&a, &parallel_pair(h, &id_y));
    if through(&fc) != *f {
        return false;
    }
    // With an empty Y the general curry has an empty domain while every h on a
    // nonempty X does not, so uniqueness is only stated for nonempty Y or X.
    if ys.is_empty() && !xs.is_empty() {
        return true;
    }
    // h ↦ α ∘ (h ∥ id_Y) acts on each x separately, so h is unique iff its
    // restriction to every single x is.
    fc.dom() == *xs
        && xs.iter().all(|x| {
            let fx: Fun = f
                .iter()
                .filter(|(p, _)| p.first() == Some(x))
                .map(|(p, z)| (p.clone(), z.clone()))
                .collect();
            let point: VSet = [x.clone()].into_iter().collect();
            let mut hits = function_space(&point, &function_space(ys, zs))
                .into_iter()
                .filter(|h| through(h.as_fun().expect("function space yields functions")) == fx);
            let want = fc.get(x).map(|row| Value::Fun([(x.clone(), row.clone())].into_iter().collect()));
            hits.next() == want && hits.next().is_none()
        })
}

// point-free

static FORK: [Stage; 4] = [
    Stage { name: "I", space: index_nonempty },
    Stage { name: "T", space: set_family },
    Stage { name: "S", space: subsets },
    Stage {
        name: "R",
        space: |i, _| {
            let s = set(i, "S");
            Kind::RelFamilies(
                member_sets(i, "T")
                    .into_iter()
                    .map(|(k, ti)| (k, s.clone(), ti))
                    .collect(),
            )
        },
    },
];

static PAR: [Stage; 4] = [
    Stage { name: "I", space: index_nonempty },
    Stage { name: "T", space: set_family },
    Stage { name: "T2", space: set_family },
    Stage {
        name: "R",
        space: |i, _| {
            Kind::RelFamilies(
                member_sets(i, "T")
                    .into_iter()
                    .zip(member_sets(i, "T2"))
                    .map(|((k, ti), (_, t2i))| (k, ti, t2i))
                    .collect(),
            )
        },
    },
];

fn fork_sub(i: &Instance) -> bool {
    let (r, t, s) = (fun(i, "R"), fun(i, "T"), set(i, "S"));
    let (Ok(fk), Ok(fk2), Ok(prs), Ok(members)) =
        (fork(r, t, s), fork_pointfree(r, t, s), projections(t), relation_members(r))
    else {
        return false;
    };
    if fk != fk2 {
        return false;
    }
    let common: VSet = members
        .iter()
        .map(|(_, ri)| ri.dom())
        .reduce(|a, b| a.intersection(&b).cloned().collect())
        .unwrap_or_default();
    members.iter().zip(member_sets(i, "T")).all(|((k, ri), (_, ti))| {
        let pr_i = prs.get(k).and_then(Value::as_fun).expect("projection per index");
        let back = compose(&graph(pr_i), &fk);
        back.is_subset(ri)
            && s.iter().all(|x| {
                ti.iter()
                    .all(|y| back.holds(x, y) == (ri.holds(x, y) && common.contains(x)))
            })
    })
}

fn fork_sharp(i: &Instance) -> bool {
    let (r, t, s) = (fun(i, "R"), fun(i, "T"), set(i, "S"));
    let (Ok(fk), Ok(prs), Ok(members)) = (fork(r, t, s), projections(t), relation_members(r)) else {
        return false;
    };
    let first = members[0].1.dom();
    if members.iter().any(|(_, ri)| ri.dom() != first) {
        return true;
    }
    members.iter().all(|(k, ri)| {
        let pr_i = prs.get(k).and_then(Value::as_fun).expect("projection per index");
        compose(&graph(pr_i), &fk) == *ri
    })
}

fn par_pointwise(i: &Instance) -> bool {
    let (r, t, t2) = (fun(i, "R"), fun(i, "T"), fun(i, "T2"));
    match (par(r, t, t2), par_via_fork(r, t, t2)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn tabulation(i: &Instance) -> bool {
    let r = rel(i, "R");
    let (f, g) = tabulate(&r);
    f.dom() == r.to_vset() && g.dom() == r.to_vset() && tabulation_laws_hold(&r, &f, &g)
}

static CATALOG: [Law; 22] = [
    Law {
        id: "rel.from-product-equiv",
        anchor: "relation from X to Y: dom/ran inclusion agrees with R ⊆ X × Y",
        expect: Expect::Pass,
        stages: &R_X_Y,
        check: from_product_equiv,
    },
    Law {
        id: "rel.compose-assoc",
        anchor: "relational composition is associative",
        expect: Expect::Pass,
        stages: &R_S_T,
        check: compose_assoc,
    },
    Law {
        id: "rel.converse-involution",
        anchor: "converse is an involution swapping domain and range",
        expect: Expect::Pass,
        stages: &R,
        check: converse_involution,
    },
    Law {
        id: "rel.converse-antidistributes",
        anchor: "converse reverses composition",
        expect: Expect::Pass,
        stages: &R_S,
        check: converse_antidistributes,
    },
    Law {
        id: "rel.functional-pointfree",
        anchor: "functional iff R ∘ R˘ is the identity on ran R",
        expect: Expect::Pass,
        stages: &R,
        check: functional_pointfree,
    },
    Law {
        id: "rel.codomain-not-attribute",
        anchor: "a target set is not determined by the relation",
        expect: Expect::Fail,
        stages: &CODOMAIN,
        check: codomain_is_attribute,
    },
    Law {
        id: "fun.equality-thm",
        anchor: "functions are equal iff same domain and pointwise equal",
        expect: Expect::Pass,
        stages: &F_G,
        check: equality_thm,
    },
    Law {
        id: "fun.compose-graph-agree",
        anchor: "function composition agrees with composing graphs",
        expect: Expect::Pass,
        stages: &F_G,
        check: compose_graph_agree,
    },
    Law {
        id: "fun.compose-domain",
        anchor: "dom (g ∘ f) = {x ∈ dom f | f x ∈ dom g}",
        expect: Expect::Pass,
        stages: &F_G,
        check: compose_domain,
    },
    Law {
        id: "fun.inverse-iff-injective",
        anchor: "the inverse exists iff f is injective and undoes f on both sides",
        expect: Expect::Pass,
        stages: &F,
        check: inverse_iff_injective,
    },
    Law {
        id: "fun.proxy-welldef",
        anchor: "g (f x) = h x is well defined iff f-equal inputs are h-equal",
        expect: Expect::Pass,
        stages: &F_H,
        check: proxy_welldef,
    },
    Law {
        id: "fam.product-universal",
        anchor: "product universal property: the unique mediator is the transpose",
        expect: Expect::Pass,
        stages: &PRODUCT_UNIVERSAL,
        check: product_universal,
    },
    Law {
        id: "fam.sum-universal",
        anchor: "disjoint-union universal property: the unique mediator is the uncurry",
        expect: Expect::Pass,
        stages: &SUM_UNIVERSAL,
        check: sum_universal,
    },
    Law {
        id: "fam.pr-transpose-id",
        anchor: "transpose of the projections is the identity on the product",
        expect: Expect::Pass,
        stages: &NONEMPTY_FAMILY,
        check: pr_transpose_id,
    },
    Law {
        id: "fam.lam-uncurry-id",
        anchor: "uncurry of the labelings is the identity on the disjoint union",
        expect: Expect::Pass,
        stages: &ANY_FAMILY,
        check: lam_uncurry_id,
    },
    Law {
        id: "fam.curry-roundtrip",
        anchor: "uncurry (curry f) = f on pair domains",
        expect: Expect::Pass,
        stages: &PAIR_DOMAIN,
        check: curry_roundtrip,
    },
    Law {
        id: "fam.uncurry-roundtrip-guard",
        anchor: "curry (uncurry F) = F iff F has no empty member",
        expect: Expect::Pass,
        stages: &FUN_FAMILY,
        check: uncurry_roundtrip_guard,
    },
    Law {
        id: "fam.alpha-curry",
        anchor: "f = α ∘ (curry f ∥ id), and curry f is the only such map",
        expect: Expect::Pass,
        stages: &ALPHA,
        check: alpha_curry,
    },
    Law {
        id: "pf.fork-sub",
        anchor: "fork pointwise = point-free, and pr_i ∘ ⟨R⟩ ⊆ R_i",
        expect: Expect::Pass,
        stages: &FORK,
        check: fork_sub,
    },
    Law {
        id: "pf.fork-sharp-common-domain",
        anchor: "pr_i ∘ ⟨R⟩ = R_i when all R_i share a domain",
        expect: Expect::Pass,
        stages: &FORK,
        check: fork_sharp,
    },
    Law {
        id: "pf.par-pointwise",
        anchor: "parallel pointwise = fork of R_i ∘ pr_i",
        expect: Expect::Pass,
        stages: &PAR,
        check: par_pointwise,
    },
    Law {
        id: "pf.tabulation",
        anchor: "tabulation: R = g ∘ f˘ and (f˘ ∘ f) ∩ (g˘ ∘ g) = id",
        expect: Expect::Pass,
        stages: &R,
        check: tabulation,
    },
];

pub fn catalog() -> &'static [Law] {
    &CATALOG
}
