//! Printing a parsed script and parsing it again gives the same syntax.

use cct::dsl::{self, BinOp, CallOp, DeclKind, Expr, Script, Stmt, UnOp};
use cct::laws;
use cct::Atom;
use proptest::prelude::*;
use proptest::sample::select;

const POOL: &[&str] = &["a", "b", "c", "p", "q", "nil"];

fn atom() -> impl Strategy<Value = Expr> {
    prop_oneof![
        select(POOL).prop_map(|s| Expr::Atom(Atom::sym(s))),
        (-3i64..20).prop_map(|n| Expr::Atom(Atom::Int(n))),
    ]
}

fn expr(names: usize) -> BoxedStrategy<Expr> {
    let leaf = if names == 0 {
        atom().boxed()
    } else {
        prop_oneof![
            3 => atom(),
            3 => (0..names).prop_map(|k| Expr::Name(format!("N{k}"))),
            1 => Just(Expr::Set(vec![])),
            1 => Just(Expr::Map(vec![])),
        ]
        .boxed()
    };
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Pair(Box::new(a), Box::new(b))),
            prop::collection::vec(inner.clone(), 1..4).prop_map(Expr::Set),
            prop::collection::vec((inner.clone(), inner.clone()), 1..3).prop_map(Expr::Map),
            (select(UnOp::ALL.to_vec()), inner.clone()).prop_map(|(op, a)| Expr::Unary(op, Box::new(a))),
            inner.clone().prop_map(|a| Expr::Converse(Box::new(a))),
            (select(vec![BinOp::Union, BinOp::Inter, BinOp::Compose]), inner.clone(), inner.clone())
                .prop_map(|(op, l, r)| Expr::Binary(op, Box::new(l), Box::new(r))),
            select(CallOp::ALL.to_vec()).prop_flat_map(move |op| {
                prop::collection::vec(inner.clone(), op.arity()).prop_map(move |args| Expr::Call(op, args))
            }),
        ]
    })
    .boxed()
}

fn stmt(names: usize) -> BoxedStrategy<Stmt> {
    let ids: Vec<String> = laws::catalog().iter().map(|l| l.id.to_owned()).collect();
    prop_oneof![
        expr(names).prop_map(Stmt::Eval),
        select(ids).prop_map(Stmt::CheckLaw),
        (expr(names), expr(names)).prop_map(|(a, b)| Stmt::CheckEq(a, b)),
        (expr(names), expr(names)).prop_map(|(a, b)| Stmt::Assert(a, b)),
    ]
    .boxed()
}

fn decl_kind() -> impl Strategy<Value = DeclKind> {
    select(vec![DeclKind::Set, DeclKind::Rel, DeclKind::Fun, DeclKind::Fam])
}

/// Five declarations `N0..N4` in order, each followed by statements that may
/// mention the names declared so far.
fn script() -> impl Strategy<Value = Vec<Stmt>> {
    let segments: Vec<BoxedStrategy<Vec<Stmt>>> = (0..5)
        .map(|k| {
            (decl_kind(), expr(k), prop::collection::vec(stmt(k + 1), 0..4))
                .prop_filter("an empty set literal declares an empty map here", |(kind, e, _)| {
                    !(matches!(kind, DeclKind::Fun | DeclKind::Fam) && *e == Expr::Set(vec![]))
                })
                .prop_map(move |(kind, e, rest)| {
                    let mut out = vec![Stmt::Decl(kind, format!("N{k}"), e)];
                    out.extend(rest);
                    out
                })
                .boxed()
        })
        .collect();
    segments.prop_map(|segs| segs.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_then_parse_is_identity(stmts in script()) {
        let text = dsl::print(&Script { stmts: stmts.clone(), positions: vec![] });
        let parsed = dsl::parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&parsed.stmts, &stmts, "{}", text);
        prop_assert_eq!(dsl::print(&parsed), text);
    }

}

#[test]
fn reformatting_is_stable() {
    let src = "set   X={a,b};fun f={a->1,b->2};\n# comment\neval (f;inv f)   o f ;check fam.curry-roundtrip;";
    let once = dsl::print(&dsl::parse(src).unwrap());
    assert_eq!(once, "set X = {a, b};\nfun f = {a -> 1, b -> 2};\neval inv f o f o f;\ncheck fam.curry-roundtrip;\n");
    assert_eq!(dsl::print(&dsl::parse(&once).unwrap()), once);
}
