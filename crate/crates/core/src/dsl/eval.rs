use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::ast::{BinOp, CallOp, DeclKind, Expr, Pos, Script, Stmt, UnOp};
use super::printer::{print_expr, print_stmt};
use crate::enumerate::EnumConfig;
use crate::error::KernelError;
use crate::family::{
    alpha, curry, disjoint_union, function_space, labeling, partial_function_space, product,
    projection, transpose, uncurry_family,
};
use crate::function::{compose_fun, define_by_proxy, fun_from_graph, graph, identity_fun, inverse, Fun};
use crate::laws::{self, Expect};
use crate::pointfree::{fork, par, tabulate};
use crate::relation::{compose, converse, Rel};
use crate::report::LawReport;
use crate::value::{Atom, VSet, Value};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ErrorKind {
    #[error("NameError: {0}")]
    Name(String),
    #[error("TypeError: {0}")]
    Type(KernelError),
    #[error("KernelError: {0}")]
    Kernel(KernelError),
    #[error("AssertionFailed: {0} is in the left side but not the right")]
    AssertFailed(Value),
    #[error("ConfigError: {0}")]
    Config(String),
}

impl ErrorKind {
    /// Stable short name for machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            ErrorKind::Name(_) => "NameError",
            ErrorKind::Type(_) => "TypeError",
            ErrorKind::Kernel(e) => kernel_code(e),
            ErrorKind::AssertFailed(_) => "AssertionFailed",
            ErrorKind::Config(_) => "ConfigError",
        }
    }
}

fn kernel_code(e: &KernelError) -> &'static str {
    match e {
        KernelError::NotFunctional(_) => "NotFunctional",
        KernelError::OutsideDomain(_) => "OutsideDomain",
        KernelError::NotInjective(..) => "NotInjective",
        KernelError::NotWellDefined(..) => "NotWellDefined",
        KernelError::DomainMismatch => "DomainMismatch",
        KernelError::EmptyFamily => "EmptyFamily",
        KernelError::EmptyIndex => "EmptyIndex",
        KernelError::CarrierMismatch(_) => "CarrierMismatch",
        KernelError::BudgetExceeded(_) => "BudgetExceeded",
        _ => "KernelError",
    }
}

impl From<KernelError> for ErrorKind {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::DomainNotPairs(_)
            | KernelError::NotSetFamily(_)
            | KernelError::NotFunctionFamily(_)
            | KernelError::NotRelationFamily(_)
            | KernelError::NotARelation(_)
            | KernelError::TypeMismatch { .. } => ErrorKind::Type(e),
            other => ErrorKind::Kernel(other),
        }
    }
}

/// A failure that stopped evaluation, at the statement that raised it.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {kind}")]
pub struct EvalError {
    pub pos: Pos,
    pub kind: ErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Law { report: LawReport, expect: Expect },
    Equal { lhs: Value, rhs: Value },
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Law { report, expect } => match expect {
                Expect::Pass => report.outcome == crate::Outcome::Pass,
                Expect::Fail => matches!(report.outcome, crate::Outcome::Fail(_)),
            },
            Outcome::Equal { lhs, rhs } => loosely_equal(lhs, rhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Value { pos: Pos, value: Value },
    Check { pos: Pos, subject: String, outcome: Outcome },
    Assert { pos: Pos, subject: String },
}

impl Event {
    pub fn pos(&self) -> Pos {
        match self {
            Event::Value { pos, .. } | Event::Check { pos, .. } | Event::Assert { pos, .. } => *pos,
        }
    }

    pub fn ok(&self) -> bool {
        match self {
            Event::Check { outcome, .. } => outcome.passed(),
            _ => true,
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Value { value, .. } => write!(f, "{value}"),
            Event::Assert { subject, .. } => write!(f, "assert {subject}: ok"),
            Event::Check { subject, outcome, .. } => {
                write!(f, "check {subject}: ")?;
                let passed = outcome.passed();
                match outcome {
                    Outcome::Equal { lhs, rhs } if !passed => write!(f, "FAIL (left {lhs}, right {rhs})"),
                    Outcome::Equal { .. } => f.write_str("pass"),
                    Outcome::Law { report, expect } => {
                        let verdict = match (&report.outcome, expect, passed) {
                            (crate::Outcome::Fail(_), Expect::Fail, true) => "FAIL (expected)",
                            (_, _, true) => "PASS",
                            (crate::Outcome::BudgetExceeded(_), _, _) => "BUDGET EXCEEDED",
                            (crate::Outcome::Pass, Expect::Fail, _) => "PASS (unexpected)",
                            _ => "FAIL",
                        };
                        write!(f, "{verdict}, {} instances", report.instances)?;
                        match &report.outcome {
                            crate::Outcome::Fail(cx) => write!(f, "; counterexample {cx}"),
                            crate::Outcome::BudgetExceeded(n) => write!(f, "; estimate at least {n}"),
                            crate::Outcome::Pass => Ok(()),
                        }
                    }
                }
            }
        }
    }
}

impl Serialize for Event {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(None)?;
        let pos = self.pos();
        m.serialize_entry("line", &pos.line)?;
        m.serialize_entry("col", &pos.col)?;
        match self {
            Event::Value { value, .. } => {
                m.serialize_entry("kind", "eval")?;
                m.serialize_entry("value", &value.to_string())?;
            }
            Event::Assert { subject, .. } => {
                m.serialize_entry("kind", "assert")?;
                m.serialize_entry("subject", subject)?;
                m.serialize_entry("ok", &true)?;
            }
            Event::Check { subject, outcome, .. } => {
                m.serialize_entry("kind", "check")?;
                m.serialize_entry("subject", subject)?;
                m.serialize_entry("ok", &outcome.passed())?;
                match outcome {
                    Outcome::Equal { lhs, rhs } => {
                        m.serialize_entry("lhs", &lhs.to_string())?;
                        m.serialize_entry("rhs", &rhs.to_string())?;
                    }
                    Outcome::Law { report, expect } => {
                        m.serialize_entry("expected", expect.label())?;
                        m.serialize_entry("report", report)?;
                    }
                }
            }
        }
        m.end()
    }
}

/// Everything a script produced, in order, and the error that halted it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub events: Vec<Event>,
    pub error: Option<EvalError>,
}

impl Trace {
    /// No error and every check passed.
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.events.iter().all(Event::ok)
    }
}

impl Serialize for Trace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(None)?;
        m.serialize_entry("ok", &self.ok())?;
        m.serialize_entry("events", &self.events)?;
        if let Some(e) = &self.error {
            m.serialize_entry("error", &ErrorDoc(e))?;
        }
        m.end()
    }
}

struct ErrorDoc<'a>(&'a EvalError);

impl Serialize for ErrorDoc<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(4))?;
        m.serialize_entry("line", &self.0.pos.line)?;
        m.serialize_entry("col", &self.0.pos.col)?;
        m.serialize_entry("code", self.0.kind.code())?;
        m.serialize_entry("message", &self.0.kind.to_string())?;
        m.end()
    }
}

/// Functions compare equal to sets of pairs holding the same graph.
fn loosely_equal(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Fun(f), Value::Set(s)) | (Value::Set(s), Value::Fun(f)) => graph(f).to_vset() == *s,
        _ => a == b,
    }
}

type EResult<T> = Result<T, ErrorKind>;

fn mismatch(expected: &'static str, v: &Value) -> ErrorKind {
    ErrorKind::Type(KernelError::TypeMismatch { expected, found: v.kind() })
}

fn want_set(v: &Value) -> EResult<&VSet> {
    v.as_set().ok_or_else(|| mismatch("set", v))
}

fn want_fun(v: &Value) -> EResult<&Fun> {
    v.as_fun().ok_or_else(|| mismatch("function", v))
}

/// Relations are sets of pairs; a function stands for its graph.
fn want_rel(v: &Value) -> EResult<Rel> {
    match v {
        Value::Fun(f) => Ok(graph(f)),
        Value::Set(s) => Ok(Rel::from_vset(s)?),
        _ => Err(mismatch("relation", v)),
    }
}

fn as_members(v: &Value) -> EResult<VSet> {
    match v {
        Value::Fun(f) => Ok(graph(f).to_vset()),
        Value::Set(s) => Ok(s.clone()),
        _ => Err(mismatch("set", v)),
    }
}

/// An evaluation session: one environment, one law configuration.
pub struct Session {
    env: BTreeMap<String, Value>,
    cfg: EnumConfig,
}

impl Session {
    pub fn new(cfg: EnumConfig) -> Self {
        Session { env: BTreeMap::new(), cfg }
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }

    pub fn eval(&self, e: &Expr) -> EResult<Value> {
        Ok(match e {
            Expr::Name(n) => self
                .env
                .get(n)
                .cloned()
                .ok_or_else(|| ErrorKind::Name(format!("`{n}` is not declared")))?,
            Expr::Atom(a) => Value::Atom(a.clone()),
            Expr::Pair(a, b) => Value::pair(self.eval(a)?, self.eval(b)?),
            Expr::Set(elems) => Value::Set(elems.iter().map(|x| self.eval(x)).collect::<EResult<_>>()?),
            Expr::Map(entries) => {
                let pairs = entries
                    .iter()
                    .map(|(k, v)| Ok((self.eval(k)?, self.eval(v)?)))
                    .collect::<EResult<Vec<_>>>()?;
                Value::Fun(Fun::from_entries(pairs)?)
            }
            Expr::Unary(op, a) => self.unary(*op, &self.eval(a)?)?,
            Expr::Converse(a) => converse(&want_rel(&self.eval(a)?)?).to_value(),
            Expr::Binary(op, l, r) => self.binary(*op, &self.eval(l)?, &self.eval(r)?)?,
            Expr::Call(op, args) => {
                let vs = args.iter().map(|x| self.eval(x)).collect::<EResult<Vec<_>>>()?;
                self.call(*op, &vs)?
            }
        })
    }

    fn unary(&self, op: UnOp, v: &Value) -> EResult<Value> {
        Ok(match op {
            UnOp::Dom => Value::Set(match v {
                Value::Fun(f) => f.dom(),
                _ => want_rel(v)?.dom(),
            }),
            UnOp::Ran => Value::Set(match v {
                Value::Fun(f) => f.ran(),
                _ => want_rel(v)?.ran(),
            }),
            UnOp::Id => Value::Fun(identity_fun(want_set(v)?)),
            UnOp::Prod => Value::Set(product(want_fun(v)?)?),
            UnOp::Dsum => Value::Set(disjoint_union(want_fun(v)?)?),
            UnOp::Tr => Value::Fun(transpose(want_fun(v)?)?),
            UnOp::Unc => Value::Fun(uncurry_family(want_fun(v)?)?),
            UnOp::Cur => Value::Fun(curry(want_fun(v)?)?),
            UnOp::Tab => {
                let (f, g) = tabulate(&want_rel(v)?);
                Value::pair(Value::Fun(f), Value::Fun(g))
            }
            UnOp::Inv => Value::Fun(inverse(want_fun(v)?)?),
            UnOp::Graph => graph(want_fun(v)?).to_value(),
            UnOp::Fun => match v {
                Value::Set(s) => Value::Fun(fun_from_graph(&Rel::from_vset(s)?)?),
                _ => return Err(mismatch("relation", v)),
            },
            UnOp::Card => {
                let n = match v {
                    Value::Set(s) => s.len(),
                    Value::Fun(f) => f.len(),
                    _ => return Err(mismatch("set", v)),
                };
                Value::Atom(Atom::Int(n as i64))
            }
        })
    }

    fn binary(&self, op: BinOp, l: &Value, r: &Value) -> EResult<Value> {
        Ok(match op {
            BinOp::Compose => match (l, r) {
                (Value::Fun(g), Value::Fun(f)) => Value::Fun(compose_fun(g, f)),
                _ => compose(&want_rel(l)?, &want_rel(r)?).to_value(),
            },
            BinOp::Union => Value::Set(as_members(l)?.union(&as_members(r)?).cloned().collect()),
            BinOp::Inter => Value::Set(as_members(l)?.intersection(&as_members(r)?).cloned().collect()),
        })
    }

    fn call(&self, op: CallOp, a: &[Value]) -> EResult<Value> {
        Ok(match op {
            CallOp::Pr => Value::Fun(projection(want_fun(&a[0])?, &a[1])?),
            CallOp::Inj => Value::Fun(labeling(want_fun(&a[0])?, &a[1])?),
            CallOp::Fork => fork(want_fun(&a[0])?, want_fun(&a[1])?, want_set(&a[2])?)?.to_value(),
            CallOp::Par => par(want_fun(&a[0])?, want_fun(&a[1])?, want_fun(&a[2])?)?.to_value(),
            CallOp::Apply => want_fun(&a[0])?.apply(&a[1])?.clone(),
            CallOp::Space => Value::Set(function_space(want_set(&a[0])?, want_set(&a[1])?)),
            CallOp::Pspace => Value::Set(partial_function_space(want_set(&a[0])?, want_set(&a[1])?)),
            CallOp::Alpha => Value::Fun(alpha(want_set(&a[0])?, want_set(&a[1])?)),
            CallOp::Proxy => Value::Fun(define_by_proxy(want_fun(&a[0])?, want_fun(&a[1])?)?),
        })
    }

    fn declare(&mut self, kind: DeclKind, name: &str, e: &Expr) -> EResult<()> {
        let v = self.eval(e)?;
        match kind {
            DeclKind::Set => {
                want_set(&v)?;
            }
            DeclKind::Rel => {
                want_set(&v).map_err(|_| mismatch("relation", &v))?;
                want_rel(&v)?;
            }
            DeclKind::Fun | DeclKind::Fam => {
                want_fun(&v)?;
            }
        }
        self.env.insert(name.to_owned(), v);
        Ok(())
    }

    /// Runs one statement, returning the event it produced, if any.
    pub fn step(&mut self, stmt: &Stmt, pos: Pos) -> EResult<Option<Event>> {
        Ok(match stmt {
            Stmt::Decl(kind, name, e) => {
                self.declare(*kind, name, e)?;
                None
            }
            Stmt::Eval(e) => Some(Event::Value { pos, value: self.eval(e)? }),
            Stmt::CheckLaw(id) => {
                let law = laws::find(id).map_err(|_| ErrorKind::Name(format!("unknown law `{id}`")))?;
                let report = laws::run_law(law, &self.cfg).map_err(|e| ErrorKind::Config(e.to_string()))?;
                Some(Event::Check {
                    pos,
                    subject: id.clone(),
                    outcome: Outcome::Law { report, expect: law.expect },
                })
            }
            Stmt::CheckEq(a, b) => Some(Event::Check {
                pos,
                subject: format!("{} = {}", print_expr(a), print_expr(b)),
                outcome: Outcome::Equal { lhs: self.eval(a)?, rhs: self.eval(b)? },
            }),
            Stmt::Assert(a, b) => {
                let (l, r) = (as_members(&self.eval(a)?)?, as_members(&self.eval(b)?)?);
                if let Some(w) = l.difference(&r).next() {
                    return Err(ErrorKind::AssertFailed(w.clone()));
                }
                Some(Event::Assert { pos, subject: print_stmt(stmt).trim_start_matches("assert ").trim_end_matches(';').to_owned() })
            }
        })
    }
}

/// Runs every statement in order, stopping at the first error.
pub fn evaluate(script: &Script, cfg: &EnumConfig) -> Trace {
    let mut session = Session::new(cfg.clone());
    let mut trace = Trace::default();
    for (stmt, pos) in script.stmts.iter().zip(&script.positions) {
        match session.step(stmt, *pos) {
            Ok(Some(ev)) => trace.events.push(ev),
            Ok(None) => {}
            Err(kind) => {
                trace.error = Some(EvalError { pos: *pos, kind });
                break;
            }
        }
    }
    trace
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn run(src: &str) -> Trace {
        evaluate(&parse(src).unwrap(), &EnumConfig::default())
    }

    fn values(t: &Trace) -> Vec<String> {
        t.events.iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn curry_domain() {
        let t = run("fun f = {(0,5)->p,(3,1)->q,(3,2)->r}; eval dom(cur f); eval dom apply(cur f, 3); eval apply(apply(cur f, 3), 2);");
        assert!(t.ok(), "{t:?}");
        assert_eq!(values(&t), vec!["{0, 3}", "{1, 2}", "r"]);
    }

    #[test]
    fn not_functional_at_the_eval() {
        let t = run("rel R = {(a,1),(a,2)};\neval fun R;");
        let err = t.error.unwrap();
        assert_eq!(err.pos, Pos { line: 2, col: 1 });
        assert_eq!(err.kind, ErrorKind::Kernel(KernelError::NotFunctional(Value::sym("a"))));
    }

    #[test]
    fn space_count() {
        let t = run("set X = {a}; set Y = {1,2}; check card space(X, Y) = 2;");
        assert!(t.ok());
        assert_eq!(values(&t), vec!["check card space(X, Y) = 2: pass"]);
    }

    #[test]
    fn canonical_value_printing() {
        let t = run("eval {b, a}; fun f = {a -> 1}; eval graph f; eval {};");
        assert_eq!(values(&t), vec!["{a, b}", "{(a, 1)}", "{}"]);
    }

    #[test]
    fn cur_of_non_pairs_is_a_type_error() {
        let t = run("fun f = {a -> 1}; eval cur f;");
        assert_eq!(t.error.unwrap().kind, ErrorKind::Type(KernelError::DomainNotPairs(Value::sym("a"))));
    }

    #[test]
    fn false_assert_halts_with_witness() {
        let t = run("rel R = {(a,1),(b,2)}; rel S = {(a,1)}; assert S <= R; assert R <= S; eval R;");
        assert_eq!(t.events.len(), 1);
        assert_eq!(
            t.error.unwrap().kind,
            ErrorKind::AssertFailed(Value::pair(Value::sym("b"), Value::int(2)))
        );
    }

    #[test]
    fn failed_check_continues() {
        let t = run("set X = {a}; check X = {b}; eval X;");
        assert!(t.error.is_none());
        assert!(!t.ok());
        assert_eq!(t.events.len(), 2);
    }

    #[test]
    fn law_checks_respect_expectations() {
        let t = run("check rel.codomain-not-attribute; check rel.converse-involution;");
        assert!(t.ok());
        assert!(values(&t)[0].starts_with("check rel.codomain-not-attribute: FAIL (expected)"));
        assert_eq!(values(&t)[1], "check rel.converse-involution: PASS, 16 instances");
        let t = run("check nosuch.law;");
        assert!(matches!(t.error.unwrap().kind, ErrorKind::Name(_)));
    }

    #[test]
    fn functions_compare_with_their_graphs() {
        let t = run("fun f = {a -> 1}; fun g = {1 -> x}; check g o f = {(a, x)}; check (f ; g) = g o f; check f~ = {(1, a)};");
        assert!(t.ok(), "{t:?}");
    }

    #[test]
    fn declaration_kinds_are_enforced() {
        assert!(matches!(run("rel R = {a};").error.unwrap().kind, ErrorKind::Type(_)));
        assert!(matches!(run("set X = {a -> 1};").error.unwrap().kind, ErrorKind::Type(_)));
        assert!(matches!(run("fun f = {(a, 1)};").error.unwrap().kind, ErrorKind::Type(_)));
        assert!(matches!(
            run("fun f = {a -> 1, a -> 2};").error.unwrap().kind,
            ErrorKind::Kernel(KernelError::NotFunctional(_))
        ));
    }

    #[test]
    fn tail_through_an_injective_cons() {
        let src = "fun cons = {(1, nil) -> l1, (2, nil) -> l2, (1, l2) -> l12};
            fun snd = {(1, nil) -> nil, (2, nil) -> nil, (1, l2) -> l2};
            eval proxy(cons, snd);
            fun len = {(1, nil) -> 1, (2, nil) -> 1, (1, l2) -> 2};
            fun fst = {(1, nil) -> 1, (2, nil) -> 2, (1, l2) -> 1};
            eval proxy(len, fst);";
        let t = run(src);
        assert_eq!(values(&t), vec!["{l1 -> nil, l12 -> l2, l2 -> nil}"]);
        assert!(matches!(t.error.unwrap().kind, ErrorKind::Kernel(KernelError::NotWellDefined(..))));
    }
}
