use std::fmt;

use crate::value::Atom;

/// A 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeclKind {
    Set,
    Rel,
    Fun,
    Fam,
}

impl DeclKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DeclKind::Set => "set",
            DeclKind::Rel => "rel",
            DeclKind::Fun => "fun",
            DeclKind::Fam => "fam",
        }
    }
}

/// Prefix operators taking one operand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnOp {
    Dom,
    Ran,
    Id,
    Prod,
    Dsum,
    Tr,
    Unc,
    Cur,
    Tab,
    Inv,
    Graph,
    Fun,
    Card,
}

impl UnOp {
    pub const ALL: [UnOp; 13] = [
        UnOp::Dom,
        UnOp::Ran,
        UnOp::Id,
        UnOp::Prod,
        UnOp::Dsum,
        UnOp::Tr,
        UnOp::Unc,
        UnOp::Cur,
        UnOp::Tab,
        UnOp::Inv,
        UnOp::Graph,
        UnOp::Fun,
        UnOp::Card,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            UnOp::Dom => "dom",
            UnOp::Ran => "ran",
            UnOp::Id => "id",
            UnOp::Prod => "prod",
            UnOp::Dsum => "dsum",
            UnOp::Tr => "tr",
            UnOp::Unc => "unc",
            UnOp::Cur => "cur",
            UnOp::Tab => "tab",
            UnOp::Inv => "inv",
            UnOp::Graph => "graph",
            UnOp::Fun => "fun",
            UnOp::Card => "card",
        }
    }

    pub fn from_keyword(s: &str) -> Option<UnOp> {
        UnOp::ALL.into_iter().find(|op| op.keyword() == s)
    }
}

/// Operators written in call syntax with a fixed number of arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CallOp {
    Pr,
    Inj,
    Fork,
    Par,
    Apply,
    Space,
    Pspace,
    Alpha,
    Proxy,
}

impl CallOp {
    pub const ALL: [CallOp; 9] = [
        CallOp::Pr,
        CallOp::Inj,
        CallOp::Fork,
        CallOp::Par,
        CallOp::Apply,
        CallOp::Space,
        CallOp::Pspace,
        CallOp::Alpha,
        CallOp::Proxy,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            CallOp::Pr => "pr",
            CallOp::Inj => "inj",
            CallOp::Fork => "fork",
            CallOp::Par => "par",
            CallOp::Apply => "apply",
            CallOp::Space => "space",
            CallOp::Pspace => "pspace",
            CallOp::Alpha => "alpha",
            CallOp::Proxy => "proxy",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            CallOp::Fork | CallOp::Par => 3,
            _ => 2,
        }
    }

    pub fn from_keyword(s: &str) -> Option<CallOp> {
        CallOp::ALL.into_iter().find(|op| op.keyword() == s)
    }
}

/// Infix operators, loosest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Union,
    Inter,
    Compose,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Union => "\\/",
            BinOp::Inter => "/\\",
            BinOp::Compose => "o",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// A declared name.
    Name(String),
    Atom(Atom),
    Pair(Box<Expr>, Box<Expr>),
    Set(Vec<Expr>),
    Map(Vec<(Expr, Expr)>),
    Unary(UnOp, Box<Expr>),
    Converse(Box<Expr>),
    /// `Binary(Compose, g, f)` is `g o f`: apply `f` first.
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(CallOp, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Stmt {
    Decl(DeclKind, String, Expr),
    Eval(Expr),
    CheckLaw(String),
    CheckEq(Expr, Expr),
    Assert(Expr, Expr),
}

/// Parsed statements with the position each one starts at.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
    pub positions: Vec<Pos>,
}

/// Words that can never be atoms or declared names.
pub const KEYWORDS: &[&str] = &[
    "set", "rel", "fun", "fam", "eval", "check", "assert", "o", "dom", "ran", "id", "prod", "dsum",
    "tr", "unc", "cur", "tab", "inv", "graph", "card", "pr", "inj", "fork", "par", "apply", "space",
    "pspace", "alpha", "proxy",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}
