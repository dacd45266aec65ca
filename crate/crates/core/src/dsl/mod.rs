//! A small scripting language over the kernel.
//!
//! ```text
//! set X = {a, b};
//! fun f = {(0, 5) -> p, (3, 1) -> q, (3, 2) -> r};
//! eval dom (cur f);          # {0, 3}
//! check card space(X, X) = 4;
//! assert id X <= X~ o X;
//! ```
//!
//! Pair literals `(x, y)` read as (input, output). Identifiers are atoms
//! unless declared; `g o f` applies `f` first and `(f ; g)` means the same.

mod ast;
mod eval;
mod lexer;
mod parser;
mod printer;

use thiserror::Error;

pub use ast::{is_keyword, BinOp, CallOp, DeclKind, Expr, Pos, Script, Stmt, UnOp, KEYWORDS};
pub use eval::{evaluate, ErrorKind, EvalError, Event, Outcome, Session, Trace};
pub use lexer::{lex, Tok, Token};
pub use parser::parse;
pub use printer::{print, print_expr, print_stmt};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{pos}: LexError: unexpected character `{found}`")]
    Lex { pos: Pos, found: String },
    #[error("{pos}: ParseError: found {found}, expected {}", .expected.join(" or "))]
    Parse {
        pos: Pos,
        found: String,
        expected: Vec<String>,
    },
    #[error("{pos}: ParseError: `{name}` {}", if *.used_as_atom { "is already used as an atom" } else { "is already declared" })]
    Collision {
        pos: Pos,
        name: String,
        used_as_atom: bool,
    },
}

impl SyntaxError {
    pub fn pos(&self) -> Pos {
        match self {
            SyntaxError::Lex { pos, .. } | SyntaxError::Parse { pos, .. } | SyntaxError::Collision { pos, .. } => *pos,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            SyntaxError::Lex { .. } => "LexError",
            _ => "ParseError",
        }
    }
}
