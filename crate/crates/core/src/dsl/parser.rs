use std::collections::BTreeSet;

use super::ast::{is_keyword, BinOp, CallOp, DeclKind, Expr, Pos, Script, Stmt, UnOp};
use super::lexer::{lex, Tok, Token};
use super::SyntaxError;
use crate::value::Atom;

const EXPR_START: &[&str] = &["identifier", "integer", "`(`", "`{`"];

struct Parser {
    toks: Vec<Token>,
    at: usize,
    declared: BTreeSet<String>,
    atoms: BTreeSet<String>,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(SyntaxError::Parse {
            pos: self.pos(),
            found: self.peek().to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&tok.to_string()])
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn script(&mut self) -> PResult<Script> {
        let mut script = Script::default();
        while *self.peek() != Tok::Eof {
            script.positions.push(self.pos());
            let stmt = self.stmt()?;
            script.stmts.push(stmt);
        }
        Ok(script)
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let word = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.fail(&["`set`", "`rel`", "`fun`", "`fam`", "`eval`", "`check`", "`assert`"]),
        };
        let stmt = match word.as_str() {
            "set" | "rel" | "fun" | "fam" => {
                self.bump();
                let kind = match word.as_str() {
                    "set" => DeclKind::Set,
                    "rel" => DeclKind::Rel,
                    "fun" => DeclKind::Fun,
                    _ => DeclKind::Fam,
                };
                self.decl(kind)?
            }
            "eval" => {
                self.bump();
                Stmt::Eval(self.expr()?)
            }
            "check" => {
                self.bump();
                self.check()?
            }
            "assert" => {
                self.bump();
                let lhs = self.expr()?;
                self.expect(Tok::Subset)?;
                Stmt::Assert(lhs, self.expr()?)
            }
            _ => return self.fail(&["`set`", "`rel`", "`fun`", "`fam`", "`eval`", "`check`", "`assert`"]),
        };
        self.expect(Tok::Semi)?;
        Ok(stmt)
    }

    fn decl(&mut self, kind: DeclKind) -> PResult<Stmt> {
        let pos = self.pos();
        let name = match self.peek() {
            Tok::Ident(s) if !is_keyword(s) => s.clone(),
            _ => return self.fail(&["name"]),
        };
        if self.declared.contains(&name) {
            return Err(SyntaxError::Collision { pos, name, used_as_atom: false });
        }
        if self.atoms.contains(&name) {
            return Err(SyntaxError::Collision { pos, name, used_as_atom: true });
        }
        self.bump();
        self.expect(Tok::Eq)?;
        let empty_map = matches!(kind, DeclKind::Fun | DeclKind::Fam)
            && *self.peek() == Tok::LBrace
            && *self.peek_at(1) == Tok::RBrace
            && *self.peek_at(2) == Tok::Semi;
        let rhs = if empty_map {
            self.bump();
            self.bump();
            Expr::Map(Vec::new())
        } else {
            self.expr()?
        };
        if self.atoms.contains(&name) {
            return Err(SyntaxError::Collision { pos, name, used_as_atom: true });
        }
        self.declared.insert(name.clone());
        Ok(Stmt::Decl(kind, name, rhs))
    }

    fn check(&mut self) -> PResult<Stmt> {
        if let (Tok::Ident(s), Tok::Semi) = (self.peek(), self.peek_at(1)) {
            if !is_keyword(s) && !self.declared.contains(s) {
                let id = s.clone();
                self.bump();
                return Ok(Stmt::CheckLaw(id));
            }
        }
        let lhs = self.expr()?;
        self.expect(Tok::Eq)?;
        Ok(Stmt::CheckEq(lhs, self.expr()?))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.inter()?;
        while *self.peek() == Tok::Union {
            self.bump();
            let rhs = self.inter()?;
            lhs = Expr::Binary(BinOp::Union, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn inter(&mut self) -> PResult<Expr> {
        let mut lhs = self.compose()?;
        while *self.peek() == Tok::Inter {
            self.bump();
            let rhs = self.compose()?;
            lhs = Expr::Binary(BinOp::Inter, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn compose(&mut self) -> PResult<Expr> {
        let mut lhs = self.prefix()?;
        while *self.peek() == Tok::Ring || self.is_word("o") {
            self.bump();
            let rhs = self.prefix()?;
            lhs = Expr::Binary(BinOp::Compose, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> PResult<Expr> {
        if let Tok::Ident(s) = self.peek() {
            if let Some(op) = UnOp::from_keyword(s) {
                self.bump();
                let arg = self.prefix()?;
                return Ok(Expr::Unary(op, Box::new(arg)));
            }
        }
        self.postfix()
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.primary()?;
        while *self.peek() == Tok::Tilde {
            self.bump();
            e = Expr::Converse(Box::new(e));
        }
        Ok(e)
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Atom(Atom::Int(n)))
            }
            Tok::Ident(s) => {
                if let Some(op) = CallOp::from_keyword(&s) {
                    self.bump();
                    return self.call(op);
                }
                if is_keyword(&s) {
                    return self.fail(EXPR_START);
                }
                self.bump();
                if self.declared.contains(&s) {
                    Ok(Expr::Name(s))
                } else {
                    self.atoms.insert(s.clone());
                    Ok(Expr::Atom(Atom::sym(&s)))
                }
            }
            Tok::LParen => {
                self.bump();
                let first = self.expr()?;
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                        let second = self.expr()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::Pair(Box::new(first), Box::new(second)))
                    }
                    Tok::Semi => {
                        self.bump();
                        let second = self.expr()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::Binary(BinOp::Compose, Box::new(second), Box::new(first)))
                    }
                    Tok::RParen => {
                        self.bump();
                        Ok(first)
                    }
                    _ => self.fail(&["`,`", "`;`", "`)`", "operator"]),
                }
            }
            Tok::LBrace => {
                self.bump();
                self.braces()
            }
            _ => self.fail(EXPR_START),
        }
    }

    fn call(&mut self, op: CallOp) -> PResult<Expr> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.expr()?];
        while args.len() < op.arity() {
            self.expect(Tok::Comma)?;
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen)?;
        Ok(Expr::Call(op, args))
    }

    fn braces(&mut self) -> PResult<Expr> {
        match self.peek() {
            Tok::RBrace => {
                self.bump();
                return Ok(Expr::Set(Vec::new()));
            }
            Tok::Arrow => {
                self.bump();
                self.expect(Tok::RBrace)?;
                return Ok(Expr::Map(Vec::new()));
            }
            _ => {}
        }
        let first = self.expr()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let mut entries = vec![(first, self.expr()?)];
            loop {
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                        let k = self.expr()?;
                        self.expect(Tok::Arrow)?;
                        entries.push((k, self.expr()?));
                    }
                    Tok::RBrace => {
                        self.bump();
                        return Ok(Expr::Map(entries));
                    }
                    _ => return self.fail(&["`,`", "`}`"]),
                }
            }
        }
        let mut elems = vec![first];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                    elems.push(self.expr()?);
                }
                Tok::RBrace => {
                    self.bump();
                    return Ok(Expr::Set(elems));
                }
                _ => return self.fail(&["`,`", "`}`", "`->`"]),
            }
        }
    }
}

/// Parses a whole script. Undeclared identifiers become atoms.
pub fn parse(src: &str) -> Result<Script, SyntaxError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, declared: BTreeSet::new(), atoms: BTreeSet::new() };
    p.script()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Expr {
        Expr::Atom(Atom::sym(s))
    }

    fn name(s: &str) -> Expr {
        Expr::Name(s.into())
    }

    #[test]
    fn three_statements() {
        let s = parse("set X = {a,b}; rel R = {(a,1)}; eval dom R;").unwrap();
        assert_eq!(s.stmts.len(), 3);
        assert_eq!(s.stmts[2], Stmt::Eval(Expr::Unary(UnOp::Dom, Box::new(name("R")))));
        assert_eq!(s.positions[1], Pos { line: 1, col: 16 });
    }

    #[test]
    fn dangling_comma_in_pair() {
        match parse("rel R = {(a,)}") {
            Err(SyntaxError::Parse { pos, found, expected }) => {
                assert_eq!(pos, Pos { line: 1, col: 13 });
                assert_eq!(found, "`)`");
                assert!(expected.iter().any(|e| e == "identifier"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence() {
        // union < intersection < composition < prefix < postfix
        let s = parse("eval dom R~ o S /\\ T \\/ U;").unwrap();
        let conv = Expr::Converse(Box::new(sym("R")));
        let dom = Expr::Unary(UnOp::Dom, Box::new(conv));
        let comp = Expr::Binary(BinOp::Compose, Box::new(dom), Box::new(sym("S")));
        let int = Expr::Binary(BinOp::Inter, Box::new(comp), Box::new(sym("T")));
        let uni = Expr::Binary(BinOp::Union, Box::new(int), Box::new(sym("U")));
        assert_eq!(s.stmts[0], Stmt::Eval(uni));
    }

    #[test]
    fn composition_is_left_associative_and_semicolon_swaps() {
        let a = parse("eval f o g o h;").unwrap();
        let b = parse("eval (h ; g) ; f;");
        assert!(b.is_err(), "`;` only composes inside parentheses");
        let b = parse("eval (h ; (g ; f));").unwrap();
        let c = parse("eval (f o g) o h;").unwrap();
        assert_eq!(a.stmts, c.stmts);
        assert_eq!(b.stmts, c.stmts);
    }

    #[test]
    fn collisions_are_rejected() {
        assert!(matches!(
            parse("set X = {a}; set X = {b};"),
            Err(SyntaxError::Collision { used_as_atom: false, .. })
        ));
        assert!(matches!(
            parse("set X = {a}; set a = {b};"),
            Err(SyntaxError::Collision { used_as_atom: true, .. })
        ));
        assert!(matches!(parse("set X = {X};"), Err(SyntaxError::Collision { .. })));
        assert!(parse("set dom = {a};").is_err());
    }

    #[test]
    fn empty_literals() {
        let s = parse("fun f = {}; rel R = {}; fam F = {->}; eval {};").unwrap();
        assert_eq!(s.stmts[0], Stmt::Decl(DeclKind::Fun, "f".into(), Expr::Map(vec![])));
        assert_eq!(s.stmts[1], Stmt::Decl(DeclKind::Rel, "R".into(), Expr::Set(vec![])));
        assert_eq!(s.stmts[2], Stmt::Decl(DeclKind::Fam, "F".into(), Expr::Map(vec![])));
        assert_eq!(s.stmts[3], Stmt::Eval(Expr::Set(vec![])));
    }

    #[test]
    fn checks_and_asserts() {
        let s = parse("set X = {a}; check rel.compose-assoc; check X = X; assert X <= X;").unwrap();
        assert_eq!(s.stmts[1], Stmt::CheckLaw("rel.compose-assoc".into()));
        assert_eq!(s.stmts[2], Stmt::CheckEq(name("X"), name("X")));
        assert_eq!(s.stmts[3], Stmt::Assert(name("X"), name("X")));
    }

    #[test]
    fn call_arity_is_enforced() {
        assert!(parse("eval fork(R, T);").is_err());
        assert!(parse("eval pr(T, i, j);").is_err());
        assert!(parse("eval fork(R, T, S);").is_ok());
    }

    #[test]
    fn missing_semicolon_reports_expected() {
        match parse("eval a\neval b;") {
            Err(SyntaxError::Parse { pos, expected, .. }) => {
                assert_eq!(pos, Pos { line: 2, col: 1 });
                assert_eq!(expected, vec!["`;`".to_string()]);
            }
            other => panic!("{other:?}"),
        }
    }
}
