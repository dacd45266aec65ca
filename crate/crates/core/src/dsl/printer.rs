use std::fmt::Write;

use super::ast::{BinOp, Expr, Script, Stmt};

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Binary(BinOp::Union, ..) => 0,
        Expr::Binary(BinOp::Inter, ..) => 1,
        Expr::Binary(BinOp::Compose, ..) => 2,
        Expr::Unary(..) => 3,
        Expr::Converse(_) => 4,
        _ => 5,
    }
}

fn binop_level(op: BinOp) -> u8 {
    match op {
        BinOp::Union => 0,
        BinOp::Inter => 1,
        BinOp::Compose => 2,
    }
}

fn write_expr(out: &mut String, e: &Expr, min: u8) {
    if level(e) < min {
        out.push('(');
        write_expr(out, e, 0);
        out.push(')');
        return;
    }
    match e {
        Expr::Name(n) => out.push_str(n),
        Expr::Atom(a) => write!(out, "{a}").expect("writing to a string"),
        Expr::Pair(a, b) => {
            out.push('(');
            write_expr(out, a, 0);
            out.push_str(", ");
            write_expr(out, b, 0);
            out.push(')');
        }
        Expr::Set(elems) => {
            out.push('{');
            for (k, x) in elems.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_expr(out, x, 0);
            }
            out.push('}');
        }
        Expr::Map(entries) if entries.is_empty() => out.push_str("{->}"),
        Expr::Map(entries) => {
            out.push('{');
            for (k, (x, y)) in entries.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_expr(out, x, 0);
                out.push_str(" -> ");
                write_expr(out, y, 0);
            }
            out.push('}');
        }
        Expr::Unary(op, a) => {
            out.push_str(op.keyword());
            out.push(' ');
            write_expr(out, a, 3);
        }
        Expr::Converse(a) => {
            write_expr(out, a, 4);
            out.push('~');
        }
        Expr::Binary(op, l, r) => {
            let lv = binop_level(*op);
            write_expr(out, l, lv);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_expr(out, r, lv + 1);
        }
        Expr::Call(op, args) => {
            out.push_str(op.keyword());
            out.push('(');
            for (k, x) in args.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_expr(out, x, 0);
            }
            out.push(')');
        }
    }
}

/// An expression in source form with only the parentheses it needs.
pub fn print_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, 0);
    out
}

pub fn print_stmt(s: &Stmt) -> String {
    match s {
        Stmt::Decl(kind, name, e) => format!("{} {name} = {};", kind.keyword(), print_expr(e)),
        Stmt::Eval(e) => format!("eval {};", print_expr(e)),
        Stmt::CheckLaw(id) => format!("check {id};"),
        Stmt::CheckEq(a, b) => format!("check {} = {};", print_expr(a), print_expr(b)),
        Stmt::Assert(a, b) => format!("assert {} <= {};", print_expr(a), print_expr(b)),
    }
}

/// One statement per line.
pub fn print(script: &Script) -> String {
    let mut out = String::new();
    for s in &script.stmts {
        out.push_str(&print_stmt(s));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn roundtrip(src: &str) -> String {
        let s = parse(src).unwrap();
        let printed = print(&s);
        assert_eq!(parse(&printed).unwrap().stmts, s.stmts, "{printed}");
        printed
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(roundtrip("eval ((a o b) o c);"), "eval a o b o c;\n");
        assert_eq!(roundtrip("eval a o (b o c);"), "eval a o (b o c);\n");
        assert_eq!(roundtrip("eval (dom (R))~;"), "eval (dom R)~;\n");
        assert_eq!(roundtrip("eval dom (R o S);"), "eval dom (R o S);\n");
        assert_eq!(roundtrip("eval (a \\/ b) /\\ c;"), "eval (a \\/ b) /\\ c;\n");
        assert_eq!(roundtrip("eval (f ; g);"), "eval g o f;\n");
    }

    #[test]
    fn literals_keep_written_order() {
        assert_eq!(roundtrip("set X = {b,a};"), "set X = {b, a};\n");
        assert_eq!(roundtrip("fun f = {};"), "fun f = {->};\n");
        assert_eq!(roundtrip("eval {(0,5)->p, (3,1)->q};"), "eval {(0, 5) -> p, (3, 1) -> q};\n");
    }

    #[test]
    fn idempotent() {
        let src = "set X={a};   fam T = {i->X,j->{1}} ;check card(space(X, X)) = 1;\nassert prod T<=prod T;";
        let once = roundtrip(src);
        assert_eq!(print(&parse(&once).unwrap()), once);
    }
}
