use std::fmt;

use super::ast::Pos;
use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Arrow,
    Eq,
    Subset,
    Tilde,
    Union,
    Inter,
    Ring,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Subset => f.write_str("`<=`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Union => f.write_str("`\\/`"),
            Tok::Inter => f.write_str("`/\\`"),
            Tok::Ring => f.write_str("`∘`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits source text into tokens. `-` and `.` may sit inside an identifier
/// when an identifier character follows, which is how law ids lex.
pub fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut cur = Cursor { chars: src.chars().peekable(), pos: Pos { line: 1, col: 1 } };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let pos = cur.pos;
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        let tok = if ident_start(c) {
            let mut s = String::new();
            while let Some(c) = cur.peek() {
                if ident_char(c) || ((c == '-' || c == '.') && cur.peek2().is_some_and(ident_char)) {
                    s.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() || (c == '-' && cur.peek2().is_some_and(|d| d.is_ascii_digit())) {
            let mut s = String::new();
            s.push(c);
            cur.bump();
            while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                s.push(d);
                cur.bump();
            }
            match s.parse() {
                Ok(n) => Tok::Int(n),
                Err(_) => return Err(SyntaxError::Lex { pos, found: s }),
            }
        } else {
            cur.bump();
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                '~' | '˘' => Tok::Tilde,
                '∪' => Tok::Union,
                '∩' => Tok::Inter,
                '∘' => Tok::Ring,
                '⊆' => Tok::Subset,
                '→' | '↦' => Tok::Arrow,
                '-' if cur.peek() == Some('>') => {
                    cur.bump();
                    Tok::Arrow
                }
                '<' if cur.peek() == Some('=') => {
                    cur.bump();
                    Tok::Subset
                }
                '\\' if cur.peek() == Some('/') => {
                    cur.bump();
                    Tok::Union
                }
                '/' if cur.peek() == Some('\\') => {
                    cur.bump();
                    Tok::Inter
                }
                other => return Err(SyntaxError::Lex { pos, found: other.to_string() }),
            }
        };
        out.push(Token { tok, pos });
    }
    out.push(Token { tok: Tok::Eof, pos: cur.pos });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn arrows_do_not_join_identifiers() {
        assert_eq!(
            toks("{a->1, b -> -2}"),
            vec![
                Tok::LBrace,
                Tok::Ident("a".into()),
                Tok::Arrow,
                Tok::Int(1),
                Tok::Comma,
                Tok::Ident("b".into()),
                Tok::Arrow,
                Tok::Int(-2),
                Tok::RBrace,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn law_ids_are_single_identifiers() {
        assert_eq!(
            toks("check rel.codomain-not-attribute;"),
            vec![
                Tok::Ident("check".into()),
                Tok::Ident("rel.codomain-not-attribute".into()),
                Tok::Semi,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn unicode_operators() {
        assert_eq!(
            toks("R˘ ∘ S ∩ T ∪ U ⊆ V"),
            toks("R~ o S /\\ T \\/ U <= V")
                .into_iter()
                .map(|t| if t == Tok::Ident("o".into()) { Tok::Ring } else { t })
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn positions_and_comments() {
        let ts = lex("# note\n  eval x;").unwrap();
        assert_eq!(ts[0].pos, Pos { line: 2, col: 3 });
        assert_eq!(ts[1].pos, Pos { line: 2, col: 8 });
    }

    #[test]
    fn stray_character() {
        match lex("eval $;") {
            Err(SyntaxError::Lex { pos, found }) => {
                assert_eq!(pos, Pos { line: 1, col: 6 });
                assert_eq!(found, "$");
            }
            other => panic!("{other:?}"),
        }
    }
}
