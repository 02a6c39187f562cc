use num_bigint::BigUint;

use crate::error::{Diagnostic, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigUint),
    Ident(String),
    /// `@name`, the coordinate vector field along `name`.
    Partial(String),
    Plus,
    Minus,
    Star,
    StarStar,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Eq,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Partial(s) => format!("`@{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::StarStar => "`**`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokenize one line. Columns count characters from 1.
pub fn lex_line(line: &str, lineno: usize) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos::new(lineno, i + 1);
        if c == ' ' || c == '\t' || c == '\r' {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, pos });
            i += 1;
        } else if c == '*' {
            if chars.get(i + 1) == Some(&'*') {
                out.push(Token { tok: Tok::StarStar, pos });
                i += 2;
            } else {
                out.push(Token { tok: Tok::Star, pos });
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && is_ident_start(chars[i]) {
                return Err(Diagnostic::syntax(Pos::new(lineno, i + 1), "identifier may not start with a digit"));
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse::<BigUint>().expect("ascii digits");
            out.push(Token { tok: Tok::Int(n), pos });
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                pos,
            });
        } else if c == '@' {
            i += 1;
            if i >= chars.len() || !is_ident_start(chars[i]) {
                return Err(Diagnostic::syntax(pos, "expected a coordinate name after `@`"));
            }
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Partial(chars[start..i].iter().collect()),
                pos,
            });
        } else {
            return Err(Diagnostic::syntax(pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex_line(s, 1).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn operators_and_atoms() {
        assert_eq!(
            toks("x**2*d(y)^@z - 3/4"),
            vec![
                Tok::Ident("x".into()),
                Tok::StarStar,
                Tok::Int(2u32.into()),
                Tok::Star,
                Tok::Ident("d".into()),
                Tok::LParen,
                Tok::Ident("y".into()),
                Tok::RParen,
                Tok::Caret,
                Tok::Partial("z".into()),
                Tok::Minus,
                Tok::Int(3u32.into()),
                Tok::Slash,
                Tok::Int(4u32.into()),
            ]
        );
    }

    #[test]
    fn columns_are_one_based() {
        let t = lex_line("  a + b", 7).unwrap();
        assert_eq!(t[0].pos, Pos::new(7, 3));
        assert_eq!(t[2].pos, Pos::new(7, 7));
    }

    #[test]
    fn rejects_stray_characters() {
        let e = lex_line("x $ y", 2).unwrap_err();
        assert_eq!(e.pos, Pos::new(2, 3));
        assert!(lex_line("2x", 1).is_err());
        assert!(lex_line("@ x", 1).is_err());
    }
}
