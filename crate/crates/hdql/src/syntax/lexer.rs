//! Tokenizer for the spec-file surface syntax.
//!
//! `#` starts a comment that runs to the end of the line. Numbers keep their
//! raw spelling so `ket(01)` can recover the bit string. A numeric literal
//! directly followed by `i` is imaginary.

use super::ParseError;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    /// A numeric literal with its raw spelling.
    Number { value: f64, raw: String },
    /// An imaginary literal like `2i` or `0.5i`.
    Imag(f64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LAngle,
    RAngle,
    Comma,
    Dot,
    Semi,
    Colon,
    Star,
    Plus,
    Minus,
    Slash,
    Eq,
    At,
    Bang,
    Tilde,
    AndOp,    // /\
    OrOp,     // \/
    Implies,  // =>
    Leads,    // ~>
    OPlus,    // (+)
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Number { raw, .. } => write!(f, "{raw}"),
            Tok::Imag(x) => write!(f, "{x}i"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::LBracket => write!(f, "["),
            Tok::RBracket => write!(f, "]"),
            Tok::LBrace => write!(f, "{{"),
            Tok::RBrace => write!(f, "}}"),
            Tok::LAngle => write!(f, "<"),
            Tok::RAngle => write!(f, ">"),
            Tok::Comma => write!(f, ","),
            Tok::Dot => write!(f, "."),
            Tok::Semi => write!(f, ";"),
            Tok::Colon => write!(f, ":"),
            Tok::Star => write!(f, "*"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Slash => write!(f, "/"),
            Tok::Eq => write!(f, "="),
            Tok::At => write!(f, "@"),
            Tok::Bang => write!(f, "!"),
            Tok::Tilde => write!(f, "~"),
            Tok::AndOp => write!(f, "/\\"),
            Tok::OrOp => write!(f, "\\/"),
            Tok::Implies => write!(f, "=>"),
            Tok::Leads => write!(f, "~>"),
            Tok::OPlus => write!(f, "(+)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;

    macro_rules! push {
        ($tok:expr, $len:expr) => {{
            out.push(Token {
                tok: $tok,
                line,
                col,
            });
            i += $len;
            col += $len;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' if next == Some('+') && chars.get(i + 2) == Some(&')') => push!(Tok::OPlus, 3),
            '(' => push!(Tok::LParen, 1),
            ')' => push!(Tok::RParen, 1),
            '[' => push!(Tok::LBracket, 1),
            ']' => push!(Tok::RBracket, 1),
            '{' => push!(Tok::LBrace, 1),
            '}' => push!(Tok::RBrace, 1),
            '<' => push!(Tok::LAngle, 1),
            '>' => push!(Tok::RAngle, 1),
            ',' => push!(Tok::Comma, 1),
            ';' => push!(Tok::Semi, 1),
            ':' => push!(Tok::Colon, 1),
            '*' => push!(Tok::Star, 1),
            '+' => push!(Tok::Plus, 1),
            '-' => push!(Tok::Minus, 1),
            '=' if next == Some('>') => push!(Tok::Implies, 2),
            '=' => push!(Tok::Eq, 1),
            '@' => push!(Tok::At, 1),
            '!' => push!(Tok::Bang, 1),
            '~' if next == Some('>') => push!(Tok::Leads, 2),
            '~' => push!(Tok::Tilde, 1),
            '/' if next == Some('\\') => push!(Tok::AndOp, 2),
            '/' => push!(Tok::Slash, 1),
            '\\' if next == Some('/') => push!(Tok::OrOp, 2),
            '.' if next.is_some_and(|d| d.is_ascii_digit()) => lex_number(&chars, &mut i, &mut out, line, &mut col)?,
            '.' => push!(Tok::Dot, 1),
            d if d.is_ascii_digit() => lex_number(&chars, &mut i, &mut out, line, &mut col)?,
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Ident(word),
                    line,
                    col,
                });
                col += i - start;
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

fn lex_number(
    chars: &[char],
    i: &mut usize,
    out: &mut Vec<Token>,
    line: usize,
    col: &mut usize,
) -> Result<(), ParseError> {
    let start = *i;
    let start_col = *col;
    while *i < chars.len() && chars[*i].is_ascii_digit() {
        *i += 1;
    }
    if *i < chars.len() && chars[*i] == '.' && chars.get(*i + 1).is_some_and(|d| d.is_ascii_digit())
    {
        *i += 1;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
    }
    if *i < chars.len() && (chars[*i] == 'e' || chars[*i] == 'E') {
        let mut j = *i + 1;
        if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
            j += 1;
        }
        if j < chars.len() && chars[j].is_ascii_digit() {
            *i = j;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
        }
    }
    let raw: String = chars[start..*i].iter().collect();
    let value: f64 = raw.parse().map_err(|_| ParseError {
        line,
        col: start_col,
        message: format!("malformed number {raw:?}"),
    })?;
    // an `i` suffix (not followed by more identifier characters) marks an
    // imaginary literal
    let imag = *i < chars.len()
        && chars[*i] == 'i'
        && !chars
            .get(*i + 1)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_');
    if imag {
        *i += 1;
        out.push(Token {
            tok: Tok::Imag(value),
            line,
            col: start_col,
        });
    } else {
        out.push(Token {
            tok: Tok::Number { value, raw },
            line,
            col: start_col,
        });
    }
    *col = start_col + (*i - start);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn lexes_operators_and_comments() {
        let toks = kinds("p /\\ q \\/ ~r => s ~> t # trailing\n(+)");
        assert_eq!(
            toks,
            vec![
                Tok::Ident("p".into()),
                Tok::AndOp,
                Tok::Ident("q".into()),
                Tok::OrOp,
                Tok::Tilde,
                Tok::Ident("r".into()),
                Tok::Implies,
                Tok::Ident("s".into()),
                Tok::Leads,
                Tok::Ident("t".into()),
                Tok::OPlus,
            ]
        );
    }

    #[test]
    fn lexes_numbers_with_raw_spelling() {
        let toks = kinds("ket(01) 1e-3 0.5i 2i");
        assert_eq!(
            toks,
            vec![
                Tok::Ident("ket".into()),
                Tok::LParen,
                Tok::Number { value: 1.0, raw: "01".into() },
                Tok::RParen,
                Tok::Number { value: 1e-3, raw: "1e-3".into() },
                Tok::Imag(0.5),
                Tok::Imag(2.0),
            ]
        );
    }

    #[test]
    fn tracks_positions() {
        let toks = lex("ab\n  cd").unwrap();
        assert_eq!((toks[0].line, toks[0].col), (1, 1));
        assert_eq!((toks[1].line, toks[1].col), (2, 3));
    }

    #[test]
    fn rejects_stray_characters() {
        let err = lex("p ? q").unwrap_err();
        assert_eq!((err.line, err.col), (1, 3));
    }
}
