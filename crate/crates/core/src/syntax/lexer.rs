use super::{ParseError, ParseErrorKind};
use crate::truth::BinaryConnector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Tok {
    Upper(String),
    Lower(String),
    Int(String),
    Var(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    LeftArrow,
    Tilde,
    Amp,
    Bar,
    Plus,
    Imp(BinaryConnector),
    Eof,
}

#[derive(Debug, Clone)]
pub(super) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
    /// Whitespace or a comment separates this token from the previous one.
    pub spaced: bool,
}

pub(super) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut spaced = true;

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            spaced = true;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            spaced = true;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            spaced = true;
            continue;
        }

        let (start_line, start_col) = (line, col);
        let peek = |k: usize| chars.get(i + k).copied();
        let err = |msg: String| ParseError {
            line: start_line,
            column: start_col,
            kind: ParseErrorKind::Lexical(msg),
        };
        let ident_len = |from: usize| {
            chars[from..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .count()
        };

        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            '&' => (Tok::Amp, 1),
            '|' => (Tok::Bar, 1),
            '+' => (Tok::Plus, 1),
            '=' if peek(1) == Some('>') => (Tok::Imp(BinaryConnector::ImpMaterial), 2),
            '=' => (Tok::Eq, 1),
            '~' if peek(1) == Some('>') => (Tok::Imp(BinaryConnector::ImpHook), 2),
            '~' => (Tok::Tilde, 1),
            '-' if peek(1) == Some('>') => (Tok::Imp(BinaryConnector::ImpFde), 2),
            '<' if peek(1) == Some('-') => (Tok::LeftArrow, 2),
            '*' if peek(1) == Some('-') && peek(2) == Some('>') => {
                (Tok::Imp(BinaryConnector::ImpFdeStar), 3)
            }
            '*' if peek(1) == Some('~') && peek(2) == Some('>') => {
                (Tok::Imp(BinaryConnector::ImpHookStar), 3)
            }
            '?' => {
                let n = ident_len(i + 1);
                if n == 0 || chars[i + 1].is_ascii_digit() {
                    return Err(err("expected a variable name after `?`".into()));
                }
                let name: String = chars[i + 1..i + 1 + n].iter().collect();
                (Tok::Var(name), n + 1)
            }
            c if c.is_ascii_digit() => {
                let n = chars[i..].iter().take_while(|c| c.is_ascii_digit()).count();
                if chars
                    .get(i + n)
                    .is_some_and(|c| c.is_ascii_alphabetic() || *c == '_')
                {
                    return Err(err("identifiers cannot start with a digit".into()));
                }
                (Tok::Int(chars[i..i + n].iter().collect()), n)
            }
            c if c.is_ascii_alphabetic() => {
                let n = ident_len(i);
                let word: String = chars[i..i + n].iter().collect();
                if c.is_ascii_uppercase() {
                    (Tok::Upper(word), n)
                } else {
                    (Tok::Lower(word), n)
                }
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        };
        out.push(Token {
            tok,
            line: start_line,
            column: start_col,
            spaced,
        });
        spaced = false;
        i += len;
        col += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
        spaced: true,
    });
    Ok(out)
}
