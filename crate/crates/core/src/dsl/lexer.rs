use crate::{Error, Pos, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Colon,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eq,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Int(n) => n.to_string(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::LBrace => "{".into(),
            Tok::RBrace => "}".into(),
            Tok::Semi => ";".into(),
            Tok::Comma => ",".into(),
            Tok::Colon => ":".into(),
            Tok::Arrow => "->".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::Eq => "=".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Splits source text into tokens; `#` starts a comment running to the end
/// of the line.
pub(crate) fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(_, c)) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, ch) = chars.next().expect("peeked");
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            ch
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&(_, ch)) = chars.peek() {
                if ch == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, ch)) = chars.peek() {
                if ch.is_ascii_alphanumeric() || ch == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, ch)) = chars.peek() {
                if ch.is_ascii_digit() {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            let n = s.parse::<u64>().map_err(|_| Error::Syntax {
                pos,
                expected: "integer literal".into(),
                found: s.clone(),
            })?;
            Tok::Int(n)
        } else {
            bump(&mut chars);
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '+' => Tok::Plus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '=' => Tok::Eq,
                '-' => {
                    if chars.peek().map(|&(_, ch)| ch) == Some('>') {
                        bump(&mut chars);
                        Tok::Arrow
                    } else {
                        Tok::Minus
                    }
                }
                other => {
                    return Err(Error::Syntax {
                        pos,
                        expected: "a token".into(),
                        found: other.to_string(),
                    })
                }
            }
        };
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = lex("group S3 # comment\n  (1 2) -> -x;").unwrap();
        let kinds: Vec<Tok> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("group".into()),
                Tok::Ident("S3".into()),
                Tok::LParen,
                Tok::Int(1),
                Tok::Int(2),
                Tok::RParen,
                Tok::Arrow,
                Tok::Minus,
                Tok::Ident("x".into()),
                Tok::Semi,
                Tok::Eof
            ]
        );
        assert_eq!(toks[2].pos, Pos { line: 2, col: 3 });
    }

    #[test]
    fn rejects_stray_characters() {
        assert!(matches!(lex("a @ b"), Err(Error::Syntax { .. })));
    }
}
