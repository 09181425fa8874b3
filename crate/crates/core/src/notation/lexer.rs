use num_bigint::BigUint;

use super::NotationError;
use crate::polyring::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    M,
    P5,
    Row2,
    Col2,
    Mat2,
    Row5,
    Col5,
}

impl Keyword {
    fn from_word(word: &str) -> Option<Keyword> {
        Some(match word {
            "M" => Keyword::M,
            "P5" => Keyword::P5,
            "row2" => Keyword::Row2,
            "col2" => Keyword::Col2,
            "mat2" => Keyword::Mat2,
            "row5" => Keyword::Row5,
            "col5" => Keyword::Col5,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Int(BigUint),
    Var(VarId),
    Keyword(Keyword),
    LParen,
    RParen,
    Comma,
    Semicolon,
    Plus,
    Minus,
    Star,
    Caret,
    Equals,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Int(n) => format!("integer {n}"),
            TokenKind::Var(v) => format!("variable {v}"),
            TokenKind::Keyword(k) => format!("keyword {k:?}"),
            TokenKind::LParen => "\"(\"".into(),
            TokenKind::RParen => "\")\"".into(),
            TokenKind::Comma => "\",\"".into(),
            TokenKind::Semicolon => "\";\"".into(),
            TokenKind::Plus => "\"+\"".into(),
            TokenKind::Minus => "\"-\"".into(),
            TokenKind::Star => "\"*\"".into(),
            TokenKind::Caret => "\"^\"".into(),
            TokenKind::Equals => "\"=\"".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the first character.
    pub offset: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, NotationError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b',' => Some(TokenKind::Comma),
            b';' => Some(TokenKind::Semicolon),
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'^' => Some(TokenKind::Caret),
            b'=' => Some(TokenKind::Equals),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token { kind, offset: start });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigUint = text[start..i].parse().expect("ascii digits");
            tokens.push(Token {
                kind: TokenKind::Int(n),
                offset: start,
            });
            continue;
        }
        if c == b'a' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
            // variables take only the digits, so `a1a2` is two variables
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let var = text[start + 1..i]
                .parse::<u64>()
                .ok()
                .and_then(|j| VarId::new(j).ok())
                .ok_or_else(|| NotationError::InvalidVariable {
                    offset: start,
                    text: text[start..i].to_string(),
                })?;
            tokens.push(Token {
                kind: TokenKind::Var(var),
                offset: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &text[start..i];
            let keyword = Keyword::from_word(word).ok_or_else(|| NotationError::UnknownWord {
                offset: start,
                word: word.to_string(),
            })?;
            tokens.push(Token {
                kind: TokenKind::Keyword(keyword),
                offset: start,
            });
            continue;
        }
        let found = text[start..].chars().next().expect("in bounds");
        return Err(NotationError::Lexical { offset: start, found });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        offset: text.len(),
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn juxtaposed_variables_split() {
        let v = |j| TokenKind::Var(VarId::new(j).unwrap());
        assert_eq!(kinds("a1a2"), vec![v(1), v(2), TokenKind::Eof]);
        assert_eq!(kinds("a12"), vec![v(12), TokenKind::Eof]);
    }

    #[test]
    fn keywords_and_offsets() {
        let toks = tokenize(" row2( M").unwrap();
        assert_eq!(toks[0].kind, TokenKind::Keyword(Keyword::Row2));
        assert_eq!(toks[0].offset, 1);
        assert_eq!(toks[1].offset, 5);
        assert_eq!(toks[2].kind, TokenKind::Keyword(Keyword::M));
        assert_eq!(
            toks[3],
            Token {
                kind: TokenKind::Eof,
                offset: 8
            }
        );
    }

    #[test]
    fn lexical_errors() {
        assert_eq!(
            tokenize("a1 & a2"),
            Err(NotationError::Lexical { offset: 3, found: '&' })
        );
        assert!(matches!(
            tokenize("a0"),
            Err(NotationError::InvalidVariable { offset: 0, .. })
        ));
        assert!(matches!(
            tokenize("row3(1)"),
            Err(NotationError::UnknownWord { offset: 0, .. })
        ));
        assert!(matches!(tokenize("a_1"), Err(NotationError::UnknownWord { .. })));
    }
}
