//! Recursive-descent parser.
//!
//! ```text
//! expr    := branch ("=" branch)*
//! branch  := atom+ | poly
//! atom    := "M" | "P5" | "row2(" poly "," poly ")" | "col2(" ... ")"
//!          | "mat2(" poly "," poly ";" poly "," poly ")"
//!          | "row5(" poly{5} ")" | "col5(" poly{5} ")"
//! poly    := ["-"] term (("+" | "-") term)*
//! term    := factor (["*"] factor)*     -- juxtaposition needs a variable or "("
//! factor  := (integer | variable | "(" poly ")") ["^" integer]
//! ```

use num_traits::ToPrimitive;

use super::ast::{Branch, Expr, MatrixAtom, PolyAtom, PolyFactor, PolySum, PolyTerm, Sign};
use super::lexer::{tokenize, Keyword, Token, TokenKind};
use super::NotationError;

pub fn parse(text: &str) -> Result<Expr, NotationError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let mut branches = vec![parser.branch()?];
    while parser.eat(&TokenKind::Equals) {
        branches.push(parser.branch()?);
    }
    parser.expect_eof()?;
    Ok(Expr::from_branches(branches))
}

/// Parses a bare polynomial literal.
pub fn parse_poly(text: &str) -> Result<PolySum, NotationError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let sum = parser.sum()?;
    parser.expect_eof()?;
    Ok(sum)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if &self.peek().kind == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> NotationError {
        let tok = self.peek();
        NotationError::Syntax {
            offset: tok.offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.kind.describe(),
        }
    }

    fn expect(&mut self, kind: TokenKind, label: &str) -> Result<Token, NotationError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn expect_eof(&mut self) -> Result<(), NotationError> {
        match self.peek().kind {
            TokenKind::Eof => Ok(()),
            TokenKind::Var(_) | TokenKind::LParen | TokenKind::Int(_) => {
                Err(self.error(&["\"=\"", "matrix atom", "end of input"]))
            }
            _ => Err(self.error(&["\"=\"", "end of input"])),
        }
    }

    fn branch(&mut self) -> Result<Branch, NotationError> {
        if !matches!(self.peek().kind, TokenKind::Keyword(_)) {
            return Ok(Branch::PolyLit(self.sum()?));
        }
        let mut atoms = Vec::new();
        while let TokenKind::Keyword(k) = self.peek().kind {
            atoms.push(self.atom(k)?);
        }
        Ok(Branch::Product(atoms))
    }

    fn atom(&mut self, keyword: Keyword) -> Result<MatrixAtom, NotationError> {
        let start = self.bump();
        let atom = match keyword {
            Keyword::M => MatrixAtom::MetricM,
            Keyword::P5 => MatrixAtom::MetricP5,
            Keyword::Row2 => MatrixAtom::Row2(self.vector_args("row2", start.offset)?),
            Keyword::Col2 => MatrixAtom::Col2(self.vector_args("col2", start.offset)?),
            Keyword::Row5 => MatrixAtom::Row5(self.vector_args("row5", start.offset)?),
            Keyword::Col5 => MatrixAtom::Col5(self.vector_args("col5", start.offset)?),
            Keyword::Mat2 => {
                self.expect(TokenKind::LParen, "\"(\"")?;
                let mut rows = vec![self.poly_list()?];
                while self.eat(&TokenKind::Semicolon) {
                    rows.push(self.poly_list()?);
                }
                self.close_args(&["\",\"", "\";\"", "\")\""])?;
                let shape_ok = rows.len() == 2 && rows.iter().all(|r| r.len() == 2);
                if !shape_ok {
                    let found = rows.iter().map(|r| r.len().to_string()).collect::<Vec<_>>();
                    return Err(NotationError::Arity {
                        offset: start.offset,
                        atom: "mat2",
                        expected: "2 rows of 2 entries".into(),
                        found: format!("rows of sizes [{}]", found.join(", ")),
                    });
                }
                let mut rows = rows.into_iter();
                let mut row = || -> [PolySum; 2] { rows.next().unwrap().try_into().unwrap() };
                MatrixAtom::Mat2([row(), row()])
            }
        };
        Ok(atom)
    }

    fn vector_args<const N: usize>(
        &mut self,
        name: &'static str,
        offset: usize,
    ) -> Result<[PolySum; N], NotationError> {
        self.expect(TokenKind::LParen, "\"(\"")?;
        let entries = self.poly_list()?;
        self.close_args(&["\",\"", "\")\""])?;
        let found = entries.len();
        entries.try_into().map_err(|_| NotationError::Arity {
            offset,
            atom: name,
            expected: format!("{N} entries"),
            found: format!("{found} entries"),
        })
    }

    fn close_args(&mut self, expected: &[&str]) -> Result<(), NotationError> {
        if self.eat(&TokenKind::RParen) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn poly_list(&mut self) -> Result<Vec<PolySum>, NotationError> {
        let mut out = vec![self.sum()?];
        while self.eat(&TokenKind::Comma) {
            out.push(self.sum()?);
        }
        Ok(out)
    }

    fn sum(&mut self) -> Result<PolySum, NotationError> {
        let first_sign = if self.eat(&TokenKind::Minus) {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let mut terms = vec![(first_sign, self.term()?)];
        loop {
            let sign = match self.peek().kind {
                TokenKind::Plus => Sign::Plus,
                TokenKind::Minus => Sign::Minus,
                _ => break,
            };
            self.bump();
            terms.push((sign, self.term()?));
        }
        Ok(PolySum { terms })
    }

    fn term(&mut self) -> Result<PolyTerm, NotationError> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.bump();
                    factors.push(self.factor()?);
                }
                TokenKind::Var(_) | TokenKind::LParen => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(PolyTerm { factors })
    }

    fn factor(&mut self) -> Result<PolyFactor, NotationError> {
        let tok = self.peek().clone();
        let base = match tok.kind {
            TokenKind::Int(n) => {
                self.bump();
                PolyAtom::Int(n)
            }
            TokenKind::Var(v) => {
                self.bump();
                PolyAtom::Var(v)
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.sum()?;
                self.expect(TokenKind::RParen, "\")\"")?;
                PolyAtom::Group(inner)
            }
            _ => return Err(self.error(&["integer", "variable", "\"(\""])),
        };
        let exponent = if self.eat(&TokenKind::Caret) {
            let tok = self.peek().clone();
            match &tok.kind {
                TokenKind::Int(n) => match n.to_u32() {
                    Some(e) => {
                        self.bump();
                        Some(e)
                    }
                    None => return Err(self.error(&["exponent below 2^32"])),
                },
                _ => return Err(self.error(&["integer exponent"])),
            }
        } else {
            None
        };
        Ok(PolyFactor { base, exponent })
    }
}
