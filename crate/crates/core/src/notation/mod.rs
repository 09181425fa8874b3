//! The factorization notation: a line-oriented text form of caption products
//! such as `row2(a1, 1) M mat2(0, a2; a2, 1) M col2(a3, 1)`, with `=` joining
//! branches that are asserted equal.

pub mod ast;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod random;

use std::str::FromStr;

use thiserror::Error;

pub use ast::{Branch, Expr, MatrixAtom, PolyAtom, PolyFactor, PolySum, PolyTerm, Sign};
pub use eval::{as_chain2, check_branches, check_identity, expand, expand_branch, IdentityReport};
pub use parser::{parse, parse_poly};

use crate::polyring::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("lexical error at offset {offset}: unexpected character {found:?}")]
    Lexical { offset: usize, found: char },
    #[error("lexical error at offset {offset}: unknown word {word:?}")]
    UnknownWord { offset: usize, word: String },
    #[error("lexical error at offset {offset}: invalid variable {text:?}")]
    InvalidVariable { offset: usize, text: String },
    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("arity error at offset {offset}: {atom} takes {expected}, got {found}")]
    Arity {
        offset: usize,
        atom: &'static str,
        expected: String,
        found: String,
    },
    #[error("dimension mismatch between factors {} and {index}: {left} against {right}", index - 1)]
    Dimension {
        /// Index of the right-hand atom of the offending pair.
        index: usize,
        left: String,
        right: String,
    },
    #[error("product does not reduce to a scalar (result is {shape})")]
    NotScalar { shape: String },
    #[error("empty product")]
    EmptyProduct,
}

impl NotationError {
    /// Parse-stage errors, as opposed to evaluation-stage shape errors.
    pub fn is_parse_error(&self) -> bool {
        !matches!(
            self,
            NotationError::Dimension { .. } | NotationError::NotScalar { .. } | NotationError::EmptyProduct
        )
    }
}

impl FromStr for Polynomial {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(eval::poly_value(&parse_poly(s)?))
    }
}
