//! Exact engine for the Conway functions of alternating knot families.
//!
//! A family's Conway function is a multilinear polynomial in the conways
//! `a1..a6` and is written as a product of boundary vectors and matrices
//! separated by a metric. This crate expands such products exactly
//! ([`polyring`], [`tangle2`], [`tangle3`]), parses and prints them
//! ([`notation`]), checks them against an independent expansion
//! ([`oracle`]), and verifies the shipped table of families ([`registry`]).

pub mod notation;
pub mod oracle;
pub mod polyring;
pub mod registry;
pub mod tangle2;
pub mod tangle3;

pub use notation::{parse, Expr, NotationError};
pub use polyring::{Polynomial, VarId};
