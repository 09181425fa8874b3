//! Expansion of parsed expressions into canonical polynomials.

use num_bigint::BigInt;

use super::ast::{Branch, Expr, MatrixAtom, PolyAtom, PolySum, Sign};
use super::NotationError;
use crate::polyring::Polynomial;
use crate::tangle2::{self, Chain2, Mat2, Vec2};
use crate::tangle3::{self, Mat5, Vec5};

pub fn poly_value(sum: &PolySum) -> Polynomial {
    let mut total = Polynomial::zero();
    for (sign, term) in &sum.terms {
        let mut product = Polynomial::one();
        for factor in &term.factors {
            let base = match &factor.base {
                PolyAtom::Int(n) => Polynomial::constant(BigInt::from(n.clone())),
                PolyAtom::Var(v) => Polynomial::from_var(*v),
                PolyAtom::Group(inner) => poly_value(inner),
            };
            let value = match factor.exponent {
                Some(e) => base.pow(e),
                None => base,
            };
            product = &product * &value;
        }
        total = match sign {
            Sign::Plus => total + product,
            Sign::Minus => total - product,
        };
    }
    total
}

/// Intermediate value of a partially evaluated product.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Value {
    Scalar(Polynomial),
    Vec2(Vec2),
    Mat2(Mat2),
    Vec5(Vec5),
    Mat5(Mat5),
}

impl Value {
    pub fn shape(&self) -> (usize, usize) {
        use tangle2::Orientation::*;
        match self {
            Value::Scalar(_) => (1, 1),
            Value::Vec2(v) if v.orientation == Row => (1, 2),
            Value::Vec2(_) => (2, 1),
            Value::Mat2(_) => (2, 2),
            Value::Vec5(v) if v.orientation == Row => (1, 5),
            Value::Vec5(_) => (5, 1),
            Value::Mat5(_) => (5, 5),
        }
    }

    pub fn from_atom(atom: &MatrixAtom) -> Value {
        let p = poly_value;
        match atom {
            MatrixAtom::MetricM => Value::Mat2(tangle2::metric_m()),
            MatrixAtom::MetricP5 => Value::Mat5(tangle3::metric_p5()),
            MatrixAtom::Row2([x, y]) => Value::Vec2(Vec2::row(p(x), p(y))),
            MatrixAtom::Col2([x, y]) => Value::Vec2(Vec2::col(p(x), p(y))),
            MatrixAtom::Mat2([[a, b], [c, d]]) => Value::Mat2(Mat2::new(p(a), p(b), p(c), p(d))),
            MatrixAtom::Row5(e) => Value::Vec5(Vec5::row(std::array::from_fn(|i| p(&e[i])))),
            MatrixAtom::Col5(e) => Value::Vec5(Vec5::col(std::array::from_fn(|i| p(&e[i])))),
        }
    }

    /// Matrix product, or `None` when the shapes do not chain.
    pub fn mul(&self, rhs: &Value) -> Option<Value> {
        use tangle2::Orientation::*;
        Some(match (self, rhs) {
            (Value::Vec2(r), Value::Mat2(m)) if r.orientation == Row => Value::Vec2(tangle2::vec_mat(r, m).ok()?),
            (Value::Mat2(m), Value::Vec2(c)) if c.orientation == Column => Value::Vec2(tangle2::mat_vec(m, c).ok()?),
            (Value::Mat2(x), Value::Mat2(y)) => Value::Mat2(x * y),
            (Value::Vec2(r), Value::Vec2(c)) => Value::Scalar(tangle2::dot(r, c).ok()?),
            (Value::Vec5(r), Value::Mat5(m)) if r.orientation == Row => Value::Vec5(tangle3::vec_mat(r, m).ok()?),
            (Value::Mat5(m), Value::Vec5(c)) if c.orientation == Column => Value::Vec5(tangle3::mat_vec(m, c).ok()?),
            (Value::Mat5(x), Value::Mat5(y)) => Value::Mat5(x * y),
            (Value::Vec5(r), Value::Vec5(c)) => Value::Scalar(tangle3::dot(r, c).ok()?),
            _ => return None,
        })
    }
}

fn shape_text((r, c): (usize, usize)) -> String {
    format!("{r}x{c}")
}

/// Evaluates a product left to right.
pub fn product_value(atoms: &[MatrixAtom]) -> Result<Value, NotationError> {
    let mut iter = atoms.iter().enumerate();
    let (_, first) = iter.next().ok_or(NotationError::EmptyProduct)?;
    let mut acc = Value::from_atom(first);
    for (i, atom) in iter {
        let rhs = Value::from_atom(atom);
        acc = acc.mul(&rhs).ok_or_else(|| NotationError::Dimension {
            index: i,
            left: format!("{} ({})", atoms[i - 1], shape_text(acc.shape())),
            right: format!("{} ({})", atom, shape_text(rhs.shape())),
        })?;
    }
    Ok(acc)
}

pub fn expand_branch(branch: &Branch) -> Result<Polynomial, NotationError> {
    match branch {
        Branch::PolyLit(p) => Ok(poly_value(p)),
        Branch::Product(atoms) => match product_value(atoms)? {
            Value::Scalar(p) => Ok(p),
            other => Err(NotationError::NotScalar {
                shape: shape_text(other.shape()),
            }),
        },
    }
}

/// Expands a single-branch expression. For an identity the last branch is
/// expanded.
pub fn expand(e: &Expr) -> Result<Polynomial, NotationError> {
    expand_branch(e.branches().last().expect("at least one branch"))
}

/// Outcome of expanding every branch of an asserted identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    /// Expansion of each branch in order.
    pub branches: Vec<Result<Polynomial, NotationError>>,
    /// True iff every branch expanded and all expansions are equal.
    pub all_equal: bool,
    /// `(i, j, equal)` for every pair of branches that expanded.
    pub pairwise: Vec<(usize, usize, bool)>,
    /// `(i, branch_i - reference)` for every branch differing from the
    /// reference, which is the last branch.
    pub differences: Vec<(usize, Polynomial)>,
}

pub fn check_identity(e: &Expr) -> IdentityReport {
    check_branches(e.branches())
}

pub fn check_branches(branches: &[Branch]) -> IdentityReport {
    let results: Vec<_> = branches.iter().map(expand_branch).collect();
    let mut pairwise = Vec::new();
    for i in 0..results.len() {
        for j in i + 1..results.len() {
            if let (Ok(p), Ok(q)) = (&results[i], &results[j]) {
                pairwise.push((i, j, p == q));
            }
        }
    }
    let mut differences = Vec::new();
    if let Some(Ok(reference)) = results.last() {
        for (i, r) in results.iter().enumerate() {
            if let Ok(p) = r {
                let d = p - reference;
                if !d.is_zero() {
                    differences.push((i, d));
                }
            }
        }
    }
    let all_equal = results.iter().all(Result::is_ok) && differences.is_empty();
    IdentityReport {
        branches: results,
        all_equal,
        pairwise,
        differences,
    }
}

/// Recognizes `row2 M X1 M X2 ... M col2` and returns it as a [`Chain2`].
pub fn as_chain2(branch: &Branch) -> Option<Chain2> {
    let Branch::Product(atoms) = branch else {
        return None;
    };
    let (first, rest) = atoms.split_first()?;
    let (last, middle) = rest.split_last()?;
    let row = match Value::from_atom(first) {
        Value::Vec2(v) => v,
        _ => return None,
    };
    let column = match Value::from_atom(last) {
        Value::Vec2(v) => v,
        _ => return None,
    };
    if middle.len() % 2 == 0 {
        return None;
    }
    let mut interior = Vec::new();
    for (k, atom) in middle.iter().enumerate() {
        let is_metric = k % 2 == 0;
        match (is_metric, atom) {
            (true, MatrixAtom::MetricM) => {}
            (false, MatrixAtom::Mat2(_)) => match Value::from_atom(atom) {
                Value::Mat2(m) => interior.push(m),
                _ => unreachable!(),
            },
            _ => return None,
        }
    }
    Chain2::new(row, interior, column).ok()
}
