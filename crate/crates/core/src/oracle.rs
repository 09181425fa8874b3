//! Second evaluation path for factorization expressions.
//!
//! Nothing here touches [`Polynomial`] arithmetic. [`naive_expand`] distributes
//! every product into a flat term list and merges only at the very end;
//! [`point_check`] evaluates branches at random integer points with plain
//! big-integer matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::notation::{Branch, Expr, MatrixAtom, NotationError, PolyAtom, PolySum, Sign};
use crate::polyring::{Polynomial, VarId};

/// A coefficient with its variables as an ascending index multiset.
pub type RawTerm = (BigInt, Vec<u32>);

type TermList = Vec<RawTerm>;

fn product(x: &TermList, y: &TermList) -> TermList {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (cx, vx) in x {
        for (cy, vy) in y {
            let mut vars = vx.clone();
            vars.extend_from_slice(vy);
            out.push((cx * cy, vars));
        }
    }
    out
}

fn constant(c: i64) -> TermList {
    if c == 0 {
        Vec::new()
    } else {
        vec![(BigInt::from(c), Vec::new())]
    }
}

fn sum_terms(sum: &PolySum) -> TermList {
    let mut out = Vec::new();
    for (sign, term) in &sum.terms {
        let mut acc = constant(1);
        for factor in &term.factors {
            let base = match &factor.base {
                PolyAtom::Int(n) => vec![(BigInt::from(n.clone()), Vec::new())],
                PolyAtom::Var(v) => vec![(BigInt::one(), vec![v.index()])],
                PolyAtom::Group(inner) => sum_terms(inner),
            };
            for _ in 0..factor.exponent.unwrap_or(1) {
                acc = product(&acc, &base);
            }
        }
        if *sign == Sign::Minus {
            for (c, _) in &mut acc {
                *c = -c.clone();
            }
        }
        out.extend(acc);
    }
    out
}

/// Dense matrix over any cell type, with a generic product.
#[derive(Debug, Clone)]
struct Grid<T> {
    rows: usize,
    cols: usize,
    cells: Vec<T>,
}

impl<T> Grid<T> {
    fn at(&self, i: usize, j: usize) -> &T {
        &self.cells[i * self.cols + j]
    }

    fn from_atom(atom: &MatrixAtom, entry: impl Fn(&PolySum) -> T, int: impl Fn(i64) -> T) -> Grid<T> {
        let pattern = |rows: usize, cols: usize, bits: &[i64]| Grid {
            rows,
            cols,
            cells: bits.iter().map(|&b| int(b)).collect(),
        };
        let from = |rows: usize, cols: usize, entries: Vec<&PolySum>| Grid {
            rows,
            cols,
            cells: entries.into_iter().map(&entry).collect(),
        };
        match atom {
            MatrixAtom::MetricM => pattern(2, 2, &[0, 1, 1, 0]),
            MatrixAtom::MetricP5 => pattern(
                5,
                5,
                &[
                    0, 0, 0, 0, 1, //
                    0, 0, 1, 1, 0, //
                    0, 1, 0, 1, 0, //
                    0, 1, 1, 0, 0, //
                    1, 0, 0, 0, 0,
                ],
            ),
            MatrixAtom::Row2(e) => from(1, 2, e.iter().collect()),
            MatrixAtom::Col2(e) => from(2, 1, e.iter().collect()),
            MatrixAtom::Row5(e) => from(1, 5, e.iter().collect()),
            MatrixAtom::Col5(e) => from(5, 1, e.iter().collect()),
            MatrixAtom::Mat2(rows) => from(2, 2, rows.iter().flatten().collect()),
        }
    }
}

fn dimension_error(atoms: &[MatrixAtom], index: usize, left: (usize, usize), right: (usize, usize)) -> NotationError {
    NotationError::Dimension {
        index,
        left: format!("{} ({}x{})", atoms[index - 1], left.0, left.1),
        right: format!("{} ({}x{})", atoms[index], right.0, right.1),
    }
}

fn fold_product<T>(
    atoms: &[MatrixAtom],
    to_grid: impl Fn(&MatrixAtom) -> Grid<T>,
    mul_cell: impl Fn(&Grid<T>, &Grid<T>, usize, usize) -> T,
) -> Result<T, NotationError> {
    let (first, rest) = atoms.split_first().ok_or(NotationError::EmptyProduct)?;
    let mut acc = to_grid(first);
    for (k, atom) in rest.iter().enumerate() {
        let rhs = to_grid(atom);
        if acc.cols != rhs.rows {
            return Err(dimension_error(
                atoms,
                k + 1,
                (acc.rows, acc.cols),
                (rhs.rows, rhs.cols),
            ));
        }
        let mut cells = Vec::with_capacity(acc.rows * rhs.cols);
        for i in 0..acc.rows {
            for j in 0..rhs.cols {
                cells.push(mul_cell(&acc, &rhs, i, j));
            }
        }
        acc = Grid {
            rows: acc.rows,
            cols: rhs.cols,
            cells,
        };
    }
    if (acc.rows, acc.cols) != (1, 1) {
        return Err(NotationError::NotScalar {
            shape: format!("{}x{}", acc.rows, acc.cols),
        });
    }
    Ok(acc.cells.pop().expect("1x1 grid"))
}

/// Sort every term's variables, then sort and merge terms, dropping zeros.
pub fn merge_terms(mut raw: Vec<RawTerm>) -> Vec<RawTerm> {
    for (_, vars) in &mut raw {
        vars.sort_unstable();
    }
    raw.sort_by(|x, y| x.1.cmp(&y.1));
    let mut out: Vec<RawTerm> = Vec::new();
    for (c, vars) in raw {
        match out.last_mut() {
            Some((acc, last)) if *last == vars => *acc += c,
            _ => out.push((c, vars)),
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out
}

/// Fully distributed, merged term list of one branch.
pub fn naive_expand(branch: &Branch) -> Result<Vec<RawTerm>, NotationError> {
    let raw = match branch {
        Branch::PolyLit(p) => sum_terms(p),
        Branch::Product(atoms) => fold_product(
            atoms,
            |atom| Grid::from_atom(atom, sum_terms, constant),
            |x, y, i, j| (0..x.cols).flat_map(|k| product(x.at(i, k), y.at(k, j))).collect(),
        )?,
    };
    Ok(merge_terms(raw))
}

/// The terms of `p` in the same layout and order as [`naive_expand`].
pub fn polynomial_terms(p: &Polynomial) -> Vec<RawTerm> {
    let mut out: Vec<RawTerm> = p.terms().map(|(m, c)| (c.clone(), m.index_multiset())).collect();
    out.sort_by(|x, y| x.1.cmp(&y.1));
    out
}

pub fn agrees_with(branch: &Branch, p: &Polynomial) -> Result<bool, NotationError> {
    Ok(naive_expand(branch)? == polynomial_terms(p))
}

fn eval_sum(sum: &PolySum, point: &BTreeMap<VarId, BigInt>) -> BigInt {
    let mut total = BigInt::zero();
    for (sign, term) in &sum.terms {
        let mut value = BigInt::one();
        for factor in &term.factors {
            let base = match &factor.base {
                PolyAtom::Int(n) => BigInt::from(n.clone()),
                PolyAtom::Var(v) => point[v].clone(),
                PolyAtom::Group(inner) => eval_sum(inner, point),
            };
            value *= base.pow(factor.exponent.unwrap_or(1));
        }
        match sign {
            Sign::Plus => total += value,
            Sign::Minus => total -= value,
        }
    }
    total
}

/// Value of one branch at an integer point covering all of its variables.
pub fn eval_branch(branch: &Branch, point: &BTreeMap<VarId, BigInt>) -> Result<BigInt, NotationError> {
    match branch {
        Branch::PolyLit(p) => Ok(eval_sum(p, point)),
        Branch::Product(atoms) => fold_product(
            atoms,
            |atom| Grid::from_atom(atom, |p| eval_sum(p, point), BigInt::from),
            |x, y, i, j| (0..x.cols).map(|k| x.at(i, k) * y.at(k, j)).sum(),
        ),
    }
}

/// Lowest and highest value drawn for each variable.
pub const POINT_RANGE: (u32, u32) = (1, 1 << 16);

/// True iff all branches agree at `trials` random points whose coordinates
/// are drawn uniformly from [`POINT_RANGE`] by a generator seeded with `seed`.
/// Any branch that fails to evaluate makes the check false.
pub fn point_check_branches(branches: &[Branch], trials: u32, seed: u64) -> bool {
    let vars: Vec<VarId> = branches
        .iter()
        .flat_map(Branch::variables)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let point: BTreeMap<VarId, BigInt> = vars
            .iter()
            .map(|&v| (v, BigInt::from(rng.gen_range(POINT_RANGE.0..=POINT_RANGE.1))))
            .collect();
        let mut values = branches.iter().map(|b| eval_branch(b, &point));
        let Some(Ok(first)) = values.next() else {
            return false;
        };
        for v in values {
            match v {
                Ok(v) if v == first => {}
                _ => return false,
            }
        }
    }
    true
}

pub fn point_check(e: &Expr, trials: u32, seed: u64) -> bool {
    point_check_branches(e.branches(), trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn branch(text: &str) -> Branch {
        parse(text).unwrap().branches()[0].clone()
    }

    fn vars(v: &[u32]) -> Vec<u32> {
        v.to_vec()
    }

    #[test]
    fn trefoil_terms() {
        let terms = naive_expand(&branch("row2(a1, 1) M mat2(0, a2; a2, 1) M col2(a3, 1)")).unwrap();
        let one = BigInt::one();
        assert_eq!(
            terms,
            vec![
                (one.clone(), vars(&[1, 2])),
                (one.clone(), vars(&[1, 3])),
                (one, vars(&[2, 3])),
            ]
        );
    }

    #[test]
    fn zero_product() {
        assert!(naive_expand(&branch("row2(1,0) M col2(1,0)")).unwrap().is_empty());
    }

    #[test]
    fn signs_exponents_and_cancellation() {
        let terms = naive_expand(&branch("(a1 - a2)^2 - a1^2 - a2^2 + 2 a1 a2")).unwrap();
        assert!(terms.is_empty());
        let terms = naive_expand(&branch("a1^0 - 3")).unwrap();
        assert_eq!(terms, vec![(BigInt::from(-2), vec![])]);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            naive_expand(&branch("row2(a1,1) M col5(1,1,1,1,1)")),
            Err(NotationError::Dimension { index: 2, .. })
        ));
        assert!(matches!(
            naive_expand(&branch("M M")),
            Err(NotationError::NotScalar { .. })
        ));
    }

    #[test]
    fn point_check_basics() {
        let same = parse("row2(a1, 1) M col2(a2, 1) = a1 + a2").unwrap();
        assert!(point_check(&same, 1, 0));
        assert!(point_check(&same, 50, 7));
        let off = parse("row2(a1, 1) M col2(a2, 1) = a1 + a2 + 1").unwrap();
        assert!(!point_check(&off, 1, 0));
        let broken = parse("M M = a1").unwrap();
        assert!(!point_check(&broken, 3, 0));
    }

    #[test]
    fn eval_branch_at_point() {
        let b = branch("a1 a2 + a2 a3 + a3 a1");
        let point: BTreeMap<VarId, BigInt> = [(1, 2), (2, 3), (3, 5)]
            .into_iter()
            .map(|(j, x)| (VarId::new(j).unwrap(), BigInt::from(x)))
            .collect();
        assert_eq!(eval_branch(&b, &point).unwrap(), BigInt::from(31));
    }
}
