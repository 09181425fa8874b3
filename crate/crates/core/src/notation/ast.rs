//! Syntax tree of factorization expressions. Polynomial literals keep the
//! shape they were written in (grouping, factor order) so that printing and
//! reparsing gives back the same tree.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::polyring::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A signed sum of terms. The sign of the first term is a leading unary minus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySum {
    pub terms: Vec<(Sign, PolyTerm)>,
}

/// A product of factors, written with `*` or by juxtaposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyTerm {
    pub factors: Vec<PolyFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyFactor {
    pub base: PolyAtom,
    pub exponent: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PolyAtom {
    Int(BigUint),
    Var(VarId),
    Group(PolySum),
}

impl PolySum {
    pub fn variables(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<VarId>) {
        for (_, term) in &self.terms {
            for factor in &term.factors {
                match &factor.base {
                    PolyAtom::Int(_) => {}
                    PolyAtom::Var(v) => {
                        out.insert(*v);
                    }
                    PolyAtom::Group(inner) => inner.collect_variables(out),
                }
            }
        }
    }
}

/// One factor of a matrix product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MatrixAtom {
    MetricM,
    MetricP5,
    Row2([PolySum; 2]),
    Col2([PolySum; 2]),
    Mat2([[PolySum; 2]; 2]),
    Row5([PolySum; 5]),
    Col5([PolySum; 5]),
}

impl MatrixAtom {
    /// `(rows, columns)`
    pub fn shape(&self) -> (usize, usize) {
        match self {
            MatrixAtom::MetricM | MatrixAtom::Mat2(_) => (2, 2),
            MatrixAtom::MetricP5 => (5, 5),
            MatrixAtom::Row2(_) => (1, 2),
            MatrixAtom::Col2(_) => (2, 1),
            MatrixAtom::Row5(_) => (1, 5),
            MatrixAtom::Col5(_) => (5, 1),
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            MatrixAtom::MetricM => "M",
            MatrixAtom::MetricP5 => "P5",
            MatrixAtom::Row2(_) => "row2",
            MatrixAtom::Col2(_) => "col2",
            MatrixAtom::Mat2(_) => "mat2",
            MatrixAtom::Row5(_) => "row5",
            MatrixAtom::Col5(_) => "col5",
        }
    }

    pub fn entries(&self) -> Vec<&PolySum> {
        match self {
            MatrixAtom::MetricM | MatrixAtom::MetricP5 => Vec::new(),
            MatrixAtom::Row2(e) | MatrixAtom::Col2(e) => e.iter().collect(),
            MatrixAtom::Mat2(rows) => rows.iter().flatten().collect(),
            MatrixAtom::Row5(e) | MatrixAtom::Col5(e) => e.iter().collect(),
        }
    }
}

/// One side of an asserted equality: a bare polynomial or a matrix product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Branch {
    PolyLit(PolySum),
    Product(Vec<MatrixAtom>),
}

impl Branch {
    pub fn variables(&self) -> BTreeSet<VarId> {
        match self {
            Branch::PolyLit(p) => p.variables(),
            Branch::Product(atoms) => atoms
                .iter()
                .flat_map(|a| a.entries())
                .flat_map(PolySum::variables)
                .collect(),
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self, Branch::Product(_))
    }
}

/// A parsed statement: a single branch, or two or more branches asserted equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Single(Branch),
    Identity(Vec<Branch>),
}

impl Expr {
    pub fn branches(&self) -> &[Branch] {
        match self {
            Expr::Single(b) => std::slice::from_ref(b),
            Expr::Identity(bs) => bs,
        }
    }

    pub fn from_branches(mut branches: Vec<Branch>) -> Expr {
        if branches.len() == 1 {
            Expr::Single(branches.pop().unwrap())
        } else {
            Expr::Identity(branches)
        }
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.branches().iter().flat_map(Branch::variables).collect()
    }
}

impl fmt::Display for PolySum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sign, term)) in self.terms.iter().enumerate() {
            match (i, sign) {
                (0, Sign::Plus) => {}
                (0, Sign::Minus) => f.write_str("-")?,
                (_, Sign::Plus) => f.write_str(" + ")?,
                (_, Sign::Minus) => f.write_str(" - ")?,
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl fmt::Display for PolyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl fmt::Display for PolyFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            PolyAtom::Int(n) => write!(f, "{n}")?,
            PolyAtom::Var(v) => write!(f, "{v}")?,
            PolyAtom::Group(inner) => write!(f, "({inner})")?,
        }
        if let Some(e) = self.exponent {
            write!(f, "^{e}")?;
        }
        Ok(())
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, entries: &[PolySum]) -> fmt::Result {
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

impl fmt::Display for MatrixAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())?;
        match self {
            MatrixAtom::MetricM | MatrixAtom::MetricP5 => return Ok(()),
            MatrixAtom::Row2(e) | MatrixAtom::Col2(e) => {
                f.write_str("(")?;
                write_list(f, e)?;
            }
            MatrixAtom::Row5(e) | MatrixAtom::Col5(e) => {
                f.write_str("(")?;
                write_list(f, e)?;
            }
            MatrixAtom::Mat2([top, bottom]) => {
                f.write_str("(")?;
                write_list(f, top)?;
                f.write_str("; ")?;
                write_list(f, bottom)?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::PolyLit(p) => write!(f, "{p}"),
            Branch::Product(atoms) => {
                for (i, atom) in atoms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{atom}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.branches().iter().enumerate() {
            if i > 0 {
                f.write_str(" = ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}
