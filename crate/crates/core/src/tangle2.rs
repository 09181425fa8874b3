//! 2-tangle algebra: 2-vectors and 2x2 matrices over [`Polynomial`], the
//! metric `M = [[0,1],[1,0]]`, metric-separated chains, and the commutation
//! and boundary identities satisfied by the `[[A,B],[B,0]]` block shapes.

use std::ops::Mul;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::polyring::{random_polynomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Row,
    Column,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("orientation mismatch: expected a {expected:?} vector, got a {found:?} vector")]
pub struct OrientationError {
    pub expected: Orientation,
    pub found: Orientation,
}

fn expect(v: Orientation, expected: Orientation) -> Result<(), OrientationError> {
    if v == expected {
        Ok(())
    } else {
        Err(OrientationError { expected, found: v })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub entries: [Polynomial; 2],
    pub orientation: Orientation,
}

impl Vec2 {
    pub fn row(x: impl Into<Polynomial>, y: impl Into<Polynomial>) -> Self {
        Vec2 {
            entries: [x.into(), y.into()],
            orientation: Orientation::Row,
        }
    }

    pub fn col(x: impl Into<Polynomial>, y: impl Into<Polynomial>) -> Self {
        Vec2 {
            entries: [x.into(), y.into()],
            orientation: Orientation::Column,
        }
    }

    pub fn transpose(&self) -> Self {
        let orientation = match self.orientation {
            Orientation::Row => Orientation::Column,
            Orientation::Column => Orientation::Row,
        };
        Vec2 {
            entries: self.entries.clone(),
            orientation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub entries: [[Polynomial; 2]; 2],
}

impl Mat2 {
    pub fn new(
        a: impl Into<Polynomial>,
        b: impl Into<Polynomial>,
        c: impl Into<Polynomial>,
        d: impl Into<Polynomial>,
    ) -> Self {
        Mat2 {
            entries: [[a.into(), b.into()], [c.into(), d.into()]],
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn transpose(&self) -> Self {
        let e = &self.entries;
        Mat2 {
            entries: [[e[0][0].clone(), e[1][0].clone()], [e[0][1].clone(), e[1][1].clone()]],
        }
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        let (x, y) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        Mat2 {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }
}

/// The 2-tangle metric `[[0,1],[1,0]]`.
pub fn metric_m() -> Mat2 {
    Mat2::new(0, 1, 1, 0)
}

/// Position of the conway inside an elementary caption matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElemKind {
    /// `[[0,a],[a,1]]`
    Bottom,
    /// `[[1,a],[a,0]]`
    Top,
    /// `[[a,1],[1,0]]`
    Left,
    /// `[[0,1],[1,a]]`
    Right,
}

pub fn elem(kind: ElemKind, a: Polynomial) -> Mat2 {
    match kind {
        ElemKind::Bottom => Mat2::new(0, a.clone(), a, 1),
        ElemKind::Top => Mat2::new(1, a.clone(), a, 0),
        ElemKind::Left => Mat2::new(a, 1, 1, 0),
        ElemKind::Right => Mat2::new(0, 1, 1, a),
    }
}

pub fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    x * y
}

/// Row vector times matrix.
pub fn vec_mat(v: &Vec2, m: &Mat2) -> Result<Vec2, OrientationError> {
    expect(v.orientation, Orientation::Row)?;
    let (r, e) = (&v.entries, &m.entries);
    Ok(Vec2::row(
        &r[0] * &e[0][0] + &r[1] * &e[1][0],
        &r[0] * &e[0][1] + &r[1] * &e[1][1],
    ))
}

/// Matrix times column vector.
pub fn mat_vec(m: &Mat2, v: &Vec2) -> Result<Vec2, OrientationError> {
    expect(v.orientation, Orientation::Column)?;
    let (e, c) = (&m.entries, &v.entries);
    Ok(Vec2::col(
        &e[0][0] * &c[0] + &e[0][1] * &c[1],
        &e[1][0] * &c[0] + &e[1][1] * &c[1],
    ))
}

/// Plain row-by-column product, no metric.
pub fn dot(r: &Vec2, c: &Vec2) -> Result<Polynomial, OrientationError> {
    expect(r.orientation, Orientation::Row)?;
    expect(c.orientation, Orientation::Column)?;
    Ok(&r.entries[0] * &c.entries[0] + &r.entries[1] * &c.entries[1])
}

/// `row · M · m1 · M · m2 · ... · M · column`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain2 {
    row: Vec2,
    interior: Vec<Mat2>,
    column: Vec2,
}

impl Chain2 {
    pub fn new(row: Vec2, interior: Vec<Mat2>, column: Vec2) -> Result<Self, OrientationError> {
        expect(row.orientation, Orientation::Row)?;
        expect(column.orientation, Orientation::Column)?;
        Ok(Chain2 { row, interior, column })
    }

    pub fn row(&self) -> &Vec2 {
        &self.row
    }

    pub fn interior(&self) -> &[Mat2] {
        &self.interior
    }

    pub fn column(&self) -> &Vec2 {
        &self.column
    }

    /// Evaluates left to right.
    pub fn eval(&self) -> Polynomial {
        let m = metric_m();
        let mut acc = self.row.clone();
        for factor in &self.interior {
            acc = vec_mat(&vec_mat(&acc, &m).unwrap(), factor).unwrap();
        }
        let acc = vec_mat(&acc, &m).unwrap();
        dot(&acc, &self.column).unwrap()
    }

    /// The same chain read backwards: every factor transposed, row and column swapped.
    pub fn reversed(&self) -> Chain2 {
        Chain2 {
            row: self.column.transpose(),
            interior: self.interior.iter().rev().map(Mat2::transpose).collect(),
            column: self.row.transpose(),
        }
    }

    /// Product of the interior `M m1 M m2 ... M` as a single matrix.
    pub fn interior_product(&self) -> Mat2 {
        let m = metric_m();
        self.interior
            .iter()
            .fold(m.clone(), |acc, factor| &(&acc * factor) * &m)
    }
}

pub fn chain_eval(c: &Chain2) -> Polynomial {
    c.eval()
}

/// `[[a,b],[b,0]]`
pub fn upper_block(a: &Polynomial, b: &Polynomial) -> Mat2 {
    Mat2::new(a.clone(), b.clone(), b.clone(), 0)
}

/// `[[0,b],[b,a]]`
pub fn lower_block(a: &Polynomial, b: &Polynomial) -> Mat2 {
    Mat2::new(0, b.clone(), b.clone(), a.clone())
}

/// Closed form of `upper_block(a1,b1) · M · upper_block(a2,b2)`.
pub fn upper_product_closed(a1: &Polynomial, b1: &Polynomial, a2: &Polynomial, b2: &Polynomial) -> Mat2 {
    upper_block(&(a1 * b2 + a2 * b1), &(b1 * b2))
}

/// Closed form of `lower_block(a1,b1) · M · lower_block(a2,b2)`.
pub fn lower_product_closed(a1: &Polynomial, b1: &Polynomial, a2: &Polynomial, b2: &Polynomial) -> Mat2 {
    lower_block(&(a1 * b2 + a2 * b1), &(b1 * b2))
}

/// `x · M · y == y · M · x`.
pub fn commutes_under_metric(x: &Mat2, y: &Mat2) -> bool {
    let m = metric_m();
    &(x * &m) * y == &(y * &m) * x
}

/// One named identity of the block algebra and whether it held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub holds: bool,
}

/// Commutation of upper blocks and of lower blocks under the metric, plus
/// agreement of both products with their closed forms.
pub fn commute_identities(a1: &Polynomial, b1: &Polynomial, a2: &Polynomial, b2: &Polynomial) -> Vec<IdentityOutcome> {
    let m = metric_m();
    let (u1, u2) = (upper_block(a1, b1), upper_block(a2, b2));
    let (l1, l2) = (lower_block(a1, b1), lower_block(a2, b2));
    let upper = &(&u1 * &m) * &u2;
    let lower = &(&l1 * &m) * &l2;
    vec![
        IdentityOutcome {
            name: "upper blocks commute under M",
            holds: upper == &(&u2 * &m) * &u1,
        },
        IdentityOutcome {
            name: "lower blocks commute under M",
            holds: lower == &(&l2 * &m) * &l1,
        },
        IdentityOutcome {
            name: "upper product closed form",
            holds: upper == upper_product_closed(a1, b1, a2, b2),
        },
        IdentityOutcome {
            name: "lower product closed form",
            holds: lower == lower_product_closed(a1, b1, a2, b2),
        },
    ]
}

pub fn check_commute(a1: &Polynomial, b1: &Polynomial, a2: &Polynomial, b2: &Polynomial) -> bool {
    commute_identities(a1, b1, a2, b2).iter().all(|o| o.holds)
}

/// Boundary forms of the commutation rule, where a row vector `(A1, B1)`
/// plays the role of a block lifted by `(0, 1)` or `(1, 0)`.
pub fn boundary_identities(a1: &Polynomial, b1: &Polynomial, a2: &Polynomial, b2: &Polynomial) -> Vec<IdentityOutcome> {
    let m = metric_m();
    let r1 = Vec2::row(a1.clone(), b1.clone());
    let r2 = Vec2::row(a2.clone(), b2.clone());
    let times = |r: &Vec2, x: &Mat2| vec_mat(r, x).unwrap();

    // (A1,B1) M [[0,A2],[A2,B2]] = (0,1) [[0,A1],[A1,B1]] M [[0,A2],[A2,B2]]
    //                            = (A2,B2) M [[0,A1],[A1,B1]]
    let s1 = lower_block(b1, a1);
    let s2 = lower_block(b2, a2);
    let lower_direct = times(&times(&r1, &m), &s2);
    let lower_lifted = times(&Vec2::row(0, 1), &(&(&s1 * &m) * &s2));
    let lower_swapped = times(&times(&r2, &m), &s1);

    // (A1,B1) M [[A2,B2],[B2,0]] = (1,0) [[A1,B1],[B1,0]] M [[A2,B2],[B2,0]]
    //                            = (A2,B2) M [[A1,B1],[B1,0]]
    let u1 = upper_block(a1, b1);
    let u2 = upper_block(a2, b2);
    let upper_direct = times(&times(&r1, &m), &u2);
    let upper_lifted = times(&Vec2::row(1, 0), &(&(&u1 * &m) * &u2));
    let upper_swapped = times(&times(&r2, &m), &u1);

    vec![
        IdentityOutcome {
            name: "row-lower boundary swap",
            holds: lower_direct == lower_swapped,
        },
        IdentityOutcome {
            name: "row-lower boundary lift by (0,1)",
            holds: lower_direct == lower_lifted,
        },
        IdentityOutcome {
            name: "row-upper boundary swap",
            holds: upper_direct == upper_swapped,
        },
        IdentityOutcome {
            name: "row-upper boundary lift by (1,0)",
            holds: upper_direct == upper_lifted,
        },
    ]
}

pub fn check_boundary_lift(a1: &Polynomial, b1: &Polynomial, a2: &Polynomial, b2: &Polynomial) -> bool {
    boundary_identities(a1, b1, a2, b2).iter().all(|o| o.holds)
}

/// Result of one identity over fresh symbols and random instantiations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteLine {
    pub name: &'static str,
    pub symbolic: bool,
    pub random_passed: u32,
    pub random_trials: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySuite {
    pub lines: Vec<SuiteLine>,
    /// Must be false: `[[a1,a2],[a3,a4]]` and `[[a5,a6],[a7,a8]]` do not commute under M.
    pub generic_pair_commutes: bool,
}

impl IdentitySuite {
    pub fn passed(&self) -> bool {
        !self.generic_pair_commutes
            && self
                .lines
                .iter()
                .all(|l| l.symbolic && l.random_passed == l.random_trials)
    }
}

fn all_identities(a1: &Polynomial, b1: &Polynomial, a2: &Polynomial, b2: &Polynomial) -> Vec<IdentityOutcome> {
    let mut out = commute_identities(a1, b1, a2, b2);
    out.extend(boundary_identities(a1, b1, a2, b2));
    out
}

/// Runs every block identity with `A1, B1, A2, B2 = a1, a2, a3, a4` and at
/// `trials` random polynomial instantiations drawn from `seed`.
pub fn identity_suite(trials: u32, seed: u64) -> IdentitySuite {
    let sym: Vec<Polynomial> = (1..=4).map(|j| Polynomial::var(j).expect("valid index")).collect();
    let mut lines: Vec<SuiteLine> = all_identities(&sym[0], &sym[1], &sym[2], &sym[3])
        .into_iter()
        .map(|o| SuiteLine {
            name: o.name,
            symbolic: o.holds,
            random_passed: 0,
            random_trials: trials,
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let p: Vec<Polynomial> = (0..4).map(|_| random_polynomial(&mut rng, 6, 3, 4, 5)).collect();
        for (line, o) in lines.iter_mut().zip(all_identities(&p[0], &p[1], &p[2], &p[3])) {
            line.random_passed += u32::from(o.holds);
        }
    }
    let a = |j: u64| Polynomial::var(j).expect("valid index");
    let x = Mat2::new(a(1), a(2), a(3), a(4));
    let y = Mat2::new(a(5), a(6), a(7), a(8));
    IdentitySuite {
        lines,
        generic_pair_commutes: commutes_under_metric(&x, &y),
    }
}
