//! Seeded generator of arbitrary syntax trees, for round-trip testing.
//! The trees need not be dimensionally valid.

use num_bigint::BigUint;
use rand::Rng;

use super::ast::{Branch, Expr, MatrixAtom, PolyAtom, PolyFactor, PolySum, PolyTerm, Sign};
use crate::polyring::VarId;

fn sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.3) {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

fn atom<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> PolyAtom {
    match rng.gen_range(0..10) {
        0..=2 => PolyAtom::Int(match rng.gen_range(0..8) {
            0 => BigUint::from(rng.gen::<u64>()) * BigUint::from(rng.gen::<u64>()),
            _ => BigUint::from(rng.gen_range(0u32..=20)),
        }),
        3..=7 => {
            let j = if rng.gen_bool(0.05) {
                rng.gen_range(10..100_000)
            } else {
                rng.gen_range(1..=9)
            };
            PolyAtom::Var(VarId::new(j).expect("positive index"))
        }
        _ if depth > 0 => PolyAtom::Group(random_sum(rng, depth - 1)),
        _ => PolyAtom::Var(VarId::new(1).expect("positive index")),
    }
}

/// Random signed sum, nesting groups at most `depth` levels deep.
pub fn random_sum<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> PolySum {
    let n = rng.gen_range(1..=3);
    PolySum {
        terms: (0..n)
            .map(|_| {
                let k = rng.gen_range(1..=3);
                let factors = (0..k)
                    .map(|_| PolyFactor {
                        base: atom(rng, depth),
                        exponent: rng.gen_bool(0.2).then(|| rng.gen_range(0..=4)),
                    })
                    .collect();
                (sign(rng), PolyTerm { factors })
            })
            .collect(),
    }
}

fn matrix_atom<R: Rng + ?Sized>(rng: &mut R) -> MatrixAtom {
    let kind = rng.gen_range(0..7);
    let mut e = || random_sum(rng, 1);
    match kind {
        0 => MatrixAtom::MetricM,
        1 => MatrixAtom::MetricP5,
        2 => MatrixAtom::Row2([e(), e()]),
        3 => MatrixAtom::Col2([e(), e()]),
        4 => MatrixAtom::Mat2([[e(), e()], [e(), e()]]),
        5 => MatrixAtom::Row5([e(), e(), e(), e(), e()]),
        _ => MatrixAtom::Col5([e(), e(), e(), e(), e()]),
    }
}

pub fn random_branch<R: Rng + ?Sized>(rng: &mut R) -> Branch {
    if rng.gen_bool(0.25) {
        Branch::PolyLit(random_sum(rng, 2))
    } else {
        let n = rng.gen_range(1..=4);
        Branch::Product((0..n).map(|_| matrix_atom(rng)).collect())
    }
}

pub fn random_expr<R: Rng + ?Sized>(rng: &mut R) -> Expr {
    let n = rng.gen_range(1..=3);
    Expr::from_branches((0..n).map(|_| random_branch(rng)).collect())
}
