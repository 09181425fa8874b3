//! 3-tangle vectors and the 5x5 metric used by the three-component families.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Mul;

use crate::polyring::{Monomial, Polynomial, VarId};
use crate::tangle2::{Orientation, OrientationError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec5 {
    pub entries: [Polynomial; 5],
    pub orientation: Orientation,
}

impl Vec5 {
    pub fn row(entries: [Polynomial; 5]) -> Self {
        Vec5 {
            entries,
            orientation: Orientation::Row,
        }
    }

    pub fn col(entries: [Polynomial; 5]) -> Self {
        Vec5 {
            entries,
            orientation: Orientation::Column,
        }
    }

    pub fn transpose(&self) -> Self {
        let orientation = match self.orientation {
            Orientation::Row => Orientation::Column,
            Orientation::Column => Orientation::Row,
        };
        Vec5 {
            entries: self.entries.clone(),
            orientation,
        }
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.entries.iter().flat_map(Polynomial::variables).collect()
    }
}

impl std::ops::Add for &Vec5 {
    type Output = Vec5;

    fn add(self, rhs: &Vec5) -> Vec5 {
        Vec5 {
            entries: std::array::from_fn(|i| &self.entries[i] + &rhs.entries[i]),
            orientation: self.orientation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat5 {
    pub entries: [[Polynomial; 5]; 5],
}

impl Mat5 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        Mat5 {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat5::from_fn(|i, j| self.entries[j][i].clone())
    }
}

impl Mul for &Mat5 {
    type Output = Mat5;

    fn mul(self, rhs: &Mat5) -> Mat5 {
        Mat5::from_fn(|i, j| (0..5).map(|k| &self.entries[i][k] * &rhs.entries[k][j]).sum())
    }
}

const P5_PATTERN: [[i64; 5]; 5] = [
    [0, 0, 0, 0, 1],
    [0, 0, 1, 1, 0],
    [0, 1, 0, 1, 0],
    [0, 1, 1, 0, 0],
    [1, 0, 0, 0, 0],
];

/// The 3-tangle metric.
pub fn metric_p5() -> Mat5 {
    Mat5::from_fn(|i, j| Polynomial::constant(P5_PATTERN[i][j]))
}

pub fn vec_mat(v: &Vec5, m: &Mat5) -> Result<Vec5, OrientationError> {
    if v.orientation != Orientation::Row {
        return Err(OrientationError {
            expected: Orientation::Row,
            found: v.orientation,
        });
    }
    Ok(Vec5::row(std::array::from_fn(|j| {
        (0..5).map(|k| &v.entries[k] * &m.entries[k][j]).sum()
    })))
}

pub fn mat_vec(m: &Mat5, v: &Vec5) -> Result<Vec5, OrientationError> {
    if v.orientation != Orientation::Column {
        return Err(OrientationError {
            expected: Orientation::Column,
            found: v.orientation,
        });
    }
    Ok(Vec5::col(std::array::from_fn(|i| {
        (0..5).map(|k| &m.entries[i][k] * &v.entries[k]).sum()
    })))
}

pub fn dot(r: &Vec5, c: &Vec5) -> Result<Polynomial, OrientationError> {
    for (v, expected) in [(r, Orientation::Row), (c, Orientation::Column)] {
        if v.orientation != expected {
            return Err(OrientationError {
                expected,
                found: v.orientation,
            });
        }
    }
    Ok((0..5).map(|k| &r.entries[k] * &c.entries[k]).sum())
}

/// `u · P5 · v`, reading `u` as a row and `v` as a column whatever their
/// stored orientation.
pub fn bilinear(u: &Vec5, v: &Vec5) -> Polynomial {
    let row = Vec5::row(u.entries.clone());
    let col = Vec5::col(v.entries.clone());
    dot(&vec_mat(&row, &metric_p5()).unwrap(), &col).unwrap()
}

fn rename(p: &Polynomial, map: &BTreeMap<VarId, VarId>) -> Polynomial {
    p.terms()
        .map(|(m, c)| {
            let renamed = Monomial::from_factors(m.factors().iter().map(|&(v, e)| (map[&v], e)));
            Polynomial::term(c.clone(), renamed)
        })
        .sum()
}

fn permutations(items: &[VarId]) -> Vec<Vec<VarId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// True when some bijection between the variables of `u` and `v` turns the
/// entries of `u` into the entries of `v`. Orientation is ignored.
pub fn equivalent_up_to_renaming(u: &Vec5, v: &Vec5) -> bool {
    let from: Vec<VarId> = u.variables().into_iter().collect();
    let to: Vec<VarId> = v.variables().into_iter().collect();
    if from.len() != to.len() {
        return false;
    }
    permutations(&to).into_iter().any(|image| {
        let map: BTreeMap<VarId, VarId> = from.iter().copied().zip(image).collect();
        (0..5).all(|k| rename(&u.entries[k], &map) == v.entries[k])
    })
}

/// Groups vectors into classes of [`equivalent_up_to_renaming`]. Classes and
/// their members are listed in order of first appearance.
pub fn classify_vectors(vectors: &[Vec5]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        match classes
            .iter_mut()
            .find(|class| equivalent_up_to_renaming(&vectors[class[0]], v))
        {
            Some(class) => class.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(j: u64) -> Polynomial {
        Polynomial::var(j).unwrap()
    }

    fn unit(k: usize) -> [Polynomial; 5] {
        std::array::from_fn(|i| Polynomial::constant(i64::from(i == k)))
    }

    #[test]
    fn p5_shape() {
        let p = metric_p5();
        assert_eq!(p.transpose(), p);
        let u = Vec5::row(unit(0));
        assert_eq!(vec_mat(&u, &p).unwrap(), Vec5::row(unit(4)));
        let ones: [Polynomial; 5] = std::array::from_fn(|_| Polynomial::one());
        assert_eq!(
            bilinear(&Vec5::row(ones.clone()), &Vec5::col(ones)),
            Polynomial::constant(8)
        );
    }

    #[test]
    fn first_unit_vector_pairs_to_zero() {
        assert!(bilinear(&Vec5::row(unit(0)), &Vec5::col(unit(0))).is_zero());
    }

    #[test]
    fn explicit_formula() {
        let u: [Polynomial; 5] = std::array::from_fn(|i| a(i as u64 + 1));
        let v: [Polynomial; 5] = std::array::from_fn(|i| a(i as u64 + 6));
        let expected = &u[0] * &v[4]
            + &u[1] * &(&v[2] + &v[3])
            + &u[2] * &(&v[1] + &v[3])
            + &u[3] * &(&v[1] + &v[2])
            + &u[4] * &v[0];
        assert_eq!(bilinear(&Vec5::row(u), &Vec5::col(v)), expected);
    }

    #[test]
    fn orientation_checked() {
        assert!(vec_mat(&Vec5::col(unit(0)), &metric_p5()).is_err());
        assert!(mat_vec(&metric_p5(), &Vec5::row(unit(0))).is_err());
        assert!(dot(&Vec5::row(unit(0)), &Vec5::row(unit(0))).is_err());
        let col = mat_vec(&metric_p5(), &Vec5::col(unit(4))).unwrap();
        assert_eq!(col, Vec5::col(unit(0)));
        assert_eq!(&metric_p5() * &metric_p5(), (&metric_p5() * &metric_p5()).transpose());
    }

    #[test]
    fn renaming_equivalence() {
        let odd = Vec5::row([
            a(1) * a(3) * a(5),
            a(3) * a(5),
            a(5) * a(1),
            a(1) * a(3),
            a(1) + a(3) + a(5),
        ]);
        let even = Vec5::col([
            a(2) * a(4) * a(6),
            a(4) * a(6),
            a(6) * a(2),
            a(2) * a(4),
            a(2) + a(4) + a(6),
        ]);
        let other = Vec5::col([
            Polynomial::one(),
            a(2),
            a(4),
            a(6),
            a(2) * a(4) + a(4) * a(6) + a(6) * a(2),
        ]);
        assert!(equivalent_up_to_renaming(&odd, &even));
        assert!(!equivalent_up_to_renaming(&odd, &other));
        assert_eq!(classify_vectors(&[odd, other, even]), vec![vec![0, 2], vec![1]]);
    }
}
