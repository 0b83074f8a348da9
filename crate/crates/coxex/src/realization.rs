//! Points of the homogeneous spaces: Plücker vectors of matrices, sub-Pfaffian
//! spinor vectors of skew matrices, and isotropic vectors for the cross polytope.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::combinatorics::{GroundSet, Parity, SetSystem, SubsetMask};
use crate::error::{Error, Result};
use crate::quadrics::Rational;
use crate::tropical::{BoolAssignment, VariableId};

/// Entries of random matrices lie in −ENTRY_BOUND..=ENTRY_BOUND.
pub const ENTRY_BOUND: i64 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::BadShape(format!("{rows}x{cols} matrix with {} entries", data.len())));
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone()))
    }

    /// Determinant of the square submatrix on the given rows and columns (0-based).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Rational {
        assert_eq!(rows.len(), cols.len());
        let k = rows.len();
        let mut m: Vec<Vec<Rational>> =
            rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect()).collect();
        let mut det = Rational::one();
        for col in 0..k {
            let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..k {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &pivot;
                for c in col..k {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Pfaffian of the principal submatrix on `idx` (0-based), by expansion along the first row.
    pub fn pfaffian(&self, idx: &[usize]) -> Rational {
        if idx.is_empty() {
            return Rational::one();
        }
        if idx.len() % 2 == 1 {
            return Rational::zero();
        }
        let first = idx[0];
        let mut total = Rational::zero();
        for j in 1..idx.len() {
            let a = self.get(first, idx[j]);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(x, _)| x + 1 != j).map(|(_, &v)| v).collect();
            let term = a * self.pfaffian(&rest);
            if j % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
}

pub type Coordinates = BTreeMap<VariableId, Rational>;

/// The maximal minors of a k×n matrix, indexed by column subsets.
pub fn plucker_vector(a: &RationalMatrix) -> Result<Coordinates> {
    let (k, n) = (a.rows(), a.cols());
    if k > n {
        return Err(Error::BadShape(format!("{k}x{n} matrix has no maximal minors")));
    }
    let rows: Vec<usize> = (0..k).collect();
    let mut out = Coordinates::new();
    for s in GroundSet::new(n as u32)?.subsets_of_size(k as u32) {
        let cols: Vec<usize> = s.elements().map(|i| i as usize - 1).collect();
        out.insert(VariableId::Subset(s), a.minor(&rows, &cols));
    }
    Ok(out)
}

/// Sub-Pfaffians Pf(A[I]) for every even subset I, with Pf(∅) = 1.
pub fn spinor_vector(a: &RationalMatrix) -> Result<Coordinates> {
    if !a.is_skew() {
        return Err(Error::NotSkew);
    }
    let mut out = Coordinates::new();
    for s in GroundSet::new(a.rows() as u32)?.subsets_of_parity(Parity::Even) {
        let idx: Vec<usize> = s.elements().map(|i| i as usize - 1).collect();
        out.insert(VariableId::Subset(s), a.pfaffian(&idx));
    }
    Ok(out)
}

fn small(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> i64 {
    loop {
        let x = small(rng);
        if x != 0 {
            return x;
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(k: usize, n: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    let data: Vec<i64> = (0..k * n).map(|_| small(rng)).collect();
    RationalMatrix::from_i64(k, n, &data).expect("positive dimensions")
}

pub fn random_skew(n: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    let mut data = vec![0i64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let x = small(rng);
            data[i * n + j] = x;
            data[j * n + i] = -x;
        }
    }
    RationalMatrix::from_i64(n, n, &data).expect("positive dimensions")
}

/// A vector (x_{±i}) with Σ x_i x_{−i} = 0: all coordinates are drawn nonzero except
/// x_{−n}, which is solved for; draws giving x_{−n} = 0 are rejected.
pub fn cross_vector_d(n: u32, seed: u64) -> Result<Coordinates> {
    if n < 2 {
        return Err(Error::BadParams(format!("cross polytope rank {n}")));
    }
    let mut rng = rng_from_seed(seed);
    loop {
        let pos: Vec<i64> = (0..n).map(|_| small_nonzero(&mut rng)).collect();
        let neg: Vec<i64> = (0..n - 1).map(|_| small_nonzero(&mut rng)).collect();
        let partial: i64 = pos.iter().zip(&neg).map(|(a, b)| a * b).sum();
        if partial == 0 {
            continue;
        }
        let last = Rational::new(BigInt::from(-partial), BigInt::from(pos[n as usize - 1]));
        let mut out = Coordinates::new();
        for i in 0..n as usize {
            out.insert(VariableId::SignedAxis(i as i32 + 1), Rational::from_integer(BigInt::from(pos[i])));
        }
        for (i, &x) in neg.iter().enumerate() {
            out.insert(VariableId::SignedAxis(-(i as i32 + 1)), Rational::from_integer(BigInt::from(x)));
        }
        out.insert(VariableId::SignedAxis(-(n as i32)), last);
        return Ok(out);
    }
}

pub fn as_point(c: &Coordinates) -> HashMap<VariableId, Rational> {
    c.iter().map(|(k, v)| (*k, v.clone())).collect()
}

/// The variables with nonzero coordinate.
pub fn support(c: &Coordinates) -> BoolAssignment {
    BoolAssignment::new(c.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| *k))
}

/// The support as a set system, for vectors indexed by subsets of [n].
pub fn support_system(n: u32, c: &Coordinates) -> Result<SetSystem> {
    let members: Vec<SubsetMask> = c
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .filter_map(|(k, _)| k.subset())
        .collect();
    SetSystem::new(GroundSet::new(n)?, members)
}

pub fn coordinates_json(c: &Coordinates) -> Value {
    let entries: Vec<Value> = c
        .iter()
        .map(|(k, v)| json!({ "var": serde_json::to_value(k).expect("serializable"), "value": v.to_string() }))
        .collect();
    Value::Array(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{is_matroid, is_strong_delta};
    use crate::equations::{cross_d_equation, gen_type_a, gen_type_d};
    use crate::quadrics::{cross_d_quadric, embed_d_family, plucker_family};
    use crate::tropical::satisfies;

    fn r(x: i64) -> Rational {
        Rational::from_integer(BigInt::from(x))
    }

    #[test]
    fn small_cases() {
        let a = RationalMatrix::from_i64(2, 4, &[1, 0, 3, 5, 0, 1, 7, 2]).unwrap();
        let p = plucker_vector(&a).unwrap();
        let at = |s: &[u32]| p[&VariableId::Subset(SubsetMask::from_elements(s).unwrap())].clone();
        assert_eq!(at(&[1, 2]), r(1));
        assert_eq!(at(&[1, 3]), r(7));
        assert_eq!(at(&[2, 3]), r(-3));
        assert_eq!(at(&[3, 4]), r(6 - 35));
        let t = RationalMatrix::from_i64(2, 2, &[0, 5, -5, 0]).unwrap();
        let s = spinor_vector(&t).unwrap();
        assert_eq!(s[&VariableId::Subset(SubsetMask::EMPTY)], r(1));
        assert_eq!(s[&VariableId::Subset(SubsetMask::full(2))], r(5));
        assert!(matches!(spinor_vector(&a), Err(Error::NotSkew)));
        assert!(matches!(plucker_vector(&RationalMatrix::from_i64(3, 2, &[0; 6]).unwrap()), Err(Error::BadShape(_))));
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let mut rng = rng_from_seed(11);
        for n in [2usize, 4, 6] {
            let a = random_skew(n, &mut rng);
            let idx: Vec<usize> = (0..n).collect();
            let pf = a.pfaffian(&idx);
            assert_eq!(&pf * &pf, a.minor(&idx, &idx));
        }
    }

    #[test]
    fn plucker_vectors_vanish() {
        let mut rng = rng_from_seed(3);
        for (n, k) in [(4usize, 2usize), (5, 2), (5, 3), (6, 3)] {
            let quads = plucker_family(n as u32, k as u32).unwrap();
            let trop = gen_type_a(n as u32, k as u32).unwrap();
            for _ in 0..10 {
                let p = plucker_vector(&random_matrix(k, n, &mut rng)).unwrap();
                let pt = as_point(&p);
                for (_, q) in &quads {
                    assert!(q.eval(&pt).is_zero());
                }
                let m = support_system(n as u32, &p).unwrap();
                if !m.is_empty() {
                    assert!(is_matroid(&m, k as u32).unwrap());
                }
                let nu = support(&p);
                assert!(trop.quadrics().all(|f| satisfies(&nu, f)));
            }
        }
    }

    #[test]
    fn spinor_vectors_vanish() {
        let mut rng = rng_from_seed(5);
        for n in 4..=6usize {
            let (even, _) = embed_d_family(n as u32).unwrap();
            let trop = gen_type_d(n as u32).unwrap();
            for _ in 0..10 {
                let s = spinor_vector(&random_skew(n, &mut rng)).unwrap();
                let pt = as_point(&s);
                for (_, q) in &even {
                    assert!(q.eval(&pt).is_zero(), "n={n} {q:?}");
                }
                let m = support_system(n as u32, &s).unwrap();
                assert!(m.is_even());
                assert!(is_strong_delta(&m).unwrap());
                let nu = support(&s);
                assert!(trop.even.quadrics().all(|f| satisfies(&nu, f)));
            }
        }
    }

    #[test]
    fn cross_vectors_vanish() {
        for n in 2..=6 {
            for seed in 0..20 {
                let c = cross_vector_d(n, seed).unwrap();
                assert_eq!(c.len(), 2 * n as usize);
                assert!(cross_d_quadric(n).eval(&as_point(&c)).is_zero());
                assert!(satisfies(&support(&c), &cross_d_equation(n)));
            }
        }
        assert_eq!(cross_vector_d(3, 7).unwrap(), cross_vector_d(3, 7).unwrap());
    }
}
