//! Exact linear algebra over the Gaussian rationals.
//!
//! Vectors are dense `Vec<Scalar>` in a fixed orthonormal coordinate system;
//! operators between graded levels are [`SparseMatrix`]. All routines are
//! fraction-exact, so rank and membership decisions never need a tolerance.

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::scalar::{abs_sq, Rational, Scalar};

pub type Vector = Vec<Scalar>;

pub fn inner(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter()
        .zip(v)
        .fold(Scalar::zero(), |acc, (a, b)| acc + a.conj() * b)
}

pub fn norm_sq(v: &[Scalar]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, z| acc + abs_sq(z))
}

pub fn max_abs_sq(v: &[Scalar]) -> Rational {
    v.iter()
        .map(abs_sq)
        .fold(Rational::zero(), |acc, x| if x > acc { x } else { acc })
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sub(u: &[Scalar], v: &[Scalar]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn unit(dim: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// Reduced row echelon form. Returns the non-zero rows and their pivot columns.
pub fn rref(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let mut a: Vec<Vector> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Scalar::one() / &a[r][col];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * p;
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(vectors: &[Vector]) -> usize {
    rref(vectors).1.len()
}

/// A basis (echelon form) of the span of `vectors`.
pub fn span_basis(vectors: &[Vector]) -> Vec<Vector> {
    rref(vectors).0
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); ncols];
            x[f] = Scalar::one();
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Orthogonal complement of `span(basis)` inside `C^dim` for the standard inner product.
pub fn orthogonal_complement(basis: &[Vector], dim: usize) -> Vec<Vector> {
    let rows: Vec<Vector> = basis
        .iter()
        .map(|b| b.iter().map(|z| z.conj()).collect())
        .collect();
    nullspace(&rows, dim)
}

/// Solve `A x = b` for square invertible `A` (rows). `None` when singular.
pub fn solve(a: &[Vector], b: &[Scalar]) -> Option<Vector> {
    let n = a.len();
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(r.iter().map(|row| row[n].clone()).collect())
}

/// Orthogonal projection of `v` onto `span(basis)`; the basis must be linearly independent.
pub fn project(v: &[Scalar], basis: &[Vector]) -> Vector {
    let dim = v.len();
    if basis.is_empty() {
        return vec![Scalar::zero(); dim];
    }
    let gram: Vec<Vector> = basis
        .iter()
        .map(|bi| basis.iter().map(|bj| inner(bi, bj)).collect())
        .collect();
    let rhs: Vector = basis.iter().map(|bi| inner(bi, v)).collect();
    let coeffs = solve(&gram, &rhs).expect("projection basis must be independent");
    let mut out = vec![Scalar::zero(); dim];
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o = &*o + c * x;
        }
    }
    out
}

/// `‖v − P v‖²` for the orthogonal projection `P` onto `span(basis)`.
pub fn distance_sq(v: &[Scalar], basis: &[Vector]) -> Rational {
    norm_sq(&sub(v, &project(v, basis)))
}

pub fn same_span(a: &[Vector], b: &[Vector]) -> bool {
    let ra = rank(a);
    if ra != rank(b) {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(&both) == ra
}

/// Incremental echelon basis over sparse vectors; cheap when vectors are nearly monomial.
#[derive(Debug, Default, Clone)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `v`; returns whether it was independent of the rows seen so far.
    pub fn insert(&mut self, mut v: BTreeMap<usize, Scalar>) -> bool {
        v.retain(|_, z| !z.is_zero());
        loop {
            let Some((&lead, coeff)) = v.iter().next() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(row) => {
                    let f = coeff.clone();
                    for (&k, x) in row {
                        let e = v.entry(k).or_insert_with(Scalar::zero);
                        *e = &*e - &f * x;
                    }
                    v.retain(|_, z| !z.is_zero());
                }
                None => {
                    let inv = Scalar::one() / coeff;
                    for z in v.values_mut() {
                        *z = &*z * &inv;
                    }
                    self.rows.insert(lead, v);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Sparse matrix with exact entries; zero entries are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, z: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if z.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), z);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, z: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, cur + z);
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn adjoint(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(&(r, c), z)| ((c, r), z.conj()))
            .collect();
        Self { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(r, c), z) in &other.entries {
            by_row.entry(r).or_default().push((c, z));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.add_at(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(r, c), z) in &other.entries {
            out.add_at(r, c, z);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (&(r, c), z) in &self.entries {
            out.set(r, c, z * s);
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply");
        let mut out = vec![Scalar::zero(); self.rows];
        for (&(r, c), z) in &self.entries {
            out[r] = &out[r] + z * &v[c];
        }
        out
    }

    /// Largest squared modulus of an entry; zero iff the matrix is zero.
    pub fn max_abs_sq(&self) -> Rational {
        self.entries
            .values()
            .map(abs_sq)
            .fold(Rational::zero(), |acc, x| if x > acc { x } else { acc })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{imag_unit, rat, real, sc};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| sc(x)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 0])]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows = [v(&[1, 1, 0]), v(&[0, 1, 1])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for x in &ns {
            for r in &rows {
                let s: Scalar = r.iter().zip(x).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn complex_complement_is_orthogonal() {
        let b = vec![vec![sc(1), imag_unit(), sc(0)]];
        let comp = orthogonal_complement(&b, 3);
        assert_eq!(comp.len(), 2);
        for c in &comp {
            assert!(inner(&b[0], c).is_zero());
        }
    }

    #[test]
    fn projection_onto_line() {
        let basis = vec![v(&[1, 1])];
        let p = project(&v(&[1, 0]), &basis);
        assert_eq!(p, vec![real(rat(1, 2)), real(rat(1, 2))]);
        assert_eq!(distance_sq(&v(&[1, 0]), &basis), rat(1, 2));
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let vecs = [v(&[1, 2, 0, 0]), v(&[0, 0, 1, 1]), v(&[1, 2, 1, 1]), v(&[0, 1, 0, 0])];
        let mut e = SparseEchelon::new();
        for x in &vecs {
            e.insert(x.iter().cloned().enumerate().collect());
        }
        assert_eq!(e.rank(), rank(&vecs));
    }

    #[test]
    fn sparse_product_and_adjoint() {
        let mut a = SparseMatrix::zeros(2, 2);
        a.set(0, 1, imag_unit());
        let p = a.adjoint().mul(&a);
        assert_eq!(p.get(1, 1), sc(1));
        assert_eq!(p.nnz(), 1);
        assert!(a.sub(&a).is_zero());
    }
}
