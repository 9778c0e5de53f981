//! Dense exact linear algebra: reduced row echelon form, nullspaces and
//! linear solves over ℚ and GF(p), plus an incremental sparse echelon basis
//! used by the brute-force oracle.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Coefficient, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Coefficient>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Coefficient>>) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(FieldError::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { field, rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self, FieldError> {
        Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coefficient {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coefficient) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Coefficient] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Coefficient]) -> Result<Vec<Coefficient>, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        rref(self).pivots.len()
    }
}

/// Nonzero rows of the reduced row echelon form and their pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<Coefficient>>,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Echelon {
    let mut e = rref_limited(m, m.cols);
    e.rows.truncate(e.pivots.len());
    e
}

/// RREF where pivots are only taken in the first `limit` columns. All rows are
/// kept; rows past the rank vanish on the first `limit` columns.
fn rref_limited(m: &Matrix, limit: usize) -> Echelon {
    match m.field {
        FieldSpec::Prime(p) => rref_modular(m, p, limit),
        FieldSpec::Rationals => rref_rational(m, limit),
    }
}

fn residue(c: &Coefficient) -> u64 {
    match c {
        Coefficient::Modular { value, .. } => *value,
        Coefficient::Rational(_) => panic!("rational entry in a modular matrix"),
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rref_modular(m: &Matrix, p: u64, limit: usize) -> Echelon {
    let mut a: Vec<Vec<u64>> = (0..m.rows).map(|r| m.row(r).iter().map(residue).collect()).collect();
    let mut pivots = Vec::new();
    let mut cur = 0;
    for c in 0..limit {
        if cur == a.len() {
            break;
        }
        let Some(pr) = (cur..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(cur, pr);
        let inv = inv_mod(a[cur][c], p);
        for x in a[cur].iter_mut().skip(c) {
            *x = *x * inv % p;
        }
        let pivot_row = a[cur].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == cur || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if *y != 0 {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        pivots.push(c);
        cur += 1;
    }
    let rows =
        a.into_iter().map(|r| r.into_iter().map(|v| Coefficient::Modular { value: v, modulus: p }).collect()).collect();
    Echelon { rows, pivots }
}

fn integer_row(row: &[Coefficient]) -> Vec<BigInt> {
    let rats: Vec<&BigRational> =
        row.iter().map(|c| c.as_rational().expect("modular entry in a rational matrix")).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Fraction-free Gauss-Jordan on integer rows; divides by the pivot at the end.
fn rref_rational(m: &Matrix, limit: usize) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|r| integer_row(m.row(r))).collect();
    let mut pivots = Vec::new();
    let mut cur = 0;
    for c in 0..limit {
        if cur == a.len() {
            break;
        }
        let Some(pr) = (cur..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(cur, pr);
        remove_content(&mut a[cur]);
        let pivot_row = a[cur].clone();
        let piv = &pivot_row[c];
        for (r, row) in a.iter_mut().enumerate() {
            if r == cur || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * piv - &factor * y;
            }
            remove_content(row);
        }
        pivots.push(c);
        cur += 1;
    }
    let rows = a
        .into_iter()
        .enumerate()
        .map(|(r, row)| {
            let piv = pivots.get(r).map_or_else(BigInt::one, |&c| row[c].clone());
            row.into_iter().map(|x| Coefficient::Rational(BigRational::new(x, piv.clone()))).collect()
        })
        .collect();
    Echelon { rows, pivots }
}

/// Kernel basis, one vector per free column in increasing column order.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Coefficient>> {
    let ech = rref(m);
    let field = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
                v[pc] = -&row[free];
            }
            v
        })
        .collect()
}

/// One solution of `M x = b` with free variables zeroed, or `None` when inconsistent.
pub fn solve(m: &Matrix, b: &[Coefficient]) -> Result<Option<Vec<Coefficient>>, FieldError> {
    Ok(solve_multi(m, std::slice::from_ref(&b.to_vec()))?.pop().flatten())
}

/// Solves `M x = b` for several right-hand sides with one elimination.
pub fn solve_multi(m: &Matrix, rhs: &[Vec<Coefficient>]) -> Result<Vec<Option<Vec<Coefficient>>>, FieldError> {
    if let Some(bad) = rhs.iter().find(|b| b.len() != m.rows) {
        return Err(FieldError::DimensionMismatch(format!(
            "matrix has {} rows, right-hand side has {} entries",
            m.rows,
            bad.len()
        )));
    }
    let n = m.cols;
    let width = n + rhs.len();
    let mut aug = Matrix::zeros(m.field, m.rows, width);
    for r in 0..m.rows {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        for (k, b) in rhs.iter().enumerate() {
            aug.set(r, n + k, b[r].clone());
        }
    }
    let ech = rref_limited(&aug, n);
    let rank = ech.pivots.len();
    Ok((0..rhs.len())
        .map(|k| {
            if ech.rows[rank..].iter().any(|row| !row[n + k].is_zero()) {
                return None;
            }
            let mut x = vec![m.field.zero(); n];
            for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
                x[pc] = row[n + k].clone();
            }
            Some(x)
        })
        .collect())
}

/// Incrementally built sparse row echelon basis (pivot = first nonzero column,
/// normalized to 1). Used for rank and span-membership queries.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    field: FieldSpec,
    rows: HashMap<usize, Vec<(usize, Coefficient)>>,
    entries: usize,
}

pub type SparseVec = BTreeMap<usize, Coefficient>;

impl SparseEchelon {
    pub fn new(field: FieldSpec) -> Self {
        SparseEchelon { field, rows: HashMap::new(), entries: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of stored nonzero entries.
    pub fn entries(&self) -> usize {
        self.entries
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let next = v.range(cursor..).find(|(c, _)| self.rows.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((c, factor)) = next else { return v };
            for (col, y) in &self.rows[&c] {
                let e = v.entry(*col).or_insert_with(|| self.field.zero());
                *e = &*e - &(&factor * y);
                if e.is_zero() {
                    v.remove(col);
                }
            }
            cursor = c + 1;
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns false when it was already dependent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&c, lead)) = r.iter().next() else { return false };
        let inv = lead.inv().expect("nonzero leading entry");
        let row: Vec<(usize, Coefficient)> = r.iter().map(|(k, x)| (*k, x * &inv)).collect();
        self.entries += row.len();
        self.rows.insert(c, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const GF: FieldSpec = FieldSpec::Prime(32003);
    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(nullspace(&Matrix::identity(Q, 2)).is_empty());
    }

    #[test]
    fn single_row_kernel() {
        let m = Matrix::from_i64(Q, &[&[1, -1]]).unwrap();
        assert_eq!(nullspace(&m), vec![vec![Q.one(), Q.one()]]);
    }

    #[test]
    fn random_gf_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rows: Vec<Vec<Coefficient>> = (0..6).map(|_| (0..9).map(|_| GF.random(&mut rng)).collect()).collect();
        let m = Matrix::from_rows(GF, rows).unwrap();
        let ker = nullspace(&m);
        assert_eq!(ker.len(), 9 - m.rank());
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().iter().all(Coefficient::is_zero));
        }
    }

    #[test]
    fn solve_identity() {
        let b: Vec<Coefficient> = [3, -4, 5].iter().map(|&x| Q.from_i64(x)).collect();
        assert_eq!(solve(&Matrix::identity(Q, 3), &b).unwrap(), Some(b));
    }

    #[test]
    fn solve_inconsistent() {
        let b = vec![Q.one(), Q.zero()];
        assert_eq!(solve(&Matrix::zeros(Q, 2, 2), &b).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let err = solve(&Matrix::identity(Q, 2), &[Q.one()]).unwrap_err();
        assert!(matches!(err, FieldError::DimensionMismatch(_)));
    }

    #[test]
    fn random_rational_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (r, c) = (rng.random_range(1..6), rng.random_range(1..6));
            let rows: Vec<Vec<Coefficient>> = (0..r).map(|_| (0..c).map(|_| Q.random(&mut rng)).collect()).collect();
            let m = Matrix::from_rows(Q, rows).unwrap();
            let x0: Vec<Coefficient> = (0..c).map(|_| Q.random(&mut rng)).collect();
            let b = m.mul_vec(&x0).unwrap();
            let x = solve(&m, &b).unwrap().expect("consistent by construction");
            assert_eq!(m.mul_vec(&x).unwrap(), b);
        }
    }

    #[test]
    fn rational_rref_is_reduced() {
        let m = Matrix::from_i64(Q, &[&[2, 4, 6], &[1, 3, 7], &[3, 7, 13]]).unwrap();
        let e = rref(&m);
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.rows[0], vec![Q.one(), Q.zero(), Q.from_i64(-5)]);
        assert_eq!(e.rows[1], vec![Q.zero(), Q.one(), Q.from_i64(4)]);
    }

    #[test]
    fn inconsistent_means_rank_jump() {
        let m = Matrix::from_i64(Q, &[&[1, 1], &[2, 2]]).unwrap();
        let b = vec![Q.one(), Q.one()];
        assert_eq!(solve(&m, &b).unwrap(), None);
        let aug = Matrix::from_i64(Q, &[&[1, 1, 1], &[2, 2, 1]]).unwrap();
        assert!(aug.rank() > m.rank());
    }

    #[test]
    fn sparse_echelon_membership() {
        let mut se = SparseEchelon::new(Q);
        let v = |xs: &[(usize, i64)]| -> SparseVec { xs.iter().map(|&(c, x)| (c, Q.from_i64(x))).collect() };
        assert!(se.insert(v(&[(0, 1), (2, 1)])));
        assert!(se.insert(v(&[(1, 2), (2, -1)])));
        assert!(!se.insert(v(&[(0, 2), (1, 2), (2, 1)])));
        assert!(se.contains(v(&[(0, 1), (1, 4), (2, -1)])));
        assert!(!se.contains(v(&[(2, 1)])));
        assert_eq!(se.rank(), 2);
    }
}
