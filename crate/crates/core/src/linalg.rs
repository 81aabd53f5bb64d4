//! Dense linear algebra over prime fields F_p.
//!
//! Residues are stored as `u64` in `[0, p)`. The modulus is limited to
//! primes below 2³², so a product of two residues fits in a `u64`.

use std::fmt;

use crate::{Error, Result};

pub const MAX_MODULUS: u64 = 1 << 32;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d <= p / d {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_MODULUS {
        return Err(Error::ModulusTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    reduce(t0, p)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u64,
    entries: Vec<u64>,
}

impl FpVector {
    pub fn zeros(p: u64, len: usize) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p, entries: vec![0; len] })
    }

    pub fn from_i64(p: u64, values: &[i64]) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p, entries: values.iter().map(|&x| reduce(x, p)).collect() })
    }

    /// Basis vector `e_i` of length `len`.
    pub fn unit(p: u64, len: usize, i: usize) -> Result<Self> {
        let mut v = Self::zeros(p, len)?;
        v.entries[i] = 1;
        Ok(v)
    }

    pub(crate) fn from_residues(p: u64, entries: Vec<u64>) -> Self {
        debug_assert!(entries.iter().all(|&x| x < p));
        Self { p, entries }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u64 {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().fold(0, |s, &x| (s + x) % self.p)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let p = self.p;
        Ok(Self::from_residues(
            p,
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| (a + b) % p).collect(),
        ))
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        Self::from_residues(self.p, self.entries.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::from_residues(self.p, self.entries.iter().map(|&a| neg_mod(a, self.p)).collect())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p, rows, cols, data: vec![0; rows * cols] })
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        check_prime(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| reduce(x, p)));
        }
        Ok(Self { p, rows: rows.len(), cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u64, len: usize, columns: &[FpVector]) -> Result<Self> {
        let mut m = Self::zeros(p, len, columns.len())?;
        for (j, c) in columns.iter().enumerate() {
            if c.modulus() != p {
                return Err(Error::ModulusMismatch(p, c.modulus()));
            }
            if c.len() != len {
                return Err(Error::DimensionMismatch { expected: len, found: c.len() });
            }
            for i in 0..len {
                m.data[i * m.cols + j] = c.entries[i];
            }
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.data[r * self.cols + c] = value % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> FpVector {
        FpVector::from_residues(self.p, (0..self.rows).map(|r| self.get(r, c)).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self { p: self.p, rows: self.cols, cols: self.rows, data: vec![0; self.data.len()] };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &FpVector) -> Result<FpVector> {
        if v.modulus() != self.p {
            return Err(Error::ModulusMismatch(self.p, v.modulus()));
        }
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let p = self.p;
        let out = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(&v.entries)
                    .fold(0, |acc, (&a, &b)| (acc + mul_mod(a, b, p)) % p)
            })
            .collect();
        Ok(FpVector::from_residues(p, out))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if other.p != self.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if other.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let p = self.p;
        let mut out = Self { p, rows: self.rows, cols: other.cols, data: vec![0; self.rows * other.cols] };
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = (out.data[idx] + mul_mod(a, other.get(k, c), p)) % p;
                }
            }
        }
        Ok(out)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if other.p != self.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if other.cols != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { p: self.p, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Gauss-Jordan elimination. Columns are scanned left to right and the
    /// topmost remaining nonzero entry becomes the pivot.
    pub fn rref(&self) -> Echelon {
        let p = self.p;
        let cols = self.cols;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.data[r * cols + col] != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..cols {
                    m.data.swap(pr * cols + c, row * cols + c);
                }
            }
            let inv = inv_mod(m.data[row * cols + col], p);
            for c in col..cols {
                let idx = row * cols + c;
                m.data[idx] = mul_mod(m.data[idx], inv, p);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.data[r * cols + col];
                if f == 0 {
                    continue;
                }
                let f = p - f;
                for c in col..cols {
                    let v = m.data[row * cols + c];
                    if v != 0 {
                        let idx = r * cols + c;
                        m.data[idx] = (m.data[idx] + mul_mod(f, v, p)) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        let Echelon { matrix: r, pivots } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = neg_mod(r.get(row, f), p);
                }
                FpVector::from_residues(p, v)
            })
            .collect()
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn rank(m: &FpMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &FpMatrix) -> Vec<FpVector> {
    m.kernel_basis()
}

/// Coordinates of `v` in terms of `span`, or [`Error::NotInSpan`].
/// Free coordinates are set to zero when `span` is dependent.
pub fn solve_membership(v: &FpVector, span: &[FpVector]) -> Result<FpVector> {
    let p = v.modulus();
    let mut cols = span.to_vec();
    cols.push(v.clone());
    let aug = FpMatrix::from_columns(p, v.len(), &cols)?;
    let Echelon { matrix: r, pivots } = aug.rref();
    let last = span.len();
    if pivots.last() == Some(&last) {
        return Err(Error::NotInSpan);
    }
    let mut x = vec![0; span.len()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, last);
    }
    Ok(FpVector::from_residues(p, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(4_294_967_291));
        assert_eq!(FpMatrix::zeros(4, 1, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FpMatrix::zeros(1, 1, 1).unwrap_err(), Error::NotPrime(1));
        assert_eq!(
            FpMatrix::zeros(MAX_MODULUS + 15, 1, 1).unwrap_err(),
            Error::ModulusTooLarge(MAX_MODULUS + 15)
        );
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 13, 65_521] {
            for a in 1..p.min(200) {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::identity(2, 3).unwrap().rank(), 3);
        assert_eq!(FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap().rank(), 1);
        assert_eq!(FpMatrix::from_rows(3, &[vec![2, 1], vec![1, 2]]).unwrap().rank(), 1);
        assert_eq!(FpMatrix::from_rows(5, &[vec![2, 1], vec![1, 2]]).unwrap().rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let k = FpMatrix::from_rows(3, &[vec![1, 1, 1]]).unwrap().kernel_basis();
        assert_eq!(k.len(), 2);
        assert!(FpMatrix::identity(7, 4).unwrap().kernel_basis().is_empty());
        assert_eq!(FpMatrix::zeros(5, 2, 4).unwrap().kernel_basis().len(), 4);
    }

    #[test]
    fn membership_examples() {
        let e1 = FpVector::from_i64(2, &[1, 0]).unwrap();
        let e2 = FpVector::from_i64(2, &[0, 1]).unwrap();
        let e12 = FpVector::from_i64(2, &[1, 1]).unwrap();
        let x = solve_membership(&e1, &[e12, e2.clone()]).unwrap();
        assert_eq!(x.entries(), &[1, 1]);

        let zero = FpVector::zeros(2, 2).unwrap();
        assert!(solve_membership(&zero, &[e1.clone(), e2.clone()]).unwrap().is_zero());

        let e1 = FpVector::from_i64(3, &[1, 0]).unwrap();
        let e2 = FpVector::from_i64(3, &[0, 1]).unwrap();
        assert_eq!(solve_membership(&e1, std::slice::from_ref(&e2)), Err(Error::NotInSpan));

        let short = FpVector::from_i64(3, &[1]).unwrap();
        assert!(matches!(solve_membership(&short, std::slice::from_ref(&e2)), Err(Error::DimensionMismatch { .. })));
        let other = FpVector::from_i64(5, &[1, 0]).unwrap();
        assert_eq!(solve_membership(&other, &[e2]), Err(Error::ModulusMismatch(5, 3)));
    }

    #[test]
    fn rref_is_deterministic_and_leftmost() {
        let m = FpMatrix::from_rows(5, &[vec![0, 2, 4], vec![3, 1, 0], vec![3, 3, 4]]).unwrap();
        let a = m.rref();
        assert_eq!(a, m.rref());
        assert_eq!(a.pivots, vec![0, 1]);
        assert_eq!(a.matrix.row(0)[0], 1);
    }

    fn matrix_strategy() -> impl Strategy<Value = FpMatrix> {
        (prop::sample::select(vec![2u64, 3, 5, 7, 11, 65_521]), 0usize..7, 0usize..7)
            .prop_flat_map(|(p, r, c)| {
                prop::collection::vec(0..p, r * c).prop_map(move |data| {
                    // low-rank structure shows up more often with many zeros
                    let data = data.into_iter().map(|x| if x % 3 == 0 { 0 } else { x }).collect();
                    FpMatrix { p, rows: r, cols: c, data }
                })
            })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in matrix_strategy()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
        }

        #[test]
        fn membership_recovers_combination(m in matrix_strategy(), seed in any::<u64>()) {
            let p = m.modulus();
            let span: Vec<FpVector> = (0..m.cols()).map(|c| m.column(c)).collect();
            let coeffs = FpVector::from_residues(p, (0..m.cols() as u64).map(|i| (seed >> (i % 60)) % p).collect());
            let v = m.mul_vec(&coeffs).unwrap();
            let x = solve_membership(&v, &span).unwrap();
            prop_assert_eq!(m.mul_vec(&x).unwrap(), v);
        }
    }
}
