//! Orlik-Solomon algebra of an affine line arrangement over F_p, degrees
//! 0, 1 and 2.
//!
//! Degree 2 uses the Brieskorn basis: for every finite intersection point
//! `X` with incident lines `i₁ < i₂ < … < i_k`, the symbols
//! `e_{i₁} ∧ e_{i_t}` for `t ≥ 2`. A product `e_i ∧ e_j` of two lines
//! meeting at `X` with `i₁ < i < j` reduces through the concurrency
//! relation to `e_{i₁}∧e_j − e_{i₁}∧e_i`; parallel pairs vanish.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arrangement::AffineArrangement;
use crate::linalg::{check_prime, mul_mod, neg_mod, Echelon, FpMatrix, FpVector};
use crate::{Error, Result};

/// Anything that can multiply two degree-1 generators into a fixed
/// degree-2 coordinate space.
pub trait WedgeTable {
    fn modulus(&self) -> u64;

    /// Number of degree-1 generators.
    fn n(&self) -> usize;

    fn dim2(&self) -> usize;

    /// Add `c · (e_i ∧ e_j)` into `out`. Any order of `i`, `j`; `i == j`
    /// adds nothing.
    fn add_pair(&self, i: usize, j: usize, c: u64, out: &mut [u64]);
}

/// Degree-1 element `Σ a_i e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg1Element(FpVector);

impl Deg1Element {
    pub fn new(coeffs: FpVector) -> Self {
        Self(coeffs)
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Result<Self> {
        FpVector::from_i64(p, coeffs).map(Self)
    }

    /// `e_1 + … + e_n`.
    pub fn all_ones(p: u64, n: usize) -> Result<Self> {
        Self::from_i64(p, &vec![1; n])
    }

    pub fn generator(p: u64, n: usize, i: usize) -> Result<Self> {
        FpVector::unit(p, n, i).map(Self)
    }

    pub fn coeffs(&self) -> &FpVector {
        &self.0
    }

    pub fn into_coeffs(self) -> FpVector {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg2Element(FpVector);

impl Deg2Element {
    pub fn new(coeffs: FpVector) -> Self {
        Self(coeffs)
    }

    pub fn coeffs(&self) -> &FpVector {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Basis symbol `e_anchor ∧ e_other` attached to a finite point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Deg2Symbol {
    pub point: usize,
    pub anchor: usize,
    pub other: usize,
}

impl fmt::Display for Deg2Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}^e{}@X{}", self.anchor + 1, self.other + 1, self.point)
    }
}

/// A generator of the relation ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `e_i ∧ e_j` for parallel lines.
    Parallel(usize, usize),
    /// `e_i∧e_j − e_i∧e_k + e_j∧e_k` for concurrent lines `i < j < k`.
    Concurrent(usize, usize, usize),
}

#[derive(Clone, Debug)]
pub struct OSAlgebra {
    p: u64,
    n: usize,
    points: Vec<Vec<usize>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    basis: Vec<Deg2Symbol>,
    offsets: Vec<usize>,
    /// Finite point through each non-parallel pair, `n × n`.
    pair_point: Vec<Option<usize>>,
}

pub fn build(aff: &AffineArrangement, p: u64) -> Result<OSAlgebra> {
    check_prime(p)?;
    let n = aff.n();
    let points: Vec<Vec<usize>> = aff.finite_points.iter().map(|x| x.incident.clone()).collect();
    let mut basis = Vec::new();
    let mut offsets = Vec::with_capacity(points.len());
    let mut pair_point = vec![None; n * n];
    for (x, inc) in points.iter().enumerate() {
        offsets.push(basis.len());
        basis.extend(inc[1..].iter().map(|&other| Deg2Symbol { point: x, anchor: inc[0], other }));
        for (a, &i) in inc.iter().enumerate() {
            for &j in &inc[a + 1..] {
                pair_point[i * n + j] = Some(x);
                pair_point[j * n + i] = Some(x);
            }
        }
    }
    let class_of = (0..n).map(|i| aff.class_of(i)).collect();
    Ok(OSAlgebra { p, n, points, classes: aff.classes.clone(), class_of, basis, offsets, pair_point })
}

impl OSAlgebra {
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim0(&self) -> usize {
        1
    }

    pub fn dim1(&self) -> usize {
        self.n
    }

    pub fn dim2(&self) -> usize {
        self.basis.len()
    }

    pub fn deg2_basis(&self) -> &[Deg2Symbol] {
        &self.basis
    }

    /// Incident affine lines of each finite point.
    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn nu(&self) -> Deg1Element {
        Deg1Element(FpVector::from_residues(self.p, vec![1; self.n]))
    }

    pub fn zero2(&self) -> Deg2Element {
        Deg2Element(FpVector::from_residues(self.p, vec![0; self.dim2()]))
    }

    fn basis_index(&self, x: usize, line: usize) -> usize {
        let pos = self.points[x].binary_search(&line).expect("line through point");
        self.offsets[x] + pos - 1
    }

    /// Signed Brieskorn terms of `e_i ∧ e_j` for `i < j`.
    fn pair_terms(&self, i: usize, j: usize) -> ([(usize, bool); 2], usize) {
        debug_assert!(i < j);
        let Some(x) = self.pair_point[i * self.n + j] else {
            return ([(0, true); 2], 0);
        };
        let anchor = self.points[x][0];
        let bj = self.basis_index(x, j);
        if i == anchor {
            ([(bj, true), (0, true)], 1)
        } else {
            ([(bj, true), (self.basis_index(x, i), false)], 2)
        }
    }

    /// Reduction of `e_i ∧ e_j` in the Brieskorn basis.
    pub fn pair(&self, i: usize, j: usize) -> Deg2Element {
        let mut out = vec![0; self.dim2()];
        if i != j {
            self.add_pair(i, j, 1, &mut out);
        }
        Deg2Element(FpVector::from_residues(self.p, out))
    }

    pub fn relation_generators(&self) -> Vec<Relation> {
        let mut rels = Vec::new();
        for class in &self.classes {
            for (a, &i) in class.iter().enumerate() {
                rels.extend(class[a + 1..].iter().map(|&j| Relation::Parallel(i, j)));
            }
        }
        for inc in &self.points {
            for a in 0..inc.len() {
                for b in a + 1..inc.len() {
                    for c in b + 1..inc.len() {
                        rels.push(Relation::Concurrent(inc[a], inc[b], inc[c]));
                    }
                }
            }
        }
        rels
    }

    fn check1(&self, x: &Deg1Element) -> Result<()> {
        if x.0.modulus() != self.p {
            return Err(Error::ModulusMismatch(self.p, x.0.modulus()));
        }
        if x.0.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.0.len() });
        }
        Ok(())
    }
}

impl WedgeTable for OSAlgebra {
    fn modulus(&self) -> u64 {
        self.p
    }

    fn n(&self) -> usize {
        self.n
    }

    fn dim2(&self) -> usize {
        self.basis.len()
    }

    fn add_pair(&self, i: usize, j: usize, c: u64, out: &mut [u64]) {
        if i == j {
            return;
        }
        let p = self.p;
        let (lo, hi, c) = if i < j { (i, j, c) } else { (j, i, neg_mod(c, p)) };
        let (terms, len) = self.pair_terms(lo, hi);
        for &(idx, positive) in &terms[..len] {
            let v = if positive { c } else { neg_mod(c, p) };
            out[idx] = (out[idx] + v) % p;
        }
    }
}

/// `x ∧ y` for degree-1 elements, through any wedge table.
pub fn wedge_with<T: WedgeTable + ?Sized>(t: &T, x: &FpVector, y: &FpVector) -> Result<FpVector> {
    let p = t.modulus();
    for v in [x, y] {
        if v.modulus() != p {
            return Err(Error::ModulusMismatch(p, v.modulus()));
        }
        if v.len() != t.n() {
            return Err(Error::DimensionMismatch { expected: t.n(), found: v.len() });
        }
    }
    let (xs, ys) = (x.entries(), y.entries());
    let mut out = vec![0; t.dim2()];
    for i in 0..t.n() {
        for j in i + 1..t.n() {
            // x_i y_j − x_j y_i
            let c = (mul_mod(xs[i], ys[j], p) + neg_mod(mul_mod(xs[j], ys[i], p), p)) % p;
            if c != 0 {
                t.add_pair(i, j, c, &mut out);
            }
        }
    }
    Ok(FpVector::from_residues(p, out))
}

pub fn wedge11(alg: &OSAlgebra, x: &Deg1Element, y: &Deg1Element) -> Result<Deg2Element> {
    alg.check1(x)?;
    alg.check1(y)?;
    wedge_with(alg, &x.0, &y.0).map(Deg2Element)
}

/// Whether `x` lies in the sum-zero subspace `A¹₀`.
pub fn sub_zero_membership(alg: &OSAlgebra, x: &Deg1Element) -> bool {
    x.0.len() == alg.n && x.0.sum() == 0
}

/// Degree 2 computed naively as the free module on all pairs `i < j`
/// modulo the span of the relation vectors, with parallelism and
/// concurrency read directly off the line coordinates.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    p: u64,
    n: usize,
    dim2: usize,
    /// Image of each pair `i < j` in the quotient, in pair order.
    images: Vec<FpVector>,
}

pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn det3(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

pub fn quotient_oracle_build(aff: &AffineArrangement, p: u64) -> Result<QuotientAlgebra> {
    check_prime(p)?;
    let n = aff.n();
    let lines = aff.source.lines();
    let inf = lines[aff.infinity_index].coeffs();
    let coeff = |i: usize| lines[aff.affine_indices[i]].coeffs();
    let parallel = |i: usize, j: usize| det3(coeff(i), coeff(j), inf).is_zero();

    let pairs = n * n.saturating_sub(1) / 2;
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if parallel(i, j) {
                let mut r = vec![0; pairs];
                r[pair_index(n, i, j)] = 1;
                relations.push(r);
                continue;
            }
            for k in j + 1..n {
                if det3(coeff(i), coeff(j), coeff(k)).is_zero() {
                    let mut r = vec![0; pairs];
                    r[pair_index(n, i, j)] = 1;
                    r[pair_index(n, i, k)] = -1;
                    r[pair_index(n, j, k)] = 1;
                    relations.push(r);
                }
            }
        }
    }

    let Echelon { matrix: rref, pivots } = if relations.is_empty() {
        FpMatrix::zeros(p, 0, pairs)?.rref()
    } else {
        FpMatrix::from_rows(p, &relations)?.rref()
    };
    let mut quotient_coord = vec![None; pairs];
    let mut next = 0;
    for (c, slot) in quotient_coord.iter_mut().enumerate() {
        if !pivots.contains(&c) {
            *slot = Some(next);
            next += 1;
        }
    }
    let dim2 = next;
    let mut images = Vec::with_capacity(pairs);
    for c in 0..pairs {
        let mut v = vec![0; dim2];
        match quotient_coord[c] {
            Some(q) => v[q] = 1,
            None => {
                // pivot column: e_c ≡ −Σ_{free f} rref[row][f] e_f
                let row = pivots.iter().position(|&pc| pc == c).expect("pivot row");
                for (f, coord) in quotient_coord.iter().enumerate() {
                    if let Some(q) = *coord {
                        v[q] = neg_mod(rref.get(row, f), p);
                    }
                }
            }
        }
        images.push(FpVector::from_residues(p, v));
    }
    Ok(QuotientAlgebra { p, n, dim2, images })
}

impl QuotientAlgebra {
    pub fn dim2(&self) -> usize {
        self.dim2
    }

    /// Image of `e_i ∧ e_j` (`i < j`) in the quotient coordinates.
    pub fn pair(&self, i: usize, j: usize) -> &FpVector {
        &self.images[pair_index(self.n, i, j)]
    }
}

impl WedgeTable for QuotientAlgebra {
    fn modulus(&self) -> u64 {
        self.p
    }

    fn n(&self) -> usize {
        self.n
    }

    fn dim2(&self) -> usize {
        self.dim2
    }

    fn add_pair(&self, i: usize, j: usize, c: u64, out: &mut [u64]) {
        if i == j {
            return;
        }
        let p = self.p;
        let (lo, hi, c) = if i < j { (i, j, c) } else { (j, i, neg_mod(c, p)) };
        for (o, &v) in out.iter_mut().zip(self.pair(lo, hi).entries()) {
            *o = (*o + mul_mod(v, c, p)) % p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aomoto::{central_fixture, parallel_fixture};
    use crate::arrangement::{decone, ProjArrangement};

    fn deconed_a3() -> AffineArrangement {
        let a3 = ProjArrangement::from_triples(&[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, -1, 0],
            [1, 0, -1],
            [0, 1, -1],
        ])
        .unwrap();
        decone(&a3, 2).unwrap()
    }

    #[test]
    fn a3_dimensions() {
        let aff = deconed_a3();
        for p in [2, 3, 5, 7] {
            let alg = build(&aff, p).unwrap();
            assert_eq!((alg.dim0(), alg.dim1(), alg.dim2()), (1, 5, 6));
            assert_eq!(quotient_oracle_build(&aff, p).unwrap().dim2(), 6);
        }
    }

    #[test]
    fn fixture_dimensions() {
        for s in 2..8 {
            let alg = build(&central_fixture(s).unwrap(), 5).unwrap();
            assert_eq!(alg.dim2(), s - 1);
        }
        for r in 1..8 {
            let alg = build(&parallel_fixture(r).unwrap(), 5).unwrap();
            assert_eq!(alg.dim2(), r);
            // basis e_i ∧ e_{r+1}
            for (i, sym) in alg.deg2_basis().iter().enumerate() {
                assert_eq!((sym.anchor, sym.other), (i, r));
            }
        }
    }

    #[test]
    fn two_line_oracle_cases() {
        let parallel = decone(
            &ProjArrangement::from_triples(&[[0, 0, 1], [1, 0, -1], [1, 0, -2]]).unwrap(),
            0,
        )
        .unwrap();
        assert_eq!(quotient_oracle_build(&parallel, 3).unwrap().dim2(), 0);
        assert_eq!(build(&parallel, 3).unwrap().dim2(), 0);
        let crossing =
            decone(&ProjArrangement::from_triples(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]]).unwrap(), 0)
                .unwrap();
        assert_eq!(quotient_oracle_build(&crossing, 3).unwrap().dim2(), 1);
        assert_eq!(build(&crossing, 3).unwrap().dim2(), 1);
    }

    #[test]
    fn relations_hold_exhaustively() {
        let aff = deconed_a3();
        let alg = build(&aff, 3).unwrap();
        for rel in alg.relation_generators() {
            match rel {
                Relation::Parallel(i, j) => assert!(alg.pair(i, j).is_zero()),
                Relation::Concurrent(i, j, k) => {
                    let v = alg.pair(i, j).0.add(&alg.pair(i, k).0.neg()).unwrap();
                    assert!(v.add(&alg.pair(j, k).0).unwrap().is_zero());
                }
            }
        }
        // x ∥ x−z and y ∥ y−z give two parallel relations; two triple points one each
        assert_eq!(alg.relation_generators().len(), 4);
    }

    #[test]
    fn wedge_examples() {
        let p = 7;
        let c4 = build(&central_fixture(4).unwrap(), p).unwrap();
        let nu = c4.nu();
        assert!(wedge11(&c4, &nu, &nu).unwrap().is_zero());

        // ξ ∧ (e_i − e_{i+1}) = −(Σ a) · e_i ∧ e_{i+1}
        let xi = Deg1Element::from_i64(p, &[1, 2, 5, 3]).unwrap();
        for i in 0..3 {
            let mut d = vec![0; 4];
            d[i] = 1;
            d[i + 1] = -1;
            let lhs = wedge11(&c4, &xi, &Deg1Element::from_i64(p, &d).unwrap()).unwrap();
            let rhs = c4.pair(i, i + 1).0.scale(neg_mod(11 % p, p));
            assert_eq!(lhs.0, rhs);
        }

        // ξ ∧ η = −a_{r+1} Σ c_i (e_i ∧ e_{r+1}) in P_r
        let r = 3;
        let pr = build(&parallel_fixture(r).unwrap(), p).unwrap();
        let xi = Deg1Element::from_i64(p, &[4, 1, 6, 5]).unwrap();
        let eta = Deg1Element::from_i64(p, &[2, 3, 1, 0]).unwrap();
        let lhs = wedge11(&pr, &xi, &eta).unwrap();
        let mut rhs = pr.zero2().0;
        for (i, c) in [2u64, 3, 1].into_iter().enumerate() {
            rhs = rhs.add(&pr.pair(i, r).0.scale(mul_mod(neg_mod(5, p), c, p))).unwrap();
        }
        assert_eq!(lhs.0, rhs);
    }

    #[test]
    fn wedge_rejects_bad_lengths() {
        let alg = build(&central_fixture(3).unwrap(), 5).unwrap();
        let short = Deg1Element::from_i64(5, &[1, 1]).unwrap();
        assert!(matches!(
            wedge11(&alg, &alg.nu(), &short),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn sub_zero_examples() {
        let alg = build(&deconed_a3(), 5).unwrap();
        assert!(sub_zero_membership(&alg, &alg.nu()));
        let alg = build(&deconed_a3(), 3).unwrap();
        assert!(!sub_zero_membership(&alg, &alg.nu()));
        assert!(sub_zero_membership(&alg, &Deg1Element::from_i64(3, &[1, -1, 0, 0, 0]).unwrap()));
        assert!(!sub_zero_membership(&alg, &Deg1Element::generator(3, 5, 0).unwrap()));
    }

    #[test]
    fn pair_index_is_dense() {
        let n = 6;
        let mut seen = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                seen.push(pair_index(n, i, j));
            }
        }
        assert_eq!(seen, (0..15).collect::<Vec<_>>());
    }
}
