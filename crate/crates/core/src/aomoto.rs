//! The Aomoto complex `0 → A⁰ → A¹ → A² → 0` with differential `ξ ∧ ·`,
//! and the rank of its first cohomology.

use serde::Serialize;

use crate::arrangement::{decone, AffineArrangement, ProjArrangement};
use crate::linalg::{FpMatrix, FpVector};
use crate::os_algebra::{build, Deg1Element, WedgeTable};
use crate::{Error, Result};

/// Matrix of `η ↦ ξ ∧ η`, of shape `dim A² × n`.
pub fn d1_matrix<T: WedgeTable + ?Sized>(alg: &T, xi: &FpVector) -> Result<FpMatrix> {
    let (p, n) = (alg.modulus(), alg.n());
    check_xi(alg, xi)?;
    let dim2 = alg.dim2();
    let mut cols = Vec::with_capacity(n);
    let mut buf = vec![0; dim2];
    for i in 0..n {
        buf.iter_mut().for_each(|x| *x = 0);
        for (j, &a) in xi.entries().iter().enumerate() {
            if a != 0 && j != i {
                alg.add_pair(j, i, a, &mut buf);
            }
        }
        cols.push(FpVector::from_residues(p, buf.clone()));
    }
    FpMatrix::from_columns(p, dim2, &cols)
}

fn check_xi<T: WedgeTable + ?Sized>(alg: &T, xi: &FpVector) -> Result<()> {
    if xi.modulus() != alg.modulus() {
        return Err(Error::ModulusMismatch(alg.modulus(), xi.modulus()));
    }
    if xi.len() != alg.n() {
        return Err(Error::DimensionMismatch { expected: alg.n(), found: xi.len() });
    }
    Ok(())
}

pub struct AomotoComplex<'a, T: WedgeTable + ?Sized> {
    pub alg: &'a T,
    pub xi: Deg1Element,
    pub d1: FpMatrix,
}

impl<'a, T: WedgeTable + ?Sized> AomotoComplex<'a, T> {
    pub fn new(alg: &'a T, xi: Deg1Element) -> Result<Self> {
        let d1 = d1_matrix(alg, xi.coeffs())?;
        Ok(Self { alg, xi, d1 })
    }

    /// `d0(1) = ξ`.
    pub fn d0(&self) -> &FpVector {
        self.xi.coeffs()
    }

    /// `d1 ∘ d0 = 0`.
    pub fn is_complex(&self) -> bool {
        self.d1.mul_vec(self.d0()).map(|v| v.is_zero()).unwrap_or(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Full,
    Restricted,
}

/// Dimensions behind a β₁ value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub dim_a1: usize,
    pub dim_a2: usize,
    pub rank_d0: usize,
    pub rank_d1: usize,
    /// Dimension of the kernel that was actually computed: all of `A¹` for
    /// the full method, `A¹₀` for the restricted one.
    pub domain_dim: usize,
    pub kernel_dim: usize,
    pub h0: usize,
    pub h2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Beta1Result {
    pub value: usize,
    pub method: Method,
    pub certificate: Certificate,
}

/// `dim ker(ξ∧ : A¹ → A²) − rank(d0)`.
pub fn beta1_full<T: WedgeTable + ?Sized>(alg: &T, xi: &Deg1Element) -> Result<Beta1Result> {
    let d1 = d1_matrix(alg, xi.coeffs())?;
    let rank_d1 = d1.rank();
    let rank_d0 = usize::from(!xi.coeffs().is_zero());
    let n = alg.n();
    let kernel_dim = n - rank_d1;
    Ok(Beta1Result {
        value: kernel_dim - rank_d0,
        method: Method::Full,
        certificate: Certificate {
            dim_a1: n,
            dim_a2: alg.dim2(),
            rank_d0,
            rank_d1,
            domain_dim: n,
            kernel_dim,
            h0: 1 - rank_d0,
            h2: alg.dim2() - rank_d1,
        },
    })
}

/// Basis `e_i − e_n` (`i < n`) of the sum-zero subspace, as columns.
fn sum_zero_basis(p: u64, n: usize) -> Result<FpMatrix> {
    let mut b = FpMatrix::zeros(p, n, n.saturating_sub(1))?;
    for i in 0..n.saturating_sub(1) {
        b.set(i, i, 1);
        b.set(n - 1, i, p - 1);
    }
    Ok(b)
}

/// Basis of `Ker(ξ∧) ∩ A¹₀`. No hypothesis on `ξ`.
pub fn restricted_kernel<T: WedgeTable + ?Sized>(alg: &T, xi: &Deg1Element) -> Result<Vec<Deg1Element>> {
    let d1 = d1_matrix(alg, xi.coeffs())?;
    let b = sum_zero_basis(alg.modulus(), alg.n())?;
    let restricted = d1.mul(&b)?;
    restricted
        .kernel_basis()
        .iter()
        .map(|c| b.mul_vec(c).map(Deg1Element::new))
        .collect()
}

/// β₁ as `dim Ker(A¹₀ → A²)`, valid when `Σ a_i` is a unit.
pub fn beta1_restricted<T: WedgeTable + ?Sized>(alg: &T, xi: &Deg1Element) -> Result<Beta1Result> {
    let p = alg.modulus();
    check_xi(alg, xi.coeffs())?;
    let sum = xi.coeffs().sum();
    if sum == 0 {
        return Err(Error::NotInvertible { sum, p });
    }
    let n = alg.n();
    let d1 = d1_matrix(alg, xi.coeffs())?;
    let b = sum_zero_basis(p, n)?;
    let restricted_rank = d1.mul(&b)?.rank();
    let rank_d1 = d1.rank();
    let domain_dim = n - 1;
    Ok(Beta1Result {
        value: domain_dim - restricted_rank,
        method: Method::Restricted,
        certificate: Certificate {
            dim_a1: n,
            dim_a2: alg.dim2(),
            rank_d0: 1,
            rank_d1,
            domain_dim,
            kernel_dim: domain_dim - restricted_rank,
            h0: 0,
            h2: alg.dim2() - rank_d1,
        },
    })
}

/// β₁(A, ν) over F_p for the deconing at `infinity`.
pub fn beta1_nu(arr: &ProjArrangement, infinity: usize, p: u64) -> Result<Beta1Result> {
    let alg = build(&decone(arr, infinity)?, p)?;
    beta1_full(&alg, &alg.nu())
}

/// `s` affine lines `kx − y = 0` (`k = 0..s`) through the origin.
pub fn central_fixture(s: usize) -> Result<AffineArrangement> {
    if s < 2 {
        return Err(Error::BadSize(s));
    }
    let mut triples = vec![[0, 0, 1]];
    triples.extend((0..s as i64).map(|k| [k, -1, 0]));
    decone(&ProjArrangement::from_triples(&triples)?, 0)
}

/// `r` vertical lines `x = 1..=r` and the transversal `y = x`.
pub fn parallel_fixture(r: usize) -> Result<AffineArrangement> {
    if r < 1 {
        return Err(Error::BadSize(r));
    }
    let mut triples = vec![[0, 0, 1]];
    triples.extend((1..=r as i64).map(|k| [1, 0, -k]));
    triples.push([1, -1, 0]);
    decone(&ProjArrangement::from_triples(&triples)?, 0)
}
