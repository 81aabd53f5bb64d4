//! Degeneration homomorphisms of Orlik-Solomon algebras.
//!
//! The total degeneration collapses every parallel class to one line of a
//! central arrangement `C_s`; the directional degeneration with respect to
//! a class `{L_{i₁}, …, L_{i_r}}` keeps those lines apart and sends every
//! other line to the transversal of an almost-parallel arrangement `P_r`.
//! Both send generators to generators, so a map is determined by its
//! generator images; degree 2 follows by multiplicativity.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::aomoto::{central_fixture, parallel_fixture};
use crate::arrangement::AffineArrangement;
use crate::linalg::{FpMatrix, FpVector};
use crate::os_algebra::{build, wedge_with, Deg1Element, OSAlgebra, Relation, WedgeTable};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegenerationKind {
    Total,
    Directional { class: usize },
}

#[derive(Clone, Debug)]
pub struct DegenerationMap {
    pub kind: DegenerationKind,
    pub source: OSAlgebra,
    pub target: OSAlgebra,
    /// Target generator of each source generator.
    pub images: Vec<usize>,
    /// `target.n × source.n`.
    pub deg1_matrix: FpMatrix,
    /// `target.dim2 × source.dim2`, in Brieskorn coordinates.
    pub deg2_matrix: FpMatrix,
}

impl DegenerationMap {
    /// Extend generator images to degrees 1 and 2 without checking that the
    /// result respects the relations.
    pub fn from_images(
        kind: DegenerationKind,
        source: OSAlgebra,
        target: OSAlgebra,
        images: Vec<usize>,
    ) -> Result<Self> {
        let p = source.modulus();
        if target.modulus() != p {
            return Err(Error::ModulusMismatch(p, target.modulus()));
        }
        if images.len() != source.n() {
            return Err(Error::DimensionMismatch { expected: source.n(), found: images.len() });
        }
        if let Some(&bad) = images.iter().find(|&&t| t >= target.n()) {
            return Err(Error::BadIndex { index: bad, len: target.n() });
        }
        let mut deg1_matrix = FpMatrix::zeros(p, target.n(), source.n())?;
        for (i, &t) in images.iter().enumerate() {
            deg1_matrix.set(t, i, 1);
        }
        let cols: Vec<FpVector> = source
            .deg2_basis()
            .iter()
            .map(|sym| target.pair(images[sym.anchor], images[sym.other]).coeffs().clone())
            .collect();
        let deg2_matrix = FpMatrix::from_columns(p, target.dim2(), &cols)?;
        Ok(Self { kind, source, target, images, deg1_matrix, deg2_matrix })
    }

    pub fn apply1(&self, x: &Deg1Element) -> Result<Deg1Element> {
        self.deg1_matrix.mul_vec(x.coeffs()).map(Deg1Element::new)
    }

    pub fn apply2(&self, y: &FpVector) -> Result<FpVector> {
        self.deg2_matrix.mul_vec(y)
    }

    /// Every relation generator of the source maps to zero.
    pub fn respects_relations(&self) -> bool {
        let img = |i: usize| self.images[i];
        self.source.relation_generators().into_iter().all(|rel| match rel {
            Relation::Parallel(i, j) => self.target.pair(img(i), img(j)).is_zero(),
            Relation::Concurrent(i, j, k) => {
                let mut out = vec![0; self.target.dim2()];
                let p = self.target.modulus();
                self.target.add_pair(img(i), img(j), 1, &mut out);
                self.target.add_pair(img(i), img(k), p - 1, &mut out);
                self.target.add_pair(img(j), img(k), 1, &mut out);
                out.iter().all(|&x| x == 0)
            }
        })
    }

    /// `Δ(e_i ∧ e_j) = Δe_i ∧ Δe_j` for every pair.
    pub fn multiplicative_on_pairs(&self) -> bool {
        let n = self.source.n();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = self.apply2(self.source.pair(i, j).coeffs()).expect("shapes");
                lhs == *self.target.pair(self.images[i], self.images[j]).coeffs()
            })
        })
    }

    /// `Δ(x ∧ y) = Δx ∧ Δy` for one pair of degree-1 elements.
    pub fn multiplicative_at(&self, x: &Deg1Element, y: &Deg1Element) -> Result<bool> {
        let lhs = self.apply2(&wedge_with(&self.source, x.coeffs(), y.coeffs())?)?;
        let (dx, dy) = (self.apply1(x)?, self.apply1(y)?);
        Ok(lhs == wedge_with(&self.target, dx.coeffs(), dy.coeffs())?)
    }

    /// Coordinates of `Δ_tot(η)`: the sum of `η`'s coefficients over each
    /// parallel class.
    pub fn class_sums(&self, eta: &Deg1Element) -> Result<FpVector> {
        class_sums(self, eta)
    }
}

pub fn class_sums(map: &DegenerationMap, eta: &Deg1Element) -> Result<FpVector> {
    if map.kind != DegenerationKind::Total {
        return Err(Error::NotTotal);
    }
    map.deg1_matrix.mul_vec(eta.coeffs())
}

/// Total degeneration `A(A) → A(C_s)` from an already built algebra.
pub fn total(source: &OSAlgebra) -> Result<DegenerationMap> {
    let s = source.classes().len();
    if s < 2 {
        return Err(Error::TooFewClasses(s));
    }
    let target = build(&central_fixture(s)?, source.modulus())?;
    let images = (0..source.n()).map(|i| source.class_of(i)).collect();
    checked(DegenerationMap::from_images(DegenerationKind::Total, source.clone(), target, images)?)
}

/// Directional degeneration `A(A) → A(P_r)` with respect to `class`.
pub fn directional(source: &OSAlgebra, class: usize) -> Result<DegenerationMap> {
    let classes = source.classes();
    let members = classes
        .get(class)
        .ok_or(Error::BadClass { class, count: classes.len() })?;
    let r = members.len();
    if r == source.n() {
        return Err(Error::NoTransversal(class));
    }
    let target = build(&parallel_fixture(r)?, source.modulus())?;
    let images = (0..source.n())
        .map(|i| members.binary_search(&i).unwrap_or(r))
        .collect();
    checked(DegenerationMap::from_images(
        DegenerationKind::Directional { class },
        source.clone(),
        target,
        images,
    )?)
}

fn checked(map: DegenerationMap) -> Result<DegenerationMap> {
    if map.respects_relations() {
        Ok(map)
    } else {
        Err(Error::NotHomomorphism)
    }
}

pub fn delta_tot(aff: &AffineArrangement, p: u64) -> Result<DegenerationMap> {
    total(&build(aff, p)?)
}

pub fn delta_dir(aff: &AffineArrangement, class: usize, p: u64) -> Result<DegenerationMap> {
    directional(&build(aff, p)?, class)
}

/// Relation check, exhaustive pair check, and `trials` random pairs of
/// degree-1 elements (fixed seed).
pub fn verify_homomorphism(map: &DegenerationMap, trials: usize) -> bool {
    if !map.respects_relations() || !map.multiplicative_on_pairs() {
        return false;
    }
    let p = map.source.modulus();
    let n = map.source.n();
    let mut rng = StdRng::seed_from_u64(0x05_a1_9e_b7);
    let mut random = || {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p) as i64).collect();
        Deg1Element::from_i64(p, &v).expect("valid modulus")
    };
    (0..trials).all(|_| {
        let (x, y) = (random(), random());
        map.multiplicative_at(&x, &y).unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{decone, ProjArrangement};
    use crate::os_algebra::wedge11;

    /// Two horizontal lines, the diagonal y = x, two vertical lines; the
    /// diagonal passes through two of the grid crossings.
    fn fig3() -> AffineArrangement {
        let arr = ProjArrangement::from_triples(&[
            [0, 0, 1],
            [0, 1, -2],
            [0, 1, -1],
            [1, -1, 0],
            [1, 0, -1],
            [1, 0, -2],
        ])
        .unwrap();
        decone(&arr, 0).unwrap()
    }

    #[test]
    fn total_on_fig3() {
        let map = delta_tot(&fig3(), 3).unwrap();
        assert_eq!(map.target.n(), 3);
        assert_eq!(map.images, vec![0, 0, 1, 2, 2]);
        assert!(verify_homomorphism(&map, 50));
    }

    #[test]
    fn directional_on_fig3() {
        let map = delta_dir(&fig3(), 2, 5).unwrap();
        assert_eq!(map.target.n(), 3);
        assert_eq!(map.images, vec![2, 2, 2, 0, 1]);
        assert!(verify_homomorphism(&map, 50));
    }

    #[test]
    fn directional_image_of_nu() {
        let aff = fig3();
        let p = 7;
        for class in 0..aff.num_classes() {
            let map = delta_dir(&aff, class, p).unwrap();
            let r = aff.classes[class].len();
            let mut expected = vec![1; r];
            expected.push((aff.n() - r) as i64);
            let got = map.apply1(&map.source.nu()).unwrap();
            assert_eq!(got, Deg1Element::from_i64(p, &expected).unwrap());
        }
    }

    #[test]
    fn directional_image_of_class_supported_eta() {
        // η = 2e4 + 3e5 + (e1 − e2) has zero class sums outside {L4, L5}
        let aff = fig3();
        let p = 7;
        let map = delta_dir(&aff, 2, p).unwrap();
        let eta = Deg1Element::from_i64(p, &[1, -1, 0, 2, 3]).unwrap();
        let got = map.apply1(&eta).unwrap();
        assert_eq!(got, Deg1Element::from_i64(p, &[2, 3, 0]).unwrap());
    }

    #[test]
    fn corrupted_map_is_rejected() {
        let source = build(&fig3(), 3).unwrap();
        let good = total(&source).unwrap();
        let mut images = good.images.clone();
        images.swap(1, 2);
        let bad =
            DegenerationMap::from_images(DegenerationKind::Total, source, good.target.clone(), images)
                .unwrap();
        assert!(!bad.respects_relations());
        assert!(!verify_homomorphism(&bad, 10));
    }

    #[test]
    fn class_sums_examples() {
        let aff = fig3();
        let map = delta_tot(&aff, 3).unwrap();
        let e12 = Deg1Element::from_i64(3, &[1, -1, 0, 0, 0]).unwrap();
        assert!(map.class_sums(&e12).unwrap().is_zero());
        assert_eq!(map.class_sums(&map.source.nu()).unwrap().entries(), &[2, 1, 2]);
        let dir = delta_dir(&aff, 0, 3).unwrap();
        assert_eq!(class_sums(&dir, &e12).unwrap_err(), Error::NotTotal);
    }

    #[test]
    fn error_paths() {
        let pencil =
            ProjArrangement::from_triples(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]]).unwrap();
        let aff = decone(&pencil, 0).unwrap();
        assert_eq!(delta_tot(&aff, 2).unwrap_err(), Error::TooFewClasses(1));
        assert_eq!(delta_dir(&aff, 0, 2).unwrap_err(), Error::NoTransversal(0));
        assert_eq!(delta_dir(&fig3(), 3, 2).unwrap_err(), Error::BadClass { class: 3, count: 3 });
    }

    #[test]
    fn central_input_relabels_bijectively() {
        let c4 = central_fixture(4).unwrap();
        let map = delta_tot(&c4, 5).unwrap();
        assert_eq!(map.images, vec![0, 1, 2, 3]);
        assert_eq!(map.deg1_matrix, FpMatrix::identity(5, 4).unwrap());
        assert_eq!(map.deg2_matrix.rank(), 3);
    }

    #[test]
    fn wedge_commutes_on_generators() {
        let map = delta_tot(&fig3(), 2).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let ei = Deg1Element::generator(2, 5, i).unwrap();
                let ej = Deg1Element::generator(2, 5, j).unwrap();
                let lhs = map.apply2(wedge11(&map.source, &ei, &ej).unwrap().coeffs()).unwrap();
                let (di, dj) = (map.apply1(&ei).unwrap(), map.apply1(&ej).unwrap());
                assert_eq!(lhs, *wedge11(&map.target, &di, &dj).unwrap().coeffs());
            }
        }
    }
}
