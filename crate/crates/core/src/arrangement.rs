//! Exact projective geometry of line arrangements in CP².
//!
//! Lines and points are integer triples kept in a canonical form
//! (gcd-reduced, first nonzero entry positive), so equality is plain
//! tuple equality and both can key ordered maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

fn canonicalize(v: &mut [BigInt; 3]) -> bool {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return false;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    true
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn fmt_triple(v: &[BigInt; 3], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "({}:{}:{})", v[0], v[1], v[2])
}

/// A projective line `ax + by + cz = 0` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine([BigInt; 3]);

impl ProjLine {
    pub fn new(raw: [BigInt; 3]) -> Result<Self> {
        parse_line(raw)
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        parse_line([a.into(), b.into(), c.into()])
    }

    pub fn coeffs(&self) -> &[BigInt; 3] {
        &self.0
    }

    /// Whether the point lies on this line.
    pub fn contains(&self, p: &ProjPoint) -> bool {
        let (l, x) = (&self.0, &p.0);
        (&l[0] * &x[0] + &l[1] * &x[1] + &l[2] * &x[2]).is_zero()
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.0[0], self.0[1], self.0[2])
    }
}

/// A point of CP² in canonical homogeneous coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint([BigInt; 3]);

impl ProjPoint {
    pub fn new(raw: [BigInt; 3]) -> Option<Self> {
        let mut v = raw;
        canonicalize(&mut v).then_some(Self(v))
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.0
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.0, f)
    }
}

/// Canonicalize a raw coefficient triple into a line.
pub fn parse_line(raw: [BigInt; 3]) -> Result<ProjLine> {
    let mut v = raw;
    if canonicalize(&mut v) {
        Ok(ProjLine(v))
    } else {
        Err(Error::ZeroLine)
    }
}

/// The common point of two distinct lines (exact cross product).
pub fn intersect(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    ProjPoint::new(cross(&l1.0, &l2.0)).ok_or(Error::IdenticalLines)
}

/// An intersection point together with the sorted indices of the lines
/// through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub point: ProjPoint,
    pub incident: Vec<usize>,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }

    pub fn contains(&self, line: usize) -> bool {
        self.incident.binary_search(&line).is_ok()
    }
}

/// Rank-2 flats of an arrangement: every point where at least two lines
/// meet, ordered by canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    points: Vec<LatticePoint>,
}

impl IntersectionLattice {
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points_on(&self, line: usize) -> impl Iterator<Item = &LatticePoint> + '_ {
        self.points.iter().filter(move |p| p.contains(line))
    }

    /// Map from multiplicity to number of points with that multiplicity.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for p in &self.points {
            *h.entry(p.multiplicity()).or_insert(0) += 1;
        }
        h
    }
}

/// An arrangement of `n + 1 ≥ 3` distinct projective lines.
#[derive(Clone, Debug)]
pub struct ProjArrangement {
    lines: Vec<ProjLine>,
    lattice: OnceLock<IntersectionLattice>,
}

impl PartialEq for ProjArrangement {
    fn eq(&self, other: &Self) -> bool {
        self.lines == other.lines
    }
}

impl Eq for ProjArrangement {}

impl ProjArrangement {
    pub fn new(lines: Vec<ProjLine>) -> Result<Self> {
        if lines.len() < 3 {
            return Err(Error::TooFewLines(lines.len()));
        }
        let mut seen: BTreeMap<&ProjLine, usize> = BTreeMap::new();
        for (i, l) in lines.iter().enumerate() {
            if let Some(&first) = seen.get(l) {
                return Err(Error::DuplicateLine { first, second: i });
            }
            seen.insert(l, i);
        }
        Ok(Self { lines, lattice: OnceLock::new() })
    }

    pub fn from_triples(triples: &[[i64; 3]]) -> Result<Self> {
        let lines = triples
            .iter()
            .map(|&[a, b, c]| ProjLine::from_i64(a, b, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lines)
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    /// Number of lines, i.e. `n + 1 = deg Q`.
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn line(&self, i: usize) -> Result<&ProjLine> {
        self.lines.get(i).ok_or(Error::BadIndex { index: i, len: self.lines.len() })
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        self.lattice.get_or_init(|| lattice(self))
    }
}

/// Group all pairwise intersections by coincident point.
pub fn lattice(arr: &ProjArrangement) -> IntersectionLattice {
    let lines = arr.lines();
    let mut groups: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            // distinctness is an arrangement invariant
            let p = intersect(&lines[i], &lines[j]).expect("distinct lines");
            let set = groups.entry(p).or_default();
            set.insert(i);
            set.insert(j);
        }
    }
    let points = groups
        .into_iter()
        .map(|(point, incident)| LatticePoint { point, incident: incident.into_iter().collect() })
        .collect();
    IntersectionLattice { points }
}

/// Number of points on line `i` whose multiplicity is divisible by `k`.
pub fn mu(arr: &ProjArrangement, i: usize, k: u64) -> Result<usize> {
    if k < 2 {
        return Err(Error::BadK(k));
    }
    arr.line(i)?;
    Ok(arr
        .lattice()
        .points_on(i)
        .filter(|p| (p.multiplicity() as u64).is_multiple_of(k))
        .count())
}

/// At least two intersection points, i.e. not a pencil.
pub fn is_essential(arr: &ProjArrangement) -> bool {
    arr.lattice().len() >= 2
}

/// The point where a parallel class meets the line at infinity, with
/// `m = multiplicity - 1` (the class size).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPoint {
    pub point: ProjPoint,
    pub m: usize,
}

/// The deconing of a projective arrangement: one line is sent to infinity
/// and the remaining `n` lines are affine lines in C², indexed `0..n` in
/// source order.
#[derive(Clone, Debug)]
pub struct AffineArrangement {
    pub source: ProjArrangement,
    pub infinity_index: usize,
    /// Source index of each affine line.
    pub affine_indices: Vec<usize>,
    /// Parallel classes as sorted affine indices, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub class_points: Vec<ClassPoint>,
    /// Lattice points off the infinity line, incident sets in affine indices.
    pub finite_points: Vec<LatticePoint>,
    class_of: Vec<usize>,
}

impl AffineArrangement {
    /// Number of affine lines.
    pub fn n(&self) -> usize {
        self.affine_indices.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn are_parallel(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
}

pub fn decone(arr: &ProjArrangement, infinity_index: usize) -> Result<AffineArrangement> {
    arr.line(infinity_index)?;
    let affine_indices: Vec<usize> = (0..arr.len()).filter(|&i| i != infinity_index).collect();
    let to_affine = |src: usize| if src < infinity_index { src } else { src - 1 };

    let mut classes = Vec::new();
    let mut class_points = Vec::new();
    let mut finite_points = Vec::new();
    for lp in arr.lattice().points() {
        if lp.contains(infinity_index) {
            let members: Vec<usize> = lp
                .incident
                .iter()
                .filter(|&&i| i != infinity_index)
                .map(|&i| to_affine(i))
                .collect();
            class_points.push(ClassPoint { point: lp.point.clone(), m: members.len() });
            classes.push(members);
        } else {
            finite_points.push(LatticePoint {
                point: lp.point.clone(),
                incident: lp.incident.iter().map(|&i| to_affine(i)).collect(),
            });
        }
    }

    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by_key(|&c| classes[c][0]);
    let classes: Vec<Vec<usize>> = order.iter().map(|&c| classes[c].clone()).collect();
    let class_points = order.iter().map(|&c| class_points[c].clone()).collect();

    let mut class_of = vec![usize::MAX; affine_indices.len()];
    for (c, members) in classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    Ok(AffineArrangement {
        source: arr.clone(),
        infinity_index,
        affine_indices,
        classes,
        class_points,
        finite_points,
        class_of,
    })
}
