//! Exact linear algebra on the symplectic lattice `H` of rank `2g`, its third
//! exterior power, the quotient `V = Λ³H / (θ∧H)` and the integral form `q`.
//!
//! Basis conventions (fixed, and relied on by every file format):
//!
//! * `H` has basis `a_1..a_g, b_1..b_g`, numbered `0..2g` in that order.
//! * The intersection pairing is `a_i·b_j = δ_ij`, `b_j·a_i = -δ_ij`,
//!   `a_i·a_j = b_i·b_j = 0`.
//! * `θ = Σ_j a_j∧b_j`.
//! * `Λ³H` has basis `e_i∧e_j∧e_k`, `i < j < k`, in lexicographic order on the
//!   index triple.

mod lattice;
mod matrix;

pub use lattice::IntegerLattice;
pub use matrix::{sp_generators, transvection, IntMatrix};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Genus(u32);

impl TryFrom<u32> for Genus {
    type Error = Error;
    fn try_from(g: u32) -> Result<Self> {
        Genus::new(g)
    }
}

impl From<Genus> for u32 {
    fn from(g: Genus) -> u32 {
        g.0
    }
}

impl Genus {
    pub fn new(g: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::GenusTooSmall {
                required: 1,
                found: 0,
            });
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Rank of `H`.
    pub fn rank(self) -> usize {
        2 * self.0 as usize
    }

    /// Rank of `Λ³H`, `C(2g, 3)`.
    pub fn wedge3_dim(self) -> usize {
        binomial(self.rank(), 3)
    }

    pub fn require(self, min: u32) -> Result<()> {
        if self.0 < min {
            Err(Error::GenusTooSmall {
                required: min,
                found: self.0,
            })
        } else {
            Ok(())
        }
    }

    fn check_same(self, other: Genus) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GenusMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Index of `a_i` (0-based `i`).
pub fn a_index(g: Genus, i: usize) -> usize {
    debug_assert!(i < g.get() as usize);
    i
}

/// Index of `b_i` (0-based `i`).
pub fn b_index(g: Genus, i: usize) -> usize {
    debug_assert!(i < g.get() as usize);
    g.get() as usize + i
}

/// Intersection number of two basis vectors.
pub fn basis_pairing(g: Genus, i: usize, j: usize) -> i64 {
    let n = g.get() as usize;
    if i < n && j == i + n {
        1
    } else if i >= n && j + n == i {
        -1
    } else {
        0
    }
}

/// Lexicographic rank of the strictly increasing triple `i < j < k` among all
/// such triples drawn from `0..n`.
pub fn triple_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k && k < n);
    binomial(n, 3) - binomial(n - i, 3) + binomial(n - i - 1, 2) - binomial(n - j, 2) + (k - j - 1)
}

/// All increasing triples over `0..n` in lexicographic order.
pub fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
}

/// Sign and sorted index of `e_i∧e_j∧e_k` for arbitrary (possibly repeated) indices.
fn oriented_triple(n: usize, mut t: [usize; 3]) -> Option<(i64, usize)> {
    let mut sign = 1;
    for pass in 0..2 {
        for p in 0..2 - pass {
            if t[p] > t[p + 1] {
                t.swap(p, p + 1);
                sign = -sign;
            }
        }
    }
    if t[0] == t[1] || t[1] == t[2] {
        return None;
    }
    Some((sign, triple_index(n, t[0], t[1], t[2])))
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det3_big(m: [[&BigInt; 3]; 3]) -> BigInt {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// An element of `H`, coordinates against `a_1..a_g, b_1..b_g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HVector {
    genus: Genus,
    coords: Vec<BigInt>,
}

impl HVector {
    pub fn new(genus: Genus, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != genus.rank() {
            return Err(Error::DimensionMismatch {
                expected: genus.rank(),
                found: coords.len(),
            });
        }
        Ok(HVector { genus, coords })
    }

    pub fn from_i64(genus: Genus, coords: &[i64]) -> Result<Self> {
        Self::new(genus, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(genus: Genus) -> Self {
        HVector {
            genus,
            coords: vec![BigInt::zero(); genus.rank()],
        }
    }

    pub fn basis(genus: Genus, index: usize) -> Self {
        let mut v = Self::zero(genus);
        v.coords[index] = BigInt::one();
        v
    }

    pub fn a(genus: Genus, i: usize) -> Self {
        Self::basis(genus, a_index(genus, i))
    }

    pub fn b(genus: Genus, i: usize) -> Self {
        Self::basis(genus, b_index(genus, i))
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        HVector {
            genus: self.genus,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// Supported on the first `h` symplectic pairs `a_1..a_h, b_1..b_h`.
    pub fn supported_on_block(&self, h: usize) -> bool {
        let g = self.genus.get() as usize;
        (0..g)
            .filter(|&i| i >= h)
            .all(|i| self.coords[i].is_zero() && self.coords[g + i].is_zero())
    }
}

impl Add for &HVector {
    type Output = HVector;
    fn add(self, rhs: &HVector) -> HVector {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        HVector {
            genus: self.genus,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &HVector {
    type Output = HVector;
    fn sub(self, rhs: &HVector) -> HVector {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        HVector {
            genus: self.genus,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &HVector {
    type Output = HVector;
    fn neg(self) -> HVector {
        HVector {
            genus: self.genus,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// An element of `Λ³H` on the lexicographic triple basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wedge3 {
    genus: Genus,
    coeffs: Vec<BigInt>,
}

impl Wedge3 {
    pub fn new(genus: Genus, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != genus.wedge3_dim() {
            return Err(Error::DimensionMismatch {
                expected: genus.wedge3_dim(),
                found: coeffs.len(),
            });
        }
        Ok(Wedge3 { genus, coeffs })
    }

    pub fn from_i64(genus: Genus, coeffs: &[i64]) -> Result<Self> {
        Self::new(genus, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(genus: Genus) -> Self {
        Wedge3 {
            genus,
            coeffs: vec![BigInt::zero(); genus.wedge3_dim()],
        }
    }

    /// `e_i∧e_j∧e_k` for arbitrary basis indices (zero when any repeat).
    pub fn basis_wedge(genus: Genus, i: usize, j: usize, k: usize) -> Self {
        let mut w = Self::zero(genus);
        if let Some((sign, idx)) = oriented_triple(genus.rank(), [i, j, k]) {
            w.coeffs[idx] = BigInt::from(sign);
        }
        w
    }

    /// `x∧y∧z`, the 3×3 minors of the coordinate matrix.
    pub fn wedge(x: &HVector, y: &HVector, z: &HVector) -> Result<Self> {
        x.genus.check_same(y.genus)?;
        x.genus.check_same(z.genus)?;
        let genus = x.genus;
        let (xc, yc, zc) = (&x.coords, &y.coords, &z.coords);
        let coeffs = triples(genus.rank())
            .map(|[i, j, k]| {
                det3_big([
                    [&xc[i], &xc[j], &xc[k]],
                    [&yc[i], &yc[j], &yc[k]],
                    [&zc[i], &zc[j], &zc[k]],
                ])
            })
            .collect();
        Ok(Wedge3 { genus, coeffs })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Wedge3 {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn add_term(&mut self, t: [usize; 3], c: &BigInt) {
        if let Some((sign, idx)) = oriented_triple(self.genus.rank(), t) {
            if sign > 0 {
                self.coeffs[idx] += c;
            } else {
                self.coeffs[idx] -= c;
            }
        }
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = ([usize; 3], &BigInt)> {
        triples(self.genus.rank())
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
    }
}

impl Add for &Wedge3 {
    type Output = Wedge3;
    fn add(self, rhs: &Wedge3) -> Wedge3 {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        Wedge3 {
            genus: self.genus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Wedge3 {
    type Output = Wedge3;
    fn sub(self, rhs: &Wedge3) -> Wedge3 {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        Wedge3 {
            genus: self.genus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Wedge3 {
    type Output = Wedge3;
    fn neg(self) -> Wedge3 {
        Wedge3 {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&Wedge3> for i64 {
    type Output = Wedge3;
    fn mul(self, rhs: &Wedge3) -> Wedge3 {
        rhs.scale(&BigInt::from(self))
    }
}

/// `x·y` for the unimodular form `a_i·b_j = δ_ij`.
pub fn intersection(x: &HVector, y: &HVector) -> Result<BigInt> {
    x.genus.check_same(y.genus)?;
    let g = x.genus.get() as usize;
    let mut acc = BigInt::zero();
    for i in 0..g {
        acc += &x.coords[i] * &y.coords[g + i];
        acc -= &x.coords[g + i] * &y.coords[i];
    }
    Ok(acc)
}

/// `x∧θ` with `θ = Σ_j a_j∧b_j`.
pub fn wedge_with_theta(x: &HVector) -> Result<Wedge3> {
    let genus = x.genus;
    genus.require(2)?;
    let g = genus.get() as usize;
    let mut out = Wedge3::zero(genus);
    for (m, c) in x.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for j in 0..g {
            out.add_term([m, j, g + j], c);
        }
    }
    Ok(out)
}

/// `x∧w` for the partial theta element `w = Σ_{j ∈ pairs} a_j∧b_j`.
pub fn wedge_with_partial_theta(
    x: &HVector,
    pairs: impl IntoIterator<Item = usize> + Clone,
) -> Wedge3 {
    let genus = x.genus;
    let g = genus.get() as usize;
    let mut out = Wedge3::zero(genus);
    for (m, c) in x.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for j in pairs.clone() {
            out.add_term([m, j, g + j], c);
        }
    }
    out
}

/// The contraction `c(x∧y∧z) = (x·y)z + (y·z)x + (z·x)y`.
pub fn contraction_c(w: &Wedge3) -> HVector {
    let genus = w.genus;
    let mut out = HVector::zero(genus);
    for ([i, j, k], c) in w.nonzero_terms() {
        for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
            match basis_pairing(genus, p, q) {
                1 => out.coords[r] += c,
                -1 => out.coords[r] -= c,
                _ => {}
            }
        }
    }
    out
}

/// `⟨x1∧x2∧x3, y1∧y2∧y3⟩ = det(x_i·y_j)`, extended bilinearly.
///
/// A basis triple pairs non-trivially only with the triple of its symplectic
/// partners, so the sum is linear in the dimension.
pub fn wedge3_pairing(u: &Wedge3, v: &Wedge3) -> Result<BigInt> {
    u.genus.check_same(v.genus)?;
    let genus = u.genus;
    let n = genus.rank();
    let g = genus.get() as usize;
    let partner = |i: usize| if i < g { i + g } else { i - g };
    let mut acc = BigInt::zero();
    for ([i, j, k], c) in u.nonzero_terms() {
        let mut dual = [partner(i), partner(j), partner(k)];
        dual.sort_unstable();
        let idx = triple_index(n, dual[0], dual[1], dual[2]);
        let other = &v.coeffs[idx];
        if other.is_zero() {
            continue;
        }
        let m = [i, j, k].map(|x| dual.map(|y| basis_pairing(genus, x, y)));
        acc += c * other * det3(m);
    }
    Ok(acc)
}

/// A class in `V = Λ³H/(θ∧H)` represented by a lift.
#[derive(Debug, Clone)]
pub struct VClass {
    lift: Wedge3,
}

impl VClass {
    pub fn new(lift: Wedge3) -> Self {
        VClass { lift }
    }

    pub fn zero(genus: Genus) -> Self {
        VClass {
            lift: Wedge3::zero(genus),
        }
    }

    pub fn genus(&self) -> Genus {
        self.lift.genus
    }

    pub fn lift(&self) -> &Wedge3 {
        &self.lift
    }

    pub fn into_lift(self) -> Wedge3 {
        self.lift
    }
}

impl Add for &VClass {
    type Output = VClass;
    fn add(self, rhs: &VClass) -> VClass {
        VClass {
            lift: &self.lift + &rhs.lift,
        }
    }
}

impl Neg for &VClass {
    type Output = VClass;
    fn neg(self) -> VClass {
        VClass { lift: -&self.lift }
    }
}

/// `j(x∧y∧z) = (g-1)x∧y∧z - θ∧c(x∧y∧z)`, the canonical lift of a class.
pub fn j_map(v: &VClass) -> Result<Wedge3> {
    let genus = v.genus();
    genus.require(2)?;
    let g1 = BigInt::from(genus.get() - 1);
    let correction = wedge_with_theta(&contraction_c(&v.lift))?;
    Ok(&v.lift.scale(&g1) - &correction)
}

/// `q(u,v) = ⟨j(u), j(v)⟩ / (g-1)`.
pub fn q_form(u: &VClass, v: &VClass) -> Result<BigInt> {
    let genus = u.genus();
    genus.check_same(v.genus())?;
    genus.require(3)?;
    let raw = wedge3_pairing(&j_map(u)?, &j_map(v)?)?;
    let divisor = BigInt::from(genus.get() - 1);
    let (q, r) = raw.div_rem(&divisor);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            divisor: divisor.to_string(),
        });
    }
    Ok(q)
}

/// The sublattice `θ∧H ⊂ Λ³H`, in echelon form for membership tests.
#[derive(Debug, Clone)]
pub struct ThetaSublattice {
    genus: Genus,
    lattice: IntegerLattice,
}

impl ThetaSublattice {
    pub fn new(genus: Genus) -> Result<Self> {
        genus.require(2)?;
        let generators: Vec<Vec<BigInt>> = (0..genus.rank())
            .map(|i| wedge_with_theta(&HVector::basis(genus, i)).map(|w| w.coeffs))
            .collect::<Result<_>>()?;
        let lattice = IntegerLattice::from_generators(genus.wedge3_dim(), &generators);
        Ok(ThetaSublattice { genus, lattice })
    }

    pub fn contains(&self, w: &Wedge3) -> Result<bool> {
        self.genus.check_same(w.genus)?;
        Ok(self.lattice.contains(&w.coeffs))
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }
}

/// Coset equality in `V`: `lift(u) - lift(v) ∈ θ∧H`.
pub fn vclass_equal(u: &VClass, v: &VClass) -> Result<bool> {
    u.genus().check_same(v.genus())?;
    ThetaSublattice::new(u.genus())?.contains(&(&u.lift - &v.lift))
}

// JSON: {"genus": g, "coords"/"coeffs": ["<decimal>", ...]}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    genus: u32,
    #[serde(alias = "coeffs", alias = "coords")]
    entries: Vec<String>,
}

fn parse_entries(entries: &[String]) -> Result<Vec<BigInt>> {
    entries
        .iter()
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        })
        .collect()
}

impl Serialize for HVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HVector", 2)?;
        st.serialize_field("genus", &self.genus.get())?;
        st.serialize_field(
            "coords",
            &self
                .coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
        )?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for HVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = VectorRepr::deserialize(d)?;
        let genus = Genus::new(repr.genus).map_err(serde::de::Error::custom)?;
        let coords = parse_entries(&repr.entries).map_err(serde::de::Error::custom)?;
        HVector::new(genus, coords).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Wedge3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Wedge3", 2)?;
        st.serialize_field("genus", &self.genus.get())?;
        st.serialize_field(
            "coeffs",
            &self
                .coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
        )?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Wedge3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = VectorRepr::deserialize(d)?;
        let genus = Genus::new(repr.genus).map_err(serde::de::Error::custom)?;
        let coeffs = parse_entries(&repr.entries).map_err(serde::de::Error::custom)?;
        Wedge3::new(genus, coeffs).map_err(serde::de::Error::custom)
    }
}
