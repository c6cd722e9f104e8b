//! Exact rational divisor classes on `M̄_g` and on the hyperelliptic locus.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heisenberg::{dehn_twist_central_charge, SeparatingCurve};
use crate::symplectic::Genus;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `λ` alone, for classes on the open moduli space.
    Interior(Genus),
    /// `λ, δ₀, δ₁, …, δ_{[g/2]}`.
    Moduli(Genus),
    /// `λ, ξ₀, …, ξ_{[(g-1)/2]}, δ₁, …, δ_{[g/2]}`.
    Hyperelliptic(Genus),
}

impl Basis {
    pub fn genus(&self) -> Genus {
        match *self {
            Basis::Interior(g) | Basis::Moduli(g) | Basis::Hyperelliptic(g) => g,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        let g = self.genus().get();
        let mut out = vec!["lambda".to_string()];
        match self {
            Basis::Interior(_) => {}
            Basis::Moduli(_) => out.extend((0..=g / 2).map(|h| format!("delta_{h}"))),
            Basis::Hyperelliptic(_) => {
                out.extend((0..=(g - 1) / 2).map(|j| format!("xi_{j}")));
                out.extend((1..=g / 2).map(|h| format!("delta_{h}")));
            }
        }
        out
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "label {label} is not in the genus-{} basis",
                    self.genus()
                ))
            })
    }
}

/// A class `Σ cᵢ eᵢ` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisorClass {
    basis: Basis,
    coeffs: Vec<BigRational>,
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl DivisorClass {
    pub fn zero(basis: Basis) -> Self {
        DivisorClass {
            basis,
            coeffs: vec![BigRational::zero(); basis.labels().len()],
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, label: &str) -> Result<&BigRational> {
        Ok(&self.coeffs[self.basis.index(label)?])
    }

    pub fn set(&mut self, label: &str, value: BigRational) -> Result<()> {
        let i = self.basis.index(label)?;
        self.coeffs[i] = value;
        Ok(())
    }

    fn with(mut self, label: &str, value: i64) -> Result<Self> {
        self.set(label, int(value))?;
        Ok(self)
    }

    /// `(label, coefficient)` in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (String, &BigRational)> {
        self.basis.labels().into_iter().zip(self.coeffs.iter())
    }

    /// Drops every boundary term.
    pub fn restrict_to_interior(&self) -> DivisorClass {
        DivisorClass {
            basis: Basis::Interior(self.basis.genus()),
            coeffs: vec![self.coeffs[0].clone()],
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (label, c) in self.terms().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, _) => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{mag} {label}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct OrderedCoeffs<'a>(&'a DivisorClass);

impl Serialize for OrderedCoeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.coeffs.len()))?;
        for (label, c) in self.0.terms() {
            m.serialize_entry(&label, &c.to_string())?;
        }
        m.end()
    }
}

/// `{"basis": [...], "coeffs": {label: "p/q"}}`, coefficients in basis order.
impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DivisorClass", 2)?;
        st.serialize_field("basis", &self.basis.labels())?;
        st.serialize_field("coeffs", &OrderedCoeffs(self))?;
        st.end()
    }
}

/// An equation `lhs = rhs` between classes in one basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Relation {
    pub lhs: DivisorClass,
    pub rhs: DivisorClass,
}

/// `(8g+4)λ` on `M_g`.
pub fn morita_class(genus: Genus) -> Result<DivisorClass> {
    DivisorClass::zero(Basis::Interior(genus)).with("lambda", 8 * genus.get() as i64 + 4)
}

/// `(8g+4)λ - gδ₀ - Σ τ̂(σ_h) δ_h`, with the `δ_h` coefficients taken from the
/// central charges of separating twists.
pub fn chern_biextension(genus: Genus) -> Result<DivisorClass> {
    genus.require(3)?;
    let g = genus.get() as i64;
    let mut class = DivisorClass::zero(Basis::Moduli(genus))
        .with("lambda", 8 * g + 4)?
        .with("delta_0", -g)?;
    for h in 1..=genus.get() / 2 {
        let tau = dehn_twist_central_charge(&SeparatingCurve::new(genus, h)?)?.tau;
        class.set(&format!("delta_{h}"), -BigRational::from_integer(tau))?;
    }
    Ok(class)
}

/// `(8g+4)λ = gξ₀ + Σ_{j≥1} (j+1)(g-j) ξ_j + 4 Σ h(g-h) δ_h` on the
/// hyperelliptic locus.
pub fn cornalba_harris_relation(genus: Genus) -> Result<Relation> {
    genus.require(2)?;
    let g = genus.get() as i64;
    let basis = Basis::Hyperelliptic(genus);
    let lhs = DivisorClass::zero(basis).with("lambda", 8 * g + 4)?;
    let mut rhs = DivisorClass::zero(basis).with("xi_0", g)?;
    for j in 1..=(g - 1) / 2 {
        rhs.set(&format!("xi_{j}"), int((j + 1) * (g - j)))?;
    }
    for h in 1..=g / 2 {
        rhs.set(&format!("delta_{h}"), int(4 * h * (g - h)))?;
    }
    Ok(Relation { lhs, rhs })
}

/// The unknown `δ₀` coefficient together with the `ξ_j` (`j ≥ 1`)
/// multiplicities eliminated alongside it.
#[derive(Debug, Clone, PartialEq)]
pub struct R0Solution {
    pub r0: BigRational,
    /// Derived by coefficient matching; not independently confirmed.
    pub c: Vec<(String, BigRational)>,
}

impl Serialize for R0Solution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Cs<'a>(&'a [(String, BigRational)]);
        impl Serialize for Cs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (l, c) in self.0 {
                    m.serialize_entry(l, &c.to_string())?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("R0Solution", 3)?;
        st.serialize_field("r0", &self.r0.to_string())?;
        st.serialize_field("c", &Cs(&self.c))?;
        st.serialize_field("c_status", "derived, unverified")?;
        st.end()
    }
}

/// Restricting `(8g+4)λ + r₀δ₀ + Σ r_h δ_h` to the hyperelliptic locus, with
/// `δ₀ ↦ ξ₀ + Σ_{j≥1} c_j ξ_j` up to unknown `c_j`, and requiring it to vanish
/// gives `(8g+4)λ = -r₀ξ₀ - Σ r_h δ_h + Σ c_j ξ_j`. Matching this against
/// the known relation determines `r₀` and the `c_j`.
pub fn solve_r0(genus: Genus) -> Result<R0Solution> {
    genus.require(3)?;
    let chern = chern_biextension(genus)?;
    let rel = cornalba_harris_relation(genus)?;
    let lambda = rel.lhs.coeff("lambda")?;
    if lambda.is_zero() {
        return Err(Error::Inconsistent("relation has no lambda term".into()));
    }
    let scale = chern.coeff("lambda")? / lambda;
    for h in 1..=genus.get() / 2 {
        let label = format!("delta_{h}");
        let known = &scale * rel.rhs.coeff(&label)?;
        let ours = -chern.coeff(&label)?;
        if known != ours {
            return Err(Error::Inconsistent(format!(
                "{label}: relation gives {known}, central charge gives {ours}"
            )));
        }
    }
    let r0 = -(&scale * rel.rhs.coeff("xi_0")?);
    let c = (1..=(genus.get() - 1) / 2)
        .map(|j| {
            let label = format!("xi_{j}");
            let v = &scale * rel.rhs.coeff(&label)?;
            Ok((label, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(R0Solution { r0, c })
}
