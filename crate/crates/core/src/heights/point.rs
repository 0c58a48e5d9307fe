//! Points of 𝐆ₘⁿ and the toric canonical height.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::algebraic::{weil_height, weil_height_cyc, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::exact::CycElement;

/// One coordinate: exact in some ℚ(ζ_m), or a general algebraic number.
#[derive(Clone, Debug, PartialEq)]
pub enum Coord {
    Exact(CycElement),
    Algebraic(AlgebraicNumber),
}

impl Coord {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Coord::Exact(c) => c.to_complex(),
            Coord::Algebraic(a) => a.approx(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coord::Exact(c) => c.is_zero(),
            Coord::Algebraic(a) => a.is_zero(),
        }
    }

    pub fn height(&self) -> Result<f64> {
        match self {
            Coord::Exact(c) => weil_height_cyc(c),
            Coord::Algebraic(a) => weil_height(a),
        }
    }

    pub fn to_algebraic(&self) -> Result<AlgebraicNumber> {
        match self {
            Coord::Exact(c) => AlgebraicNumber::from_cyc(c),
            Coord::Algebraic(a) => Ok(a.clone()),
        }
    }

    pub fn mul(&self, other: &Coord) -> Result<Coord> {
        match (self, other) {
            (Coord::Exact(a), Coord::Exact(b)) => Ok(Coord::Exact(a * b)),
            _ => Ok(Coord::Algebraic(self.to_algebraic()?.mul(&other.to_algebraic()?)?)),
        }
    }

    pub fn inv(&self) -> Result<Coord> {
        match self {
            Coord::Exact(c) => Ok(Coord::Exact(c.inv()?)),
            Coord::Algebraic(a) => Ok(Coord::Algebraic(a.inv()?)),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Exact(c) => write!(f, "{c}"),
            Coord::Algebraic(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for Coord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("alg(") {
            Ok(Coord::Algebraic(s.parse()?))
        } else {
            Ok(Coord::Exact(s.parse()?))
        }
    }
}

/// A point of 𝐆ₘⁿ(ℚ̄); every coordinate is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    coords: Vec<Coord>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Coord>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("torus point needs at least one coordinate"));
        }
        if let Some(i) = coords.iter().position(Coord::is_zero) {
            return Err(Error::invalid(format!("coordinate {i} is zero; point not in the torus")));
        }
        Ok(TorusPoint { coords })
    }

    pub fn from_exact(coords: Vec<CycElement>) -> Result<Self> {
        Self::new(coords.into_iter().map(Coord::Exact).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(|c| matches!(c, Coord::Exact(_)))
    }

    pub fn exact_coords(&self) -> Option<Vec<CycElement>> {
        self.coords
            .iter()
            .map(|c| match c {
                Coord::Exact(e) => Some(e.clone()),
                Coord::Algebraic(_) => None,
            })
            .collect()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coords.iter().map(Coord::to_complex).collect()
    }

    /// Image in (ℙ¹)ⁿ as homogeneous pairs `[1 : xᵢ]`.
    pub fn to_projective(&self) -> Vec<[Complex64; 2]> {
        self.to_complex()
            .into_iter()
            .map(|x| [Complex64::new(1.0, 0.0), x])
            .collect()
    }

    /// Coordinate-wise product.
    pub fn mul(&self, other: &TorusPoint) -> Result<TorusPoint> {
        if self.dim() != other.dim() {
            return Err(Error::invalid("dimension mismatch in point product"));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        TorusPoint::new(coords)
    }

    pub fn inv(&self) -> Result<TorusPoint> {
        TorusPoint::new(self.coords.iter().map(Coord::inv).collect::<Result<Vec<_>>>()?)
    }

    /// Order of the point in the torsion subgroup, if it is torsion.
    pub fn torsion_order(&self) -> Option<usize> {
        let mut order = 1usize;
        for c in &self.coords {
            let o = match c {
                Coord::Exact(e) => e.root_of_unity_order()?,
                Coord::Algebraic(a) => a.to_cyc()?.root_of_unity_order()?,
            };
            order = order.lcm(&o);
        }
        Some(order)
    }
}

/// `ĥ(P) = Σᵢ h(Pᵢ)`.
pub fn canonical_height(p: &TorusPoint) -> Result<f64> {
    p.coords.iter().map(Coord::height).sum()
}

/// Splits on commas outside parentheses.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for TorusPoint {
    type Err = Error;

    /// `(c1, c2, ...)` or bare `c1,c2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = match s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            // Only strip when the parentheses enclose the whole tuple.
            Some(r) if split_top_level(s).len() == 1 && !r.is_empty() => r,
            _ => s,
        };
        let coords = split_top_level(inner)
            .into_iter()
            .map(str::parse)
            .collect::<Result<Vec<Coord>>>()?;
        TorusPoint::new(coords)
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TorusPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
