//! Univariate and constrained trivariate basis systems.

mod trivariate;
mod univariate;

pub(crate) use trivariate::jet_partial;
pub use trivariate::{tri_slot, BarycentricPoint, TrivariateBasis, TRI_INDEX};
pub use univariate::UnivariateBasis;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    #[serde(rename = "cubic")]
    CubicBernstein,
    #[serde(rename = "quartic")]
    QuarticBernsteinBlended,
    #[serde(rename = "trig")]
    Trigonometric,
    Hyperbolic,
    #[serde(rename = "algtrig")]
    AlgebraicTrigonometric,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 5] = [
        FamilyTag::CubicBernstein,
        FamilyTag::QuarticBernsteinBlended,
        FamilyTag::Trigonometric,
        FamilyTag::Hyperbolic,
        FamilyTag::AlgebraicTrigonometric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::CubicBernstein => "cubic",
            FamilyTag::QuarticBernsteinBlended => "quartic",
            FamilyTag::Trigonometric => "trig",
            FamilyTag::Hyperbolic => "hyperbolic",
            FamilyTag::AlgebraicTrigonometric => "algtrig",
        }
    }

    /// A shape parameter that is valid for the family.
    pub fn default_beta(self) -> f64 {
        match self {
            FamilyTag::CubicBernstein | FamilyTag::QuarticBernsteinBlended => 1.0,
            FamilyTag::Trigonometric => PI / 2.0,
            FamilyTag::Hyperbolic => 1.0,
            FamilyTag::AlgebraicTrigonometric => 3.0 * PI / 4.0,
        }
    }

    fn range(self) -> &'static str {
        match self {
            FamilyTag::CubicBernstein | FamilyTag::QuarticBernsteinBlended => "{1}",
            FamilyTag::Trigonometric => "(0, pi)",
            FamilyTag::Hyperbolic => "(0, inf)",
            FamilyTag::AlgebraicTrigonometric => "(0, 2 pi)",
        }
    }

    pub fn admits(self, beta: f64) -> bool {
        match self {
            FamilyTag::CubicBernstein | FamilyTag::QuarticBernsteinBlended => beta == 1.0,
            FamilyTag::Trigonometric => beta > 0.0 && beta < PI,
            FamilyTag::Hyperbolic => beta > 0.0 && beta.is_finite(),
            FamilyTag::AlgebraicTrigonometric => beta > 0.0 && beta < 2.0 * PI,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cubic" | "cubicbernstein" | "bernstein" => Ok(FamilyTag::CubicBernstein),
            "quartic" | "quarticbernsteinblended" => Ok(FamilyTag::QuarticBernsteinBlended),
            "trig" | "trigonometric" => Ok(FamilyTag::Trigonometric),
            "hyperbolic" | "hyp" => Ok(FamilyTag::Hyperbolic),
            "algtrig" | "algebraictrigonometric" => Ok(FamilyTag::AlgebraicTrigonometric),
            other => Err(Error::Config(format!("unknown basis family '{other}'"))),
        }
    }
}

/// A basis family together with its shape parameter (the domain length).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisFamily {
    pub tag: FamilyTag,
    pub beta: f64,
}

impl BasisFamily {
    pub fn new(tag: FamilyTag, beta: f64) -> Result<Self> {
        if !tag.admits(beta) {
            return Err(Error::OutOfRangeBeta {
                family: tag.name(),
                beta,
                range: tag.range(),
            });
        }
        Ok(BasisFamily { tag, beta })
    }

    pub fn cubic() -> Self {
        BasisFamily {
            tag: FamilyTag::CubicBernstein,
            beta: 1.0,
        }
    }

    pub fn quartic() -> Self {
        BasisFamily {
            tag: FamilyTag::QuarticBernsteinBlended,
            beta: 1.0,
        }
    }

    pub fn trigonometric(beta: f64) -> Result<Self> {
        Self::new(FamilyTag::Trigonometric, beta)
    }

    pub fn hyperbolic(beta: f64) -> Result<Self> {
        Self::new(FamilyTag::Hyperbolic, beta)
    }

    pub fn algebraic_trigonometric(beta: f64) -> Result<Self> {
        Self::new(FamilyTag::AlgebraicTrigonometric, beta)
    }

    pub fn with_default_beta(tag: FamilyTag) -> Self {
        BasisFamily {
            tag,
            beta: tag.default_beta(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.tag, self.beta).map(|_| ())
    }

    /// The shape parameters used when sweeping tables: a fixed sample set
    /// restricted to the admissible interval.
    pub fn sample_set(tag: FamilyTag) -> Vec<BasisFamily> {
        match tag {
            FamilyTag::CubicBernstein | FamilyTag::QuarticBernsteinBlended => {
                vec![BasisFamily { tag, beta: 1.0 }]
            }
            _ => [0.5, 1.0, PI / 2.0, 3.0 * PI / 4.0, 3.0]
                .into_iter()
                .filter(|&b| tag.admits(b))
                .map(|beta| BasisFamily { tag, beta })
                .collect(),
        }
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(beta={})", self.tag, self.beta)
    }
}

/// Sine or hyperbolic sine depending on the family.
#[inline]
pub(crate) fn s_fn<T: crate::jet::Real>(x: T, hyperbolic: bool) -> T {
    if hyperbolic {
        x.sinh()
    } else {
        x.sin()
    }
}

/// Cosine or hyperbolic cosine depending on the family.
#[inline]
pub(crate) fn c_fn<T: crate::jet::Real>(x: T, hyperbolic: bool) -> T {
    if hyperbolic {
        x.cosh()
    } else {
        x.cos()
    }
}
