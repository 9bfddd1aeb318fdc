//! Integral tables of products of basis derivatives.
//!
//! The univariate tables feed the strain energy of boundary curves, the
//! trivariate tables feed the thin-plate energy of the patch interior.
//! Closed forms are provided wherever they exist, and every table can also
//! be produced by adaptive quadrature, which serves as the reference.

mod phi;
mod tau;

pub use phi::{combine_phi, phi_closed, phi_quadrature, PhiTable};
pub use tau::{boundary_indices, tau_closed, tau_quadrature, TauSet, TauTable, ThinPlateGram};

use crate::basis::{BasisFamily, FamilyTag, TrivariateBasis, UnivariateBasis, TRI_INDEX};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Non-negative weights of the derivative orders 1, 2, ... in an energy.
/// At least one weight must be positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct EnergyWeights(Vec<f64>);

impl EnergyWeights {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let w = EnergyWeights(values);
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = !self.0.is_empty()
            && self.0.iter().all(|v| v.is_finite() && *v >= 0.0)
            && self.0.iter().any(|v| *v > 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::ZeroWeights(self.0.clone()))
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weight of derivative order r (1-based), zero beyond the given list.
    pub fn order(&self, r: usize) -> f64 {
        self.0.get(r - 1).copied().unwrap_or(0.0)
    }
}

impl TryFrom<Vec<f64>> for EnergyWeights {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        EnergyWeights::new(v)
    }
}

impl From<EnergyWeights> for Vec<f64> {
    fn from(w: EnergyWeights) -> Self {
        w.0
    }
}

/// One closed-versus-quadrature comparison.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyLine {
    pub family: FamilyTag,
    pub beta: f64,
    pub symbol: String,
    pub closed: f64,
    pub quadrature: f64,
    pub diff: f64,
}

impl fmt::Display for VerifyLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<10} beta={:<22} {:<16} closed={:<24.16e} quadrature={:<24.16e} |diff|={:.3e}",
            self.family.name(),
            self.beta,
            self.symbol,
            self.closed,
            self.quadrature,
            self.diff
        )
    }
}

/// Compare every closed table entry of `family` with quadrature to `tol`.
/// Families without closed trivariate tables only contribute univariate lines.
pub fn verify_tables(family: BasisFamily, tol: f64) -> Result<Vec<VerifyLine>> {
    let mut lines = Vec::new();
    let mut push = |symbol: String, closed: f64, quadrature: f64| {
        lines.push(VerifyLine {
            family: family.tag,
            beta: family.beta,
            symbol,
            closed,
            quadrature,
            diff: (closed - quadrature).abs(),
        })
    };
    let uni = UnivariateBasis::new(family)?;
    for r in 1..=2 {
        let c = phi_closed(family, r)?;
        let q = phi_quadrature(&uni, r, tol)?;
        for k in 0..4 {
            for l in k..4 {
                push(format!("phi^{r}_{k}{l}"), c.get(k, l), q.get(k, l));
            }
        }
    }
    if family.tag != FamilyTag::Hyperbolic {
        let tri = TrivariateBasis::new(family)?;
        for g in 1..=2 {
            let c = tau_closed(family, g)?;
            let q = tau_quadrature(&tri, g, tol)?;
            for z in 0..=g {
                for (k, (r, s)) in TRI_INDEX.iter().enumerate() {
                    push(
                        format!("tau^{z},{}_{r}{s}{}", g - z, 3 - r - s),
                        c.values[z][k],
                        q.values[z][k],
                    );
                }
            }
        }
    }
    Ok(lines)
}
