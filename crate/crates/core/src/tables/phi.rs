use super::EnergyWeights;
use crate::basis::{BasisFamily, FamilyTag, UnivariateBasis};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::quadrature::integrate;

/// Integrals phi_{k,l} = int_0^beta B_k^(r) B_l^(r) dx of products of
/// derivatives, or a weighted sum of such tables over r.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiTable {
    pub family: BasisFamily,
    /// Weight of each derivative order r = 1, 2, ... that went into the table.
    pub theta: Vec<f64>,
    pub values: [[f64; 4]; 4],
}

impl PhiTable {
    /// Build a symmetric table from its independent entries, using the
    /// reflection symmetry phi_{0,1} = phi_{2,3}, phi_{0,2} = phi_{1,3},
    /// phi_{1,1} = phi_{2,2} and phi_{0,0} = phi_{3,3}.
    pub fn from_independent(
        family: BasisFamily,
        theta: Vec<f64>,
        p00: f64,
        p01: f64,
        p02: f64,
        p03: f64,
        p11: f64,
        p12: f64,
    ) -> Self {
        let values = [
            [p00, p01, p02, p03],
            [p01, p11, p12, p02],
            [p02, p12, p11, p01],
            [p03, p02, p01, p00],
        ];
        PhiTable {
            family,
            theta,
            values,
        }
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.values[k][l]
    }

    pub fn row_sums(&self) -> [f64; 4] {
        let mut s = [0.0; 4];
        for k in 0..4 {
            s[k] = self.values[k].iter().sum();
        }
        s
    }

    /// The closed table of a single derivative order, or the weighted sum of
    /// both closed orders.
    pub fn closed_combined(family: BasisFamily, theta: &EnergyWeights) -> Result<Self> {
        if theta.len() > 2 {
            return Err(Error::Config(format!(
                "closed tables cover derivative orders up to 2, got {} weights",
                theta.len()
            )));
        }
        let t1 = phi_closed(family, 1)?;
        let t2 = phi_closed(family, 2)?;
        combine_phi(&t1, &t2, theta)
    }
}

/// Closed-form table for derivative order r of the given family.
///
/// The entries phi_{0,1}, phi_{0,2}, phi_{1,1} and phi_{1,2} are the
/// tabulated formulas. phi_{0,3} is evaluated from its own closed form and
/// phi_{0,0} = phi_{3,3} is fixed by the zero row sum that follows from the
/// partition of unity. Neither of the latter enters the tangent scaling
/// solve, they only matter for energy values.
pub fn phi_closed(family: BasisFamily, r: usize) -> Result<PhiTable> {
    family.validate()?;
    let beta = family.beta;
    if beta < 1e-3 && family.tag != FamilyTag::CubicBernstein {
        log::warn!("closed phi table at beta = {beta:e} is poorly conditioned");
    }
    let [p01, p02, p03, p11, p12] = match (family.tag, r) {
        (FamilyTag::CubicBernstein, 1) => [-0.9, -0.6, -0.3, 1.2, 0.3],
        (FamilyTag::CubicBernstein, 2) => [-18.0, 0.0, 6.0, 36.0, -18.0],
        (FamilyTag::QuarticBernsteinBlended, 1) => [
            -52.0 / 35.0,
            -24.0 / 35.0,
            -4.0 / 35.0,
            66.0 / 35.0,
            2.0 / 7.0,
        ],
        (FamilyTag::QuarticBernsteinBlended, 2) => [
            -204.0 / 5.0,
            36.0 / 5.0,
            24.0 / 5.0,
            324.0 / 5.0,
            -156.0 / 5.0,
        ],
        (FamilyTag::Trigonometric, 1) => trigonometric_r1(beta),
        (FamilyTag::Trigonometric, 2) => trigonometric_r2(beta),
        (FamilyTag::Hyperbolic, 1) => hyperbolic_r1(beta),
        (FamilyTag::Hyperbolic, 2) => hyperbolic_r2(beta),
        (FamilyTag::AlgebraicTrigonometric, 1) => algebraic_trigonometric_r1(beta),
        (FamilyTag::AlgebraicTrigonometric, 2) => algebraic_trigonometric_r2(beta),
        _ => {
            return Err(Error::DomainError {
                value: r as f64,
                domain: "derivative order 1 or 2".into(),
            })
        }
    };
    let p00 = -(p01 + p02 + p03);
    let mut theta = vec![0.0; r];
    theta[r - 1] = 1.0;
    Ok(PhiTable::from_independent(
        family, theta, p00, p01, p02, p03, p11, p12,
    ))
}

fn trigonometric_r1(beta: f64) -> [f64; 5] {
    let b = Dd::new(beta);
    let (s, c) = b.sin_cos();
    let s8 = (b / 2.0).sin().powi(8);
    let d = (1.0 - c).powi(4);
    let d_printed = 1.0 - 4.0 * c + 6.0 * c * c - 4.0 * c.powi(3) + c.powi(4);
    let p01 = ((24.0 + 4.0 * c - 18.0 * c * c + 5.0 * c.powi(3)) * s
        - 3.0 * b * (6.0 + 2.0 * c - 3.0 * c * c))
        / (96.0 * s8);
    let p02 = ((-12.0 + 24.0 * c + 2.0 * c * c + c.powi(3)) * s
        + 3.0 * b * (2.0 - 2.0 * c - 5.0 * c * c))
        / (96.0 * s8);
    let p11 = ((-32.0 - 12.0 * c + 34.0 * c * c - 5.0 * c.powi(3)) * s
        + 3.0 * b * (8.0 + 4.0 * c - 5.0 * c * c - 2.0 * c.powi(3)))
        / (6.0 * d_printed);
    let p12 = ((20.0 - 16.0 * c - 18.0 * c * c - c.powi(3)) * s
        - 3.0 * b * (4.0 - 7.0 * c * c - 2.0 * c.powi(3)))
        / (6.0 * d_printed);
    let p03 =
        (24.0 * b * c + 6.0 * b * (2.0 * b).cos() + 8.0 * s - 19.0 * (2.0 * b).sin()) / (12.0 * d);
    [p01, p02, p03, p11, p12].map(Dd::to_f64)
}

fn trigonometric_r2(beta: f64) -> [f64; 5] {
    let b = Dd::new(beta);
    let (s, c) = b.sin_cos();
    let d = (1.0 - c).powi(4);
    let dp = 3.0 * (1.0 - 4.0 * c + 6.0 * c * c - 4.0 * c.powi(3) + c.powi(4));
    let p01 = ((12.0 + 5.0 * c + 9.0 * c * c - 14.0 * c.powi(3)) * s
        - 3.0 * b * (6.0 + c - 3.0 * c * c))
        / dp;
    let p02 = ((-18.0 + 21.0 * c + 7.0 * c * c + 2.0 * c.powi(3)) * s
        + 3.0 * b * (4.0 - c - 7.0 * c * c))
        / dp;
    let p11 = ((-16.0 - 24.0 * c + 11.0 * c * c + 17.0 * c.powi(3)) * s
        + 3.0 * b * (10.0 - 7.0 * c * c + 2.0 * c - c.powi(3)))
        / dp;
    let p12 = ((22.0 - 2.0 * c - 27.0 * c * c - 5.0 * c.powi(3)) * s
        - 3.0 * b * (8.0 - 11.0 * c * c - c.powi(3)))
        / dp;
    let p03 =
        (6.0 * b * c + 6.0 * b * (2.0 * b).cos() + 14.0 * s - 13.0 * (2.0 * b).sin()) / (3.0 * d);
    [p01, p02, p03, p11, p12].map(Dd::to_f64)
}

fn hyperbolic_r1(beta: f64) -> [f64; 5] {
    let b = Dd::new(beta);
    let c = b.cosh();
    let sh = |k: f64| (k * b).sinh();
    let s8 = (b / 2.0).sinh().powi(8);
    let dp = 1.0 - 4.0 * c + 6.0 * c * c - 4.0 * c.powi(3) + c.powi(4);
    let p01 = (48.0 * b * (6.0 + 2.0 * c - 3.0 * c * c) - 312.0 * sh(1.0) - 52.0 * sh(2.0)
        + 72.0 * sh(3.0)
        - 10.0 * sh(4.0))
        / (1536.0 * s8);
    let p02 = (-48.0 * b * (2.0 - 2.0 * c - 5.0 * c * c) + 184.0 * sh(1.0)
        - 196.0 * sh(2.0)
        - 8.0 * sh(3.0)
        - 2.0 * sh(4.0))
        / (1536.0 * s8);
    let p11 = (-48.0 * b * (8.0 + 4.0 * c - 5.0 * c * c - 2.0 * c.powi(3))
        + 376.0 * sh(1.0)
        + 116.0 * sh(2.0)
        - 136.0 * sh(3.0)
        + 10.0 * sh(4.0))
        / (96.0 * dp);
    let p12 = (48.0 * b * (4.0 - 7.0 * c * c - 2.0 * c.powi(3)) - 248.0 * sh(1.0)
        + 132.0 * sh(2.0)
        + 72.0 * sh(3.0)
        + 2.0 * sh(4.0))
        / (96.0 * dp);
    let p03 = -(24.0 * b * c + 6.0 * b * (2.0 * b).cosh() + 8.0 * sh(1.0) - 19.0 * sh(2.0))
        / (12.0 * (c - 1.0).powi(4));
    [p01, p02, p03, p11, p12].map(Dd::to_f64)
}

fn hyperbolic_r2(beta: f64) -> [f64; 5] {
    let b = Dd::new(beta);
    let c = b.cosh();
    let sh = |k: f64| (k * b).sinh();
    let dp = 1.0 - 4.0 * c + 6.0 * c * c - 4.0 * c.powi(3) + c.powi(4);
    let p01 = (-24.0 * b * (6.0 + c - 3.0 * c * c) + 114.0 * sh(1.0) - 8.0 * sh(2.0)
        + 18.0 * sh(3.0)
        - 14.0 * sh(4.0))
        / (24.0 * dp);
    let p02 = (24.0 * b * (4.0 - c - 7.0 * c * c) - 130.0 * sh(1.0)
        + 88.0 * sh(2.0)
        + 14.0 * sh(3.0)
        + 2.0 * sh(4.0))
        / (24.0 * dp);
    let p11 =
        (48.0 * b * (10.0 + 2.0 * c - 7.0 * c * c - c.powi(3)) - 212.0 * sh(1.0) - 124.0 * sh(2.0)
            + 44.0 * sh(3.0)
            + 34.0 * sh(4.0))
            / (48.0 * dp);
    let p12 = (-48.0 * b * (8.0 - 11.0 * c * c - c.powi(3)) + 244.0 * sh(1.0)
        - 36.0 * sh(2.0)
        - 108.0 * sh(3.0)
        - 10.0 * sh(4.0))
        / (48.0 * dp);
    let p03 = (6.0 * b * c + 6.0 * b * (2.0 * b).cosh() + 14.0 * sh(1.0) - 13.0 * sh(2.0))
        / (3.0 * (c - 1.0).powi(4));
    [p01, p02, p03, p11, p12].map(Dd::to_f64)
}

fn algebraic_trigonometric_r1(beta: f64) -> [f64; 5] {
    let b = Dd::new(beta);
    let (s, c) = b.sin_cos();
    let (s2, c2) = (2.0 * b).sin_cos();
    let e = 2.0 * s - b - b * c;
    let f = b - s;
    let p01 = (-3.0 * b + 6.0 * s + 2.0 * b * c - 3.0 * s2 + b * c2) * s / (4.0 * e * f * f);
    let p02 = (-b - s + b * b * s + b * c + c * s) * s / (2.0 * e * f * f);
    let p11 = (2.0 * b.powi(3) - 4.0 * s - 4.0 * b * b * s + 4.0 * b * c + 2.0 * s2
        - b * b * s2
        - 4.0 * b * c2)
        * s
        * s
        / (4.0 * e * e * f * f);
    let p12 = (6.0 * b - 2.0 * s - 3.0 * b * b * s - 6.0 * b * c + b.powi(3) * c + s2) * s * s
        / (2.0 * e * e * f * f);
    let p03 = (-b * c - 2.0 * b + 3.0 * s) / (2.0 * f * f);
    [p01, p02, p03, p11, p12].map(Dd::to_f64)
}

fn algebraic_trigonometric_r2(beta: f64) -> [f64; 5] {
    let b = Dd::new(beta);
    let (s, c) = b.sin_cos();
    let (s2, c2) = (2.0 * b).sin_cos();
    let e = 2.0 * s - b - b * c;
    let f = b - s;
    let p01 = (-b - 2.0 * s + 2.0 * b * c + s2 - b * c2) * s / (4.0 * e * f * f);
    let p02 = (-b - s + b * b * s + b * c + c * s) * s / (2.0 * e * f * f);
    let p11 = (2.0 * b + 2.0 * b.powi(3) + 4.0 * s - 4.0 * b * b * s - 4.0 * b * c - 2.0 * s2
        + b * b * s2
        + 2.0 * b * c2)
        * s
        * s
        / (4.0 * e * e * f * f);
    let p12 = (b + 2.0 * s - b * b * s - 2.0 * b * c + b.powi(3) * c - s2 + b * c2) * s * s
        / (2.0 * e * e * f * f);
    let p03 = (-b * c + s) / (2.0 * f * f);
    [p01, p02, p03, p11, p12].map(Dd::to_f64)
}

/// Every entry of the order-r table by adaptive quadrature to absolute error `tol`.
pub fn phi_quadrature(basis: &UnivariateBasis, r: usize, tol: f64) -> Result<PhiTable> {
    if r == 0 || r > basis.max_derivative_order() {
        return Err(Error::DomainError {
            value: r as f64,
            domain: format!("derivative order 1..={}", basis.max_derivative_order()),
        });
    }
    let flat: [f64; 16] = integrate(
        |x| {
            let v = basis.eval_all(x);
            let mut out = [0.0; 16];
            for k in 0..4 {
                for l in 0..4 {
                    out[4 * k + l] = v[k][r] * v[l][r];
                }
            }
            out
        },
        0.0,
        basis.beta(),
        tol,
    )?;
    let mut values = [[0.0; 4]; 4];
    for k in 0..4 {
        for l in 0..4 {
            values[k][l] = flat[4 * k + l];
        }
    }
    let mut theta = vec![0.0; r];
    theta[r - 1] = 1.0;
    Ok(PhiTable {
        family: basis.family(),
        theta,
        values,
    })
}

/// Weighted sum theta_1 * phi^1 + theta_2 * phi^2.
pub fn combine_phi(r1: &PhiTable, r2: &PhiTable, theta: &EnergyWeights) -> Result<PhiTable> {
    theta.validate()?;
    let w = theta.values();
    let t1 = w[0];
    let t2 = w.get(1).copied().unwrap_or(0.0);
    let mut values = [[0.0; 4]; 4];
    for k in 0..4 {
        for l in 0..4 {
            values[k][l] = t1 * r1.values[k][l] + t2 * r2.values[k][l];
        }
    }
    Ok(PhiTable {
        family: r1.family,
        theta: w.to_vec(),
        values,
    })
}
