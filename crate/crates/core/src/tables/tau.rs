use crate::basis::{tri_slot, BasisFamily, FamilyTag, TrivariateBasis, TRI_INDEX};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::quadrature::integrate_triangle;

/// Integrals tau^{z,g-z}_{r,s,t} = int_Delta D^{z,g-z} T_{r,s,t} D^{z,g-z} T_{1,1,1}
/// over the parameter triangle, for one total derivative order g and every
/// split z = 0..=g. Derivatives are taken in the chart x = u, y = v.
#[derive(Debug, Clone, PartialEq)]
pub struct TauTable {
    pub family: BasisFamily,
    pub g: usize,
    /// `values[z][slot]` with slots in [`TRI_INDEX`] order. Rows z > g are zero.
    pub values: [[f64; 10]; 3],
}

impl TauTable {
    pub fn get(&self, z: usize, idx: (usize, usize)) -> f64 {
        self.values[z][tri_slot(idx.0, idx.1)]
    }

    /// Sum over all ten indices for a fixed split, which vanishes because the
    /// functions form a partition of unity.
    pub fn index_sum(&self, z: usize) -> f64 {
        self.values[z].iter().sum()
    }
}

/// Tables for both derivative orders g = 1 and g = 2.
#[derive(Debug, Clone, PartialEq)]
pub struct TauSet {
    pub first: TauTable,
    pub second: TauTable,
}

impl TauSet {
    pub fn order(&self, g: usize) -> &TauTable {
        if g == 1 {
            &self.first
        } else {
            &self.second
        }
    }

    /// Closed tables where they exist, quadrature to `tol` otherwise.
    pub fn for_family(family: BasisFamily, tol: f64) -> Result<Self> {
        match (tau_closed(family, 1), tau_closed(family, 2)) {
            (Ok(first), Ok(second)) => Ok(TauSet { first, second }),
            (Err(Error::UnsupportedFamily { .. }), _)
            | (_, Err(Error::UnsupportedFamily { .. })) => {
                let basis = TrivariateBasis::new(family)?;
                Ok(TauSet {
                    first: tau_quadrature(&basis, 1, tol)?,
                    second: tau_quadrature(&basis, 2, tol)?,
                })
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }
}

struct Builder {
    values: [[f64; 10]; 3],
}

impl Builder {
    fn new() -> Self {
        Builder {
            values: [[0.0; 10]; 3],
        }
    }

    /// Assign `val` to every key (z, r, s).
    fn put(&mut self, val: f64, keys: &[(usize, usize, usize)]) {
        for &(z, r, s) in keys {
            self.values[z][tri_slot(r, s)] = val;
        }
    }
}

// Index sets shared by the trigonometric and algebraic-trigonometric tables,
// written as (z, r, s) for the first and second order tables.
const G1_A1: [(usize, usize, usize); 4] = [(0, 0, 0), (1, 0, 0), (0, 0, 3), (1, 3, 0)];
const G1_A2: [(usize, usize, usize); 4] = [(1, 0, 1), (0, 1, 0), (0, 1, 2), (1, 2, 1)];
const G1_A3: [(usize, usize, usize); 4] = [(0, 0, 1), (0, 0, 2), (1, 1, 0), (1, 2, 0)];
const G1_A4: [(usize, usize, usize); 4] = [(1, 0, 2), (1, 1, 2), (0, 2, 0), (0, 2, 1)];
const G1_A5: [(usize, usize, usize); 2] = [(0, 1, 1), (1, 1, 1)];

const G2_B1: [(usize, usize, usize); 4] = [(0, 0, 0), (2, 0, 0), (0, 0, 3), (2, 3, 0)];
const G2_B2: [(usize, usize, usize); 1] = [(1, 0, 0)];
const G2_B3: [(usize, usize, usize); 4] = [(0, 0, 1), (0, 0, 2), (2, 1, 0), (2, 2, 0)];
const G2_B4: [(usize, usize, usize); 2] = [(1, 0, 1), (1, 1, 0)];
const G2_B5: [(usize, usize, usize); 4] = [(2, 0, 1), (0, 1, 0), (0, 1, 2), (2, 2, 1)];
const G2_B6: [(usize, usize, usize); 2] = [(1, 0, 2), (1, 2, 0)];
const G2_B7: [(usize, usize, usize); 4] = [(2, 0, 2), (2, 1, 2), (0, 2, 0), (0, 2, 1)];
const G2_B8: [(usize, usize, usize); 2] = [(0, 1, 1), (2, 1, 1)];
const G2_B9: [(usize, usize, usize); 2] = [(1, 1, 2), (1, 2, 1)];

fn first_order(a: [f64; 5]) -> [[f64; 10]; 3] {
    let mut t = Builder::new();
    t.put(a[0], &G1_A1);
    t.put(a[1], &G1_A2);
    t.put(a[2], &G1_A3);
    t.put(a[3], &G1_A4);
    t.put(a[4], &G1_A5);
    t.values
}

fn second_order(b: [f64; 9]) -> [[f64; 10]; 3] {
    let mut t = Builder::new();
    t.put(b[0], &G2_B1);
    t.put(b[1], &G2_B2);
    t.put(b[2], &G2_B3);
    t.put(b[3], &G2_B4);
    t.put(b[4], &G2_B5);
    t.put(b[5], &G2_B6);
    t.put(b[6], &G2_B7);
    t.put(b[7], &G2_B8);
    t.put(b[8], &G2_B9);
    // The mixed derivative shares the formula of the pure ones at the centre
    // index, halved.
    t.put(0.5 * b[7], &[(1, 1, 1)]);
    t.values
}

/// Rows of a table given in slot order for z = 0..=g.
fn from_rows(rows: &[[f64; 10]]) -> [[f64; 10]; 3] {
    let mut v = [[0.0; 10]; 3];
    v[..rows.len()].copy_from_slice(rows);
    v
}

/// Closed-form table of derivative order g in {1, 2}.
///
/// Returns [`Error::UnsupportedFamily`] for the hyperbolic family, whose
/// thin-plate integrals have no closed form here and are computed by
/// [`tau_quadrature`].
pub fn tau_closed(family: BasisFamily, g: usize) -> Result<TauTable> {
    family.validate()?;
    if !(1..=2).contains(&g) {
        return Err(Error::DomainError {
            value: g as f64,
            domain: "derivative order 1 or 2".into(),
        });
    }
    let beta = family.beta;
    if beta < 1e-3
        && matches!(
            family.tag,
            FamilyTag::Trigonometric | FamilyTag::AlgebraicTrigonometric
        )
    {
        log::warn!("closed tau table at beta = {beta:e} is poorly conditioned");
    }
    let values = match (family.tag, g) {
        (FamilyTag::CubicBernstein, 1) => from_rows(&[
            [-0.1, 0.1, 0.1, -0.1, -0.1, 0.2, -0.1, 0.0, 0.0, 0.0],
            [-0.1, -0.1, 0.0, 0.0, 0.1, 0.2, 0.0, 0.1, -0.1, -0.1],
        ]),
        (FamilyTag::CubicBernstein, 2) => from_rows(&[
            [-3.0, 3.0, 3.0, -3.0, -6.0, 12.0, -6.0, 0.0, 0.0, 0.0],
            [0.0, -3.0, 3.0, 0.0, -3.0, 6.0, -3.0, 3.0, -3.0, 0.0],
            [-3.0, -6.0, 0.0, 0.0, 3.0, 12.0, 0.0, 3.0, -6.0, -3.0],
        ]),
        (FamilyTag::QuarticBernsteinBlended, 1) => {
            let q = |n: f64| n / 35.0;
            from_rows(&[
                [
                    q(-6.0),
                    q(6.0),
                    q(6.0),
                    q(-6.0),
                    q(-11.0),
                    0.8,
                    q(-11.0),
                    q(-3.0),
                    q(-3.0),
                    0.0,
                ],
                [
                    q(-6.0),
                    q(-11.0),
                    q(-3.0),
                    0.0,
                    q(6.0),
                    0.8,
                    q(-3.0),
                    q(6.0),
                    q(-11.0),
                    q(-6.0),
                ],
            ])
        }
        (FamilyTag::QuarticBernsteinBlended, 2) => {
            let q = |n: f64| n / 5.0;
            from_rows(&[
                [
                    q(-24.0),
                    q(24.0),
                    q(24.0),
                    q(-24.0),
                    q(-84.0),
                    48.0,
                    q(-84.0),
                    q(-36.0),
                    q(-36.0),
                    0.0,
                ],
                [
                    q(12.0),
                    q(-36.0),
                    q(24.0),
                    0.0,
                    q(-36.0),
                    24.0,
                    q(-54.0),
                    q(24.0),
                    q(-54.0),
                    0.0,
                ],
                [
                    q(-24.0),
                    q(-84.0),
                    q(-36.0),
                    0.0,
                    q(24.0),
                    48.0,
                    q(-36.0),
                    q(24.0),
                    q(-84.0),
                    q(-24.0),
                ],
            ])
        }
        (FamilyTag::Trigonometric, 1) => first_order(trigonometric_first(beta)),
        (FamilyTag::Trigonometric, 2) => second_order(trigonometric_second(beta)),
        (FamilyTag::AlgebraicTrigonometric, 1) => first_order(algtrig_first(beta)),
        (FamilyTag::AlgebraicTrigonometric, 2) => second_order(algtrig_second(beta)),
        (FamilyTag::Hyperbolic, _) => {
            return Err(Error::UnsupportedFamily {
                family: family.tag.name(),
            })
        }
        _ => unreachable!(),
    };
    Ok(TauTable { family, g, values })
}

/// First-order trigonometric constants in the order A1 (outer corners),
/// A2, A3, A4 and A5 (centre index), matching the shared index sets.
fn trigonometric_first(beta: f64) -> [f64; 5] {
    let b = Dd::new(beta);
    let (s, c) = (b / 2.0).sin_cos();
    let s8 = s.powi(8);
    let bb = b * b;
    let c2 = c * c;
    let c4 = c2 * c2;
    let c6 = c4 * c2;
    let c8 = c4 * c4;
    let bsc = b * s * c;
    let a1 = (384.0 - 81.0 * bb - 2330.0 * c2 + 288.0 * bb * c2 + 1770.0 * c4 - 180.0 * bb * c4
        + 312.0 * c6
        - 136.0 * c8
        - 3.0 * bsc * (37.0 - 286.0 * c2))
        / (1152.0 * s8);
    let a2 = (-27.0 * bb + 2.0 * (890.0 + 18.0 * bb) * c2 - 180.0 * (1.0 + bb) * c4
        + 48.0 * (3.0 * bb - 31.0) * c6
        - 112.0 * c8
        - 12.0 * bsc * (37.0 - 6.0 * c2 + 130.0 * c4 - 20.0 * c6))
        / (2304.0 * s8);
    let a3 = (640.0 - 45.0 * bb - 12.0 * (143.0 + 3.0 * bb) * c2 + 36.0 * (93.0 - 7.0 * bb) * c4
        - 16.0 * (169.0 - 9.0 * bb) * c6
        + 432.0 * c8
        + 12.0 * bsc * (1.0 + 14.0 * c2 - 38.0 * c4 - 4.0 * c6))
        / (2304.0 * s8);
    let a4 = (-27.0 * bb + 4.0 * (113.0 - 27.0 * bb) * c2 + 12.0 * (13.0 - 9.0 * bb) * c4
        - 1200.0 * c6
        + 592.0 * c8
        + 12.0 * bsc * (9.0 + 6.0 * c2 - 14.0 * c4 + 20.0 * c6))
        / (2304.0 * s8);
    let a5 = (-1408.0 + 261.0 * bb + 4.0 * (1036.0 - 117.0 * bb) * c2
        - 12.0 * (572.0 - 75.0 * bb) * c4
        + 32.0 * (149.0 - 9.0 * bb) * c6
        - 640.0 * c8
        + 6.0 * bsc * (91.0 - 338.0 * c2 + 364.0 * c4 - 72.0 * c6))
        / (1152.0 * s8);
    [a1, a2, a3, a4, a5].map(Dd::to_f64)
}

fn trigonometric_second(beta: f64) -> [f64; 9] {
    let b = Dd::new(beta);
    let (s, c) = (b / 2.0).sin_cos();
    let s8 = s.powi(8);
    let bb = b * b;
    let c2 = c * c;
    let c4 = c2 * c2;
    let c6 = c4 * c2;
    let c8 = c4 * c4;
    let bsc = b * s * c;
    let b1 = (-336.0 - 27.0 * bb - 4.0 * (319.0 - 63.0 * bb) * c2
        + 12.0 * (181.0 - 21.0 * bb) * c4
        - 864.0 * c6
        + 304.0 * c8
        + 12.0 * bsc * (1.0 + 74.0 * c2))
        / (576.0 * s8);
    let b2 = (-144.0 - 27.0 * bb - 4.0 * (451.0 - 63.0 * bb) * c2
        + 84.0 * (23.0 - 3.0 * bb) * c4
        + 288.0 * c6
        - 272.0 * c8
        + 12.0 * bsc * (19.0 + 62.0 * c2))
        / (576.0 * s8);
    let b3 = (224.0 - 9.0 * bb
        + 6.0 * (137.0 - 39.0 * bb) * c2
        + 6.0 * (43.0 + 6.0 * bb) * c4
        + 8.0 * (80.0 + 9.0 * bb) * c6
        - 1944.0 * c8
        + 3.0 * bsc * (131.0 - 242.0 * c2 - 472.0 * c4 - 80.0 * c6))
        / (1152.0 * s8);
    let b4 = (-224.0 - 45.0 * bb + 8.0 * (541.0 - 45.0 * bb) * c2
        - 36.0 * (50.0 - 11.0 * bb) * c4
        - 16.0 * (202.0 - 9.0 * bb) * c6
        + 928.0 * c8
        - 6.0 * bsc * (193.0 + 14.0 * c2 + 236.0 * c4 + 40.0 * c6))
        / (2304.0 * s8);
    let b5 = (-384.0 - 54.0 * bb + 2.0 * (1357.0 - 99.0 * bb) * c2
        - 6.0 * (115.0 - 48.0 * bb) * c4
        - 24.0 * (88.0 - 3.0 * bb) * c6
        + 472.0 * c8
        - 3.0 * bsc * (341.0 - 150.0 * c2 + 176.0 * c4 + 224.0 * c6))
        / (1152.0 * s8);
    let b6 = (-224.0 - 45.0 * bb + 12.0 * (131.0 - 15.0 * bb) * c2
        - 12.0 * (79.0 + 15.0 * bb) * c4
        + 2432.0 * c6
        - 2832.0 * c8
        + 24.0 * bsc * (49.0 - 53.0 * c2 - 43.0 * c4 - 10.0 * c6))
        / (2304.0 * s8);
    let b7 = (-192.0 - 27.0 * bb + 4.0 * (143.0 - 27.0 * bb) * c2 + 12.0 * (115.0 - 9.0 * bb) * c4
        - 1296.0 * c6
        - 464.0 * c8
        + 12.0 * bsc * (6.0 - 38.0 * c4 - 28.0 * c6))
        / (576.0 * s8);
    let b8 =
        (1216.0 + 171.0 * bb - 16.0 * (133.0 - 9.0 * bb) * c2 - 12.0 * (556.0 - 33.0 * bb) * c4
            + 16.0 * (362.0 - 9.0 * bb) * c6
            + 1792.0 * c8
            + 6.0 * bsc * (77.0 - 250.0 * c2 + 476.0 * c4 + 264.0 * c6))
            / (576.0 * s8);
    let b9 = (-480.0 - 27.0 * bb - 4.0 * (41.0 + 27.0 * bb) * c2 + 12.0 * (463.0 - 9.0 * bb) * c4
        - 5568.0 * c6
        + 656.0 * c8
        - 24.0 * bsc * (39.0 - 57.0 * c2 + 17.0 * c4 + 46.0 * c6))
        / (2304.0 * s8);
    [b1, b2, b3, b4, b5, b6, b7, b8, b9].map(Dd::to_f64)
}

/// Shared constants of the algebraic-trigonometric tables.
struct AlgTrig {
    b: Dd,
    sb: Dd,
    cb: Dd,
    s: Dd,
    c: Dd,
    c1: Dd,
    c2: Dd,
    c3: Dd,
    c4: Dd,
}

impl AlgTrig {
    fn new(beta: f64) -> Self {
        let b = Dd::new(beta);
        let (sb, cb) = b.sin_cos();
        let (s, c) = (b / 2.0).sin_cos();
        let e = 2.0 * sb - b - b * cb;
        let f = b - sb;
        AlgTrig {
            b,
            sb,
            cb,
            s,
            c,
            c1: 1.0 / f,
            c2: sb / (e * f),
            c3: 4.0 * (3.0 * b + 4.0 * sb - b * cb) * c / (e * f),
            c4: 4.0 * sb * c / (e * f),
        }
    }
}

/// First-order algebraic-trigonometric constants, ordered to match
/// [`trigonometric_first`] index sets.
fn algtrig_first(beta: f64) -> [f64; 5] {
    let AlgTrig {
        b,
        sb,
        cb,
        s,
        c,
        c1,
        c2,
        c3,
        c4,
    } = AlgTrig::new(beta);
    let bb = b * b;
    let cc = c * c;
    let outer = c1 / 48.0
        * (-3.0 * c3 * (b * s + 2.0 * c - bb * c - 2.0 * c.powi(3))
            + c4 * (6.0 * b * s + b.powi(3) * s + 12.0 * c - 9.0 * bb * c - 12.0 * c.powi(3)
                + 6.0 * b * s * cc));
    let along = c2 / 96.0
        * (c3 * (b * s * (45.0 - 4.0 * bb - 12.0 * cc) + 3.0 * c * (14.0 - 9.0 * bb - 14.0 * cc))
            - c4 * (b * s * (39.0 + 18.0 * cc - bb)
                + c * (78.0 - 36.0 * bb - bb * bb - 6.0 * (2.0 * bb + 13.0) * cc)));
    let across = b * c2 * s / 16.0
        * (c3 * (8.0 - bb - 8.0 * cc - 2.0 * b * s * c)
            + b * c4 * (b + 2.0 * b * cc - 6.0 * s * c));
    let far = c2 / 96.0
        * (c3
            * (b * (15.0 - 2.0 * bb - 84.0 * cc) * s
                + 3.0 * (58.0 - 7.0 * bb - (58.0 - 4.0 * bb) * cc) * c)
            + c4 * (b * (15.0 + bb) * s - 6.0 * b * (25.0 - 2.0 * bb) * s * cc
                + (30.0 - 12.0 * bb - bb * bb - (30.0 - 72.0 * bb) * cc) * c));
    let centre = (-3.0 * c3 * c3 * (4.0 - bb - 4.0 * cb - b * sb)
        - 6.0 * c3 * c4 * (2.0 * bb - 3.0 * b * sb + bb * cb)
        + b * c4 * c4 * (b.powi(3) - 3.0 * bb * sb - 6.0 * b * cb + 6.0 * sb))
        / 96.0;
    [outer, across, along, far, centre].map(Dd::to_f64)
}

fn algtrig_second(beta: f64) -> [f64; 9] {
    let AlgTrig {
        b,
        sb,
        cb,
        s,
        c,
        c1,
        c2,
        c3,
        c4,
    } = AlgTrig::new(beta);
    let bb = b * b;
    let b3 = bb * b;
    let b4 = bb * bb;
    let cc = c * c;
    let bs = b * s;
    let v1 = -c1 / 48.0
        * (3.0 * c3 * (3.0 * bs - 2.0 * c - bb * c + 2.0 * c.powi(3))
            + c4 * (-b * (36.0 + bb) * s + 3.0 * (8.0 + 3.0 * bb - 8.0 * cc + 2.0 * bs * c) * c));
    let v2 = c1 / 48.0
        * (-3.0 * c3 * (bs + (2.0 - bb - 2.0 * cc) * c)
            + c4 * (b * (6.0 + bb) * s + 3.0 * (4.0 - 3.0 * bb - 4.0 * cc + 2.0 * bs * c) * c));
    let v3 = c2 / 96.0
        * (c3 * (b * (51.0 - 4.0 * bb + 12.0 * cc) * s - 7.0 * (6.0 + 3.0 * bb - 6.0 * cc) * c)
            - c4 * (3.0 * b * (69.0 - 5.0 * bb + 2.0 * cc) * s
                - (162.0 + 78.0 * bb + b4 - 6.0 * (27.0 + 2.0 * bb) * cc) * c));
    let v4 = c2 / 96.0
        * (c3
            * (b * (15.0 - 4.0 * bb) * s - 3.0 * (6.0 - bb + 2.0 * (2.0 * bs - 3.0 * c) * c) * c)
            - c4 * (b * (63.0 - 19.0 * bb) * s
                - (66.0 - 18.0 * bb + b4 + 6.0 * (7.0 * bs - (11.0 - 2.0 * bb) * c) * c) * c));
    let v5 = c2 / 16.0
        * (c3 * (-b3 * s - (16.0 - 4.0 * bb - 2.0 * (2.0 * bs + (8.0 - bb) * c) * c) * c)
            + c4 * (5.0 * b3 * s + 2.0 * b * (-4.0 * b + ((6.0 - bb) * s + b * c) * c) * c));
    let v6 = c2 / 48.0
        * (3.0 * c3 * (bs + (2.0 - bb - 2.0 * cc) * c)
            - c4 * (b * (6.0 + bb) * s + 3.0 * (4.0 - 3.0 * bb + 2.0 * (bs - 2.0 * c) * c) * c));
    let v7 = c2 / 96.0
        * (-c3
            * (b * (15.0 + 2.0 * bb) * s
                - 3.0 * (38.0 - bb - 2.0 * (2.0 * bs + (19.0 + 2.0 * bb) * c) * c) * c)
            + c4 * (b * (63.0 + 11.0 * bb) * s
                - (66.0
                    + 6.0 * bb
                    + b4
                    + 6.0 * (b * (19.0 + 2.0 * bb) * s - (11.0 + 8.0 * bb) * c) * c)
                    * c));
    let v8 = b / 96.0
        * (3.0 * c3 * c3 * (b - sb) - 6.0 * c3 * c4 * (4.0 * b - 3.0 * sb - b * cb)
            + c4 * c4 * (48.0 * b + b3 - 30.0 * sb + 3.0 * bb * sb - 18.0 * b * cb));
    let v9 = c2 / 96.0
        * (-c3
            * (b * (15.0 + 2.0 * bb) * s
                - (18.0 + 9.0 * bb + 6.0 * (2.0 * bs - (2.0 * bb + 3.0) * c) * c) * c)
            + c4 * (b * (63.0 + 11.0 * bb) * s
                - (66.0
                    + 18.0 * bb
                    + b4
                    + (6.0 * b * (7.0 + 2.0 * bb) * s - 6.0 * (11.0 + 4.0 * bb) * c) * c)
                    * c));
    [v1, v2, v3, v4, v5, v6, v7, v8, v9].map(Dd::to_f64)
}

/// Every entry of the order-g table by adaptive quadrature to absolute error `tol`.
pub fn tau_quadrature(basis: &TrivariateBasis, g: usize, tol: f64) -> Result<TauTable> {
    if !(1..=2).contains(&g) {
        return Err(Error::DomainError {
            value: g as f64,
            domain: "derivative order 1 or 2".into(),
        });
    }
    let centre = tri_slot(1, 1);
    let flat: [f64; 30] = integrate_triangle(
        |x, y| {
            let j = basis.chart_jets(x, y);
            let mut out = [0.0; 30];
            for z in 0..=g {
                let d = |k: usize| crate::basis::jet_partial(&j[k], z, g - z);
                let dc = d(centre);
                for k in 0..10 {
                    out[10 * z + k] = d(k) * dc;
                }
            }
            out
        },
        basis.beta(),
        tol,
    )?;
    let mut values = [[0.0; 10]; 3];
    for z in 0..=g {
        values[z].copy_from_slice(&flat[10 * z..10 * z + 10]);
    }
    Ok(TauTable {
        family: basis.family(),
        g,
        values,
    })
}

/// Full Gram matrices G[g-1][z][a][b] = int_Delta D^{z,g-z} T_a D^{z,g-z} T_b,
/// used to evaluate the thin-plate energy of a complete control net.
#[derive(Debug, Clone)]
pub struct ThinPlateGram {
    pub family: BasisFamily,
    pub gram: [[[[f64; 10]; 10]; 3]; 2],
}

impl ThinPlateGram {
    pub fn quadrature(basis: &TrivariateBasis, tol: f64) -> Result<Self> {
        const PAIRS: usize = 55;
        const SPLITS: [(usize, usize); 5] = [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)];
        let flat: [f64; 5 * PAIRS] = integrate_triangle(
            |x, y| {
                let j = basis.chart_jets(x, y);
                let mut out = [0.0; 5 * PAIRS];
                for (m, &(g, z)) in SPLITS.iter().enumerate() {
                    let d: [f64; 10] =
                        std::array::from_fn(|k| crate::basis::jet_partial(&j[k], z, g - z));
                    let mut p = 0;
                    for a in 0..10 {
                        for b in a..10 {
                            out[m * PAIRS + p] = d[a] * d[b];
                            p += 1;
                        }
                    }
                }
                out
            },
            basis.beta(),
            tol,
        )?;
        let mut gram = [[[[0.0; 10]; 10]; 3]; 2];
        for (m, &(g, z)) in SPLITS.iter().enumerate() {
            let mut p = 0;
            for a in 0..10 {
                for b in a..10 {
                    gram[g - 1][z][a][b] = flat[m * PAIRS + p];
                    gram[g - 1][z][b][a] = flat[m * PAIRS + p];
                    p += 1;
                }
            }
        }
        Ok(ThinPlateGram {
            family: basis.family(),
            gram,
        })
    }

    /// Thin-plate energy sum_g eps_g sum_z C(g, z) sum_{a,b} <p_a, p_b> G_ab
    /// of a control net given in [`TRI_INDEX`] order.
    pub fn energy(&self, net: &[[f64; 3]; 10], epsilon: &[f64]) -> f64 {
        let mut total = 0.0;
        for (gi, &eps) in epsilon.iter().enumerate().take(2) {
            let g = gi + 1;
            for z in 0..=g {
                let binom = if g == 2 && z == 1 { 2.0 } else { 1.0 };
                let m = &self.gram[gi][z];
                let mut e = 0.0;
                for a in 0..10 {
                    for b in 0..10 {
                        let dot =
                            net[a][0] * net[b][0] + net[a][1] * net[b][1] + net[a][2] * net[b][2];
                        e += m[a][b] * dot;
                    }
                }
                total += eps * binom * e;
            }
        }
        total
    }
}

/// Indices other than the centre, in slot order.
pub fn boundary_indices() -> impl Iterator<Item = (usize, usize)> {
    TRI_INDEX.into_iter().filter(|&i| i != (1, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tabulated_centre_values() {
        let q = tau_closed(BasisFamily::quartic(), 2).unwrap();
        assert_eq!(q.get(0, (1, 1)), 48.0);
        let c = tau_closed(BasisFamily::cubic(), 1).unwrap();
        assert_eq!(c.get(0, (1, 1)), 0.2);
        assert!(matches!(
            tau_closed(BasisFamily::hyperbolic(1.0).unwrap(), 1),
            Err(Error::UnsupportedFamily { .. })
        ));
    }

    #[test]
    fn closed_matches_quadrature() {
        for tag in FamilyTag::ALL {
            if tag == FamilyTag::Hyperbolic {
                continue;
            }
            for fam in BasisFamily::sample_set(tag) {
                let basis = TrivariateBasis::new(fam).unwrap();
                for g in 1..=2 {
                    let c = tau_closed(fam, g).unwrap();
                    let q = tau_quadrature(&basis, g, 1e-11).unwrap();
                    for z in 0..=g {
                        for (k, idx) in TRI_INDEX.iter().enumerate() {
                            let d = (c.values[z][k] - q.values[z][k]).abs();
                            assert!(d < 1e-8, "{fam} g={g} z={z} {idx:?}: {d:e}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn index_sums_vanish() {
        for tag in FamilyTag::ALL {
            for fam in BasisFamily::sample_set(tag) {
                let set = TauSet::for_family(fam, 1e-11).unwrap();
                for g in 1..=2 {
                    for z in 0..=g {
                        let s = set.order(g).index_sum(z);
                        let tol = if tag == FamilyTag::Hyperbolic {
                            1e-9
                        } else {
                            1e-12
                        };
                        assert!(s.abs() < tol, "{fam} g={g} z={z}: {s:e}");
                    }
                }
            }
        }
    }

    #[test]
    fn gram_centre_column_is_tau() {
        let fam = BasisFamily::trigonometric(PI / 2.0).unwrap();
        let basis = TrivariateBasis::new(fam).unwrap();
        let gram = ThinPlateGram::quadrature(&basis, 1e-11).unwrap();
        for g in 1..=2 {
            let t = tau_closed(fam, g).unwrap();
            for z in 0..=g {
                for k in 0..10 {
                    let d = (gram.gram[g - 1][z][k][tri_slot(1, 1)] - t.values[z][k]).abs();
                    assert!(d < 1e-8);
                }
            }
        }
        let flat = [[1.0, -2.0, 0.5]; 10];
        assert!(gram.energy(&flat, &[1.0, 1.0]).abs() < 1e-9);
    }
}
