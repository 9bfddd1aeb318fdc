//! Thin-plate optimal C0 triangular patches.
//!
//! Face (i, j, k) gets the patch `s(u, v, w) = sum p_{r,s,t} T_{r,s,t}(u, v, w)`
//! on the domain u + v + w = beta. The weight u belongs to vertex i, v to k
//! and w to j, so the three boundary traces are
//!
//! * `c_{i,j}(x) = s(beta - x, 0, x)`
//! * `c_{j,k}(x) = s(0, x, beta - x)`
//! * `c_{k,i}(x) = s(x, beta - x, 0)`
//!
//! The nine boundary control points come from the curve network and only the
//! centre point p_{1,1,1} is free; it minimises the thin-plate energy.

use crate::basis::{jet_partial, tri_slot, BarycentricPoint, TrivariateBasis};
use crate::curve_network::CurveNetwork;
use crate::error::{Error, Result};
use crate::mesh::{HalfEdgeMesh, Vec3};
use crate::tables::{EnergyWeights, TauSet, ThinPlateGram};
use rayon::prelude::*;

const CENTRE: usize = tri_slot(1, 1);

/// The ten control points of one face in [`crate::basis::TRI_INDEX`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlNet {
    pub face: [usize; 3],
    pub points: [Vec3; 10],
}

impl ControlNet {
    pub fn get(&self, r: usize, s: usize) -> Vec3 {
        self.points[tri_slot(r, s)]
    }

    fn set(&mut self, r: usize, s: usize, p: Vec3) {
        self.points[tri_slot(r, s)] = p;
    }

    /// Points as plain arrays, for energy evaluation.
    pub fn as_arrays(&self) -> [[f64; 3]; 10] {
        self.points.map(|p| [p.x, p.y, p.z])
    }
}

/// The nine boundary points of face (i, j, k), with the centre left at the
/// origin.
pub fn assemble_boundary_net(face: [usize; 3], network: &CurveNetwork) -> Result<ControlNet> {
    let [i, j, k] = face;
    let mut net = ControlNet {
        face,
        points: [Vec3::zeros(); 10],
    };
    let ij = network.control_points(i, j)?;
    net.set(3, 0, ij[0]);
    net.set(2, 0, ij[1]);
    net.set(1, 0, ij[2]);
    net.set(0, 0, ij[3]);
    let jk = network.control_points(j, k)?;
    net.set(0, 1, jk[1]);
    net.set(0, 2, jk[2]);
    net.set(0, 3, jk[3]);
    let ki = network.control_points(k, i)?;
    net.set(1, 2, ki[1]);
    net.set(2, 1, ki[2]);
    Ok(net)
}

fn binomial(g: usize, z: usize) -> f64 {
    if g == 2 && z == 1 {
        2.0
    } else {
        1.0
    }
}

/// Weights w_a of the boundary points and the centre coefficient, such
/// that the energy gradient in p_{1,1,1} is `2 (den p_{1,1,1} + sum_a w_a p_a)`.
pub fn interior_weights(taus: &TauSet, epsilon: &EnergyWeights) -> Result<([f64; 10], f64)> {
    if epsilon.len() > 2 {
        return Err(Error::Config(format!(
            "thin-plate energy supports derivative orders up to 2, got {} weights",
            epsilon.len()
        )));
    }
    let mut w = [0.0; 10];
    for g in 1..=2 {
        let eps = epsilon.order(g);
        if eps == 0.0 {
            continue;
        }
        let t = taus.order(g);
        for z in 0..=g {
            let c = eps * binomial(g, z);
            for (a, wa) in w.iter_mut().enumerate() {
                *wa += c * t.values[z][a];
            }
        }
    }
    let den = w[CENTRE];
    w[CENTRE] = 0.0;
    Ok((w, den))
}

/// The thin-plate optimal centre point
/// `p_{1,1,1} = - sum_{a != centre} w_a p_a / den`.
///
/// The weights sum to `-den` because the tables have vanishing index sums,
/// so the quotient is evaluated relative to p_{3,0,0}; this keeps the result
/// exactly equivariant under translations.
pub fn solve_interior_point(
    net: &ControlNet,
    taus: &TauSet,
    epsilon: &EnergyWeights,
) -> Result<Vec3> {
    let (w, den) = interior_weights(taus, epsilon)?;
    if !(den.abs() > 1e-14) {
        return Err(Error::ZeroDenominator { value: den });
    }
    let origin = net.get(3, 0);
    let mut acc = Vec3::zeros();
    for (a, p) in net.points.iter().enumerate() {
        if a != CENTRE {
            acc += w[a] * (p - origin);
        }
    }
    Ok(origin - acc / den)
}

/// Complete net of one face.
pub fn build_patch(
    face: [usize; 3],
    network: &CurveNetwork,
    taus: &TauSet,
    epsilon: &EnergyWeights,
) -> Result<ControlNet> {
    let mut net = assemble_boundary_net(face, network)?;
    let centre = solve_interior_point(&net, taus, epsilon)?;
    net.set(1, 1, centre);
    Ok(net)
}

/// Nets of all faces, in face order.
pub fn build_patches(
    mesh: &HalfEdgeMesh,
    network: &CurveNetwork,
    taus: &TauSet,
    epsilon: &EnergyWeights,
) -> Result<Vec<ControlNet>> {
    mesh.faces()
        .par_iter()
        .enumerate()
        .map(|(f, &face)| {
            build_patch(face, network, taus, epsilon).map_err(|e| Error::AtFace {
                face: f,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Patch point at a barycentric point of the domain.
pub fn eval_patch(net: &ControlNet, basis: &TrivariateBasis, p: BarycentricPoint) -> Result<Vec3> {
    p.check(basis.beta())?;
    let t = basis.eval_all(p);
    Ok(net
        .points
        .iter()
        .zip(t)
        .fold(Vec3::zeros(), |acc, (q, w)| acc + q * w))
}

/// Position and first chart partials (d/dx, d/dy) at chart point (x, y),
/// where u = x, v = y, w = beta - x - y.
pub fn chart_partials(net: &ControlNet, basis: &TrivariateBasis, x: f64, y: f64) -> [Vec3; 3] {
    let jets = basis.chart_jets(x, y);
    let mut out = [Vec3::zeros(); 3];
    for (q, j) in net.points.iter().zip(&jets) {
        out[0] += q * jet_partial(j, 0, 0);
        out[1] += q * jet_partial(j, 1, 0);
        out[2] += q * jet_partial(j, 0, 1);
    }
    out
}

/// Unit normal at chart point (x, y), oriented like the face (i, j, k).
///
/// In the chart the corners i, j, k sit at (beta, 0), (0, 0), (0, beta),
/// which is clockwise, so the face normal is d/dy x d/dx.
pub fn patch_normal(net: &ControlNet, basis: &TrivariateBasis, x: f64, y: f64) -> Result<Vec3> {
    BarycentricPoint::from_chart(x, y, basis.beta()).check(basis.beta())?;
    let [_, sx, sy] = chart_partials(net, basis, x, y);
    let n = sy.cross(&sx);
    let len = n.norm();
    if !(len > 1e-12 * sx.norm() * sy.norm()) {
        return Err(Error::DegenerateNormal);
    }
    Ok(n / len)
}

/// Chart coordinates of the point at parameter x on the trace of face
/// corner `side` (0 for edge i->j, 1 for j->k, 2 for k->i).
pub fn edge_chart_point(side: usize, x: f64, beta: f64) -> (f64, f64) {
    match side {
        0 => (beta - x, 0.0),
        1 => (0.0, x),
        _ => (x, beta - x),
    }
}

/// Thin-plate energy of a net through the full Gram matrices.
pub fn thin_plate_energy(net: &ControlNet, gram: &ThinPlateGram, epsilon: &EnergyWeights) -> f64 {
    gram.energy(&net.as_arrays(), epsilon.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{BasisFamily, UnivariateBasis};
    use crate::curve_network::build_network;
    use crate::mesh::{shapes, vertex_frames};
    use crate::tables::PhiTable;

    fn setup(fam: BasisFamily) -> (HalfEdgeMesh, CurveNetwork, TauSet, TrivariateBasis) {
        let m = shapes::icosphere(1);
        let frames = vertex_frames(&m).unwrap();
        let uni = UnivariateBasis::new(fam).unwrap();
        let phi = PhiTable::closed_combined(fam, &EnergyWeights::new(vec![1.0]).unwrap()).unwrap();
        let net = build_network(&m, &frames, &uni, &phi).unwrap();
        let taus = TauSet::for_family(fam, 1e-11).unwrap();
        (m, net, taus, TrivariateBasis::new(fam).unwrap())
    }

    #[test]
    fn boundary_points_follow_the_curves() {
        let (m, network, _, _) = setup(BasisFamily::cubic());
        let [i, j, k] = m.face(3);
        let net = assemble_boundary_net([i, j, k], &network).unwrap();
        let frames = vertex_frames(&m).unwrap();
        let pt = |a: usize| m.position(a);
        let l = |a: usize, b: usize| network.lambda(a, b).unwrap().0;
        let t = |a: usize, b: usize| frames.tangent(a, b).unwrap();
        let expect = [
            ((3, 0), pt(i)),
            ((0, 0), pt(j)),
            ((0, 3), pt(k)),
            ((2, 0), pt(i) + l(i, j) * t(i, j)),
            ((1, 0), pt(j) + l(j, i) * t(j, i)),
            ((0, 1), pt(j) + l(j, k) * t(j, k)),
            ((0, 2), pt(k) + l(k, j) * t(k, j)),
            ((1, 2), pt(k) + l(k, i) * t(k, i)),
            ((2, 1), pt(i) + l(i, k) * t(i, k)),
        ];
        for ((r, s), p) in expect {
            assert!((net.get(r, s) - p).norm() < 1e-15, "p_{r}{s}");
        }
    }

    #[test]
    fn traces_equal_curves() {
        for fam in [
            BasisFamily::cubic(),
            BasisFamily::trigonometric(2.0).unwrap(),
            BasisFamily::algebraic_trigonometric(3.0).unwrap(),
        ] {
            let (m, network, taus, tri) = setup(fam);
            let eps = EnergyWeights::new(vec![1.0, 1.0]).unwrap();
            let beta = fam.beta;
            for f in [0, 7, 31] {
                let face = m.face(f);
                let net = build_patch(face, &network, &taus, &eps).unwrap();
                for side in 0..3 {
                    let (a, b) = (face[side], face[(side + 1) % 3]);
                    for n in 0..=50 {
                        let x = beta * n as f64 / 50.0;
                        let (cx, cy) = edge_chart_point(side, x, beta);
                        let p = BarycentricPoint::from_chart(cx, cy, beta);
                        let s = eval_patch(&net, &tri, p).unwrap();
                        let c = network.eval_curve(a, b, x, 0).unwrap();
                        assert!((s - c).norm() < 1e-11, "{fam} side {side} x {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn constant_and_planar_nets() {
        let fam = BasisFamily::quartic();
        let taus = TauSet::for_family(fam, 1e-11).unwrap();
        let eps = EnergyWeights::new(vec![1.0]).unwrap();
        let (w, den) = interior_weights(&taus, &eps).unwrap();
        assert_eq!(den, 8.0 / 5.0);
        assert!((w.iter().sum::<f64>() + den).abs() < 1e-14);
        let q = Vec3::new(0.3, -1.2, 2.5);
        let net = ControlNet {
            face: [0, 1, 2],
            points: [q; 10],
        };
        let p = solve_interior_point(&net, &taus, &EnergyWeights::new(vec![1.0, 1.0]).unwrap())
            .unwrap();
        assert!((p - q).norm() < 1e-15);
        let mut planar = net.clone();
        for (a, pt) in planar.points.iter_mut().enumerate() {
            *pt = Vec3::new(a as f64 * 0.37, (a * a) as f64 * 0.11, 0.0);
        }
        let p = solve_interior_point(&planar, &taus, &eps).unwrap();
        assert!(p.z.abs() < 1e-12);
    }

    #[test]
    fn normals_are_oriented_and_match_finite_differences() {
        let (m, network, taus, tri) = setup(BasisFamily::trigonometric(1.0).unwrap());
        let eps = EnergyWeights::new(vec![1.0]).unwrap();
        let face = m.face(5);
        let net = build_patch(face, &network, &taus, &eps).unwrap();
        let (x, y) = (0.3, 0.25);
        let n = patch_normal(&net, &tri, x, y).unwrap();
        let centroid = (m.position(face[0]) + m.position(face[1]) + m.position(face[2])) / 3.0;
        assert!(n.dot(&centroid) > 0.0);
        let h = 1e-6;
        let s = |x: f64, y: f64| {
            eval_patch(&net, &tri, BarycentricPoint::from_chart(x, y, 1.0)).unwrap()
        };
        let sx = (s(x + h, y) - s(x - h, y)) / (2.0 * h);
        let sy = (s(x, y + h) - s(x, y - h)) / (2.0 * h);
        let fd = sy.cross(&sx).normalize();
        assert!(fd.angle(&n) < 1e-5);
        let mut flipped = net.clone();
        flipped.face = [face[0], face[2], face[1]];
        // Swapping j and k exchanges the roles of v and w.
        for r in 0..=3 {
            for s in 0..=3 - r {
                flipped.set(r, s, net.get(r, 3 - r - s));
            }
        }
        let (fx, fy) = (x, 1.0 - x - y);
        let nf = patch_normal(&flipped, &tri, fx, fy).unwrap();
        assert!((nf + n).norm() < 1e-12);
    }

    #[test]
    fn zero_denominator_is_reported() {
        let taus = TauSet::for_family(BasisFamily::cubic(), 1e-11).unwrap();
        let mut t = taus.clone();
        t.first.values = [[0.0; 10]; 3];
        let net = ControlNet {
            face: [0, 1, 2],
            points: [Vec3::zeros(); 10],
        };
        assert!(matches!(
            solve_interior_point(&net, &t, &EnergyWeights::new(vec![1.0]).unwrap()),
            Err(Error::ZeroDenominator { .. })
        ));
    }
}
