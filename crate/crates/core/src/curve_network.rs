//! Strain-energy optimal boundary curves.
//!
//! Every mesh edge (i, j) becomes the curve
//! `c(x) = p_i B_0(x) + (p_i + l_ij t_ij) B_1(x) + (p_j + l_ji t_ji) B_2(x) + p_j B_3(x)`
//! on [0, beta], where the two tangent scalings minimise
//! `sum_r theta_r int |c^(r)|^2`. The energy is the quadratic form
//! `sum_{k,l} phi_{k,l} <P_k, P_l>` in the control points, so the minimiser
//! solves a 2x2 linear system.

use crate::basis::UnivariateBasis;
use crate::error::{Error, Result};
use crate::mesh::{HalfEdgeMesh, Vec3, VertexFrame};
use crate::tables::PhiTable;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// Tangent scalings of one edge and the determinant of their system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingPair {
    pub lambda_ij: f64,
    pub lambda_ji: f64,
    pub det: f64,
}

/// Solve the stationarity system of the strain energy for one edge.
///
/// The right-hand side is written in terms of `p_j - p_i`, which uses the
/// vanishing row sums of the table; the solution is then exactly invariant
/// under translations of the input.
pub fn solve_edge(
    pi: &Vec3,
    pj: &Vec3,
    tij: &Vec3,
    tji: &Vec3,
    phi: &PhiTable,
) -> Result<ScalingPair> {
    let d = pj - pi;
    let tau = tij.dot(tji);
    let (p11, p12, p22) = (phi.get(1, 1), phi.get(1, 2), phi.get(2, 2));
    let rhs1 = -(phi.get(1, 2) + phi.get(1, 3)) * d.dot(tij);
    let rhs2 = (phi.get(2, 0) + phi.get(2, 1)) * d.dot(tji);
    let det = p11 * p22 - tau * tau * p12 * p12;
    if !(det > 1e-14) {
        return Err(Error::NonPositiveDeterminant { det });
    }
    Ok(ScalingPair {
        lambda_ij: (p22 * rhs1 - tau * p12 * rhs2) / det,
        lambda_ji: (p11 * rhs2 - tau * p12 * rhs1) / det,
        det,
    })
}

/// The four control points p_i, p_i + l_ij t_ij, p_j + l_ji t_ji, p_j.
pub fn control_points(
    pi: &Vec3,
    pj: &Vec3,
    tij: &Vec3,
    tji: &Vec3,
    l_ij: f64,
    l_ji: f64,
) -> [Vec3; 4] {
    [*pi, pi + l_ij * tij, pj + l_ji * tji, *pj]
}

/// Strain energy `sum_{k,l} phi_{k,l} <P_k, P_l>` of a control polygon.
pub fn strain_energy(ctrl: &[Vec3; 4], phi: &PhiTable) -> f64 {
    let mut e = 0.0;
    for k in 0..4 {
        for l in 0..4 {
            e += phi.get(k, l) * ctrl[k].dot(&ctrl[l]);
        }
    }
    e
}

/// Partial derivatives of the strain energy with respect to the two
/// scalings, at the control polygon built from them.
pub fn energy_gradient(ctrl: &[Vec3; 4], tij: &Vec3, tji: &Vec3, phi: &PhiTable) -> [f64; 2] {
    let row = |k: usize| (0..4).fold(Vec3::zeros(), |acc, l| acc + phi.get(k, l) * ctrl[l]);
    [2.0 * tij.dot(&row(1)), 2.0 * tji.dot(&row(2))]
}

/// Curve value or derivative of order r at x for a control polygon.
pub fn eval_polygon(basis: &UnivariateBasis, ctrl: &[Vec3; 4], x: f64, r: usize) -> Result<Vec3> {
    basis.check_domain(x)?;
    if r > basis.max_derivative_order() {
        return Err(Error::DomainError {
            value: r as f64,
            domain: "derivative order 0..=2".into(),
        });
    }
    let b = if r == 0 {
        basis.funcs(x)
    } else {
        let all = basis.eval_all(x);
        [0, 1, 2, 3].map(|k| all[k][r])
    };
    Ok(ctrl[0] * b[0] + ctrl[1] * b[1] + ctrl[2] * b[2] + ctrl[3] * b[3])
}

/// Solved curves on every edge of a mesh.
///
/// Scalings are stored once per undirected edge (lo, hi), so the two faces
/// sharing an edge see the same curve.
#[derive(Debug, Clone)]
pub struct CurveNetwork {
    pub basis: UnivariateBasis,
    pub phi: PhiTable,
    edges: Vec<(usize, usize)>,
    solutions: Vec<ScalingPair>,
    /// Control points in the lo -> hi direction.
    ctrl: Vec<[Vec3; 4]>,
    lookup: HashMap<(usize, usize), usize>,
}

impl CurveNetwork {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Solutions in lo -> hi orientation, parallel to [`CurveNetwork::edges`].
    pub fn solutions(&self) -> &[ScalingPair] {
        &self.solutions
    }

    pub fn beta(&self) -> f64 {
        self.basis.beta()
    }

    fn index(&self, i: usize, j: usize) -> Result<usize> {
        self.lookup
            .get(&(i.min(j), i.max(j)))
            .copied()
            .ok_or(Error::MissingEdgeSolution { from: i, to: j })
    }

    /// Scalings (l_ij, l_ji) seen from i towards j.
    pub fn lambda(&self, i: usize, j: usize) -> Result<(f64, f64)> {
        let s = self.solutions[self.index(i, j)?];
        Ok(if i < j {
            (s.lambda_ij, s.lambda_ji)
        } else {
            (s.lambda_ji, s.lambda_ij)
        })
    }

    /// Control polygon of the curve running from i to j.
    pub fn control_points(&self, i: usize, j: usize) -> Result<[Vec3; 4]> {
        let mut c = self.ctrl[self.index(i, j)?];
        if i > j {
            c.reverse();
        }
        Ok(c)
    }

    /// Value (r = 0) or r-th derivative of c_{i,j} at x in [0, beta].
    pub fn eval_curve(&self, i: usize, j: usize, x: f64, r: usize) -> Result<Vec3> {
        let c = self.control_points(i, j)?;
        eval_polygon(&self.basis, &c, x, r)
    }

    /// Strain energy of edge (i, j) for arbitrary scalings.
    pub fn edge_energy(
        &self,
        frames: &VertexFrame,
        mesh: &HalfEdgeMesh,
        i: usize,
        j: usize,
        l_ij: f64,
        l_ji: f64,
    ) -> Result<f64> {
        self.index(i, j)?;
        let tij = frames
            .tangent(i, j)
            .ok_or(Error::MissingEdgeSolution { from: i, to: j })?;
        let tji = frames
            .tangent(j, i)
            .ok_or(Error::MissingEdgeSolution { from: j, to: i })?;
        let c = control_points(&mesh.position(i), &mesh.position(j), &tij, &tji, l_ij, l_ji);
        Ok(strain_energy(&c, &self.phi))
    }

    /// Sample every curve at `samples + 1` uniformly spaced parameters.
    pub fn polylines(&self, samples: usize) -> Vec<Vec<Vec3>> {
        let beta = self.beta();
        self.ctrl
            .iter()
            .map(|c| {
                (0..=samples)
                    .map(|m| {
                        let x = beta * m as f64 / samples as f64;
                        eval_polygon(&self.basis, c, x, 0).expect("parameter inside the domain")
                    })
                    .collect()
            })
            .collect()
    }
}

/// Solve every edge of the mesh independently.
pub fn build_network(
    mesh: &HalfEdgeMesh,
    frames: &VertexFrame,
    basis: &UnivariateBasis,
    phi: &PhiTable,
) -> Result<CurveNetwork> {
    let solved = mesh
        .edges()
        .par_iter()
        .map(|&(lo, hi)| {
            let tag = |e: Error| Error::AtEdge {
                from: lo,
                to: hi,
                source: Box::new(e),
            };
            let missing = Error::MissingEdgeSolution { from: lo, to: hi };
            let tij = frames.tangent(lo, hi).ok_or_else(|| tag(missing))?;
            let tji = frames
                .tangent(hi, lo)
                .ok_or_else(|| tag(Error::MissingEdgeSolution { from: hi, to: lo }))?;
            let (pi, pj) = (mesh.position(lo), mesh.position(hi));
            let s = solve_edge(&pi, &pj, &tij, &tji, phi).map_err(tag)?;
            Ok((
                s,
                control_points(&pi, &pj, &tij, &tji, s.lambda_ij, s.lambda_ji),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (solutions, ctrl) = solved.into_iter().unzip();
    let lookup = mesh
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &k)| (k, e))
        .collect();
    Ok(CurveNetwork {
        basis: basis.clone(),
        phi: phi.clone(),
        edges: mesh.edges().to_vec(),
        solutions,
        ctrl,
        lookup,
    })
}
