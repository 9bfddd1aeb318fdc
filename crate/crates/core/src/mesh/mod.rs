//! Triangle meshes in half-edge form, vertex normals and edge tangents.

mod obj;
pub mod shapes;

pub use obj::{load_obj, load_obj_file, write_obj};

use crate::error::{Error, Result};
use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use std::collections::HashMap;

pub type Vec3 = Vector3<f64>;

/// An oriented triangle mesh.
///
/// Half-edge `3 f + c` runs from corner `c` to corner `c + 1 (mod 3)` of face
/// `f`, so `next` and `face` are implicit. Twins are stored explicitly and
/// are absent on the boundary.
#[derive(Debug, Clone)]
pub struct HalfEdgeMesh {
    positions: Vec<Vec3>,
    faces: Vec<[usize; 3]>,
    twin: Vec<Option<usize>>,
    /// Undirected edges (lo, hi) with lo < hi, in order of first appearance.
    edges: Vec<(usize, usize)>,
    edge_of_half: Vec<usize>,
    edge_lookup: HashMap<(usize, usize), usize>,
    directed: HashMap<(usize, usize), usize>,
}

impl HalfEdgeMesh {
    pub fn from_faces(positions: Vec<Vec3>, faces: Vec<[usize; 3]>) -> Result<Self> {
        if positions.is_empty() || faces.is_empty() {
            return Err(Error::EmptyMesh);
        }
        let n = positions.len();
        let mut directed: HashMap<(usize, usize), usize> = HashMap::with_capacity(3 * faces.len());
        for (f, face) in faces.iter().enumerate() {
            for c in 0..3 {
                let (a, b) = (face[c], face[(c + 1) % 3]);
                if a >= n || b >= n {
                    return Err(Error::IndexOutOfRange {
                        line: 0,
                        index: a.max(b) as i64,
                        count: n,
                    });
                }
                if a == b || directed.insert((a, b), 3 * f + c).is_some() {
                    return Err(Error::NonManifoldEdge { from: a, to: b });
                }
            }
        }
        let mut twin = vec![None; 3 * faces.len()];
        let mut edges = Vec::new();
        let mut edge_of_half = vec![usize::MAX; 3 * faces.len()];
        let mut edge_lookup = HashMap::new();
        for (f, face) in faces.iter().enumerate() {
            for c in 0..3 {
                let h = 3 * f + c;
                let (a, b) = (face[c], face[(c + 1) % 3]);
                twin[h] = directed.get(&(b, a)).copied();
                let key = (a.min(b), a.max(b));
                let e = *edge_lookup.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edges.len() - 1
                });
                edge_of_half[h] = e;
            }
        }
        Ok(HalfEdgeMesh {
            positions,
            faces,
            twin,
            edges,
            edge_of_half,
            edge_lookup,
            directed,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.positions.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_boundary_edges(&self) -> usize {
        self.twin.iter().filter(|t| t.is_none()).count()
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> Vec3 {
        self.positions[v]
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> [usize; 3] {
        self.faces[f]
    }

    pub fn origin(&self, h: usize) -> usize {
        self.faces[h / 3][h % 3]
    }

    pub fn target(&self, h: usize) -> usize {
        self.faces[h / 3][(h % 3 + 1) % 3]
    }

    pub fn next(&self, h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 1) % 3
    }

    pub fn half_edge_face(&self, h: usize) -> usize {
        h / 3
    }

    pub fn twin(&self, h: usize) -> Option<usize> {
        self.twin[h]
    }

    pub fn n_half_edges(&self) -> usize {
        self.twin.len()
    }

    /// Undirected edges as (lo, hi) vertex pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_of_half_edge(&self, h: usize) -> usize {
        self.edge_of_half[h]
    }

    /// Index of the undirected edge joining `a` and `b`, if any.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_lookup.get(&(a.min(b), a.max(b))).copied()
    }

    /// The half-edges of an undirected edge: the one running lo -> hi and
    /// the one running hi -> lo, each absent on a boundary side.
    pub fn edge_half_edges(&self, e: usize) -> (Option<usize>, Option<usize>) {
        let (lo, hi) = self.edges[e];
        (self.half_edge(lo, hi), self.half_edge(hi, lo))
    }

    /// The half-edge running from `a` to `b`, if any.
    pub fn half_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.directed.get(&(a, b)).copied()
    }

    /// Squared diagonal of the axis-aligned bounding box.
    pub fn bbox_diagonal_sq(&self) -> f64 {
        let mut lo = self.positions[0];
        let mut hi = self.positions[0];
        for p in &self.positions {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        (hi - lo).norm_squared()
    }

    /// The mesh with every vertex mapped through `x -> a x + t`.
    pub fn transformed(&self, a: &Matrix3<f64>, t: &Vec3) -> HalfEdgeMesh {
        let mut m = self.clone();
        for p in m.positions.iter_mut() {
            *p = a * *p + t;
        }
        m
    }

    /// Connectivity invariants: twin is an involution that reverses the
    /// edge, and every face is a 3-cycle of `next`.
    pub fn check_invariants(&self) -> bool {
        (0..self.n_half_edges()).all(|h| {
            let cyc = self.next(self.next(self.next(h))) == h;
            let tw = match self.twin[h] {
                Some(t) => {
                    self.twin[t] == Some(h)
                        && self.origin(t) == self.target(h)
                        && self.target(t) == self.origin(h)
                }
                None => true,
            };
            cyc && tw
        })
    }
}

/// Unit vertex normals and unit tangents of every directed edge.
#[derive(Debug, Clone)]
pub struct VertexFrame {
    pub normals: Vec<Vec3>,
    /// Per undirected edge (lo, hi): `[t_{lo,hi}, t_{hi,lo}]`.
    pub tangents: Vec<[Vec3; 2]>,
    edge_lookup: HashMap<(usize, usize), usize>,
}

impl VertexFrame {
    /// Tangent t_{i,j} at vertex i pointing towards j.
    pub fn tangent(&self, i: usize, j: usize) -> Option<Vec3> {
        let e = *self.edge_lookup.get(&(i.min(j), i.max(j)))?;
        Some(self.tangents[e][usize::from(i > j)])
    }

    pub fn normal(&self, i: usize) -> Vec3 {
        self.normals[i]
    }
}

/// Interior angle at `p` between the directions to `a` and `b`.
fn wedge_angle(p: &Vec3, a: &Vec3, b: &Vec3) -> f64 {
    let u = a - p;
    let v = b - p;
    u.cross(&v).norm().atan2(u.dot(&v))
}

/// Angle-weighted averaged unit normals.
pub fn angle_weighted_normals(mesh: &HalfEdgeMesh) -> Result<Vec<Vec3>> {
    let threshold = 1e-14 * mesh.bbox_diagonal_sq();
    let mut sums = vec![Vec3::zeros(); mesh.n_vertices()];
    let mut used = vec![false; mesh.n_vertices()];
    for (f, face) in mesh.faces().iter().enumerate() {
        let p = face.map(|v| mesh.position(v));
        let cross = (p[1] - p[0]).cross(&(p[2] - p[0]));
        let area = 0.5 * cross.norm();
        if !(area > threshold) {
            return Err(Error::DegenerateFace { face: f, area });
        }
        let n = cross / (2.0 * area);
        for c in 0..3 {
            let w = wedge_angle(&p[c], &p[(c + 1) % 3], &p[(c + 2) % 3]);
            sums[face[c]] += w * n;
            used[face[c]] = true;
        }
    }
    sums.into_iter()
        .enumerate()
        .map(|(v, s)| {
            let len = s.norm();
            if !used[v] {
                // Vertices outside every face carry no frame.
                Ok(Vec3::zeros())
            } else if len > 1e-12 {
                Ok(s / len)
            } else {
                Err(Error::ZeroNormal { vertex: v })
            }
        })
        .collect()
}

/// Unit tangent at `p_i` towards `p_j` in the plane orthogonal to `n_i`.
pub fn edge_tangent(pi: &Vec3, pj: &Vec3, ni: &Vec3) -> Option<Vec3> {
    let f = -ni;
    let d = pj - pi;
    let b = d.cross(&f);
    let len = b.norm();
    if !(len >= 1e-12 * d.norm()) || len == 0.0 {
        return None;
    }
    let b = b / len;
    Some(f.cross(&b))
}

/// Tangents t_{i,j} = f_i x b_{i,j} with f_i = -n_i and
/// b_{i,j} = normalize((p_j - p_i) x f_i), for both directions of every edge.
pub fn edge_tangents(mesh: &HalfEdgeMesh, normals: &[Vec3]) -> Result<VertexFrame> {
    let tangents = mesh
        .edges()
        .par_iter()
        .map(|&(lo, hi)| {
            let (pl, ph) = (mesh.position(lo), mesh.position(hi));
            let t_lh = edge_tangent(&pl, &ph, &normals[lo])
                .ok_or(Error::ParallelEdgeNormal { from: lo, to: hi })?;
            let t_hl = edge_tangent(&ph, &pl, &normals[hi])
                .ok_or(Error::ParallelEdgeNormal { from: hi, to: lo })?;
            Ok([t_lh, t_hl])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexFrame {
        normals: normals.to_vec(),
        tangents,
        edge_lookup: mesh.edge_lookup.clone(),
    })
}

/// Normals followed by tangents.
pub fn vertex_frames(mesh: &HalfEdgeMesh) -> Result<VertexFrame> {
    let normals = angle_weighted_normals(mesh)?;
    edge_tangents(mesh, &normals)
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;
    use nalgebra::Rotation3;

    #[test]
    fn flat_interior_normal_is_plane_normal() {
        let m = flat_grid(4);
        let ns = angle_weighted_normals(&m).unwrap();
        for n in &ns {
            assert!((n - Vec3::z()).norm() < 1e-15);
        }
    }

    #[test]
    fn cube_corner_normals_are_diagonals() {
        let m = cube();
        let ns = angle_weighted_normals(&m).unwrap();
        for (p, n) in m.positions().iter().zip(&ns) {
            assert!((n - p / 3f64.sqrt()).norm() < 1e-15, "{n} at {p}");
        }
    }

    #[test]
    fn needle_face_is_degenerate() {
        let pos = vec![Vec3::zeros(), Vec3::x(), Vec3::new(0.5, 1e-17, 0.0)];
        let m = HalfEdgeMesh::from_faces(pos, vec![[0, 1, 2]]).unwrap();
        assert!(matches!(
            angle_weighted_normals(&m),
            Err(Error::DegenerateFace { face: 0, .. })
        ));
    }

    #[test]
    fn planar_tangents_follow_edges() {
        let m = flat_grid(3);
        let frames = vertex_frames(&m).unwrap();
        for &(a, b) in m.edges() {
            let d = (m.position(b) - m.position(a)).normalize();
            assert!((frames.tangent(a, b).unwrap() - d).norm() < 1e-15);
            assert!((frames.tangent(b, a).unwrap() + d).norm() < 1e-15);
        }
    }

    #[test]
    fn tangents_are_unit_and_orthogonal() {
        let m = uv_sphere(6, 9, 0.3);
        let frames = vertex_frames(&m).unwrap();
        for &(a, b) in m.edges() {
            for (i, j) in [(a, b), (b, a)] {
                let t = frames.tangent(i, j).unwrap();
                assert!((t.norm() - 1.0).abs() < 1e-14);
                assert!(t.dot(&frames.normal(i)).abs() < 1e-12);
                // The tangent leans towards the neighbour.
                assert!(t.dot(&(m.position(j) - m.position(i))) > 0.0);
            }
        }
    }

    #[test]
    fn edge_along_normal_is_rejected() {
        assert!(edge_tangent(&Vec3::zeros(), &Vec3::z(), &Vec3::z()).is_none());
        assert!(edge_tangent(&Vec3::zeros(), &Vec3::x(), &Vec3::z()).is_some());
    }

    #[test]
    fn frames_rotate_with_the_mesh() {
        let m = icosphere(1);
        let r = Rotation3::from_euler_angles(0.3, -1.1, 2.0);
        let t = Vec3::new(1.0, -2.0, 0.5);
        let moved = m.transformed(r.matrix(), &t);
        let f0 = vertex_frames(&m).unwrap();
        let f1 = vertex_frames(&moved).unwrap();
        for v in 0..m.n_vertices() {
            assert!((r * f0.normal(v) - f1.normal(v)).norm() < 1e-12);
        }
        for (e0, e1) in f0.tangents.iter().zip(&f1.tangents) {
            for k in 0..2 {
                assert!((r * e0[k] - e1[k]).norm() < 1e-12);
            }
        }
    }
}
