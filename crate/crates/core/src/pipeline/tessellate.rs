use crate::basis::BarycentricPoint;
use crate::c0_patch::{eval_patch, patch_normal};
use crate::error::{Error, Result};
use crate::mesh::{write_obj, Vec3};
use crate::nielson::NielsonSurface;
use rayon::prelude::*;
use std::io::Write;

/// A triangulated sampling of a surface with one normal per vertex.
///
/// Vertices are numbered mesh vertices first, then the interior lattice
/// points of every edge (in canonical lo -> hi order), then the interior
/// lattice points of every face, so neighbouring faces share their boundary
/// samples exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Tessellation {
    pub level: usize,
    pub positions: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
}

impl Tessellation {
    pub fn write_obj<W: Write + ?Sized>(&self, w: &mut W) -> std::io::Result<()> {
        write_obj(w, &self.positions, Some(&self.normals), &self.faces)
    }
}

/// Lattice coordinates (i, j) of one face, i steps towards corner 1 and j
/// towards corner 2.
fn lattice(n: usize) -> Vec<(usize, usize)> {
    (0..=n)
        .flat_map(|j| (0..=n - j).map(move |i| (i, j)))
        .collect()
}

fn interior_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        (n - 1) * (n - 2) / 2
    }
}

/// Global index of lattice point (i, j) of `face`.
struct Numbering<'a> {
    surface: &'a NielsonSurface,
    n: usize,
}

impl Numbering<'_> {
    fn edge_base(&self) -> usize {
        self.surface.mesh.n_vertices()
    }

    fn face_base(&self) -> usize {
        self.edge_base() + self.surface.mesh.n_edges() * (self.n - 1)
    }

    /// Point m of the edge from a to b, 0 < m < n.
    fn on_edge(&self, a: usize, b: usize, m: usize) -> usize {
        let e = self
            .surface
            .mesh
            .edge_index(a, b)
            .expect("face edge is in the mesh");
        let k = if a < b { m } else { self.n - m };
        self.edge_base() + e * (self.n - 1) + k - 1
    }

    fn interior_local(&self, i: usize, j: usize) -> usize {
        // Interior points have i, j >= 1 and i + j <= n - 1, ordered by j then i.
        let before: usize = (1..j).map(|jj| self.n - 1 - jj).sum();
        before + i - 1
    }

    fn index(&self, face: usize, i: usize, j: usize) -> usize {
        let n = self.n;
        let f = self.surface.mesh.face(face);
        let k = n - i - j;
        match (i, j, k) {
            (_, _, k) if k == n => f[0],
            (i, _, _) if i == n => f[1],
            (_, j, _) if j == n => f[2],
            (i, 0, _) => self.on_edge(f[0], f[1], i),
            (0, j, _) => self.on_edge(f[2], f[0], n - j),
            (_, j, 0) => self.on_edge(f[1], f[2], j),
            _ => self.face_base() + face * interior_count(n) + self.interior_local(i, j),
        }
    }
}

fn lattice_triangles(n: usize) -> Vec<[(usize, usize); 3]> {
    let mut t = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n - j {
            t.push([(i, j), (i + 1, j), (i, j + 1)]);
            if i + j + 2 <= n {
                t.push([(i + 1, j), (i + 1, j + 1), (i, j + 1)]);
            }
        }
    }
    t
}

/// Samples shared by both tessellations: corners, edge points and the
/// triangle list. `interior` fills in the face interiors.
fn tessellate_with<F>(surface: &NielsonSurface, n: usize, interior: F) -> Result<Tessellation>
where
    F: Fn(usize, &[[f64; 3]]) -> Result<Vec<(Vec3, Vec3)>> + Sync,
{
    if n == 0 {
        return Err(Error::Config(
            "tessellation level must be at least 1".into(),
        ));
    }
    let mesh = &surface.mesh;
    let beta = surface.beta();
    let num = Numbering { surface, n };
    let total = num.face_base() + mesh.n_faces() * interior_count(n);
    let mut positions = vec![Vec3::zeros(); total];
    let mut normals = vec![Vec3::zeros(); total];
    for v in 0..mesh.n_vertices() {
        positions[v] = mesh.position(v);
        normals[v] = surface.normals[v];
    }
    let edge_samples = mesh
        .edges()
        .par_iter()
        .enumerate()
        .map(|(e, &(lo, hi))| {
            (1..n)
                .map(|m| {
                    let x = beta * m as f64 / n as f64;
                    let p = surface.network.eval_curve(lo, hi, x, 0)?;
                    let nr = surface.fields.eval(e, x, &surface.nets, &surface.tri)?;
                    Ok((p, nr))
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|err| Error::AtEdge {
                    from: lo,
                    to: hi,
                    source: Box::new(err),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    for (e, samples) in edge_samples.into_iter().enumerate() {
        for (m, (p, nr)) in samples.into_iter().enumerate() {
            let g = num.edge_base() + e * (n - 1) + m;
            positions[g] = p;
            normals[g] = nr;
        }
    }
    let inner: Vec<(usize, usize)> = lattice(n)
        .into_iter()
        .filter(|&(i, j)| i >= 1 && j >= 1 && i + j < n)
        .collect();
    let bary: Vec<[f64; 3]> = inner
        .iter()
        .map(|&(i, j)| {
            let (b1, b2) = (i as f64 / n as f64, j as f64 / n as f64);
            [(n - i - j) as f64 / n as f64, b1, b2]
        })
        .collect();
    let face_samples = (0..mesh.n_faces())
        .into_par_iter()
        .map(|f| {
            interior(f, &bary).map_err(|err| Error::AtFace {
                face: f,
                source: Box::new(err),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for (f, samples) in face_samples.into_iter().enumerate() {
        for (&(i, j), (p, nr)) in inner.iter().zip(samples) {
            let g = num.index(f, i, j);
            positions[g] = p;
            normals[g] = nr;
        }
    }
    let tris = lattice_triangles(n);
    let mut faces = Vec::with_capacity(mesh.n_faces() * n * n);
    for f in 0..mesh.n_faces() {
        for t in &tris {
            faces.push(t.map(|(i, j)| num.index(f, i, j)));
        }
    }
    Ok(Tessellation {
        level: n,
        positions,
        normals,
        faces,
    })
}

/// Step of the finite differences used for interior normals.
pub const NORMAL_STEP: f64 = 1e-6;

/// Sample the blended surface on a level-n lattice per face.
pub fn tessellate_surface(surface: &NielsonSurface, n: usize) -> Result<Tessellation> {
    tessellate_with(surface, n, |f, bary| {
        let patch = surface.patch(f);
        bary.iter()
            .map(|&b| Ok((patch.eval(b)?, patch.normal(b, NORMAL_STEP)?)))
            .collect()
    })
}

/// Sample the C0 patches on the same lattice. Edge samples use the averaged
/// normal fields, interior samples the patch normals.
pub fn tessellate_c0(surface: &NielsonSurface, n: usize) -> Result<Tessellation> {
    let beta = surface.beta();
    tessellate_with(surface, n, |f, bary| {
        let net = &surface.nets[f];
        bary.iter()
            .map(|&b| {
                let p = BarycentricPoint::new(beta * b[0], beta * b[2], beta * b[1], beta)?;
                let x = beta * b[0];
                let y = beta * b[2];
                Ok((
                    eval_patch(net, &surface.tri, p)?,
                    patch_normal(net, &surface.tri, x, y)?,
                ))
            })
            .collect()
    })
}

/// Write the curve network as `v` and `l` records, one polyline per edge.
pub fn write_polylines<W: Write + ?Sized>(
    w: &mut W,
    polylines: &[Vec<Vec3>],
) -> std::io::Result<()> {
    for line in polylines {
        for p in line {
            writeln!(w, "v {:.16e} {:.16e} {:.16e}", p.x, p.y, p.z)?;
        }
    }
    let mut base = 1;
    for line in polylines {
        write!(w, "l")?;
        for k in 0..line.len() {
            write!(w, " {}", base + k)?;
        }
        writeln!(w)?;
        base += line.len();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::shapes;
    use crate::pipeline::{run_pipeline, PipelineConfig};

    #[test]
    fn lattice_counts() {
        for n in 1..7 {
            assert_eq!(lattice(n).len(), (n + 1) * (n + 2) / 2);
            assert_eq!(lattice_triangles(n).len(), n * n);
        }
    }

    #[test]
    fn cube_tessellation_is_watertight() {
        let out = run_pipeline(&PipelineConfig::default(), shapes::cube()).unwrap();
        for n in [1, 2, 4] {
            let t = tessellate_surface(&out.surface, n).unwrap();
            let expect_v = 8 + 18 * (n - 1) + 12 * interior_count(n);
            assert_eq!(t.positions.len(), expect_v);
            assert_eq!(t.faces.len(), 12 * n * n);
            // A closed surface: every directed edge has its reverse.
            let mut dir = std::collections::HashSet::new();
            for f in &t.faces {
                for c in 0..3 {
                    assert!(dir.insert((f[c], f[(c + 1) % 3])));
                }
            }
            for &(a, b) in &dir {
                assert!(dir.contains(&(b, a)));
            }
            assert!(t.normals.iter().all(|v| (v.norm() - 1.0).abs() < 1e-12));
            // Outward normals on a convex surface around the origin.
            assert!(t
                .positions
                .iter()
                .zip(&t.normals)
                .all(|(p, v)| p.dot(v) > 0.0));
        }
    }

    #[test]
    fn interior_samples_match_direct_evaluation() {
        let out = run_pipeline(&PipelineConfig::default(), shapes::cube()).unwrap();
        let t = tessellate_surface(&out.surface, 4).unwrap();
        let num = Numbering {
            surface: &out.surface,
            n: 4,
        };
        let p = out.surface.patch(5).eval([0.25, 0.25, 0.5]).unwrap();
        assert_eq!(t.positions[num.index(5, 1, 2)], p);
        let c0 = tessellate_c0(&out.surface, 4).unwrap();
        assert_eq!(c0.faces, t.faces);
        let q = out.surface.c0_point(5, [0.25, 0.25, 0.5]).unwrap();
        assert!((c0.positions[num.index(5, 1, 2)] - q).norm() < 1e-15);
    }

    #[test]
    fn output_is_deterministic() {
        let out = run_pipeline(&PipelineConfig::default(), shapes::cube()).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        tessellate_surface(&out.surface, 3)
            .unwrap()
            .write_obj(&mut a)
            .unwrap();
        tessellate_surface(&out.surface, 3)
            .unwrap()
            .write_obj(&mut b)
            .unwrap();
        assert_eq!(a, b);
        assert!(!a.contains(&b'\r'));
    }
}
