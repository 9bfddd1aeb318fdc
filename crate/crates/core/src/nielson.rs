//! G1 surfaces from blended side-vertex interpolants.
//!
//! Along every mesh edge a unit normal field is defined by averaging the
//! normals of the two incident C0 patches (or taking the only one on the
//! boundary). For each face and each corner, the corner vertex is joined to
//! every point of the opposite boundary curve by an optimal arc whose end
//! tangents are orthogonal to the vertex normal and to the normal field.
//! The three resulting side-vertex interpolants are blended with rational
//! weights that select the right interpolant on each edge.

use crate::basis::{BarycentricPoint, TrivariateBasis, UnivariateBasis};
use crate::c0_patch::{edge_chart_point, eval_patch, patch_normal, ControlNet};
use crate::curve_network::{eval_polygon, solve_edge, CurveNetwork, ScalingPair};
use crate::error::{Error, Result};
use crate::mesh::{edge_tangent, HalfEdgeMesh, Vec3};
use crate::tables::PhiTable;
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Default radius of the corner caps in normalized barycentric coordinates.
pub const CORNER_EPS: f64 = 1e-7;

/// Rational blending weights of the side-vertex interpolants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BlendKind {
    /// `w_i = b1^2 b2^2 / (b0^2 b1^2 + b0^2 b2^2 + b1^2 b2^2)` and cyclic.
    #[default]
    #[serde(rename = "deg2")]
    RationalDeg2,
    /// `w_i = b1 b2 / (b0 b1 + b0 b2 + b1 b2)` and cyclic.
    #[serde(rename = "deg1")]
    RationalDeg1,
}

impl fmt::Display for BlendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlendKind::RationalDeg2 => "deg2",
            BlendKind::RationalDeg1 => "deg1",
        })
    }
}

impl FromStr for BlendKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deg2" => Ok(BlendKind::RationalDeg2),
            "deg1" => Ok(BlendKind::RationalDeg1),
            _ => Err(Error::Config(format!(
                "unknown blend {s:?}, expected deg1 or deg2"
            ))),
        }
    }
}

/// Weights (w_0, w_1, w_2) of the interpolants belonging to the three corners.
pub fn blend_weights(kind: BlendKind, b: [f64; 3]) -> Result<[f64; 3]> {
    let small = b.iter().filter(|x| x.abs() < 1e-14).count();
    if small >= 2 {
        return Err(Error::CornerSingularity(b[0], b[1], b[2]));
    }
    let q = match kind {
        BlendKind::RationalDeg2 => b.map(|x| x * x),
        BlendKind::RationalDeg1 => b,
    };
    let n = [q[1] * q[2], q[2] * q[0], q[0] * q[1]];
    let d = n[0] + n[1] + n[2];
    Ok(n.map(|x| x / d))
}

/// Whether a normal field comes from two patches or from a single one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldKind {
    Averaged,
    Inherited,
}

/// One face seen from an edge: the face index, the corner where the edge
/// starts in that face and whether the face runs the edge hi -> lo.
#[derive(Debug, Clone, Copy)]
struct EdgeUse {
    face: usize,
    side: usize,
    reversed: bool,
}

/// Unit normal fields along all edges, parametrised in the canonical
/// lo -> hi direction of each edge.
#[derive(Debug, Clone)]
pub struct NormalFields {
    uses: Vec<Vec<EdgeUse>>,
    beta: f64,
}

impl NormalFields {
    pub fn new(mesh: &HalfEdgeMesh, beta: f64) -> Self {
        let mut uses = vec![Vec::new(); mesh.n_edges()];
        for h in 0..mesh.n_half_edges() {
            let (a, b) = (mesh.origin(h), mesh.target(h));
            uses[mesh.edge_of_half_edge(h)].push(EdgeUse {
                face: h / 3,
                side: h % 3,
                reversed: a > b,
            });
        }
        NormalFields { uses, beta }
    }

    pub fn kind(&self, edge: usize) -> FieldKind {
        if self.uses[edge].len() == 2 {
            FieldKind::Averaged
        } else {
            FieldKind::Inherited
        }
    }

    /// Field of edge `edge` at canonical parameter x in [0, beta].
    pub fn eval(
        &self,
        edge: usize,
        x: f64,
        nets: &[ControlNet],
        basis: &TrivariateBasis,
    ) -> Result<Vec3> {
        let mut sum = Vec3::zeros();
        for u in &self.uses[edge] {
            let t = if u.reversed { self.beta - x } else { x };
            let (cx, cy) = edge_chart_point(u.side, t, self.beta);
            sum += patch_normal(&nets[u.face], basis, cx, cy)?;
        }
        let len = sum.norm();
        if !(len >= 1e-9) {
            let net = &nets[self.uses[edge][0].face];
            let s = self.uses[edge][0].side;
            return Err(Error::OpposingNormals {
                from: net.face[s],
                to: net.face[(s + 1) % 3],
            });
        }
        Ok(sum / len)
    }
}

/// Frames and scalings of one side-vertex arc.
#[derive(Debug, Clone, Copy)]
pub struct SideVertexSample {
    /// Boundary curve point.
    pub curve_point: Vec3,
    /// Tangent at the vertex, orthogonal to the vertex normal.
    pub t_vertex: Vec3,
    /// Tangent at the curve point, orthogonal to the normal field.
    pub t_curve: Vec3,
    pub scaling: ScalingPair,
}

/// The blended surface over a whole mesh.
#[derive(Debug, Clone)]
pub struct NielsonSurface {
    pub mesh: HalfEdgeMesh,
    pub normals: Vec<Vec3>,
    pub network: CurveNetwork,
    pub nets: Vec<ControlNet>,
    pub tri: TrivariateBasis,
    pub fields: NormalFields,
    pub blend: BlendKind,
    pub corner_eps: f64,
}

impl NielsonSurface {
    pub fn new(
        mesh: HalfEdgeMesh,
        normals: Vec<Vec3>,
        network: CurveNetwork,
        nets: Vec<ControlNet>,
        tri: TrivariateBasis,
        blend: BlendKind,
        corner_eps: f64,
    ) -> Self {
        let fields = NormalFields::new(&mesh, network.beta());
        NielsonSurface {
            mesh,
            normals,
            network,
            nets,
            tri,
            fields,
            blend,
            corner_eps,
        }
    }

    pub fn beta(&self) -> f64 {
        self.network.beta()
    }

    fn univariate(&self) -> &UnivariateBasis {
        &self.network.basis
    }

    fn phi(&self) -> &PhiTable {
        &self.network.phi
    }

    /// Normal field along the edge from a to b at parameter x measured from a.
    pub fn edge_normal(&self, a: usize, b: usize, x: f64) -> Result<Vec3> {
        let e = self
            .mesh
            .edge_index(a, b)
            .ok_or(Error::MissingEdgeSolution { from: a, to: b })?;
        let t = if a < b { x } else { self.beta() - x };
        self.fields.eval(e, t, &self.nets, &self.tri)
    }

    /// Evaluation handle for one face, with its own cache of arc solutions.
    pub fn patch(&self, face: usize) -> NielsonPatch<'_> {
        NielsonPatch {
            surface: self,
            face,
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// Value of the C0 patch of `face` at normalized barycentric b.
    pub fn c0_point(&self, face: usize, b: [f64; 3]) -> Result<Vec3> {
        let beta = self.beta();
        // Weight u belongs to corner 0, v to corner 2 and w to corner 1.
        let p = BarycentricPoint::new(beta * b[0], beta * b[2], beta * b[1], beta)?;
        eval_patch(&self.nets[face], &self.tri, p)
    }
}

/// One face of a [`NielsonSurface`].
pub struct NielsonPatch<'a> {
    surface: &'a NielsonSurface,
    face: usize,
    cache: RefCell<HashMap<(usize, u64), SideVertexSample>>,
}

fn check_barycentric(b: [f64; 3]) -> Result<()> {
    let s = b[0] + b[1] + b[2];
    if b.iter().any(|x| !(*x >= -1e-12)) || (s - 1.0).abs() > 1e-12 {
        return Err(Error::DomainError {
            value: s,
            domain: "normalized barycentric coordinates".into(),
        });
    }
    Ok(())
}

impl NielsonPatch<'_> {
    pub fn face(&self) -> usize {
        self.face
    }

    fn vertices(&self) -> [usize; 3] {
        self.surface.mesh.face(self.face)
    }

    /// Arc data of corner `side` towards the opposite curve at parameter u.
    pub fn side_sample(&self, side: usize, u: f64) -> Result<SideVertexSample> {
        let key = (side, u.to_bits());
        if let Some(s) = self.cache.borrow().get(&key) {
            return Ok(*s);
        }
        let surf = self.surface;
        let f = self.vertices();
        let (v, a, b) = (f[side], f[(side + 1) % 3], f[(side + 2) % 3]);
        let p = surf.mesh.position(v);
        let c = surf.network.eval_curve(a, b, u, 0)?;
        let n_curve = surf.edge_normal(a, b, u)?;
        let chord = Error::DegenerateChord { face: self.face };
        let t_vertex = edge_tangent(&p, &c, &surf.normals[v]).ok_or(chord)?;
        let t_curve =
            edge_tangent(&c, &p, &n_curve).ok_or(Error::DegenerateChord { face: self.face })?;
        let scaling = solve_edge(&p, &c, &t_vertex, &t_curve, surf.phi())?;
        let s = SideVertexSample {
            curve_point: c,
            t_vertex,
            t_curve,
            scaling,
        };
        self.cache.borrow_mut().insert(key, s);
        Ok(s)
    }

    /// Side-vertex interpolant of corner `side` at normalized barycentric b.
    pub fn side_vertex_point(&self, side: usize, b: [f64; 3]) -> Result<Vec3> {
        check_barycentric(b)?;
        let surf = self.surface;
        let beta = surf.beta();
        let bs = b[side];
        if 1.0 - bs < surf.corner_eps {
            return Ok(surf.mesh.position(self.vertices()[side]));
        }
        let u = (beta * b[(side + 2) % 3] / (1.0 - bs)).clamp(0.0, beta);
        let s = self.side_sample(side, u)?;
        let p = surf.mesh.position(self.vertices()[side]);
        let c = s.curve_point;
        let ctrl = [
            p,
            p + s.scaling.lambda_ij * s.t_vertex,
            c + s.scaling.lambda_ji * s.t_curve,
            c,
        ];
        let x = (beta * (1.0 - bs)).clamp(0.0, beta);
        eval_polygon(surf.univariate(), &ctrl, x, 0)
    }

    /// The blended surface point at normalized barycentric b (b_0, b_1, b_2
    /// belonging to the face corners in order). Points inside the corner caps
    /// return the mesh vertex.
    pub fn eval(&self, b: [f64; 3]) -> Result<Vec3> {
        check_barycentric(b)?;
        let surf = self.surface;
        let f = self.vertices();
        for s in 0..3 {
            if b[s] >= 1.0 - surf.corner_eps {
                return Ok(surf.mesh.position(f[s]));
            }
        }
        let w = blend_weights(surf.blend, b)?;
        let mut acc = Vec3::zeros();
        for s in 0..3 {
            if w[s] != 0.0 {
                acc += w[s] * self.side_vertex_point(s, b)?;
            }
        }
        Ok(acc)
    }

    /// Unit normal from finite differences of step h along the barycentric
    /// directions towards corners 1 and 2, oriented like the face. Central
    /// differences are used unless the stencil leaves the triangle, in which
    /// case the one-sided difference that stays inside is taken.
    pub fn normal(&self, b: [f64; 3], h: f64) -> Result<Vec3> {
        let d1 = self.directional(b, [-1.0, 1.0, 0.0], h)?;
        let d2 = self.directional(b, [-1.0, 0.0, 1.0], h)?;
        let n = d1.cross(&d2);
        let len = n.norm();
        if !(len > 1e-12 * d1.norm() * d2.norm()) {
            return Err(Error::DegenerateNormal);
        }
        Ok(n / len)
    }

    fn directional(&self, b: [f64; 3], d: [f64; 3], h: f64) -> Result<Vec3> {
        let at = |t: f64| [b[0] + t * d[0], b[1] + t * d[1], b[2] + t * d[2]];
        let inside = |q: [f64; 3]| q.iter().all(|x| *x >= 0.0);
        let (fwd, bwd) = (at(h), at(-h));
        match (inside(fwd), inside(bwd)) {
            (true, true) => Ok((self.eval(fwd)? - self.eval(bwd)?) / (2.0 * h)),
            (true, false) => Ok((self.eval(fwd)? - self.eval(b)?) / h),
            (false, true) => Ok((self.eval(b)? - self.eval(bwd)?) / h),
            (false, false) => Err(Error::DegenerateNormal),
        }
    }
}

/// Largest normal deviations found by [`NielsonSurface::g1_defect`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct G1Defect {
    /// Angle between the normals seen from the two faces of an edge.
    pub between_sides: f64,
    /// Angle between a face normal and the prescribed edge field.
    pub to_field: f64,
    /// Number of edge samples that were compared.
    pub samples: usize,
}

impl NielsonSurface {
    /// Compare finite-difference normals on both sides of every interior
    /// edge at `samples` parameters, a barycentric distance `offset` away
    /// from the edge. Samples within `5 * corner_eps` of a corner are skipped.
    pub fn g1_defect(&self, samples: usize, offset: f64) -> Result<G1Defect> {
        let beta = self.beta();
        let cap = 5.0 * self.corner_eps;
        let per_edge = |h: usize| -> Result<G1Defect> {
            let mut d = G1Defect::default();
            let Some(t) = self.mesh.twin(h) else {
                return Ok(d);
            };
            if t < h {
                return Ok(d);
            }
            let (a, b) = (self.mesh.origin(h), self.mesh.target(h));
            let (pf, pg) = (self.patch(h / 3), self.patch(t / 3));
            let (sf, sg) = (h % 3, t % 3);
            for m in 1..=samples {
                let x = m as f64 / (samples + 1) as f64;
                if x < cap || 1.0 - x < cap {
                    continue;
                }
                let mut bf = [offset; 3];
                bf[sf] = 1.0 - x - offset / 2.0;
                bf[(sf + 1) % 3] = x - offset / 2.0;
                let mut bg = [offset; 3];
                bg[sg] = x - offset / 2.0;
                bg[(sg + 1) % 3] = 1.0 - x - offset / 2.0;
                let nf = pf.normal(bf, offset)?;
                let ng = pg.normal(bg, offset)?;
                let field = self.edge_normal(a, b, beta * x)?;
                d.between_sides = d.between_sides.max(nf.angle(&ng));
                d.to_field = d.to_field.max(nf.angle(&field)).max(ng.angle(&field));
                d.samples += 1;
            }
            Ok(d)
        };
        use rayon::prelude::*;
        (0..self.mesh.n_half_edges())
            .into_par_iter()
            .map(per_edge)
            .try_reduce(G1Defect::default, |x, y| {
                Ok(G1Defect {
                    between_sides: x.between_sides.max(y.between_sides),
                    to_field: x.to_field.max(y.to_field),
                    samples: x.samples + y.samples,
                })
            })
    }
}
