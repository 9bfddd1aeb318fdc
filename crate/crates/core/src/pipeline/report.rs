use super::{PipelineConfig, PipelineOutput, QUADRATURE_TOL};
use crate::c0_patch::thin_plate_energy;
use crate::curve_network::strain_energy;
use crate::error::Result;
use crate::mesh::Vec3;
use crate::nielson::G1Defect;
use crate::tables::ThinPlateGram;
use serde::Serialize;
use std::io::Write;

/// Edge samples per interior edge used for the G1 measurement.
pub const G1_SAMPLES: usize = 20;
/// Distance of the G1 samples from the edge.
pub const G1_OFFSET: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    pub lambda_ij: f64,
    pub lambda_ji: f64,
    pub strain_energy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceRecord {
    pub face: [usize; 3],
    pub interior_point: [f64; 3],
    pub thin_plate_energy: f64,
}

/// Numbers describing one run, written as plain text.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub family: String,
    pub beta: f64,
    pub theta: Vec<f64>,
    pub epsilon: Vec<f64>,
    pub blend: String,
    pub vertices: usize,
    pub faces: usize,
    pub boundary_edges: usize,
    pub edges: Vec<EdgeRecord>,
    pub patches: Vec<FaceRecord>,
    pub total_strain_energy: f64,
    pub total_thin_plate_energy: f64,
    pub g1: G1Defect,
}

fn arr(p: &Vec3) -> [f64; 3] {
    [p.x, p.y, p.z]
}

impl Report {
    pub fn new(config: &PipelineConfig, out: &PipelineOutput) -> Result<Self> {
        let mesh = out.mesh();
        let network = out.network();
        let phi = &out.tables.phi;
        let edges: Vec<EdgeRecord> = network
            .edges()
            .iter()
            .zip(network.solutions())
            .map(|(&(from, to), s)| {
                let ctrl = network.control_points(from, to)?;
                Ok(EdgeRecord {
                    from,
                    to,
                    lambda_ij: s.lambda_ij,
                    lambda_ji: s.lambda_ji,
                    strain_energy: strain_energy(&ctrl, phi),
                })
            })
            .collect::<Result<_>>()?;
        let gram = ThinPlateGram::quadrature(&out.tables.trivariate, QUADRATURE_TOL)?;
        let patches: Vec<FaceRecord> = out
            .nets()
            .iter()
            .map(|net| FaceRecord {
                face: net.face,
                interior_point: arr(&net.get(1, 1)),
                thin_plate_energy: thin_plate_energy(net, &gram, &out.tables.epsilon),
            })
            .collect();
        let g1 = out.surface.g1_defect(G1_SAMPLES, G1_OFFSET)?;
        Ok(Report {
            family: out.tables.family.tag.to_string(),
            beta: out.tables.family.beta,
            theta: out.tables.theta.values().to_vec(),
            epsilon: out.tables.epsilon.values().to_vec(),
            blend: config.blend.to_string(),
            vertices: mesh.n_vertices(),
            faces: mesh.n_faces(),
            boundary_edges: mesh.n_boundary_edges(),
            total_strain_energy: edges.iter().map(|e| e.strain_energy).sum(),
            total_thin_plate_energy: patches.iter().map(|p| p.thin_plate_energy).sum(),
            edges,
            patches,
            g1,
        })
    }

    pub fn write<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "family {} beta {:.16e}", self.family, self.beta)?;
        writeln!(
            w,
            "theta {:?} epsilon {:?} blend {}",
            self.theta, self.epsilon, self.blend
        )?;
        writeln!(
            w,
            "mesh vertices {} faces {} edges {} boundary_edges {}",
            self.vertices,
            self.faces,
            self.edges.len(),
            self.boundary_edges
        )?;
        writeln!(w, "edges from to lambda_ij lambda_ji strain_energy")?;
        for e in &self.edges {
            writeln!(
                w,
                "edge {} {} {:.16e} {:.16e} {:.16e}",
                e.from, e.to, e.lambda_ij, e.lambda_ji, e.strain_energy
            )?;
        }
        writeln!(w, "patches i j k p111_x p111_y p111_z thin_plate_energy")?;
        for p in &self.patches {
            let [i, j, k] = p.face;
            let [x, y, z] = p.interior_point;
            writeln!(
                w,
                "patch {i} {j} {k} {x:.16e} {y:.16e} {z:.16e} {:.16e}",
                p.thin_plate_energy
            )?;
        }
        writeln!(w, "total_strain_energy {:.16e}", self.total_strain_energy)?;
        writeln!(
            w,
            "total_thin_plate_energy {:.16e}",
            self.total_thin_plate_energy
        )?;
        writeln!(
            w,
            "g1_max_angle_between_sides {:.6e} g1_max_angle_to_field {:.6e} g1_samples {}",
            self.g1.between_sides, self.g1.to_field, self.g1.samples
        )
    }
}

/// Build the report and write it to `w`.
pub fn write_report<W: Write>(
    w: &mut W,
    config: &PipelineConfig,
    out: &PipelineOutput,
) -> Result<Report> {
    let report = Report::new(config, out)?;
    report.write(w).map_err(|source| crate::Error::Io {
        path: "report".into(),
        source,
    })?;
    Ok(report)
}
