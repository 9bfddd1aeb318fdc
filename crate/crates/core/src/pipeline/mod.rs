//! End-to-end construction from a triangle mesh to a tessellated surface.
//!
//! The stages are run in order and every error leaving a stage carries the
//! stage name:
//!
//! 1. `tables`: energy tables for the chosen family and weights
//! 2. `normals`: vertex normals and edge tangents
//! 3. `curves`: the curve network
//! 4. `patches`: the C0 patches
//! 5. `surface`: normal fields and the blended surface
//! 6. `tessellation`: lattice sampling of every face

mod report;
mod tessellate;

pub use report::{write_report, Report};
pub use tessellate::{tessellate_c0, tessellate_surface, write_polylines, Tessellation};

use crate::basis::{BasisFamily, FamilyTag, TrivariateBasis, UnivariateBasis};
use crate::c0_patch::{build_patches, ControlNet};
use crate::curve_network::{build_network, CurveNetwork};
use crate::error::{Error, Result};
use crate::mesh::{load_obj_file, vertex_frames, HalfEdgeMesh, VertexFrame};
use crate::nielson::{BlendKind, NielsonSurface, CORNER_EPS};
use crate::tables::{EnergyWeights, PhiTable, TauSet};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Tolerance of the quadrature used when a closed table is not available.
pub const QUADRATURE_TOL: f64 = 1e-11;

/// All settings of one run. The JSON form is a flat object with these field
/// names; absent fields take their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub family: FamilyTag,
    /// Shape parameter; the family default when absent.
    pub beta: Option<f64>,
    /// Strain energy weights of the curves.
    pub theta: Vec<f64>,
    /// Thin-plate energy weights of the patches.
    pub epsilon: Vec<f64>,
    pub blend: BlendKind,
    /// Tessellation level: every face is split into samples^2 triangles.
    pub samples: usize,
    pub corner_eps: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            input: None,
            output: None,
            report: None,
            family: FamilyTag::CubicBernstein,
            beta: None,
            theta: vec![1.0],
            epsilon: vec![1.0],
            blend: BlendKind::RationalDeg2,
            samples: 8,
            corner_eps: CORNER_EPS,
        }
    }
}

impl PipelineConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn basis_family(&self) -> Result<BasisFamily> {
        BasisFamily::new(
            self.family,
            self.beta.unwrap_or_else(|| self.family.default_beta()),
        )
    }

    pub fn theta_weights(&self) -> Result<EnergyWeights> {
        weights(&self.theta, "theta")
    }

    pub fn epsilon_weights(&self) -> Result<EnergyWeights> {
        weights(&self.epsilon, "epsilon")
    }

    /// Check every setting without doing any geometric work.
    pub fn validate(&self) -> Result<()> {
        self.basis_family()?;
        self.theta_weights()?;
        self.epsilon_weights()?;
        if self.samples == 0 {
            return Err(Error::Config(
                "tessellation level must be at least 1".into(),
            ));
        }
        if !(self.corner_eps > 0.0 && self.corner_eps < 0.1) {
            return Err(Error::Config(format!(
                "corner radius {} must lie in (0, 0.1)",
                self.corner_eps
            )));
        }
        Ok(())
    }
}

fn weights(values: &[f64], name: &str) -> Result<EnergyWeights> {
    if values.len() > 2 {
        return Err(Error::Config(format!(
            "{name} has {} entries, at most two derivative orders are supported",
            values.len()
        )));
    }
    EnergyWeights::new(values.to_vec())
}

/// Basis systems and energy tables shared by all stages.
#[derive(Debug, Clone)]
pub struct Tables {
    pub family: BasisFamily,
    pub univariate: UnivariateBasis,
    pub trivariate: TrivariateBasis,
    pub phi: PhiTable,
    pub taus: TauSet,
    pub theta: EnergyWeights,
    pub epsilon: EnergyWeights,
}

impl Tables {
    pub fn new(config: &PipelineConfig) -> Result<Self> {
        config.validate()?;
        let family = config.basis_family()?;
        let theta = config.theta_weights()?;
        Ok(Tables {
            family,
            univariate: UnivariateBasis::new(family)?,
            trivariate: TrivariateBasis::new(family)?,
            phi: PhiTable::closed_combined(family, &theta)?,
            taus: TauSet::for_family(family, QUADRATURE_TOL)?,
            theta,
            epsilon: config.epsilon_weights()?,
        })
    }
}

/// Everything built up to the blended surface.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub tables: Tables,
    pub frames: VertexFrame,
    pub surface: NielsonSurface,
}

impl PipelineOutput {
    pub fn mesh(&self) -> &HalfEdgeMesh {
        &self.surface.mesh
    }

    pub fn network(&self) -> &CurveNetwork {
        &self.surface.network
    }

    pub fn nets(&self) -> &[ControlNet] {
        &self.surface.nets
    }
}

pub fn load_input(config: &PipelineConfig) -> Result<HalfEdgeMesh> {
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| Error::Config("no input mesh given".into()))?;
    load_obj_file(path).map_err(|e| e.at_stage("input"))
}

pub fn stage_tables(config: &PipelineConfig) -> Result<Tables> {
    Tables::new(config).map_err(|e| e.at_stage("tables"))
}

pub fn stage_normals(mesh: &HalfEdgeMesh) -> Result<VertexFrame> {
    vertex_frames(mesh).map_err(|e| e.at_stage("normals"))
}

pub fn stage_curves(
    mesh: &HalfEdgeMesh,
    frames: &VertexFrame,
    tables: &Tables,
) -> Result<CurveNetwork> {
    build_network(mesh, frames, &tables.univariate, &tables.phi).map_err(|e| e.at_stage("curves"))
}

pub fn stage_patches(
    mesh: &HalfEdgeMesh,
    network: &CurveNetwork,
    tables: &Tables,
) -> Result<Vec<ControlNet>> {
    build_patches(mesh, network, &tables.taus, &tables.epsilon).map_err(|e| e.at_stage("patches"))
}

/// Run every stage up to the blended surface.
pub fn run_pipeline(config: &PipelineConfig, mesh: HalfEdgeMesh) -> Result<PipelineOutput> {
    let tables = stage_tables(config)?;
    let frames = stage_normals(&mesh)?;
    let network = stage_curves(&mesh, &frames, &tables)?;
    let nets = stage_patches(&mesh, &network, &tables)?;
    let surface = NielsonSurface::new(
        mesh,
        frames.normals.clone(),
        network,
        nets,
        tables.trivariate.clone(),
        config.blend,
        config.corner_eps,
    );
    // Touch every normal field once so that cancelling patch normals are
    // reported here rather than in the middle of the tessellation.
    for e in 0..surface.mesh.n_edges() {
        surface
            .fields
            .eval(e, 0.5 * surface.beta(), &surface.nets, &surface.tri)
            .map_err(|e| e.at_stage("surface"))?;
    }
    Ok(PipelineOutput {
        tables,
        frames,
        surface,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::shapes;

    #[test]
    fn config_defaults_and_overrides() {
        let c =
            PipelineConfig::from_json(r#"{"family": "trig", "theta": [1, 1], "blend": "deg1"}"#)
                .unwrap();
        assert_eq!(c.family, FamilyTag::Trigonometric);
        assert_eq!(c.basis_family().unwrap().beta, std::f64::consts::FRAC_PI_2);
        assert_eq!(c.blend, BlendKind::RationalDeg1);
        assert_eq!(c.samples, 8);
        c.validate().unwrap();
        assert!(PipelineConfig::from_json(r#"{"famly": "trig"}"#).is_err());
    }

    #[test]
    fn invalid_settings_are_config_errors() {
        let bad = [
            PipelineConfig {
                family: FamilyTag::Trigonometric,
                beta: Some(4.0),
                ..Default::default()
            },
            PipelineConfig {
                theta: vec![1.0, 1.0, 1.0],
                ..Default::default()
            },
            PipelineConfig {
                epsilon: vec![0.0],
                ..Default::default()
            },
            PipelineConfig {
                samples: 0,
                ..Default::default()
            },
        ];
        for c in bad {
            let e = run_pipeline(&c, shapes::cube()).unwrap_err();
            assert_eq!(e.class(), crate::error::ErrorClass::Config, "{e}");
        }
        let e = Tables::new(&PipelineConfig {
            family: FamilyTag::Trigonometric,
            beta: Some(4.0),
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(e, Error::OutOfRangeBeta { .. }));
    }

    #[test]
    fn cube_runs_through() {
        let out = run_pipeline(&PipelineConfig::default(), shapes::cube()).unwrap();
        assert_eq!(out.nets().len(), 12);
        assert_eq!(out.network().edges().len(), 18);
    }
}
