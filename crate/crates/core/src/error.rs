use thiserror::Error;

/// Broad category of a failure, used by the command line front end to pick
/// an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Mesh,
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape parameter beta = {beta} is outside the admissible interval {range} of the {family} family")]
    OutOfRangeBeta {
        family: &'static str,
        beta: f64,
        range: &'static str,
    },

    #[error("argument {value} is outside the evaluation domain {domain}")]
    DomainError { value: f64, domain: String },

    #[error("adaptive quadrature did not reach tolerance {tol:e} on [{a}, {b}]")]
    QuadratureNonConvergence { a: f64, b: f64, tol: f64 },

    #[error("energy weights must be non-negative with at least one positive entry, got {0:?}")]
    ZeroWeights(Vec<f64>),

    #[error("no closed-form table is available for the {family} family")]
    UnsupportedFamily { family: &'static str },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("line {line}: face record has {count} vertices, only triangles are supported")]
    NonTriangleFace { line: usize, count: usize },

    #[error("edge ({from}, {to}) is used more than once in the same direction or by more than two faces")]
    NonManifoldEdge { from: usize, to: usize },

    #[error("line {line}: vertex index {index} is out of range (mesh has {count} vertices)")]
    IndexOutOfRange {
        line: usize,
        index: i64,
        count: usize,
    },

    #[error("mesh has no vertices or no faces")]
    EmptyMesh,

    #[error("line {line}: cannot parse record: {message}")]
    Parse { line: usize, message: String },

    #[error("face {face} is degenerate (area {area:e})")]
    DegenerateFace { face: usize, area: f64 },

    #[error("angle weighted normal of vertex {vertex} vanishes")]
    ZeroNormal { vertex: usize },

    #[error("edge ({from}, {to}) is parallel to the normal at vertex {from}")]
    ParallelEdgeNormal { from: usize, to: usize },

    #[error("determinant {det:e} of the tangent scaling system is not positive")]
    NonPositiveDeterminant { det: f64 },

    #[error("edge ({from}, {to}) has no solved curve")]
    MissingEdgeSolution { from: usize, to: usize },

    #[error("thin-plate denominator vanishes ({value:e})")]
    ZeroDenominator { value: f64 },

    #[error("surface partial derivatives are parallel, normal is undefined")]
    DegenerateNormal,

    #[error("patch normals across edge ({from}, {to}) cancel each other")]
    OpposingNormals { from: usize, to: usize },

    #[error("side-vertex chord is degenerate on face {face}")]
    DegenerateChord { face: usize },

    #[error("barycentric point ({0}, {1}, {2}) is a triangle corner, blend weights are undefined")]
    CornerSingularity(f64, f64, f64),

    #[error("edge ({from}, {to}): {source}")]
    AtEdge {
        from: usize,
        to: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("face {face}: {source}")]
    AtFace {
        face: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::OutOfRangeBeta { .. }
            | Error::ZeroWeights(_)
            | Error::UnsupportedFamily { .. }
            | Error::Config(_)
            | Error::Io { .. } => ErrorClass::Config,
            Error::NonTriangleFace { .. }
            | Error::NonManifoldEdge { .. }
            | Error::IndexOutOfRange { .. }
            | Error::EmptyMesh
            | Error::Parse { .. }
            | Error::DegenerateFace { .. }
            | Error::ZeroNormal { .. }
            | Error::ParallelEdgeNormal { .. } => ErrorClass::Mesh,
            Error::Stage { source, .. }
            | Error::AtEdge { source, .. }
            | Error::AtFace { source, .. } => source.class(),
            _ => ErrorClass::Numeric,
        }
    }

    /// The error with all stage labels removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. }
            | Error::AtEdge { source, .. }
            | Error::AtFace { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
