use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("chart mismatch: operands live on different coordinate charts")]
    ChartMismatch,

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("input document error at line {line}, column {column}: {message}")]
    Document { line: usize, column: usize, message: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("grade mismatch: expected grade {expected}, got {got}")]
    GradeMismatch { expected: usize, got: usize },

    #[error("zero bivector: k undefined")]
    ZeroBivector,

    #[error("bivector fails the Jacobi identity: [pi,pi] has coefficient {coefficient} on {index}")]
    NotPoisson { index: String, coefficient: String },

    #[error("{0} is not a Casimir function")]
    NotCasimir(String),

    #[error("scaling function is identically zero")]
    ZeroScaling,

    #[error("invalid structure constants: {0}")]
    StructureConstants(String),

    #[error("cosymplectic condition fails: #W° + W has codimension {defect} (subspace dim {dim_w}, annihilator dim {dim_ann})")]
    NotCosymplectic {
        defect: usize,
        dim_w: usize,
        dim_ann: usize,
    },

    #[error("induced bivector is not polynomial on this chart (denominator {0})")]
    NonPolynomialReduction(String),

    #[error("leaf slice is not transverse: {0}")]
    SliceNotTransverse(String),

    #[error("distribution is not constant-coefficient")]
    NonConstantDistribution,

    #[error("elements are not composable (source/target mismatch)")]
    NotComposable,

    #[error("splitting residual {0:e} exceeds tolerance")]
    SplittingResidual(f64),

    #[error("leaf hits the singular locus at {0:?}")]
    SingularLeaf(Vec<f64>),

    #[error("isotropy has generic dimension {0}, expected 1")]
    IsotropyNotScalar(usize),

    #[error("trajectory blew up at step {step} (norm {norm:e})")]
    StepBlowUp { step: usize, norm: f64 },

    #[error("saturation did not stabilize within {0} iterations")]
    SaturationOverflow(usize),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
