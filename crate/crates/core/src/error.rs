use ainf_exactlin::LinError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("word enumeration exceeded the cap of {cap} words")]
    ExplosionGuard { cap: usize },
    #[error("word {0} is outside the enumerated space")]
    OutsideEnumeration(String),
    #[error("differential is not well defined on cyclic classes at {0}")]
    NotWellDefinedOnClasses(String),
    #[error("degenerate pairing: null vector {0}")]
    DegeneratePairing(String),
    #[error("cochain mixes degrees {0} and {1}")]
    MixedDegrees(i64, i64),
    #[error("nondegeneracy is only decided for constant forms")]
    NonConstantForm,
    #[error("comparison needs a single object, found {0}")]
    MultiObjectUnsupported(usize),
    #[error("hom data is not strictly upper triangular: {0}")]
    NotUpperTriangular(String),
    #[error("not a strong exceptional collection: {0}")]
    ViolatesExceptionality(String),
    #[error("no such coefficient: {0}")]
    NoSuchCoefficient(String),
    #[error("no Calabi-Yau pairing attached")]
    NoPairing,
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("line {line}: {field}: {msg}")]
    Parse { line: usize, field: String, msg: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;
