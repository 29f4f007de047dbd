use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("invalid lattice action: {0}")]
    InvalidAction(String),
    #[error("group closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("levi {0:?} is not stable under the Galois action")]
    NotGammaStable(Vec<usize>),
    #[error("levi {inner:?} is not contained in {outer:?}")]
    NotContained { inner: Vec<usize>, outer: Vec<usize> },
    #[error("inconsistent B(G) element: {0}")]
    InconsistentElement(String),
    #[error("invalid parameter datum: {0}")]
    InvalidParameter(String),
    #[error("invalid endoscopic datum: {0}")]
    InvalidEndoscopic(String),
    #[error("cocycle is not a coboundary and no explicit modules were supplied")]
    CocycleNotTrivializable,
    #[error("descent certificate failed: {0}")]
    DescentFailed(String),
    #[error("wall assertion failed: {0}")]
    WallAssertion(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{file}:{line}: {msg}")]
    Validation { file: String, line: usize, msg: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
