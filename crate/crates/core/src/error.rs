use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial parse error at byte {pos}: {msg}")]
    PolyParse { pos: usize, msg: String },
    #[error("not a Seifert matrix: {0}")]
    InvalidSeifert(String),
    #[error("invalid root of unity {num}/{den}")]
    InvalidRoot { num: i64, den: i64 },
    #[error("omega = 1 is excluded")]
    OmegaIsOne,
    #[error("omega = exp(2 pi i {num}/{den}) is a root of the Alexander polynomial")]
    SingularAtOmega { num: i64, den: i64 },
    #[error("knot profile `{0}` has no Seifert matrix")]
    MissingSeifert(String),
    #[error("knot profile `{0}` has no Alexander polynomial")]
    MissingAlexander(String),
    #[error("knot profile `{0}` has no declared tau")]
    MissingTau(String),
    #[error("inconsistent knot profile `{name}`: {msg}")]
    InconsistentProfile { name: String, msg: String },
    #[error("front diagram has {0} components, expected one")]
    MultiComponent(usize),
    #[error("front diagram does not close up: {0}")]
    NonClosed(String),
    #[error("invalid front diagram: {0}")]
    InvalidFront(String),
    #[error("front parse error on line {line}: {msg}")]
    FrontParse { line: usize, msg: String },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("presentation parse error on line {line}: {msg}")]
    PresentationParse { line: usize, msg: String },
    #[error("class relation fails; residual {residual}")]
    ClassMismatch { residual: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("catalog parse error at {location}: {msg}")]
    CatalogParse { location: String, msg: String },
    #[error("catalog validation failed for `{entry}`: {msg}")]
    CatalogValidation { entry: String, msg: String },
}
