use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("associativity fails at (b{i}·b{j})·b{k} vs b{i}·(b{j}·b{k}), component {l}: residual {residual:.3e}")]
    AssociativityViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residual: f64,
    },
    #[error("declared identity fails: residual {residual:.3e}")]
    IdentityMismatch { residual: f64 },
    #[error("element or map belongs to a different algebra")]
    AlgebraMismatch,
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("subspace is not a two-sided ideal: product b{left}·b{right} escapes with residual {residual:.3e}")]
    NotAnIdeal { left: usize, right: usize, residual: f64 },
    #[error("subspace is not a subalgebra: residual {residual:.3e}")]
    NotASubalgebra { residual: f64 },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("adjoint mode does not match the linearity of the map")]
    ModeUnsupported,
    #[error("map is not a trivolution ({0})")]
    NotATrivolution(String),
    #[error("map is not a projection: residual {residual:.3e}")]
    NotAProjection { residual: f64 },
    #[error("map is not a homomorphism: residual {residual:.3e}")]
    NotAHomomorphism { residual: f64 },
    #[error("map is not an involution: {reason}")]
    NotAnInvolution { reason: String },
    #[error("kernel of the trivolution is trivial; the map is an involution")]
    KernelTrivial,
    #[error("supplied map is not an involution on the kernel ideal: {reason}")]
    JNotInvolution { reason: String },
    #[error("homomorphism does not intertwine the trivolutions: residual {residual:.3e}")]
    NotIntertwining { residual: f64 },
    #[error("element is not a right identity: residual {residual:.3e}")]
    NotRightIdentity { residual: f64 },
    #[error("supplied subspace differs from e·C")]
    SubalgebraMismatch,
    #[error("element is not in the range of the trivolution: residual {residual:.3e}")]
    NotInRange { residual: f64 },
    #[error("extension data define neither family of trivolution extensions")]
    InvalidExtension,
    #[error("map is not contractive: norm {norm:.6}")]
    NotContractive { norm: f64 },
    #[error("algebra has no identity")]
    NotUnital,
    #[error("range of the trivolution has no identity")]
    BNotUnital,
    #[error("subspace of the dual is not introverted: {0}")]
    NotIntroverted(String),
    #[error("subspace of the dual is not invariant under the adjoint involution: residual {residual:.3e}")]
    NotInvariant { residual: f64 },
    #[error("the two Arens products differ: residual {residual:.3e}")]
    NotArensRegular { residual: f64 },
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("character does not lie in the subspace: residual {residual:.3e}")]
    CharacterNotInX { residual: f64 },
    #[error("involution is incompatible with the character: {reason}")]
    NotCompatibleInvolution { reason: String },
    #[error("unsupported search family `{0}`")]
    UnsupportedFamily(String),
    #[error("certification of `{law}` failed: residual {residual:.3e}")]
    Certification { law: String, residual: f64 },
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn certification(law: impl Into<String>, residual: f64) -> Self {
        Error::Certification {
            law: law.into(),
            residual,
        }
    }
}
