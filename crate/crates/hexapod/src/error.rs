use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("degenerate tuple: all components of the photographic map vanish")]
    DegenerateTuple,
    #[error("index pair ({0}, {1}) is not admissible")]
    BadIndex(usize, usize),
    #[error("H_{0}{1} vanishes identically on the conic")]
    PlaneVanishes(usize, usize),
    #[error("equiform: intersection not finite")]
    Equiform,
    #[error("curve is not smooth along the residual intersection: {0}")]
    NotSmooth(String),
    #[error("base is not Moebius-general: {0}")]
    NotMoebiusGeneral(String),
    #[error("rank of the bond matrix is {0}, expected 3")]
    BondRank(usize),
    #[error("degenerate tangent rescaling")]
    TangentRescale,
    #[error("rotation matrix is not orthogonal with determinant one")]
    NotRotation,
    #[error("no Tang2 scaling exists")]
    NoTang2,
    #[error("no Tang3 legs exist: {0}")]
    NoTang3(String),
    #[error("certificate refused at bond {bond}: {reason}")]
    CertificateRefused { bond: usize, reason: String },
    #[error("degenerate index choice")]
    DegenerateIndices,
    #[error("S divides E: choose different indices")]
    AllResultantsZero,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Alg(#[from] exactalg::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
