use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no background element intersects the domain")]
    EmptyActiveMesh,

    #[error("no uncut interior element available for pressure extension")]
    NoInteriorElements,

    #[error("element {element}: {roots} sign changes on its edges, the mesh is too coarse for the geometry")]
    UnresolvedGeometry { element: usize, roots: usize },

    #[error("element {element}: classification and quadrature disagree ({detail})")]
    QuadratureInconsistency { element: usize, detail: String },

    #[error("point ({x}, {y}) lies outside element {element}")]
    PointOutsideElement { element: usize, x: f64, y: f64 },

    #[error("factorization failed: {0}")]
    Singular(String),

    #[error("solve residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
    Residual { residual: f64, tolerance: f64 },

    #[error("n = {n}: {source}")]
    AtMesh {
        n: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
