use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside domain ({requirement})")]
    Domain {
        function: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A Lambert quadrilateral with the requested sides does not exist.
    #[error("degenerate quadrilateral: arctanh argument {0} >= 1")]
    DegenerateQuadrilateral(f64),

    #[error("{quantity}: arctanh argument {argument} >= 1")]
    ArctanhDomain {
        quantity: &'static str,
        argument: f64,
    },

    #[error("invalid rectangle [{a}, {b}] x [{c}, {d}]: {reason}")]
    InvalidRect {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        reason: &'static str,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A feasible cell failed one of the muffin embedding criteria, so the
    /// campaign does not certify anything.
    #[error(
        "campaign failure on cell [{}, {}] x [{}, {}]: embedding criteria (c1, c2, c3) = {:?}",
        cell[0], cell[1], cell[2], cell[3], flags
    )]
    CampaignFailure { cell: [f64; 4], flags: [bool; 3] },
}

impl Error {
    pub(crate) fn domain(function: &'static str, value: f64, requirement: &'static str) -> Self {
        Error::Domain {
            function,
            value,
            requirement,
        }
    }
}
