use std::fmt;
use std::path::PathBuf;

/// Where in the mesh something went wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Cell {
        i: usize,
        j: usize,
    },
    /// Face `i` along `axis` sits between cells `i - 1` and `i`.
    Face {
        axis: usize,
        i: usize,
        j: usize,
    },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Location::Cell { i, j } => write!(f, "cell ({i}, {j})"),
            Location::Face { axis, i, j } => {
                let name = if axis == 0 { "x" } else { "y" };
                write!(f, "{name}-face ({i}, {j})")
            }
        }
    }
}

fn at(location: &Option<Location>) -> String {
    match location {
        Some(loc) => format!(" at {loc}"),
        None => String::new(),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unphysical state{}: {reason}", at(.location))]
    Unphysical { reason: String, location: Option<Location> },

    #[error("non-finite value{}: {what}", at(.location))]
    NonFinite { what: String, location: Option<Location> },

    #[error("Roe average failed{}: a~^2 = {a2}", at(.location))]
    RoeFailure { a2: f64, location: Option<Location> },

    #[error("scheme {scheme} does not support {what}")]
    Unsupported { scheme: String, what: String },

    #[error("unknown case '{name}'; available: {}", .available.join(", "))]
    UnknownCase { name: String, available: Vec<String> },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("resolution mismatch: {0}")]
    Resolution(String),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {reason}", .path.display())]
    Parse { path: PathBuf, reason: String },
}

impl Error {
    pub(crate) fn unphysical(reason: impl Into<String>) -> Self {
        Error::Unphysical {
            reason: reason.into(),
            location: None,
        }
    }

    /// Attaches a mesh location to errors that carry one, keeping any
    /// location already present.
    pub fn at(mut self, loc: Location) -> Self {
        match &mut self {
            Error::Unphysical { location, .. }
            | Error::NonFinite { location, .. }
            | Error::RoeFailure { location, .. } => {
                location.get_or_insert(loc);
            }
            _ => {}
        }
        self
    }

    pub fn location(&self) -> Option<Location> {
        match self {
            Error::Unphysical { location, .. }
            | Error::NonFinite { location, .. }
            | Error::RoeFailure { location, .. } => *location,
            _ => None,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
