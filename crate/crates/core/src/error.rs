use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Position in a `.bha` source file (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),

    #[error("group closure exceeds {limit} elements")]
    GroupTooLarge { limit: usize },
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("elements belong to different groups")]
    OwnerMismatch,

    #[error("subspace is not contained in the container")]
    MembershipViolation,
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid Yetter-Drinfeld module: {0}")]
    InvalidModule(String),

    #[error("degree {requested} exceeds truncation degree {max}")]
    DegreeOverflow { requested: usize, max: usize },
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("relation {relation} is not G-homogeneous")]
    NotHSubcomodule { relation: String },
    #[error("ideal is not stable under the group action (relation {relation})")]
    NotGStable { relation: String },
    #[error("ideal is not a coideal: coproduct of {relation} escapes in degree {degree}")]
    NotACoideal { relation: String, degree: usize },

    #[error("not a left coideal: coproduct of {witness} leaves A (x) K in degree {degree}")]
    CoidealViolation { witness: String, degree: usize },

    #[error("Hilbert series factorization fails in degree {degree}: {detail}")]
    FactorizationFailed { degree: usize, detail: String },
    #[error("no colinear section exists in degree {degree}")]
    NoSection { degree: usize },
    #[error("decomposition map is not bijective in degree {degree}")]
    NotBijective { degree: usize },
    #[error("module is not free in degree {degree}: {detail}")]
    FreenessFailed { degree: usize, detail: String },

    #[error("syntax error at {pos}: expected {expected}, found `{found}`")]
    Syntax {
        pos: Pos,
        expected: String,
        found: String,
    },
    #[error("name error at {pos}: `{name}` is not declared")]
    Name { pos: Pos, name: String },
    #[error("arity error at {pos}: {detail}")]
    Arity { pos: Pos, detail: String },
    #[error("at {pos}: {source}")]
    Located {
        pos: Pos,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn at(self, pos: Pos) -> Error {
        match self {
            e @ (Error::Syntax { .. } | Error::Name { .. } | Error::Arity { .. } | Error::Located { .. }) => e,
            e => Error::Located {
                pos,
                source: Box::new(e),
            },
        }
    }

    /// Input errors (bad documents, bad arguments) as opposed to failed verdicts.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Located { source, .. } => source.is_input_error(),
            Error::Syntax { .. }
            | Error::Name { .. }
            | Error::Arity { .. }
            | Error::Usage(_)
            | Error::Io(_)
            | Error::Field(_)
            | Error::InvalidGroup(_)
            | Error::GroupTooLarge { .. }
            | Error::Dimension(_)
            | Error::NotHomogeneous(_)
            | Error::NotHSubcomodule { .. }
            | Error::DegreeOverflow { .. } => true,
            _ => false,
        }
    }
}
