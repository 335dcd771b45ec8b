use std::fmt;

use thiserror::Error;

/// Errors produced by constructions, validators and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation would exceed a configured size bound.
    #[error("size limit exceeded: {what} needs {required}, bound is {bound}")]
    Size {
        what: String,
        required: String,
        bound: usize,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    /// A Cayley table does not describe a group.
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    /// Near-ring tables violate an axiom.
    #[error("{0}")]
    Violation(Violation),
    /// A semigroup assignment is not a valid endomorphism semigroup.
    #[error("invalid semigroup assignment: {0}")]
    Semigroup(String),
    #[error("invalid multiplicative automorphism: {0}")]
    MultAutomorphism(String),
    #[error("{0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn size(what: impl Into<String>, required: impl fmt::Display, bound: usize) -> Self {
        Error::Size {
            what: what.into(),
            required: required.to_string(),
            bound,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// The near-ring axiom a set of tables fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Shape,
    AdditiveGroup,
    ZeroSymmetry,
    Identity,
    RightDistributivity,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Shape => "table shape",
            Axiom::AdditiveGroup => "additive group",
            Axiom::ZeroSymmetry => "zero-symmetry",
            Axiom::Identity => "multiplicative identity",
            Axiom::RightDistributivity => "right distributivity",
            Axiom::Associativity => "multiplicative associativity",
        };
        f.write_str(s)
    }
}

/// Which table a violation points into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Table {
    Add,
    Mul,
}

/// First violated axiom together with a witnessing tuple of elements and
/// the table cell most directly implicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    /// `(table, row, column)` of an offending entry, when one exists.
    pub cell: Option<(Table, usize, usize)>,
    pub detail: String,
}

impl Violation {
    pub(crate) fn new(axiom: Axiom, witness: Vec<usize>, cell: Option<(Table, usize, usize)>, detail: String) -> Self {
        Violation {
            axiom,
            witness,
            cell,
            detail,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated", self.axiom)?;
        if !self.witness.is_empty() {
            let w: Vec<String> = self.witness.iter().map(|x| x.to_string()).collect();
            write!(f, " at ({})", w.join(", "))?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Violation(v)
    }
}
