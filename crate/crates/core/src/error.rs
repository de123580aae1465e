use thiserror::Error;

use crate::cat::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot mix exact and float values")]
    ModeMismatch,
    #[error("{0} leaves the rationals; use float mode")]
    Inexact(&'static str),
    #[error("value {0} is outside [0,1]")]
    OutOfRange(String),
    #[error("grid is not closed: {op}({x}, {y}) = {value} is not a grid point")]
    NotClosed {
        x: String,
        y: String,
        op: &'static str,
        value: String,
    },
    #[error("closure exceeded the cap of {0} points")]
    CapExceeded(usize),
    #[error("enumeration needs {needed} candidates, bound is {bound}")]
    BoundExceeded { needed: u128, bound: u128 },
    #[error("t-norm {0} is not Archimedean")]
    NotArchimedean(String),
    #[error("invalid t-norm: {0}")]
    InvalidTNorm(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a category: {0}")]
    NotACategory(Violation),
    #[error("not a functor: X({x},{y}) > Y(f{x},f{y})")]
    NotAFunctor { x: usize, y: usize },
    #[error("not a distributor at {0:?}")]
    NotADistributor(Vec<usize>),
    #[error("not a weight: phi({x2}) (x) X({x1},{x2}) > phi({x1})")]
    NotAWeight { x1: usize, x2: usize },
    #[error("not a coweight: X({y1},{y2}) (x) psi({y1}) > psi({y2})")]
    NotACoweight { y1: usize, y2: usize },
    #[error("base mismatch: expected {expected} elements, found {found}")]
    BaseMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("ball family is not directed")]
    NotDirected,
    #[error("invalid module action: {0}")]
    InvalidAction(String),
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
