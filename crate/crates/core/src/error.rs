use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration set needs at least one phase")]
    EmptyConfigurationSet,
    #[error("channel realization needs at least one cascaded coefficient")]
    NoElements,
    #[error("invalid coupling parameters: {0}")]
    InvalidCoupling(&'static str),
    #[error("invalid link parameters: {0}")]
    InvalidLink(&'static str),
    #[error("expected {expected} picks, got {got}")]
    PickCountMismatch { expected: usize, got: usize },
    #[error("choice index {index} out of range for a set of {len}")]
    ChoiceOutOfRange { index: usize, len: usize },
    #[error("direct channel is zero; its phase is undefined")]
    ZeroDirectChannel,
    #[error("grid needs at least 2 phases, got {0}")]
    GridTooSmall(usize),
    #[error("option size {k} is invalid for a grid of {m} phases")]
    InvalidOptionSize { k: usize, m: usize },
    #[error("option {0:?} is not a strictly increasing list of grid indices")]
    InvalidOption(alloc::vec::Vec<usize>),
    #[error("search size {required} exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("magnitude must be finite and non-negative")]
    InvalidMagnitude,
}
