use thiserror::Error;

use crate::value::Value;

/// Failures raised by kernel operations. Witness values identify the element
/// responsible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("not functional: {0} has two images")]
    NotFunctional(Value),
    #[error("outside domain: {0}")]
    OutsideDomain(Value),
    #[error("not injective: {0} and {1} have the same image")]
    NotInjective(Value, Value),
    #[error("not well defined: {0} and {1} agree under the proxy but not under the target")]
    NotWellDefined(Value, Value),
    #[error("proxy and target functions have different domains")]
    DomainMismatch,
    #[error("domain element {0} is not a pair")]
    DomainNotPairs(Value),
    #[error("family member at index {0} is not a set")]
    NotSetFamily(Value),
    #[error("family member at index {0} is not a function")]
    NotFunctionFamily(Value),
    #[error("family member at index {0} is not a relation")]
    NotRelationFamily(Value),
    #[error("empty family")]
    EmptyFamily,
    #[error("empty index set")]
    EmptyIndex,
    #[error("carrier mismatch at index {0}")]
    CarrierMismatch(Value),
    #[error("not a relation: element {0} is not a pair")]
    NotARelation(Value),
    #[error("expected {expected}, found {found}")]
    TypeMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("budget exceeded: estimated {0} evaluations")]
    BudgetExceeded(u128),
}

pub type Result<T, E = KernelError> = std::result::Result<T, E>;
