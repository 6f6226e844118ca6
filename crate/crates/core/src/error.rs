use alloc::string::String;

use crate::redex::Position;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("stale redex: no {rule} redex at position {position:?}")]
    StaleRedex { rule: String, position: Position },
    #[error("subject is outside the {fragment} fragment required by the {strategy} strategy")]
    FragmentViolation {
        fragment: &'static str,
        strategy: &'static str,
    },
    #[error("substituting {covar} by a non-covariable context inside a context named {covar} leaves the context grammar")]
    UnrepresentableContext { covar: String },
}
