use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("denominator vanishes at the evaluation point")]
    SingularPoint,
    #[error("operands live in different gauge charts")]
    ChartMismatch,
    #[error("radius r = |x| is not rational at this point")]
    IrrationalRadius,
    #[error("product would create {needed} terms, over the budget of {budget}")]
    TermBudgetExceeded { needed: usize, budget: usize },
}
