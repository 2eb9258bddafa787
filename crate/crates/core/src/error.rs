use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("index out of range at byte {pos}: {message}")]
    Range { pos: usize, message: String },
    #[error("no substitution given for {0}")]
    MissingMapping(String),
    #[error("invalid surface: {0}")]
    Spec(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("letter {letter} at position {pos} is not allowed here: {reason}")]
    Letter { pos: usize, letter: String, reason: String },
    #[error("conjugation {conjugator} . {target} violates the strand order (need target strand < conjugator strand)")]
    IndexDiscipline { conjugator: String, target: String },
    #[error("rewrite budget of {limit} steps exhausted")]
    StepBudget { limit: u64 },
}
