//! Word problem and combed normal forms for braid groups of closed surfaces.
//!
//! A braid word over `σ_i` and `a_r` is split into a pure part and a
//! transversal permutation word ([`sigma_machine`]), the pure part is
//! combed strand by strand into free levels ([`combing`]), and the last
//! level is put in canonical form inside the surface group ([`pi1`]).

pub mod combing;
pub mod conj;
pub mod error;
pub mod oracles;
pub mod pi1;
pub mod presentations;
pub mod sigma_machine;
pub mod solver;
pub mod sym;
pub mod words;

pub use combing::{comb, CombedForm};
pub use conj::{conj_word, eliminate_tn, sigma_conj, sigma_unconj, ConjRule, Dictionary};
pub use error::{SolverError, WordError};
pub use presentations::{
    band_definition, change_of_generators, expand_to_theorem_generators, relators, Direction, PresentationLevel,
};
pub use solver::{NormalFormReport, Solver};
pub use sym::{epsilon, exponents_of_perm, perm_of_word, Perm, TransversalState};
pub use words::{Gen, Letter, SurfaceSpec, Word};
