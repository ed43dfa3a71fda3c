//! Abstract presentations, word reduction, Gram matrices and positivity.

pub mod gram;
pub mod presentation;
pub mod psd;
pub mod series;
pub mod words;

pub use gram::{abstract_gram, vacuum_expectation, GramMatrix, LowestWeightData, Reducer, Strategy};
pub use presentation::{Bracket, Presentation};
pub use psd::{psd_check, psd_matrix, quadratic_form, PsdResult};
pub use series::discrete_series;
pub use words::{pbw_words, AlgebraKind, Letter, Role, Word};
