//! Minimal W-algebra structure data: Lie superalgebras, gradations, central
//! charges, λ-brackets and the unitary-range catalog.

pub mod catalog;
pub mod lambda;
pub mod lie;
pub mod poly;

pub use catalog::{collapsing_levels, identity_check, lookup, unitary_range, CatalogEntry, Collapse, IdentityCheck, LevelRange, Target, UnitaryRange};
pub use lambda::{borcherds_modes, BracketKind, LambdaPolynomial, MinimalData, ModeCombination, WElement, WSymbol};
pub use lie::{
    central_charge, central_charge_symbolic, dual_coxeter, g_natural, load_named, load_superalgebra,
    minimal_gradation, GNatural, LieSuperalgebra, MinimalGradation,
};
pub use poly::{Polynomial, RationalFunction};
