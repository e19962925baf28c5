//! Fitting, characteristic and congruence ideals.

mod congruence;
mod fitting;
mod ideal;
mod suite;

pub use congruence::{
    congruence_decomposition_check, congruence_ideal, congruence_suite, cubic_chain, kahler_fitting_ideal,
    kahler_presentation, random_cubic_roots, transferred_congruence_ideal, DecompositionCheck, FiniteFlatAlgebra,
    CUBIC_CHAIN_CASES,
};
pub use fitting::{char_mod_s_check, fitting_minors, CharIdeal, Ideal, Presentation, RingTag};
pub use ideal::{prepare_poly, DvrIdeal, IwasawaIdeal, WeierstrassIdeal};
pub use suite::{fitting_property_suite, prime_pool, CHAR_MOD_S_CASES, ITEM_CASES};
