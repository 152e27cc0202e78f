//! Normal subgroups, quotients and composition series.

mod hom;
mod normal;
mod series;

pub use hom::ActionHom;
pub use normal::{derived_subgroup, is_simple, is_simple_with, is_solvable, normal_closure, SimplicityEvidence};
pub use series::{
    composition_series, find_proper_normal, quotient, CompositionLink, CompositionSeries, NormalWitness, QuotientRealization,
    SplitRecord, StructureOptions, Tactic,
};
