//! Galois width of permutation groups.

mod chain;
mod compute;
mod factor;
pub(crate) mod lattice;
mod mu;
mod oracle;
mod report;

pub use chain::{chain_cost, stabilizer_chain, SubgroupChain};
pub use compute::{width, width_with, WidthOptions};
pub use factor::{factor_multiset, identify_simple, FactorLabel, IdentifyOptions, MuProvenance, SimpleFactorId};
pub use mu::mu_exhaustive;
pub use oracle::width_oracle;
pub use report::{decomposition_width, width_by_factors, Confidence, JsonFactor, JsonReport, WidthReport};
