use num_bigint::BigUint;

use super::factor::FactorLabel;
use super::oracle::width_oracle;
use super::report::{order_of_factors, width_by_factors, Confidence, WidthReport};
use crate::error::{Error, Result};
use crate::perm::PermGroup;
use crate::structure::{composition_series, is_solvable, StructureOptions};

#[derive(Clone, Debug)]
pub struct WidthOptions {
    pub structure: StructureOptions,
    /// Largest order handed to the lattice oracle.
    pub oracle_bound: u64,
    /// Compare with the oracle whenever the order is within `oracle_bound`.
    pub cross_check: bool,
}

impl Default for WidthOptions {
    fn default() -> Self {
        WidthOptions { structure: StructureOptions::default(), oracle_bound: 2000, cross_check: false }
    }
}

/// Width of a group from its composition factors.
pub fn width(group: &PermGroup) -> Result<WidthReport> {
    width_with(group, &WidthOptions::default())
}

pub fn width_with(group: &PermGroup, opts: &WidthOptions) -> Result<WidthReport> {
    let series = composition_series(group, &opts.structure)?;
    let factors = series.factors();
    if order_of_factors(&factors) != group.order() {
        return Err(Error::Internal("composition factor orders do not multiply to the group order".into()));
    }
    let mut report = width_by_factors(&factors);
    if !series.is_certified() {
        report.confidence = report.confidence.weaker(Confidence::UpperBoundOnly);
        report.notes.push("simplicity of some factor was only sampled".into());
    }
    if factors.iter().all(|f| matches!(f.label, FactorLabel::Cyclic(_))) && !factors.is_empty() {
        let largest = group.order_primes().last().copied().unwrap_or(1);
        if !is_solvable(group) || report.width != largest {
            return Err(Error::Internal(format!("solvable group of width {} but largest prime {largest}", report.width)));
        }
    }
    if opts.cross_check && group.order() <= BigUint::from(opts.oracle_bound) {
        let oracle = width_oracle(group, opts.oracle_bound)?;
        if oracle.width != report.width {
            return Err(Error::Internal(format!("factor width {} disagrees with oracle width {}", report.width, oracle.width)));
        }
        report.chain = oracle.chain;
        report.notes.push("confirmed by exhaustive chain search".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_alternating() {
        for n in 2..=8usize {
            let expected = if n == 4 { 3 } else { n as u64 };
            assert_eq!(width(&PermGroup::symmetric(n)).unwrap().width, expected);
            if n >= 3 {
                assert_eq!(width(&PermGroup::alternating(n)).unwrap().width, expected.max(3));
            }
        }
    }

    #[test]
    fn cross_check_attaches_a_chain() {
        let opts = WidthOptions { cross_check: true, ..WidthOptions::default() };
        let r = width_with(&PermGroup::symmetric(4), &opts).unwrap();
        assert_eq!(r.width, 3);
        assert!(r.chain.is_some());
        assert!(r.is_consistent());
    }
}
