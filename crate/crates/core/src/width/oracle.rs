use num_bigint::BigUint;

use super::chain::SubgroupChain;
use super::lattice::SubgroupLattice;
use super::report::{Confidence, WidthReport};
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// Minimum cost over all maximal chains, by dynamic programming over the full
/// subgroup lattice, with a witness chain.
pub fn width_oracle(group: &PermGroup, bound: u64) -> Result<WidthReport> {
    if group.order() > BigUint::from(bound) {
        return Err(Error::BoundExceeded { order: group.order().to_string(), bound });
    }
    let lattice = SubgroupLattice::build(group, bound)?;
    oracle_on_lattice(&lattice)
}

pub(crate) fn oracle_on_lattice(lattice: &SubgroupLattice) -> Result<WidthReport> {
    let subs = &lattice.subgroups;
    let mut order: Vec<usize> = (0..subs.len()).collect();
    order.sort_by_key(|&i| (subs[i].order, i));
    // best[k] = (cost of the cheapest maximal chain from k down to 1, next link)
    let mut best: Vec<Option<(u64, usize)>> = vec![None; subs.len()];
    let mut maximal_in: Vec<Vec<usize>> = vec![Vec::new(); subs.len()];
    for (h, s) in subs.iter().enumerate() {
        for &k in &s.covers {
            maximal_in[k].push(h);
        }
    }
    for &k in &order {
        if subs[k].order == 1 {
            best[k] = Some((1, k));
            continue;
        }
        let mut choice: Option<(u64, usize)> = None;
        for &h in &maximal_in[k] {
            let (below, _) = best[h].expect("smaller subgroups come first");
            let cost = ((subs[k].order / subs[h].order) as u64).max(below);
            if choice.is_none_or(|(c, _)| cost < c) {
                choice = Some((cost, h));
            }
        }
        best[k] = choice;
    }
    let top = lattice.top();
    let (width, _) = best[top].ok_or_else(|| Error::Internal("no chain reaches the whole group".into()))?;
    let mut links = vec![lattice.group_of(top)];
    let mut cur = top;
    while subs[cur].order > 1 {
        cur = best[cur].expect("reachable").1;
        links.push(lattice.group_of(cur));
    }
    Ok(WidthReport {
        width,
        confidence: Confidence::Proved,
        factors: Vec::new(),
        chain: Some(SubgroupChain::new(links)?),
        notes: Vec::new(),
    })
}
