use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigUint;

use super::lattice::{BitSet, SubgroupLattice};
use crate::error::Result;
use crate::perm::PermGroup;

/// Exact minimal faithful permutation degree of a group of order at most
/// `bound`, or `None` above it.
///
/// Every transitive constituent of an action is a coset action with a
/// point stabilizer `H`, whose kernel is the core of `H`. So `μ(G)` is the
/// least total index of a family of subgroups with trivially intersecting
/// cores, found here by a shortest-path search over intersections of cores.
pub fn mu_exhaustive(group: &PermGroup, bound: u64) -> Result<Option<u64>> {
    if group.order() > BigUint::from(bound) {
        return Ok(None);
    }
    let lattice = SubgroupLattice::build(group, bound)?;
    Ok(Some(mu_from_lattice(&lattice)))
}

pub(crate) fn mu_from_lattice(lattice: &SubgroupLattice) -> u64 {
    let n = lattice.table.len();
    if n == 1 {
        return 1;
    }
    // cheapest index realizing each core
    let mut core_cost: HashMap<BitSet, u64> = HashMap::new();
    let mut done = vec![false; lattice.subgroups.len()];
    for id in 0..lattice.subgroups.len() {
        if done[id] {
            continue;
        }
        let class = lattice.conjugacy_class(id);
        let mut core = lattice.subgroups[id].elements.clone();
        for &c in &class {
            done[c] = true;
            core = core.intersect(&lattice.subgroups[c].elements);
        }
        let index = (n / lattice.subgroups[id].order) as u64;
        core_cost.entry(core).and_modify(|c| *c = (*c).min(index)).or_insert(index);
    }
    let mut cores: Vec<(BitSet, u64)> = core_cost.into_iter().collect();
    cores.sort();
    let mut whole = BitSet::new(n);
    for x in 0..n as u32 {
        whole.insert(x);
    }
    let mut best: HashMap<BitSet, u64> = HashMap::from([(whole.clone(), 0)]);
    let mut heap = BinaryHeap::from([Reverse((0u64, whole))]);
    while let Some(Reverse((cost, state))) = heap.pop() {
        if state.len() == 1 {
            return cost.max(1);
        }
        if best.get(&state).is_some_and(|&b| b < cost) {
            continue;
        }
        for (core, c) in &cores {
            let next = state.intersect(core);
            if next == state {
                continue;
            }
            let total = cost + c;
            if best.get(&next).is_none_or(|&b| total < b) {
                best.insert(next.clone(), total);
                heap.push(Reverse((total, next)));
            }
        }
    }
    unreachable!("the trivial subgroup has trivial core")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn mu(g: &PermGroup) -> u64 {
        mu_exhaustive(g, 2000).unwrap().unwrap()
    }

    #[test]
    fn small_groups() {
        let c2xc3 = PermGroup::new(
            5,
            vec![Permutation::parse_cycles("(1 2)", 5).unwrap(), Permutation::parse_cycles("(3 4 5)", 5).unwrap()],
        )
        .unwrap();
        assert_eq!(mu(&c2xc3), 5);
        // the regular C6 on 6 points has the same abstract group
        assert_eq!(mu(&PermGroup::cyclic(6)), 5);
        assert_eq!(mu(&PermGroup::alternating(5)), 5);
        assert_eq!(mu(&PermGroup::symmetric(4)), 4);
        assert_eq!(mu(&PermGroup::cyclic(4)), 4);
        assert_eq!(mu(&PermGroup::cyclic(12)), 7);
        assert_eq!(mu(&PermGroup::trivial(3)), 1);
        // V4 acting regularly embeds in S4 via (12),(34)
        assert_eq!(mu(&PermGroup::dihedral(2)), 4);
        assert_eq!(mu(&PermGroup::cyclic(2)), 2);
    }

    #[test]
    fn bound_gives_none() {
        assert_eq!(mu_exhaustive(&PermGroup::symmetric(7), 2000).unwrap(), None);
    }
}
