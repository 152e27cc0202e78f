//! Permutations, permutation groups and their strong generating structure.

mod blocks;
mod group;
mod permutation;
pub(crate) mod schreier;

pub use blocks::BlockSystem;
pub use group::PermGroup;
pub(crate) use permutation::parse_cycle_list;
pub use permutation::Permutation;

#[cfg(test)]
pub(crate) mod testing {
    use std::collections::HashSet;

    use super::{PermGroup, Permutation};

    /// Brute-force closure of the generators under composition.
    pub fn closure(g: &PermGroup) -> HashSet<Permutation> {
        let id = Permutation::identity(g.degree());
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for s in g.generators() {
                let y = s.mul(&x);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }
}
