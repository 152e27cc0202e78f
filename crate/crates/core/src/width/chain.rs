use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::schreier::StabChain;
use crate::perm::PermGroup;

/// A descending chain of subgroups ending in the trivial group.
#[derive(Clone, Debug)]
pub struct SubgroupChain {
    links: Vec<PermGroup>,
    indices: Vec<BigUint>,
}

impl SubgroupChain {
    /// Checks that each link lies in its predecessor and the last is trivial.
    pub fn new(links: Vec<PermGroup>) -> Result<Self> {
        let Some(last) = links.last() else {
            return Err(Error::MalformedChain("a chain needs at least one link".into()));
        };
        if !last.is_trivial() && !last.order().is_one() {
            return Err(Error::MalformedChain("the last link is not trivial".into()));
        }
        let mut indices = Vec::with_capacity(links.len().saturating_sub(1));
        for (i, pair) in links.windows(2).enumerate() {
            if pair[1].degree() != pair[0].degree() || !pair[1].is_subgroup_of(&pair[0]) {
                return Err(Error::MalformedChain(format!("link {} is not contained in link {i}", i + 1)));
            }
            indices.push(pair[0].order() / pair[1].order());
        }
        Ok(SubgroupChain { links, indices })
    }

    pub fn links(&self) -> &[PermGroup] {
        &self.links
    }

    pub fn indices(&self) -> &[BigUint] {
        &self.indices
    }

    /// True iff every index is at least 2.
    pub fn is_strict(&self) -> bool {
        self.indices.iter().all(|i| *i >= BigUint::from(2u32))
    }
}

/// Largest index along the chain; 1 for the one-link chain `[1]`.
pub fn chain_cost(chain: &SubgroupChain) -> BigUint {
    chain.indices.iter().max().cloned().unwrap_or_else(BigUint::one)
}

/// The chain of stabilizers of `0`, `{0,1}`, … with repeated links removed.
/// The first index is the degree.
pub fn stabilizer_chain(group: &PermGroup) -> Result<SubgroupChain> {
    if !group.is_transitive() {
        return Err(Error::Intransitive);
    }
    let d = group.degree();
    let prefix: Vec<u32> = (0..d as u32).collect();
    let chain = StabChain::new(d, group.generators(), &prefix);
    let mut links = vec![group.clone()];
    for m in 1..=d {
        let h = PermGroup::from_parts(d, chain.level_generators(m));
        if h.order() != links.last().expect("nonempty").order() {
            links.push(h);
        }
        if links.last().expect("nonempty").is_trivial() {
            break;
        }
    }
    if !links.last().expect("nonempty").is_trivial() {
        links.push(PermGroup::trivial(d));
    }
    SubgroupChain::new(links)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn idx(c: &SubgroupChain) -> Vec<u64> {
        c.indices().iter().map(|i| num_traits::ToPrimitive::to_u64(i).unwrap()).collect()
    }

    #[test]
    fn stabilizer_chains() {
        assert_eq!(idx(&stabilizer_chain(&PermGroup::symmetric(3)).unwrap()), [3, 2]);
        assert_eq!(idx(&stabilizer_chain(&PermGroup::cyclic(5)).unwrap()), [5]);
        let a4 = idx(&stabilizer_chain(&PermGroup::alternating(4)).unwrap());
        assert_eq!(a4[0], 4);
        assert!(a4[1..].iter().all(|&i| i < 4));
        let s5 = stabilizer_chain(&PermGroup::symmetric(5)).unwrap();
        assert_eq!(chain_cost(&s5), BigUint::from(5u32));
        assert!(s5.is_strict());
        let split = PermGroup::new(4, vec![Permutation::parse_cycles("(1 2)", 4).unwrap()]).unwrap();
        assert!(matches!(stabilizer_chain(&split), Err(Error::Intransitive)));
    }

    #[test]
    fn chain_costs() {
        let p = |t: &str| Permutation::parse_cycles(t, 4).unwrap();
        let links = vec![
            PermGroup::symmetric(4),
            PermGroup::alternating(4),
            PermGroup::new(4, vec![p("(1 2)(3 4)"), p("(1 3)(2 4)")]).unwrap(),
            PermGroup::new(4, vec![p("(1 2)(3 4)")]).unwrap(),
            PermGroup::trivial(4),
        ];
        let c = SubgroupChain::new(links).unwrap();
        assert_eq!(idx(&c), [2, 3, 2, 2]);
        assert_eq!(chain_cost(&c), BigUint::from(3u32));
        let trivial = SubgroupChain::new(vec![PermGroup::trivial(3)]).unwrap();
        assert_eq!(chain_cost(&trivial), BigUint::one());
        assert!(SubgroupChain::new(vec![]).is_err());
        assert!(SubgroupChain::new(vec![PermGroup::alternating(4), PermGroup::symmetric(4)]).is_err());
    }
}
