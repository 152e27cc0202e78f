use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::schreier::StabChain;
use crate::perm::{PermGroup, Permutation};
use crate::primes::{factor_u64, is_prime};

/// Smallest normal subgroup of `group` containing `elements`.
pub fn normal_closure(group: &PermGroup, elements: &[Permutation]) -> Result<PermGroup> {
    for x in elements {
        if !group.contains(x)? {
            return Err(Error::NotInGroup);
        }
    }
    Ok(closure_unchecked(group, elements.to_vec()))
}

pub(crate) fn closure_unchecked(group: &PermGroup, mut queue: Vec<Permutation>) -> PermGroup {
    let d = group.degree();
    let mut chain = StabChain::new(d, &[], &[]);
    let mut gens = Vec::new();
    while let Some(x) = queue.pop() {
        if x.is_identity() || !chain.insert(&x) {
            continue;
        }
        for g in group.generators() {
            queue.push(x.conjugate_by(g));
        }
        gens.push(x);
    }
    if gens.is_empty() {
        PermGroup::trivial(d)
    } else {
        PermGroup::with_chain(d, gens, chain)
    }
}

fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.inverse().mul(&b.inverse()).mul(a).mul(b)
}

/// Commutator subgroup, the normal closure of generator commutators.
pub fn derived_subgroup(group: &PermGroup) -> PermGroup {
    let gens = group.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(commutator(a, b));
        }
    }
    closure_unchecked(group, comms)
}

/// True iff the derived series reaches the trivial group.
pub fn is_solvable(group: &PermGroup) -> bool {
    let mut g = group.clone();
    loop {
        if g.is_trivial() {
            return true;
        }
        let d = derived_subgroup(&g);
        if d.order() == g.order() {
            return false;
        }
        g = d;
    }
}

/// Conjugacy class representatives of a group given by its element list.
pub(crate) fn class_representatives(group: &PermGroup, elements: &[Permutation]) -> Vec<Permutation> {
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut seen = vec![false; elements.len()];
    let mut reps = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        reps.push(x.clone());
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            for g in group.generators() {
                let z = y.conjugate_by(g);
                let j = index[&z];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(z);
                }
            }
        }
    }
    reps
}

/// Prime-order powers of `g`.
fn prime_order_powers(g: &Permutation) -> Vec<Permutation> {
    let Some(ord) = g.order().to_u64() else {
        return Vec::new();
    };
    let mut ps = factor_u64(ord);
    ps.dedup();
    ps.into_iter().map(|p| g.pow(ord / p)).collect()
}

/// Elements whose normal closures are tried when looking for a proper normal
/// subgroup, and whether they exhaust all conjugacy classes.
pub(crate) fn closure_candidates(group: &PermGroup, exhaustive_bound: u64, samples: usize) -> (Vec<Permutation>, bool) {
    if let Some(elems) = group.elements(exhaustive_bound) {
        let mut reps = class_representatives(group, &elems);
        reps.retain(|g| !g.is_identity());
        // small element orders first: prime-order classes give small closures
        reps.sort_by_key(|g| g.order());
        return (reps, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(group.degree() as u64);
    let mut out = Vec::new();
    for _ in 0..samples {
        let g = group.random_element(&mut rng);
        if g.is_identity() {
            continue;
        }
        out.extend(prime_order_powers(&g));
        out.push(g);
    }
    out.extend(group.generators().iter().cloned());
    (out, false)
}

/// How simplicity of a group was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplicityEvidence {
    PrimeOrder,
    /// Degree `n ≥ 5` and order `n!/2`: the natural alternating group.
    NaturalAlternating,
    /// Every conjugacy class has normal closure equal to the group.
    Exhaustive,
    /// Only sampled elements were checked.
    Sampled,
}

impl SimplicityEvidence {
    pub fn is_certified(self) -> bool {
        !matches!(self, SimplicityEvidence::Sampled)
    }
}

pub(crate) fn natural_alternating(group: &PermGroup) -> bool {
    let n = group.degree() as u64;
    n >= 5 && group.order() * BigUint::from(2u32) == crate::primes::factorial(n)
}

pub(crate) fn prime_order(group: &PermGroup) -> Option<u64> {
    group.order().to_u64().filter(|&p| is_prime(p))
}

/// Simplicity test: every candidate element must have normal closure equal
/// to the group. Candidates are all class representatives when
/// `|G| <= exhaustive_bound`, else `samples` random elements together with
/// their prime-order powers and the generators.
pub fn is_simple_with(group: &PermGroup, exhaustive_bound: u64, samples: usize) -> Result<(bool, SimplicityEvidence)> {
    let order = group.order();
    if order.is_one() {
        return Err(Error::TrivialGroup);
    }
    if prime_order(group).is_some() {
        return Ok((true, SimplicityEvidence::PrimeOrder));
    }
    if group.is_abelian() {
        return Ok((false, SimplicityEvidence::Exhaustive));
    }
    if natural_alternating(group) {
        return Ok((true, SimplicityEvidence::NaturalAlternating));
    }
    let (cands, exhaustive) = closure_candidates(group, exhaustive_bound, samples);
    for x in cands {
        if closure_unchecked(group, vec![x]).order() != order {
            return Ok((false, SimplicityEvidence::Exhaustive));
        }
    }
    let evidence = if exhaustive { SimplicityEvidence::Exhaustive } else { SimplicityEvidence::Sampled };
    Ok((true, evidence))
}

/// Default simplicity test: exhaustive up to order 10⁴, otherwise 64 random
/// elements.
pub fn is_simple(group: &PermGroup) -> Result<bool> {
    Ok(is_simple_with(group, 10_000, 64)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(text, d).unwrap()
    }

    #[test]
    fn closure_examples() {
        let v4 = normal_closure(&PermGroup::symmetric(4), &[perm("(1 2)(3 4)", 4)]).unwrap();
        assert_eq!(v4.order(), BigUint::from(4u32));
        let a5 = normal_closure(&PermGroup::symmetric(5), &[perm("(1 2 3)", 5)]).unwrap();
        assert_eq!(a5.order(), BigUint::from(60u32));
        let t = normal_closure(&PermGroup::symmetric(5), &[Permutation::identity(5)]).unwrap();
        assert!(t.is_trivial());
        assert!(matches!(normal_closure(&PermGroup::alternating(4), &[perm("(1 2)", 4)]), Err(Error::NotInGroup)));
    }

    #[test]
    fn closure_is_normal() {
        let s5 = PermGroup::symmetric(5);
        let n = normal_closure(&s5, &[perm("(1 2)(3 4)", 5)]).unwrap();
        assert!(n.is_normal_in(&s5));
        assert_eq!(n.order(), BigUint::from(60u32));
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(derived_subgroup(&PermGroup::symmetric(4)).order(), BigUint::from(12u32));
        assert_eq!(derived_subgroup(&PermGroup::alternating(4)).order(), BigUint::from(4u32));
        assert!(derived_subgroup(&PermGroup::cyclic(6)).is_trivial());
        assert!(is_solvable(&PermGroup::symmetric(4)));
        assert!(!is_solvable(&PermGroup::symmetric(5)));
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&PermGroup::alternating(5)).unwrap());
        assert!(!is_simple(&PermGroup::alternating(4)).unwrap());
        assert!(is_simple(&PermGroup::cyclic(7)).unwrap());
        assert!(!is_simple(&PermGroup::symmetric(5)).unwrap());
        assert!(matches!(is_simple(&PermGroup::trivial(3)), Err(Error::TrivialGroup)));
        // PSL(2,5) on the projective line: x+1 and -1/x, with 6 standing for infinity
        let a5_on_6 = PermGroup::new(6, vec![perm("(1 2 3 4 5)", 6), perm("(1 6)(2 5)", 6)]).unwrap();
        assert_eq!(a5_on_6.order(), BigUint::from(60u32));
        assert_eq!(is_simple_with(&a5_on_6, 10_000, 64).unwrap(), (true, SimplicityEvidence::Exhaustive));
    }

    #[test]
    fn class_counts() {
        let s4 = PermGroup::symmetric(4);
        let reps = class_representatives(&s4, &s4.elements(100).unwrap());
        assert_eq!(reps.len(), 5);
        let a5 = PermGroup::alternating(5);
        let reps = class_representatives(&a5, &a5.elements(100).unwrap());
        assert_eq!(reps.len(), 5);
    }
}
