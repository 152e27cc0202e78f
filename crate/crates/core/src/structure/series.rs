use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::hom::{restriction_images, ActionHom};
use super::normal::{
    closure_candidates, closure_unchecked, derived_subgroup, natural_alternating, prime_order, SimplicityEvidence,
};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::width::{identify_simple, IdentifyOptions, SimpleFactorId};

/// Ways of producing a proper nontrivial normal subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tactic {
    OrbitKernel,
    BlockKernel,
    Derived,
    NormalClosure,
}

impl Tactic {
    pub const DEFAULT_ORDER: [Tactic; 4] = [Tactic::OrbitKernel, Tactic::BlockKernel, Tactic::Derived, Tactic::NormalClosure];
}

#[derive(Clone, Debug)]
pub struct StructureOptions {
    /// Largest index for which the coset action is built.
    pub coset_cap: u64,
    /// Groups up to this order are searched class by class.
    pub exhaustive_bound: u64,
    /// Random elements tried in larger groups.
    pub samples: usize,
    pub tactics: Vec<Tactic>,
    pub identify: IdentifyOptions,
    /// Record every `(G, N, G/N)` split made during the recursion.
    pub record_splits: bool,
}

impl Default for StructureOptions {
    fn default() -> Self {
        StructureOptions {
            coset_cap: 100_000,
            exhaustive_bound: 10_000,
            samples: 64,
            tactics: Tactic::DEFAULT_ORDER.to_vec(),
            identify: IdentifyOptions::default(),
            record_splits: false,
        }
    }
}

/// A proper nontrivial normal subgroup, with the action realizing the quotient
/// when it came from one.
#[derive(Clone, Debug)]
pub struct NormalWitness {
    pub subgroup: PermGroup,
    pub tactic: Tactic,
    action: Option<ActionHom>,
}

fn kernel_if_proper(hom: ActionHom) -> Option<(PermGroup, ActionHom)> {
    let k = hom.kernel();
    (!k.is_trivial()).then_some((k, hom))
}

fn orbit_kernel(group: &PermGroup) -> Option<(PermGroup, ActionHom)> {
    let orbits = group.orbits();
    if orbits.len() == 1 {
        return None;
    }
    for orbit in orbits.iter().filter(|o| o.len() > 1) {
        let images = restriction_images(group, orbit);
        let hom = ActionHom::new(group, orbit.len(), images).expect("restriction");
        if let Some(found) = kernel_if_proper(hom) {
            return Some(found);
        }
    }
    None
}

fn block_kernel(group: &PermGroup) -> Option<(PermGroup, ActionHom)> {
    if !group.is_transitive() {
        return None;
    }
    for sys in group.block_systems() {
        let images = group.generators().iter().map(|g| sys.action_of(g)).collect();
        let hom = ActionHom::new(group, sys.block_count(), images).expect("block action");
        if let Some(found) = kernel_if_proper(hom) {
            return Some(found);
        }
    }
    None
}

fn abelian_split(group: &PermGroup) -> Option<PermGroup> {
    let g = group.generators().first()?;
    let ord = g.order().to_u64()?;
    let p = crate::primes::factor_u64(ord)[0];
    Some(PermGroup::from_parts(group.degree(), vec![g.pow(ord / p)]))
}

/// A proper nontrivial normal subgroup, or `None` when every tactic fails, in
/// which case the group is simple as far as the tactics can tell.
pub fn find_proper_normal(group: &PermGroup, opts: &StructureOptions) -> Result<Option<NormalWitness>> {
    let order = group.order();
    if order.is_one() {
        return Err(Error::TrivialGroup);
    }
    if prime_order(group).is_some() || natural_alternating(group) {
        return Ok(None);
    }
    for &tactic in &opts.tactics {
        let found = match tactic {
            Tactic::OrbitKernel => orbit_kernel(group).map(|(k, h)| (k, Some(h))),
            Tactic::BlockKernel => block_kernel(group).map(|(k, h)| (k, Some(h))),
            Tactic::Derived => {
                let d = derived_subgroup(group);
                (!d.is_trivial() && d.order() < order).then_some((d, None))
            }
            Tactic::NormalClosure => {
                if group.is_abelian() {
                    abelian_split(group).map(|n| (n, None))
                } else {
                    let (cands, _) = closure_candidates(group, opts.exhaustive_bound, opts.samples);
                    cands
                        .into_iter()
                        .map(|x| closure_unchecked(group, vec![x]))
                        .filter(|n| n.order() < order)
                        .min_by_key(|n| n.order())
                        .map(|n| (n, None))
                }
            }
        };
        if let Some((subgroup, action)) = found {
            return Ok(Some(NormalWitness { subgroup, tactic, action }));
        }
    }
    Ok(None)
}

/// `G/N` as a permutation group.
#[derive(Clone, Debug)]
pub struct QuotientRealization {
    pub quotient: PermGroup,
    /// Images of the parent generators, in order.
    pub projection: Vec<Permutation>,
    pub kernel_witness: PermGroup,
    hom: ActionHom,
}

impl QuotientRealization {
    fn from_hom(hom: ActionHom, kernel: PermGroup) -> Self {
        QuotientRealization { quotient: hom.target().clone(), projection: hom.images().to_vec(), kernel_witness: kernel, hom }
    }

    /// Image of a parent element.
    pub fn project(&self, g: &Permutation) -> Result<Permutation> {
        self.hom.image(g)
    }

    /// Some preimage of a quotient element.
    pub fn lift(&self, q: &Permutation) -> Result<Permutation> {
        self.hom.lift(q)
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, sub: &PermGroup) -> Result<PermGroup> {
        self.hom.preimage(sub, &self.kernel_witness)
    }
}

/// Action of `group` on the orbits of its normal subgroup `normal`.
fn orbit_partition_action(group: &PermGroup, normal: &PermGroup) -> Option<ActionHom> {
    let orbits = normal.orbits();
    if orbits.len() < 2 {
        return None;
    }
    let mut block_of = vec![0u32; group.degree()];
    for (i, o) in orbits.iter().enumerate() {
        for &p in o {
            block_of[p as usize] = i as u32;
        }
    }
    let images: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| Permutation::from_images_unchecked(orbits.iter().map(|o| block_of[g.apply(o[0]) as usize]).collect()))
        .collect();
    ActionHom::new(group, orbits.len(), images).ok()
}

/// Action of `group` on the left cosets of `normal` by left multiplication.
fn coset_action(group: &PermGroup, normal: &PermGroup, cap: u64) -> Result<ActionHom> {
    let index = group.order() / normal.order();
    if index > BigUint::from(cap) {
        return Err(Error::QuotientCap { index: index.to_string(), cap });
    }
    let key = |g: &Permutation| normal.chain().left_coset_key(g);
    let d = group.degree();
    let mut reps = vec![Permutation::identity(d)];
    let mut slot: HashMap<Vec<u32>, u32> = HashMap::from([(key(&reps[0]), 0)]);
    let gens = group.generators();
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut k = 0;
    while k < reps.len() {
        for (s, g) in gens.iter().enumerate() {
            let x = g.mul(&reps[k]);
            let kx = key(&x);
            let next = reps.len() as u32;
            let j = *slot.entry(kx).or_insert_with(|| {
                reps.push(x);
                next
            });
            images[s].push(j);
        }
        k += 1;
    }
    let images = images.into_iter().map(Permutation::from_images_unchecked).collect();
    ActionHom::new(group, reps.len(), images)
}

/// Realizes `G/N`, preferring the action on `N`-orbits when its kernel is
/// exactly `N`, else the coset action.
pub fn quotient(group: &PermGroup, normal: &PermGroup, opts: &StructureOptions) -> Result<QuotientRealization> {
    if !normal.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    quotient_unchecked(group, normal, opts)
}

fn quotient_unchecked(group: &PermGroup, normal: &PermGroup, opts: &StructureOptions) -> Result<QuotientRealization> {
    let index = group.order() / normal.order();
    if let Some(hom) = orbit_partition_action(group, normal) {
        if hom.target().order() == index {
            return Ok(QuotientRealization::from_hom(hom, normal.clone()));
        }
    }
    let hom = coset_action(group, normal, opts.coset_cap)?;
    Ok(QuotientRealization::from_hom(hom, normal.clone()))
}

#[derive(Clone, Debug)]
pub struct CompositionLink {
    /// `Nᵢ`; the next link's subgroup is `Nᵢ₊₁`, the last is followed by 1.
    pub subgroup: PermGroup,
    /// `Nᵢ / Nᵢ₊₁`.
    pub factor: SimpleFactorId,
    pub simplicity: SimplicityEvidence,
}

/// One normal split made while building a series.
#[derive(Clone, Debug)]
pub struct SplitRecord {
    pub group: PermGroup,
    pub normal: PermGroup,
    pub quotient: PermGroup,
}

#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub links: Vec<CompositionLink>,
    pub splits: Vec<SplitRecord>,
}

impl CompositionSeries {
    pub fn factors(&self) -> Vec<SimpleFactorId> {
        self.links.iter().map(|l| l.factor.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// True iff all factor simplicity checks are certified, not sampled.
    pub fn is_certified(&self) -> bool {
        self.links.iter().all(|l| l.simplicity.is_certified())
    }

    /// Checks normality of each link in its predecessor and that factor
    /// orders match the order ratios.
    pub fn verify(&self) -> Result<()> {
        for (i, link) in self.links.iter().enumerate() {
            let top = &link.subgroup;
            let next = match self.links.get(i + 1) {
                Some(l) => l.subgroup.clone(),
                None => PermGroup::trivial(top.degree()),
            };
            if !next.is_normal_in(top) {
                return Err(Error::MalformedChain(format!("link {} is not normal", i + 1)));
            }
            if top.order() != next.order() * &link.factor.order {
                return Err(Error::MalformedChain(format!(
                    "factor {i} has order {} but the index is {}",
                    link.factor.order,
                    top.order() / next.order()
                )));
            }
        }
        Ok(())
    }
}

struct Builder<'a> {
    opts: &'a StructureOptions,
    found: Vec<SimpleFactorId>,
    splits: Vec<SplitRecord>,
}

impl Builder<'_> {
    fn simple_link(&mut self, group: &PermGroup, evidence: SimplicityEvidence) -> Result<Vec<CompositionLink>> {
        let factor = identify_simple(group, &self.opts.identify)?;
        self.found.push(factor.clone());
        Ok(vec![CompositionLink { subgroup: group.clone(), factor, simplicity: evidence }])
    }

    fn series(&mut self, group: &PermGroup) -> Result<Vec<CompositionLink>> {
        if group.is_trivial() {
            return Ok(Vec::new());
        }
        if prime_order(group).is_some() {
            return self.simple_link(group, SimplicityEvidence::PrimeOrder);
        }
        if natural_alternating(group) {
            return self.simple_link(group, SimplicityEvidence::NaturalAlternating);
        }
        let Some(w) = find_proper_normal(group, self.opts)? else {
            // the closure tactic saw every class iff the group was enumerated
            let evidence = if self.opts.tactics.contains(&Tactic::NormalClosure)
                && group.order() <= BigUint::from(self.opts.exhaustive_bound)
            {
                SimplicityEvidence::Exhaustive
            } else {
                SimplicityEvidence::Sampled
            };
            return self.simple_link(group, evidence);
        };
        let normal = w.subgroup;
        let q = match w.action {
            Some(hom) => QuotientRealization::from_hom(hom, normal.clone()),
            None => quotient_unchecked(group, &normal, self.opts)?,
        };
        if self.opts.record_splits {
            self.splits.push(SplitRecord { group: group.clone(), normal: normal.clone(), quotient: q.quotient.clone() });
        }
        let upper = self.series(&q.quotient)?;
        let mut links = Vec::with_capacity(upper.len());
        for (i, link) in upper.into_iter().enumerate() {
            let subgroup = if i == 0 { group.clone() } else { q.preimage(&link.subgroup)? };
            links.push(CompositionLink { subgroup, factor: link.factor, simplicity: link.simplicity });
        }
        links.extend(self.series(&normal)?);
        Ok(links)
    }
}

/// Composition series, built by splitting off normal subgroups and recursing
/// on both the subgroup and the quotient.
pub fn composition_series(group: &PermGroup, opts: &StructureOptions) -> Result<CompositionSeries> {
    let mut b = Builder { opts, found: Vec::new(), splits: Vec::new() };
    match b.series(group) {
        Ok(links) => Ok(CompositionSeries { links, splits: b.splits }),
        Err(e) => Err(Error::SeriesIncomplete { partial: b.found, source: Box::new(e) }),
    }
}
