//! Homomorphisms given by generator images, realized through the diagonal
//! subgroup `{(g, φ(g))}` acting on the disjoint union of both domains.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::schreier::StabChain;
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug)]
pub struct ActionHom {
    source: PermGroup,
    target: PermGroup,
    /// `images[i]` is the image of `source.generators()[i]`.
    images: Vec<Permutation>,
    /// Diagonal chain whose base starts with a base of the target.
    target_first: OnceLock<(StabChain, usize)>,
    source_first: OnceLock<(StabChain, usize)>,
}

fn diagonal(g: &Permutation, q: &Permutation) -> Permutation {
    let d = g.degree() as u32;
    let mut images = g.images().to_vec();
    images.extend(q.images().iter().map(|&x| x + d));
    Permutation::from_images_unchecked(images)
}

fn split(x: &Permutation, d: usize) -> (Permutation, Permutation) {
    let left = Permutation::from_images_unchecked(x.images()[..d].to_vec());
    let right = Permutation::from_images_unchecked(x.images()[d..].iter().map(|&i| i - d as u32).collect());
    (left, right)
}

impl ActionHom {
    /// `images` must be images of `source.generators()` in order.
    pub fn new(source: &PermGroup, target_degree: usize, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Internal("one image per source generator is required".into()));
        }
        let target = PermGroup::new(target_degree, images.clone())?;
        Ok(ActionHom { source: source.clone(), target, images, target_first: OnceLock::new(), source_first: OnceLock::new() })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    fn diagonal_gens(&self) -> Vec<Permutation> {
        self.source.generators().iter().zip(&self.images).map(|(g, q)| diagonal(g, q)).collect()
    }

    fn degree_sum(&self) -> usize {
        self.source.degree() + self.target.degree()
    }

    fn target_chain(&self) -> &(StabChain, usize) {
        self.target_first.get_or_init(|| {
            let d = self.source.degree() as u32;
            let prefix: Vec<u32> = self.target.base().iter().map(|&b| b + d).collect();
            let chain = StabChain::new(self.degree_sum(), &self.diagonal_gens(), &prefix);
            (chain, prefix.len())
        })
    }

    fn source_chain(&self) -> &(StabChain, usize) {
        self.source_first.get_or_init(|| {
            let prefix = self.source.base();
            let chain = StabChain::new(self.degree_sum(), &self.diagonal_gens(), &prefix);
            (chain, prefix.len())
        })
    }

    /// True iff the generator images define a homomorphism: the diagonal
    /// subgroup is no larger than the source.
    pub fn is_well_defined(&self) -> bool {
        self.source.is_trivial() || self.target_chain().0.order() == self.source.order()
    }

    pub fn kernel(&self) -> PermGroup {
        let d = self.source.degree();
        if self.target.is_trivial() {
            return self.source.clone();
        }
        let (chain, m) = self.target_chain();
        let gens = chain.level_generators(*m).iter().map(|x| split(x, d).0).collect();
        PermGroup::from_parts(d, gens)
    }

    /// Some preimage of a target element.
    pub fn lift(&self, q: &Permutation) -> Result<Permutation> {
        let d = self.source.degree();
        if q.degree() != self.target.degree() {
            return Err(Error::DegreeMismatch { left: self.target.degree(), right: q.degree() });
        }
        if self.target.is_trivial() {
            return if q.is_identity() { Ok(Permutation::identity(d)) } else { Err(Error::NotInGroup) };
        }
        let (chain, m) = self.target_chain();
        let base = chain.base();
        let mut rest = q.clone();
        let mut lift = Permutation::identity(self.degree_sum());
        for (l, &beta) in base.iter().enumerate().take(*m) {
            let delta = rest.apply(beta - d as u32) + d as u32;
            let u = chain.coset_rep(l, delta).ok_or(Error::NotInGroup)?;
            let (_, uq) = split(&u, d);
            rest = uq.inverse().mul(&rest);
            lift = lift.mul(&u);
        }
        if !rest.is_identity() {
            return Err(Error::NotInGroup);
        }
        Ok(split(&lift, d).0)
    }

    /// Image of a source element.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        let d = self.source.degree();
        if g.degree() != d {
            return Err(Error::DegreeMismatch { left: d, right: g.degree() });
        }
        if self.source.is_trivial() {
            return if g.is_identity() { Ok(Permutation::identity(self.target.degree())) } else { Err(Error::NotInGroup) };
        }
        let (chain, m) = self.source_chain();
        let base = chain.base();
        let mut rest = g.clone();
        let mut acc = Permutation::identity(self.degree_sum());
        for (l, &beta) in base.iter().enumerate().take(*m) {
            let u = chain.coset_rep(l, rest.apply(beta)).ok_or(Error::NotInGroup)?;
            let (ug, _) = split(&u, d);
            rest = ug.inverse().mul(&rest);
            acc = acc.mul(&u);
        }
        if !rest.is_identity() {
            return Err(Error::NotInGroup);
        }
        Ok(split(&acc, d).1)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &PermGroup, kernel: &PermGroup) -> Result<PermGroup> {
        let mut gens = kernel.generators().to_vec();
        for q in sub.generators() {
            gens.push(self.lift(q)?);
        }
        PermGroup::new(self.source.degree(), gens)
    }
}

/// Restriction of the action to a union of orbits, relabelled `0..len`.
pub fn restriction_images(group: &PermGroup, points: &[u32]) -> Vec<Permutation> {
    let mut label = vec![u32::MAX; group.degree()];
    for (i, &p) in points.iter().enumerate() {
        label[p as usize] = i as u32;
    }
    group
        .generators()
        .iter()
        .map(|g| Permutation::from_images_unchecked(points.iter().map(|&p| label[g.apply(p) as usize]).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn perm(text: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(text, d).unwrap()
    }

    /// S4 acting on the three pairings of its points.
    fn s4_to_s3() -> ActionHom {
        let s4 = PermGroup::symmetric(4);
        let pairings = [[(0u32, 1u32), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
        let norm = |a: u32, b: u32| (a.min(b), a.max(b));
        let which = |pair: [(u32, u32); 2]| {
            let mut pr = [norm(pair[0].0, pair[0].1), norm(pair[1].0, pair[1].1)];
            pr.sort();
            pairings
                .iter()
                .position(|p| {
                    let mut q = [norm(p[0].0, p[0].1), norm(p[1].0, p[1].1)];
                    q.sort();
                    q == pr
                })
                .unwrap() as u32
        };
        let images = s4
            .generators()
            .iter()
            .map(|g| {
                Permutation::from_images(
                    pairings
                        .iter()
                        .map(|p| which([(g.apply(p[0].0), g.apply(p[0].1)), (g.apply(p[1].0), g.apply(p[1].1))]))
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        ActionHom::new(&s4, 3, images).unwrap()
    }

    #[test]
    fn kernel_of_pairing_action_is_klein_four() {
        let hom = s4_to_s3();
        assert!(hom.is_well_defined());
        assert_eq!(hom.target().order(), BigUint::from(6u32));
        let k = hom.kernel();
        assert_eq!(k.order(), BigUint::from(4u32));
        assert!(k.has(&perm("(1 2)(3 4)", 4)));
    }

    #[test]
    fn lift_and_image_are_consistent_on_random_words() {
        let hom = s4_to_s3();
        let kernel = hom.kernel();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gens = hom.source().generators().to_vec();
        for _ in 0..100 {
            let mut g = Permutation::identity(4);
            let mut q = Permutation::identity(3);
            for _ in 0..rng.gen_range(1..12) {
                let k = rng.gen_range(0..gens.len());
                g = g.mul(&gens[k]);
                q = q.mul(&hom.images()[k]);
            }
            assert_eq!(hom.image(&g).unwrap(), q);
            let l = hom.lift(&q).unwrap();
            assert!(kernel.has(&l.inverse().mul(&g)));
        }
    }

    #[test]
    fn ill_defined_images_are_detected() {
        let c4 = PermGroup::cyclic(4);
        // sending a 4-cycle to a 3-cycle is not a homomorphism
        let hom = ActionHom::new(&c4, 3, vec![perm("(1 2 3)", 3)]).unwrap();
        assert!(!hom.is_well_defined());
    }
}
