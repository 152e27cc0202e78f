use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::schreier::StabChain;
use super::Permutation;
use crate::error::{Error, Result};

/// A permutation group given by generators. The base and strong generating
/// set is computed once, on first use.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    /// Identity generators are dropped; an empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        let mut seen = HashSet::new();
        let gens = generators.into_iter().filter(|g| !g.is_identity() && seen.insert(g.clone())).collect();
        Ok(PermGroup { degree, gens, chain: OnceLock::new() })
    }

    pub(crate) fn from_parts(degree: usize, generators: Vec<Permutation>) -> Self {
        PermGroup::new(degree, generators).expect("generators of matching degree")
    }

    /// Group whose strong generating structure is already known; `chain` must
    /// be a chain for exactly `generators`.
    pub(crate) fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let g = PermGroup::from_parts(degree, generators);
        let _ = g.chain.set(chain);
        g
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::from_parts(degree, Vec::new())
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap());
        }
        PermGroup::from_parts(n, gens)
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n as u32).map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap()).collect();
        PermGroup::from_parts(n, gens)
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 { vec![Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap()] } else { Vec::new() };
        PermGroup::from_parts(n, gens)
    }

    /// Dihedral group of order `2n`. For `n >= 3` it acts on the `n`
    /// vertices of a polygon; `D(1)` and `D(2)` act regularly on 2 and 4 points.
    pub fn dihedral(n: usize) -> Self {
        match n {
            1 => PermGroup::cyclic(2),
            2 => PermGroup::from_parts(
                4,
                vec![
                    Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                    Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
                ],
            ),
            _ => {
                let rot = Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap();
                let refl = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).unwrap();
                PermGroup::from_parts(n, vec![rot, refl])
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.gens, &[]))
    }

    pub fn order(&self) -> BigUint {
        if self.gens.is_empty() {
            return BigUint::one();
        }
        self.chain().order()
    }

    /// Order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: g.degree() });
        }
        Ok(g.is_identity() || (!self.gens.is_empty() && self.chain().contains(g)))
    }

    pub(crate) fn has(&self, g: &Permutation) -> bool {
        self.contains(g).expect("matching degree")
    }

    /// Base points and basic orbit lengths of the strong generating structure.
    pub fn base(&self) -> Vec<u32> {
        if self.gens.is_empty() {
            return Vec::new();
        }
        self.chain().base()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        if self.gens.is_empty() {
            return Vec::new();
        }
        self.chain().orbit_lengths()
    }

    /// Primes dividing the order, read off the basic orbit lengths.
    pub fn order_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.basic_orbit_lengths().iter().flat_map(|&l| crate::primes::factor_u64(l as u64)).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start as u32];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.gens {
                    let y = g.apply(x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// True iff every generator is an even permutation.
    pub fn is_even_subgroup(&self) -> bool {
        self.gens.iter().all(Permutation::is_even)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        if self.gens.is_empty() {
            return Permutation::identity(self.degree);
        }
        self.chain().random_element(rng)
    }

    /// All elements, if the order does not exceed `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<Permutation>> {
        if self.order() > BigUint::from(limit) {
            return None;
        }
        if self.gens.is_empty() {
            return Some(vec![Permutation::identity(self.degree)]);
        }
        Some(self.chain().elements())
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let chain = StabChain::new(self.degree, &self.gens, points);
        let m = points.iter().collect::<HashSet<_>>().len();
        PermGroup::from_parts(self.degree, chain.level_generators(m))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.has(g))
    }

    /// Same set of elements.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && self.order() == other.order()
    }

    /// True iff `self` is a subgroup of `parent` normalized by its generators.
    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        self.is_subgroup_of(parent) && parent.gens.iter().all(|g| self.gens.iter().all(|n| self.has(&n.conjugate_by(g))))
    }

    /// Subgroup generated by `self` and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> PermGroup {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::from_parts(self.degree, gens)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree)?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">)")
    }
}
