//! Exhaustive subgroup lattices of small groups, over a Cayley table.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }

    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.words[(i / 64) as usize] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some(w as u32 * 64 + b)
                }
            })
        })
    }
}

/// A group small enough to hold its full multiplication table.
pub(crate) struct CayleyTable {
    pub degree: usize,
    pub elements: Vec<Permutation>,
    /// `mul[a * n + b]` is the index of `elements[a] ∘ elements[b]`.
    mul: Vec<u32>,
    inv: Vec<u32>,
    pub identity: u32,
    pub generators: Vec<u32>,
}

impl CayleyTable {
    pub fn new(group: &PermGroup, bound: u64) -> Result<Self> {
        let elements = group.elements(bound).ok_or_else(|| Error::BoundExceeded { order: group.order().to_string(), bound })?;
        let n = elements.len();
        let index: HashMap<&Permutation, u32> = elements.iter().enumerate().map(|(i, g)| (g, i as u32)).collect();
        let identity = index[&Permutation::identity(group.degree())];
        let generators: Vec<u32> = group.generators().iter().map(|g| index[g]).collect();
        // left multiplication by each generator
        let left: Vec<Vec<u32>> =
            group.generators().iter().map(|s| elements.iter().map(|x| index[&s.mul(x)]).collect()).collect();
        // rows via a BFS tree: if a = s ∘ a' then row(a) = left_s ∘ row(a')
        let mut mul = vec![u32::MAX; n * n];
        let mut done = vec![false; n];
        for b in 0..n {
            mul[identity as usize * n + b] = b as u32;
        }
        done[identity as usize] = true;
        let mut queue = vec![identity];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head] as usize;
            head += 1;
            for l in &left {
                let c = l[a] as usize;
                if done[c] {
                    continue;
                }
                done[c] = true;
                for b in 0..n {
                    mul[c * n + b] = l[mul[a * n + b] as usize];
                }
                queue.push(c as u32);
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == identity {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        Ok(CayleyTable { degree: group.degree(), elements, mul, inv, identity, generators })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `s⁻¹ x s`
    #[inline]
    pub fn conj(&self, x: u32, s: u32) -> u32 {
        self.mul(self.inv(s), self.mul(x, s))
    }

    /// Closure of `start ∪ extra` under multiplication; `start` must already
    /// be a subgroup with generators `gens`.
    pub fn join(&self, start: &BitSet, gens: &[u32], extra: u32) -> BitSet {
        let mut set = start.clone();
        let mut list: Vec<u32> = start.iter().collect();
        let mut all_gens = gens.to_vec();
        all_gens.push(extra);
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &s in &all_gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    list.push(y);
                }
            }
            k += 1;
        }
        set
    }

    pub fn to_group(&self, gens: &[u32]) -> PermGroup {
        PermGroup::from_parts(self.degree, gens.iter().map(|&g| self.elements[g as usize].clone()).collect())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Subgroup {
    pub elements: BitSet,
    pub order: usize,
    pub gens: Vec<u32>,
    /// Subgroups in which this one is maximal.
    pub covers: Vec<usize>,
}

/// All subgroups, each with the overgroups in which it is maximal.
pub(crate) struct SubgroupLattice {
    pub table: CayleyTable,
    pub subgroups: Vec<Subgroup>,
    pub index: HashMap<BitSet, usize>,
}

impl SubgroupLattice {
    pub fn build(group: &PermGroup, bound: u64) -> Result<Self> {
        let table = CayleyTable::new(group, bound)?;
        let n = table.len();
        let mut trivial = BitSet::new(n);
        trivial.insert(table.identity);
        let mut lattice = SubgroupLattice {
            table,
            subgroups: vec![Subgroup { elements: trivial.clone(), order: 1, gens: Vec::new(), covers: Vec::new() }],
            index: HashMap::from([(trivial, 0)]),
        };
        let mut next = 0;
        while next < lattice.subgroups.len() {
            let covers = lattice.covers_of(next);
            lattice.subgroups[next].covers = covers;
            next += 1;
        }
        Ok(lattice)
    }

    /// Minimal overgroups `<H, g>`, registering new subgroups as they appear.
    fn covers_of(&mut self, h: usize) -> Vec<usize> {
        let t = &self.table;
        let n = t.len();
        let sub = &self.subgroups[h];
        if sub.order == n {
            return Vec::new();
        }
        let hgens = sub.gens.clone();
        let helems = sub.elements.clone();
        // candidate overgroup id for every element outside H
        let mut cand_of = vec![u32::MAX; n];
        let mut candidates: Vec<(BitSet, u32)> = Vec::new();
        let mut seen_cand: HashMap<BitSet, u32> = HashMap::new();
        for g in 0..n as u32 {
            if helems.contains(g) || cand_of[g as usize] != u32::MAX {
                continue;
            }
            let k = t.join(&helems, &hgens, g);
            let id = match seen_cand.get(&k) {
                Some(&id) => id,
                None => {
                    let id = candidates.len() as u32;
                    seen_cand.insert(k.clone(), id);
                    candidates.push((k, g));
                    id
                }
            };
            // <H, x> = <H, g> for x in the double coset HgH
            let mut stack = vec![g];
            cand_of[g as usize] = id;
            while let Some(x) = stack.pop() {
                for &s in &hgens {
                    for y in [t.mul(s, x), t.mul(x, s)] {
                        if cand_of[y as usize] == u32::MAX {
                            cand_of[y as usize] = id;
                            stack.push(y);
                        }
                    }
                }
            }
        }
        let mut covers = Vec::new();
        for (id, (k, g)) in candidates.into_iter().enumerate() {
            let minimal = k.iter().filter(|&x| !helems.contains(x)).all(|x| cand_of[x as usize] == id as u32);
            if !minimal {
                continue;
            }
            let sid = match self.index.get(&k) {
                Some(&sid) => sid,
                None => {
                    let sid = self.subgroups.len();
                    let mut gens = hgens.clone();
                    gens.push(g);
                    self.subgroups.push(Subgroup { order: k.len(), elements: k.clone(), gens, covers: Vec::new() });
                    self.index.insert(k, sid);
                    sid
                }
            };
            covers.push(sid);
        }
        covers.sort_unstable();
        covers
    }

    pub fn top(&self) -> usize {
        let n = self.table.len();
        self.subgroups.iter().position(|s| s.order == n).expect("whole group is in the lattice")
    }

    pub fn group_of(&self, id: usize) -> PermGroup {
        self.table.to_group(&self.subgroups[id].gens)
    }

    /// Subgroup ids of the conjugacy class of `id`.
    pub fn conjugacy_class(&self, id: usize) -> Vec<usize> {
        let mut class = vec![id];
        let mut k = 0;
        while k < class.len() {
            let cur = &self.subgroups[class[k]].elements;
            for &s in &self.table.generators {
                let mut img = BitSet::new(self.table.len());
                for x in cur.iter() {
                    img.insert(self.table.conj(x, s));
                }
                let j = self.index[&img];
                if !class.contains(&j) {
                    class.push(j);
                }
            }
            k += 1;
        }
        class.sort_unstable();
        class
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts_of_small_groups() {
        // known totals: S3 6, S4 30, A4 10, D4 (order 8) 10, A5 59, C12 6
        for (g, count) in [
            (PermGroup::symmetric(3), 6),
            (PermGroup::symmetric(4), 30),
            (PermGroup::alternating(4), 10),
            (PermGroup::dihedral(4), 10),
            (PermGroup::alternating(5), 59),
            (PermGroup::cyclic(12), 6),
        ] {
            let l = SubgroupLattice::build(&g, 2000).unwrap();
            assert_eq!(l.subgroups.len(), count, "{g:?}");
            // every subgroup really is closed
            for s in &l.subgroups {
                for a in s.elements.iter() {
                    for b in s.elements.iter() {
                        assert!(s.elements.contains(l.table.mul(a, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn covers_are_maximal() {
        let l = SubgroupLattice::build(&PermGroup::symmetric(4), 100).unwrap();
        for (h, s) in l.subgroups.iter().enumerate() {
            for &k in &s.covers {
                let big = &l.subgroups[k];
                assert!(big.order > s.order);
                // nothing strictly in between
                for mid in &l.subgroups {
                    let between = mid.order > s.order
                        && mid.order < big.order
                        && s.elements.iter().all(|x| mid.elements.contains(x))
                        && mid.elements.iter().all(|x| big.elements.contains(x));
                    assert!(!between, "subgroup {h} is not maximal in {k}");
                }
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(SubgroupLattice::build(&PermGroup::symmetric(6), 100), Err(Error::BoundExceeded { .. })));
    }
}
