//! Deterministic Schreier–Sims: base and strong generating set with Schreier
//! trees as transversals.

use num_bigint::BigUint;
use rand::Rng;

use super::Permutation;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    /// Indices into `StabChain::gens` of the strong generators of this level.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// For each orbit point other than the root, the strong generator that
    /// reached it from its parent; `NONE` off the orbit.
    tree: Vec<u32>,
    /// `progress[k]`: number of orbit points whose Schreier generator with
    /// `gens[k]` has already been sifted.
    progress: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    gens: Vec<Permutation>,
    inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a complete chain. The points of `prefix` become the first base
    /// points in order, even when redundant.
    pub fn new(degree: usize, generators: &[Permutation], prefix: &[u32]) -> Self {
        let mut chain = StabChain { degree, gens: Vec::new(), inv: Vec::new(), levels: Vec::new() };
        for &p in prefix {
            if chain.levels.iter().all(|l| l.point != p) {
                chain.push_level(p);
            }
        }
        for g in generators {
            chain.insert(g);
        }
        chain
    }

    /// Adds `g` to the group and restores completeness. Returns false when
    /// `g` was already a member.
    pub fn insert(&mut self, g: &Permutation) -> bool {
        let (residue, j) = self.strip(g.clone(), 0);
        if residue.is_identity() {
            return false;
        }
        let j = self.ensure_level(&residue, j);
        self.add_strong(residue, 0, j);
        self.complete();
        true
    }

    fn push_level(&mut self, point: u32) {
        let mut tree = vec![NONE; self.degree];
        tree[point as usize] = ROOT;
        self.levels.push(Level { point, gens: Vec::new(), orbit: vec![point], tree, progress: Vec::new() });
    }

    /// If the residue passed every level, append a base point it moves.
    fn ensure_level(&mut self, residue: &Permutation, j: usize) -> usize {
        if j == self.levels.len() {
            let p = residue.first_moved().expect("nontrivial residue");
            self.push_level(p);
        }
        j
    }

    fn add_strong(&mut self, g: Permutation, from: usize, to: usize) {
        let idx = self.gens.len();
        self.inv.push(g.inverse());
        self.gens.push(g);
        for l in from..=to {
            self.levels[l].gens.push(idx);
            self.levels[l].progress.push(0);
            self.extend_orbit(l, idx);
        }
    }

    fn extend_orbit(&mut self, l: usize, new_gen: usize) {
        let level = &mut self.levels[l];
        let g = &self.gens[new_gen];
        let old_len = level.orbit.len();
        for a in 0..old_len {
            let q = g.apply(level.orbit[a]);
            if level.tree[q as usize] == NONE {
                level.tree[q as usize] = new_gen as u32;
                level.orbit.push(q);
            }
        }
        let mut b = old_len;
        while b < level.orbit.len() {
            let pt = level.orbit[b];
            for &gi in &level.gens {
                let q = self.gens[gi].apply(pt);
                if level.tree[q as usize] == NONE {
                    level.tree[q as usize] = gi as u32;
                    level.orbit.push(q);
                }
            }
            b += 1;
        }
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let l = i as usize;
            match self.next_unsifted(l) {
                Some((residue, j)) => {
                    let j = self.ensure_level(&residue, j);
                    self.add_strong(residue, l + 1, j);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn next_unsifted(&mut self, l: usize) -> Option<(Permutation, usize)> {
        for k in 0..self.levels[l].gens.len() {
            while self.levels[l].progress[k] < self.levels[l].orbit.len() {
                let a = self.levels[l].progress[k];
                self.levels[l].progress[k] += 1;
                let level = &self.levels[l];
                let gi = level.gens[k];
                let delta = level.orbit[a];
                let gamma = self.gens[gi].apply(delta);
                if level.tree[gamma as usize] == gi as u32 && self.inv[gi].apply(gamma) == delta {
                    continue;
                }
                let h = self.transversal(l, gamma).inverse().mul(&self.gens[gi]).mul(&self.transversal(l, delta));
                let (residue, j) = self.strip(h, l + 1);
                if !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    /// Coset representative of level `l` mapping the base point to `delta`.
    fn transversal(&self, l: usize, delta: u32) -> Permutation {
        let level = &self.levels[l];
        let mut path = Vec::new();
        let mut x = delta;
        while x != level.point {
            let gi = level.tree[x as usize] as usize;
            path.push(gi);
            x = self.inv[gi].apply(x);
        }
        let mut u = Permutation::identity(self.degree);
        for gi in path {
            u = u.mul(&self.gens[gi]);
        }
        u
    }

    /// Sifts `g` through the levels starting at `from`. Returns the residue
    /// and the level at which sifting stopped (`levels.len()` if it passed
    /// them all).
    pub fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let delta = g.apply(level.point);
            if level.tree[delta as usize] == NONE {
                return (g, l);
            }
            let mut x = delta;
            while x != level.point {
                let gi = level.tree[x as usize] as usize;
                g = self.inv[gi].mul(&g);
                x = self.inv[gi].apply(x);
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.strip(g.clone(), 0).0.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators of the stabilizer of the first `m` base points.
    pub fn level_generators(&self, m: usize) -> Vec<Permutation> {
        match self.levels.get(m) {
            Some(level) => level.gens.iter().map(|&gi| self.gens[gi].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn coset_rep(&self, l: usize, delta: u32) -> Option<Permutation> {
        if self.levels[l].tree[delta as usize] == NONE {
            None
        } else {
            Some(self.transversal(l, delta))
        }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for l in 0..self.levels.len() {
            let orbit = &self.levels[l].orbit;
            let delta = orbit[rng.gen_range(0..orbit.len())];
            g = g.mul(&self.transversal(l, delta));
        }
        g
    }

    /// Every element, as products of coset representatives.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for l in (0..self.levels.len()).rev() {
            let reps: Vec<Permutation> = self.levels[l].orbit.iter().map(|&d| self.transversal(l, d)).collect();
            let mut next = Vec::with_capacity(acc.len() * reps.len());
            for u in &reps {
                for h in &acc {
                    next.push(u.mul(h));
                }
            }
            acc = next;
        }
        acc
    }

    /// Images of the canonical element of the coset `g·N`, this chain being
    /// the chain of `N`: level by level the element with the least image of
    /// the base point. Two elements share a key iff they lie in the same coset.
    pub fn left_coset_key(&self, g: &Permutation) -> Vec<u32> {
        let mut g = g.clone();
        for l in 0..self.levels.len() {
            let best = self.levels[l].orbit.iter().copied().min_by_key(|&d| g.apply(d)).expect("nonempty orbit");
            g = g.mul(&self.transversal(l, best));
        }
        g.images().to_vec()
    }
}
