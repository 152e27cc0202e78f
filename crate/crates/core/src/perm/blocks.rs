use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// A partition of the points into blocks of imprimitivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    block_of: Vec<u32>,
    block_count: usize,
}

impl BlockSystem {
    pub fn block_of(&self) -> &[u32] {
        &self.block_of
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_size(&self) -> usize {
        self.block_of.len() / self.block_count
    }

    /// One block, or all singletons.
    pub fn is_trivial(&self) -> bool {
        self.block_count == 1 || self.block_count == self.block_of.len()
    }

    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (p, &b) in self.block_of.iter().enumerate() {
            out[b as usize].push(p as u32);
        }
        out
    }

    /// Induced permutation of the blocks.
    pub fn action_of(&self, g: &Permutation) -> Permutation {
        let mut images = vec![u32::MAX; self.block_count];
        for (p, &b) in self.block_of.iter().enumerate() {
            images[b as usize] = self.block_of[g.apply(p as u32) as usize];
        }
        Permutation::from_images_unchecked(images)
    }

    /// Every generator maps blocks onto blocks.
    pub fn is_invariant_under(&self, group: &PermGroup) -> bool {
        let blocks = self.blocks();
        group.generators().iter().all(|g| {
            blocks.iter().all(|block| {
                let target = self.block_of[g.apply(block[0]) as usize];
                block.iter().all(|&p| self.block_of[g.apply(p) as usize] == target)
            })
        })
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

impl PermGroup {
    /// Finest block system in which `seed.0` and `seed.1` share a block.
    pub fn minimal_blocks(&self, seed: (u32, u32)) -> Result<BlockSystem> {
        let d = self.degree();
        if seed.0 == seed.1 || seed.0 as usize >= d || seed.1 as usize >= d {
            return Err(Error::InvalidPermutation("seed must be two distinct points of the domain".into()));
        }
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let mut parent: Vec<u32> = (0..d as u32).collect();
        let mut pending = vec![seed];
        let (a, b) = (find(&mut parent, seed.0), find(&mut parent, seed.1));
        parent[a.max(b) as usize] = a.min(b);
        while let Some((x, y)) = pending.pop() {
            for g in self.generators() {
                let (gx, gy) = (g.apply(x), g.apply(y));
                let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
                if rx != ry {
                    parent[rx.max(ry) as usize] = rx.min(ry);
                    pending.push((gx, gy));
                }
            }
        }
        let mut label = vec![u32::MAX; d];
        let mut block_of = vec![0u32; d];
        let mut count = 0u32;
        for p in 0..d as u32 {
            let r = find(&mut parent, p) as usize;
            if label[r] == u32::MAX {
                label[r] = count;
                count += 1;
            }
            block_of[p as usize] = label[r];
        }
        Ok(BlockSystem { block_of, block_count: count as usize })
    }

    /// A nontrivial block system if the group is transitive and imprimitive.
    pub fn nontrivial_blocks(&self) -> Option<BlockSystem> {
        self.block_systems().into_iter().next()
    }

    /// The distinct nontrivial minimal block systems containing point 0,
    /// one per seed `(0, j)`.
    pub fn block_systems(&self) -> Vec<BlockSystem> {
        if self.degree() < 4 || !self.is_transitive() {
            return Vec::new();
        }
        let mut out: Vec<BlockSystem> = Vec::new();
        for j in 1..self.degree() as u32 {
            if out.iter().any(|s| s.block_of[0] == s.block_of[j as usize]) {
                continue;
            }
            let sys = self.minimal_blocks((0, j)).expect("transitive");
            if !sys.is_trivial() {
                out.push(sys);
            }
        }
        out
    }
}
