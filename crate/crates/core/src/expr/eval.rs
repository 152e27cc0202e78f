use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::GroupExpr;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::primes::binomial;

pub const DEFAULT_DEGREE_CAP: usize = 10_000;

/// Degree of the group an expression evaluates to, without building it.
pub fn static_degree(e: &GroupExpr) -> BigUint {
    use GroupExpr::*;
    match e {
        Symmetric(n) | Alternating(n) | Cyclic(n) => BigUint::from(*n),
        // D(1) and D(2) act regularly
        Dihedral(1) => BigUint::from(2u32),
        Dihedral(2) => BigUint::from(4u32),
        Dihedral(n) => BigUint::from(*n),
        Product(a, b) => static_degree(a) + static_degree(b),
        Wreath(a, b) => static_degree(a) * static_degree(b),
        OnSubsets(e, k) => match static_degree(e).to_u64() {
            Some(d) => binomial(d, *k),
            None => BigUint::from(u64::MAX),
        },
        IntersectAlternating(e) => static_degree(e),
        Gens(perms) => BigUint::from(perms.iter().flatten().flatten().map(|&p| p as u64 + 1).max().unwrap_or(1)),
    }
}

pub fn evaluate(e: &GroupExpr) -> Result<PermGroup> {
    evaluate_with(e, DEFAULT_DEGREE_CAP)
}

/// Builds the group, refusing any subexpression of degree above `cap`.
pub fn evaluate_with(e: &GroupExpr, cap: usize) -> Result<PermGroup> {
    let d = static_degree(e);
    if d > BigUint::from(cap) {
        return Err(Error::DegreeCap { degree: d.to_string(), cap });
    }
    use GroupExpr::*;
    Ok(match e {
        Symmetric(n) => PermGroup::symmetric(*n as usize),
        Alternating(n) => PermGroup::alternating(*n as usize),
        Cyclic(n) => PermGroup::cyclic(*n as usize),
        Dihedral(n) => PermGroup::dihedral(*n as usize),
        Product(a, b) => direct_product(&evaluate_with(a, cap)?, &evaluate_with(b, cap)?),
        Wreath(a, b) => wreath_product(&evaluate_with(a, cap)?, &evaluate_with(b, cap)?),
        OnSubsets(inner, k) => on_subsets(&evaluate_with(inner, cap)?, *k as usize),
        IntersectAlternating(inner) => even_part(&evaluate_with(inner, cap)?),
        Gens(perms) => {
            let degree = d.to_usize().expect("checked against the cap");
            let gens = perms.iter().map(|c| Permutation::from_cycles(degree, c)).collect::<Result<Vec<_>>>()?;
            PermGroup::new(degree, gens)?
        }
    })
}

fn shifted(g: &Permutation, offset: u32, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &x) in g.images().iter().enumerate() {
        images[i + offset as usize] = x + offset;
    }
    Permutation::from_images_unchecked(images)
}

/// `G × H` on `deg G + deg H` points.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let (a, b) = (g.degree(), h.degree());
    let mut gens: Vec<Permutation> = g.generators().iter().map(|x| shifted(x, 0, a + b)).collect();
    gens.extend(h.generators().iter().map(|x| shifted(x, a as u32, a + b)));
    PermGroup::from_parts(a + b, gens)
}

/// Imprimitive wreath product: point `j·a + i` is point `i` of block `j`.
pub fn wreath_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let (a, b) = (g.degree(), h.degree());
    let n = a * b;
    let mut gens = Vec::new();
    // one base copy per orbit of the top group generates the whole base
    for orbit in h.orbits() {
        let j = orbit[0];
        for x in g.generators() {
            gens.push(shifted(x, j * a as u32, n));
        }
    }
    for y in h.generators() {
        let images = (0..n as u32).map(|p| y.apply(p / a as u32) * a as u32 + p % a as u32).collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    PermGroup::from_parts(n, gens)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..k as u32).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| (cur[i] as usize) < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Induced action on `k`-subsets, numbered lexicographically.
pub fn on_subsets(g: &PermGroup, k: usize) -> PermGroup {
    let sets = subsets(g.degree(), k);
    let index: HashMap<&[u32], u32> = sets.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect();
    let gens = g
        .generators()
        .iter()
        .map(|x| {
            let images = sets
                .iter()
                .map(|s| {
                    let mut img: Vec<u32> = s.iter().map(|&p| x.apply(p)).collect();
                    img.sort_unstable();
                    index[img.as_slice()]
                })
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    PermGroup::from_parts(sets.len(), gens)
}

/// Subgroup of even permutations, by Schreier generators for the transversal
/// `{1, t}` with `t` an odd generator.
pub fn even_part(g: &PermGroup) -> PermGroup {
    let Some(t) = g.generators().iter().find(|x| !x.is_even()).cloned() else {
        return g.clone();
    };
    let t_inv = t.inverse();
    let mut gens = Vec::new();
    for s in g.generators() {
        if s.is_even() {
            gens.push(s.clone());
            gens.push(t.mul(s).mul(&t_inv));
        } else {
            gens.push(s.mul(&t_inv));
            gens.push(t.mul(s));
        }
    }
    PermGroup::from_parts(g.degree(), gens)
}
