use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::PermGroup;
use crate::primes::{factorial, is_prime};

/// Isomorphism type of a simple composition factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorLabel {
    Cyclic(u64),
    Alternating(u32),
    Classical(String),
    Sporadic(String),
    Unidentified,
}

/// Where a factor's minimal faithful degree came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MuProvenance {
    Analytic,
    ExhaustiveSearch,
    Table,
    Unknown,
}

impl MuProvenance {
    pub fn as_str(self) -> &'static str {
        match self {
            MuProvenance::Analytic => "analytic",
            MuProvenance::ExhaustiveSearch => "exhaustive-search",
            MuProvenance::Table => "table",
            MuProvenance::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFactorId {
    pub label: FactorLabel,
    pub order: BigUint,
    /// Minimal faithful permutation degree, when known.
    pub mu: Option<u64>,
    pub mu_provenance: MuProvenance,
    /// Degree of a faithful action actually realized; an upper bound for `mu`.
    pub mu_bound: Option<u64>,
}

impl SimpleFactorId {
    pub fn cyclic(p: u64) -> Self {
        SimpleFactorId {
            label: FactorLabel::Cyclic(p),
            order: BigUint::from(p),
            mu: Some(p),
            mu_provenance: MuProvenance::Analytic,
            mu_bound: Some(p),
        }
    }

    /// `A(n)` for `n >= 5`.
    pub fn alternating(n: u32) -> Self {
        assert!(n >= 5, "A({n}) is not a nonabelian simple group");
        SimpleFactorId {
            label: FactorLabel::Alternating(n),
            order: factorial(n as u64) / BigUint::from(2u32),
            mu: Some(n as u64),
            mu_provenance: MuProvenance::Analytic,
            mu_bound: Some(n as u64),
        }
    }

    pub fn unidentified(order: BigUint, bound: Option<u64>) -> Self {
        SimpleFactorId {
            label: FactorLabel::Unidentified,
            order,
            mu: None,
            mu_provenance: MuProvenance::Unknown,
            mu_bound: bound,
        }
    }

    /// `mu` if known, else the realized-action bound.
    pub fn mu_or_bound(&self) -> Option<u64> {
        self.mu.or(self.mu_bound)
    }

    /// Isomorphism-type key for multiset comparisons.
    pub fn key(&self) -> (FactorLabel, BigUint) {
        (self.label.clone(), self.order.clone())
    }

    pub fn label_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SimpleFactorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            FactorLabel::Cyclic(p) => write!(f, "C({p})"),
            FactorLabel::Alternating(n) => write!(f, "A({n})"),
            FactorLabel::Classical(name) | FactorLabel::Sporadic(name) => write!(f, "{name}"),
            FactorLabel::Unidentified => write!(f, "unidentified({})", self.order),
        }
    }
}

/// Sorted factor keys, for comparing composition-factor multisets.
pub fn factor_multiset(factors: &[SimpleFactorId]) -> Vec<(FactorLabel, BigUint)> {
    let mut keys: Vec<_> = factors.iter().map(SimpleFactorId::key).collect();
    keys.sort();
    keys
}

struct TableEntry {
    order: u64,
    label: FactorLabel,
    /// Only values certified by exhaustive subgroup search are stored.
    mu: Option<u64>,
}

fn classical(order: u64, name: &str, mu: Option<u64>) -> TableEntry {
    TableEntry { order, label: FactorLabel::Classical(name.to_string()), mu }
}

fn sporadic(order: u64, name: &str) -> TableEntry {
    TableEntry { order, label: FactorLabel::Sporadic(name.to_string()), mu: None }
}

/// Nonabelian simple groups that are not alternating, by order, below `limit`.
fn simple_order_table(limit: u64) -> Vec<TableEntry> {
    let mut table = Vec::new();
    // PSL(2,q); q = 4, 5, 9 coincide with A(5), A(5), A(6)
    for q in 4u64..=200 {
        if !is_prime_power(q) || matches!(q, 4 | 5 | 9) {
            continue;
        }
        let order = q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 };
        if order >= limit {
            continue;
        }
        let mu = match q {
            7 => Some(7),
            8 => Some(9),
            11 => Some(11),
            13 => Some(14),
            _ => None,
        };
        table.push(classical(order, &format!("PSL(2,{q})"), mu));
    }
    for (order, name) in [
        (5616u64, "PSL(3,3)"),
        (6048, "PSU(3,3)"),
        (20160, "PSL(3,4)"),
        (25920, "PSU(4,2)"),
        (29120, "Sz(8)"),
        (62400, "PSU(3,4)"),
        (126000, "PSU(3,5)"),
        (372000, "PSL(3,5)"),
        (979200, "PSp(4,4)"),
    ] {
        table.push(classical(order, name, None));
    }
    for (order, name) in [(7920u64, "M11"), (95040, "M12"), (175560, "J1"), (443520, "M22"), (604800, "J2")] {
        table.push(sporadic(order, name));
    }
    table.retain(|e| e.order < limit);
    table.sort_by_key(|e| e.order);
    table
}

fn is_prime_power(q: u64) -> bool {
    let f = crate::primes::factor_u64(q);
    !f.is_empty() && f.iter().all(|&p| p == f[0])
}

/// `n` with `n!/2 == order`, `n >= 5`.
fn alternating_degree(order: &BigUint) -> Option<u32> {
    let mut n = 5u32;
    loop {
        let a = factorial(n as u64) / BigUint::from(2u32);
        if &a == order {
            return Some(n);
        }
        if &a > order {
            return None;
        }
        n += 1;
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IdentifyOptions {
    /// Orders up to this bound are matched against the simple-order table.
    pub table_bound: u64,
    /// Groups up to this order get their `mu` by exhaustive search when no
    /// analytic or tabulated value applies.
    pub mu_bound: u64,
}

impl Default for IdentifyOptions {
    fn default() -> Self {
        IdentifyOptions { table_bound: 1_000_000, mu_bound: 2000 }
    }
}

/// Random samples used to look for an element of order 15 in a group of
/// order 20160 too large to enumerate.
const ORDER_15_SAMPLES: usize = 2000;

fn has_element_of_order(group: &PermGroup, order: u64) -> bool {
    let target = BigUint::from(order);
    if let Some(elems) = group.elements(10_000) {
        return elems.iter().any(|g| g.order() == target);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x15);
    (0..ORDER_15_SAMPLES).any(|_| group.random_element(&mut rng).order() == target)
}

/// Identifies a group assumed simple by its order.
pub fn identify_simple(group: &PermGroup, opts: &IdentifyOptions) -> Result<SimpleFactorId> {
    let order = group.order();
    if order.is_one() {
        return Err(Error::TrivialGroup);
    }
    let degree = group.degree() as u64;
    if let Some(p) = order.to_u64().filter(|&p| is_prime(p)) {
        return Ok(SimpleFactorId::cyclic(p));
    }
    if let Some(n) = alternating_degree(&order) {
        if n != 8 || has_element_of_order(group, 15) {
            return Ok(SimpleFactorId::alternating(n));
        }
    }
    let mut id = match order.to_u64().filter(|&o| o <= opts.table_bound) {
        Some(o) => {
            let entry = simple_order_table(opts.table_bound.saturating_add(1))
                .into_iter()
                .find(|e| e.order == o)
                .ok_or(Error::NotSimple { order: order.to_string() })?;
            SimpleFactorId {
                label: entry.label,
                order: order.clone(),
                mu: entry.mu,
                mu_provenance: if entry.mu.is_some() { MuProvenance::Table } else { MuProvenance::Unknown },
                mu_bound: Some(degree),
            }
        }
        None => SimpleFactorId::unidentified(order.clone(), Some(degree)),
    };
    if id.mu.is_none() && order <= BigUint::from(opts.mu_bound) {
        if let Some(mu) = super::mu::mu_exhaustive(group, opts.mu_bound)? {
            id.mu = Some(mu);
            id.mu_provenance = MuProvenance::ExhaustiveSearch;
        }
    }
    if let Some(bound) = id.mu_bound {
        if let Some(mu) = id.mu {
            id.mu_bound = Some(bound.min(mu));
        }
    }
    Ok(id)
}

#[cfg(test)]
pub(crate) fn table_for_tests() -> Vec<(u64, String, Option<u64>)> {
    simple_order_table(1_000_001)
        .into_iter()
        .map(|e| {
            let name = match e.label {
                FactorLabel::Classical(n) | FactorLabel::Sporadic(n) => n,
                _ => unreachable!(),
            };
            (e.order, name, e.mu)
        })
        .collect()
}
