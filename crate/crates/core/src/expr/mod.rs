//! A small language of permutation-group constructions.
//!
//! ```text
//! expr := term ("x" expr)?
//! term := atom | "wr(" expr "," expr ")" | "onsets(" expr "," int ")" | term "& alt"
//! atom := ("S"|"A"|"C"|"D") "(" int ")" | "gens[" perm ("," perm)* "]" | "(" expr ")"
//! ```
//!
//! `wreath`, `product(e1, e2)`, `on_subsets` and `intersect_alternating(e)`
//! are accepted as long forms.

mod eval;
mod parse;

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use eval::{evaluate, evaluate_with, static_degree, DEFAULT_DEGREE_CAP};
pub use parse::parse;

use crate::primes::factor_u64;
use crate::width::SimpleFactorId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Symmetric(u64),
    Alternating(u64),
    Cyclic(u64),
    /// Order `2n`.
    Dihedral(u64),
    /// Direct product on disjoint point sets.
    Product(Box<GroupExpr>, Box<GroupExpr>),
    /// `wreath(G, H)`: `deg H` blocks of size `deg G`, `H` permuting blocks.
    Wreath(Box<GroupExpr>, Box<GroupExpr>),
    OnSubsets(Box<GroupExpr>, u64),
    /// Even permutations of the group.
    IntersectAlternating(Box<GroupExpr>),
    /// Explicit generators as 0-indexed cycles; the degree is the largest
    /// point mentioned.
    Gens(Vec<Vec<Vec<u32>>>),
}

impl GroupExpr {
    pub fn product(a: GroupExpr, b: GroupExpr) -> Self {
        GroupExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn wreath(a: GroupExpr, b: GroupExpr) -> Self {
        GroupExpr::Wreath(Box::new(a), Box::new(b))
    }

    pub fn on_subsets(e: GroupExpr, k: u64) -> Self {
        GroupExpr::OnSubsets(Box::new(e), k)
    }

    pub fn intersect_alternating(e: GroupExpr) -> Self {
        GroupExpr::IntersectAlternating(Box::new(e))
    }

    /// Composition factors read off the construction, when a rule applies.
    pub fn symbolic_factors(&self) -> Option<Vec<SimpleFactorId>> {
        use GroupExpr::*;
        match self {
            Symmetric(n) => {
                let mut f = if *n >= 2 { vec![SimpleFactorId::cyclic(2)] } else { Vec::new() };
                f.extend(Alternating(*n).symbolic_factors()?);
                Some(f)
            }
            Alternating(n) => Some(match n {
                0..=2 => Vec::new(),
                3 => vec![SimpleFactorId::cyclic(3)],
                4 => [3, 2, 2].map(SimpleFactorId::cyclic).to_vec(),
                _ => vec![SimpleFactorId::alternating(u32::try_from(*n).ok()?)],
            }),
            Cyclic(n) => Some(factor_u64(*n).into_iter().map(SimpleFactorId::cyclic).collect()),
            Dihedral(n) => {
                let mut f = Cyclic(*n).symbolic_factors()?;
                f.push(SimpleFactorId::cyclic(2));
                Some(f)
            }
            Product(a, b) => {
                let mut f = a.symbolic_factors()?;
                f.extend(b.symbolic_factors()?);
                Some(f)
            }
            Wreath(a, b) => {
                let base = a.symbolic_factors()?;
                let copies = static_degree(b).to_usize()?;
                let mut f = Vec::with_capacity(base.len() * copies);
                for _ in 0..copies {
                    f.extend(base.iter().cloned());
                }
                f.extend(b.symbolic_factors()?);
                Some(f)
            }
            // the action on k-subsets, 1 ≤ k < degree, is faithful
            OnSubsets(e, _) => e.symbolic_factors(),
            IntersectAlternating(_) | Gens(_) => None,
        }
    }

    /// Order implied by the symbolic factors, when they are known.
    pub fn symbolic_order(&self) -> Option<BigUint> {
        self.symbolic_factors().map(|f| f.iter().map(|x| x.order.clone()).product())
    }

    fn fmt_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if matches!(self, GroupExpr::Product(..)) {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupExpr::*;
        match self {
            Symmetric(n) => write!(f, "S({n})"),
            Alternating(n) => write!(f, "A({n})"),
            Cyclic(n) => write!(f, "C({n})"),
            Dihedral(n) => write!(f, "D({n})"),
            Product(a, b) => {
                a.fmt_term(f)?;
                write!(f, " x {b}")
            }
            Wreath(a, b) => write!(f, "wr({a},{b})"),
            OnSubsets(e, k) => write!(f, "onsets({e},{k})"),
            IntersectAlternating(e) => {
                e.fmt_term(f)?;
                write!(f, " & alt")
            }
            Gens(perms) => {
                f.write_str("gens[")?;
                for (i, cycles) in perms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    if cycles.is_empty() {
                        f.write_str("()")?;
                    }
                    for c in cycles {
                        let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                f.write_str("]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(e: &str) -> Vec<String> {
        parse(e).unwrap().symbolic_factors().unwrap().iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn symbolic_rules() {
        assert_eq!(labels("S(4)"), ["C(2)", "C(3)", "C(2)", "C(2)"]);
        let w = labels("wr(S(4),S(2))");
        assert_eq!(w.len(), 9);
        assert_eq!(w.iter().filter(|l| *l == "C(3)").count(), 2);
        assert_eq!(labels("C(12)"), ["C(2)", "C(2)", "C(3)"]);
        assert_eq!(labels("S(7)"), ["C(2)", "A(7)"]);
        assert!(parse("wr(S(2),S(10)) & alt").unwrap().symbolic_factors().is_none());
        assert!(labels("C(1)").is_empty());
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "S(4) x C(3)",
            "(S(4) x C(3)) x D(5)",
            "wr(S(2),S(10)) & alt",
            "onsets(S(5),2)",
            "gens[(1 2),(1 2 3 4 5)]",
            "gens[(1 2),(3)]",
            "gens[()]",
            "(C(2) x C(2)) & alt",
            "A(3) & alt & alt",
        ] {
            let e = parse(text).unwrap();
            assert_eq!(e.to_string(), text);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
