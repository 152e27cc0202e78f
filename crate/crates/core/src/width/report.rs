use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::chain::{chain_cost, SubgroupChain};
use super::factor::SimpleFactorId;

/// How much a reported width is known to mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    Proved,
    HeuristicLowerBound,
    UpperBoundOnly,
}

impl Confidence {
    pub fn as_str(self) -> &'static str {
        match self {
            Confidence::Proved => "proved",
            Confidence::HeuristicLowerBound => "heuristic-lower-bound",
            Confidence::UpperBoundOnly => "upper-bound-only",
        }
    }

    fn weakness(self) -> u8 {
        match self {
            Confidence::Proved => 0,
            Confidence::UpperBoundOnly => 1,
            Confidence::HeuristicLowerBound => 2,
        }
    }

    /// The less reliable of two tiers.
    pub fn weaker(self, other: Confidence) -> Confidence {
        if other.weakness() > self.weakness() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct WidthReport {
    pub width: u64,
    pub confidence: Confidence,
    /// Composition factors, when the width was read off them.
    pub factors: Vec<SimpleFactorId>,
    /// Witness chain of cost `width`, when one was found.
    pub chain: Option<SubgroupChain>,
    pub notes: Vec<String>,
}

impl WidthReport {
    /// Width of the trivial group.
    pub fn trivial() -> Self {
        WidthReport { width: 1, confidence: Confidence::Proved, factors: Vec::new(), chain: None, notes: Vec::new() }
    }

    /// Recomputes the width from the certificate. Only meaningful for proved
    /// reports: the chain cost, else the largest factor `μ`.
    pub fn recomputed_width(&self) -> Option<u64> {
        if let Some(c) = &self.chain {
            return chain_cost(c).to_u64();
        }
        if self.factors.is_empty() {
            return Some(1);
        }
        self.factors.iter().map(|f| f.mu).collect::<Option<Vec<u64>>>().map(|m| m.into_iter().max().unwrap_or(1))
    }

    /// True iff a proved report's certificate reproduces its width.
    pub fn is_consistent(&self) -> bool {
        self.confidence != Confidence::Proved || self.recomputed_width() == Some(self.width)
    }

    pub fn to_json(&self) -> JsonReport {
        JsonReport {
            width: self.width,
            confidence: self.confidence,
            factors: self
                .factors
                .iter()
                .map(|f| JsonFactor { label: f.to_string(), order: f.order.to_string(), mu: f.mu })
                .collect(),
            chain: self
                .chain
                .as_ref()
                .map(|c| c.links().iter().map(|g| g.generators().iter().map(|p| p.to_string()).collect()).collect()),
        }
    }
}

impl fmt::Display for WidthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "width: {} ({})", self.width, self.confidence)?;
        if !self.factors.is_empty() {
            let labels: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
            writeln!(f, "factors: {}", labels.join(" · "))?;
            for x in &self.factors {
                match x.mu {
                    Some(mu) => writeln!(f, "  {x}: order {}, mu {mu} ({})", x.order, x.mu_provenance.as_str())?,
                    None => writeln!(
                        f,
                        "  {x}: order {}, mu unknown{}",
                        x.order,
                        x.mu_bound.map(|b| format!(", at most {b}")).unwrap_or_default()
                    )?,
                }
            }
        }
        if let Some(c) = &self.chain {
            let idx: Vec<String> = c.indices().iter().map(|i| i.to_string()).collect();
            writeln!(f, "chain indices: [{}]", idx.join(", "))?;
            for (i, link) in c.links().iter().enumerate() {
                let gens: Vec<String> = link.generators().iter().map(|p| p.to_string()).collect();
                let gens = if gens.is_empty() { "()".to_string() } else { gens.join(", ") };
                writeln!(f, "  H{i} = <{gens}>, order {}", link.order())?;
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFactor {
    pub label: String,
    /// Decimal, since orders can exceed 64 bits.
    pub order: String,
    pub mu: Option<u64>,
}

/// Serialized form of a [`WidthReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub width: u64,
    pub confidence: Confidence,
    pub factors: Vec<JsonFactor>,
    /// Generators of each link in cycle notation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Vec<String>>>,
}

/// Width read off composition factors: the largest `μ`.
pub fn width_by_factors(factors: &[SimpleFactorId]) -> WidthReport {
    if factors.is_empty() {
        return WidthReport::trivial();
    }
    let known = factors.iter().filter_map(|f| f.mu).max().unwrap_or(1);
    let unresolved: Vec<&SimpleFactorId> = factors.iter().filter(|f| f.mu.is_none()).collect();
    let mut report =
        WidthReport { width: known, confidence: Confidence::Proved, factors: factors.to_vec(), chain: None, notes: Vec::new() };
    if unresolved.is_empty() {
        return report;
    }
    for f in &unresolved {
        report.notes.push(format!(
            "mu of {f} (order {}) is not known{}",
            f.order,
            f.mu_bound.map(|b| format!("; a faithful action on {b} points exists")).unwrap_or_default()
        ));
    }
    match unresolved.iter().map(|f| f.mu_bound).collect::<Option<Vec<u64>>>() {
        Some(bounds) => {
            report.width = known.max(bounds.into_iter().max().unwrap_or(1));
            report.confidence = Confidence::UpperBoundOnly;
        }
        None => {
            // a nonabelian simple group has no faithful action on fewer than 5 points
            report.width = known.max(5);
            report.confidence = Confidence::HeuristicLowerBound;
        }
    }
    report
}

/// Width of a composite `π₂ ∘ π₁` from the widths of the pieces.
pub fn decomposition_width(w1: &WidthReport, w2: &WidthReport) -> WidthReport {
    let (hi, lo) = if w1.width >= w2.width { (w1, w2) } else { (w2, w1) };
    let mut notes = hi.notes.clone();
    notes.extend(lo.notes.iter().cloned());
    let mixed = matches!(
        (w1.confidence, w2.confidence),
        (Confidence::HeuristicLowerBound, Confidence::UpperBoundOnly)
            | (Confidence::UpperBoundOnly, Confidence::HeuristicLowerBound)
    );
    if mixed {
        notes.push("a lower bound was combined with an upper bound".into());
    }
    WidthReport { width: hi.width, confidence: w1.confidence.weaker(w2.confidence), factors: Vec::new(), chain: None, notes }
}

pub(crate) fn order_of_factors(factors: &[SimpleFactorId]) -> BigUint {
    factors.iter().map(|f| f.order.clone()).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_widths() {
        let s7 = [SimpleFactorId::cyclic(2), SimpleFactorId::alternating(7)];
        assert_eq!(width_by_factors(&s7).width, 7);
        let s4 = [2, 3, 2, 2].map(SimpleFactorId::cyclic);
        assert_eq!(width_by_factors(&s4).width, 3);
        let c2s = vec![SimpleFactorId::cyclic(2); 10];
        let r = width_by_factors(&c2s);
        assert_eq!((r.width, r.confidence), (2, Confidence::Proved));
        assert_eq!(width_by_factors(&[]).width, 1);
    }

    #[test]
    fn unknown_mu_degrades_confidence() {
        let f = SimpleFactorId::unidentified(BigUint::from(10_000_000u64), Some(40));
        let r = width_by_factors(&[SimpleFactorId::cyclic(3), f.clone()]);
        assert_eq!((r.width, r.confidence), (40, Confidence::UpperBoundOnly));
        assert!(!r.notes.is_empty());
        let g = SimpleFactorId::unidentified(BigUint::from(10_000_000u64), None);
        let r = width_by_factors(&[g]);
        assert_eq!(r.confidence, Confidence::HeuristicLowerBound);
    }

    #[test]
    fn decomposition_examples() {
        let w = |n| WidthReport { width: n, ..WidthReport::trivial() };
        assert_eq!(decomposition_width(&w(10), &w(2)).width, 10);
        assert_eq!(decomposition_width(&w(7), &w(1)).width, 7);
        assert_eq!(decomposition_width(&w(3), &w(3)).width, 3);
        let lower = WidthReport { confidence: Confidence::HeuristicLowerBound, ..w(4) };
        assert_eq!(decomposition_width(&w(5), &lower).confidence, Confidence::HeuristicLowerBound);
    }

    #[test]
    fn json_round_trip() {
        let r = width_by_factors(&[SimpleFactorId::cyclic(2), SimpleFactorId::alternating(10)]);
        let text = serde_json::to_string(&r.to_json()).unwrap();
        let back: JsonReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r.to_json());
        assert!(text.contains("\"confidence\":\"proved\""));
        assert!(text.contains("\"order\":\"1814400\""));
    }
}
