//! Exact-rational valuations plus the instance and allocation types.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{mask_to_vec, vec_to_mask, Graph};

/// Exact rational; always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::Ratio<i128>;

pub fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

pub fn ratio(p: i128, q: i128) -> Rational {
    Rational::new(p, q)
}

/// Additive valuation: a bundle is worth the sum of its goods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveValuation {
    pub values: Vec<Rational>,
}

impl AdditiveValuation {
    pub fn new(values: Vec<Rational>) -> Self {
        AdditiveValuation { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        AdditiveValuation {
            values: values.iter().map(|&v| int(v as i128)).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn value_of(&self, bundle: &[usize]) -> Rational {
        bundle.iter().map(|&g| self.values[g]).sum()
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }
}

/// Arbitrary set function stored as a table indexed by bundle bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedValuation {
    m: usize,
    table: Vec<Rational>,
}

impl TabulatedValuation {
    /// Largest `m` a table may have.
    pub const MAX_GOODS: usize = 20;

    pub fn new(m: usize, table: Vec<Rational>) -> Result<Self> {
        if m > Self::MAX_GOODS {
            return Err(Error::CapExceeded {
                what: "tabulated valuation",
                size: m,
                cap: Self::MAX_GOODS,
            });
        }
        if table.len() != 1 << m {
            return Err(Error::pre(format!(
                "table for {m} goods needs {} entries, got {}",
                1usize << m,
                table.len()
            )));
        }
        Ok(TabulatedValuation { m, table })
    }

    /// Tabulates any valuation over `m` goods.
    pub fn from_fn(m: usize, f: impl Fn(u64) -> Rational) -> Result<Self> {
        Self::new(m, (0..1u64 << m).map(f).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    pub fn value_mask(&self, mask: u64) -> Rational {
        self.table[mask as usize]
    }

    /// First `(S, g)` with `u(S) > u(S ∪ {g})`, if any.
    pub fn monotonicity_violation(&self) -> Option<(u64, u64)> {
        for mask in 0..self.table.len() as u64 {
            for g in 0..self.m {
                let bigger = mask | (1 << g);
                if bigger != mask && self.table[mask as usize] > self.table[bigger as usize] {
                    return Some((mask, bigger));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Additive(AdditiveValuation),
    Tabulated(TabulatedValuation),
}

impl Valuation {
    pub fn m(&self) -> usize {
        match self {
            Valuation::Additive(a) => a.m(),
            Valuation::Tabulated(t) => t.m(),
        }
    }

    pub fn value_of(&self, bundle: &[usize]) -> Rational {
        match self {
            Valuation::Additive(a) => a.value_of(bundle),
            Valuation::Tabulated(t) => t.value_mask(vec_to_mask(bundle)),
        }
    }

    pub fn value_mask(&self, mask: u64) -> Rational {
        match self {
            Valuation::Additive(a) => mask_to_vec(mask).iter().map(|&g| a.values[g]).sum(),
            Valuation::Tabulated(t) => t.value_mask(mask),
        }
    }

    pub fn total(&self) -> Rational {
        match self {
            Valuation::Additive(a) => a.total(),
            Valuation::Tabulated(t) => t.value_mask((1u64 << t.m()) - 1),
        }
    }

    pub fn as_additive(&self) -> Option<&AdditiveValuation> {
        match self {
            Valuation::Additive(a) => Some(a),
            Valuation::Tabulated(_) => None,
        }
    }

    pub fn is_additive(&self) -> bool {
        matches!(self, Valuation::Additive(_))
    }

    /// Valuation over merged goods: merged good `i` stands for `parts[i]`.
    pub fn lift(&self, parts: &[Vec<usize>]) -> Result<Valuation> {
        Ok(match self {
            Valuation::Additive(a) => Valuation::Additive(AdditiveValuation::new(
                parts.iter().map(|p| a.value_of(p)).collect(),
            )),
            Valuation::Tabulated(t) => {
                let masks: Vec<u64> = parts.iter().map(|p| vec_to_mask(p)).collect();
                Valuation::Tabulated(TabulatedValuation::from_fn(parts.len(), |merged| {
                    let orig = mask_to_vec(merged)
                        .iter()
                        .fold(0u64, |acc, &i| acc | masks[i]);
                    t.value_mask(orig)
                })?)
            }
        })
    }
}

impl From<AdditiveValuation> for Valuation {
    fn from(a: AdditiveValuation) -> Self {
        Valuation::Additive(a)
    }
}

impl From<TabulatedValuation> for Valuation {
    fn from(t: TabulatedValuation) -> Self {
        Valuation::Tabulated(t)
    }
}

/// Goods on a graph, `n` agents and their valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub n: usize,
    pub graph: Graph,
    pub valuations: Vec<Valuation>,
}

impl Instance {
    pub fn new(graph: Graph, valuations: Vec<Valuation>) -> Self {
        Instance {
            n: valuations.len(),
            graph,
            valuations,
        }
    }

    /// `n` agents sharing one additive valuation.
    pub fn identical(graph: Graph, n: usize, values: AdditiveValuation) -> Self {
        Instance::new(graph, vec![Valuation::Additive(values); n])
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn all_additive(&self) -> bool {
        self.valuations.iter().all(Valuation::is_additive)
    }

    /// Human-readable list of every structural problem; empty when valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let m = self.graph.m();
        if self.n == 0 {
            out.push("instance has no agents".to_string());
        }
        if m == 0 {
            out.push("graph has no vertices".to_string());
        } else if !self.graph.is_connected() {
            out.push("graph is not connected".to_string());
        }
        if self.valuations.len() != self.n {
            out.push(format!(
                "{} valuations for {} agents",
                self.valuations.len(),
                self.n
            ));
        }
        if self.valuations.iter().any(Valuation::is_additive)
            && !self.valuations.iter().all(Valuation::is_additive)
        {
            out.push("valuations mix additive and tabulated types".to_string());
        }
        for (i, v) in self.valuations.iter().enumerate() {
            if v.m() != m {
                out.push(format!(
                    "agent {i}: valuation over {} goods, graph has {m}",
                    v.m()
                ));
                continue;
            }
            match v {
                Valuation::Additive(a) => {
                    if let Some(g) = a.values.iter().position(|x| x.is_negative()) {
                        out.push(format!("agent {i}: negative value for good {g}"));
                    }
                }
                Valuation::Tabulated(t) => {
                    if !t.value_mask(0).is_zero() {
                        out.push(format!("agent {i}: empty bundle has nonzero value"));
                    }
                    if let Some(mask) = t.table().iter().position(|x| x.is_negative()) {
                        out.push(format!("agent {i}: negative value for bundle {mask}"));
                    }
                    if let Some((small, big)) = t.monotonicity_violation() {
                        out.push(format!("agent {i}: not monotone, u({small}) > u({big})"));
                    }
                }
            }
        }
        out
    }
}

/// Ordered partition of the goods; bundle `i` belongs to agent `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allocation {
    pub bundles: Vec<Vec<usize>>,
}

impl Allocation {
    /// Builds an allocation, sorting each bundle.
    pub fn new(mut bundles: Vec<Vec<usize>>) -> Self {
        for b in &mut bundles {
            b.sort_unstable();
        }
        Allocation { bundles }
    }

    pub fn from_masks(masks: &[u64]) -> Self {
        Allocation {
            bundles: masks.iter().map(|&m| mask_to_vec(m)).collect(),
        }
    }

    pub fn masks(&self) -> Vec<u64> {
        self.bundles.iter().map(|b| vec_to_mask(b)).collect()
    }

    /// Checks that the bundles partition `0..m` among `n` agents.
    pub fn check_partition(&self, n: usize, m: usize) -> Result<()> {
        if self.bundles.len() != n {
            return Err(Error::pre(format!(
                "allocation has {} bundles for {n} agents",
                self.bundles.len()
            )));
        }
        let mut seen = vec![false; m];
        for b in &self.bundles {
            for &g in b {
                if g >= m || seen[g] {
                    return Err(Error::pre(format!(
                        "good {g} out of range or allocated twice"
                    )));
                }
                seen[g] = true;
            }
        }
        if let Some(g) = seen.iter().position(|s| !s) {
            return Err(Error::pre(format!("good {g} is not allocated")));
        }
        Ok(())
    }
}

/// Integer view of a valuation over at most 64 goods: every bundle value
/// times a common denominator. Comparisons stay exact.
#[derive(Clone, Debug)]
pub(crate) struct ScaledValuation {
    pub table: Vec<i128>,
    pub denom: i128,
}

impl ScaledValuation {
    pub fn new(v: &Valuation) -> Self {
        let m = v.m();
        match v {
            Valuation::Additive(a) => {
                let denom = a.values.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
                let goods: Vec<i128> = a
                    .values
                    .iter()
                    .map(|x| x.numer() * (denom / x.denom()))
                    .collect();
                let mut table = vec![0i128; 1 << m];
                for mask in 1..table.len() {
                    let low = mask.trailing_zeros() as usize;
                    table[mask] = table[mask & (mask - 1)] + goods[low];
                }
                ScaledValuation { table, denom }
            }
            Valuation::Tabulated(t) => {
                let denom = t.table().iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
                ScaledValuation {
                    table: t
                        .table()
                        .iter()
                        .map(|x| x.numer() * (denom / x.denom()))
                        .collect(),
                    denom,
                }
            }
        }
    }

    #[inline]
    pub fn at(&self, mask: u64) -> i128 {
        self.table[mask as usize]
    }

    pub fn to_rational(&self, x: i128) -> Rational {
        Rational::new(x, self.denom)
    }
}
