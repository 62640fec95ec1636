//! Exact fairness predicates over allocations.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{mask_to_vec, vec_to_mask, Graph};
use crate::mms::is_ips_bundle;
use crate::oracles::exact_mms;
use crate::valuation::{Allocation, Instance, Rational, Valuation};

pub fn is_connected_allocation(g: &Graph, a: &Allocation) -> bool {
    a.bundles.iter().all(|b| g.is_connected_subset(b))
}

/// Does the agent with valuation `u` stop envying `other` once at most `k`
/// goods are removed from it?
pub fn envy_up_to(u: &Valuation, own: &[usize], other: &[usize], k: usize) -> bool {
    envy_up_to_mask(u, vec_to_mask(own), vec_to_mask(other), k)
}

pub(crate) fn envy_up_to_mask(u: &Valuation, own: u64, other: u64, k: usize) -> bool {
    let mine = u.value_mask(own);
    match u {
        Valuation::Additive(a) => {
            let mut vals: Vec<Rational> = mask_to_vec(other).iter().map(|&g| a.values[g]).collect();
            vals.sort_unstable_by(|x, y| y.cmp(x));
            let kept: Rational = vals.iter().skip(k).sum();
            mine >= kept
        }
        Valuation::Tabulated(_) => {
            removal_subsets(other, k).any(|r| mine >= u.value_mask(other & !r))
        }
    }
}

/// Every subset of `other` with at most `k` elements, smallest first.
fn removal_subsets(other: u64, k: usize) -> impl Iterator<Item = u64> {
    let goods = mask_to_vec(other);
    let top = k.min(goods.len());
    (0..=top).flat_map(move |size| {
        goods
            .clone()
            .into_iter()
            .combinations(size)
            .map(|c| vec_to_mask(&c))
            .collect::<Vec<_>>()
    })
}

/// Smallest `k` such that [`envy_up_to`] holds.
pub fn min_removals(u: &Valuation, own: &[usize], other: &[usize]) -> usize {
    min_removals_mask(u, vec_to_mask(own), vec_to_mask(other))
}

pub(crate) fn min_removals_mask(u: &Valuation, own: u64, other: u64) -> usize {
    let mine = u.value_mask(own);
    match u {
        Valuation::Additive(a) => {
            let mut vals: Vec<Rational> = mask_to_vec(other).iter().map(|&g| a.values[g]).collect();
            vals.sort_unstable_by(|x, y| y.cmp(x));
            let mut kept: Rational = vals.iter().sum();
            for (k, v) in vals.iter().enumerate() {
                if mine >= kept {
                    return k;
                }
                kept -= v;
            }
            vals.len()
        }
        Valuation::Tabulated(_) => (0..=other.count_ones() as usize)
            .find(|&k| envy_up_to_mask(u, own, other, k))
            .unwrap_or(other.count_ones() as usize),
    }
}

/// First ordered pair `(i, j)` where agent `i` still envies `j` after any
/// removal of at most `k` goods.
pub fn efk_violation(inst: &Instance, a: &Allocation, k: usize) -> Option<(usize, usize)> {
    let masks = a.masks();
    pairs(inst.n).find(|&(i, j)| !envy_up_to_mask(&inst.valuations[i], masks[i], masks[j], k))
}

pub fn is_ef(inst: &Instance, a: &Allocation) -> bool {
    is_efk(inst, a, 0)
}

pub fn is_efk(inst: &Instance, a: &Allocation, k: usize) -> bool {
    efk_violation(inst, a, k).is_none()
}

/// First `(i, j, g)` such that agent `i` envies `M_j \ {g}`.
pub fn efx_violation(inst: &Instance, a: &Allocation) -> Option<(usize, usize, usize)> {
    let masks = a.masks();
    pairs(inst.n).find_map(|(i, j)| {
        let u = &inst.valuations[i];
        let mine = u.value_mask(masks[i]);
        mask_to_vec(masks[j])
            .into_iter()
            .find(|&g| mine < u.value_mask(masks[j] & !(1 << g)))
            .map(|g| (i, j, g))
    })
}

pub fn is_efx(inst: &Instance, a: &Allocation) -> bool {
    efx_violation(inst, a).is_none()
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// One agent's line of an MMS report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentRatio {
    pub value: Rational,
    pub mms: Rational,
    /// `value / mms`, or 1 when the MMS is 0.
    pub ratio: Rational,
}

pub fn ratio_against(value: Rational, mms: Rational) -> Rational {
    if mms.is_zero() {
        Rational::one()
    } else {
        value / mms
    }
}

pub fn mms_ratio_report(inst: &Instance, a: &Allocation) -> Result<Vec<AgentRatio>> {
    inst.valuations
        .iter()
        .zip(&a.bundles)
        .map(|(u, b)| {
            let mms = exact_mms(u, inst.n)?.value;
            let value = u.value_of(b);
            Ok(AgentRatio {
                value,
                mms,
                ratio: ratio_against(value, mms),
            })
        })
        .collect()
}

fn require_additive(inst: &Instance) -> Result<()> {
    if inst.all_additive() {
        Ok(())
    } else {
        Err(Error::pre("IPS is defined for additive valuations only"))
    }
}

/// First agent whose bundle is not IPS for her own valuation.
pub fn ips_violation(inst: &Instance, a: &Allocation) -> Result<Option<usize>> {
    require_additive(inst)?;
    let m = inst.m();
    Ok((0..inst.n).find(|&i| {
        let u = inst.valuations[i].as_additive().expect("checked additive");
        is_ips_bundle(u, &a.bundles[i], inst.n, m).is_none()
    }))
}

pub fn is_ips_allocation(inst: &Instance, a: &Allocation) -> Result<bool> {
    Ok(ips_violation(inst, a)?.is_none())
}

/// A fairness property a whole allocation can be checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Criterion {
    Connected,
    Ef,
    Efk(usize),
    Efx,
    /// Every agent gets at least this fraction of her MMS.
    MmsFraction(Rational),
    Ips,
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("unknown criterion \"{s}\""));
        Ok(match s {
            "connected" => Criterion::Connected,
            "ef" => Criterion::Ef,
            "ef1" => Criterion::Efk(1),
            "efx" => Criterion::Efx,
            "ips" => Criterion::Ips,
            _ => {
                if let Some(k) = s.strip_prefix("efk:") {
                    Criterion::Efk(k.parse().map_err(|_| bad())?)
                } else if let Some(alpha) = s.strip_prefix("mms:") {
                    let v: serde_json::Value = if alpha.contains('/') {
                        serde_json::Value::String(alpha.to_string())
                    } else {
                        serde_json::from_str(alpha).map_err(|_| bad())?
                    };
                    Criterion::MmsFraction(crate::format::parse_rational(&v)?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::Connected => write!(f, "connected"),
            Criterion::Ef => write!(f, "ef"),
            Criterion::Efk(k) => write!(f, "efk:{k}"),
            Criterion::Efx => write!(f, "efx"),
            Criterion::MmsFraction(a) => write!(f, "mms:{a}"),
            Criterion::Ips => write!(f, "ips"),
        }
    }
}

/// Result of [`check`]: pass/fail plus a description of the first violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub pass: bool,
    pub violation: Option<String>,
}

impl CheckOutcome {
    fn from_violation(v: Option<String>) -> Self {
        CheckOutcome {
            pass: v.is_none(),
            violation: v,
        }
    }
}

/// Checks `a` against `c`, after confirming `a` partitions the goods.
pub fn check(inst: &Instance, a: &Allocation, c: &Criterion) -> Result<CheckOutcome> {
    a.check_partition(inst.n, inst.m())?;
    let v = match c {
        Criterion::Connected => a
            .bundles
            .iter()
            .position(|b| !inst.graph.is_connected_subset(b))
            .map(|i| format!("bundle of agent {i} {:?} is not connected", a.bundles[i])),
        Criterion::Ef => {
            efk_violation(inst, a, 0).map(|(i, j)| format!("agent {i} envies agent {j}"))
        }
        Criterion::Efk(k) => efk_violation(inst, a, *k)
            .map(|(i, j)| format!("agent {i} envies agent {j} even after removing {k} goods")),
        Criterion::Efx => efx_violation(inst, a)
            .map(|(i, j, g)| format!("agent {i} envies agent {j} after removing good {g}")),
        Criterion::MmsFraction(alpha) => {
            let report = mms_ratio_report(inst, a)?;
            report
                .iter()
                .position(|r| r.value < *alpha * r.mms)
                .map(|i| {
                    format!(
                        "agent {i} gets {} < {} * MMS {}",
                        report[i].value, alpha, report[i].mms
                    )
                })
        }
        Criterion::Ips => {
            ips_violation(inst, a)?.map(|i| format!("bundle of agent {i} is not IPS"))
        }
    };
    Ok(CheckOutcome::from_violation(v))
}
