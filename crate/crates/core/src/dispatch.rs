//! Picks the allocator with the strongest guarantee for an instance.

use std::fmt;
use std::str::FromStr;

use crate::checkers::Criterion;
use crate::envy::{double_round_robin, efk_two_allocate, envy_cycle_bipartite};
use crate::error::{Error, Result};
use crate::graph::{complete_bipartite_sides, path_order, star_center, vertex_connectivity};
use crate::mms::{
    allocate_any_graph, allocate_path_ips, allocate_star, allocate_tree_gmms,
    bipartition_biconnected, bipartition_cut_vertex, cut_and_choose,
};
use crate::oracles::exists_connected_allocation;
use crate::valuation::{Allocation, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Goal {
    Mms,
    Ef1,
    Efk,
    Ips,
}

impl FromStr for Goal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "mms" => Goal::Mms,
            "ef1" => Goal::Ef1,
            "efk" => Goal::Efk,
            "ips" => Goal::Ips,
            _ => return Err(Error::InvalidParams(format!("unknown goal \"{s}\""))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    PathIps,
    Star,
    TreeGmms,
    CutVertex,
    Biconnected,
    SpanningTree,
    EfkTwo,
    EnvyCycle,
    DoubleRoundRobin,
    Exhaustive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 10] = [
        Algorithm::PathIps,
        Algorithm::Star,
        Algorithm::TreeGmms,
        Algorithm::CutVertex,
        Algorithm::Biconnected,
        Algorithm::SpanningTree,
        Algorithm::EfkTwo,
        Algorithm::EnvyCycle,
        Algorithm::DoubleRoundRobin,
        Algorithm::Exhaustive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::PathIps => "path-ips",
            Algorithm::Star => "star",
            Algorithm::TreeGmms => "tree-gmms",
            Algorithm::CutVertex => "cut-vertex",
            Algorithm::Biconnected => "biconnected",
            Algorithm::SpanningTree => "spanning-tree",
            Algorithm::EfkTwo => "efk-two",
            Algorithm::EnvyCycle => "envy-cycle",
            Algorithm::DoubleRoundRobin => "double-round-robin",
            Algorithm::Exhaustive => "exhaustive",
        }
    }

    /// What the algorithm promises, in words.
    pub fn guarantee(self) -> &'static str {
        match self {
            Algorithm::PathIps => "every bundle is IPS, so each agent gets IPS(n,m) times her MMS",
            Algorithm::Star => "each agent gets at least MMS/(m-n+1)",
            Algorithm::TreeGmms => "each agent gets at least her G-MMS on the tree",
            Algorithm::CutVertex => {
                "each agent gets at least MMS/k, k = max components after one deletion"
            }
            Algorithm::Biconnected => "each agent gets at least 3/4 of her MMS",
            Algorithm::SpanningTree => "each agent gets at least MMS/(m-n+1)",
            Algorithm::EfkTwo => "EFk for the graph's optimal k",
            Algorithm::EnvyCycle => "EF1",
            Algorithm::DoubleRoundRobin => "EF1",
            Algorithm::Exhaustive => "the requested criterion, found by exhaustive search",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown algorithm \"{s}\"")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub allocation: Allocation,
    pub algorithm: Algorithm,
    /// `k` of the EFk guarantee, when the algorithm computes one.
    pub k: Option<usize>,
}

fn is_bipartite_ok(inst: &Instance) -> bool {
    complete_bipartite_sides(&inst.graph)
        .is_some_and(|(l, r)| l.len() >= inst.n && r.len() >= inst.n)
}

/// The algorithm [`allocate`] would pick without an override. Graph classes
/// are tried in the order path, star, tree, biconnected, complete
/// bipartite, general.
pub fn choose(inst: &Instance, goal: Goal) -> Result<Algorithm> {
    let g = &inst.graph;
    let (n, m) = (inst.n, inst.m());
    let additive = inst.all_additive();
    let is_path = path_order(g).is_some();
    let is_star = star_center(g).is_some();
    let biconnected = m >= 3 && vertex_connectivity(g) >= 2;
    Ok(match goal {
        Goal::Ips => {
            if is_path && additive {
                Algorithm::PathIps
            } else {
                return Err(Error::pre(
                    "IPS allocation is available for paths with additive valuations",
                ));
            }
        }
        Goal::Mms => {
            if is_path && additive {
                Algorithm::PathIps
            } else if is_star && additive && n >= 2 && m >= n {
                Algorithm::Star
            } else if g.is_tree() {
                Algorithm::TreeGmms
            } else if biconnected && n == 2 && additive {
                Algorithm::Biconnected
            } else if n == 2 && additive && vertex_connectivity(g) == 1 {
                Algorithm::CutVertex
            } else {
                Algorithm::SpanningTree
            }
        }
        Goal::Ef1 | Goal::Efk => {
            if n == 2 {
                Algorithm::EfkTwo
            } else if is_bipartite_ok(inst) {
                if additive {
                    Algorithm::DoubleRoundRobin
                } else {
                    Algorithm::EnvyCycle
                }
            } else {
                Algorithm::Exhaustive
            }
        }
    })
}

fn two_agent_additive(inst: &Instance) -> Result<()> {
    if inst.n != 2 || !inst.all_additive() {
        return Err(Error::pre(
            "this algorithm needs two agents with additive valuations",
        ));
    }
    Ok(())
}

/// Allocates for `goal` with `algorithm`, or the automatic choice.
pub fn allocate(inst: &Instance, goal: Goal, algorithm: Option<Algorithm>) -> Result<Outcome> {
    let problems = inst.validate();
    if !problems.is_empty() {
        return Err(Error::pre(problems.join("; ")));
    }
    let algorithm = match algorithm {
        Some(a) => a,
        None => choose(inst, goal)?,
    };
    let mut k = None;
    let allocation = match algorithm {
        Algorithm::PathIps => allocate_path_ips(inst)?.0,
        Algorithm::Star => allocate_star(inst)?,
        Algorithm::TreeGmms => allocate_tree_gmms(inst)?,
        Algorithm::SpanningTree => allocate_any_graph(inst)?,
        Algorithm::CutVertex => {
            two_agent_additive(inst)?;
            let u1 = inst.valuations[0].as_additive().expect("additive");
            cut_and_choose(
                bipartition_cut_vertex(&inst.graph, u1)?,
                &inst.valuations[1],
            )
        }
        Algorithm::Biconnected => {
            two_agent_additive(inst)?;
            let u1 = inst.valuations[0].as_additive().expect("additive");
            cut_and_choose(
                bipartition_biconnected(&inst.graph, u1)?,
                &inst.valuations[1],
            )
        }
        Algorithm::EfkTwo => {
            let (a, kk) = efk_two_allocate(inst)?;
            k = Some(kk);
            a
        }
        Algorithm::EnvyCycle => {
            k = Some(1);
            envy_cycle_bipartite(inst)?
        }
        Algorithm::DoubleRoundRobin => {
            k = Some(1);
            double_round_robin(inst)?
        }
        Algorithm::Exhaustive => {
            let criterion = match goal {
                Goal::Mms => Criterion::MmsFraction(crate::valuation::int(1)),
                Goal::Ips => Criterion::Ips,
                Goal::Ef1 | Goal::Efk => {
                    k = Some(1);
                    Criterion::Efk(1)
                }
            };
            exists_connected_allocation(inst, &criterion)?.ok_or_else(|| {
                Error::GuaranteeViolated(format!("no connected allocation satisfies {criterion}"))
            })?
        }
    };
    Ok(Outcome {
        allocation,
        algorithm,
        k,
    })
}
