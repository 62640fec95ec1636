//! Exhaustive ground truth: MMS, G-MMS, price of connectivity, existence of
//! fair connected allocations and worst-case EFk.

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::Rng;

use crate::caps::{self, Caps};
use crate::checkers::{envy_up_to_mask, min_removals_mask, Criterion};
use crate::error::{Error, Result};
use crate::graph::{connected_mask, full_mask, mask_to_vec, Graph};
use crate::instances::rng;
use crate::mms::is_ips_bundle;
use crate::valuation::{
    int, AdditiveValuation, Allocation, Instance, Rational, ScaledValuation, Valuation,
};

/// A partition attaining a max-min value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionWitness {
    pub value: Rational,
    pub partition: Vec<Vec<usize>>,
}

const NONE: i128 = i128::MIN;

/// Max-min partition search over the subsets `allowed` marks as usable
/// bundles (all subsets when `None`).
struct Partitioner<'a> {
    m: usize,
    allowed: Option<&'a [bool]>,
}

impl Partitioner<'_> {
    fn ok(&self, s: u64) -> bool {
        self.allowed.is_none_or(|a| a[s as usize])
    }

    /// `levels[k-1][mask]`: best min-value of splitting `mask` into `k`
    /// usable bundles (some possibly empty), or `NONE`.
    fn levels(&self, v: &ScaledValuation, upto: usize) -> Vec<Vec<i128>> {
        let size = 1usize << self.m;
        let first: Vec<i128> = (0..size as u64)
            .map(|s| if self.ok(s) { v.at(s) } else { NONE })
            .collect();
        let mut levels = vec![first];
        for _ in 1..upto {
            let prev = levels.last().expect("nonempty");
            let next: Vec<i128> = (0..size as u64)
                .map(|mask| self.step(v, prev, mask).0)
                .collect();
            levels.push(next);
        }
        levels
    }

    /// Best split of `mask` into one bundle `S` holding its lowest good plus
    /// a `prev`-level split of the rest; an empty bundle is also allowed.
    fn step(&self, v: &ScaledValuation, prev: &[i128], mask: u64) -> (i128, u64) {
        if mask == 0 {
            return (0, 0);
        }
        let mut best = NONE;
        let mut choice = 0;
        if prev[mask as usize] != NONE {
            best = 0;
        }
        let low = mask & mask.wrapping_neg();
        let rest_bits = mask ^ low;
        // submasks of rest_bits in increasing order
        let mut sub: u64 = 0;
        loop {
            let s = sub | low;
            let r = prev[(mask ^ s) as usize];
            if r != NONE && self.ok(s) {
                let val = v.at(s).min(r);
                if val > best {
                    best = val;
                    choice = s;
                }
            }
            if sub == rest_bits {
                break;
            }
            sub = (sub.wrapping_sub(rest_bits)) & rest_bits;
        }
        (best, choice)
    }

    fn solve(&self, v: &ScaledValuation, n: usize) -> (i128, Vec<u64>) {
        let full = full_mask(self.m);
        if n > self.m {
            // some bundle must be empty: the singletons and empties are optimal
            let mut parts: Vec<u64> = (0..self.m).map(|g| 1u64 << g).collect();
            parts.resize(n, 0);
            return (0, parts);
        }
        let levels = self.levels(v, n.max(1) - 1);
        if n == 1 {
            return (v.at(full), vec![full]);
        }
        let mut parts = Vec::with_capacity(n);
        let mut mask = full;
        let (value, _) = self.step(v, &levels[n - 2], mask);
        for k in (1..n).rev() {
            let (_, s) = self.step(v, &levels[k - 1], mask);
            parts.push(s);
            mask ^= s;
        }
        parts.push(mask);
        (value, parts)
    }
}

fn connected_table(g: &Graph) -> Vec<bool> {
    let adj = g.adjacency_masks();
    (0..1u64 << g.m()).map(|s| connected_mask(adj, s)).collect()
}

fn witness(v: &ScaledValuation, (value, parts): (i128, Vec<u64>)) -> PartitionWitness {
    PartitionWitness {
        value: v.to_rational(value),
        partition: parts.into_iter().map(mask_to_vec).collect(),
    }
}

fn check_mms_cap(m: usize, n: usize) -> Result<()> {
    let caps = Caps::current();
    caps::check("MMS partition search", m, caps.mms_for(n))
}

/// Maximin share: best worst bundle over all partitions into `n` bundles.
pub fn exact_mms(u: &Valuation, n: usize) -> Result<PartitionWitness> {
    if n == 0 {
        return Err(Error::pre("need at least one agent"));
    }
    let m = u.m();
    check_mms_cap(m, n)?;
    let v = ScaledValuation::new(u);
    Ok(witness(&v, Partitioner { m, allowed: None }.solve(&v, n)))
}

/// Graph maximin share: as [`exact_mms`] but over connected partitions.
pub fn exact_gmms(g: &Graph, u: &Valuation, n: usize) -> Result<PartitionWitness> {
    if n == 0 {
        return Err(Error::pre("need at least one agent"));
    }
    let m = g.m();
    if u.m() != m {
        return Err(Error::pre("valuation and graph disagree on m"));
    }
    check_mms_cap(m, n)?;
    let table = connected_table(g);
    let v = ScaledValuation::new(u);
    if n <= m && !g.is_connected() {
        return Err(Error::InvalidGraph("G-MMS needs a connected graph".into()));
    }
    Ok(witness(
        &v,
        Partitioner {
            m,
            allowed: Some(&table),
        }
        .solve(&v, n),
    ))
}

/// G-MMS of a tree by cutting every choice of `n - 1` edges.
pub fn exact_gmms_tree(g: &Graph, u: &Valuation, n: usize) -> Result<PartitionWitness> {
    if !g.is_tree() {
        return Err(Error::pre("graph is not a tree"));
    }
    if n == 0 {
        return Err(Error::pre("need at least one agent"));
    }
    let m = g.m();
    check_mms_cap(m, n)?;
    if n > m {
        let mut partition: Vec<Vec<usize>> = (0..m).map(|x| vec![x]).collect();
        partition.resize(n, Vec::new());
        return Ok(PartitionWitness {
            value: Rational::zero(),
            partition,
        });
    }
    let mut best: Option<PartitionWitness> = None;
    for cut in g.edges().iter().combinations(n - 1) {
        let keep: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|e| !cut.contains(e))
            .copied()
            .collect();
        let forest = Graph::new(m, keep)?;
        let parts = forest.components_where(|_| true);
        let value = parts
            .iter()
            .map(|p| u.value_of(p))
            .min()
            .expect("n >= 1 parts");
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(PartitionWitness {
                value,
                partition: parts,
            });
        }
    }
    Ok(best.expect("at least one cut"))
}

/// G-MMS / MMS, with 0/0 read as 1.
pub fn poc_ratio(g: &Graph, u: &Valuation, n: usize) -> Result<Rational> {
    let mms = exact_mms(u, n)?.value;
    let gmms = exact_gmms(g, u, n)?.value;
    Ok(if mms.is_zero() {
        Rational::one()
    } else {
        gmms / mms
    })
}

/// Outcome of [`poc_search`]. `ratio` is an upper bound on the PoC.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PocSearch {
    pub ratio: Rational,
    pub witness: AdditiveValuation,
    /// Whether every valuation in range was tried.
    pub exhaustive: bool,
    pub evaluated: u64,
}

/// Largest valuation space [`poc_search`] enumerates completely.
pub const POC_EXHAUSTIVE_LIMIT: u128 = 10_000_000;

struct PocEvaluator {
    m: usize,
    n: usize,
    table: Vec<bool>,
}

impl PocEvaluator {
    fn ratio(&self, values: &[i64]) -> Rational {
        let u = Valuation::Additive(AdditiveValuation::from_ints(values));
        let v = ScaledValuation::new(&u);
        let mms = Partitioner {
            m: self.m,
            allowed: None,
        }
        .solve(&v, self.n)
        .0;
        if mms == 0 {
            return Rational::one();
        }
        let gmms = Partitioner {
            m: self.m,
            allowed: Some(&self.table),
        }
        .solve(&v, self.n)
        .0;
        Rational::new(gmms, mms)
    }
}

/// Searches integer valuations with entries in `0..=max_value` for the
/// smallest G-MMS/MMS ratio. Exhaustive when the space has at most
/// [`POC_EXHAUSTIVE_LIMIT`] points, otherwise seeded hill climbing with
/// restarts spending `budget` evaluations.
pub fn poc_search(
    g: &Graph,
    n: usize,
    max_value: i64,
    budget: u64,
    seed: u64,
) -> Result<PocSearch> {
    let m = g.m();
    if n == 0 || max_value < 0 || m == 0 {
        return Err(Error::InvalidParams(
            "need n >= 1, m >= 1 and max_value >= 0".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::InvalidGraph("PoC needs a connected graph".into()));
    }
    check_mms_cap(m, n)?;
    let eval = PocEvaluator {
        m,
        n,
        table: connected_table(g),
    };
    let base = max_value as u128 + 1;
    let space = (0..m).try_fold(1u128, |acc, _| {
        acc.checked_mul(base).filter(|&x| x <= POC_EXHAUSTIVE_LIMIT)
    });
    let mut best_values = vec![0i64; m];
    let mut best = Rational::one();
    let mut evaluated = 0u64;
    let consider = |values: &[i64], best: &mut Rational, best_values: &mut Vec<i64>| -> Rational {
        let r = eval.ratio(values);
        if r < *best {
            *best = r;
            best_values.copy_from_slice(values);
        }
        r
    };

    if space.is_some() {
        let mut values = vec![0i64; m];
        loop {
            consider(&values, &mut best, &mut best_values);
            evaluated += 1;
            // odometer increment
            let mut i = 0;
            while i < m && values[i] == max_value {
                values[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            values[i] += 1;
        }
    } else {
        let mut r = rng(seed);
        while evaluated < budget {
            let mut cur: Vec<i64> = (0..m).map(|_| r.gen_range(0..=max_value)).collect();
            let mut cur_ratio = consider(&cur, &mut best, &mut best_values);
            evaluated += 1;
            let mut stale = 0;
            while evaluated < budget && stale < 4 * m {
                let mut next = cur.clone();
                let i = r.gen_range(0..m);
                next[i] = r.gen_range(0..=max_value);
                let nr = consider(&next, &mut best, &mut best_values);
                evaluated += 1;
                if nr < cur_ratio {
                    stale = 0;
                } else {
                    stale += 1;
                }
                if nr <= cur_ratio {
                    cur = next;
                    cur_ratio = nr;
                }
            }
        }
    }
    Ok(PocSearch {
        ratio: best,
        witness: AdditiveValuation::from_ints(&best_values),
        exhaustive: space.is_some(),
        evaluated,
    })
}

/// Per-agent predicate used while enumerating: anything decidable from one
/// agent's bundle alone is checked early.
fn own_bundle_ok(
    inst: &Instance,
    c: &Criterion,
    thresholds: &[Rational],
    i: usize,
    s: u64,
) -> bool {
    match c {
        Criterion::MmsFraction(_) => inst.valuations[i].value_mask(s) >= thresholds[i],
        Criterion::Ips => {
            let u = inst.valuations[i].as_additive().expect("checked additive");
            is_ips_bundle(u, &mask_to_vec(s), inst.n, inst.m()).is_some()
        }
        _ => true,
    }
}

fn envy_ok(inst: &Instance, c: &Criterion, masks: &[u64]) -> bool {
    let n = inst.n;
    let k = match c {
        Criterion::Ef => 0,
        Criterion::Efk(k) => *k,
        Criterion::Efx => {
            return (0..n).all(|i| {
                let u = &inst.valuations[i];
                let mine = u.value_mask(masks[i]);
                (0..n).filter(|&j| j != i).all(|j| {
                    mask_to_vec(masks[j])
                        .into_iter()
                        .all(|g| mine >= u.value_mask(masks[j] & !(1 << g)))
                })
            })
        }
        _ => return true,
    };
    (0..n).all(|i| {
        (0..n).all(|j| i == j || envy_up_to_mask(&inst.valuations[i], masks[i], masks[j], k))
    })
}

/// Visits every connected allocation (bundles in agent order, empty bundles
/// allowed). Stops early when `visit` returns `true`.
fn for_each_connected_allocation(
    inst: &Instance,
    table: &[bool],
    prune: &dyn Fn(usize, u64) -> bool,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    fn rec(
        agent: usize,
        remaining: u64,
        n: usize,
        table: &[bool],
        prune: &dyn Fn(usize, u64) -> bool,
        masks: &mut Vec<u64>,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> bool {
        if agent + 1 == n {
            if !table[remaining as usize] || !prune(agent, remaining) {
                return false;
            }
            masks.push(remaining);
            let done = visit(masks);
            masks.pop();
            return done;
        }
        let mut sub: u64 = 0;
        loop {
            if table[sub as usize] && prune(agent, sub) {
                masks.push(sub);
                let done = rec(agent + 1, remaining ^ sub, n, table, prune, masks, visit);
                masks.pop();
                if done {
                    return true;
                }
            }
            if sub == remaining {
                return false;
            }
            sub = (sub.wrapping_sub(remaining)) & remaining;
        }
    }
    let full = full_mask(inst.m());
    rec(
        0,
        full,
        inst.n,
        table,
        prune,
        &mut Vec::with_capacity(inst.n),
        visit,
    )
}

fn check_alloc_cap(inst: &Instance) -> Result<()> {
    caps::check(
        "connected allocation enumeration",
        inst.m(),
        Caps::current().allocations,
    )
}

/// First connected allocation (in enumeration order) meeting `c` for every
/// agent, or `None` if there is none.
pub fn exists_connected_allocation(inst: &Instance, c: &Criterion) -> Result<Option<Allocation>> {
    if inst.n == 0 {
        return Err(Error::pre("need at least one agent"));
    }
    check_alloc_cap(inst)?;
    if matches!(c, Criterion::Ips) && !inst.all_additive() {
        return Err(Error::pre("IPS is defined for additive valuations only"));
    }
    let thresholds: Vec<Rational> = match c {
        Criterion::MmsFraction(alpha) => inst
            .valuations
            .iter()
            .map(|u| Ok(*alpha * exact_mms(u, inst.n)?.value))
            .collect::<Result<_>>()?,
        _ => Vec::new(),
    };
    let table = connected_table(&inst.graph);
    let mut found = None;
    let prune = |i: usize, s: u64| own_bundle_ok(inst, c, &thresholds, i, s);
    for_each_connected_allocation(inst, &table, &prune, &mut |masks| {
        if envy_ok(inst, c, masks) {
            found = Some(Allocation::from_masks(masks));
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// Smallest `k` such that two agents sharing any binary valuation always
/// have a connected EFk allocation, by enumerating all `2^m` valuations.
pub fn guaranteed_efk_bruteforce(g: &Graph) -> Result<usize> {
    Ok(guaranteed_efk_witness(g)?.0)
}

/// [`guaranteed_efk_bruteforce`] together with a binary valuation (as a
/// bitmask of goods worth 1) that needs the returned `k`.
pub fn guaranteed_efk_witness(g: &Graph) -> Result<(usize, u64)> {
    let m = g.m();
    caps::check("binary EFk enumeration", m, Caps::current().binary_efk)?;
    if !g.is_connected() {
        return Err(Error::InvalidGraph("graph must be connected".into()));
    }
    let table = connected_table(g);
    let full = full_mask(m);
    let mut worst = (0usize, 0u64);
    for ones in 0..=full {
        let u = Valuation::Additive(AdditiveValuation::new(
            (0..m).map(|x| int(((ones >> x) & 1) as i128)).collect(),
        ));
        let mut best = usize::MAX;
        // two agents: first bundle S, second the complement
        let mut s: u64 = 0;
        loop {
            let t = full ^ s;
            if table[s as usize] && table[t as usize] {
                let need = min_removals_mask(&u, s, t).max(min_removals_mask(&u, t, s));
                best = best.min(need);
            }
            if s == full {
                break;
            }
            s = (s.wrapping_sub(full)) & full;
        }
        if best > worst.0 {
            worst = (best, ones);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{catalog, named_graph, random_additive, random_graph, wheel, GraphKind};
    use crate::valuation::ratio;
    use proptest::prelude::*;

    fn add(values: &[i64]) -> Valuation {
        Valuation::Additive(AdditiveValuation::from_ints(values))
    }

    /// Independent oracle: assign every good to one of `n` labels.
    fn brute_maxmin(g: Option<&Graph>, u: &Valuation, n: usize) -> Rational {
        let m = u.m();
        let mut best = None;
        let total = n.pow(m as u32);
        for code in 0..total {
            let mut masks = vec![0u64; n];
            let mut c = code;
            for x in 0..m {
                masks[c % n] |= 1 << x;
                c /= n;
            }
            if let Some(g) = g {
                if !masks.iter().all(|&s| g.is_connected_mask(s)) {
                    continue;
                }
            }
            let v = masks.iter().map(|&s| u.value_mask(s)).min().unwrap();
            if best.is_none_or(|b| v > b) {
                best = Some(v);
            }
        }
        best.unwrap()
    }

    #[test]
    fn fig2_values() {
        let inst = catalog("fig2_wheel", &[]).unwrap();
        let u = &inst.valuations[0];
        assert_eq!(exact_mms(u, 2).unwrap().value, int(4));
        let w = exact_gmms(&inst.graph, u, 2).unwrap();
        assert_eq!(w.value, int(3));
        assert!(w
            .partition
            .iter()
            .all(|b| inst.graph.is_connected_subset(b)));
        assert_eq!(poc_ratio(&inst.graph, u, 2).unwrap(), ratio(3, 4));
    }

    #[test]
    fn l5_values() {
        let inst = catalog("fig3_L5", &[]).unwrap();
        assert_eq!(exact_mms(&inst.valuations[0], 2).unwrap().value, int(4));
        assert_eq!(
            exact_gmms(&inst.graph, &inst.valuations[0], 2)
                .unwrap()
                .value,
            int(3)
        );
    }

    #[test]
    fn fewer_goods_than_agents() {
        let w = exact_mms(&add(&[5, 5]), 3).unwrap();
        assert_eq!(w.value, int(0));
        assert_eq!(w.partition.len(), 3);
        assert_eq!(
            poc_ratio(&named_graph("path:3").unwrap(), &add(&[0, 0, 0]), 2).unwrap(),
            int(1)
        );
        assert_eq!(
            exact_gmms(&named_graph("path:3").unwrap(), &add(&[1, 2, 1]), 2)
                .unwrap()
                .value,
            int(1)
        );
    }

    #[test]
    fn witnesses_are_partitions_with_stated_value() {
        for seed in 0..60 {
            let m = 1 + seed as usize % 8;
            let n = 1 + seed as usize % 4;
            let g = random_graph(GraphKind::Connected, m, seed).unwrap();
            let u = Valuation::Additive(random_additive(m, 5, &mut rng(seed)));
            for w in [exact_mms(&u, n).unwrap(), exact_gmms(&g, &u, n).unwrap()] {
                assert_eq!(w.partition.len(), n);
                Allocation::new(w.partition.clone())
                    .check_partition(n, m)
                    .unwrap();
                let min = w.partition.iter().map(|b| u.value_of(b)).min().unwrap();
                assert_eq!(min, w.value);
            }
        }
    }

    #[test]
    fn dp_matches_label_enumeration() {
        for seed in 0..80 {
            let m = 1 + seed as usize % 7;
            let n = 1 + seed as usize % 3;
            let g = random_graph(GraphKind::Connected, m, seed + 1000).unwrap();
            let u = Valuation::Additive(random_additive(m, 6, &mut rng(seed)));
            assert_eq!(exact_mms(&u, n).unwrap().value, brute_maxmin(None, &u, n));
            assert_eq!(
                exact_gmms(&g, &u, n).unwrap().value,
                brute_maxmin(Some(&g), &u, n)
            );
        }
    }

    #[test]
    fn tree_oracles_agree() {
        for seed in 0..60 {
            let m = 1 + seed as usize % 9;
            let n = 1 + seed as usize % 4;
            let t = random_graph(GraphKind::Tree, m, seed).unwrap();
            let u = Valuation::Additive(random_additive(m, 7, &mut rng(seed)));
            assert_eq!(
                exact_gmms(&t, &u, n).unwrap().value,
                exact_gmms_tree(&t, &u, n).unwrap().value
            );
        }
    }

    #[test]
    fn caps_enforced() {
        let u = add(&[1; 15]);
        assert!(matches!(exact_mms(&u, 2), Err(Error::CapExceeded { .. })));
        assert!(matches!(
            exact_mms(&add(&[1; 13]), 3),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn poc_search_examples() {
        let c4 = named_graph("cycle:4").unwrap();
        let s = poc_search(&c4, 2, 4, 0, 1).unwrap();
        assert!(s.exhaustive);
        assert!(s.ratio <= ratio(3, 4));
        let star = named_graph("star:4").unwrap();
        assert!(poc_search(&star, 2, 3, 0, 1).unwrap().ratio <= ratio(1, 3));
        assert_eq!(
            poc_search(&named_graph("complete:3").unwrap(), 2, 5, 10, 1)
                .unwrap()
                .ratio,
            int(1)
        );
        // random mode is deterministic in its seed
        let w = wheel(8);
        let a = poc_search(&w, 2, 9, 300, 11).unwrap();
        let b = poc_search(&w, 2, 9, 300, 11).unwrap();
        assert!(!a.exhaustive);
        assert_eq!(a, b);
        assert_eq!(a.evaluated, 300);
        let own = poc_ratio(&w, &Valuation::Additive(a.witness.clone()), 2).unwrap();
        assert!(a.ratio >= own);
    }

    #[test]
    fn existence_examples() {
        let t21 = catalog("thm21_efx", &[("graph", "cycle:4")]).unwrap();
        assert!(exists_connected_allocation(&t21, &Criterion::Efx)
            .unwrap()
            .is_none());
        let f6 = catalog("fig6_tree", &[]).unwrap();
        assert!(exists_connected_allocation(&f6, &Criterion::Efk(1))
            .unwrap()
            .is_none());
        let zero = Instance::identical(
            named_graph("path:4").unwrap(),
            3,
            AdditiveValuation::from_ints(&[0; 4]),
        );
        assert!(exists_connected_allocation(&zero, &Criterion::Ef)
            .unwrap()
            .is_some());
        let w = catalog("fig2_wheel", &[]).unwrap();
        assert!(
            exists_connected_allocation(&w, &Criterion::MmsFraction(ratio(3, 4)))
                .unwrap()
                .is_some()
        );
        assert!(
            exists_connected_allocation(&w, &Criterion::MmsFraction(int(1)))
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn guaranteed_efk_examples() {
        assert_eq!(
            guaranteed_efk_bruteforce(&named_graph("path:6").unwrap()).unwrap(),
            1
        );
        assert_eq!(
            guaranteed_efk_bruteforce(&named_graph("star:4").unwrap()).unwrap(),
            2
        );
        for m in 4..=7 {
            assert_eq!(
                guaranteed_efk_bruteforce(&named_graph(&format!("star:{m}")).unwrap()).unwrap(),
                m - 2
            );
        }
    }

    #[test]
    fn thm12_star_ratios() {
        for n in 2..=3 {
            for m in n..=7 {
                let inst = catalog(
                    "thm12_star",
                    &[("n", &n.to_string()), ("m", &m.to_string())],
                )
                .unwrap();
                let r = poc_ratio(&inst.graph, &inst.valuations[0], n).unwrap();
                assert_eq!(r, ratio(1, (m - n + 1) as i128), "n={n} m={m}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn share_chain(seed in 0u64..10_000, m in 1usize..9, n in 1usize..4) {
            let g = random_graph(GraphKind::Connected, m, seed).unwrap();
            let u = Valuation::Additive(random_additive(m, 9, &mut rng(seed)));
            let mms = exact_mms(&u, n).unwrap().value;
            let gmms = exact_gmms(&g, &u, n).unwrap().value;
            prop_assert!(gmms <= mms);
            prop_assert!(mms * int(n as i128) <= u.total());
        }

        #[test]
        fn gmms_monotone_under_edge_addition(seed in 0u64..10_000, m in 2usize..9, n in 1usize..4) {
            let g = random_graph(GraphKind::Tree, m, seed).unwrap();
            let mut edges = g.edges().to_vec();
            let mut r = rng(seed);
            let a = rand::Rng::gen_range(&mut r, 0..m);
            let b = rand::Rng::gen_range(&mut r, 0..m);
            if a != b && !g.has_edge(a, b) {
                edges.push((a.min(b), a.max(b)));
            }
            let h = Graph::new(m, edges).unwrap();
            let u = Valuation::Additive(random_additive(m, 9, &mut r));
            prop_assert!(exact_gmms(&g, &u, n).unwrap().value <= exact_gmms(&h, &u, n).unwrap().value);
        }

        #[test]
        fn large_bundles_reach_mms(seed in 0u64..10_000, m in 1usize..9, n in 1usize..4, pick in 0u64..256) {
            prop_assume!(m >= n);
            let u = Valuation::Additive(random_additive(m, 9, &mut rng(seed)));
            let mms = exact_mms(&u, n).unwrap().value;
            let bundle = pick & full_mask(m);
            if bundle.count_ones() as usize > m - n {
                prop_assert!(u.value_mask(bundle) >= mms);
            }
        }
    }
}
