//! Exact minimization, positive parts over partitions, Dilworth truncation and the additive
//! majorizer.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::generators::gen_coverage;
use crate::ground::{all_subsets, GroundSet, Subset, DEFAULT_MAX_N};
use crate::polyhedra::{check_matroid_rank, Charge};
use crate::rational::{self, Rational};
use crate::relation::Relation;
use crate::setfn::{Flags, SetFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    LatticeDp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizationResult {
    pub minimizer: Subset,
    pub value: Rational,
    pub method: Method,
    /// Every subset of the search range was accounted for.
    pub certified: bool,
}

fn check_range(phi: &SetFunction, over: Option<Subset>) -> Result<Subset> {
    let over = over.unwrap_or_else(|| phi.full());
    if !over.is_subset_of(phi.full()) {
        return Err(Error::BadArgument(alloc::format!("{over} is not a subset of the ground set")));
    }
    Ok(over)
}

/// Global minimizer over the subsets of `over` (default `J`), smallest mask on ties.
pub fn minimize(phi: &SetFunction, over: Option<Subset>) -> Result<MinimizationResult> {
    minimize_with_limit(phi, over, DEFAULT_MAX_N)
}

pub fn minimize_with_limit(phi: &SetFunction, over: Option<Subset>, limit: usize) -> Result<MinimizationResult> {
    phi.ground().check_tabulable(limit)?;
    let over = check_range(phi, over)?;
    let mut best = Subset::EMPTY;
    let mut ys: Vec<Subset> = over.subsets().collect();
    ys.sort();
    for y in ys {
        if phi[y] < phi[best] {
            best = y;
        }
    }
    Ok(MinimizationResult { minimizer: best, value: phi[best].clone(), method: Method::Exhaustive, certified: true })
}

/// Same answer through the lower-infimum table: each entry keeps the best `(value, mask)` below it.
pub fn minimize_lattice(phi: &SetFunction, over: Option<Subset>) -> Result<MinimizationResult> {
    let over = check_range(phi, over)?;
    let mut best: Vec<Subset> = all_subsets(phi.n()).collect();
    for i in 0..phi.n() {
        for m in 0..best.len() {
            if m >> i & 1 == 1 {
                let o = best[m ^ (1 << i)];
                let cur = best[m];
                if (&phi[o], o) < (&phi[cur], cur) {
                    best[m] = o;
                }
            }
        }
    }
    let minimizer = best[over.index()];
    Ok(MinimizationResult { minimizer, value: phi[minimizer].clone(), method: Method::LatticeDp, certified: true })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionResult {
    pub partition: Vec<Subset>,
    pub value: Rational,
}

pub const PARTITION_MAX_N: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Min,
    Max,
}

/// Best partition of every `S ⊆ U` into nonempty blocks with additive block scores, by DP over
/// the block holding the lowest atom (`O(3^|U|)`). Returns per-mask values and chosen blocks.
fn partition_dp<F: Fn(Subset) -> Rational>(u: Subset, n: usize, score: F, goal: Goal) -> (Vec<Option<Rational>>, Vec<Subset>) {
    let size = 1usize << n;
    let mut value: Vec<Option<Rational>> = alloc::vec![None; size];
    let mut choice = alloc::vec![Subset::EMPTY; size];
    value[0] = Some(Rational::zero());
    let mut masks: Vec<Subset> = u.subsets().filter(|s| !s.is_empty()).collect();
    masks.sort_by_key(|s| (s.len(), *s));
    for s in masks {
        let low = Subset::singleton(s.lowest().expect("nonempty"));
        let rest = s.difference(low);
        let mut best: Option<(Rational, Subset)> = None;
        let mut extra: Vec<Subset> = rest.subsets().collect();
        extra.sort();
        for e in extra {
            let block = e.union(low);
            let v = score(block) + value[s.difference(block).index()].as_ref().expect("smaller sets first");
            let better = match &best {
                None => true,
                Some((b, _)) => match goal {
                    Goal::Min => &v < b,
                    Goal::Max => &v > b,
                },
            };
            if better {
                best = Some((v, block));
            }
        }
        let (v, block) = best.expect("at least one block");
        value[s.index()] = Some(v);
        choice[s.index()] = block;
    }
    (value, choice)
}

fn unwind(mut s: Subset, choice: &[Subset]) -> Vec<Subset> {
    let mut blocks = Vec::new();
    while !s.is_empty() {
        let b = choice[s.index()];
        blocks.push(b);
        s = s.difference(b);
    }
    blocks
}

fn check_partition_size(u: Subset) -> Result<()> {
    if u.len() > PARTITION_MAX_N {
        return Err(Error::TooLarge { size: u.len(), limit: PARTITION_MAX_N });
    }
    Ok(())
}

/// `φ∘(U) = min` over partitions of `U` of `Σ |φ(block)|₊`, with `φ∘(∅) = |φ(∅)|₊`.
pub fn positive_part(phi: &SetFunction, u: Subset) -> Result<PartitionResult> {
    check_partition_size(u)?;
    let u = check_range(phi, Some(u))?;
    if u.is_empty() {
        return Ok(PartitionResult { partition: Vec::new(), value: rational::pos(&phi[Subset::EMPTY]) });
    }
    let (value, choice) = partition_dp(u, phi.n(), |b| rational::pos(&phi[b]), Goal::Min);
    Ok(PartitionResult { partition: unwind(u, &choice), value: value[u.index()].clone().expect("computed") })
}

/// The whole table of `φ∘`.
pub fn positive_part_table(phi: &SetFunction) -> Result<SetFunction> {
    check_partition_size(phi.full())?;
    let (value, _) = partition_dp(phi.full(), phi.n(), |b| rational::pos(&phi[b]), Goal::Min);
    let mut values: Vec<Rational> = value.into_iter().map(|v| v.expect("computed")).collect();
    values[0] = rational::pos(&phi[Subset::EMPTY]);
    SetFunction::from_values(phi.ground().clone(), values)
}

/// `φ^⊓(U) = max` over partitions of `U` of `Σ φ(block)`, for increasing subadditive `φ` with
/// `φ(∅) = 0`.
pub fn majorizer(phi: &SetFunction, u: Subset) -> Result<PartitionResult> {
    check_partition_size(u)?;
    let u = check_range(phi, Some(u))?;
    phi.require_normalized()?;
    phi.require_increasing()?;
    if let Some((x, y)) = phi.subadditive_violation() {
        return Err(Error::NotSubadditive { x, y });
    }
    let (value, choice) = partition_dp(u, phi.n(), |b| phi[b].clone(), Goal::Max);
    Ok(PartitionResult { partition: unwind(u, &choice), value: value[u.index()].clone().expect("computed") })
}

/// The majorizer as a charge: singleton values, checked against the partition optimum on every
/// set and to lie above `φ`.
pub fn majorizing_charge(phi: &SetFunction) -> Result<Charge> {
    let atoms: Vec<Rational> = (0..phi.n()).map(|i| phi[Subset::singleton(i)].clone()).collect();
    let charge = Charge::new(phi.ground().clone(), atoms)?;
    check_partition_size(phi.full())?;
    phi.require_normalized()?;
    phi.require_increasing()?;
    if let Some((x, y)) = phi.subadditive_violation() {
        return Err(Error::NotSubadditive { x, y });
    }
    let (value, _) = partition_dp(phi.full(), phi.n(), |b| phi[b].clone(), Goal::Max);
    for s in all_subsets(phi.n()) {
        let v = value[s.index()].as_ref().expect("computed");
        if *v != charge.eval(s) || phi[s] > *v {
            return Err(Error::Internal(alloc::format!("majorizer is not additive at {s}")));
        }
    }
    Ok(charge)
}

/// `(ρ − 1)∘` for `ρ(X) = |R(X)|`, certified as a matroid rank function.
pub fn dilworth_truncation_rank(rel: &Relation) -> Result<SetFunction> {
    let ones = alloc::vec![rational::int(1); rel.right().len()];
    let rho = gen_coverage(rel, &ones)?;
    let shifted = rho.shift(&rational::int(-1));
    let r = positive_part_table(&shifted)?;
    check_matroid_rank(&r).map_err(|e| Error::Internal(alloc::format!("truncation is not a matroid rank: {e}")))?;
    Ok(r.with_flags(Flags::SUBMODULAR | Flags::INCREASING | Flags::NORMALIZED))
}

/// Edge-vertex incidence of a simple graph; edges labelled `e1, e2, ...`.
pub fn graph_incidence(vertices: usize, edges: &[(usize, usize)]) -> Result<Relation> {
    let labels: Vec<alloc::string::String> = (1..=edges.len()).map(|i| alloc::format!("e{i}")).collect();
    Relation::from_pairs(
        GroundSet::new(&labels)?,
        GroundSet::numbered(vertices),
        &edges.iter().enumerate().flat_map(|(k, &(u, v))| [(k, u), (k, v)]).collect::<Vec<_>>(),
    )
}

/// All set partitions of `u` via restricted-growth strings.
pub struct SetPartitions {
    atoms: Vec<usize>,
    rgs: Vec<usize>,
    done: bool,
}

pub fn set_partitions(u: Subset) -> SetPartitions {
    let atoms: Vec<usize> = u.atoms().collect();
    let rgs = alloc::vec![0; atoms.len()];
    SetPartitions { atoms, rgs, done: false }
}

impl Iterator for SetPartitions {
    type Item = Vec<Subset>;

    fn next(&mut self) -> Option<Vec<Subset>> {
        if self.done {
            return None;
        }
        let k = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = alloc::vec![Subset::EMPTY; k];
        for (pos, &b) in self.rgs.iter().enumerate() {
            blocks[b] = blocks[b].with(self.atoms[pos]);
        }
        // advance: rightmost position that can grow (a[i] <= max of prefix)
        let len = self.rgs.len();
        let mut i = len;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let prefix_max = self.rgs[..i].iter().max().copied().unwrap_or(0);
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for v in self.rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
        Some(blocks)
    }
}
