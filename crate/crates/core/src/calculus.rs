//! Monotonizations, lattice operations, variation, weighting and structural operations.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::choquet::{self, StepFunction};
use crate::error::{Error, Result};
use crate::ground::{expand, GroundSet, Subset};
use crate::rational::{self, Rational};
use crate::setfn::{Flags, SetFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonization {
    /// `min` over subsets
    LowerInf,
    /// `min` over supersets
    UpperInf,
    /// `max` over subsets
    LowerSup,
    /// `max` over supersets
    UpperSup,
}

/// Subset-lattice dynamic programming in `O(n 2^n)`.
pub fn monotonize(phi: &SetFunction, which: Monotonization) -> SetFunction {
    let n = phi.n();
    let mut v: Vec<Rational> = phi.values().to_vec();
    let pick = |a: &Rational, b: &Rational| match which {
        Monotonization::LowerInf | Monotonization::UpperInf => rational::min(a, b),
        Monotonization::LowerSup | Monotonization::UpperSup => rational::max(a, b),
    };
    let below = matches!(which, Monotonization::LowerInf | Monotonization::LowerSup);
    for i in 0..n {
        for m in 0..v.len() {
            if m >> i & 1 == 1 {
                let o = m ^ (1 << i);
                if below {
                    v[m] = pick(&v[m], &v[o]);
                } else {
                    v[o] = pick(&v[o], &v[m]);
                }
            }
        }
    }
    let flags = match which {
        Monotonization::LowerInf | Monotonization::UpperSup => Flags::DECREASING,
        Monotonization::UpperInf | Monotonization::LowerSup => Flags::INCREASING,
    };
    SetFunction::from_values(phi.ground().clone(), v).expect("same shape").with_mode(phi.mode().clone()).with_flags(flags)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeOp {
    /// `max` over splits `X = Y ∪ (X \ Y)` of `φ(Y) + ψ(X \ Y)`
    Join,
    /// `min` over the same splits
    Meet,
}

pub fn join_meet(phi: &SetFunction, psi: &SetFunction, which: LatticeOp) -> Result<SetFunction> {
    phi.same_ground(psi)?;
    let f = SetFunction::tabulate_with_limit(phi.ground().clone(), crate::ground::TABLE_HARD_LIMIT, |x| {
        let mut best: Option<Rational> = None;
        for y in x.subsets() {
            let v = &phi[y] + &psi[x.difference(y)];
            best = Some(match (best, which) {
                (None, _) => v,
                (Some(b), LatticeOp::Join) => rational::max(&b, &v),
                (Some(b), LatticeOp::Meet) => rational::min(&b, &v),
            });
        }
        best.expect("every set has at least one subset")
    })?;
    Ok(f.with_mode(phi.mode().clone()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationDecomposition {
    pub total_variation: Rational,
    /// Increasing part, sup over chains of positive increments.
    pub mu: SetFunction,
    /// Increasing part, sup over chains of negative increments; `φ − φ(∅) = μ − ν`.
    pub nu: SetFunction,
}

pub const VARIATION_MAX_N: usize = 14;

/// Total variation over chains `∅ = X_0 ⊂ ... ⊂ X_m = J`, by DP over proper subsets in `O(3^n)`.
/// A nonzero `φ(∅)` is shifted away first.
pub fn variation(phi: &SetFunction) -> Result<VariationDecomposition> {
    let n = phi.n();
    if n > VARIATION_MAX_N {
        return Err(Error::TooLarge { size: n, limit: VARIATION_MAX_N });
    }
    let size = 1usize << n;
    let mut best = alloc::vec![Rational::zero(); size];
    let mut mu = alloc::vec![Rational::zero(); size];
    let mut nu = alloc::vec![Rational::zero(); size];
    for m in 1..size {
        let x = Subset(m as u64);
        let (mut b, mut p, mut q): (Option<Rational>, Option<Rational>, Option<Rational>) = (None, None, None);
        for y in x.subsets() {
            if y == x {
                continue;
            }
            let d = &phi[x] - &phi[y];
            let cand_b = &best[y.index()] + d.abs();
            let cand_p = &mu[y.index()] + rational::pos(&d);
            let cand_q = &nu[y.index()] + rational::pos(&-&d);
            b = Some(b.map_or(cand_b.clone(), |v| rational::max(&v, &cand_b)));
            p = Some(p.map_or(cand_p.clone(), |v| rational::max(&v, &cand_p)));
            q = Some(q.map_or(cand_q.clone(), |v| rational::max(&v, &cand_q)));
        }
        best[m] = b.expect("nonempty set has a proper subset");
        mu[m] = p.expect("nonempty set has a proper subset");
        nu[m] = q.expect("nonempty set has a proper subset");
    }
    let total_variation = best[size - 1].clone();
    let ground = phi.ground().clone();
    let mu = SetFunction::from_values(ground.clone(), mu)?.with_flags(Flags::INCREASING | Flags::NORMALIZED);
    let nu = SetFunction::from_values(ground, nu)?.with_flags(Flags::INCREASING | Flags::NORMALIZED);
    let base = &phi[Subset::EMPTY];
    if &mu[phi.full()] + &nu[phi.full()] != total_variation
        || (0..size).any(|m| &mu.values()[m] - &nu.values()[m] != &phi.values()[m] - base)
    {
        return Err(Error::Internal("variation parts disagree with the total".into()));
    }
    Ok(VariationDecomposition { total_variation, mu, nu })
}

/// `(φ^ls, φ − φ^ls)`: an increasing and a decreasing part, both subadditive.
pub fn decompose_submodular(phi: &SetFunction) -> Result<(SetFunction, SetFunction)> {
    phi.require_normalized()?;
    phi.require_submodular()?;
    let inc = monotonize(phi, Monotonization::LowerSup);
    let dec = phi.sub(&inc)?.with_flags(Flags::DECREASING | Flags::NORMALIZED);
    let checks = [
        (inc.is_increasing(), "increasing part is not increasing"),
        (dec.is_decreasing(), "decreasing part is not decreasing"),
        (inc.subadditive_violation().is_none(), "increasing part is not subadditive"),
        (dec.subadditive_violation().is_none(), "decreasing part is not subadditive"),
    ];
    if let Some((_, msg)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::Internal((*msg).to_string()));
    }
    Ok((inc.with_flags(Flags::INCREASING | Flags::NORMALIZED), dec))
}

/// `(w·φ)(X) = φ̂(w·1_X)`.
pub fn weighting(w: &StepFunction, phi: &SetFunction) -> Result<SetFunction> {
    if w.len() != phi.n() {
        return Err(Error::GroundMismatch);
    }
    if let Some(k) = w.values().iter().position(Signed::is_negative) {
        return Err(Error::NegativeWeight(k));
    }
    phi.require_normalized()?;
    let mut err = None;
    let f = SetFunction::tabulate_with_limit(phi.ground().clone(), crate::ground::TABLE_HARD_LIMIT, |x| {
        choquet::choquet(phi, &w.restrict(x)).unwrap_or_else(|e| {
            err = Some(e);
            Rational::zero()
        })
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(f.with_mode(phi.mode().clone())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureOp {
    Restrict(Subset),
    Project(Subset),
    Complement,
    Truncate(Rational),
    /// `map[i]` is the image of atom `i` in `ground`.
    Quotient { ground: GroundSet, map: Vec<usize> },
    /// `Γ(X) = base ∪ ⋃_{i ∈ X} images[i]` for `X` in `ground`.
    Pullback { ground: GroundSet, base: Subset, images: Vec<Subset> },
    AddRepresentative { set: Subset, label: String },
}

pub fn structure(phi: &SetFunction, op: &StructureOp) -> Result<SetFunction> {
    match op {
        StructureOp::Restrict(a) => restrict(phi, *a),
        StructureOp::Project(a) => project(phi, *a),
        StructureOp::Complement => Ok(phi.complement()),
        StructureOp::Truncate(c) => truncate(phi, c),
        StructureOp::Quotient { ground, map } => quotient(phi, ground, map),
        StructureOp::Pullback { ground, base, images } => pullback(phi, ground, *base, images),
        StructureOp::AddRepresentative { set, label } => add_representative(phi, *set, label),
    }
}

fn check_within(phi: &SetFunction, a: Subset) -> Result<()> {
    if !a.is_subset_of(phi.full()) {
        return Err(Error::BadArgument(alloc::format!("{a} is not a subset of the ground set")));
    }
    Ok(())
}

fn require_increasing_for(phi: &SetFunction, op: &str) -> Result<()> {
    if let Some((x, y)) = phi.increasing_violation() {
        return Err(Error::PreconditionFailed(alloc::format!("{op} needs an increasing function; fails at {x} ⊂ {y}")));
    }
    Ok(())
}

/// `φ_A(X) = φ(X)` for `X ⊆ A`, on the ground set `A`.
pub fn restrict(phi: &SetFunction, a: Subset) -> Result<SetFunction> {
    check_within(phi, a)?;
    let f = SetFunction::tabulate_with_limit(phi.ground().restrict(a), crate::ground::TABLE_HARD_LIMIT, |x| {
        phi[expand(x, a)].clone()
    })?;
    Ok(f.with_mode(phi.mode().clone()))
}

/// `φ^A(X) = φ(A^c ∪ X) − φ(A^c)`, on the ground set `A`.
pub fn project(phi: &SetFunction, a: Subset) -> Result<SetFunction> {
    check_within(phi, a)?;
    let rest = a.complement(phi.n());
    let f = SetFunction::tabulate_with_limit(phi.ground().restrict(a), crate::ground::TABLE_HARD_LIMIT, |x| {
        &phi[rest.union(expand(x, a))] - &phi[rest]
    })?;
    Ok(f.with_mode(phi.mode().clone()))
}

/// `min(c, φ)`.
pub fn truncate(phi: &SetFunction, c: &Rational) -> Result<SetFunction> {
    require_increasing_for(phi, "truncation")?;
    Ok(phi.map(|_, v| rational::min(v, c)))
}

/// `X -> φ(Π^{-1}(X))`.
pub fn quotient(phi: &SetFunction, ground: &GroundSet, map: &[usize]) -> Result<SetFunction> {
    if map.len() != phi.n() || map.iter().any(|&j| j >= ground.len()) {
        return Err(Error::BadArgument("quotient map must send every atom into the new ground set".into()));
    }
    if (0..ground.len()).any(|j| !map.contains(&j)) {
        return Err(Error::PreconditionFailed("quotient map is not surjective".into()));
    }
    let f = SetFunction::tabulate_with_limit(ground.clone(), crate::ground::TABLE_HARD_LIMIT, |x| {
        phi[Subset::from_atoms((0..map.len()).filter(|&i| x.contains(map[i])))].clone()
    })?;
    Ok(f.with_mode(phi.mode().clone()))
}

/// `X -> φ(Γ(X))` for a union-preserving `Γ`.
pub fn pullback(phi: &SetFunction, ground: &GroundSet, base: Subset, images: &[Subset]) -> Result<SetFunction> {
    if images.len() != ground.len() || images.iter().chain([&base]).any(|s| !s.is_subset_of(phi.full())) {
        return Err(Error::BadArgument("pullback needs one image per atom inside the ground set".into()));
    }
    require_increasing_for(phi, "pullback")?;
    let f = SetFunction::tabulate_with_limit(ground.clone(), crate::ground::TABLE_HARD_LIMIT, |x| {
        phi[x.atoms().fold(base, |acc, i| acc.union(images[i]))].clone()
    })?;
    Ok(f.with_mode(phi.mode().clone()))
}

/// New atom `label` standing for `A`: `φ'(X) = φ(X)` without it, `φ((X \ {a}) ∪ A)` with it.
pub fn add_representative(phi: &SetFunction, a: Subset, label: &str) -> Result<SetFunction> {
    check_within(phi, a)?;
    require_increasing_for(phi, "adding a representative")?;
    let mut labels: Vec<String> = phi.ground().labels().to_vec();
    labels.push(label.to_string());
    let ground = GroundSet::new(&labels)?;
    let new = phi.n();
    let f = SetFunction::tabulate_with_limit(ground, crate::ground::TABLE_HARD_LIMIT, |x| {
        if x.contains(new) {
            phi[x.without(new).union(a)].clone()
        } else {
            phi[x].clone()
        }
    })?;
    Ok(f.with_mode(phi.mode().clone()))
}

/// A pair of submodular functions whose difference `φ − ψ` is increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergingPair {
    phi: SetFunction,
    psi: SetFunction,
}

impl DivergingPair {
    pub fn phi(&self) -> &SetFunction {
        &self.phi
    }

    pub fn psi(&self) -> &SetFunction {
        &self.psi
    }

    /// `min(φ, ψ)`, submodular for a diverging pair.
    pub fn min(&self) -> Result<SetFunction> {
        let m = self.phi.pointwise_min(&self.psi)?;
        m.require_submodular().map_err(|_| Error::Internal("minimum of a diverging pair is not submodular".into()))?;
        Ok(m.with_flags(Flags::SUBMODULAR))
    }
}

pub fn check_diverging(phi: &SetFunction, psi: &SetFunction) -> Result<DivergingPair> {
    phi.same_ground(psi)?;
    phi.require_submodular()?;
    psi.require_submodular()?;
    if let Some((x, y)) = phi.sub(psi)?.increasing_violation() {
        return Err(Error::NotDiverging { x, y });
    }
    Ok(DivergingPair { phi: phi.clone(), psi: psi.clone() })
}

pub fn min_of_pair(pair: &DivergingPair) -> Result<SetFunction> {
    pair.min()
}

/// For increasing submodular `φ1`, `φ2` with `φ1 − φ2` increasing, builds `ψ` on `J ∪ {a}` with
/// restriction `φ1` to `J` and projection `φ2 − φ2(∅)` to `J`.
pub fn lift_diverging_pair(pair: &DivergingPair, label: &str) -> Result<SetFunction> {
    let (f1, f2) = (&pair.phi, &pair.psi);
    f1.require_increasing()?;
    f2.require_increasing()?;
    let n = f1.n();
    let full = f1.full();
    let mut labels: Vec<String> = f1.ground().labels().to_vec();
    labels.push(label.to_string());
    let ground = GroundSet::new(&labels)?;
    let lift = &f1[full] - &f2[full];
    let psi = SetFunction::tabulate_with_limit(ground, crate::ground::TABLE_HARD_LIMIT, |x| {
        if x.contains(n) {
            &f2[x.without(n)] + &lift
        } else {
            f1[x].clone()
        }
    })?;
    let a = Subset::singleton(n);
    let ok = psi.is_increasing()
        && psi.is_submodular()
        && restrict(&psi, full)?.values() == f1.values()
        && project(&psi, full)?.values() == f2.shift(&-&f2[Subset::EMPTY]).values()
        && psi[a] == &f2[Subset::EMPTY] + &lift;
    if !ok {
        return Err(Error::Internal("lifted function fails its defining properties".into()));
    }
    Ok(psi.with_flags(Flags::SUBMODULAR | Flags::INCREASING))
}

/// Splicing along `a` (atom of `φ`) and `b` (atom of `ψ`):
/// `σ(X ∪ Y) = min(φ(X) + ψ(Y), φ(X ∪ a) + ψ(Y ∪ b) − φ(a))`.
/// Atoms of `ψ` whose labels collide with `φ`'s get the first free suffix `#2`, `#3`, ....
pub fn splice(phi: &SetFunction, psi: &SetFunction, a: usize, b: usize) -> Result<SetFunction> {
    if a >= phi.n() || b >= psi.n() {
        return Err(Error::BadArgument("splice atoms must belong to their ground sets".into()));
    }
    for f in [phi, psi] {
        f.require_normalized()?;
        f.require_increasing()?;
        f.require_submodular()?;
    }
    let (sa, sb) = (Subset::singleton(a), Subset::singleton(b));
    if phi[sa] != psi[sb] {
        return Err(Error::RankMismatch);
    }
    let mut labels: Vec<String> = phi.ground().labels().to_vec();
    for l in psi.ground().labels() {
        let mut name = l.clone();
        let mut k = 2;
        while labels.contains(&name) {
            name = alloc::format!("{l}#{k}");
            k += 1;
        }
        labels.push(name);
    }
    let ground = GroundSet::new(&labels)?;
    let (n1, left) = (phi.n(), phi.full());
    let sigma = SetFunction::tabulate_with_limit(ground, crate::ground::TABLE_HARD_LIMIT, |z| {
        let x = z.intersection(left);
        let y = Subset(z.mask() >> n1);
        let first = &phi[x] + &psi[y];
        let second = &phi[x.union(sa)] + &psi[y.union(sb)] - &phi[sa];
        rational::min(&first, &second)
    })?;
    let right = Subset::full(sigma.n()).difference(left);
    let ok = sigma.is_submodular()
        && restrict(&sigma, left)?.values() == phi.values()
        && restrict(&sigma, right)?.values() == psi.values();
    if !ok {
        return Err(Error::Internal("splice fails its defining properties".into()));
    }
    Ok(sigma.with_flags(Flags::SUBMODULAR | Flags::INCREASING | Flags::NORMALIZED))
}
