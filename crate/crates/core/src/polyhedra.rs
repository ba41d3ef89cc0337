//! Charges below submodular functions: greedy vertices, separation, basic and pinned charges,
//! exchange, intersection and coupling.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::calculus::{self, LatticeOp, Monotonization};
use crate::choquet::{self, StepFunction};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::ground::{all_subsets, GroundSet, Subset};
use crate::lp::{LinearProgram, LpOutcome};
use crate::rational::{self, Rational};
use crate::relation::Relation;
use crate::setfn::{Flags, SetFunction};

/// A finitely additive signed measure on a finite ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charge {
    ground: GroundSet,
    atoms: Vec<Rational>,
}

impl Charge {
    pub fn new(ground: GroundSet, atoms: Vec<Rational>) -> Result<Charge> {
        if atoms.len() != ground.len() {
            return Err(Error::ShapeError(alloc::format!("{} atom values for {} atoms", atoms.len(), ground.len())));
        }
        Ok(Charge { ground, atoms })
    }

    pub fn zero(ground: GroundSet) -> Charge {
        let n = ground.len();
        Charge { ground, atoms: alloc::vec![Rational::zero(); n] }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> &Rational {
        &self.atoms[i]
    }

    pub fn n(&self) -> usize {
        self.atoms.len()
    }

    pub fn eval(&self, s: Subset) -> Rational {
        s.atoms().map(|i| self.atoms[i].clone()).sum()
    }

    pub fn total(&self) -> Rational {
        self.atoms.iter().cloned().sum()
    }

    /// `∫ w dα`.
    pub fn integrate(&self, w: &StepFunction) -> Rational {
        self.atoms.iter().zip(w.values()).map(|(a, x)| a * x).sum()
    }

    pub fn to_setfunction(&self) -> SetFunction {
        SetFunction::tabulate_with_limit(self.ground.clone(), crate::ground::TABLE_HARD_LIMIT, |s| self.eval(s))
            .expect("charge ground set is tabulable")
            .with_flags(Flags::MODULAR | Flags::NORMALIZED)
    }

    /// Sup over sets of `|α(X)|`.
    pub fn sup_norm(&self) -> Rational {
        let pos: Rational = self.atoms.iter().filter(|a| a.is_positive()).cloned().sum();
        let neg: Rational = self.atoms.iter().filter(|a| a.is_negative()).cloned().sum();
        rational::max(&pos, &-neg)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.atoms.iter().all(|a| !a.is_negative())
    }

    /// First set (by mask) where `α(X) > φ(X)`.
    pub fn excess_over(&self, phi: &SetFunction) -> Option<Subset> {
        all_subsets(phi.n()).find(|&s| !phi.le(&self.eval(s), &phi[s]))
    }

    /// `α <= β` as setfunctions, i.e. atomwise.
    pub fn le(&self, other: &Charge) -> bool {
        self.atoms.iter().zip(&other.atoms).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Charge) -> Charge {
        self.zip(other, rational::max)
    }

    pub fn meet(&self, other: &Charge) -> Charge {
        self.zip(other, rational::min)
    }

    pub fn add(&self, other: &Charge) -> Charge {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Charge) -> Charge {
        self.zip(other, |a, b| a - b)
    }

    fn zip<F: Fn(&Rational, &Rational) -> Rational>(&self, other: &Charge, f: F) -> Charge {
        Charge { ground: self.ground.clone(), atoms: self.atoms.iter().zip(&other.atoms).map(|(a, b)| f(a, b)).collect() }
    }
}

/// `μ(X) = offset + α(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modular {
    pub offset: Rational,
    pub charge: Charge,
}

impl Modular {
    pub fn eval(&self, s: Subset) -> Rational {
        &self.offset + self.charge.eval(s)
    }
}

/// Strictly increasing sets from `∅` to `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    n: usize,
    sets: Vec<Subset>,
}

impl Chain {
    /// Missing endpoints are added.
    pub fn new(n: usize, sets: &[Subset]) -> Result<Chain> {
        let full = Subset::full(n);
        let mut v: Vec<Subset> = Vec::with_capacity(sets.len() + 2);
        if sets.first() != Some(&Subset::EMPTY) {
            v.push(Subset::EMPTY);
        }
        v.extend_from_slice(sets);
        if v.last() != Some(&full) {
            v.push(full);
        }
        for w in v.windows(2) {
            if !w[0].is_proper_subset_of(w[1]) {
                return Err(Error::BadArgument(alloc::format!("chain is not strictly increasing at {}", w[1])));
            }
        }
        if !v.iter().all(|s| s.is_subset_of(full)) {
            return Err(Error::BadArgument("chain leaves the ground set".into()));
        }
        Ok(Chain { n, sets: v })
    }

    /// Full chain adding atoms in the given order.
    pub fn from_order(n: usize, order: &[usize]) -> Result<Chain> {
        let mut sets = Vec::with_capacity(n);
        let mut cur = Subset::EMPTY;
        for &i in order {
            if i >= n || cur.contains(i) {
                return Err(Error::BadArgument("order is not a permutation".into()));
            }
            cur = cur.with(i);
            sets.push(cur);
        }
        Chain::new(n, &sets)
    }

    pub fn ascending(n: usize) -> Chain {
        let order: Vec<usize> = (0..n).collect();
        Chain::from_order(n, &order).expect("identity permutation")
    }

    /// Chain of level sets `{w >= t}`, largest `t` first.
    pub fn of_levels(w: &StepFunction) -> Chain {
        let mut levels: Vec<Rational> = w.values().to_vec();
        levels.sort();
        levels.dedup();
        let sets: Vec<Subset> = levels.iter().rev().map(|t| w.level_set(t)).collect();
        Chain::new(w.len(), &sets).expect("level sets are nested")
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_full(&self) -> bool {
        self.sets.len() == self.n + 1
    }

    /// Each gap is filled by adding its atoms in ascending index order.
    pub fn refine(&self) -> Chain {
        let mut sets = alloc::vec![Subset::EMPTY];
        for w in self.sets.windows(2) {
            let mut cur = w[0];
            for i in w[1].difference(w[0]).atoms() {
                cur = cur.with(i);
                sets.push(cur);
            }
        }
        Chain { n: self.n, sets }
    }

    /// Atoms in the order a full refinement adds them.
    pub fn atom_order(&self) -> Vec<usize> {
        self.refine().sets.windows(2).map(|w| w[1].difference(w[0]).lowest().expect("one new atom")).collect()
    }
}

fn require_base(phi: &SetFunction) -> Result<()> {
    phi.require_normalized()?;
    phi.require_submodular()
}

fn broken(what: &str) -> Error {
    Error::Internal(alloc::format!("postcondition failed: {what}"))
}

/// Greedy charge `α(x_i) = φ(S_i) − φ(S_{i−1})` along the refined chain.
pub fn greedy_chain_charge(phi: &SetFunction, chain: &Chain) -> Result<Charge> {
    require_base(phi)?;
    if chain.n() != phi.n() {
        return Err(Error::GroundMismatch);
    }
    let full = chain.refine();
    let mut atoms = alloc::vec![Rational::zero(); phi.n()];
    for w in full.sets.windows(2) {
        let i = w[1].difference(w[0]).lowest().expect("one new atom");
        atoms[i] = &phi[w[1]] - &phi[w[0]];
    }
    let alpha = Charge { ground: phi.ground().clone(), atoms };
    if !full.sets.iter().all(|&s| phi.approx_eq(&alpha.eval(s), &phi[s])) {
        return Err(broken("greedy charge leaves the chain"));
    }
    if alpha.excess_over(phi).is_some() {
        return Err(broken("greedy charge exceeds φ"));
    }
    if phi.is_increasing() && !alpha.atoms.iter().all(|a| phi.le(&Rational::zero(), a)) {
        return Err(broken("greedy charge of an increasing function is negative"));
    }
    Ok(alpha)
}

/// Modular `μ` with `ξ <= μ <= φ`, optionally with `μ(∅) = a` and `μ(J) = b`.
pub fn separate(xi: &SetFunction, phi: &SetFunction, pins: Option<(Rational, Rational)>) -> Result<Modular> {
    xi.same_ground(phi)?;
    xi.require_supermodular()?;
    phi.require_submodular()?;
    let n = phi.n();
    if let Some(s) = all_subsets(n).find(|&s| xi[s] > phi[s]) {
        return Err(Error::SandwichViolated(s));
    }
    let full = phi.full();
    if let Some((a, b)) = &pins {
        if a < &xi[Subset::EMPTY] || a > &phi[Subset::EMPTY] || b < &xi[full] || b > &phi[full] {
            return Err(Error::PreconditionFailed("pinned values must lie between ξ and φ".into()));
        }
    }
    // variables: offset, then one per atom
    let row = |s: Subset, sign: i64| -> Vec<Rational> {
        let mut r = alloc::vec![rational::int(sign)];
        r.extend((0..n).map(|i| if s.contains(i) { rational::int(sign) } else { Rational::zero() }));
        r
    };
    let mut lp = LinearProgram::new(n + 1);
    for s in all_subsets(n) {
        lp.le(row(s, 1), phi[s].clone());
        lp.le(row(s, -1), -xi[s].clone());
    }
    if let Some((a, b)) = &pins {
        lp.eq(row(Subset::EMPTY, 1), a.clone());
        lp.eq(row(full, 1), b.clone());
    }
    let x = match lp.solve()? {
        LpOutcome::Optimal(sol) => sol.x,
        LpOutcome::Infeasible { farkas } => {
            let support: Vec<String> = farkas
                .iter()
                .enumerate()
                .filter(|(_, y)| !y.is_zero())
                .map(|(i, y)| alloc::format!("row {i}: {}", rational::format(y)))
                .collect();
            return Err(Error::Internal(alloc::format!("separation LP infeasible; dual certificate {}", support.join(", "))));
        }
        LpOutcome::Unbounded => return Err(Error::Internal("feasibility LP reported unbounded".into())),
    };
    let mu = Modular { offset: x[0].clone(), charge: Charge { ground: phi.ground().clone(), atoms: x[1..].to_vec() } };
    if !all_subsets(n).all(|s| {
        let v = mu.eval(s);
        xi[s] <= v && v <= phi[s]
    }) {
        return Err(broken("separating function leaves the sandwich"));
    }
    Ok(mu)
}

/// Charge `α <= φ` with `α(J) = φ(J)`, and `α >= β` when `β` is given.
pub fn basic_minorizer(phi: &SetFunction, above: Option<&Charge>) -> Result<Charge> {
    require_base(phi)?;
    let full = phi.full();
    let alpha = match above {
        None => greedy_chain_charge(phi, &Chain::ascending(phi.n()))?,
        Some(beta) => {
            if beta.n() != phi.n() {
                return Err(Error::GroundMismatch);
            }
            if let Some(s) = beta.excess_over(phi) {
                return Err(Error::BetaNotMinorizing(s));
            }
            let xi = phi.map(|s, v| if s == full { v.clone() } else { beta.eval(s) });
            let mu = separate(&xi, phi, Some((Rational::zero(), phi[full].clone())))?;
            if !beta.le(&mu.charge) {
                return Err(broken("basic charge is not above β"));
            }
            mu.charge
        }
    };
    if alpha.excess_over(phi).is_some() || !phi.approx_eq(&alpha.total(), &phi[full]) {
        return Err(broken("charge is not basic"));
    }
    if alpha.sup_norm() > rational::int(2) * phi.sup_norm() + phi.tolerance() {
        return Err(broken("basic charge exceeds twice the norm"));
    }
    Ok(alpha)
}

/// For `φ(∅) = φ(J) = 0`: a charge with `−φ^c <= α <= φ` and `α(A) = φ(A)`.
pub fn pinning_charge(phi: &SetFunction, a: Subset) -> Result<Charge> {
    phi.require_submodular()?;
    let full = phi.full();
    if !phi.is_normalized() || !phi.approx_eq(&phi[full], &Rational::zero()) {
        return Err(Error::NormalizationViolated);
    }
    if !a.is_subset_of(full) {
        return Err(Error::BadArgument("set leaves the ground set".into()));
    }
    let rest = a.complement(phi.n());
    let mu1 = basic_minorizer(&calculus::restrict(phi, a)?, None)?;
    let mu2 = basic_minorizer(&calculus::restrict(&phi.complement(), rest)?, None)?;
    let mut atoms = alloc::vec![Rational::zero(); phi.n()];
    for (k, i) in a.atoms().enumerate() {
        atoms[i] = mu1.atoms[k].clone();
    }
    for (k, i) in rest.atoms().enumerate() {
        atoms[i] = -mu2.atoms[k].clone();
    }
    let alpha = Charge { ground: phi.ground().clone(), atoms };
    let n = phi.n();
    let sandwiched = all_subsets(n).all(|s| {
        let v = alpha.eval(s);
        phi.le(&-phi[s.complement(n)].clone(), &v) && phi.le(&v, &phi[s])
    });
    if !sandwiched || !phi.approx_eq(&alpha.eval(a), &phi[a]) {
        return Err(broken("pinning charge"));
    }
    Ok(alpha)
}

/// Greedy charge along the level chain of `w >= 0`, attaining `α̂(w) = φ̂(w)`.
pub fn max_minorizer_at(phi: &SetFunction, w: &StepFunction) -> Result<(Charge, Rational)> {
    if w.len() != phi.n() {
        return Err(Error::GroundMismatch);
    }
    if let Some(i) = w.values().iter().position(|v| v.is_negative()) {
        return Err(Error::NegativeWeight(i));
    }
    let alpha = greedy_chain_charge(phi, &Chain::of_levels(w))?;
    let value = alpha.integrate(w);
    if !phi.approx_eq(&value, &choquet::choquet(phi, w)?) {
        return Err(broken("greedy charge misses the Choquet integral"));
    }
    Ok((alpha, value))
}

pub fn max_minorizer_at_set(phi: &SetFunction, x: Subset) -> Result<(Charge, Rational)> {
    max_minorizer_at(phi, &StepFunction::indicator(phi.n(), x))
}

fn require_minorizing(phi: &SetFunction, alpha: &Charge, which: &str) -> Result<()> {
    if alpha.n() != phi.n() {
        return Err(Error::GroundMismatch);
    }
    if let Some(i) = alpha.atoms.iter().position(|a| a.is_negative()) {
        return Err(Error::NotMinorizing { which: which.into(), set: Subset::singleton(i) });
    }
    if let Some(s) = alpha.excess_over(phi) {
        return Err(Error::NotMinorizing { which: which.into(), set: s });
    }
    Ok(())
}

/// Exchange in `matp₊(φ)`: `γ` with `α <= γ <= α ∨ β` and `γ(J) >= β(J)`.
pub fn exchange_augment(phi: &SetFunction, alpha: &Charge, beta: &Charge) -> Result<Charge> {
    require_base(phi)?;
    phi.require_increasing()?;
    require_minorizing(phi, alpha, "alpha")?;
    require_minorizing(phi, beta, "beta")?;
    let phi0 = calculus::monotonize(&phi.sub(&alpha.to_setfunction())?, Monotonization::UpperInf);
    let beta0 = alpha.join(beta).sub(alpha);
    let psi = calculus::join_meet(&phi0, &beta0.to_setfunction(), LatticeOp::Meet)?;
    let delta = greedy_chain_charge(&psi, &Chain::ascending(phi.n()))?;
    let gamma = alpha.add(&delta);
    let top = alpha.join(beta);
    if !alpha.le(&gamma) || !gamma.le(&top) || gamma.total() < beta.total() {
        return Err(broken("exchange"));
    }
    if gamma.excess_over(phi).is_some() || !gamma.is_nonnegative() {
        return Err(broken("exchanged charge left matp₊"));
    }
    Ok(gamma)
}

/// `(φ ∧ ψ)(X)` with the lexicographically smallest minimizing split `Y ⊆ X`.
pub fn meet_value(phi: &SetFunction, psi: &SetFunction, x: Subset) -> (Rational, Subset) {
    let mut best: Option<(Rational, Subset)> = None;
    let mut ys: Vec<Subset> = x.subsets().collect();
    ys.sort();
    for y in ys {
        let v = &phi[y] + &psi[x.difference(y)];
        if best.as_ref().map_or(true, |(b, _)| &v < b) {
            best = Some((v, y));
        }
    }
    best.expect("X has a subset")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub value: Rational,
    /// Minimizing split `Y ⊆ X` of `φ(Y) + ψ(X \ Y)`.
    pub split: Subset,
    pub witness: Charge,
    /// Basic charges of `φ` and `ψ` above the witness.
    pub basic_phi: Charge,
    pub basic_psi: Charge,
}

/// Charge `α <= φ ∧ ψ` with `α(J) = (φ ∧ ψ)(J)`, from one separation.
fn meet_top_charge(phi: &SetFunction, psi: &SetFunction) -> Result<Charge> {
    let full = phi.full();
    let (b, _) = meet_value(phi, psi, full);
    let phi1 = phi.with_value(full, b.clone());
    let psi1 = psi.with_value(full, b.clone());
    let n = phi.n();
    let xi = psi1.map(|s, _| &b - &psi1[s.complement(n)]);
    Ok(separate(&xi, &phi1, Some((Rational::zero(), b)))?.charge)
}

pub fn intersection_value(phi: &SetFunction, psi: &SetFunction, x: Subset) -> Result<Intersection> {
    phi.same_ground(psi)?;
    require_base(phi)?;
    require_base(psi)?;
    if !x.is_subset_of(phi.full()) {
        return Err(Error::BadArgument("set leaves the ground set".into()));
    }
    let (value, split) = meet_value(phi, psi, x);
    let n = phi.n();
    let rest = x.complement(n);
    let beta = meet_top_charge(&calculus::restrict(phi, x)?, &calculus::restrict(psi, x)?)?;
    let increasing = phi.is_increasing() && psi.is_increasing();
    let gamma = if increasing {
        Charge::zero(phi.ground().restrict(rest))
    } else {
        meet_top_charge(&calculus::project(phi, rest)?, &calculus::project(psi, rest)?)?
    };
    let mut atoms = alloc::vec![Rational::zero(); n];
    for (k, i) in x.atoms().enumerate() {
        atoms[i] = beta.atoms[k].clone();
    }
    for (k, i) in rest.atoms().enumerate() {
        atoms[i] = gamma.atoms[k].clone();
    }
    let witness = Charge { ground: phi.ground().clone(), atoms };
    if witness.excess_over(phi).is_some() || witness.excess_over(psi).is_some() || witness.eval(x) != value {
        return Err(broken("intersection witness"));
    }
    if increasing && !witness.is_nonnegative() {
        return Err(broken("intersection witness of increasing functions is negative"));
    }
    let basic_phi = basic_minorizer(phi, Some(&witness))?;
    let basic_psi = basic_minorizer(psi, Some(&witness))?;
    Ok(Intersection { value, split, witness, basic_phi, basic_psi })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicIntersection {
    /// Best common charge that is basic for both functions.
    Attained { charge: Charge, value: Rational },
    /// No charge is basic for both; Farkas multipliers over the LP rows.
    Infeasible { farkas: Vec<Rational> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedIntersection {
    /// `max α̂(w)` over charges below both functions.
    pub value: Rational,
    pub charge: Charge,
    /// Dual certificate: `φ̂(h) + ψ̂(w − h) = value` with `0 <= h <= w`.
    pub h: StepFunction,
    /// Best split `h = w·1_X` over the level algebra and its value (never below `value`).
    pub level_split: Subset,
    pub level_value: Rational,
    pub basic: BasicIntersection,
}

/// Rows `α(S) <= φ(S)` then `α(S) <= ψ(S)` for every nonempty `S`, in mask order.
fn minorizing_rows(lp: &mut LinearProgram, phi: &SetFunction, psi: &SetFunction) -> Vec<Subset> {
    let n = phi.n();
    let sets: Vec<Subset> = all_subsets(n).filter(|s| !s.is_empty()).collect();
    let ind = |s: Subset| (0..n).map(|i| if s.contains(i) { Rational::one() } else { Rational::zero() }).collect::<Vec<_>>();
    for f in [phi, psi] {
        for &s in &sets {
            lp.le(ind(s), f[s].clone());
        }
    }
    sets
}

/// `min_X φ̂(w·1_X) + ψ̂(w·1_{X^c})`, smallest mask on ties.
pub fn level_split_min(phi: &SetFunction, psi: &SetFunction, w: &StepFunction) -> Result<(Subset, Rational)> {
    let n = phi.n();
    let mut best: Option<(Subset, Rational)> = None;
    for x in all_subsets(n) {
        let h = w.mul(&StepFunction::indicator(n, x));
        let v = choquet::choquet(phi, &h)? + choquet::choquet(psi, &w.sub(&h))?;
        if best.as_ref().map_or(true, |(_, b)| &v < b) {
            best = Some((x, v));
        }
    }
    Ok(best.expect("at least the empty set"))
}

pub fn weighted_intersection(phi: &SetFunction, psi: &SetFunction, w: &StepFunction) -> Result<WeightedIntersection> {
    phi.same_ground(psi)?;
    require_base(phi)?;
    require_base(psi)?;
    if w.len() != phi.n() {
        return Err(Error::GroundMismatch);
    }
    if let Some(i) = w.values().iter().position(|v| v.is_negative()) {
        return Err(Error::NegativeWeight(i));
    }
    let n = phi.n();
    let mut lp = LinearProgram::new(n);
    lp.maximize(w.values().to_vec());
    let sets = minorizing_rows(&mut lp, phi, psi);
    let sol = match lp.solve()? {
        LpOutcome::Optimal(sol) => sol,
        other => return Err(Error::Internal(alloc::format!("minorizing LP: {other:?}"))),
    };
    let charge = Charge { ground: phi.ground().clone(), atoms: sol.x.clone() };
    let mut h = alloc::vec![Rational::zero(); n];
    for (k, &s) in sets.iter().enumerate() {
        let y = &sol.duals[k];
        if !y.is_zero() {
            for i in s.atoms() {
                h[i] += y;
            }
        }
    }
    let h = StepFunction::new(h);
    let certified = choquet::choquet(phi, &h)? + choquet::choquet(psi, &w.sub(&h))?;
    if certified != sol.value || !h.is_nonnegative() || !w.sub(&h).is_nonnegative() {
        return Err(broken("weighted intersection duality certificate"));
    }
    let (level_split, level_value) = level_split_min(phi, psi, w)?;
    if level_value < sol.value {
        return Err(broken("level split below the LP optimum"));
    }
    let full = phi.full();
    let all_ones: Vec<Rational> = alloc::vec![Rational::one(); n];
    lp.eq(all_ones.clone(), phi[full].clone());
    lp.eq(all_ones, psi[full].clone());
    let basic = match lp.solve()? {
        LpOutcome::Optimal(b) => {
            BasicIntersection::Attained { charge: Charge { ground: phi.ground().clone(), atoms: b.x }, value: b.value }
        }
        LpOutcome::Infeasible { farkas } => BasicIntersection::Infeasible { farkas },
        LpOutcome::Unbounded => return Err(Error::Internal("basic intersection LP unbounded".into())),
    };
    Ok(WeightedIntersection { value: sol.value, charge, h, level_split, level_value, basic })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coupling {
    /// Row-major `left × right` masses supported on the relation.
    Matrix(Vec<Vec<Rational>>),
    /// Left set whose mass exceeds that of its image.
    HallViolation { set: Subset, left_mass: Rational, image_mass: Rational },
}

fn require_distribution(lambda: &[Rational], len: usize, side: &str) -> Result<()> {
    if lambda.len() != len {
        return Err(Error::InvalidDistribution(alloc::format!("{side} marginal has {} entries for {len} atoms", lambda.len())));
    }
    if lambda.iter().any(|v| v.is_negative()) {
        return Err(Error::InvalidDistribution(alloc::format!("{side} marginal has a negative entry")));
    }
    if lambda.iter().cloned().sum::<Rational>() != Rational::one() {
        return Err(Error::InvalidDistribution(alloc::format!("{side} marginal does not sum to 1")));
    }
    Ok(())
}

/// Coupling of two distributions supported on `rel`, or a set violating Hall's condition.
pub fn coupling_exists(rel: &Relation, left: &[Rational], right: &[Rational]) -> Result<Coupling> {
    let (l, r) = (rel.left().len(), rel.right().len());
    require_distribution(left, l, "left")?;
    require_distribution(right, r, "right")?;
    let (s, t) = (l + r, l + r + 1);
    let mut g = FlowNetwork::new(l + r + 2);
    for (i, m) in left.iter().enumerate() {
        g.add_edge(s, i, m.clone());
    }
    for (j, m) in right.iter().enumerate() {
        g.add_edge(l + j, t, m.clone());
    }
    // unit capacity exceeds any cut below 1, so middle edges never cross a minimum cut
    let mut middle = Vec::new();
    for i in 0..l {
        for j in rel.row(i).atoms() {
            middle.push((i, j, g.add_edge(i, l + j, Rational::one())));
        }
    }
    let value = g.max_flow(s, t);
    if value == Rational::one() {
        let mut m = alloc::vec![alloc::vec![Rational::zero(); r]; l];
        for &(i, j, e) in &middle {
            m[i][j] = g.flow(e).clone();
        }
        let rows_ok = m.iter().zip(left).all(|(row, x)| row.iter().cloned().sum::<Rational>() == *x);
        let cols_ok = (0..r).all(|j| m.iter().map(|row| row[j].clone()).sum::<Rational>() == right[j]);
        if !rows_ok || !cols_ok {
            return Err(broken("coupling marginals"));
        }
        return Ok(Coupling::Matrix(m));
    }
    let side = g.maximal_source_side(t);
    let set = Subset::from_atoms((0..l).filter(|&i| side[i]));
    let left_mass: Rational = set.atoms().map(|i| left[i].clone()).sum();
    let image_mass: Rational = rel.image(set).atoms().map(|j| right[j].clone()).sum();
    if left_mass <= image_mass {
        return Err(broken("Hall witness"));
    }
    Ok(Coupling::HallViolation { set, left_mass, image_mass })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidIntersection {
    pub max_size: usize,
    pub common: Subset,
    pub min_value: Rational,
    /// Minimizer of `r1(X) + r2(X^c)`.
    pub cover: Subset,
}

/// Integer values, `r(∅) = 0`, unit increments and submodularity.
pub fn check_matroid_rank(r: &SetFunction) -> Result<()> {
    let bad = |axiom: &str, set: Subset| Err(Error::NotAMatroidRank { axiom: axiom.into(), set });
    if let Some(s) = all_subsets(r.n()).find(|&s| !r[s].is_integer()) {
        return bad("integer", s);
    }
    if !r[Subset::EMPTY].is_zero() {
        return bad("normalized", Subset::EMPTY);
    }
    for s in all_subsets(r.n()) {
        for i in s.complement(r.n()).atoms() {
            let d = &r[s.with(i)] - &r[s];
            if d.is_negative() || d > Rational::one() {
                return bad("unit increase", s.with(i));
            }
        }
    }
    if let Some((x, _)) = r.submodular_violation() {
        return bad("submodular", x);
    }
    Ok(())
}

pub fn matroid_intersection_check(r1: &SetFunction, r2: &SetFunction) -> Result<MatroidIntersection> {
    r1.same_ground(r2)?;
    check_matroid_rank(r1)?;
    check_matroid_rank(r2)?;
    let n = r1.n();
    let mut max_size = 0;
    let mut common = Subset::EMPTY;
    for a in all_subsets(n) {
        let k = rational::int(a.len() as i64);
        if r1[a] == k && r2[a] == k && a.len() > max_size {
            max_size = a.len();
            common = a;
        }
    }
    let mut cover = Subset::EMPTY;
    let mut min_value: Option<Rational> = None;
    for x in all_subsets(n) {
        let v = &r1[x] + &r2[x.complement(n)];
        if min_value.as_ref().map_or(true, |m| &v < m) {
            min_value = Some(v);
            cover = x;
        }
    }
    let min_value = min_value.expect("at least the empty set");
    if min_value != rational::int(max_size as i64) {
        return Err(broken("matroid intersection min-max"));
    }
    Ok(MatroidIntersection { max_size, common, min_value, cover })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cut, gen_matroid_rank, MatroidKind};
    use crate::rational::{int, ratio};

    fn k3() -> SetFunction {
        let g = GroundSet::new(&["e1", "e2", "e3"]).unwrap();
        gen_matroid_rank(g, &MatroidKind::Graphic { vertices: 3, edges: alloc::vec![(0, 1), (1, 2), (0, 2)] }).unwrap()
    }

    fn triangle_cut() -> SetFunction {
        gen_cut(GroundSet::lettered(3), &[(0, 1, int(1)), (1, 2, int(1)), (0, 2, int(1))]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn greedy_examples() {
        let a = greedy_chain_charge(&k3(), &Chain::ascending(3)).unwrap();
        assert_eq!(a.atoms(), ints(&[1, 1, 0]).as_slice());
        assert_eq!(a.eval(Subset(0b110)), int(1));
        let c = greedy_chain_charge(&triangle_cut(), &Chain::ascending(3)).unwrap();
        assert_eq!(c.atoms(), ints(&[2, 0, -2]).as_slice());
    }

    #[test]
    fn chain_validation_and_refinement() {
        assert!(Chain::new(3, &[Subset(0b011), Subset(0b001)]).is_err());
        let c = Chain::new(3, &[Subset(0b110)]).unwrap();
        assert!(!c.is_full());
        assert_eq!(c.atom_order(), alloc::vec![1, 2, 0]);
        assert!(c.refine().is_full());
    }

    #[test]
    fn separation_examples() {
        let g = GroundSet::lettered(2);
        let xi = SetFunction::from_ints(g.clone(), &[0, 0, 0, 1]).unwrap();
        let phi = SetFunction::from_ints(g.clone(), &[0, 1, 1, 1]).unwrap();
        let mu = separate(&xi, &phi, None).unwrap();
        assert!(all_subsets(2).all(|s| xi[s] <= mu.eval(s) && mu.eval(s) <= phi[s]));
        let bad = SetFunction::from_ints(g, &[0, 0, 0, 2]).unwrap();
        assert_eq!(separate(&bad, &phi, None), Err(Error::SandwichViolated(Subset(0b11))));
    }

    #[test]
    fn basic_above_beta_under_cut() {
        let phi = triangle_cut();
        let beta = Charge::new(phi.ground().clone(), ints(&[0, 0, -1])).unwrap();
        let a = basic_minorizer(&phi, Some(&beta)).unwrap();
        assert!(beta.le(&a));
        assert_eq!(a.total(), int(0));
    }

    #[test]
    fn pinning_on_the_triangle_cut() {
        let a = pinning_charge(&triangle_cut(), Subset(0b001)).unwrap();
        assert_eq!(a.eval(Subset(0b001)), int(2));
        assert_eq!(a.total(), int(0));
        for s in [Subset::EMPTY, Subset(0b111)] {
            assert_eq!(pinning_charge(&triangle_cut(), s).unwrap().eval(s), int(0));
        }
    }

    #[test]
    fn max_minorizer_k3() {
        let (a, v) = max_minorizer_at(&k3(), &StepFunction::from_ints(&[2, 1, 1])).unwrap();
        assert_eq!(v, int(3));
        assert!(a.is_nonnegative());
        assert_eq!(max_minorizer_at(&k3(), &StepFunction::from_ints(&[1, -1, 0])), Err(Error::NegativeWeight(1)));
    }

    #[test]
    fn exchange_on_uniform_one() {
        let g = GroundSet::lettered(2);
        let phi = SetFunction::from_ints(g.clone(), &[0, 1, 1, 1]).unwrap();
        let alpha = Charge::new(g.clone(), alloc::vec![ratio(1, 2), int(0)]).unwrap();
        let beta = Charge::new(g, ints(&[0, 1])).unwrap();
        let gamma = exchange_augment(&phi, &alpha, &beta).unwrap();
        assert_eq!(gamma.atoms(), &[ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn intersection_indicator_and_cardinality() {
        let g = GroundSet::lettered(2);
        let phi = SetFunction::from_ints(g.clone(), &[0, 1, 1, 1]).unwrap();
        let psi = SetFunction::from_ints(g, &[0, 1, 1, 2]).unwrap();
        let r = intersection_value(&phi, &psi, Subset(0b11)).unwrap();
        assert_eq!(r.value, int(1));
        assert!(r.witness.is_nonnegative());
    }

    #[test]
    fn weighted_k3_versus_uniform_two() {
        let phi = k3();
        let psi = gen_matroid_rank(phi.ground().clone(), &MatroidKind::Uniform { k: 2 }).unwrap();
        let r = weighted_intersection(&phi, &psi, &StepFunction::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(r.value, int(2));
        assert_eq!(r.level_value, int(2));
        assert!(matches!(r.basic, BasicIntersection::Attained { .. }));
    }

    #[test]
    fn coupling_examples() {
        let g = GroundSet::lettered(2);
        let half = alloc::vec![ratio(1, 2), ratio(1, 2)];
        let id = Relation::from_pairs(g.clone(), g.clone(), &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(
            coupling_exists(&id, &half, &half).unwrap(),
            Coupling::Matrix(alloc::vec![alloc::vec![ratio(1, 2), int(0)], alloc::vec![int(0), ratio(1, 2)]])
        );
        let one = Relation::from_pairs(g.clone(), g, &[(0, 0)]).unwrap();
        match coupling_exists(&one, &half, &half).unwrap() {
            Coupling::HallViolation { set, left_mass, image_mass } => {
                assert_eq!(set, Subset(0b11));
                assert_eq!((left_mass, image_mass), (int(1), ratio(1, 2)));
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn matroid_intersection_examples() {
        let g = GroundSet::lettered(3);
        let free = gen_matroid_rank(g.clone(), &MatroidKind::Uniform { k: 3 }).unwrap();
        let r = matroid_intersection_check(&free, &free).unwrap();
        assert_eq!((r.max_size, r.cover), (3, Subset::EMPTY));
        let zero = gen_matroid_rank(g, &MatroidKind::Uniform { k: 0 }).unwrap();
        assert_eq!(matroid_intersection_check(&free, &zero).unwrap().max_size, 0);
        let bad = SetFunction::from_ints(GroundSet::lettered(1), &[0, 2]).unwrap();
        assert!(matches!(check_matroid_rank(&bad), Err(Error::NotAMatroidRank { .. })));
    }
}
