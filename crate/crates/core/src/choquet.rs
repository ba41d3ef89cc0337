//! Choquet integrals of step functions, uncrossing, and convexity certificates.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::calculus;
use crate::certificate::{Certificate, WitnessValue};
use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::random;
use crate::rational::{self, Rational};
use crate::setfn::SetFunction;

/// A real function on the atoms; on a finite ground set every function is a step function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    values: Vec<Rational>,
}

impl StepFunction {
    pub fn new(values: Vec<Rational>) -> StepFunction {
        StepFunction { values }
    }

    pub fn from_ints(values: &[i64]) -> StepFunction {
        StepFunction::new(values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn indicator(n: usize, s: Subset) -> StepFunction {
        StepFunction::new((0..n).map(|i| if s.contains(i) { Rational::one() } else { Rational::zero() }).collect())
    }

    pub fn constant(n: usize, c: &Rational) -> StepFunction {
        StepFunction::new(alloc::vec![c.clone(); n])
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    /// `max |f(x)|`
    pub fn norm(&self) -> Rational {
        self.values.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero)
    }

    fn zip<F: Fn(&Rational, &Rational) -> Rational>(&self, o: &StepFunction, f: F) -> StepFunction {
        assert_eq!(self.len(), o.len(), "step functions on different ground sets");
        StepFunction::new(self.values.iter().zip(&o.values).map(|(a, b)| f(a, b)).collect())
    }

    pub fn add(&self, o: &StepFunction) -> StepFunction {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &StepFunction) -> StepFunction {
        self.zip(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &StepFunction) -> StepFunction {
        self.zip(o, |a, b| a * b)
    }

    pub fn max(&self, o: &StepFunction) -> StepFunction {
        self.zip(o, rational::max)
    }

    pub fn min(&self, o: &StepFunction) -> StepFunction {
        self.zip(o, rational::min)
    }

    pub fn scale(&self, c: &Rational) -> StepFunction {
        StepFunction::new(self.values.iter().map(|v| v * c).collect())
    }

    pub fn shift(&self, c: &Rational) -> StepFunction {
        StepFunction::new(self.values.iter().map(|v| v + c).collect())
    }

    /// Zero outside `s`.
    pub fn restrict(&self, s: Subset) -> StepFunction {
        StepFunction::new(
            self.values.iter().enumerate().map(|(i, v)| if s.contains(i) { v.clone() } else { Rational::zero() }).collect(),
        )
    }

    /// `{x : f(x) >= t}`
    pub fn level_set(&self, t: &Rational) -> Subset {
        Subset::from_atoms((0..self.len()).filter(|&i| &self.values[i] >= t))
    }

    pub fn min_value(&self) -> Rational {
        self.values.iter().min().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.values.iter().any(Signed::is_negative)
    }

    /// A pair of atoms on which `f` and `g` are ordered oppositely.
    pub fn comonotonic_violation(&self, o: &StepFunction) -> Option<(usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                let p = (&self.values[x] - &self.values[y]) * (&o.values[x] - &o.values[y]);
                if p.is_negative() {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_comonotonic_with(&self, o: &StepFunction) -> bool {
        self.comonotonic_violation(o).is_none()
    }
}

/// `f = base_offset + Σ a_i·1_{A_i}` with positive coefficients and nested sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRepresentation {
    pub n: usize,
    pub terms: Vec<(Rational, Subset)>,
    pub base_offset: Rational,
}

impl ChainRepresentation {
    pub fn reconstruct(&self) -> StepFunction {
        let mut v = alloc::vec![self.base_offset.clone(); self.n];
        for (a, s) in &self.terms {
            for i in s.atoms() {
                v[i] += a;
            }
        }
        StepFunction::new(v)
    }

    pub fn is_chain(&self) -> bool {
        self.terms.iter().enumerate().all(|(i, (_, a))| self.terms[i + 1..].iter().all(|(_, b)| a.comparable(*b) && a != b))
    }

    /// `Σ a_i φ(A_i) + base_offset·φ(J)`, with `φ` taken as is.
    pub fn evaluate(&self, phi: &SetFunction) -> Rational {
        let sum: Rational = self.terms.iter().map(|(a, s)| a * &phi[*s]).sum();
        sum + &self.base_offset * &phi[phi.full()]
    }
}

/// Level-set decomposition. The offset is `min(0, min f)`, except that a constant function is
/// absorbed entirely into the offset.
pub fn layer_cake(f: &StepFunction) -> ChainRepresentation {
    let mut levels: Vec<Rational> = f.values.clone();
    levels.sort();
    levels.dedup();
    if levels.len() <= 1 {
        let c = levels.pop().unwrap_or_else(Rational::zero);
        return ChainRepresentation { n: f.len(), terms: Vec::new(), base_offset: c };
    }
    let base = rational::min(&Rational::zero(), &levels[0]);
    layer_cake_from(f, &base, &levels)
}

fn layer_cake_from(f: &StepFunction, base: &Rational, levels: &[Rational]) -> ChainRepresentation {
    let mut terms = Vec::new();
    let mut prev = base.clone();
    for v in levels {
        if v > &prev {
            terms.push((v - &prev, f.level_set(v)));
            prev = v.clone();
        }
    }
    ChainRepresentation { n: f.len(), terms, base_offset: base.clone() }
}

fn check_len(phi: &SetFunction, f: &StepFunction) -> Result<()> {
    if phi.n() != f.len() {
        return Err(Error::GroundMismatch);
    }
    Ok(())
}

/// Choquet integral, with the value at `∅` shifted to zero first. Returns `(value, shift)`.
pub fn choquet_shifted(phi: &SetFunction, f: &StepFunction) -> Result<(Rational, Rational)> {
    check_len(phi, f)?;
    let shift = phi[Subset::EMPTY].clone();
    let lc = layer_cake(f);
    let coeff: Rational = lc.terms.iter().map(|(a, _)| a.clone()).sum::<Rational>() + &lc.base_offset;
    // Σ a_i (φ(A_i) - s) + c (φ(J) - s)
    let value = lc.evaluate(phi) - coeff * &shift;
    Ok((value, shift))
}

pub fn choquet(phi: &SetFunction, f: &StepFunction) -> Result<Rational> {
    Ok(choquet_shifted(phi, f)?.0)
}

/// Choquet integral computed from an arbitrary base level `c <= min f`.
pub fn choquet_from(phi: &SetFunction, f: &StepFunction, c: &Rational) -> Result<Rational> {
    check_len(phi, f)?;
    if c > &f.min_value() {
        return Err(Error::BadArgument("base level exceeds the minimum of f".into()));
    }
    let mut levels = f.values.clone();
    levels.sort();
    levels.dedup();
    let lc = layer_cake_from(f, c, &levels);
    let shifted = phi.shift(&-&phi[Subset::EMPTY]);
    Ok(lc.evaluate(&shifted))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncrossStep {
    pub first: Subset,
    pub second: Subset,
    pub amount: Rational,
    /// `Σ b_H φ(H)` after the step.
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uncrossing {
    pub chain: ChainRepresentation,
    pub initial_value: Rational,
    pub steps: Vec<UncrossStep>,
}

pub const UNCROSS_STEP_LIMIT: usize = 100_000;

/// Rewrites `Σ b_H 1_H` into a chain by repeatedly moving weight from an incomparable pair to its
/// union and intersection. Pairs are chosen lexicographically by mask; disjoint pairs are
/// uncrossed too (their intersection term vanishes), so the result is always a chain.
pub fn uncross(terms: &[(Rational, Subset)], phi: &SetFunction) -> Result<Uncrossing> {
    phi.require_normalized()?;
    phi.require_submodular()?;
    let mut b: BTreeMap<Subset, Rational> = BTreeMap::new();
    for (k, (c, s)) in terms.iter().enumerate() {
        if !c.is_positive() {
            return Err(Error::BadCoefficient(k));
        }
        if !s.is_subset_of(phi.full()) {
            return Err(Error::BadArgument(alloc::format!("term {k} leaves the ground set")));
        }
        if !s.is_empty() {
            *b.entry(*s).or_insert_with(Rational::zero) += c;
        }
    }
    let value_of = |b: &BTreeMap<Subset, Rational>| b.iter().map(|(s, c)| c * &phi[*s]).sum::<Rational>();
    let represented = |b: &BTreeMap<Subset, Rational>| {
        let mut v = alloc::vec![Rational::zero(); phi.n()];
        for (s, c) in b {
            for i in s.atoms() {
                v[i] += c;
            }
        }
        v
    };
    let target = represented(&b);
    let initial_value = value_of(&b);
    let mut steps = Vec::new();
    let mut last = initial_value.clone();
    loop {
        let keys: Vec<Subset> = b.keys().copied().collect();
        let pair = keys
            .iter()
            .enumerate()
            .find_map(|(i, &h1)| keys[i + 1..].iter().find(|&&h2| !h1.comparable(h2)).map(|&h2| (h1, h2)));
        let Some((h1, h2)) = pair else { break };
        if steps.len() >= UNCROSS_STEP_LIMIT {
            return Err(Error::UncrossingStalled(UNCROSS_STEP_LIMIT));
        }
        let t = rational::min(&b[&h1], &b[&h2]);
        for h in [h1, h2] {
            let c = b.get_mut(&h).expect("present");
            *c -= &t;
            if c.is_zero() {
                b.remove(&h);
            }
        }
        for h in [h1.union(h2), h1.intersection(h2)] {
            if !h.is_empty() {
                *b.entry(h).or_insert_with(Rational::zero) += &t;
            }
        }
        let value = value_of(&b);
        if value > last {
            return Err(Error::Internal("uncrossing increased the weighted sum".into()));
        }
        last = value.clone();
        steps.push(UncrossStep { first: h1, second: h2, amount: t, value });
    }
    if represented(&b) != target {
        return Err(Error::Internal("uncrossing changed the represented function".into()));
    }
    let mut chain_terms: Vec<(Rational, Subset)> = b.into_iter().map(|(s, c)| (c, s)).collect();
    chain_terms.sort_by_key(|(_, s)| core::cmp::Reverse(s.len()));
    Ok(Uncrossing {
        chain: ChainRepresentation { n: phi.n(), terms: chain_terms, base_offset: Rational::zero() },
        initial_value,
        steps,
    })
}

/// Convexity of the Choquet extension. For submodular `φ`, seeded trials test subadditivity and
/// comonotonic additivity; otherwise the failing submodular pair yields `(1_S, 1_T)` with
/// `φ̂(1_S + 1_T) > φ̂(1_S) + φ̂(1_T)`.
pub fn certify_convexity(phi: &SetFunction, trials: usize, seed: u64) -> Result<Certificate> {
    phi.require_normalized()?;
    let claim = "choquet extension is convex";
    let n = phi.n();
    if let Some((s, t)) = phi.submodular_violation_exhaustive() {
        let (fs, ft) = (StepFunction::indicator(n, s), StepFunction::indicator(n, t));
        let lhs = choquet(phi, &fs.add(&ft))?;
        let rhs = choquet(phi, &fs)? + choquet(phi, &ft)?;
        if !phi.le(&lhs, &rhs) {
            return Ok(Certificate::violated(claim, Some(seed), 0)
                .with("f", WitnessValue::Set(s))
                .with("g", WitnessValue::Set(t))
                .with("lhs", WitnessValue::Number(lhs))
                .with("rhs", WitnessValue::Number(rhs)));
        }
        return Err(Error::Internal("submodular violation did not give a convexity counterexample".into()));
    }
    let mut rng = random::rng(seed);
    for trial in 0..trials {
        let f = StepFunction::new(random::vector(&mut rng, n, -3, 3, 2));
        let g = StepFunction::new(random::vector(&mut rng, n, -3, 3, 2));
        let lhs = choquet(phi, &f.add(&g))?;
        let rhs = choquet(phi, &f)? + choquet(phi, &g)?;
        if !phi.le(&lhs, &rhs) {
            return Ok(Certificate::violated(claim, Some(seed), trial + 1)
                .with("f", WitnessValue::Vector(f.values))
                .with("g", WitnessValue::Vector(g.values)));
        }
        let (cf, cg) = random::comonotonic_pair(&mut rng, n, -3, 3);
        let (cf, cg) = (StepFunction::new(cf), StepFunction::new(cg));
        let sum = choquet(phi, &cf.add(&cg))?;
        let parts = choquet(phi, &cf)? + choquet(phi, &cg)?;
        if !phi.approx_eq(&sum, &parts) {
            return Ok(Certificate::violated("choquet extension is comonotonically additive", Some(seed), trial + 1)
                .with("f", WitnessValue::Vector(cf.values))
                .with("g", WitnessValue::Vector(cg.values)));
        }
    }
    Ok(Certificate::holds(claim, Some(seed), trials))
}

/// `|φ̂(f) − φ̂(g)| <= var(φ)·‖f − g‖`, plus `<= ‖φ‖·‖f − g‖` when `φ` is increasing.
pub fn lipschitz_check_pairs(phi: &SetFunction, pairs: &[(StepFunction, StepFunction)]) -> Result<Certificate> {
    let var = calculus::variation(phi)?.total_variation;
    let increasing = phi.is_increasing();
    let norm = phi.shift(&-&phi[Subset::EMPTY]).sup_norm();
    for (k, (f, g)) in pairs.iter().enumerate() {
        let diff = (choquet(phi, f)? - choquet(phi, g)?).abs();
        let dist = f.sub(g).norm();
        let bound = if increasing { rational::min(&var, &norm) } else { var.clone() } * &dist;
        if !phi.le(&diff, &bound) {
            return Ok(Certificate::violated("choquet extension is Lipschitz", None, k + 1)
                .with("f", WitnessValue::Vector(f.values.clone()))
                .with("g", WitnessValue::Vector(g.values.clone()))
                .with("difference", WitnessValue::Number(diff))
                .with("bound", WitnessValue::Number(bound)));
        }
    }
    Ok(Certificate::holds("choquet extension is Lipschitz", None, pairs.len()).with("variation", WitnessValue::Number(var)))
}

pub fn lipschitz_check(phi: &SetFunction, trials: usize, seed: u64) -> Result<Certificate> {
    let mut rng = random::rng(seed);
    let pairs: Vec<(StepFunction, StepFunction)> = (0..trials)
        .map(|_| (StepFunction::new(random::vector(&mut rng, phi.n(), -3, 3, 3)), StepFunction::new(random::vector(&mut rng, phi.n(), -3, 3, 3))))
        .collect();
    let mut cert = lipschitz_check_pairs(phi, &pairs)?;
    cert.seed = Some(seed);
    Ok(cert)
}

fn require_distribution(lambda: &[Rational]) -> Result<()> {
    if lambda.iter().any(Signed::is_negative) {
        return Err(Error::InvalidDistribution("negative weight".into()));
    }
    if lambda.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::InvalidDistribution("weights do not sum to 1".into()));
    }
    Ok(())
}

/// `φ̂(Σ λ_y F_y) <= Σ λ_y φ̂(F_y)` for increasing submodular `φ`.
pub fn jensen_mix_check(phi: &SetFunction, columns: &[StepFunction], lambda: &[Rational]) -> Result<Certificate> {
    require_distribution(lambda)?;
    if columns.len() != lambda.len() || columns.is_empty() {
        return Err(Error::ShapeError("one weight per column is required".into()));
    }
    phi.require_submodular()?;
    phi.require_increasing()?;
    let mut mix = StepFunction::constant(phi.n(), &Rational::zero());
    let mut rhs = Rational::zero();
    for (col, l) in columns.iter().zip(lambda) {
        check_len(phi, col)?;
        mix = mix.add(&col.scale(l));
        rhs += l * choquet(phi, col)?;
    }
    let lhs = choquet(phi, &mix)?;
    let claim = "choquet integral of a mixture is at most the mixture of integrals";
    let cert = if phi.le(&lhs, &rhs) { Certificate::holds(claim, None, 1) } else { Certificate::violated(claim, None, 1) };
    Ok(cert.with("lhs", WitnessValue::Number(lhs)).with("rhs", WitnessValue::Number(rhs)))
}

fn charge_function(atoms: &[Rational]) -> SetFunction {
    SetFunction::tabulate(GroundSet::numbered(atoms.len()), |s| s.atoms().map(|i| atoms[i].clone()).sum())
        .expect("charge on a small ground set")
}

/// Iterated integrals of a two-index table against charges `α` (rows) and `β` (columns) agree in
/// both orders. Inner and outer integrals are Choquet integrals; the rows must be pairwise comonotonic.
pub fn comonotonic_fubini_check(alpha: &[Rational], beta: &[Rational], table: &[Vec<Rational>]) -> Result<Certificate> {
    if table.len() != alpha.len() || table.iter().any(|r| r.len() != beta.len()) {
        return Err(Error::ShapeError("table must have one row per α-atom and one column per β-atom".into()));
    }
    let rows: Vec<StepFunction> = table.iter().map(|r| StepFunction::new(r.clone())).collect();
    for x in 0..rows.len() {
        for y in x + 1..rows.len() {
            if !rows[x].is_comonotonic_with(&rows[y]) {
                return Err(Error::NotComonotonic(x, y));
            }
        }
    }
    let (a, b) = (charge_function(alpha), charge_function(beta));
    let inner_rows = StepFunction::new(rows.iter().map(|r| choquet(&b, r)).collect::<Result<Vec<_>>>()?);
    let rows_first = choquet(&a, &inner_rows)?;
    let cols: Vec<StepFunction> =
        (0..beta.len()).map(|y| StepFunction::new(table.iter().map(|r| r[y].clone()).collect())).collect();
    let inner_cols = StepFunction::new(cols.iter().map(|c| choquet(&a, c)).collect::<Result<Vec<_>>>()?);
    let cols_first = choquet(&b, &inner_cols)?;
    let claim = "iterated integrals agree in both orders";
    let cert = if rows_first == cols_first { Certificate::holds(claim, None, 1) } else { Certificate::violated(claim, None, 1) };
    Ok(cert
        .with("rows_first", WitnessValue::Number(rows_first))
        .with("columns_first", WitnessValue::Number(cols_first)))
}

/// `f·(g·α) = (fg)·α` for comonotonic nonnegative `f`, `g` and a charge `α`, using Choquet weighting.
pub fn product_weighting_check(alpha: &[Rational], f: &StepFunction, g: &StepFunction) -> Result<Certificate> {
    if f.len() != alpha.len() || g.len() != alpha.len() {
        return Err(Error::GroundMismatch);
    }
    if let Some((x, y)) = f.comonotonic_violation(g) {
        return Err(Error::NotComonotonic(x, y));
    }
    let a = charge_function(alpha);
    let nested = calculus::weighting(f, &calculus::weighting(g, &a)?)?;
    let direct = calculus::weighting(&f.mul(g), &a)?;
    let claim = "weighting by a product equals iterated weighting";
    Ok(match (0..1u64 << a.n()).map(Subset).find(|&s| nested[s] != direct[s]) {
        None => Certificate::holds(claim, None, 1),
        Some(s) => Certificate::violated(claim, None, 1)
            .with("set", WitnessValue::Set(s))
            .with("nested", WitnessValue::Number(nested[s].clone()))
            .with("direct", WitnessValue::Number(direct[s].clone())),
    })
}

/// Human-readable summary of an uncrossing run, one step per line.
pub fn describe_uncrossing(u: &Uncrossing) -> alloc::string::String {
    let mut out = alloc::format!("initial value {}\n", u.initial_value);
    for (k, s) in u.steps.iter().enumerate() {
        out += &alloc::format!("step {}: {} x {} by {} -> {}\n", k + 1, s.first, s.second, s.amount, s.value);
    }
    out += &u.chain.terms.iter().map(|(c, s)| alloc::format!("{c}·{s}")).collect::<Vec<_>>().join(" + ");
    out.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cut, gen_matroid_rank, MatroidKind};
    use crate::rational::{int, ratio};

    fn k3_rank() -> SetFunction {
        gen_matroid_rank(GroundSet::lettered(3), &MatroidKind::Graphic { vertices: 3, edges: alloc::vec![(0, 1), (1, 2), (0, 2)] })
            .unwrap()
    }

    fn triangle_cut() -> SetFunction {
        gen_cut(GroundSet::lettered(3), &[(0, 1, int(1)), (1, 2, int(1)), (0, 2, int(1))]).unwrap()
    }

    #[test]
    fn layer_cake_examples() {
        let c = layer_cake(&StepFunction::from_ints(&[5, 5, 5]));
        assert!(c.terms.is_empty());
        assert_eq!(c.base_offset, int(5));
        let c = layer_cake(&StepFunction::from_ints(&[2, 1, 1]));
        assert_eq!(c.base_offset, int(0));
        assert_eq!(c.terms, alloc::vec![(int(1), Subset(0b111)), (int(1), Subset(0b001))]);
        let c = layer_cake(&StepFunction::from_ints(&[-1, 1]));
        assert_eq!(c.base_offset, int(-1));
        assert_eq!(c.terms, alloc::vec![(int(2), Subset(0b10))]);
        assert!(c.is_chain());
    }

    #[test]
    fn choquet_examples() {
        let r = k3_rank();
        assert_eq!(choquet(&r, &StepFunction::from_ints(&[2, 1, 1])).unwrap(), int(3));
        for s in Subset::full(3).subsets() {
            assert_eq!(choquet(&r, &StepFunction::indicator(3, s)).unwrap(), r[s]);
        }
        let alpha = [ratio(1, 2), int(-2), int(3)];
        let a = charge_function(&alpha);
        let f = StepFunction::new(alloc::vec![int(4), ratio(-1, 3), int(2)]);
        let dot: Rational = alpha.iter().zip(f.values()).map(|(x, y)| x * y).sum();
        assert_eq!(choquet(&a, &f).unwrap(), dot);
        assert_eq!(choquet_from(&r, &f, &int(-7)).unwrap(), choquet(&r, &f).unwrap());
    }

    #[test]
    fn shift_is_reported() {
        let r = k3_rank().shift(&int(5));
        let (v, s) = choquet_shifted(&r, &StepFunction::from_ints(&[2, 1, 1])).unwrap();
        assert_eq!((v, s), (int(3), int(5)));
    }

    #[test]
    fn uncrossing_examples() {
        let cut = triangle_cut();
        let u = uncross(&[(int(1), Subset(0b011)), (int(1), Subset(0b110))], &cut).unwrap();
        assert_eq!(u.initial_value, int(4));
        assert_eq!(u.chain.terms, alloc::vec![(int(1), Subset(0b111)), (int(1), Subset(0b010))]);
        assert_eq!(u.steps.last().unwrap().value, int(2));
        let chain = uncross(&[(int(1), Subset(0b111)), (int(2), Subset(0b001))], &cut).unwrap();
        assert!(chain.steps.is_empty());
        let merged = uncross(&[(int(2), Subset(0b001)), (int(1), Subset(0b001))], &cut).unwrap();
        assert_eq!(merged.chain.terms, alloc::vec![(int(3), Subset(0b001))]);
        assert_eq!(uncross(&[(int(0), Subset(1))], &cut), Err(Error::BadCoefficient(0)));
    }

    #[test]
    fn convexity_counterexample() {
        let cut = triangle_cut();
        let sum = StepFunction::indicator(3, Subset(0b001)).add(&StepFunction::indicator(3, Subset(0b010)));
        assert_eq!(choquet(&cut, &sum).unwrap(), int(2));
        assert!(certify_convexity(&cut, 50, 1).unwrap().is_holds());
        let bad = SetFunction::from_ints(GroundSet::lettered(3), &[0, 1, 1, 3, 1, 2, 2, 3]).unwrap();
        let cert = certify_convexity(&bad, 50, 1).unwrap();
        assert!(!cert.is_holds());
        assert!(cert.witness("f").is_some());
    }

    #[test]
    fn lipschitz_examples() {
        let cut = triangle_cut();
        let f = StepFunction::from_ints(&[1, 0, 0]);
        let z = StepFunction::from_ints(&[0, 0, 0]);
        let cert = lipschitz_check_pairs(&cut, &[(f.clone(), z), (f.clone(), f)]).unwrap();
        assert!(cert.is_holds());
        assert_eq!(cert.witness("variation"), Some(&WitnessValue::Number(int(4))));
        assert!(lipschitz_check(&k3_rank(), 40, 3).unwrap().is_holds());
    }

    #[test]
    fn jensen_examples() {
        let r = k3_rank();
        let one = [StepFunction::from_ints(&[3, 1, 2])];
        let c = jensen_mix_check(&r, &one, &[int(1)]).unwrap();
        assert_eq!(c.witness("lhs"), c.witness("rhs"));
        let como = [StepFunction::from_ints(&[3, 1, 2]), StepFunction::from_ints(&[6, 0, 1])];
        let c = jensen_mix_check(&r, &como, &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(c.witness("lhs"), c.witness("rhs"));
        assert!(matches!(jensen_mix_check(&r, &como, &[ratio(1, 2), ratio(1, 3)]), Err(Error::InvalidDistribution(_))));
    }

    #[test]
    fn fubini_examples() {
        let table: Vec<Vec<Rational>> = (0..3).map(|x| (0..4).map(|y| int(x.min(y))).collect()).collect();
        let alpha = [int(1), int(-2), ratio(1, 2)];
        let beta = [int(3), int(0), int(-1), int(2)];
        assert!(comonotonic_fubini_check(&alpha, &beta, &table).unwrap().is_holds());
        let bad = alloc::vec![alloc::vec![int(0), int(1)], alloc::vec![int(1), int(0)]];
        assert_eq!(comonotonic_fubini_check(&alpha[..2], &beta[..2], &bad), Err(Error::NotComonotonic(0, 1)));
        let u = [ratio(1, 3), ratio(1, 3), ratio(1, 3)];
        let f = StepFunction::from_ints(&[0, 1, 2]);
        let g = StepFunction::from_ints(&[1, 1, 4]);
        assert!(product_weighting_check(&u, &f, &g).unwrap().is_holds());
    }
}
