//! Seeded invariant families run by `submod selftest`.
//!
//! Every family compares a library result against a small independent computation. With
//! `fault` set the library side is corrupted before comparison, so each family must fail.

use serde_json::{Map, Value};
use submod_core::choquet::{self, StepFunction};
use submod_core::geometry;
use submod_core::ground::{all_subsets, GroundSet, Subset};
use submod_core::polyhedra::{self, Chain, Charge, Coupling};
use submod_core::random::{self, SeededRng};
use submod_core::rational::{self, int, Rational};
use submod_core::setfn::SetFunction;
use submod_core::sfm;

use crate::report::{self, Verdict};

pub const DEFAULT_BUDGET: usize = 4;
const TRIALS: usize = 6;

type Witness = Map<String, Value>;

struct Ctx {
    rng: SeededRng,
    n: usize,
    fault: bool,
}

impl Ctx {
    /// The corruption applied to library outputs under `--inject-fault`.
    fn bump(&self, r: Rational) -> Rational {
        if self.fault {
            r + int(1)
        } else {
            r
        }
    }
}

fn w(pairs: &[(&str, Value)]) -> Witness {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn err(e: submod_core::error::Error) -> Witness {
    w(&[("error", Value::String(e.to_string()))])
}

fn random_subset(rng: &mut SeededRng, n: usize) -> Subset {
    let bits = random::vector(rng, n, 0, 1, 1);
    Subset::from_atoms((0..n).filter(|&i| bits[i] == int(1)))
}

fn generators(c: &mut Ctx) -> Result<(), Witness> {
    let phi = random::submodular(&mut c.rng, c.n, false);
    let phi = if c.fault { phi.with_value(phi.full(), c.bump(phi[phi.full()].clone() + int(100))) } else { phi };
    for x in all_subsets(c.n) {
        for y in all_subsets(c.n) {
            if &phi[x] + &phi[y] < &phi[x.union(y)] + &phi[x.intersection(y)] {
                return Err(w(&[("x", report::set(phi.ground(), x)), ("y", report::set(phi.ground(), y))]));
            }
        }
    }
    Ok(())
}

fn choquet_greedy(c: &mut Ctx) -> Result<(), Witness> {
    let phi = random::submodular(&mut c.rng, c.n, true);
    let wts = StepFunction::new(random::vector(&mut c.rng, c.n, 0, 3, 1));
    let value = c.bump(choquet::choquet(&phi, &wts).map_err(err)?);
    let alpha = polyhedra::greedy_chain_charge(&phi, &Chain::of_levels(&wts)).map_err(err)?;
    // Sorting form of the extension, written out independently.
    let mut order: Vec<usize> = (0..c.n).collect();
    order.sort_by(|&i, &j| wts.at(j).cmp(wts.at(i)));
    let mut oracle = rational::zero();
    let mut prefix = Subset::EMPTY;
    for (k, &i) in order.iter().enumerate() {
        prefix = prefix.with(i);
        let next = order.get(k + 1).map(|&j| wts.at(j).clone()).unwrap_or_else(rational::zero);
        oracle += (wts.at(i) - next) * &phi[prefix];
    }
    if value != oracle || alpha.integrate(&wts) != oracle {
        return Err(w(&[
            ("weights", report::nums(wts.values())),
            ("choquet", report::num(&value)),
            ("greedy", report::num(&alpha.integrate(&wts))),
            ("oracle", report::num(&oracle)),
        ]));
    }
    Ok(())
}

fn convexity(c: &mut Ctx) -> Result<(), Witness> {
    let phi = random::table(&mut c.rng, c.n, -2, 3);
    let cert = choquet::certify_convexity(&phi, 8, 0).map_err(err)?;
    let exhaustive = phi.submodular_violation_exhaustive().is_none();
    if (cert.is_holds() != c.fault) != exhaustive {
        return Err(w(&[("table", report::table(&phi)), ("convex", cert.is_holds().into()), ("submodular", exhaustive.into())]));
    }
    Ok(())
}

fn mobius_oracle(phi: &SetFunction) -> Vec<Rational> {
    let n = phi.n();
    all_subsets(n)
        .map(|x| {
            x.complement(n)
                .subsets()
                .map(|d| if d.len() % 2 == 0 { phi[x.union(d)].clone() } else { -phi[x.union(d)].clone() })
                .sum()
        })
        .collect()
}

fn lindstrom_wilf(c: &mut Ctx) -> Result<(), Witness> {
    let n = c.n.min(geometry::UNION_MAX_N - 1);
    let phi = random::table(&mut c.rng, n, -3, 3);
    let lw = geometry::lindstrom_wilf(&phi).map_err(err)?;
    let m = mobius_oracle(&phi);
    let census = geometry::sign_census(&m);
    let positive = if c.fault { lw.inertia.positive + 1 } else { lw.inertia.positive };
    if lw.mobius != m || positive != census.positive || lw.inertia.negative != census.negative {
        return Err(w(&[("table", report::table(&phi)), ("mobius", report::nums(&lw.mobius))]));
    }
    Ok(())
}

fn strong_submodularity(c: &mut Ctx) -> Result<(), Witness> {
    let n = c.n.min(4);
    let mut alpha = random::vector(&mut c.rng, 1 << n, 0, 2, 1);
    alpha[0] = rational::zero();
    let g = GroundSet::lettered(n);
    let phi = SetFunction::tabulate(g.clone(), |x| {
        all_subsets(n).filter(|y| !y.is_disjoint(x)).map(|y| alpha[y.index()].clone()).sum()
    })
    .map_err(err)?;
    let cert = geometry::certify_strong_submodular(&phi).map_err(err)?;
    let mut back = geometry::induce_representation(&phi).map_err(err)?;
    back[0] = c.bump(back[0].clone());
    if !cert.is_holds() || back != alpha || !geometry::window_batch(&phi).map_err(err)?.is_holds() {
        return Err(w(&[("alpha", report::subset_table(&g, &alpha)), ("recovered", report::subset_table(&g, &back))]));
    }
    Ok(())
}

fn forest_rank(vertices: usize, edges: &[(usize, usize)], s: Subset) -> i64 {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut rank = 0;
    for k in s.atoms() {
        let (a, b) = (root(&mut parent, edges[k].0), root(&mut parent, edges[k].1));
        if a != b {
            parent[a] = b;
            rank += 1;
        }
    }
    rank
}

fn dilworth(c: &mut Ctx) -> Result<(), Witness> {
    let k = if c.n >= 6 { 4 } else { 3 };
    let edges: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let rel = sfm::graph_incidence(k, &edges).map_err(err)?;
    let r = sfm::dilworth_truncation_rank(&rel).map_err(err)?;
    for s in all_subsets(edges.len()) {
        let got = c.bump(r[s].clone());
        if got != int(forest_rank(k, &edges, s)) {
            return Err(w(&[("vertices", k.into()), ("set", report::set(r.ground(), s)), ("value", report::num(&got))]));
        }
    }
    Ok(())
}

fn intersection(c: &mut Ctx) -> Result<(), Witness> {
    let phi = random::submodular(&mut c.rng, c.n, false);
    let psi = random::submodular(&mut c.rng, c.n, false);
    let full = phi.full();
    let r = polyhedra::intersection_value(&phi, &psi, full).map_err(err)?;
    let oracle = full.subsets().map(|y| &phi[y] + &psi[full.difference(y)]).min().expect("nonempty");
    let value = c.bump(r.value.clone());
    let below = r.witness.excess_over(&phi).is_none() && r.witness.excess_over(&psi).is_none();
    if value != oracle || r.witness.total() != oracle || !below {
        return Err(w(&[("value", report::num(&value)), ("oracle", report::num(&oracle)), ("witness", report::charge(&r.witness))]));
    }
    Ok(())
}

fn separation(c: &mut Ctx) -> Result<(), Witness> {
    let core = Charge::new(GroundSet::lettered(c.n), random::charge_values(&mut c.rng, c.n, -2, 2)).map_err(err)?;
    let m = core.to_setfunction();
    let phi = m.add(&random::submodular(&mut c.rng, c.n, true)).map_err(err)?;
    let xi = m.sub(&random::submodular(&mut c.rng, c.n, true)).map_err(err)?;
    let mu = polyhedra::separate(&xi, &phi, None).map_err(err)?;
    for s in all_subsets(c.n) {
        let v = c.bump(mu.eval(s));
        if v < xi[s] || v > phi[s] {
            return Err(w(&[("set", report::set(phi.ground(), s)), ("value", report::num(&v)), ("charge", report::charge(&mu.charge))]));
        }
    }
    Ok(())
}

fn coupling(c: &mut Ctx) -> Result<(), Witness> {
    let (l, r) = (c.n, c.n.max(2));
    let rel = random::relation(&mut c.rng, l, r, 0.4);
    let left = random::distribution(&mut c.rng, l, 0.2);
    let right = random::distribution(&mut c.rng, r, 0.2);
    let g = rel.left().clone();
    match polyhedra::coupling_exists(&rel, &left, &right).map_err(err)? {
        Coupling::Matrix(mut m) => {
            m[0][0] = c.bump(m[0][0].clone());
            let rows_ok = (0..l).all(|i| m[i].iter().cloned().sum::<Rational>() == left[i]);
            let cols_ok = (0..r).all(|j| m.iter().map(|row| row[j].clone()).sum::<Rational>() == right[j]);
            let support = (0..l).all(|i| (0..r).all(|j| rel.related(i, j) || m[i][j] == rational::zero()));
            if !(rows_ok && cols_ok && support) {
                return Err(w(&[("coupling", report::matrix(&m))]));
            }
        }
        Coupling::HallViolation { set, left_mass, image_mass } => {
            let lm: Rational = set.atoms().map(|i| left[i].clone()).sum();
            let im: Rational = rel.image(set).atoms().map(|j| right[j].clone()).sum();
            let left_mass = c.bump(left_mass);
            if lm != left_mass || im != image_mass || lm <= im {
                return Err(w(&[("set", report::set(&g, set)), ("left_mass", report::num(&left_mass)), ("image_mass", report::num(&image_mass))]));
            }
        }
    }
    Ok(())
}

fn distance(c: &mut Ctx) -> Result<(), Witness> {
    let n = c.n.min(4);
    let phi = random::submodular(&mut c.rng, n, true);
    let d = geometry::bjorner_distance(&phi).map_err(err)?;
    let full = phi.full();
    for x in all_subsets(n) {
        for y in all_subsets(n) {
            for z in all_subsets(n) {
                let corrupt = c.fault && x.is_empty() && z == full;
                let dxz = if corrupt { d.get(x, z) + int(1000) } else { d.get(x, z).clone() };
                if dxz > d.get(x, y) + d.get(y, z) {
                    return Err(w(&[("x", report::set(phi.ground(), x)), ("y", report::set(phi.ground(), y)), ("z", report::set(phi.ground(), z))]));
                }
            }
        }
    }
    Ok(())
}

fn exchange(c: &mut Ctx) -> Result<(), Witness> {
    let phi = random::submodular(&mut c.rng, c.n, true);
    let order = |rng: &mut SeededRng| Chain::of_levels(&StepFunction::new(random::vector(rng, c.n, 0, 9, 1)));
    let a = polyhedra::greedy_chain_charge(&phi, &order(&mut c.rng)).map_err(err)?;
    let b = polyhedra::greedy_chain_charge(&phi, &order(&mut c.rng)).map_err(err)?;
    let half = rational::ratio(1, 2);
    let alpha = Charge::new(a.ground().clone(), a.atoms().iter().map(|v| v * &half).collect()).map_err(err)?;
    let gamma = polyhedra::exchange_augment(&phi, &alpha, &b).map_err(err)?;
    let mut atoms = gamma.atoms().to_vec();
    atoms[0] = c.bump(atoms[0].clone());
    let gamma = Charge::new(gamma.ground().clone(), atoms).map_err(err)?;
    if !alpha.le(&gamma) || !gamma.le(&alpha.join(&b)) || gamma.total() < b.total() {
        return Err(w(&[("alpha", report::charge(&alpha)), ("beta", report::charge(&b)), ("gamma", report::charge(&gamma))]));
    }
    Ok(())
}

fn uncrossing(c: &mut Ctx) -> Result<(), Witness> {
    let phi = random::submodular(&mut c.rng, c.n, false);
    let k = c.n + 2;
    let coeffs = random::vector(&mut c.rng, k, 1, 3, 2);
    let terms: Vec<(Rational, Subset)> =
        coeffs.into_iter().map(|a| (a, random_subset(&mut c.rng, c.n))).filter(|(_, s)| !s.is_empty()).collect();
    let f: Vec<Rational> =
        (0..c.n).map(|i| terms.iter().filter(|(_, s)| s.contains(i)).map(|(a, _)| a.clone()).sum()).collect();
    let u = choquet::uncross(&terms, &phi).map_err(err)?;
    let mut last = u.initial_value.clone();
    let monotone = u.steps.iter().all(|s| {
        let ok = s.value <= last;
        last = s.value.clone();
        ok
    });
    let terminal = c.bump(u.chain.evaluate(&phi));
    let target = choquet::choquet(&phi, &StepFunction::new(f.clone())).map_err(err)?;
    if !u.chain.is_chain() || u.chain.reconstruct().values() != &f[..] || !monotone || terminal != target {
        return Err(w(&[("function", report::nums(&f)), ("terminal", report::num(&terminal)), ("choquet", report::num(&target))]));
    }
    Ok(())
}

fn minimization(c: &mut Ctx) -> Result<(), Witness> {
    let phi = random::submodular(&mut c.rng, c.n, false);
    let r = sfm::minimize(&phi, None).map_err(err)?;
    let oracle = phi.values().iter().min().expect("nonempty").clone();
    let value = c.bump(r.value.clone());
    if value != oracle || phi[r.minimizer] != oracle {
        return Err(w(&[("minimizer", report::set(phi.ground(), r.minimizer)), ("value", report::num(&value)), ("oracle", report::num(&oracle))]));
    }
    Ok(())
}

fn truncation(c: &mut Ctx) -> Result<(), Witness> {
    let n = c.n.min(6);
    let phi = random::table(&mut c.rng, n, -3, 3);
    let full = phi.full();
    let r = sfm::positive_part(&phi, full).map_err(err)?;
    let oracle = sfm::set_partitions(full)
        .map(|p| p.iter().map(|&b| rational::pos(&phi[b])).sum::<Rational>())
        .min()
        .unwrap_or_else(rational::zero);
    let value = c.bump(r.value.clone());
    if value != oracle {
        return Err(w(&[("value", report::num(&value)), ("oracle", report::num(&oracle)), ("partition", report::sets(phi.ground(), &r.partition))]));
    }
    Ok(())
}

type Family = fn(&mut Ctx) -> Result<(), Witness>;

const FAMILIES: [(&str, Family); 14] = [
    ("generator_submodularity", generators),
    ("choquet_greedy", choquet_greedy),
    ("convexity", convexity),
    ("lindstrom_wilf", lindstrom_wilf),
    ("strong_submodularity", strong_submodularity),
    ("dilworth_truncation", dilworth),
    ("intersection", intersection),
    ("separation", separation),
    ("coupling", coupling),
    ("distance_triangle", distance),
    ("exchange", exchange),
    ("uncrossing", uncrossing),
    ("minimization", minimization),
    ("positive_part", truncation),
];

/// One verdict per family, `pass` or `fail`; the first failing instance is the witness.
pub fn run(seed: u64, budget: usize, fault: bool) -> Vec<Verdict> {
    FAMILIES
        .iter()
        .enumerate()
        .map(|(k, (name, family))| {
            let mut ctx = Ctx { rng: random::rng(seed.wrapping_add(k as u64)), n: budget.max(2), fault };
            let mut witness = Map::new();
            let mut ok = true;
            for trial in 0..TRIALS {
                if let Err(mut wit) = family(&mut ctx) {
                    ok = false;
                    wit.insert("trial".into(), trial.into());
                    witness = wit;
                    break;
                }
            }
            if ok {
                witness.insert("instances".into(), TRIALS.into());
            }
            Verdict { property: name.to_string(), status: if ok { "pass" } else { "fail" }.into(), witness }
        })
        .collect()
}

pub fn family_names() -> Vec<&'static str> {
    FAMILIES.iter().map(|(n, _)| *n).collect()
}
