//! `certify` and `compute`.

use serde_json::{Map, Value};
use submod_core::calculus;
use submod_core::choquet::{self, StepFunction};
use submod_core::geometry;
use submod_core::ground::{all_subsets, Subset};
use submod_core::polyhedra::{self, BasicIntersection, Chain, Coupling};
use submod_core::rational::Rational;
use submod_core::setfn::SetFunction;
use submod_core::sfm;

use crate::report::{self, status_word, Verdict};
use crate::spec::Loaded;
use crate::CliError;

pub const PROPERTIES: [&str; 11] = [
    "submodular",
    "supermodular",
    "modular",
    "increasing",
    "decreasing",
    "normalized",
    "subadditive",
    "strongly_submodular",
    "convex",
    "windows",
    "matroid_rank",
];

pub const COMPUTATIONS: [&str; 13] = [
    "choquet",
    "var",
    "decompose",
    "truncate",
    "majorize",
    "distance",
    "mobius",
    "minimize",
    "intersect",
    "weighted_intersect",
    "separate",
    "greedy",
    "couple",
];

const CONVEXITY_TRIALS: usize = 64;
const INERTIA_MAX_N: usize = 6;

fn pair_verdict(property: &str, phi: &SetFunction, hit: Option<(Subset, Subset)>, names: [&str; 2]) -> Verdict {
    let mut witness = Map::new();
    if let Some((x, y)) = hit {
        witness.insert(names[0].into(), report::set(phi.ground(), x));
        witness.insert(names[1].into(), report::set(phi.ground(), y));
    }
    Verdict { property: property.into(), status: status_word(hit.is_none()).into(), witness }
}

/// `φ(X) + φ(Y) − φ(X ∪ Y) − φ(X ∩ Y)`.
fn pair_gap(phi: &SetFunction, x: Subset, y: Subset) -> Rational {
    &phi[x] + &phi[y] - &phi[x.union(y)] - &phi[x.intersection(y)]
}

fn with_gap(mut v: Verdict, phi: &SetFunction, hit: Option<(Subset, Subset)>) -> Verdict {
    if let Some((x, y)) = hit {
        v.witness.insert("gap".into(), report::num(&pair_gap(phi, x, y)));
    }
    v
}

pub fn certify_one(phi: &SetFunction, property: &str, seed: u64) -> Result<Verdict, CliError> {
    let g = phi.ground();
    let v = match property {
        "submodular" => {
            let hit = phi.submodular_violation();
            with_gap(pair_verdict(property, phi, hit, ["x", "y"]), phi, hit)
        }
        "supermodular" => {
            let hit = phi.supermodular_violation();
            with_gap(pair_verdict(property, phi, hit, ["x", "y"]), phi, hit)
        }
        "modular" => {
            let hit = phi.submodular_violation().or_else(|| phi.supermodular_violation());
            with_gap(pair_verdict(property, phi, hit, ["x", "y"]), phi, hit)
        }
        "increasing" => pair_verdict(property, phi, phi.increasing_violation(), ["smaller", "larger"]),
        "decreasing" => pair_verdict(property, phi, phi.decreasing_violation(), ["smaller", "larger"]),
        "subadditive" => pair_verdict(property, phi, phi.subadditive_violation(), ["x", "y"]),
        "normalized" => {
            let mut witness = Map::new();
            if !phi.is_normalized() {
                witness.insert("empty_value".into(), report::num(&phi[Subset::EMPTY]));
            }
            Verdict { property: property.into(), status: status_word(phi.is_normalized()).into(), witness }
        }
        "strongly_submodular" => report::from_certificate(property, g, &geometry::certify_strong_submodular(phi)?),
        "convex" => report::from_certificate(property, g, &choquet::certify_convexity(phi, CONVEXITY_TRIALS, seed)?),
        "windows" => report::from_certificate(property, g, &geometry::window_batch(phi)?),
        "matroid_rank" => {
            let mut witness = Map::new();
            let r = polyhedra::check_matroid_rank(phi);
            if let Err(e) = &r {
                witness.insert("reason".into(), Value::String(e.to_string()));
            }
            Verdict { property: property.into(), status: status_word(r.is_ok()).into(), witness }
        }
        other => {
            return Err(CliError::Input(format!("unknown property `{other}`; expected one of {}", PROPERTIES.join(", "))))
        }
    };
    Ok(v)
}

pub fn certify(loaded: &Loaded, properties: &[String], seed: u64) -> Result<Vec<Verdict>, CliError> {
    let defaults = ["submodular".to_string()];
    let props = if properties.is_empty() { &defaults[..] } else { properties };
    props.iter().map(|p| certify_one(&loaded.phi, p, seed)).collect()
}

fn need<'a, T>(x: &'a Option<T>, what: &str, field: &str) -> Result<&'a T, CliError> {
    x.as_ref().ok_or_else(|| CliError::Input(format!("{what} needs `{field}` in the spec file")))
}

fn put(values: &mut Map<String, Value>, key: &str, v: Value) {
    values.insert(key.into(), v);
}

fn partition_values(values: &mut Map<String, Value>, phi: &SetFunction, u: Subset, r: &sfm::PartitionResult) {
    put(values, "set", report::set(phi.ground(), u));
    put(values, "value", report::num(&r.value));
    put(values, "partition", report::sets(phi.ground(), &r.partition));
}

pub fn compute(loaded: &Loaded, what: &str) -> Result<Map<String, Value>, CliError> {
    let phi = &loaded.phi;
    let g = phi.ground();
    let n = phi.n();
    let mut values = Map::new();
    let v = &mut values;
    match what {
        "choquet" => {
            let w = StepFunction::new(need(&loaded.weights, what, "weights")?.clone());
            put(v, "choquet", report::num(&choquet::choquet(phi, &w)?));
        }
        "var" => {
            let d = calculus::variation(phi)?;
            put(v, "total_variation", report::num(&d.total_variation));
            put(v, "mu", report::table(&d.mu));
            put(v, "nu", report::table(&d.nu));
        }
        "decompose" => {
            let (inc, dec) = calculus::decompose_submodular(phi)?;
            put(v, "increasing", report::table(&inc));
            put(v, "decreasing", report::table(&dec));
        }
        "truncate" => {
            let u = loaded.set.unwrap_or(phi.full());
            let r = sfm::positive_part(phi, u)?;
            partition_values(v, phi, u, &r);
            put(v, "positive_part", report::table(&sfm::positive_part_table(phi)?));
        }
        "majorize" => {
            let u = loaded.set.unwrap_or(phi.full());
            let r = sfm::majorizer(phi, u)?;
            partition_values(v, phi, u, &r);
            put(v, "charge", report::charge(&sfm::majorizing_charge(phi)?));
        }
        "distance" => {
            let d = geometry::bjorner_distance(phi)?;
            let side: Vec<Subset> = all_subsets(n).collect();
            let rows: Vec<Vec<Rational>> =
                side.iter().map(|&x| side.iter().map(|&y| d.get(x, y).clone()).collect()).collect();
            put(v, "subsets", report::sets(g, &side));
            put(v, "distance", report::matrix(&rows));
            let roofs = geometry::roofs(phi)?;
            let list = (0..roofs.len())
                .map(|c| {
                    let mut m = Map::new();
                    m.insert("top".into(), report::set(g, roofs.tops[c]));
                    m.insert("value".into(), report::num(&roofs.values[c]));
                    m.insert("members".into(), report::sets(g, &roofs.classes[c]));
                    Value::Object(m)
                })
                .collect();
            put(v, "roofs", Value::Array(list));
        }
        "mobius" => {
            let m = geometry::mobius_upper(phi.values())?;
            put(v, "mobius", report::subset_table(g, &m));
            if n <= INERTIA_MAX_N {
                let lw = geometry::lindstrom_wilf(phi)?;
                let mut i = Map::new();
                i.insert("positive".into(), lw.inertia.positive.into());
                i.insert("negative".into(), lw.inertia.negative.into());
                i.insert("zero".into(), lw.inertia.zero.into());
                put(v, "inertia", Value::Object(i));
            }
        }
        "minimize" => {
            let r = sfm::minimize(phi, loaded.set)?;
            put(v, "minimizer", report::set(g, r.minimizer));
            put(v, "value", report::num(&r.value));
            let method = match r.method {
                sfm::Method::Exhaustive => "exhaustive",
                sfm::Method::LatticeDp => "lattice_dp",
            };
            put(v, "method", method.into());
            put(v, "certified", r.certified.into());
        }
        "intersect" => {
            let psi = need(&loaded.second, what, "second")?;
            let x = loaded.set.unwrap_or(phi.full());
            let r = polyhedra::intersection_value(phi, psi, x)?;
            put(v, "set", report::set(g, x));
            put(v, "value", report::num(&r.value));
            put(v, "split", report::set(g, r.split));
            put(v, "witness", report::charge(&r.witness));
        }
        "weighted_intersect" => {
            let psi = need(&loaded.second, what, "second")?;
            let w = StepFunction::new(need(&loaded.weights, what, "weights")?.clone());
            let r = polyhedra::weighted_intersection(phi, psi, &w)?;
            put(v, "value", report::num(&r.value));
            put(v, "charge", report::charge(&r.charge));
            put(v, "split", report::nums(r.h.values()));
            match &r.basic {
                BasicIntersection::Attained { charge, value } => {
                    put(v, "basic_charge", report::charge(charge));
                    put(v, "basic_value", report::num(value));
                }
                BasicIntersection::Infeasible { farkas } => put(v, "basic_farkas", report::nums(farkas)),
            }
        }
        "separate" => {
            let xi = need(&loaded.second, what, "second")?;
            let mu = polyhedra::separate(xi, phi, None)?;
            put(v, "offset", report::num(&mu.offset));
            put(v, "charge", report::charge(&mu.charge));
        }
        "greedy" => {
            let chain = match (&loaded.chain, &loaded.weights) {
                (Some(c), _) => Chain::new(n, c)?,
                (None, Some(w)) => Chain::of_levels(&StepFunction::new(w.clone())),
                (None, None) => Chain::ascending(n),
            };
            let alpha = polyhedra::greedy_chain_charge(phi, &chain)?;
            put(v, "chain", report::sets(g, chain.refine().sets()));
            put(v, "charge", report::charge(&alpha));
            if let Some(w) = &loaded.weights {
                put(v, "integral", report::num(&alpha.integrate(&StepFunction::new(w.clone()))));
            }
        }
        "couple" => {
            let rel = need(&loaded.relation, what, "relation")?;
            let (left, right) = need(&loaded.marginals, what, "marginals")?;
            match polyhedra::coupling_exists(rel, left, right)? {
                Coupling::Matrix(m) => {
                    put(v, "coupling", report::matrix(&m));
                }
                Coupling::HallViolation { set, left_mass, image_mass } => {
                    put(v, "hall_violation", report::set(g, set));
                    put(v, "image", report::set(rel.right(), rel.image(set)));
                    put(v, "left_mass", report::num(&left_mass));
                    put(v, "image_mass", report::num(&image_mass));
                }
            }
        }
        other => {
            return Err(CliError::Input(format!("unknown computation `{other}`; expected one of {}", COMPUTATIONS.join(", "))))
        }
    }
    Ok(values)
}
