//! Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact (tolerance 0).

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use submod_core::choquet::{certify_convexity, choquet, uncross, StepFunction};
use submod_core::generators::{
    gen_concave_of_measure, gen_coverage, gen_cut, gen_hom_count, gen_matroid_rank, MatroidKind, PiecewiseLinear, SmallGraph,
};
use submod_core::geometry::{
    certify_strong_submodular, choquet_violation, distance_table, induce_representation, lindstrom_wilf, mobius_violation,
    negative_type_check, union_matrix, window_batch,
};
use submod_core::ground::{all_subsets, GroundSet, Subset};
use submod_core::linalg::inertia;
use submod_core::polyhedra::{
    coupling_exists, exchange_augment, greedy_chain_charge, intersection_value, separate, Chain, Charge, Coupling,
};
use submod_core::random::{self, SeededRng};
use submod_core::rational::{int, ratio, Rational};
use submod_core::relation::Relation;
use submod_core::setfn::SetFunction;
use submod_core::sfm::{dilworth_truncation_rank, graph_incidence};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Table scaled to integers by the common denominator.
fn scaled(values: &[Rational]) -> Vec<i128> {
    let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    values.iter().map(|v| (v.numer() * (&den / v.denom())).to_i128().expect("small table")).collect()
}

/// Every pair `(X, Y)`: sign of `f(X∪Y) + f(X∩Y) − f(X) − f(Y)`, by direct bit arithmetic.
fn pair_oracle(values: &[Rational], submodular: bool) -> bool {
    let v = scaled(values);
    let size = v.len();
    for x in 0..size {
        for y in 0..size {
            let d = v[x | y] + v[x & y] - v[x] - v[y];
            if (submodular && d > 0) || (!submodular && d < 0) {
                return false;
            }
        }
    }
    true
}

/// Lovász extension by sorting: `Σ f_(i) (φ(S_i) − φ(S_{i−1}))` with `φ(∅) = 0`.
fn lovasz_oracle(phi: &SetFunction, f: &[Rational]) -> Rational {
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&a, &b| f[b].cmp(&f[a]));
    let mut prev = Subset::EMPTY;
    let mut sum = Rational::zero();
    for &i in &order {
        let next = prev.with(i);
        sum += &f[i] * (phi.value(next) - phi.value(prev));
        prev = next;
    }
    sum
}

/// `Σ_{Y ⊇ X} (−1)^{|Y∖X|} φ(Y)` summed term by term.
fn mobius_oracle(values: &[Rational]) -> Vec<Rational> {
    let size = values.len();
    (0..size)
        .map(|x| {
            (0..size)
                .filter(|y| y & x == x)
                .map(|y| if ((y ^ x) as u64).count_ones() % 2 == 0 { values[y].clone() } else { -values[y].clone() })
                .sum()
        })
        .collect()
}

fn forest_rank(vertices: usize, edges: &[(usize, usize)], x: Subset) -> i64 {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut Vec<usize>, mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut rank = 0;
    for i in x.atoms() {
        let (a, b) = (find(&mut parent, edges[i].0), find(&mut parent, edges[i].1));
        if a != b {
            parent[a] = b;
            rank += 1;
        }
    }
    rank
}

fn c1_generators() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(101);
    let n = 10;
    let g = GroundSet::numbered(n);
    let mut cut_edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                cut_edges.push((i, j, random::rational_in(&mut rng, 0, 4, 3)));
            }
        }
    }
    let rel = random::relation(&mut rng, n, 12, 0.3);
    let k5 = SmallGraph::complete(5);
    let columns: Vec<Vec<Rational>> = (0..n).map(|_| random::vector(&mut rng, 4, -2, 2, 1)).collect();
    let concave =
        PiecewiseLinear::new(vec![(int(0), int(0)), (int(3), int(6)), (int(8), int(9)), (int(40), int(10))]).map_err(|e| e.to_string())?;
    let weights = random::vector(&mut rng, n, 0, 4, 1);
    let subs: Vec<(&str, SetFunction)> = vec![
        ("cut", gen_cut(g.clone(), &cut_edges).map_err(|e| e.to_string())?),
        ("coverage", gen_coverage(&rel, &random::vector(&mut rng, 12, 0, 3, 2)).map_err(|e| e.to_string())?),
        ("graphic K5", gen_matroid_rank(g.clone(), &MatroidKind::Graphic { vertices: 5, edges: k5.edges.clone() }).map_err(|e| e.to_string())?),
        ("linear", gen_matroid_rank(g.clone(), &MatroidKind::Linear { columns }).map_err(|e| e.to_string())?),
        ("uniform", gen_matroid_rank(g.clone(), &MatroidKind::Uniform { k: 4 }).map_err(|e| e.to_string())?),
        ("concave of measure", gen_concave_of_measure(g.clone(), &weights, &concave).map_err(|e| e.to_string())?),
    ];
    for (name, f) in &subs {
        ensure(pair_oracle(f.values(), true), || format!("{name}: oracle found a violated pair"))?;
        ensure(f.submodular_violation_exhaustive().is_none(), || format!("{name}: certification rejected"))?;
    }
    let hom_cases = [(SmallGraph::complete(4), SmallGraph::complete(3)), (SmallGraph::complete_bipartite(2, 3), SmallGraph::complete(4))];
    for (f, h) in &hom_cases {
        let hom = gen_hom_count(GroundSet::numbered(f.edges.len()), f, h).map_err(|e| e.to_string())?;
        ensure(pair_oracle(hom.values(), false), || "hom count: oracle found a submodular pair".into())?;
        ensure(hom.supermodular_violation_exhaustive().is_none(), || "hom count: certification rejected".into())?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{} submodular generators at n=10 and {} hom counts, {:.2?}", subs.len(), hom_cases.len(), elapsed))
}

fn k3() -> SetFunction {
    gen_matroid_rank(GroundSet::new(&["e1", "e2", "e3"]).unwrap(), &MatroidKind::Graphic { vertices: 3, edges: vec![(0, 1), (1, 2), (0, 2)] })
        .unwrap()
}

fn c2_choquet_k3() -> Outcome {
    let r = k3();
    let w = vec![int(2), int(1), int(1)];
    let f = StepFunction::new(w.clone());
    let value = choquet(&r, &f).map_err(|e| e.to_string())?;
    ensure(value == int(3), || format!("choquet = {value}"))?;
    ensure(lovasz_oracle(&r, &w) == int(3), || "sorting oracle disagrees".into())?;
    let alpha = greedy_chain_charge(&r, &Chain::of_levels(&f)).map_err(|e| e.to_string())?;
    let attained = alpha.integrate(&f);
    ensure(attained == int(3), || format!("greedy charge attains {attained}"))?;
    for s in all_subsets(3) {
        ensure(alpha.eval(s) <= *r.value(s), || format!("greedy charge exceeds rank at {s}"))?;
    }
    Ok(format!("choquet = 3, greedy charge {:?} attains 3, below r on 8 sets", alpha.atoms().iter().map(|a| a.to_string()).collect::<Vec<_>>()))
}

fn c3_convexity() -> Outcome {
    let mut rng = random::rng(303);
    let (mut convex, mut nonconvex) = (0, 0);
    for k in 0..1000u64 {
        let n = 1 + (k as usize % 5);
        let phi = match k % 3 {
            0 => random::submodular(&mut rng, n, k % 2 == 0),
            1 => random::table(&mut rng, n, -4, 4),
            _ => {
                let s = random::submodular(&mut rng, n, false);
                let t = Subset(rng.gen_range(1..1u64 << n));
                s.with_value(t, s.value(t) + int(rng.gen_range(-1..=1)))
            }
        };
        let oracle = pair_oracle(phi.values(), true);
        let cert = certify_convexity(&phi, 10, k).map_err(|e| e.to_string())?;
        ensure(cert.is_holds() == oracle, || format!("instance {k}: convexity {} vs submodular {}", cert.is_holds(), oracle))?;
        if oracle {
            convex += 1;
        } else {
            nonconvex += 1;
        }
        let (f, g) = random::comonotonic_pair(&mut rng, n, -3, 3);
        let sum: Vec<Rational> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let lhs = choquet(&phi, &StepFunction::new(sum.clone())).map_err(|e| e.to_string())?;
        let rhs = choquet(&phi, &StepFunction::new(f.clone())).map_err(|e| e.to_string())?
            + choquet(&phi, &StepFunction::new(g.clone())).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("instance {k}: comonotonic sum not additive"))?;
        ensure(lhs == lovasz_oracle(&phi, &sum), || format!("instance {k}: choquet disagrees with sorting oracle"))?;
    }
    ensure(convex > 0 && nonconvex > 0, || "instances did not cover both verdicts".into())?;
    Ok(format!("1000 instances ({convex} convex, {nonconvex} not) agree; comonotonic additivity exact"))
}

fn c4_lindstrom_wilf() -> Outcome {
    let mut rng = random::rng(404);
    for k in 0..200 {
        let n = 1 + k % 5;
        let values = random::vector(&mut rng, 1 << n, -3, 3, 4);
        let phi = SetFunction::from_values(GroundSet::lettered(n), values.clone()).map_err(|e| e.to_string())?;
        let lw = lindstrom_wilf(&phi).map_err(|e| format!("instance {k}: {e}"))?;
        let m = mobius_oracle(&values);
        ensure(lw.mobius == m, || format!("instance {k}: Möbius inverse differs from direct sum"))?;
        let size = 1 << n;
        for x in 0..size {
            for y in 0..size {
                let direct: Rational = (0..size).filter(|&z| z & x == x && z & y == y).map(|z| m[z].clone()).sum();
                ensure(direct == values[x | y] && lw.union[(x, y)] == values[x | y], || {
                    format!("instance {k}: factorization fails at ({x}, {y})")
                })?;
            }
        }
        let census = (m.iter().filter(|v| v.is_positive()).count(), m.iter().filter(|v| v.is_negative()).count());
        ensure((lw.inertia.positive, lw.inertia.negative) == census, || format!("instance {k}: inertia differs from sign census"))?;
    }
    Ok("200 instances: factorization and inertia exact".into())
}

/// `(Pα)(X) = Σ_{Y ∩ X ≠ ∅} α(Y)`.
fn induce_oracle(alpha: &[Rational]) -> Vec<Rational> {
    (0..alpha.len()).map(|x| (0..alpha.len()).filter(|y| y & x != 0).map(|y| alpha[y].clone()).sum()).collect()
}

/// Alternating sums over tuples `(A₀, A₁, A₂)` by brute force.
fn order_two_oracle(values: &[Rational]) -> bool {
    let size = values.len();
    for a0 in 0..size {
        for a1 in 0..size {
            if values[a0] > values[a0 | a1] {
                return false;
            }
            for a2 in 0..size {
                let s = &values[a0] - &values[a0 | a1] - &values[a0 | a2] + &values[a0 | a1 | a2];
                if s.is_positive() {
                    return false;
                }
            }
        }
    }
    true
}

fn c5_strong_submodularity() -> Outcome {
    let mut rng = random::rng(505);
    for k in 0..200 {
        let n = 1 + k % 4;
        let mut alpha: Vec<Rational> = (0..1usize << n).map(|_| if rng.gen_bool(0.3) { int(0) } else { random::rational_in(&mut rng, 0, 3, 2) }).collect();
        alpha[0] = int(0);
        let phi = SetFunction::from_values(GroundSet::lettered(n), induce_oracle(&alpha)).map_err(|e| e.to_string())?;
        ensure(choquet_violation(&phi).map_err(|e| e.to_string())?.is_none(), || format!("instance {k}: (i) fails"))?;
        ensure(order_two_oracle(phi.values()), || format!("instance {k}: brute-force alternating sums fail"))?;
        ensure(mobius_violation(&phi).is_none(), || format!("instance {k}: (iv) fails"))?;
        let u = union_matrix(&phi).map_err(|e| e.to_string())?;
        ensure(inertia(&u).positive <= 1, || format!("instance {k}: (v) fails"))?;
        ensure(induce_representation(&phi).map_err(|e| e.to_string())? == alpha, || format!("instance {k}: α does not round-trip"))?;
        let cert = certify_strong_submodular(&phi).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(cert.is_holds(), || format!("instance {k}: battery rejected"))?;
        ensure(window_batch(&phi).map_err(|e| e.to_string())?.is_holds(), || format!("instance {k}: window batch rejected"))?;
    }
    let mut disagreements = 0;
    for k in 0..100 {
        let phi = random::table(&mut rng, 1 + k % 4, -2, 3);
        let verdict = certify_strong_submodular(&phi).map_err(|e| format!("table {k}: {e}"))?.is_holds();
        if window_batch(&phi).map_err(|e| e.to_string())?.is_holds() != verdict {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, || format!("window batch disagreed on {disagreements} random tables"))?;
    let r = k3();
    let cert = certify_strong_submodular(&r).map_err(|e| e.to_string())?;
    let mobius = cert.witness("mobius").cloned();
    ensure(!cert.is_holds() && mobius == Some(submod_core::certificate::WitnessValue::Number(int(1))), || {
        format!("K3 witness {mobius:?}")
    })?;
    ensure(cert.witness("set") == Some(&submod_core::certificate::WitnessValue::Set(Subset::EMPTY)), || "K3 witness set".into())?;
    ensure(!window_batch(&r).map_err(|e| e.to_string())?.is_holds(), || "K3 passed the window batch".into())?;
    Ok("200 induced instances pass (i), (iv), (v), round trip and windows; K3 fails with Mφ(∅) = 1".into())
}

fn c6_dilworth() -> Outcome {
    let start = Instant::now();
    let graphs = [("K3", SmallGraph::complete(3)), ("K4", SmallGraph::complete(4)), ("K2,3", SmallGraph::complete_bipartite(2, 3))];
    for (name, g) in &graphs {
        let rel = graph_incidence(g.vertices, &g.edges).map_err(|e| e.to_string())?;
        let r = dilworth_truncation_rank(&rel).map_err(|e| format!("{name}: {e}"))?;
        for x in all_subsets(g.edges.len()) {
            let want = forest_rank(g.vertices, &g.edges, x);
            ensure(*r.value(x) == int(want), || format!("{name}: truncation {} vs forest rank {want} at {x}", r.value(x)))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("K3, K4, K2,3 truncations equal spanning-forest ranks, {elapsed:.2?}"))
}

fn c7_intersection() -> Outcome {
    let mut rng = random::rng(707);
    for k in 0..100 {
        let n = 2 + k % 5;
        let increasing = k % 2 == 0;
        let phi = random::submodular(&mut rng, n, increasing);
        let psi = random::submodular(&mut rng, n, increasing);
        let x = if k % 3 == 0 { phi.full() } else { Subset(rng.gen_range(0..1u64 << n)) };
        let out = intersection_value(&phi, &psi, x).map_err(|e| format!("instance {k}: {e}"))?;
        let brute = x.subsets().map(|y| phi.value(y) + psi.value(x.difference(y))).min().expect("nonempty");
        ensure(out.value == brute && out.witness.eval(x) == brute, || format!("instance {k}: value {} vs {brute}", out.value))?;
        for s in all_subsets(n) {
            let a = out.witness.eval(s);
            ensure(a <= *phi.value(s) && a <= *psi.value(s), || format!("instance {k}: witness exceeds at {s}"))?;
        }
        if increasing {
            ensure(out.witness.is_nonnegative(), || format!("instance {k}: negative witness"))?;
        }
    }
    Ok("100 pairs: witness below both, exact value at X, nonnegative when increasing".into())
}

fn c8_separation() -> Outcome {
    let mut rng = random::rng(808);
    for k in 0..100 {
        let n = 1 + k % 6;
        let core = random::charge_values(&mut rng, n, -3, 3);
        let offset = random::rational_in(&mut rng, -2, 2, 2);
        let up = random::submodular(&mut rng, n, true);
        let down = random::submodular(&mut rng, n, true);
        let g = GroundSet::lettered(n);
        let modular = |s: Subset| &offset + s.atoms().map(|i| core[i].clone()).sum::<Rational>();
        let phi = SetFunction::tabulate(g.clone(), |s| modular(s) + up.value(s)).map_err(|e| e.to_string())?;
        let xi = SetFunction::tabulate(g, |s| modular(s) - down.value(s)).map_err(|e| e.to_string())?;
        let mu = separate(&xi, &phi, None).map_err(|e| format!("instance {k}: {e}"))?;
        for s in all_subsets(n) {
            let m = mu.eval(s);
            ensure(*xi.value(s) <= m && m <= *phi.value(s), || format!("instance {k}: μ leaves the sandwich at {s}"))?;
        }
    }
    Ok("100 sandwiched pairs separated by a modular function".into())
}

fn hall_oracle(rel: &Relation, left: &[Rational], right: &[Rational]) -> bool {
    all_subsets(rel.left().len()).all(|s| {
        let lm: Rational = s.atoms().map(|i| left[i].clone()).sum();
        let im: Rational = rel.image(s).atoms().map(|j| right[j].clone()).sum();
        lm <= im
    })
}

fn c9_coupling() -> Outcome {
    let mut rng: SeededRng = random::rng(909);
    let (mut matrices, mut violations) = (0, 0);
    for k in 0..500 {
        let (l, r) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let p = rng.gen_range(0.2..0.9);
        let rel = random::relation(&mut rng, l, r, p);
        let left = random::distribution(&mut rng, l, 0.2);
        let right = random::distribution(&mut rng, r, 0.2);
        let hall = hall_oracle(&rel, &left, &right);
        match coupling_exists(&rel, &left, &right).map_err(|e| format!("instance {k}: {e}"))? {
            Coupling::Matrix(m) => {
                matrices += 1;
                ensure(hall, || format!("instance {k}: coupling returned although Hall fails"))?;
                for i in 0..l {
                    ensure(m[i].iter().cloned().sum::<Rational>() == left[i], || format!("instance {k}: row {i} marginal"))?;
                    for j in 0..r {
                        ensure(!m[i][j].is_negative() && (m[i][j].is_zero() || rel.related(i, j)), || format!("instance {k}: entry ({i},{j})"))?;
                    }
                }
                for j in 0..r {
                    ensure((0..l).map(|i| m[i][j].clone()).sum::<Rational>() == right[j], || format!("instance {k}: column {j} marginal"))?;
                }
            }
            Coupling::HallViolation { set, left_mass, image_mass } => {
                violations += 1;
                ensure(!hall, || format!("instance {k}: violation returned although Hall holds"))?;
                let lm: Rational = set.atoms().map(|i| left[i].clone()).sum();
                let im: Rational = rel.image(set).atoms().map(|j| right[j].clone()).sum();
                ensure(lm == left_mass && im == image_mass && lm > im, || format!("instance {k}: violation inequality"))?;
            }
        }
    }
    ensure(matrices > 0 && violations > 0, || "instances did not cover both outcomes".into())?;
    Ok(format!("500 instances: {matrices} couplings, {violations} Hall violations, all exact"))
}

fn c10_bjorner() -> Outcome {
    let mut rng = random::rng(1010);
    let (mut strong, mut weak) = (0, 0);
    for k in 0..100 {
        let n = 1 + k % 4;
        let phi = match k % 3 {
            0 => random::submodular(&mut rng, n, true),
            1 => {
                let rel = random::relation(&mut rng, n, n + 1, 0.5);
                gen_coverage(&rel, &random::vector(&mut rng, n + 1, 0, 3, 2)).map_err(|e| e.to_string())?
            }
            _ => gen_matroid_rank(GroundSet::lettered(n), &MatroidKind::Uniform { k: rng.gen_range(0..=n) }).map_err(|e| e.to_string())?,
        };
        let d = distance_table(&phi).map_err(|e| e.to_string())?;
        let size = 1usize << n;
        for x in 0..size {
            for y in 0..size {
                let (sx, sy) = (Subset(x as u64), Subset(y as u64));
                ensure(*d.get(sx, sy) == int(2) * phi.value(sx.union(sy)) - phi.value(sx) - phi.value(sy), || format!("instance {k}: entry"))?;
                for z in 0..size {
                    let sz = Subset(z as u64);
                    ensure(d.get(sx, sz) <= &(d.get(sx, sy) + d.get(sy, sz)), || format!("instance {k}: triangle ({x},{y},{z})"))?;
                }
            }
        }
        let verdict = mobius_oracle(phi.values()).iter().take(size - 1).all(|v| !v.is_positive());
        let neg = negative_type_check(&d.to_matrix()).map_err(|e| e.to_string())?.is_holds();
        ensure(neg == verdict, || format!("instance {k}: negative type {neg} vs strong submodularity {verdict}"))?;
        if verdict {
            strong += 1;
        } else {
            weak += 1;
        }
    }
    ensure(strong > 0 && weak > 0, || "instances did not cover both verdicts".into())?;
    Ok(format!("100 instances: triangle inequality exhaustive; negative type matches ({strong} strong, {weak} not)"))
}

fn c11_exchange() -> Outcome {
    let mut rng = random::rng(1111);
    let member = |rng: &mut SeededRng, phi: &SetFunction| -> Result<Charge, String> {
        let n = phi.n();
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
        let g = greedy_chain_charge(phi, &Chain::from_order(n, &order).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let atoms = g.atoms().iter().map(|a| a * ratio(rng.gen_range(0..=4), 4)).collect();
        Charge::new(phi.ground().clone(), atoms).map_err(|e| e.to_string())
    };
    for k in 0..100 {
        let n = 1 + k % 6;
        let phi = random::submodular(&mut rng, n, true);
        let alpha = member(&mut rng, &phi)?;
        let beta = member(&mut rng, &phi)?;
        let gamma = exchange_augment(&phi, &alpha, &beta).map_err(|e| format!("instance {k}: {e}"))?;
        for i in 0..n {
            let top = if alpha.atom(i) > beta.atom(i) { alpha.atom(i) } else { beta.atom(i) };
            ensure(alpha.atom(i) <= gamma.atom(i) && gamma.atom(i) <= top, || format!("instance {k}: atom {i} out of range"))?;
        }
        ensure(gamma.total() >= beta.total(), || format!("instance {k}: γ(J) < β(J)"))?;
        for s in all_subsets(n) {
            ensure(gamma.eval(s) <= *phi.value(s), || format!("instance {k}: γ exceeds φ at {s}"))?;
        }
    }
    Ok("100 instances: α ≤ γ ≤ α∨β, γ(J) ≥ β(J), γ ≤ φ".into())
}

fn c12_uncrossing() -> Outcome {
    let mut rng = random::rng(1212);
    let mut total_steps = 0;
    for k in 0..200 {
        let n = 2 + k % 5;
        let phi = random::submodular(&mut rng, n, k % 2 == 0);
        let terms: Vec<(Rational, Subset)> = (0..rng.gen_range(1..=6))
            .map(|_| (random::rational_in(&mut rng, 1, 4, 3), Subset(rng.gen_range(1..1u64 << n))))
            .collect();
        let mut f = vec![int(0); n];
        for (c, s) in &terms {
            for i in s.atoms() {
                f[i] += c;
            }
        }
        let start: Rational = terms.iter().map(|(c, s)| c * phi.value(*s)).sum();
        let out = uncross(&terms, &phi).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(out.initial_value == start, || format!("instance {k}: initial value"))?;
        let chain = &out.chain;
        for (i, (_, a)) in chain.terms.iter().enumerate() {
            for (_, b) in &chain.terms[i + 1..] {
                ensure(a.is_subset_of(*b) || b.is_subset_of(*a), || format!("instance {k}: result is not a chain"))?;
            }
        }
        ensure(chain.reconstruct().values() == f.as_slice(), || format!("instance {k}: represented function changed"))?;
        let mut last = start.clone();
        for step in &out.steps {
            ensure(step.value <= last, || format!("instance {k}: weighted sum increased"))?;
            last = step.value.clone();
        }
        let terminal = chain.evaluate(&phi);
        ensure(terminal == last, || format!("instance {k}: terminal value differs from the last audit step"))?;
        ensure(terminal == lovasz_oracle(&phi, &f), || format!("instance {k}: terminal value is not the Choquet integral"))?;
        total_steps += out.steps.len();
    }
    Ok(format!("200 families, {total_steps} audited steps, terminal values equal Choquet integrals"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("generator battery", c1_generators),
        ("choquet and greedy on K3", c2_choquet_k3),
        ("convexity equivalence", c3_convexity),
        ("Lindström–Wilf factorization and inertia", c4_lindstrom_wilf),
        ("strong submodularity equivalences", c5_strong_submodularity),
        ("Dilworth truncation", c6_dilworth),
        ("intersection of two functions", c7_intersection),
        ("separation", c8_separation),
        ("coupling dichotomy", c9_coupling),
        ("Björner geometry", c10_bjorner),
        ("exchange property", c11_exchange),
        ("uncrossing", c12_uncrossing),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [tolerance 0]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason} [tolerance 0]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
