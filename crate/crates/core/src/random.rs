//! Seeded random instances for property checks and self-tests.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ground::{GroundSet, Subset};
use crate::rational::{self, Rational};
use crate::relation::Relation;
use crate::setfn::{Flags, SetFunction};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational `k/den` with `k` uniform in `[lo*den, hi*den]`.
pub fn rational_in<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    rational::ratio(rng.gen_range(lo * den..=hi * den), den)
}

pub fn vector<R: Rng>(rng: &mut R, len: usize, lo: i64, hi: i64, den: i64) -> Vec<Rational> {
    (0..len).map(|_| rational_in(rng, lo, hi, den)).collect()
}

/// Arbitrary table with `φ(∅) = 0`.
pub fn table<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> SetFunction {
    SetFunction::tabulate(GroundSet::lettered(n), |s| if s.is_empty() { rational::zero() } else { rational::int(rng.gen_range(lo..=hi)) })
        .expect("small ground set")
}

/// Random relation between `left` and `right` atoms with edge probability `p`.
pub fn relation<R: Rng>(rng: &mut R, left: usize, right: usize, p: f64) -> Relation {
    let rows = (0..left).map(|_| Subset::from_atoms((0..right).filter(|_| rng.gen_bool(p)))).collect();
    Relation::new(GroundSet::lettered(left), GroundSet::numbered(right), rows).expect("rows in range")
}

/// Nonnegative combination of coverage functions, concave functions of measures and a cut:
/// submodular and normalized by construction; increasing when `increasing` is set (the cut is dropped).
pub fn submodular<R: Rng>(rng: &mut R, n: usize, increasing: bool) -> SetFunction {
    let g = GroundSet::lettered(n);
    let rel = relation(rng, n, n + 2, 0.4);
    let cover: Vec<Rational> = vector(rng, n + 2, 0, 3, 1);
    let w: Vec<Rational> = vector(rng, n, 0, 3, 1);
    let cap = rational::int(rng.gen_range(1..=(2 * n as i64).max(1)));
    let mut cut_w: Vec<(usize, usize, Rational)> = Vec::new();
    if !increasing {
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    cut_w.push((i, j, rational::int(rng.gen_range(1..=2))));
                }
            }
        }
    }
    let modular: Vec<Rational> = if increasing { alloc::vec![rational::zero(); n] } else { vector(rng, n, -2, 2, 1) };
    let f = SetFunction::tabulate(g, |s| {
        let cov: Rational = rel.image(s).atoms().map(|j| cover[j].clone()).sum();
        let m: Rational = s.atoms().map(|i| w[i].clone()).sum();
        let conc = rational::min(&m, &cap);
        let cut: Rational = cut_w.iter().filter(|(i, j, _)| s.contains(*i) != s.contains(*j)).map(|(_, _, c)| c.clone()).sum();
        let lin: Rational = s.atoms().map(|i| modular[i].clone()).sum();
        cov + conc + cut + lin
    })
    .expect("small ground set");
    let flags = if increasing { Flags::SUBMODULAR | Flags::INCREASING | Flags::NORMALIZED } else { Flags::SUBMODULAR | Flags::NORMALIZED };
    f.with_flags(flags)
}

/// Negated submodular instance.
pub fn supermodular<R: Rng>(rng: &mut R, n: usize) -> SetFunction {
    submodular(rng, n, false).neg().with_flags(Flags::SUPERMODULAR | Flags::NORMALIZED)
}

/// Random modular charge on the atoms.
pub fn charge_values<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Vec<Rational> {
    vector(rng, n, lo, hi, 2)
}

/// A pair of functions that are nondecreasing along one common random ordering of the atoms.
pub fn comonotonic_pair<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> (Vec<Rational>, Vec<Rational>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut a = vector(rng, n, lo, hi, 2);
    let mut b = vector(rng, n, lo, hi, 2);
    a.sort();
    b.sort();
    let mut f = alloc::vec![rational::zero(); n];
    let mut g = alloc::vec![rational::zero(); n];
    for (rank, &atom) in order.iter().enumerate() {
        f[atom] = a[rank].clone();
        g[atom] = b[rank].clone();
    }
    (f, g)
}

/// Random probability vector with small denominators.
pub fn distribution<R: Rng>(rng: &mut R, len: usize, zero_prob: f64) -> Vec<Rational> {
    let raw: Vec<i64> = (0..len).map(|_| if rng.gen_bool(zero_prob) { 0 } else { rng.gen_range(1..=4) }).collect();
    let total: i64 = raw.iter().sum();
    if total == 0 {
        let mut v = alloc::vec![rational::zero(); len];
        if len > 0 {
            v[rng.gen_range(0..len)] = rational::int(1);
        }
        return v;
    }
    raw.iter().map(|&r| rational::ratio(r, total)).collect()
}
