//! Björner distance, roofs, Möbius matrices, the Lindström–Wilf factorization and strong
//! submodularity.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::certificate::{Certificate, WitnessValue};
use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::ground::{all_subsets, GroundSet, Subset};
use crate::linalg::{self, Inertia, Matrix};
use crate::rational::Rational;
use crate::relation::Relation;
use crate::setfn::SetFunction;

pub const DISTANCE_MAX_N: usize = 8;
pub const KIT_MAX_N: usize = 12;
pub const TRANSFORM_MAX_N: usize = 20;
pub const UNION_MAX_N: usize = 6;
pub const CHOQUET_MAX_N: usize = 6;
pub const MOBIUS_MAX_N: usize = 10;
pub const WINDOW_MAX_N: usize = 8;
pub const NEGATIVE_TYPE_MAX_SIDE: usize = 64;

fn limit(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::TooLarge { size: n, limit: max });
    }
    Ok(())
}

/// `d(X, Y) = 2φ(X ∪ Y) − φ(X) − φ(Y)` for every pair of subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, x: Subset, y: Subset) -> &Rational {
        &self.entries[x.index() * self.side() + y.index()]
    }

    pub fn to_matrix(&self) -> Matrix {
        let s = self.side();
        Matrix::from_fn(s, s, |i, j| self.entries[i * s + j].clone())
    }

    pub fn triangle_violation(&self) -> Option<(Subset, Subset, Subset)> {
        let n = self.n;
        for x in all_subsets(n) {
            for y in all_subsets(n) {
                let dxy = self.get(x, y);
                for z in all_subsets(n) {
                    if dxy + self.get(y, z) < *self.get(x, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// First `(X, Y, A)` with `d(X ∪ A, Y ∪ A) > d(X, Y)`.
    pub fn contraction_violation(&self) -> Option<(Subset, Subset, Subset)> {
        let n = self.n;
        for x in all_subsets(n) {
            for y in all_subsets(n) {
                for a in all_subsets(n) {
                    if self.get(x.union(a), y.union(a)) > self.get(x, y) {
                        return Some((x, y, a));
                    }
                }
            }
        }
        None
    }
}

fn require_increasing_submodular(phi: &SetFunction) -> Result<()> {
    phi.require_increasing()?;
    phi.require_submodular()
}

pub fn distance_table(phi: &SetFunction) -> Result<DistanceMatrix> {
    limit(phi.n(), DISTANCE_MAX_N)?;
    let n = phi.n();
    let side = 1usize << n;
    let mut entries = Vec::with_capacity(side * side);
    for x in all_subsets(n) {
        for y in all_subsets(n) {
            entries.push(Rational::from_integer(2.into()) * &phi[x.union(y)] - &phi[x] - &phi[y]);
        }
    }
    Ok(DistanceMatrix { n, entries })
}

/// Distance of an increasing submodular function, with the pseudometric axioms checked on small
/// ground sets.
pub fn bjorner_distance(phi: &SetFunction) -> Result<DistanceMatrix> {
    require_increasing_submodular(phi)?;
    let d = distance_table(phi)?;
    if phi.is_exact() {
        if phi.n() <= 5 && d.triangle_violation().is_some() {
            return Err(Error::Internal("Björner distance violates the triangle inequality".into()));
        }
        if phi.n() <= 4 && d.contraction_violation().is_some() {
            return Err(Error::Internal("union with a fixed set expanded a distance".into()));
        }
    }
    Ok(d)
}

/// Classes of sets at distance zero, represented by their largest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoofPartition {
    pub classes: Vec<Vec<Subset>>,
    pub tops: Vec<Subset>,
    pub values: Vec<Rational>,
    class_of: Vec<usize>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

impl RoofPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, s: Subset) -> usize {
        self.class_of[s.index()]
    }

    /// `R <= Q`: some member of `R` lies inside some member of `Q`.
    pub fn le(&self, r: usize, q: usize) -> bool {
        self.tops[r].is_subset_of(self.tops[q])
    }

    /// The flat of a roof: every set below its top.
    pub fn flat(&self, r: usize) -> Vec<Subset> {
        let mut v: Vec<Subset> = self.tops[r].subsets().collect();
        v.sort();
        v
    }
}

pub fn roofs(phi: &SetFunction) -> Result<RoofPartition> {
    require_increasing_submodular(phi)?;
    limit(phi.n(), DISTANCE_MAX_N)?;
    let n = phi.n();
    let size = 1usize << n;
    let mut uf = UnionFind::new(size);
    for x in all_subsets(n) {
        for y in all_subsets(n) {
            if y > x && phi[x] == phi[y] && phi[x] == phi[x.union(y)] {
                uf.union(x.index(), y.index());
            }
        }
    }
    let mut root_class: Vec<Option<usize>> = alloc::vec![None; size];
    let mut classes: Vec<Vec<Subset>> = Vec::new();
    let mut class_of = alloc::vec![0; size];
    for s in all_subsets(n) {
        let r = uf.find(s.index());
        let c = *root_class[r].get_or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(s);
        class_of[s.index()] = c;
    }
    let tops: Vec<Subset> = classes.iter().map(|c| c.iter().fold(Subset::EMPTY, |a, &s| a.union(s))).collect();
    if (0..classes.len()).any(|c| class_of[tops[c].index()] != c) {
        return Err(Error::Internal("roof is not closed under union".into()));
    }
    let values: Vec<Rational> = tops.iter().map(|&t| phi[t].clone()).collect();
    let k = classes.len();
    let join: Vec<Vec<usize>> = (0..k).map(|r| (0..k).map(|q| class_of[tops[r].union(tops[q]).index()]).collect()).collect();
    let meet: Vec<Vec<usize>> =
        (0..k).map(|r| (0..k).map(|q| class_of[tops[r].intersection(tops[q]).index()]).collect()).collect();
    let out = RoofPartition { classes, tops, values, class_of, join, meet };
    if n <= 5 {
        check_roof_lattice(&out)?;
    }
    Ok(out)
}

/// Join independent of representatives, and meet the largest common lower bound.
fn check_roof_lattice(p: &RoofPartition) -> Result<()> {
    let k = p.len();
    for r in 0..k {
        for q in 0..k {
            for &a in &p.classes[r] {
                for &b in &p.classes[q] {
                    if p.class_of(a.union(b)) != p.join[r][q] {
                        return Err(Error::Internal("roof join depends on representatives".into()));
                    }
                }
            }
            let m = p.meet[r][q];
            if !p.le(m, r) || !p.le(m, q) || (0..k).any(|h| p.le(h, r) && p.le(h, q) && !p.le(h, m)) {
                return Err(Error::Internal("roof meet is not the greatest lower bound".into()));
            }
        }
    }
    Ok(())
}

/// `Σ_{Y ⊇ X} v(Y)`.
pub fn zeta_upper(v: &[Rational]) -> Result<Vec<Rational>> {
    butterfly(v, true, false)
}

/// `Σ_{Y ⊆ X} v(Y)`.
pub fn zeta_lower(v: &[Rational]) -> Result<Vec<Rational>> {
    butterfly(v, false, false)
}

/// `Σ_{Y ⊇ X} (−1)^{|Y \ X|} v(Y)`.
pub fn mobius_upper(v: &[Rational]) -> Result<Vec<Rational>> {
    butterfly(v, true, true)
}

/// `Σ_{Y ⊆ X} (−1)^{|X \ Y|} v(Y)`.
pub fn mobius_lower(v: &[Rational]) -> Result<Vec<Rational>> {
    butterfly(v, false, true)
}

fn butterfly(v: &[Rational], upper: bool, invert: bool) -> Result<Vec<Rational>> {
    if !v.len().is_power_of_two() {
        return Err(Error::ShapeError(alloc::format!("{} values is not a power of two", v.len())));
    }
    let n = v.len().trailing_zeros() as usize;
    limit(n, TRANSFORM_MAX_N)?;
    let mut out = v.to_vec();
    for i in 0..n {
        let bit = 1usize << i;
        for m in 0..out.len() {
            if m & bit == 0 {
                let (lo, hi) = (m, m | bit);
                let (dst, src) = if upper { (lo, hi) } else { (hi, lo) };
                let s = out[src].clone();
                if invert {
                    out[dst] -= s;
                } else {
                    out[dst] += s;
                }
            }
        }
    }
    Ok(out)
}

/// Dense `2^V × 2^V` matrices `Z`, `M`, `C`, `P`, `N` and `P⁻¹` with small integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusKit {
    n: usize,
    z: Vec<i8>,
    m: Vec<i8>,
    c: Vec<i8>,
    p: Vec<i8>,
    neg: Vec<i8>,
    p_inv: Vec<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KitMatrix {
    Z,
    M,
    C,
    P,
    N,
    PInv,
}

pub fn mobius_kit(ground: &GroundSet) -> Result<MobiusKit> {
    let n = ground.len();
    limit(n, KIT_MAX_N)?;
    let side = 1usize << n;
    let full = Subset::full(n);
    let build = |f: &dyn Fn(Subset, Subset) -> i8| -> Vec<i8> {
        let mut v = Vec::with_capacity(side * side);
        for x in all_subsets(n) {
            for y in all_subsets(n) {
                v.push(f(x, y));
            }
        }
        v
    };
    let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    let mobius = |x: Subset, y: Subset| if x.is_subset_of(y) { sign(y.difference(x).len()) } else { 0 };
    let neg = |x: Subset, y: Subset| -mobius(x.complement(n), y);
    Ok(MobiusKit {
        n,
        z: build(&|x, y| x.is_subset_of(y) as i8),
        m: build(&mobius),
        c: build(&|x, y| (x.complement(n) == y) as i8),
        p: build(&|x, y| !x.is_disjoint(y) as i8),
        neg: build(&neg),
        p_inv: build(&|x, y| if (x.is_empty() && y == full) || (y.is_empty() && x == full) { 0 } else { neg(x, y) }),
    })
}

impl MobiusKit {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        1 << self.n
    }

    fn data(&self, which: KitMatrix) -> &[i8] {
        match which {
            KitMatrix::Z => &self.z,
            KitMatrix::M => &self.m,
            KitMatrix::C => &self.c,
            KitMatrix::P => &self.p,
            KitMatrix::N => &self.neg,
            KitMatrix::PInv => &self.p_inv,
        }
    }

    pub fn entry(&self, which: KitMatrix, x: Subset, y: Subset) -> i8 {
        self.data(which)[x.index() * self.side() + y.index()]
    }

    pub fn to_matrix(&self, which: KitMatrix) -> Matrix {
        let s = self.side();
        let d = self.data(which);
        Matrix::from_fn(s, s, |i, j| Rational::from_integer(d[i * s + j].into()))
    }

    pub fn apply(&self, which: KitMatrix, v: &[Rational]) -> Vec<Rational> {
        let s = self.side();
        let d = self.data(which);
        (0..s)
            .map(|i| {
                d[i * s..(i + 1) * s].iter().zip(v).filter(|(e, _)| **e != 0).map(|(e, x)| Rational::from_integer((*e).into()) * x).sum()
            })
            .collect()
    }

    fn product(&self, a: KitMatrix, b: KitMatrix) -> Vec<i32> {
        let s = self.side();
        let (a, b) = (self.data(a), self.data(b));
        let mut out = alloc::vec![0i32; s * s];
        for i in 0..s {
            for k in 0..s {
                let x = a[i * s + k] as i32;
                if x != 0 {
                    for j in 0..s {
                        out[i * s + j] += x * b[k * s + j] as i32;
                    }
                }
            }
        }
        out
    }

    /// `MZ = I`, `P = J − ZC`, `N = −CM`, and `P P⁻¹ = I` except a zero at `(∅, ∅)`.
    pub fn check_identities(&self) -> bool {
        let s = self.side();
        let id = |i: usize, j: usize| (i == j) as i32;
        let mz = self.product(KitMatrix::M, KitMatrix::Z);
        let zc = self.product(KitMatrix::Z, KitMatrix::C);
        let cm = self.product(KitMatrix::C, KitMatrix::M);
        let pp = self.product(KitMatrix::P, KitMatrix::PInv);
        (0..s).all(|i| {
            (0..s).all(|j| {
                let k = i * s + j;
                mz[k] == id(i, j)
                    && self.p[k] as i32 == 1 - zc[k]
                    && self.neg[k] as i32 == -cm[k]
                    && pp[k] == if i == 0 && j == 0 { 0 } else { id(i, j) }
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LindstromWilf {
    /// `U_{X,Y} = φ(X ∪ Y)`.
    pub union: Matrix,
    /// Upper Möbius inverse `Mφ`.
    pub mobius: Vec<Rational>,
    pub inertia: Inertia,
    /// Sign counts of `Mφ`.
    pub census: Inertia,
}

pub fn union_matrix(phi: &SetFunction) -> Result<Matrix> {
    limit(phi.n(), UNION_MAX_N)?;
    let s = 1usize << phi.n();
    Ok(Matrix::from_fn(s, s, |i, j| phi[Subset((i | j) as u64)].clone()))
}

pub fn sign_census(v: &[Rational]) -> Inertia {
    Inertia {
        positive: v.iter().filter(|x| x.is_positive()).count(),
        negative: v.iter().filter(|x| x.is_negative()).count(),
        zero: v.iter().filter(|x| x.is_zero()).count(),
    }
}

/// Checks `U = Z D_{Mφ} Zᵀ` exactly and that the inertia of `U` is the sign census of `Mφ`.
pub fn lindstrom_wilf(phi: &SetFunction) -> Result<LindstromWilf> {
    let union = union_matrix(phi)?;
    let mobius = mobius_upper(phi.values())?;
    let s = union.rows();
    let z = Matrix::from_fn(s, s, |i, j| if i & j == i { Rational::one() } else { Rational::zero() });
    let d = Matrix::from_fn(s, s, |i, j| if i == j { mobius[i].clone() } else { Rational::zero() });
    if z.mul(&d).mul(&z.transpose()) != union {
        return Err(Error::Internal("union matrix factorization failed".into()));
    }
    let inertia = linalg::inertia(&union);
    let census = sign_census(&mobius);
    if inertia != census {
        return Err(Error::Internal("inertia differs from the Möbius sign census".into()));
    }
    Ok(LindstromWilf { union, mobius, inertia, census })
}

/// `α = P⁻¹φ`, i.e. `α(X) = −Mφ(X^c)` for `X ≠ ∅`, with the round trip
/// `φ(X) = Σ_{Y ∩ X ≠ ∅} α(Y)` checked.
pub fn induce_representation(phi: &SetFunction) -> Result<Vec<Rational>> {
    phi.require_normalized()?;
    let n = phi.n();
    let mut values = phi.values().to_vec();
    values[0] = Rational::zero();
    let m = mobius_upper(&values)?;
    let alpha: Vec<Rational> =
        all_subsets(n).map(|x| if x.is_empty() { Rational::zero() } else { -m[x.complement(n).index()].clone() }).collect();
    if induced(&alpha)? != values {
        return Err(Error::Internal("induced representation does not round-trip".into()));
    }
    Ok(alpha)
}

/// `(Pα)(X) = Σ_{Y ∩ X ≠ ∅} α(Y)`.
pub fn induced(alpha: &[Rational]) -> Result<Vec<Rational>> {
    let mut a = alpha.to_vec();
    if let Some(first) = a.first_mut() {
        *first = Rational::zero();
    }
    let total: Rational = a.iter().cloned().sum();
    let below = zeta_lower(&a)?;
    let mask = a.len() - 1;
    Ok((0..a.len()).map(|x| &total - &below[mask & !x]).collect())
}

/// `α(R(X))` for a charge given by its atom weights on the right side of `rel`.
pub fn induce_eval(weights: &[Rational], rel: &Relation, x: Subset) -> Result<Rational> {
    if weights.len() != rel.right().len() {
        return Err(Error::ShapeError(alloc::format!("{} weights for {} right atoms", weights.len(), rel.right().len())));
    }
    Ok(rel.image(x).atoms().map(|j| weights[j].clone()).sum())
}

fn image_under(map: &[usize], y: Subset) -> Subset {
    Subset::from_atoms(y.atoms().map(|i| map[i]))
}

/// `α₁(X) = Σ_{Ψ(Y) = X} α(Y)` for a surjection `Ψ: V → U`; the result is checked to induce the
/// quotient of `Pα`.
pub fn quotient_pushforward(alpha: &[Rational], map: &[usize], u: usize) -> Result<Vec<Rational>> {
    let n = map.len();
    if alpha.len() != 1usize << n {
        return Err(Error::ShapeError("setfunction length does not match the map".into()));
    }
    limit(u, TRANSFORM_MAX_N)?;
    if map.iter().any(|&t| t >= u) || (0..u).any(|t| !map.contains(&t)) {
        return Err(Error::NotSurjective);
    }
    let mut out = alloc::vec![Rational::zero(); 1usize << u];
    for y in all_subsets(n) {
        out[image_under(map, y).index()] += &alpha[y.index()];
    }
    let phi = induced(alpha)?;
    let preimage = |x: Subset| Subset::from_atoms((0..n).filter(|&i| x.contains(map[i])));
    let quotient: Vec<Rational> = all_subsets(u).map(|x| phi[preimage(x).index()].clone()).collect();
    if induced(&out)? != quotient {
        return Err(Error::Internal("pushforward does not commute with inducing".into()));
    }
    Ok(out)
}

/// A violated alternating inequality: `Σ_{K} (−1)^{|K|} φ(A₀ ∪ A_K) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoquetWitness {
    pub base: Subset,
    pub family: Vec<Subset>,
    pub value: Rational,
}

trait Cell: Clone + PartialOrd {
    fn minus(&self, o: &Self) -> Self;
}

impl Cell for i128 {
    fn minus(&self, o: &i128) -> i128 {
        self - o
    }
}

impl Cell for Rational {
    fn minus(&self, o: &Rational) -> Rational {
        self - o
    }
}

/// Depth-first search over antichains of nonempty sets; families with comparable members reduce to
/// smaller ones. `bufs[k]` holds `F_k(B) = F_{k−1}(B) − F_{k−1}(B ∪ A_k)`.
fn antichain_search<T: Cell>(n: usize, bufs: &mut Vec<Vec<T>>, family: &mut Vec<Subset>, start: u64, slack: &T) -> Option<Subset> {
    let side = 1u64 << n;
    let depth = family.len();
    for a in start..side {
        let a = Subset(a);
        if family.iter().any(|&f| f.comparable(a)) {
            continue;
        }
        if bufs.len() <= depth + 1 {
            bufs.push(bufs[0].clone());
        }
        let (prev, next) = bufs.split_at_mut(depth + 1);
        let (prev, next) = (&prev[depth], &mut next[0]);
        for b in 0..side as usize {
            next[b] = prev[b].minus(&prev[b | a.index()]);
        }
        family.push(a);
        if let Some(b) = next.iter().position(|v| v > slack) {
            return Some(Subset(b as u64));
        }
        if let Some(b) = antichain_search(n, bufs, family, a.mask() + 1, slack) {
            return Some(b);
        }
        family.pop();
    }
    None
}

/// Integer image of the table when all scaled values are small, with the common denominator.
fn integer_table(values: &[Rational]) -> Option<(Vec<i128>, BigInt)> {
    let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let bound = BigInt::one() << 60u32;
    let mut out = Vec::with_capacity(values.len());
    for v in values {
        let s = v.numer() * (&den / v.denom());
        if s.abs() >= bound {
            return None;
        }
        out.push(s.to_i128()?);
    }
    Some((out, den))
}

/// Exhaustive check of the alternating inequalities of every order.
pub fn choquet_violation(phi: &SetFunction) -> Result<Option<ChoquetWitness>> {
    limit(phi.n(), CHOQUET_MAX_N)?;
    let n = phi.n();
    let mut family = Vec::new();
    let tol = phi.tolerance();
    let found = match (tol.is_zero(), integer_table(phi.values())) {
        (true, Some((ints, _))) => antichain_search(n, &mut alloc::vec![ints], &mut family, 1, &0i128),
        _ => antichain_search(n, &mut alloc::vec![phi.values().to_vec()], &mut family, 1, &tol),
    };
    Ok(found.map(|base| {
        let value = alternating_sum(phi, base, &family);
        ChoquetWitness { base, family, value }
    }))
}

/// `Σ_{K ⊆ family} (−1)^{|K|} φ(A₀ ∪ A_K)`.
pub fn alternating_sum(phi: &SetFunction, base: Subset, family: &[Subset]) -> Rational {
    let mut sum = Rational::zero();
    for k in 0u64..1 << family.len() {
        let mut s = base;
        for (i, a) in family.iter().enumerate() {
            if k >> i & 1 == 1 {
                s = s.union(*a);
            }
        }
        if k.count_ones() % 2 == 0 {
            sum += &phi[s];
        } else {
            sum -= &phi[s];
        }
    }
    sum
}

/// `Mφ(X) <= 0` for every `X ≠ V` (up to the numeric tolerance).
pub fn is_strongly_submodular(phi: &SetFunction) -> bool {
    mobius_violation(phi).is_none()
}

/// First `X ≠ V` (by mask) with `Mφ(X) > 0`, and the value.
pub fn mobius_violation(phi: &SetFunction) -> Option<(Subset, Rational)> {
    let m = mobius_upper(phi.values()).ok()?;
    let full = phi.full();
    all_subsets(phi.n()).filter(|&x| x != full).find(|&x| !phi.le(&m[x.index()], &Rational::zero())).map(|x| (x, m[x.index()].clone()))
}

/// The equivalence battery: alternating inequalities (n <= 6), Möbius signs, inertia of the union
/// matrix (n <= 6) and nonnegativity of the induced representation. Exact inputs must give one
/// verdict across all conditions.
pub fn certify_strong_submodular(phi: &SetFunction) -> Result<Certificate> {
    phi.require_normalized()?;
    limit(phi.n(), MOBIUS_MAX_N)?;
    let n = phi.n();
    let mut checked: Vec<&str> = Vec::new();
    let choquet = if n <= CHOQUET_MAX_N {
        checked.push("i");
        Some(choquet_violation(phi)?)
    } else {
        None
    };
    checked.push("iv");
    let mobius = mobius_violation(phi);
    let union = if n <= UNION_MAX_N {
        checked.push("v");
        let u = union_matrix(phi)?;
        let cong = linalg::diagonalize(&u);
        Some((cong.inertia(), cong.positive_direction(), u))
    } else {
        None
    };
    checked.push("ii");
    let alpha = induce_representation(phi)?;
    let alpha_bad = all_subsets(n).find(|&x| !phi.le(&Rational::zero(), &alpha[x.index()]));

    let holds = mobius.is_none();
    if phi.is_exact() {
        let mut verdicts = alloc::vec![("iv", holds), ("ii", alpha_bad.is_none())];
        if let Some(c) = &choquet {
            verdicts.push(("i", c.is_none()));
        }
        if let Some((inertia, _, _)) = &union {
            // the single positive Möbius value must sit at V, i.e. φ(V) > 0 unless φ vanishes
            let top_positive = phi[phi.full()].is_positive() || phi.values().iter().all(Zero::is_zero);
            verdicts.push(("v", inertia.positive <= 1 && top_positive));
        }
        if let Some((name, _)) = verdicts.iter().find(|(_, v)| *v != holds) {
            return Err(Error::Internal(alloc::format!("strong submodularity condition ({name}) disagrees with (iv)")));
        }
    }
    let mut cert = if holds {
        Certificate::holds("strongly_submodular", None, 1)
    } else {
        Certificate::violated("strongly_submodular", None, 1)
    };
    cert = cert.with("conditions", WitnessValue::Text(checked.join(",")));
    if let Some((x, v)) = mobius {
        cert = cert.with("set", WitnessValue::Set(x)).with("mobius", WitnessValue::Number(v));
        if let Some(Some(w)) = choquet {
            let mut sets = alloc::vec![w.base];
            sets.extend(w.family);
            cert = cert.with("tuple", WitnessValue::Sets(sets)).with("alternating_sum", WitnessValue::Number(w.value));
        }
        if let Some((inertia, Some(dir), u)) = union {
            cert = cert
                .with("positive_eigenvalues", WitnessValue::Number(Rational::from_integer(inertia.positive.into())))
                .with("form", WitnessValue::Number(u.quadratic_form(&dir)))
                .with("direction", WitnessValue::Vector(dir));
        }
    }
    Ok(cert)
}

/// Whether `xᵀ M x <= 0` whenever `Σ x = 0`, via the basis `e_i − e_{i+1}` of that hyperplane.
pub fn negative_type_check(m: &Matrix) -> Result<Certificate> {
    if !m.is_square() || !m.is_symmetric() {
        return Err(Error::ShapeError("negative type needs a symmetric matrix".into()));
    }
    let s = m.rows();
    limit(s, NEGATIVE_TYPE_MAX_SIDE)?;
    if s <= 1 {
        return Ok(Certificate::holds("negative_type", None, 1));
    }
    let g = Matrix::from_fn(s - 1, s - 1, |i, j| &m[(i, j)] - &m[(i, j + 1)] - &m[(i + 1, j)] + &m[(i + 1, j + 1)]);
    let cong = linalg::diagonalize(&g);
    match cong.positive_direction() {
        None => Ok(Certificate::holds("negative_type", None, 1)),
        Some(v) => {
            let x: Vec<Rational> = (0..s)
                .map(|k| {
                    let cur = if k < s - 1 { v[k].clone() } else { Rational::zero() };
                    let prev = if k > 0 { v[k - 1].clone() } else { Rational::zero() };
                    cur - prev
                })
                .collect();
            let form = m.quadratic_form(&x);
            if !form.is_positive() || !x.iter().cloned().sum::<Rational>().is_zero() {
                return Err(Error::Internal("negative type witness failed verification".into()));
            }
            Ok(Certificate::violated("negative_type", None, 1)
                .with("form", WitnessValue::Number(form))
                .with("direction", WitnessValue::Vector(x)))
        }
    }
}

/// `φ̄(A, B) = Σ_{X ⊆ B} (−1)^{|X|} φ(A ∪ X)`.
pub fn window_check<F: Fn(Subset) -> Rational>(phi: F, a: Subset, b: Subset) -> Result<Rational> {
    if b.is_empty() {
        return Err(Error::EmptyWindow);
    }
    limit(b.len(), TRANSFORM_MAX_N)?;
    let mut sum = Rational::zero();
    for x in b.subsets() {
        let v = phi(a.union(x));
        if x.len() % 2 == 0 {
            sum += v;
        } else {
            sum -= v;
        }
    }
    Ok(sum)
}

/// `φ̄(A, B) <= 0` over every disjoint pair with `B ≠ ∅`; first violation by mask order.
pub fn window_batch(phi: &SetFunction) -> Result<Certificate> {
    limit(phi.n(), WINDOW_MAX_N)?;
    let n = phi.n();
    let mut count = 0;
    for a in all_subsets(n) {
        let mut bs: Vec<Subset> = a.complement(n).subsets().filter(|b| !b.is_empty()).collect();
        bs.sort();
        for b in bs {
            count += 1;
            let v = window_check(|s| phi[s].clone(), a, b)?;
            if !phi.le(&v, &Rational::zero()) {
                return Ok(Certificate::violated("windows_nonpositive", None, count)
                    .with("base", WitnessValue::Set(a))
                    .with("window", WitnessValue::Set(b))
                    .with("value", WitnessValue::Number(v)));
            }
        }
    }
    Ok(Certificate::holds("windows_nonpositive", None, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_matroid_rank, MatroidKind};
    use crate::rational::int;

    fn k3() -> SetFunction {
        let g = GroundSet::new(&["e1", "e2", "e3"]).unwrap();
        gen_matroid_rank(g, &MatroidKind::Graphic { vertices: 3, edges: alloc::vec![(0, 1), (1, 2), (0, 2)] }).unwrap()
    }

    fn nonempty(n: usize) -> SetFunction {
        SetFunction::tabulate(GroundSet::lettered(n), |s| if s.is_empty() { int(0) } else { int(1) }).unwrap()
    }

    #[test]
    fn distances_of_k3() {
        let d = bjorner_distance(&k3()).unwrap();
        assert_eq!(d.get(Subset(0b001), Subset(0b010)), &int(2));
        assert_eq!(d.get(Subset(0b001), Subset(0b011)), &int(1));
    }

    #[test]
    fn roofs_of_k3_and_uniform_zero() {
        let r = roofs(&k3()).unwrap();
        let c = r.class_of(Subset(0b011));
        assert_eq!(r.classes[c], alloc::vec![Subset(0b011), Subset(0b101), Subset(0b110), Subset(0b111)]);
        assert_eq!(r.len(), 5);
        let zero = gen_matroid_rank(GroundSet::lettered(3), &MatroidKind::Uniform { k: 0 }).unwrap();
        assert_eq!(roofs(&zero).unwrap().len(), 1);
    }

    #[test]
    fn kit_identities() {
        for n in 0..4 {
            assert!(mobius_kit(&GroundSet::lettered(n)).unwrap().check_identities());
        }
    }

    #[test]
    fn mobius_of_nonempty_indicator() {
        let m = mobius_upper(nonempty(2).values()).unwrap();
        assert_eq!((m[0].clone(), m[1].clone(), m[3].clone()), (int(-1), int(0), int(1)));
        let lw = lindstrom_wilf(&nonempty(2)).unwrap();
        assert_eq!(lw.inertia, Inertia { positive: 1, negative: 1, zero: 2 });
        let alpha = induce_representation(&nonempty(2)).unwrap();
        assert_eq!(alpha, alloc::vec![int(0), int(0), int(0), int(1)]);
    }

    #[test]
    fn k3_fails_strong_submodularity() {
        let c = certify_strong_submodular(&k3()).unwrap();
        assert!(!c.is_holds());
        assert_eq!(c.witness("set"), Some(&WitnessValue::Set(Subset::EMPTY)));
        assert_eq!(c.witness("mobius"), Some(&WitnessValue::Number(int(1))));
        let u = union_matrix(&k3()).unwrap();
        assert!(!negative_type_check(&u).unwrap().is_holds());
        assert_eq!(window_check(|s| k3()[s].clone(), Subset::EMPTY, Subset(0b111)).unwrap(), int(1));
    }

    #[test]
    fn one_positive_eigenvalue_is_not_enough() {
        let phi = SetFunction::from_ints(GroundSet::lettered(1), &[0, -1]).unwrap();
        assert_eq!(linalg::inertia(&union_matrix(&phi).unwrap()).positive, 1);
        let c = certify_strong_submodular(&phi).unwrap();
        assert!(!c.is_holds());
        assert_eq!(c.witness("mobius"), Some(&WitnessValue::Number(int(1))));
    }

    #[test]
    fn two_point_negative_type() {
        for d in [-1, 0, 3] {
            let m = Matrix::from_rows(&[alloc::vec![int(0), int(d)], alloc::vec![int(d), int(0)]]).unwrap();
            assert_eq!(negative_type_check(&m).unwrap().is_holds(), d >= 0);
        }
    }

    #[test]
    fn pushforward_collapsing_two_atoms() {
        let alpha = alloc::vec![int(0), int(2), int(3), int(5)];
        assert_eq!(quotient_pushforward(&alpha, &[0, 0], 1).unwrap(), alloc::vec![int(0), int(10)]);
        assert_eq!(quotient_pushforward(&alpha, &[0, 0], 2), Err(Error::NotSurjective));
    }

    #[test]
    fn empty_window_is_an_error() {
        assert_eq!(window_check(|_| int(0), Subset::EMPTY, Subset::EMPTY), Err(Error::EmptyWindow));
    }
}
