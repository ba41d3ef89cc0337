//! A gallery of setfunction generators: cuts, coverage, matroid ranks, concave functions of a
//! measure, entropy, log-determinants, hitting probabilities, ideal indicators and homomorphism counts.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};
use crate::relation::Relation;
use crate::setfn::{Flags, NumericMode, SetFunction};

/// Tolerance carried by float-native generators.
pub fn float_tolerance() -> Rational {
    rational::ratio(1, 1_000_000_000)
}

pub fn make_table_function(ground: GroundSet, entries: &[(Subset, Rational)]) -> Result<SetFunction> {
    ground.check_tabulable(crate::ground::DEFAULT_MAX_N)?;
    let size = 1usize << ground.len();
    let mut values: Vec<Option<Rational>> = alloc::vec![None; size];
    for (s, v) in entries {
        if !s.is_subset_of(ground.full()) {
            return Err(Error::ShapeError(alloc::format!("{s} is not a subset of the ground set")));
        }
        if values[s.index()].replace(v.clone()).is_some() {
            return Err(Error::DuplicateEntry(*s));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(m, v)| v.ok_or(Error::IncompleteTable(Subset(m as u64))))
        .collect::<Result<Vec<_>>>()?;
    SetFunction::from_values(ground, values)
}

/// Cut capacity of an undirected graph whose vertices are the atoms.
pub fn gen_cut(ground: GroundSet, edges: &[(usize, usize, Rational)]) -> Result<SetFunction> {
    let n = ground.len();
    for (k, (u, v, w)) in edges.iter().enumerate() {
        if *u >= n || *v >= n {
            return Err(Error::ShapeError(alloc::format!("edge {k} leaves the ground set")));
        }
        if w.is_negative() {
            return Err(Error::NegativeCapacity(k));
        }
    }
    let f = SetFunction::tabulate(ground, |x| {
        edges.iter().filter(|(u, v, _)| x.contains(*u) != x.contains(*v)).map(|(_, _, w)| w.clone()).sum()
    })?;
    Ok(f.with_flags(Flags::SUBMODULAR | Flags::NORMALIZED))
}

/// Total weight of the image `R(X)`.
pub fn gen_coverage(rel: &Relation, weights: &[Rational]) -> Result<SetFunction> {
    if weights.len() != rel.right().len() {
        return Err(Error::ShapeError("one weight per right atom is required".into()));
    }
    if let Some(k) = weights.iter().position(Signed::is_negative) {
        return Err(Error::NegativeCapacity(k));
    }
    let f = SetFunction::tabulate(rel.left().clone(), |x| rel.image(x).atoms().map(|w| weights[w].clone()).sum())?;
    Ok(f.with_flags(Flags::SUBMODULAR | Flags::INCREASING | Flags::NORMALIZED | Flags::STRONGLY_SUBMODULAR))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidKind {
    /// Atom `i` is the edge `edges[i]` of a multigraph on `vertices` vertices.
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    /// Atom `i` is the column `columns[i]`.
    Linear { columns: Vec<Vec<Rational>> },
    Uniform { k: usize },
}

pub fn gen_matroid_rank(ground: GroundSet, kind: &MatroidKind) -> Result<SetFunction> {
    let n = ground.len();
    let f = match kind {
        MatroidKind::Graphic { vertices, edges } => {
            if edges.len() != n || edges.iter().any(|&(u, v)| u >= *vertices || v >= *vertices) {
                return Err(Error::ShapeError("graphic matroid needs one in-range edge per atom".into()));
            }
            SetFunction::tabulate(ground, |x| {
                let mut uf = UnionFind::new(*vertices);
                let r = x.atoms().filter(|&e| uf.union(edges[e].0, edges[e].1)).count();
                rational::int(r as i64)
            })?
        }
        MatroidKind::Linear { columns } => {
            let dim = columns.first().map_or(0, Vec::len);
            if columns.len() != n || columns.iter().any(|c| c.len() != dim) {
                return Err(Error::ShapeError("linear matroid needs one column of common length per atom".into()));
            }
            SetFunction::tabulate(ground, |x| {
                let cols: Vec<usize> = x.atoms().collect();
                let m = Matrix::from_fn(dim, cols.len(), |i, j| columns[cols[j]][i].clone());
                rational::int(m.rank() as i64)
            })?
        }
        MatroidKind::Uniform { k } => SetFunction::tabulate(ground, |x| rational::int(x.len().min(*k) as i64))?,
    };
    Ok(f.with_flags(Flags::SUBMODULAR | Flags::INCREASING | Flags::NORMALIZED))
}

/// Piecewise-linear function through sorted breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinear {
    points: Vec<(Rational, Rational)>,
}

impl PiecewiseLinear {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<PiecewiseLinear> {
        if points.is_empty() || points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::BadArgument("breakpoints must have strictly increasing abscissae".into()));
        }
        Ok(PiecewiseLinear { points })
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    fn slopes(&self) -> Vec<Rational> {
        self.points.windows(2).map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0)).collect()
    }

    pub fn is_concave(&self) -> bool {
        self.slopes().windows(2).all(|s| s[0] >= s[1])
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.slopes().iter().all(|s| !s.is_negative())
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.points[0].0, &self.points[self.points.len() - 1].0)
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return None;
        }
        if self.points.len() == 1 {
            return Some(self.points[0].1.clone());
        }
        let w = self.points.windows(2).find(|w| x <= &w[1].0)?;
        let (x0, y0) = &w[0];
        let (x1, y1) = &w[1];
        Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }
}

/// `X -> f(μ(X))` for a nonnegative atom measure `μ` and concave `f`.
pub fn gen_concave_of_measure(ground: GroundSet, weights: &[Rational], f: &PiecewiseLinear) -> Result<SetFunction> {
    if weights.len() != ground.len() {
        return Err(Error::ShapeError("one weight per atom is required".into()));
    }
    if let Some(k) = weights.iter().position(Signed::is_negative) {
        return Err(Error::NegativeWeight(k));
    }
    if !f.is_concave() {
        return Err(Error::NotConcave);
    }
    let total: Rational = weights.iter().sum();
    let (lo, hi) = f.domain();
    if lo > &Rational::zero() || hi < &total {
        return Err(Error::BadArgument("breakpoints must cover [0, μ(J)]".into()));
    }
    let g = SetFunction::tabulate(ground, |x| {
        let m: Rational = x.atoms().map(|i| weights[i].clone()).sum();
        f.eval(&m).expect("domain checked")
    })?;
    let mut flags = Flags::SUBMODULAR;
    if f.is_nondecreasing() {
        flags |= Flags::INCREASING;
    }
    if f.eval(&Rational::zero()).is_some_and(|v| v.is_zero()) {
        flags |= Flags::NORMALIZED;
    }
    Ok(g.with_flags(flags))
}

/// Shannon entropy (bits) of marginals of a joint distribution. `alphabet[i]` is the number of values
/// of atom `i`; `joint` is indexed row-major with atom 0 varying slowest.
pub fn gen_entropy(ground: GroundSet, alphabet: &[usize], joint: &[Rational]) -> Result<SetFunction> {
    let n = ground.len();
    if alphabet.len() != n || alphabet.contains(&0) {
        return Err(Error::ShapeError("one positive alphabet size per atom is required".into()));
    }
    let cells: usize = alphabet.iter().product();
    if joint.len() != cells {
        return Err(Error::ShapeError(alloc::format!("expected {cells} probabilities, got {}", joint.len())));
    }
    if joint.iter().any(Signed::is_negative) {
        return Err(Error::InvalidDistribution("negative probability".into()));
    }
    let total: Rational = joint.iter().sum();
    if (total - Rational::one()).abs() > float_tolerance() {
        return Err(Error::InvalidDistribution("probabilities do not sum to 1".into()));
    }
    let digits: Vec<Vec<usize>> = (0..cells)
        .map(|mut c| {
            let mut d = alloc::vec![0; n];
            for i in (0..n).rev() {
                d[i] = c % alphabet[i];
                c /= alphabet[i];
            }
            d
        })
        .collect();
    let f = SetFunction::tabulate(ground, |u| {
        let size: usize = u.atoms().map(|i| alphabet[i]).product();
        let mut marginal = alloc::vec![Rational::zero(); size];
        for (p, d) in joint.iter().zip(&digits) {
            let key = u.atoms().fold(0, |k, i| k * alphabet[i] + d[i]);
            marginal[key] += p;
        }
        let h: f64 = marginal
            .iter()
            .filter(|p| p.is_positive())
            .map(|p| -rational::to_f64(p) * rational::ln(p) / core::f64::consts::LN_2)
            .sum();
        rational::from_f64(h).unwrap_or_else(Rational::zero)
    })?;
    Ok(f.with_mode(NumericMode::Approximate(float_tolerance()))
        .with_flags(Flags::SUBMODULAR | Flags::INCREASING | Flags::NORMALIZED))
}

/// `S -> ln det(A_S)` for a positive definite matrix indexed by the atoms.
pub fn gen_logdet(ground: GroundSet, a: &Matrix) -> Result<SetFunction> {
    if !a.is_square() || a.rows() != ground.len() {
        return Err(Error::ShapeError("matrix must be square with one row per atom".into()));
    }
    if !a.is_positive_definite() {
        return Err(Error::NotPD);
    }
    let f = SetFunction::tabulate(ground, |s| {
        let idx: Vec<usize> = s.atoms().collect();
        let det = a.principal(&idx).determinant();
        rational::from_f64(rational::ln(&det)).unwrap_or_else(Rational::zero)
    })?;
    Ok(f.with_mode(NumericMode::Approximate(float_tolerance())).with_flags(Flags::SUBMODULAR | Flags::NORMALIZED))
}

/// Probability that a Markov chain started from `start` ever visits `X` (time 0 included).
pub fn gen_hitting(ground: GroundSet, kernel: &Matrix, start: &[Rational]) -> Result<SetFunction> {
    let n = ground.len();
    if kernel.rows() != n || kernel.cols() != n || start.len() != n {
        return Err(Error::ShapeError("kernel must be square with one row per atom".into()));
    }
    for i in 0..n {
        let row = kernel.row(i);
        if row.iter().any(Signed::is_negative) || row.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::InvalidKernel(i));
        }
    }
    if start.iter().any(Signed::is_negative) || start.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::InvalidDistribution("start distribution".into()));
    }
    let f = SetFunction::tabulate(ground, |x| {
        let h = hitting_probabilities(kernel, x);
        start.iter().zip(&h).map(|(p, q)| p * q).sum()
    })?;
    Ok(f.with_flags(Flags::SUBMODULAR | Flags::INCREASING | Flags::NORMALIZED))
}

fn hitting_probabilities(kernel: &Matrix, target: Subset) -> Vec<Rational> {
    let n = kernel.rows();
    // states that can reach the target
    let mut reach = target;
    loop {
        let grown = Subset::from_atoms(
            (0..n).filter(|&i| reach.contains(i) || (0..n).any(|j| reach.contains(j) && !kernel[(i, j)].is_zero())),
        );
        if grown == reach {
            break;
        }
        reach = grown;
    }
    let free: Vec<usize> = reach.difference(target).atoms().collect();
    let mut h = alloc::vec![Rational::zero(); n];
    for i in target.atoms() {
        h[i] = Rational::one();
    }
    if free.is_empty() {
        return h;
    }
    // (I - P_FF) h_F = P_{F,target} 1
    let m = Matrix::from_fn(free.len(), free.len(), |a, b| {
        let delta = if a == b { Rational::one() } else { Rational::zero() };
        delta - &kernel[(free[a], free[b])]
    });
    let rhs: Vec<Rational> = free.iter().map(|&i| target.atoms().map(|j| kernel[(i, j)].clone()).sum()).collect();
    let sol = m.solve(&rhs).expect("every free state reaches the target, so the system is nonsingular");
    for (k, &i) in free.iter().enumerate() {
        h[i] = sol[k].clone();
    }
    h
}

/// `1` off the ideal, `0` on it.
pub fn gen_ideal_indicator(ground: GroundSet, ideal: &[Subset]) -> Result<SetFunction> {
    ground.check_tabulable(crate::ground::DEFAULT_MAX_N)?;
    let mut member = alloc::vec![false; 1usize << ground.len()];
    for s in ideal {
        if !s.is_subset_of(ground.full()) {
            return Err(Error::ShapeError(alloc::format!("{s} is not a subset of the ground set")));
        }
        member[s.index()] = true;
    }
    if !member[0] {
        return Err(Error::NotAnIdeal(Subset::EMPTY));
    }
    for s in ideal {
        for i in s.atoms() {
            if !member[s.without(i).index()] {
                return Err(Error::NotAnIdeal(s.without(i)));
            }
        }
    }
    let f = SetFunction::tabulate(ground, |x| if member[x.index()] { Rational::zero() } else { Rational::one() })?;
    Ok(f.with_flags(Flags::SUBMODULAR | Flags::INCREASING | Flags::NORMALIZED))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    pub fn complete(k: usize) -> SmallGraph {
        let edges = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        SmallGraph { vertices: k, edges }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> SmallGraph {
        let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
        SmallGraph { vertices: a + b, edges }
    }
}

pub const HOM_VERTEX_LIMIT: usize = 6;

/// `X -> hom(F_X, G)`, where `F_X` keeps the edges of `F` named by `X`.
pub fn gen_hom_count(ground: GroundSet, f: &SmallGraph, g: &SmallGraph) -> Result<SetFunction> {
    for k in [f.vertices, g.vertices] {
        if k > HOM_VERTEX_LIMIT {
            return Err(Error::TooLarge { size: k, limit: HOM_VERTEX_LIMIT });
        }
    }
    if f.edges.len() != ground.len() {
        return Err(Error::ShapeError("one edge of F per atom is required".into()));
    }
    if f.edges.iter().any(|&(u, v)| u >= f.vertices || v >= f.vertices)
        || g.edges.iter().any(|&(u, v)| u >= g.vertices || v >= g.vertices)
    {
        return Err(Error::ShapeError("edge endpoint out of range".into()));
    }
    ground.check_tabulable(crate::ground::DEFAULT_MAX_N)?;
    let mut adj = alloc::vec![false; g.vertices * g.vertices];
    for &(u, v) in &g.edges {
        adj[u * g.vertices + v] = true;
        adj[v * g.vertices + u] = true;
    }
    let m = f.edges.len();
    // histogram of "edges preserved" masks over all maps V(F) -> V(G)
    let mut hist = alloc::vec![0u64; 1usize << m];
    let maps = g.vertices.pow(f.vertices as u32);
    let mut image = alloc::vec![0usize; f.vertices];
    for code in 0..maps {
        let mut c = code;
        for slot in image.iter_mut() {
            *slot = c % g.vertices;
            c /= g.vertices;
        }
        let preserved =
            (0..m).filter(|&e| adj[image[f.edges[e].0] * g.vertices + image[f.edges[e].1]]).fold(0usize, |acc, e| acc | 1 << e);
        hist[preserved] += 1;
    }
    // hom(F_X, G) counts maps preserving a superset of X
    for i in 0..m {
        for mask in 0..1usize << m {
            if mask >> i & 1 == 0 {
                hist[mask] += hist[mask | 1 << i];
            }
        }
    }
    let f = SetFunction::tabulate(ground, |x| rational::int(hist[x.index()] as i64))?;
    Ok(f.with_flags(Flags::SUPERMODULAR))
}
