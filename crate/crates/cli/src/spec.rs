//! JSON setfunction specs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use submod_core::generators::{self, MatroidKind, PiecewiseLinear, SmallGraph};
use submod_core::ground::{all_subsets, GroundSet, Subset, DEFAULT_MAX_N, TABLE_HARD_LIMIT};
use submod_core::linalg::Matrix;
use submod_core::rational::{self, Rational};
use submod_core::relation::Relation;
use submod_core::setfn::{Flags, NumericMode, SetFunction};

use crate::CliError;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub ground: Vec<String>,
    pub function: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<RelationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marginals: Option<Marginals>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<Value>,
}

/// Relation from the ground set (left) to `right`; `pairs` are `[left, right]` label pairs.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub right: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Marginals {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub set: Vec<String>,
    pub value: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Deserialize, Clone, Debug)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Kind {
    Table { entries: Vec<TableEntry> },
    Modular { atoms: BTreeMap<String, String> },
    Cut { edges: Vec<(String, String, String)> },
    Coverage { elements: Vec<String>, covers: BTreeMap<String, Vec<String>>, #[serde(default)] weights: BTreeMap<String, String> },
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    Linear { columns: Vec<Vec<String>> },
    Uniform { k: usize },
    Concave { weights: Vec<String>, points: Vec<(String, String)> },
    HomCount { f: GraphSpec, g: GraphSpec },
    Entropy { alphabet: Vec<usize>, joint: Vec<String> },
    Logdet { matrix: Vec<Vec<String>> },
    Hitting { kernel: Vec<Vec<String>>, start: Vec<String> },
    Ideal { sets: Vec<Vec<String>> },
}

pub const FLAG_NAMES: [(&str, Flags); 7] = [
    ("submodular", Flags::SUBMODULAR),
    ("supermodular", Flags::SUPERMODULAR),
    ("modular", Flags::MODULAR),
    ("increasing", Flags::INCREASING),
    ("decreasing", Flags::DECREASING),
    ("strongly_submodular", Flags::STRONGLY_SUBMODULAR),
    ("normalized", Flags::NORMALIZED),
];

pub fn flag_names(f: Flags) -> Vec<String> {
    FLAG_NAMES.iter().filter(|(_, g)| f.contains(*g)).map(|(s, _)| s.to_string()).collect()
}

fn parse_flags(names: &[String]) -> Result<Flags, CliError> {
    let mut out = Flags::empty();
    for name in names {
        match FLAG_NAMES.iter().find(|(s, _)| s == name) {
            Some((_, f)) => out |= *f,
            None => return Err(CliError::Input(format!("unknown flag `{name}`"))),
        }
    }
    Ok(out)
}

/// Soft ground-size limit from `SUBMOD_MAX_N`; the flag is set when it was raised past the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limit {
    pub max_n: usize,
    pub raised: bool,
}

impl Limit {
    pub fn from_env() -> Result<Limit, CliError> {
        match std::env::var("SUBMOD_MAX_N") {
            Err(_) => Ok(Limit { max_n: DEFAULT_MAX_N, raised: false }),
            Ok(s) => {
                let n: usize = s.trim().parse().map_err(|_| CliError::Input(format!("SUBMOD_MAX_N must be an integer, got `{s}`")))?;
                if n > TABLE_HARD_LIMIT {
                    return Err(CliError::Input(format!("SUBMOD_MAX_N={n} exceeds the hard limit {TABLE_HARD_LIMIT}")));
                }
                Ok(Limit { max_n: n, raised: n > DEFAULT_MAX_N })
            }
        }
    }
}

pub fn rat(s: &str) -> Result<Rational, CliError> {
    rational::parse(s).map_err(|e| CliError::Input(format!("bad rational `{s}`: {e}")))
}

fn rats(v: &[String]) -> Result<Vec<Rational>, CliError> {
    v.iter().map(|s| rat(s)).collect()
}

fn matrix(rows: &[Vec<String>]) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<Rational>> = rows.iter().map(|r| rats(r)).collect::<Result<_, _>>()?;
    Matrix::from_rows(&rows).ok_or_else(|| CliError::Input("matrix rows have different lengths".into()))
}

fn index(ground: &GroundSet, label: &str) -> Result<usize, CliError> {
    Ok(ground.index_of(label)?)
}

pub fn subset(ground: &GroundSet, labels: &[String]) -> Result<Subset, CliError> {
    Ok(ground.subset(labels)?)
}

pub fn labels(ground: &GroundSet, s: Subset) -> Vec<String> {
    ground.subset_labels(s).into_iter().map(String::from).collect()
}

/// Builds the function described by `desc` on `ground`. `offset` (a constant added to every value) and
/// `tolerance` may accompany any kind.
pub fn build_function(ground: &GroundSet, desc: &Value, limit: Limit) -> Result<SetFunction, CliError> {
    let mut desc = desc.clone();
    let obj = desc.as_object_mut().ok_or_else(|| CliError::Input("function must be an object".into()))?;
    let offset = take_rational(obj, "offset")?;
    let tolerance = take_rational(obj, "tolerance")?;
    if ground.len() > limit.max_n {
        return Err(CliError::Input(format!("ground set of size {} exceeds SUBMOD_MAX_N={}", ground.len(), limit.max_n)));
    }
    let kind: Kind = serde_json::from_value(desc).map_err(|e| CliError::Input(format!("function: {e}")))?;
    let g = ground.clone();
    let mut phi = match kind {
        Kind::Table { entries } => {
            let mut pairs = Vec::with_capacity(entries.len());
            for e in &entries {
                pairs.push((subset(ground, &e.set)?, rat(&e.value)?));
            }
            if ground.len() > DEFAULT_MAX_N {
                wide_table(g, &pairs, limit)?
            } else {
                generators::make_table_function(g, &pairs)?
            }
        }
        Kind::Modular { atoms } => {
            let mut alpha = vec![rational::zero(); ground.len()];
            for (l, v) in &atoms {
                alpha[index(ground, l)?] = rat(v)?;
            }
            let f = SetFunction::tabulate_with_limit(g, limit.max_n, |x| x.atoms().map(|i| alpha[i].clone()).sum())?;
            f.with_flags(Flags::SUBMODULAR | Flags::SUPERMODULAR | Flags::MODULAR | Flags::NORMALIZED)
        }
        Kind::Cut { edges } => {
            let mut es = Vec::with_capacity(edges.len());
            for (u, v, w) in &edges {
                es.push((index(ground, u)?, index(ground, v)?, rat(w)?));
            }
            generators::gen_cut(g, &es)?
        }
        Kind::Coverage { elements, covers, weights } => {
            let right = GroundSet::new(&elements)?;
            let mut pairs = Vec::new();
            for (atom, elems) in &covers {
                let i = index(ground, atom)?;
                for e in elems {
                    pairs.push((i, index(&right, e)?));
                }
            }
            let mut w = vec![rational::int(1); right.len()];
            for (e, v) in &weights {
                w[index(&right, e)?] = rat(v)?;
            }
            generators::gen_coverage(&Relation::from_pairs(g, right, &pairs)?, &w)?
        }
        Kind::Graphic { vertices, edges } => generators::gen_matroid_rank(g, &MatroidKind::Graphic { vertices, edges })?,
        Kind::Linear { columns } => {
            let columns = columns.iter().map(|c| rats(c)).collect::<Result<_, _>>()?;
            generators::gen_matroid_rank(g, &MatroidKind::Linear { columns })?
        }
        Kind::Uniform { k } => generators::gen_matroid_rank(g, &MatroidKind::Uniform { k })?,
        Kind::Concave { weights, points } => {
            let pts = points.iter().map(|(x, y)| Ok((rat(x)?, rat(y)?))).collect::<Result<_, CliError>>()?;
            generators::gen_concave_of_measure(g, &rats(&weights)?, &PiecewiseLinear::new(pts)?)?
        }
        Kind::HomCount { f, g: h } => {
            let f = SmallGraph { vertices: f.vertices, edges: f.edges };
            let h = SmallGraph { vertices: h.vertices, edges: h.edges };
            generators::gen_hom_count(g, &f, &h)?
        }
        Kind::Entropy { alphabet, joint } => generators::gen_entropy(g, &alphabet, &rats(&joint)?)?,
        Kind::Logdet { matrix: m } => generators::gen_logdet(g, &matrix(&m)?)?,
        Kind::Hitting { kernel, start } => generators::gen_hitting(g, &matrix(&kernel)?, &rats(&start)?)?,
        Kind::Ideal { sets } => {
            let sets = sets.iter().map(|s| subset(ground, s)).collect::<Result<Vec<_>, _>>()?;
            generators::gen_ideal_indicator(g, &sets)?
        }
    };
    if let Some(c) = offset {
        phi = phi.shift(&c).with_flags(Flags::empty());
    }
    if let Some(t) = tolerance {
        if t < rational::zero() {
            return Err(CliError::Input("tolerance must be nonnegative".into()));
        }
        if t > phi.tolerance() {
            phi = phi.with_mode(NumericMode::Approximate(t));
        }
    }
    Ok(phi)
}

fn take_rational(obj: &mut serde_json::Map<String, Value>, key: &str) -> Result<Option<Rational>, CliError> {
    match obj.remove(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(rat(&s)?)),
        Some(other) => Err(CliError::Input(format!("`{key}` must be a \"p/q\" string, got {other}"))),
    }
}

fn wide_table(ground: GroundSet, pairs: &[(Subset, Rational)], limit: Limit) -> Result<SetFunction, CliError> {
    let mut values: Vec<Option<Rational>> = vec![None; 1usize << ground.len()];
    for (s, v) in pairs {
        if values[s.index()].replace(v.clone()).is_some() {
            return Err(submod_core::error::Error::DuplicateEntry(*s).into());
        }
    }
    if let Some(i) = values.iter().position(Option::is_none) {
        return Err(submod_core::error::Error::IncompleteTable(Subset(i as u64)).into());
    }
    Ok(SetFunction::tabulate_with_limit(ground, limit.max_n, |s| values[s.index()].take().expect("checked above"))?)
}

/// A parsed spec: the primary function plus resolved auxiliary objects.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub spec: SpecFile,
    pub phi: SetFunction,
    pub second: Option<SetFunction>,
    pub weights: Option<Vec<Rational>>,
    pub set: Option<Subset>,
    pub chain: Option<Vec<Subset>>,
    pub relation: Option<Relation>,
    pub marginals: Option<(Vec<Rational>, Vec<Rational>)>,
}

pub fn parse(text: &str) -> Result<SpecFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed spec: {e}")))
}

pub fn load(spec: SpecFile, limit: Limit) -> Result<Loaded, CliError> {
    let ground = GroundSet::new(&spec.ground)?;
    let declared = parse_flags(&spec.flags)?;
    let phi = build_function(&ground, &spec.function, limit)?;
    let phi = phi.clone().with_flags(phi.flags() | declared);
    let bad = phi.audit_flags();
    if !bad.is_empty() {
        return Err(CliError::Input(format!("declared flags do not hold: {}", flag_names(bad).join(", "))));
    }
    let second = spec.second.as_ref().map(|d| build_function(&ground, d, limit)).transpose()?;
    let weights = spec.weights.as_deref().map(rats).transpose()?;
    if let Some(w) = &weights {
        if w.len() != ground.len() {
            return Err(CliError::Input(format!("weights has {} entries for {} atoms", w.len(), ground.len())));
        }
    }
    let set = spec.set.as_deref().map(|s| subset(&ground, s)).transpose()?;
    let chain = spec
        .chain
        .as_ref()
        .map(|c| c.iter().map(|s| subset(&ground, s)).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    let relation = match &spec.relation {
        None => None,
        Some(r) => {
            let right = GroundSet::new(&r.right)?;
            let mut pairs = Vec::with_capacity(r.pairs.len());
            for (a, b) in &r.pairs {
                pairs.push((index(&ground, a)?, index(&right, b)?));
            }
            Some(Relation::from_pairs(ground.clone(), right, &pairs)?)
        }
    };
    let marginals = spec.marginals.as_ref().map(|m| Ok::<_, CliError>((rats(&m.left)?, rats(&m.right)?))).transpose()?;
    Ok(Loaded { spec, phi, second, weights, set, chain, relation, marginals })
}

/// Table of `phi` in mask order, one entry per subset.
pub fn table_entries(phi: &SetFunction) -> Vec<TableEntry> {
    all_subsets(phi.n())
        .map(|s| TableEntry { set: labels(phi.ground(), s), value: rational::format(&phi[s]) })
        .collect()
}

pub fn table_descriptor(phi: &SetFunction) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("kind".into(), "table".into());
    m.insert("entries".into(), serde_json::to_value(table_entries(phi)).expect("entries serialize"));
    if !phi.is_exact() {
        m.insert("tolerance".into(), rational::format(&phi.tolerance()).into());
    }
    Value::Object(m)
}

/// Canonical form: tables in mask order, flags that passed the audit, auxiliary objects as given.
pub fn canonical(loaded: &Loaded) -> SpecFile {
    let mut spec = loaded.spec.clone();
    spec.function = table_descriptor(&loaded.phi);
    spec.flags = flag_names(loaded.phi.flags());
    spec.second = loaded.second.as_ref().map(table_descriptor);
    let fmt = |v: &[Rational]| v.iter().map(rational::format).collect::<Vec<_>>();
    spec.weights = loaded.weights.as_deref().map(fmt);
    if let Some((l, r)) = &loaded.marginals {
        spec.marginals = Some(Marginals { left: fmt(l), right: fmt(r) });
    }
    spec
}

pub fn to_json(spec: &SpecFile) -> String {
    serde_json::to_string(spec).expect("spec serializes")
}
