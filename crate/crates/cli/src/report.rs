//! Reports and their JSON/text renderings.

use serde::Serialize;
use serde_json::{Map, Value};
use submod_core::certificate::{Certificate, Status, WitnessValue};
use submod_core::ground::{all_subsets, GroundSet, Subset};
use submod_core::polyhedra::Charge;
use submod_core::rational::{self, Rational};
use submod_core::setfn::SetFunction;

use crate::spec::{labels, table_entries};

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Verdict {
    pub property: String,
    pub status: String,
    pub witness: Map<String, Value>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub ground: Vec<String>,
    pub seed: u64,
    pub status: String,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub uncertified: bool,
    pub verdicts: Vec<Verdict>,
    pub values: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.status);
        if let Some(d) = &self.input_digest {
            out += &format!("input {d}\n");
        }
        out += &format!("ground [{}]\nseed {}\n", self.ground.join(", "), self.seed);
        if self.uncertified {
            out += "uncertified: ground-size limit raised\n";
        }
        for v in &self.verdicts {
            out += &format!("{}: {}\n", v.property, v.status);
            for (k, w) in &v.witness {
                out += &format!("  {k} = {}\n", compact(w));
            }
        }
        for (k, w) in &self.values {
            out += &format!("{k} = {}\n", compact(w));
        }
        if let Some(ms) = self.wall_time_ms {
            out += &format!("wall time {ms} ms\n");
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn num(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

pub fn nums(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

pub fn set(ground: &GroundSet, s: Subset) -> Value {
    Value::Array(labels(ground, s).into_iter().map(Value::String).collect())
}

pub fn sets(ground: &GroundSet, ss: &[Subset]) -> Value {
    Value::Array(ss.iter().map(|&s| set(ground, s)).collect())
}

pub fn table(phi: &SetFunction) -> Value {
    serde_json::to_value(table_entries(phi)).expect("table serializes")
}

/// Values indexed by the subsets of `ground` in mask order.
pub fn subset_table(ground: &GroundSet, v: &[Rational]) -> Value {
    Value::Array(
        all_subsets(ground.len())
            .zip(v)
            .map(|(s, x)| {
                let mut m = Map::new();
                m.insert("set".into(), set(ground, s));
                m.insert("value".into(), num(x));
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn charge(alpha: &Charge) -> Value {
    let mut atoms = Map::new();
    for (l, v) in alpha.ground().labels().iter().zip(alpha.atoms()) {
        atoms.insert(l.clone(), num(v));
    }
    let mut m = Map::new();
    m.insert("atoms".into(), Value::Object(atoms));
    Value::Object(m)
}

pub fn matrix(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| nums(r)).collect())
}

pub fn witness_value(ground: &GroundSet, w: &WitnessValue) -> Value {
    match w {
        WitnessValue::Set(s) => set(ground, *s),
        WitnessValue::Sets(ss) => sets(ground, ss),
        WitnessValue::Number(r) => num(r),
        WitnessValue::Vector(v) => nums(v),
        WitnessValue::Text(t) => Value::String(t.clone()),
    }
}

pub fn status_word(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "violated"
    }
}

pub fn from_certificate(property: &str, ground: &GroundSet, c: &Certificate) -> Verdict {
    let mut witness = Map::new();
    for (k, w) in &c.witness {
        witness.insert(k.clone(), witness_value(ground, w));
    }
    Verdict { property: property.into(), status: status_word(c.status == Status::Holds).into(), witness }
}

/// Lowercase hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
