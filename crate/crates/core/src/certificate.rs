//! Verdicts produced by the property checkers.

use alloc::string::String;
use alloc::vec::Vec;

use crate::ground::Subset;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessValue {
    Set(Subset),
    Sets(Vec<Subset>),
    Number(Rational),
    Vector(Vec<Rational>),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: String,
    pub status: Status,
    /// Named pieces of evidence, in a stable order.
    pub witness: Vec<(String, WitnessValue)>,
    pub seed: Option<u64>,
    pub trials: usize,
}

impl Certificate {
    pub fn holds(claim: &str, seed: Option<u64>, trials: usize) -> Certificate {
        Certificate { claim: claim.into(), status: Status::Holds, witness: Vec::new(), seed, trials }
    }

    pub fn violated(claim: &str, seed: Option<u64>, trials: usize) -> Certificate {
        Certificate { claim: claim.into(), status: Status::Violated, witness: Vec::new(), seed, trials }
    }

    pub fn with(mut self, name: &str, value: WitnessValue) -> Certificate {
        self.witness.push((name.into(), value));
        self
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn witness(&self, name: &str) -> Option<&WitnessValue> {
        self.witness.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}
