#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod calculus;
pub mod certificate;
pub mod choquet;
pub mod dsu;
pub mod error;
pub mod flow;
pub mod generators;
pub mod geometry;
pub mod ground;
pub mod linalg;
pub mod lp;
pub mod polyhedra;
pub mod presentable;
pub mod random;
pub mod rational;
pub mod relation;
pub mod setfn;
pub mod sfm;

pub use error::{Error, Result};
pub use ground::{GroundSet, Subset};
pub use rational::Rational;
pub use relation::Relation;
pub use setfn::{Flags, NumericMode, SetFunction};
