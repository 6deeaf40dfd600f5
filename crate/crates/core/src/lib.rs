//! Exact combinatorics of compactified apartments: root systems, the fans
//! `F_t` of rational polyhedral cones, weight systems and admissible subsets,
//! the seminorm model of the compactified building of `PGL_V`, and the weight
//! embedding between them.

pub mod cone;
pub mod error;
pub mod exec;
pub mod fans;
pub mod linalg;
pub mod rational;
pub mod rootsys;
pub mod satake;
pub mod seminorms;
pub mod verify;
pub mod weights;

pub use cone::RationalCone;
pub use error::{Error, Result};
pub use exec::Exec;
pub use rational::{ExtRat, QVec, Rat};
pub use rootsys::{ParabolicSubset, RootDatum, WeylElement};
