//! Exact arithmetic for diagonal cubic surface fibrations.

pub mod ext;
pub mod fields;
pub mod poly;
pub mod sampling;
pub mod tower;
pub mod chain;
pub mod report;
pub mod linalg;
pub mod cubicsurf;
pub mod segre;
pub mod geiser;
pub mod expr;
pub mod selftest;
