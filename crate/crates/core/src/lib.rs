//! Counting, random generation and recurrence guessing for standard and
//! solid standard Young tableaux, in exact integer arithmetic.

pub mod cli;
pub mod count;
pub mod guess;
pub mod par;
pub mod parse;
pub mod sampler;
pub mod seqfile;
pub mod shape;
pub mod walk;

pub use count::{count_solid_syt, MemoCache};
pub use par::Parallelism;
pub use shape::{BoxCoord, FamilyCell, Partition, PlanePartition, ShapeError, ShapeFamily};
