//! Verification kernel for Tom and Jerry unprojection constructions of
//! codimension-four Fano 3-folds.

pub mod candidates;
pub mod formats;
pub mod groebner;
pub mod nodecount;
pub mod pipeline;
pub mod polyring;
pub mod unproject;
pub mod verify;
