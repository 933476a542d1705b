//! Exact toolkit for twin buildings, twin BN-pairs over prime fields and
//! Kac-Moody root data.

pub mod building;
pub mod cartan;
pub mod classification;
pub mod cli;
pub mod coxeter;
pub mod field;
pub mod kac_moody;
pub mod matrix;
pub mod matrix_groups;
pub mod thin;
