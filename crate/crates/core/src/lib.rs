//! Computational group theory toolkit for lower central series questions.
#![allow(clippy::needless_range_loop)]
pub mod cli;
pub mod extensions;
pub mod finite;
pub mod links;
pub mod magnus;
pub mod nilpotent;
pub mod par;
pub mod pgroups;
pub mod report;
pub mod snf;
pub mod ssq;
pub mod words;
