//! File formats, Monte Carlo experiments and configuration handling around
//! [`jigsaw_core`].

pub mod config;
pub mod experiments;
pub mod io;
