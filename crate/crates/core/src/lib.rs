pub mod cli;
pub mod gamma;
pub mod graph;
pub mod group;
pub mod qsrg;
pub mod symmetry;
