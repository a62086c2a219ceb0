pub mod ring;
pub mod matrix;
pub mod suslin;
pub mod clifford;
pub mod orbits;
pub mod suite;
pub mod json;
