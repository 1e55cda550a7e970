pub mod blockmat;
pub mod cli;
pub mod complexity;
pub mod inversion;
pub mod lu;
pub mod random;
pub mod rings;
