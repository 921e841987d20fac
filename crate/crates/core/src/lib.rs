pub mod cli;
pub mod error;
pub mod fourier;
pub mod harness;
pub mod law;
pub mod params;
pub mod quad;
pub mod walk;
