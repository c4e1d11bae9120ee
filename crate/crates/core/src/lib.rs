pub mod adic;
pub mod census;
pub mod exec;
pub mod quartic;
pub mod real;
pub mod rings;
pub mod series;
