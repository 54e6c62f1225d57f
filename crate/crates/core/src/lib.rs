pub mod calculus;
pub mod cyclo;
pub mod double;
pub mod exterior;
pub mod group;
pub mod rep;
