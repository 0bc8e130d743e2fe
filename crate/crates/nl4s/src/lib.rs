pub mod cli;
pub mod error;
pub mod evolution;
pub mod exponents;
pub mod groundstate;
pub mod io;
pub mod profiles;
pub mod spectral;
