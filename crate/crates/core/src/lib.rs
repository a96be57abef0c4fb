pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod exact;
pub mod genfun;
pub mod eval;
pub mod hypergeom;
pub mod numerics;
pub mod params;
pub mod quadrature;
pub mod verify;
