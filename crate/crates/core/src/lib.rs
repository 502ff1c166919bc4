//! Arthur's multiplicity formula for holomorphic Siegel cusp forms of level
//! one: A-parameters, archimedean packets, lifting decisions and local
//! L-factors, all in exact arithmetic.

pub mod ajpackets;
pub mod archrep;
pub mod lfunctions;
pub mod lifting;
pub mod params;
pub mod sl2comb;
