//! Max-plus / min-plus analysis of P-time event graphs.

pub mod analysis;
pub mod model;
pub mod report;
pub mod spectral;
pub mod tropical;
