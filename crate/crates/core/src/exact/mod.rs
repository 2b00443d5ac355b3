//! Exact arithmetic: Gaussian rationals, polynomials in `p`, and the
//! teleportation pipeline run over them.

mod gaussian;
mod poly;
mod symbolic;

pub use gaussian::{format_rational, rational, GaussianRational};
pub use poly::PolyP;
pub use symbolic::{
    extract_transfer_map, extract_transfer_map_with, run_pipeline_symbolic,
    run_pipeline_symbolic_with, TransferMap,
};

pub use num_rational::BigRational;
