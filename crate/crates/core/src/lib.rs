pub mod closed_form;
pub mod compare;
pub mod eigen;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod oracles;
pub mod sampler;
