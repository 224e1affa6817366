//! Lie sphere geometry and concurrency theorems for Apollonius problems.

pub mod apollonius;
pub mod cycles;
pub mod document;
pub mod error;
pub mod lie;
pub mod render;
pub mod scenarios;
pub mod tolerance;

pub use apollonius::{
    apollonius_pairs, compute_p, inscribed_sphere, line_through_centers, p_x_point,
    sample_tangent_hyperplanes, solve_apollonius, two_step_pairs, verify_first_level,
    verify_inscribed, verify_second_level, ApolloniusPair, Configuration, Line, PrimeAssignment,
    Solution,
};
pub use cycles::{project, Cycle, Orientation};
pub use error::{Error, Result};
pub use lie::LieVec;
pub use tolerance::Tolerances;
