//! Bredon homology of representation spheres and the resulting `RO(C₂)`-graded charts.

pub mod chart;
pub mod checks;
pub mod complex;
pub mod dual;
pub mod render;

pub use chart::{a_action, chart, in_support, Cell, Degree, Engine, GradedChart, Window};
pub use checks::{bockstein_les, euler_sequences_check, EulerCheck, LesCheck};
pub use complex::{sphere_complex, Coeff};
pub use dual::{dual_cell, dual_chart, dual_matches, has_extension, DualCell, SesResult};
pub use render::{render_ascii, render_svg};
