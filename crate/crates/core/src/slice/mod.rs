//! Slice spectral sequences of the real Morava K-theories `Kℝ(n)` and their connective covers.

pub mod diff;
pub mod analysis;
pub mod page;

pub use diff::{Differential, Rule};
pub use page::{Certificate, DiffRecord, KRParams, PageEntry, SSPage, SliceError, SliceSS};
pub use analysis::{anderson_check, geometric_localize, stems, AndersonReport, Colimit, StemGroup};
