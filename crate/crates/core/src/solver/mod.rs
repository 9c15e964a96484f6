//! Mild-solution map and its Picard fixed point.

mod field;
mod oracle;
mod phi;
mod picard;
mod source;

pub use field::{
    field_to_time, BoundaryPair, SpaceGrid, SpectralData, SpectralField, TimeField,
    IMAG_RESIDUE_TOL,
};
pub use oracle::ode_oracle;
pub use phi::{apply_phi, volterra_weights, Phi, Quadrature};
pub use picard::{
    contraction_bound, picard_iterate, picard_solve, PicardConfig, PicardReport, PicardSolution,
};
pub use source::{LineSource, RowContext, Source, SourceSpec, ZeroSource};
