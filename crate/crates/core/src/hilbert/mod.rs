//! Graded dimensions, lengths of Artinian quotients, Hilbert polynomial
//! fitting and analytics for filtrations of the scenario rings.

mod dims;
mod filtration;
mod poly;

pub use dims::{artinian_length, graded_dimension, graded_dimensions};
pub use filtration::{
    binomial_coefficients_check, default_window, expected_h_vector, filtration_member, filtration_series,
    fit_filtration, hilbert_function, lengths, reduction_number, shifted_polynomial, valabrega_valla_check,
    FiltrationKind, FiltrationSpec, ShiftedFiltrationReport, ValabregaVallaReport,
};
pub use poly::{binomial, fit_hilbert_polynomial, HilbertPoly, SeriesRational};
