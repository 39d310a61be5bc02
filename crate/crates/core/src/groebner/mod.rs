//! Buchberger's algorithm, normal forms and ideal operations, both in
//! polynomial rings and in hypersurface quotients `T/(f)`.

mod engine;
mod ideal;
mod quotient;

pub use engine::{
    buchberger, buchberger_with, divide, is_groebner_basis, normal_form, s_polynomial, Budget, Division,
    GroebnerOptions,
};
pub use ideal::{ring_with, Ideal};
pub use quotient::QuotientContext;
