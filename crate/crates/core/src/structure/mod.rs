//! Algorithms on twisted rings: nuclei, associativity, ideals, division.

mod division;
mod ideals;
mod nucleus;

pub use division::{
    monic_left_reduce, right_reduce, right_reduce_series, CofactorSide, ReductionResult,
    ReductionStep,
};
pub use ideals::{central_reduction, shrink, simplicity_probe, ProbeOutcome, ProbeStep};
pub use nucleus::{
    associativity_certificate, monomial_basis, nuclear_inverse_check, nucleus_membership,
    Certificate, Hypothesis, InverseReport, InverseStatus, NucleusQuery, Side, Witness,
};
