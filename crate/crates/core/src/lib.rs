//! One-scale analysis of localized traveling waves.
//!
//! A nonlinear PDE in one space dimension is parsed into a canonical
//! symbolic form, reduced to a traveling frame, and mapped to an algebraic
//! relation between the amplitude `A`, half-width `L`, and velocity `V` of
//! a localized solution. The [`verify`] module checks those relations
//! against exact solutions numerically.

pub mod catalog;
pub mod exprcore;
pub mod osa;
pub mod pdeparse;
pub mod verify;
