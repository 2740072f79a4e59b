//! Generators and checks shared by the property suites and the acceptance
//! run.
#![allow(dead_code)]

pub mod exprgen;
pub mod scalecheck;
