//! Exact finite group actions on the projective line over cyclotomic fields,
//! Hirzebruch–Jung chains, and singular fibre bookkeeping for quotients of
//! rational conic bundles.

pub mod arith;
pub mod cyclo;
mod roots;
pub mod group;
pub mod hj;
pub mod records;
pub mod quotient;
pub mod forms;
pub mod example;
pub mod compare;
pub mod reproduce;
