//! Radially symmetric simulation of a quasilinear attraction-repulsion
//! chemotaxis system with logistic-type source on a ball, together with the
//! closed-form regime predicates and moment-functional diagnostics used to
//! interpret the trajectories.

pub mod diagnostics;
pub mod dynamics;
pub mod elliptic;
pub mod grid;
pub mod initdata;
pub mod model;
pub mod orchestration;
