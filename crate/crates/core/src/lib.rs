//! Exact-arithmetic commutative algebra for local rings presented as
//! polynomial-ring quotients: tangent cones via standard bases,
//! Castelnuovo-Mumford regularity through two independent routes,
//! Hilbert-Samuel data, homological (extended) degrees, and machine
//! verification of the regularity/coefficient bounds on concrete and
//! randomized instances.

pub mod analyze;
pub mod arith;
pub mod basis;
pub mod bounds;
pub mod corpus;
pub mod degree;
pub mod error;
pub mod hilbert;
pub mod instance;
pub mod invariants;
pub mod monomial_ideal;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod resolution;

pub use error::{Error, Result};
