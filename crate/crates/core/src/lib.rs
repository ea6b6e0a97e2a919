pub mod bench;
pub mod cli;
pub mod dense;
pub mod error;
pub mod graph;
pub mod io;
pub mod semiring;
pub mod sparse;
pub mod scheduler;
pub mod spectral;

pub use dense::{Closure, DenseMatrix, TropicalVector};
pub use error::{Error, Result};
pub use semiring::{Semiring, TropicalValue};
pub use sparse::CsrMatrix;
pub use spectral::{CycleMean, Eigenvector, MaxCycleMean};
pub use scheduler::{ScheduleResult, TaskGraph};
