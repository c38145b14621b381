//! Symplectic and orthogonal analogues of the Schur measure on integer
//! partitions: characters, determinantal correlation kernels computed two
//! independent ways, Toeplitz+Hankel and Fredholm determinant identities, and
//! the Airy-type edge limits of the associated Plancherel-like measures.

pub mod airy;
pub mod characters;
pub mod continuum;
pub mod edge;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod measures;
pub mod partition;
pub mod series;
pub mod specialization;
pub mod toeplitz;

pub use characters::{CharacterKind, SpO};
pub use continuum::{ContinuumKernel, ContinuumKind, NystromConfig};
pub use edge::{EdgeModel, EdgeScaling};
pub use error::{Error, Result};
pub use kernel::{ContourParams, KernelMatrix, KernelMethod, KernelSpec};
pub use measures::{MeasureSpec, PlancherelAB};
pub use num_complex::Complex64;
pub use partition::{Class, Constraint, FrobeniusCoord, HalfInt, Partition, PointConfig};
pub use series::SeriesTrunc;
pub use specialization::{AlphabetStyle, Specialization};
pub use toeplitz::{Symbol, ThKind};
