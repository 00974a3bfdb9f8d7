//! Systems of max-T fuzzy relational equations `A □ x = b` over `[0, 1]`.
//!
//! * [`algebra`]: t-norms, residual implicators and scalar kernels,
//! * [`system`]: matrices, compositions, the operator `F`, consistency,
//! * [`chebyshev`]: closed-form Chebyshev distance of `b` and its greatest
//!   Chebyshev approximation (product and Lukasiewicz t-norms),
//! * [`oracle`]: bisection / grid ground truth and random instances,
//! * [`cli`]: file formats and the `frel` command dispatcher.
//!
//! ```
//! use frel::{chebyshev, SystemInstance, TNormKind, UnitMatrix, UnitVector};
//!
//! let a = UnitMatrix::from_rows(&[[1.0, 0.4], [0.7, 0.5]]).unwrap();
//! let b = UnitVector::from_slice(&[0.4, 1.0]).unwrap();
//! let inst = SystemInstance::new(a, b, TNormKind::Product).unwrap();
//! let report = chebyshev::greatest_chebyshev_approximation(&inst).unwrap();
//! assert!(report.delta.get() > 0.0);
//! ```

pub mod algebra;
pub mod chebyshev;
pub mod cli;
mod error;
pub mod exec;
pub mod oracle;
pub mod system;

pub use algebra::{TNormKind, UnitValue};
pub use chebyshev::{ChebyshevReport, DeltaMethod};
pub use error::{Error, Result};
pub use exec::Execution;
pub use system::{ConsistencyVerdict, SystemInstance, UnitMatrix, UnitVector};
