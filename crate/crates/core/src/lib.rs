//! Validated numerics for a KAM computer-assisted proof on a controlled
//! magnetic field-line Hamiltonian, plus frequency-map tools.

pub mod contfrac;
pub mod error;
pub mod estimator;
pub mod formats;
pub mod freqmap;
pub mod interval;
pub mod ledger;
pub mod model;
pub mod normalizer;
pub mod pipeline;
pub mod tfseries;

pub use contfrac::{Rational, RationalPair};
pub use error::{Error, Result};
pub use interval::{Ext, Interval, IntervalError};
pub use ledger::{ExplicitLedger, GenBounds};
pub use tfseries::{Coef, Generator, HamiltonianState, Harmonic, Key, TFSeries, TailNorms, Var};
