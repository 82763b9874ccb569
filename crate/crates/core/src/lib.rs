//! Affinity-based quantifiers of coherence and quantum correlations.

pub mod channel;
pub mod coherence;
pub mod correlations;
pub mod distances;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measurement;
pub mod metrology;
pub mod optim;
pub mod panel;
pub mod par;
pub mod random;
pub mod state;
pub mod states;
pub mod sweep;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use optim::Search;
pub use state::{DensityMatrix, PureState};
