//! The mixed Hochschild complex, bimorphism pushforward and trace pairings.

mod chain;
mod complex;
mod pairing;
mod pushforward;
mod report;

pub use chain::Chain;
pub use complex::{Hochschild, HochschildSlice};
pub use pairing::{pairing_mu3, pairing_psi, pairing_via_pushforward, trace_functional};
pub use pushforward::{eilenberg_zilber, Pushforward};
pub use report::{hochschild_dims, mixed_complex_checks};
