//! The modified enveloping algebras and their identification with path algebras.

mod algebra;
mod weight;

pub use algebra::{multiplicativity_check, phi, phi_path, psi, psi_monomial, roundtrip_check, u_mul, RoundtripReport, UElement, UMode, UMonomial};
pub use weight::{lie_check, rep_to_weight_module, LieCheck, LieReport, WeightModule};
