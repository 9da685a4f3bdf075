//! Foundational q-calculus: q-Pochhammer symbols, basic hypergeometric
//! series, Jackson q-integrals and transformation cross-checks.

pub mod hypergeometric;
pub mod integral;
pub mod pochhammer;
pub mod transform_check;

pub use hypergeometric::{basic_hypergeometric, detect_termination, one_phi_one_real, phi_real};
pub use integral::{q_integral, QDomain};
pub use pochhammer::{
    qpochhammer, qpochhammer_inf, qpochhammer_inf_ratio, qpochhammer_inf_real, qpochhammer_real,
};
pub use transform_check::hypergeometric_transform_check;
