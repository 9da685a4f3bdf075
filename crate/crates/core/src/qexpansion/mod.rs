//! Kernel expansions on the q-linear lattice: q-Neumann functions, the
//! auxiliary Hankel-type integrals, the biorthogonal polynomial pair, the
//! transform identities connecting them, and the plane-wave / kernel
//! expansion machinery with Paley-Wiener-type synthesis and reconstruction.

pub mod auxiliary;
pub mod biortho;
pub mod fpq;
pub mod kernel;
pub mod neumann;

pub use auxiliary::{i_minus, i_minus_oracle, i_plus, i_plus_oracle};
pub use biortho::{biorthogonal_p, biorthogonal_q};
pub use fpq::{fpq_p_closed, fpq_p_direct, fpq_q_closed, fpq_q_direct};
pub use kernel::{
    hankel_kernel_partial, kernel_expansion_partial, kernel_l2_residual, neumann_coefficients,
    neumann_reconstruct, plane_wave_partial, pw_synthesize, ExpansionCoefficients, PWSpec,
};
pub use neumann::{neumann_fn, neumann_shift, NeumannSystem};
