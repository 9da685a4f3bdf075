//! The biorthogonal pair built from generalized little q-Gegenbauer
//! polynomials: P_n is the bare polynomial, Q_n its weighted, norm-scaled
//! partner, and together they are biorthonormal on the [-1,1] lattice under
//! the symmetric measure with parameter alpha.

use rug::Float;

use crate::context::QContext;
use crate::error::Result;
use crate::qortho::{gegenbauer_gen, gegenbauer_norm, jacobi_weight, PolyParams};

/// P_n(t) = C_n^{(beta+1/2,alpha+1/2)}(t;q^2).
pub fn biorthogonal_p(n: u32, t: &Float, p: &PolyParams, ctx: &QContext) -> Result<Float> {
    gegenbauer_gen(n, t, p, ctx)
}

/// Q_n(t) = h_n^{-1} (t^2 q^2;q^2)_inf/(t^2 q^{2b+2};q^2)_inf
///          C_n^{(beta+1/2,alpha+1/2)}(t;q^2),
/// with h_n the closed-form norm of C_n against that weight.
pub fn biorthogonal_q(n: u32, t: &Float, p: &PolyParams, ctx: &QContext) -> Result<Float> {
    let h = gegenbauer_norm(n, p, ctx)?;
    let w = jacobi_weight(t, p.beta(), ctx)?;
    let c = gegenbauer_gen(n, t, p, ctx)?;
    Ok(w * c / h)
}
