//! q-Neumann functions built from shifted q-Bessel functions.

use rug::{ops::Pow, Float, Rational};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qbessel::{bessel_normalized, BesselOrder};

/// A family of q-Neumann functions with base order alpha > -1:
/// N_{alpha,n}(x) = J_{alpha+n+1}(x q^{floor(n/2)}; q^2) / x^{alpha+1}.
/// N_{alpha,n} is even in x for even n and odd for odd n.
///
/// The floor(n/2) lattice shift is the one that makes the odd members
/// transform onto the weighted biorthogonal partner Q_n (certified by the
/// direct-summation tests in the sibling modules): writing the transform of
/// an odd member as a Weber-Schafheitlin integral with first order alpha+1
/// requires the (alpha+1)+beta+2m+2 order Bessel factor to carry exactly the
/// shift q^m for index n = 2m+1.
#[derive(Debug, Clone)]
pub struct NeumannSystem {
    base_order: Rational,
    max_index: u32,
}

impl NeumannSystem {
    pub fn new(base_order: Rational, max_index: u32) -> Result<Self> {
        if base_order <= -1i32 {
            return Err(QError::InvalidParameter(format!(
                "Neumann base order must exceed -1, got {base_order}"
            )));
        }
        Ok(NeumannSystem { base_order, max_index })
    }

    pub fn base_order(&self) -> &Rational {
        &self.base_order
    }

    pub fn max_index(&self) -> u32 {
        self.max_index
    }
}

/// Lattice shift floor(n/2) applied to the argument of the (alpha+n+1)-th
/// q-Bessel function.
pub fn neumann_shift(n: u32) -> u32 {
    n / 2
}

/// Evaluate N_{alpha,n}(x) for real x != 0. Written as
/// [J_{alpha+n+1}(y;q^2)/y^{alpha+n+1}] * x^n * q^{s(alpha+n+1)} with
/// y = x q^s and s = floor(n/2): the bracket is even and entire in y^2,
/// so the parity in x is carried entirely by the x^n factor.
pub fn neumann_fn(sys: &NeumannSystem, n: u32, x: &Float, ctx: &QContext) -> Result<Float> {
    if n > sys.max_index {
        return Err(QError::InvalidParameter(format!(
            "index {n} exceeds max_index {}",
            sys.max_index
        )));
    }
    if x.is_zero() {
        return Err(QError::ZeroArgument);
    }
    let order = BesselOrder::new(sys.base_order.clone() + Rational::from(n as i64 + 1))?;
    let s = neumann_shift(n) as i64;
    let qs = ctx.qpow(&Rational::from(s));
    let y: Float = x.clone() * qs;
    let j = bessel_normalized(&order, &y, &ctx.q_squared(), ctx)?;
    // q^{s(alpha+n+1)}
    let e = (sys.base_order.clone() + Rational::from(n as i64 + 1)) * Rational::from(s);
    let scale = ctx.qpow(&e);
    let xn = Float::with_val(ctx.prec(), x.clone().pow(n));
    Ok(j.re() * xn * scale)
}
