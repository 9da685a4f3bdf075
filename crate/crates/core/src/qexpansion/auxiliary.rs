//! Auxiliary Hankel-type integrals pairing two q-Bessel functions against a
//! power weight: closed forms in terms of little q-Jacobi polynomials and
//! direct lattice-sum oracles that certify them.

use rug::{Float, Rational};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::pochhammer::qpochhammer_inf_real;
use crate::qortho::{jacobi_weight, little_q_jacobi, PolyParams};
use crate::qtransform::{weber_schafheitlin_oracle, WeberParams};

fn check_positive(t: &Float) -> Result<()> {
    if t.is_zero() || t.is_sign_negative() {
        return Err(QError::DomainError("argument must be positive".into()));
    }
    Ok(())
}

/// Closed form of
/// I_-(a,b,n)(t) = t^{-a}/(1-q) int_0^inf x^{-b} J_a(xt;q^2)
///                 J_{a+b+2n+1}(q^n x;q^2) d_q x
///  = q^{nb} (q^{2b+2n+2};q^2)_inf/(q^{2n+2};q^2)_inf
///    * (t^2 q^2;q^2)_inf/(t^2 q^{2b+2};q^2)_inf * p_n^{(a,b)}(t^2;q^2),
/// for lattice t > 0. The (t^2 q^2;q^2)_inf factor makes the value vanish for
/// every lattice point t > 1.
pub fn i_minus(p: &PolyParams, n: u32, t: &Float, ctx: &QContext) -> Result<Float> {
    p.sum_checked()?;
    check_positive(t)?;
    let q2 = ctx.q_squared();
    let head = ctx.qpow(&(p.beta().clone() * Rational::from(n)));
    let num = ctx.pow_rational(&q2, &(p.beta().clone() + Rational::from(n as i64 + 1)));
    let den = ctx.pow_rational(&q2, &Rational::from(n as i64 + 1));
    let ratio: Float =
        qpochhammer_inf_real(&num, &q2, ctx)? / qpochhammer_inf_real(&den, &q2, ctx)?;
    let w = jacobi_weight(t, p.beta(), ctx)?;
    let t2 = Float::with_val(ctx.prec(), t.clone().square());
    let pj = little_q_jacobi(n, &t2, p, &q2, true, ctx)?;
    Ok(head * ratio * w * pj)
}

/// Closed form of
/// I_+(a,b,n)(t) = t^{-a}/(1-q) int_0^inf x^{b} J_a(xt;q^2)
///                 J_{a+b+2n+1}(q^n x;q^2) d_q x
///  = q^{-nb} (q^{2a+2n+2};q^2)_inf/(q^{2a+2b+2n+2};q^2)_inf
///    * p_n^{(a,b)}(t^2;q^2),
/// asserted for lattice t in (0,1] only.
pub fn i_plus(p: &PolyParams, n: u32, t: &Float, ctx: &QContext) -> Result<Float> {
    let s = p.sum_checked()?;
    check_positive(t)?;
    if *t > 1u32 {
        return Err(QError::DomainError(
            "closed form asserted only for t in (0,1]".into(),
        ));
    }
    let q2 = ctx.q_squared();
    let head = ctx.qpow(&(p.beta().clone() * Rational::from(-(n as i64))));
    let num = ctx.pow_rational(&q2, &(p.alpha().clone() + Rational::from(n as i64 + 1)));
    let den = ctx.pow_rational(&q2, &(s + Rational::from(n as i64 + 1)));
    let ratio: Float =
        qpochhammer_inf_real(&num, &q2, ctx)? / qpochhammer_inf_real(&den, &q2, ctx)?;
    let t2 = Float::with_val(ctx.prec(), t.clone().square());
    let pj = little_q_jacobi(n, &t2, p, &q2, true, ctx)?;
    Ok(head * ratio * pj)
}

/// Both defining integrals are Weber-Schafheitlin integrals with
/// lambda = -+beta, mu = alpha, nu = alpha + beta + 2n + 1 and argument
/// shifts (m, n), so the direct-summation oracle reuses that machinery.
fn i_oracle(p: &PolyParams, n: u32, t_exp: i64, plus: bool, ctx: &QContext) -> Result<Float> {
    let s = p.sum_checked()?;
    let lambda = if plus {
        -p.beta().clone()
    } else {
        p.beta().clone()
    };
    let w = WeberParams::new(
        lambda,
        p.alpha().clone(),
        s + Rational::from(2 * n as i64 + 1),
        t_exp,
        n as i64,
    )?;
    let integral = weber_schafheitlin_oracle(&w, ctx)?;
    let head: Float =
        ctx.qpow(&(p.alpha().clone() * Rational::from(-t_exp))) / (ctx.one() - ctx.q());
    Ok(head * integral.re())
}

/// Direct q-integration oracle for [`i_minus`] at t = q^{t_exp}.
pub fn i_minus_oracle(p: &PolyParams, n: u32, t_exp: i64, ctx: &QContext) -> Result<Float> {
    i_oracle(p, n, t_exp, false, ctx)
}

/// Direct q-integration oracle for [`i_plus`] at t = q^{t_exp}.
pub fn i_plus_oracle(p: &PolyParams, n: u32, t_exp: i64, ctx: &QContext) -> Result<Float> {
    i_oracle(p, n, t_exp, true, ctx)
}
