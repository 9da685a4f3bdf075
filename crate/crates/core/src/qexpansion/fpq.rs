//! Closed forms and direct-transform evaluations of the two identities
//! linking the q-Dunkl-type transform of the q-Neumann functions (plain and
//! |x|^{2beta}-weighted) to the biorthogonal pair Q_n and P_n.

use rug::{Complex, Float, Rational};

use crate::context::{QContext, SeriesValue};
use crate::error::Result;
use crate::lattice::Sign;
use crate::qcore::pochhammer::qpochhammer_inf_real;
use crate::qexpansion::biortho::{biorthogonal_p, biorthogonal_q};
use crate::qexpansion::neumann::{neumann_fn, NeumannSystem};
use crate::qortho::PolyParams;
use crate::qtransform::dunkl_transform_fn;

/// (-i)^k
fn minus_i_pow(k: u32, ctx: &QContext) -> Complex {
    match k % 4 {
        0 => ctx.complex(1.0, 0.0),
        1 => ctx.complex(0.0, -1.0),
        2 => ctx.complex(-1.0, 0.0),
        _ => ctx.complex(0.0, 1.0),
    }
}

/// Ratio (q^{2a+2b+2};q^2)_inf/(q^2;q^2)_inf and its sibling appear in both
/// identities; exponents handled exactly.
fn inf_ratio(num_exp: &Rational, den_exp: &Rational, ctx: &QContext) -> Result<Float> {
    let q2 = ctx.q_squared();
    let num = ctx.pow_rational(&q2, num_exp);
    let den = ctx.pow_rational(&q2, den_exp);
    Ok(qpochhammer_inf_real(&num, &q2, ctx)? / qpochhammer_inf_real(&den, &q2, ctx)?)
}

/// Direct evaluation of F_{a,q}(N_{a+b,k})(t) at t = t_sign q^{t_exp} by the
/// lattice-sum transform.
pub fn fpq_q_direct(
    k: u32,
    p: &PolyParams,
    t_sign: Sign,
    t_exp: i64,
    ctx: &QContext,
) -> Result<SeriesValue> {
    let sys = NeumannSystem::new(p.sum_checked()?, k)?;
    dunkl_transform_fn(
        |_s, _j, x| {
            let v = neumann_fn(&sys, k, x, ctx)?;
            Ok(Complex::with_val(ctx.prec(), (&v, &ctx.zero())))
        },
        p.alpha(),
        t_sign,
        t_exp,
        false,
        ctx,
    )
}

/// Closed-form right-hand side of the same transform:
/// (-i)^k q^{floor(k/2) b} / (1-q^{2a+2b+2k+2})
/// * (q^{2a+2b+2};q^2)_inf/(q^2;q^2)_inf * Q_k(t) * chi_{[-1,1]}(t),
/// evaluated at t = t_sign q^{t_exp} (zero for t_exp < 0).
pub fn fpq_q_closed(
    k: u32,
    p: &PolyParams,
    t_sign: Sign,
    t_exp: i64,
    ctx: &QContext,
) -> Result<Complex> {
    if t_exp < 0 {
        return Ok(ctx.complex(0.0, 0.0));
    }
    let s = p.sum_checked()?;
    let head_pow = ctx.qpow(&(p.beta().clone() * Rational::from(k as i64 / 2)));
    let denom_exp = s.clone() + Rational::from(k as i64 + 1);
    let denom: Float = ctx.one() - ctx.pow_rational(&ctx.q_squared(), &denom_exp);
    let ratio = inf_ratio(&(s + 1i32), &Rational::from(1), ctx)?;
    let t: Float = Float::with_val(ctx.prec(), t_sign.factor()) * ctx.qpow(&Rational::from(t_exp));
    let qk = biorthogonal_q(k, &t, p, ctx)?;
    let scale: Float = head_pow * ratio * qk / denom;
    let mut v = minus_i_pow(k, ctx);
    v *= &scale;
    Ok(v)
}

/// Direct evaluation of F_{a,q}(|.|^{2b} N_{a+b,k})(t).
pub fn fpq_p_direct(
    k: u32,
    p: &PolyParams,
    t_sign: Sign,
    t_exp: i64,
    ctx: &QContext,
) -> Result<SeriesValue> {
    let sys = NeumannSystem::new(p.sum_checked()?, k)?;
    let two_beta = Rational::from(2) * p.beta().clone();
    dunkl_transform_fn(
        |_s, _j, x| {
            let v = neumann_fn(&sys, k, x, ctx)?;
            let w = ctx.pow_rational(&x.clone().abs(), &two_beta);
            Ok(Complex::with_val(ctx.prec(), (v * w, &ctx.zero())))
        },
        p.alpha(),
        t_sign,
        t_exp,
        false,
        ctx,
    )
}

/// Closed-form right-hand side of the weighted transform:
/// (-i)^k q^{-floor(k/2) b}
/// * (q^{2a+2};q^2)_inf/(q^{2a+2b+2};q^2)_inf * P_k(t),
/// asserted for t in [-1,1] only (t_exp >= 0).
pub fn fpq_p_closed(
    k: u32,
    p: &PolyParams,
    t_sign: Sign,
    t_exp: i64,
    ctx: &QContext,
) -> Result<Complex> {
    let s = p.sum_checked()?;
    if t_exp < 0 {
        return Err(crate::error::QError::DomainError(
            "closed form asserted only for t in [-1,1]".into(),
        ));
    }
    let head_pow = ctx.qpow(&(p.beta().clone() * Rational::from(-(k as i64 / 2))));
    let ratio = inf_ratio(&(p.alpha().clone() + 1i32), &(s + 1i32), ctx)?;
    let t: Float = Float::with_val(ctx.prec(), t_sign.factor()) * ctx.qpow(&Rational::from(t_exp));
    let pk = biorthogonal_p(k, &t, p, ctx)?;
    let scale: Float = head_pow * ratio * pk;
    let mut v = minus_i_pow(k, ctx);
    v *= &scale;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn ctx() -> QContext {
        QContext::new(0.5, 40).unwrap()
    }

    fn tol(c: &QContext, e: i32) -> Float {
        Float::with_val(c.prec(), 10).pow(e)
    }

    fn params() -> PolyParams {
        PolyParams::from_parts(3, 10, 7, 10).unwrap()
    }

    fn cdiff(a: &Complex, b: &Complex, c: &QContext) -> Float {
        let d: Complex = a.clone() - b;
        Float::with_val(c.prec(), d.abs().into_real_imag().0)
    }

    #[test]
    fn q_identity_even_and_odd() {
        let c = ctx();
        let p = params();
        for k in [0u32, 1, 2, 3] {
            for s in [Sign::Plus, Sign::Minus] {
                for e in [0i64, 2, 5] {
                    let lhs = fpq_q_direct(k, &p, s, e, &c).unwrap().value;
                    let rhs = fpq_q_closed(k, &p, s, e, &c).unwrap();
                    let d = cdiff(&lhs, &rhs, &c);
                    assert!(d < tol(&c, -25), "k={k} t={s:?}q^{e}: {d}");
                }
            }
        }
    }

    #[test]
    fn q_transform_vanishes_outside_unit_interval() {
        let c = ctx();
        let p = params();
        for k in [0u32, 1] {
            for e in [-1i64, -2] {
                let v = fpq_q_direct(k, &p, Sign::Plus, e, &c).unwrap();
                let a = Float::with_val(c.prec(), v.value.abs().into_real_imag().0);
                assert!(a < tol(&c, -25), "k={k} e={e}: {a}");
            }
        }
    }

    #[test]
    fn p_identity_even_and_odd() {
        let c = ctx();
        let p = params();
        for k in [0u32, 1, 2] {
            for s in [Sign::Plus, Sign::Minus] {
                for e in [0i64, 1, 4] {
                    let lhs = fpq_p_direct(k, &p, s, e, &c).unwrap().value;
                    let rhs = fpq_p_closed(k, &p, s, e, &c).unwrap();
                    let d = cdiff(&lhs, &rhs, &c);
                    assert!(d < tol(&c, -25), "k={k} t={s:?}q^{e}: {d}");
                }
            }
        }
    }
}
