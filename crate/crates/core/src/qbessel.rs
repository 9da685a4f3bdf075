//! Third Jackson q-Bessel function, q-trigonometric functions, the
//! q-exponential e(z;q^2) and the generalized q-exponential kernel E_alpha.
//!
//! Orders and kernel parameters are kept as exact rationals so that lattice
//! powers such as q^{2*alpha+2} can be formed without rounding the exponent.

use rug::{ops::Pow, Complex, Float, Rational};

use crate::context::{QContext, SeriesValue};
use crate::error::{QError, Result};
use crate::qcore::hypergeometric::{basic_hypergeometric, one_phi_one_real};
use crate::qcore::pochhammer::{qpochhammer_inf_real, qpochhammer_real};

/// Order nu > -1 of a q-Bessel function, stored exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BesselOrder(Rational);

impl BesselOrder {
    pub fn new(nu: Rational) -> Result<Self> {
        if nu <= -1i32 {
            return Err(QError::InvalidParameter(format!(
                "Bessel order must exceed -1, got {nu}"
            )));
        }
        Ok(BesselOrder(nu))
    }

    /// Convenience constructor from a numerator/denominator pair.
    pub fn from_parts(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(QError::InvalidParameter("zero denominator".into()));
        }
        Self::new(Rational::from((num, den)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// Order shifted by an integer, e.g. nu + 1.
    pub fn shifted(&self, delta: i64) -> Result<Self> {
        Self::new(self.0.clone() + delta)
    }

    fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }
}

/// Parameter alpha > -1 of the kernel E_alpha.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelParams(Rational);

impl KernelParams {
    pub fn new(alpha: Rational) -> Result<Self> {
        if alpha <= -1i32 {
            return Err(QError::InvalidParameter(format!(
                "kernel parameter must exceed -1, got {alpha}"
            )));
        }
        Ok(KernelParams(alpha))
    }

    pub fn from_parts(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(QError::InvalidParameter("zero denominator".into()));
        }
        Self::new(Rational::from((num, den)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

/// Extra working bits needed to absorb the cancellation of an alternating
/// series with terms base^{n(n-1)/2} z^n when |z| > 1. With
/// kappa = ln|z|/ln(1/base), the largest term has magnitude about
/// (1/base)^{kappa(kappa+1)/2} while the sum itself shrinks to roughly
/// base^{kappa^2/2}, so full relative accuracy costs about kappa^2 powers of
/// 1/base; `order` adds headroom for a subsequent multiplication by a power
/// x^order of the large argument.
pub fn series_boost_bits(z_abs: &Float, base: &Float, order: f64) -> u32 {
    let za = z_abs.to_f64();
    if !(za > 1.0) {
        return 0;
    }
    let ln_inv_base = -base.to_f64().ln();
    if !(ln_inv_base > 0.0) {
        return 0;
    }
    let kappa = za.ln() / ln_inv_base;
    let powers = kappa * kappa + kappa * (2.0 + order.max(0.0));
    (powers * ln_inv_base / std::f64::consts::LN_2).ceil() as u32 + 64
}

/// Round a boosted result back down to the context precision.
fn demote(mut v: SeriesValue, ctx: &QContext) -> SeriesValue {
    if v.value.prec().0 > ctx.prec() {
        v.value.set_prec(ctx.prec());
        v.err_estimate.set_prec(ctx.prec());
    }
    v
}

/// 1_phi_1(0; b | base; z) with automatic precision boosting for |z| > 1.
/// `b_exp` is the exact exponent of b = base^{b_exp}.
fn phi_boosted(b_exp: &Rational, base: &Float, z: &Float, ctx: &QContext) -> Result<SeriesValue> {
    let boost = series_boost_bits(&z.clone().abs(), base, b_exp.to_f64());
    let c = ctx.boosted(boost);
    let mut base_b = Float::with_val(c.prec(), base);
    base_b.set_prec(c.prec());
    let b = c.pow_rational(&base_b, b_exp);
    let zb = Float::with_val(c.prec(), z);
    let v = one_phi_one_real(&b, &base_b, &zb, &c)?;
    Ok(demote(v, ctx))
}

/// J_nu(x; base) / x^nu: the even entire-in-x^2 part of the third Jackson
/// q-Bessel function,
/// (base^{nu+1};base)_inf/(base;base)_inf * 1_phi_1(0; base^{nu+1} | base; base*x^2).
/// Defined for every real x including 0 and negative values.
pub fn bessel_normalized(
    nu: &BesselOrder,
    x: &Float,
    base: &Float,
    ctx: &QContext,
) -> Result<SeriesValue> {
    let b_exp = nu.value().clone() + 1i32;
    let b = ctx.pow_rational(base, &b_exp);
    let pref = qpochhammer_inf_real(&b, base, ctx)? / qpochhammer_inf_real(base, base, ctx)?;
    let z: Float = x.clone().square() * base;
    let mut v = phi_boosted(&b_exp, base, &z, ctx)?;
    v.value *= &pref;
    v.err_estimate *= pref.abs();
    Ok(v)
}

/// Third Jackson q-Bessel function J_nu(x; base) for real x.
/// Negative x is allowed only for integer nu (odd orders flip the sign);
/// otherwise the principal power x^nu has a branch cut there.
pub fn jackson3_bessel_real(
    nu: &BesselOrder,
    x: &Float,
    base: &Float,
    ctx: &QContext,
) -> Result<SeriesValue> {
    if x.is_zero() {
        return bessel_at_zero(nu, ctx);
    }
    let negative = x.is_sign_negative();
    if negative && !nu.is_integer() {
        return Err(QError::BranchCut);
    }
    let ax = x.clone().abs();
    let power = ctx.pow_rational(&ax, nu.value());
    let sign = if negative && nu.value().numer().clone() % 2 != 0 {
        -ctx.one()
    } else {
        ctx.one()
    };
    let mut v = bessel_normalized(nu, &ax, base, ctx)?;
    let factor: Float = sign * power;
    v.value *= &factor;
    v.err_estimate *= factor.abs();
    Ok(v)
}

fn bessel_at_zero(nu: &BesselOrder, ctx: &QContext) -> Result<SeriesValue> {
    use std::cmp::Ordering;
    match nu.value().cmp0() {
        Ordering::Greater => Ok(SeriesValue::exact(ctx.complex(0.0, 0.0), 1)),
        Ordering::Equal => Ok(SeriesValue::exact(ctx.complex(1.0, 0.0), 1)),
        Ordering::Less => Err(QError::ZeroArgument),
    }
}

/// Third Jackson q-Bessel function for complex x off the negative real axis
/// (negative real x allowed for integer nu).
pub fn jackson3_bessel(
    nu: &BesselOrder,
    x: &Complex,
    base: &Float,
    ctx: &QContext,
) -> Result<SeriesValue> {
    if x.imag().is_zero() {
        return jackson3_bessel_real(nu, &x.real().clone(), base, ctx);
    }
    let b_exp = nu.value().clone() + 1i32;
    let abs_x = Float::with_val(ctx.prec(), x.clone().abs().into_real_imag().0);
    let z_abs: Float = abs_x.square() * base;
    let boost = series_boost_bits(&z_abs, base, nu.value().to_f64());
    let c = ctx.boosted(boost);
    let mut base_b = Float::with_val(c.prec(), base);
    base_b.set_prec(c.prec());
    let b = c.pow_rational(&base_b, &b_exp);
    let bc = Complex::with_val(c.prec(), (&b, &c.zero()));
    let xb = Complex::with_val(c.prec(), x);
    let z: Complex = xb.clone().square() * &base_b;
    let phi = basic_hypergeometric(&[c.complex(0.0, 0.0)], &[bc], &base_b, &z, &c)?;
    let pref = qpochhammer_inf_real(&b, &base_b, &c)? / qpochhammer_inf_real(&base_b, &base_b, &c)?;
    let exponent = Float::with_val(c.prec(), nu.value());
    let power: Complex = xb.pow(&exponent);
    let mut v = phi;
    v.value *= &power;
    v.value *= &pref;
    let pa = Float::with_val(c.prec(), power.abs().into_real_imag().0);
    v.err_estimate *= pa * pref.abs();
    Ok(demote(v, ctx))
}

/// Direct power-series oracle for J_nu(x; base) at positive real x:
/// pref * x^nu * sum_n (-1)^n base^{n(n+1)/2} x^{2n} / ((base^{nu+1};base)_n (base;base)_n).
/// Slower than the 1_phi_1 route; retained as an independent cross-check.
pub fn jackson3_bessel_series_oracle(
    nu: &BesselOrder,
    x: &Float,
    base: &Float,
    ctx: &QContext,
) -> Result<Float> {
    if x.is_zero() || x.is_sign_negative() {
        return Err(QError::DomainError(
            "series oracle requires x > 0".into(),
        ));
    }
    let z_abs: Float = x.clone().square() * base;
    let boost = series_boost_bits(&z_abs, base, nu.value().to_f64());
    let c = ctx.boosted(boost);
    let prec = c.prec();
    let mut base_b = Float::with_val(prec, base);
    base_b.set_prec(prec);
    let b_exp = nu.value().clone() + 1i32;
    let b = c.pow_rational(&base_b, &b_exp);
    let xb = Float::with_val(prec, x);
    let x2 = xb.clone().square();
    let mut sum = Float::with_val(prec, 0);
    let mut converged = false;
    for n in 0..(c.trunc.max_terms as u32) {
        // base^{n(n+1)/2} via an exact rational exponent
        let e = Rational::from((i64::from(n) * (i64::from(n) + 1), 2));
        let qtri = c.pow_rational(&base_b, &e);
        let num: Float = qtri * x2.clone().pow(n);
        let den = qpochhammer_real(&b, &base_b, n) * qpochhammer_real(&base_b, &base_b, n);
        let mut term: Float = num / den;
        if n % 2 == 1 {
            term = -term;
        }
        sum += &term;
        let small = term.clone().abs()
            <= c.trunc.tail_rel_tol.clone() * sum.clone().abs().max(&term.clone().abs());
        // past the magnitude peak the terms decay superexponentially
        let past_peak = Float::with_val(prec, x2.clone() * base_b.clone().pow(n)) < 1u32;
        if small && past_peak {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(QError::NonConvergent {
            max_terms: c.trunc.max_terms,
            last_term: f64::NAN,
        });
    }
    let pref = qpochhammer_inf_real(&b, &base_b, &c)? / qpochhammer_inf_real(&base_b, &base_b, &c)?;
    let power = c.pow_rational(&xb, nu.value());
    let mut out: Float = sum * pref * power;
    out.set_prec(ctx.prec());
    Ok(out)
}

/// cos(z; q^2) = 1_phi_1(0; q | q^2; q^2 z^2), an even entire function.
pub fn q_cos(z: &Float, ctx: &QContext) -> Result<SeriesValue> {
    let q2 = ctx.q_squared();
    let z2: Float = z.clone().square() * &q2;
    phi_boosted(&Rational::from((1, 2)), &q2, &z2, ctx)
}

/// sin(z; q^2) = z/(1-q) * 1_phi_1(0; q^3 | q^2; q^2 z^2), an odd entire
/// function.
pub fn q_sin(z: &Float, ctx: &QContext) -> Result<SeriesValue> {
    let q2 = ctx.q_squared();
    let z2: Float = z.clone().square() * &q2;
    let mut v = phi_boosted(&Rational::from((3, 2)), &q2, &z2, ctx)?;
    let factor: Float = z.clone() / (ctx.one() - ctx.q());
    v.value *= &factor;
    v.err_estimate *= factor.abs();
    Ok(v)
}

/// (cos(z;q^2), sin(z;q^2)) in one call.
pub fn q_trig(z: &Float, ctx: &QContext) -> Result<(SeriesValue, SeriesValue)> {
    Ok((q_cos(z, ctx)?, q_sin(z, ctx)?))
}

/// e(iy; q^2) = cos(y;q^2) + i sin(y;q^2) for real y: the q-exponential on
/// the imaginary axis, which is the kernel of the q-Fourier-type transforms.
pub fn rubin_exp_i(y: &Float, ctx: &QContext) -> Result<SeriesValue> {
    let c = q_cos(y, ctx)?;
    let s = q_sin(y, ctx)?;
    let value = Complex::with_val(ctx.prec(), (c.re(), s.re()));
    let err = c.err_estimate.clone().max(&s.err_estimate);
    Ok(SeriesValue {
        value,
        err_estimate: err,
        terms_used: c.terms_used.max(s.terms_used),
    })
}

/// e(x; q^2) for real x: both 1_phi_1 arguments become -q^2 x^2, so the value
/// is real.
pub fn rubin_exp(x: &Float, ctx: &QContext) -> Result<SeriesValue> {
    let q2 = ctx.q_squared();
    let z: Float = -(x.clone().square() * &q2);
    let even = phi_boosted(&Rational::from((1, 2)), &q2, &z, ctx)?;
    let odd = phi_boosted(&Rational::from((3, 2)), &q2, &z, ctx)?;
    let factor: Float = x.clone() / (ctx.one() - ctx.q());
    let value: Complex = even.value + odd.value * &factor;
    let err = even
        .err_estimate
        .clone()
        .max(&Float::with_val(ctx.prec(), odd.err_estimate * factor.abs()));
    Ok(SeriesValue {
        value,
        err_estimate: err,
        terms_used: even.terms_used.max(odd.terms_used),
    })
}

/// Generalized q-exponential kernel at a purely imaginary argument:
/// E_alpha(ix; q^2) =
///   1_phi_1(0; q^{2a+2} | q^2; q^2 x^2)
///   + i x/(1-q^{2a+2}) * 1_phi_1(0; q^{2a+4} | q^2; q^2 x^2).
pub fn dunkl_kernel(alpha: &KernelParams, x: &Float, ctx: &QContext) -> Result<SeriesValue> {
    let q2 = ctx.q_squared();
    let z: Float = x.clone().square() * &q2;
    let a = alpha.value();
    let e1 = Rational::from(a) + 1i32; // exponent in base q^2: q^{2a+2}
    let e2 = Rational::from(a) + 2i32;
    let even = phi_boosted(&e1, &q2, &z, ctx)?;
    let odd = phi_boosted(&e2, &q2, &z, ctx)?;
    let denom: Float = ctx.one() - ctx.pow_rational(&q2, &e1);
    let factor: Float = x.clone() / denom;
    let value = Complex::with_val(
        ctx.prec(),
        (even.re(), Float::with_val(ctx.prec(), odd.re() * &factor)),
    );
    let err = even
        .err_estimate
        .clone()
        .max(&Float::with_val(ctx.prec(), odd.err_estimate * factor.abs()));
    Ok(SeriesValue {
        value,
        err_estimate: err,
        terms_used: even.terms_used.max(odd.terms_used),
    })
}

/// The Bessel-quotient form of the same kernel,
/// (q^2;q^2)_inf/(q^{2a+2};q^2)_inf [ J_a(x;q^2)/x^a + i x J_{a+1}(x;q^2)/x^{a+1} ],
/// used as an independent cross-check.
pub fn dunkl_kernel_bessel_form(
    alpha: &KernelParams,
    x: &Float,
    ctx: &QContext,
) -> Result<Complex> {
    let q2 = ctx.q_squared();
    let nu0 = BesselOrder::new(alpha.value().clone())?;
    let nu1 = nu0.shifted(1)?;
    let j0 = bessel_normalized(&nu0, x, &q2, ctx)?;
    let j1 = bessel_normalized(&nu1, x, &q2, ctx)?;
    let e1 = Rational::from(alpha.value()) + 1i32;
    let b = ctx.pow_rational(&q2, &e1);
    let ratio = qpochhammer_inf_real(&q2, &q2, ctx)? / qpochhammer_inf_real(&b, &q2, ctx)?;
    let re = j0.re();
    let im: Float = j1.re() * x;
    let mut v = Complex::with_val(ctx.prec(), (&re, &im));
    v *= &ratio;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::new(0.5, 40).unwrap()
    }

    fn tol(c: &QContext, e: i32) -> Float {
        Float::with_val(c.prec(), 10).pow(e)
    }

    #[test]
    fn order_validation() {
        assert!(BesselOrder::from_parts(-3, 2).is_err());
        assert!(BesselOrder::from_parts(-1, 1).is_err());
        assert!(BesselOrder::from_parts(-1, 2).is_ok());
        assert!(KernelParams::from_parts(3, 10).is_ok());
        assert!(KernelParams::from_parts(-2, 1).is_err());
    }

    #[test]
    fn bessel_zero_argument() {
        let c = ctx();
        let nu = BesselOrder::from_parts(1, 1).unwrap();
        let v = jackson3_bessel_real(&nu, &c.zero(), &c.q_squared(), &c).unwrap();
        assert!(v.value.is_zero());
        let nu0 = BesselOrder::from_parts(0, 1).unwrap();
        let v0 = jackson3_bessel_real(&nu0, &c.zero(), &c.q_squared(), &c).unwrap();
        assert_eq!(v0.value, c.complex(1.0, 0.0));
        let num = BesselOrder::from_parts(-1, 2).unwrap();
        assert!(matches!(
            jackson3_bessel_real(&num, &c.zero(), &c.q_squared(), &c),
            Err(QError::ZeroArgument)
        ));
    }

    #[test]
    fn branch_cut_on_negative_axis() {
        let c = ctx();
        let nu = BesselOrder::from_parts(1, 2).unwrap();
        let x = c.float(-0.25);
        assert!(matches!(
            jackson3_bessel_real(&nu, &x, &c.q_squared(), &c),
            Err(QError::BranchCut)
        ));
        // integer order: J_1(-x) = -J_1(x)
        let n1 = BesselOrder::from_parts(1, 1).unwrap();
        let a = jackson3_bessel_real(&n1, &c.float(0.25), &c.q_squared(), &c).unwrap();
        let b = jackson3_bessel_real(&n1, &c.float(-0.25), &c.q_squared(), &c).unwrap();
        let diff: Float = (a.re() + b.re()).abs();
        assert!(diff < tol(&c, -35));
    }

    #[test]
    fn phi_form_matches_series_oracle_spot() {
        // nu = 1/2, x = q^3, base q (not q^2): both printed forms agree
        let c = ctx();
        let nu = BesselOrder::from_parts(1, 2).unwrap();
        let x = c.float(0.125);
        let v = jackson3_bessel_real(&nu, &x, c.q(), &c).unwrap();
        let o = jackson3_bessel_series_oracle(&nu, &x, c.q(), &c).unwrap();
        let diff: Float = (v.re() - o).abs();
        assert!(diff < tol(&c, -33), "diff {diff}");
    }

    #[test]
    fn phi_form_matches_series_oracle_sweep() {
        // orders {-1/2, 1/2, 3/10, 17/10}, x = q^k for k = -5..=8, q in {0.3, 0.5, 0.8}
        for qv in [0.3, 0.5, 0.8] {
            let c = QContext::new(qv, 40).unwrap();
            let base = c.q_squared();
            for (num, den) in [(-1i64, 2i64), (1, 2), (3, 10), (17, 10)] {
                let nu = BesselOrder::from_parts(num, den).unwrap();
                for k in -5i64..=8 {
                    let x = c.qpow(&Rational::from(k));
                    let v = jackson3_bessel_real(&nu, &x, &base, &c).unwrap();
                    let o = jackson3_bessel_series_oracle(&nu, &x, &base, &c).unwrap();
                    let scale: Float = o.clone().abs().max(&c.one());
                    let diff: Float = (v.re() - &o).abs() / scale;
                    assert!(diff < tol(&c, -30), "q={qv} nu={num}/{den} k={k}: {diff}");
                }
            }
        }
    }

    #[test]
    fn trig_values_at_zero_and_leading_order() {
        let c = ctx();
        let (cos0, sin0) = q_trig(&c.zero(), &c).unwrap();
        assert_eq!(cos0.value, c.complex(1.0, 0.0));
        assert!(sin0.value.is_zero());
        // sin(z;q^2)/z -> 1/(1-q) as z -> 0
        let z = c.float(1e-8);
        let s = q_sin(&z, &c).unwrap();
        let lead: Float = s.re() / &z;
        let expect: Float = (c.one() - c.q()).recip();
        let diff: Float = (lead - &expect).abs() / expect;
        assert!(diff < tol(&c, -14), "diff {diff}");
    }

    #[test]
    fn trig_matches_half_order_bessel_route() {
        // cos(z;q^2) = (q^2;q^2)inf/(q;q^2)inf z^{1/2} J_{-1/2}(z;q^2),
        // sin(z;q^2) = (q^2;q^2)inf/(q;q^2)inf z^{1/2} J_{+1/2}(z;q^2),
        // checked at base pair q = 0.7 (so q^2 = 0.49) and z = q^2.
        let c = QContext::new(0.49, 40).unwrap();
        let q2 = c.q_squared(); // 0.49^2
        let z = c.float(0.49);
        let qq = c.q().clone(); // plays the role of q^2's square root
        let num = qpochhammer_inf_real(&q2, &q2, &c).unwrap();
        let den = qpochhammer_inf_real(&qq, &q2, &c).unwrap();
        let half = Rational::from((1, 2));
        let sqrt_z = c.pow_rational(&z, &half);
        let jm = jackson3_bessel_real(
            &BesselOrder::from_parts(-1, 2).unwrap(),
            &z,
            &q2,
            &c,
        )
        .unwrap();
        let jp = jackson3_bessel_real(
            &BesselOrder::from_parts(1, 2).unwrap(),
            &z,
            &q2,
            &c,
        )
        .unwrap();
        let (cv, sv) = q_trig(&z, &c).unwrap();
        let cos_ref: Float = num.clone() / den.clone() * &sqrt_z * jm.re();
        let sin_ref: Float = num / den * &sqrt_z * jp.re();
        let dc: Float = (cv.re() - cos_ref).abs();
        let ds: Float = (sv.re() - sin_ref).abs();
        assert!(dc < tol(&c, -33), "cos mismatch {dc}");
        assert!(ds < tol(&c, -33), "sin mismatch {ds}");
    }

    #[test]
    fn rubin_exp_consistency() {
        let c = ctx();
        let zero = rubin_exp_i(&c.zero(), &c).unwrap();
        assert_eq!(zero.value, c.complex(1.0, 0.0));
        // e(i q^3; q^2): real part cos, imaginary part sin
        let y = c.float(0.125);
        let e = rubin_exp_i(&y, &c).unwrap();
        let (cv, sv) = q_trig(&y, &c).unwrap();
        assert_eq!(e.value.real(), &cv.re());
        assert_eq!(e.value.imag(), &sv.re());
    }

    #[test]
    fn rubin_exp_equals_kernel_at_special_parameter() {
        // e(ix;q^2) = E_{-1/2}(ix;q^2)
        let c = ctx();
        let x = c.float(0.25);
        let e = rubin_exp_i(&x, &c).unwrap();
        let k = dunkl_kernel(&KernelParams::from_parts(-1, 2).unwrap(), &x, &c).unwrap();
        let diff: Complex = e.value - &k.value;
        let d = Float::with_val(c.prec(), diff.abs().into_real_imag().0);
        assert!(d < tol(&c, -33), "diff {d}");
    }

    #[test]
    fn kernel_trivia_and_parity() {
        let c = ctx();
        let a = KernelParams::from_parts(3, 10).unwrap();
        let at0 = dunkl_kernel(&a, &c.zero(), &c).unwrap();
        assert_eq!(at0.value, c.complex(1.0, 0.0));
        let x = c.float(0.4);
        let p = dunkl_kernel(&a, &x, &c).unwrap();
        let m = dunkl_kernel(&a, &c.float(-0.4), &c).unwrap();
        assert_eq!(p.value.real(), m.value.real());
        let sum: Float = (p.value.imag().clone() + m.value.imag()).abs();
        assert!(sum < tol(&c, -35));
    }

    #[test]
    fn kernel_phi_form_matches_bessel_quotient() {
        let c = ctx();
        let a = KernelParams::from_parts(3, 10).unwrap();
        let x = c.float(0.25); // q^2
        let v = dunkl_kernel(&a, &x, &c).unwrap();
        let w = dunkl_kernel_bessel_form(&a, &x, &c).unwrap();
        let diff: Complex = v.value - &w;
        let d = Float::with_val(c.prec(), diff.abs().into_real_imag().0);
        assert!(d < tol(&c, -33), "diff {d}");
    }

    #[test]
    fn large_argument_boost() {
        // x = q^{-6}: the alternating series needs extra working bits but the
        // result still matches the independent oracle.
        let c = ctx();
        let nu = BesselOrder::from_parts(3, 10).unwrap();
        let x = c.qpow(&Rational::from(-6));
        let v = jackson3_bessel_real(&nu, &x, &c.q_squared(), &c).unwrap();
        let o = jackson3_bessel_series_oracle(&nu, &x, &c.q_squared(), &c).unwrap();
        let scale: Float = o.clone().abs().max(&c.one());
        let diff: Float = (v.re() - o).abs() / scale;
        assert!(diff < tol(&c, -30), "diff {diff}");
    }

    #[test]
    fn complex_argument_agrees_with_real_path() {
        let c = ctx();
        let nu = BesselOrder::from_parts(3, 10).unwrap();
        let x = c.float(0.3);
        let vr = jackson3_bessel_real(&nu, &x, &c.q_squared(), &c).unwrap();
        let vc = jackson3_bessel(&nu, &c.complex(0.3, 0.0), &c.q_squared(), &c).unwrap();
        let diff: Complex = vr.value - &vc.value;
        let d = Float::with_val(c.prec(), diff.abs().into_real_imag().0);
        assert!(d < tol(&c, -33));
    }
}
