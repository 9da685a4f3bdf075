//! Bilinear kernel expansions: the main expansion of the q-exponential
//! kernel E_a(ixt;q^2) in q-Neumann functions times generalized little
//! q-Gegenbauer polynomials, its plane-wave and q-Hankel-kernel
//! specializations, and Paley-Wiener-type synthesis/reconstruction.

use std::collections::HashMap;

use rug::{ops::Pow, Complex, Float, Rational};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::lattice::{LatticeDomain, LatticeFunction, Sign};
use crate::qbessel::{bessel_normalized, dunkl_kernel, BesselOrder, KernelParams};
use crate::qcore::pochhammer::{qpochhammer_inf_real, qpochhammer_real};
use crate::qexpansion::neumann::{neumann_fn, neumann_shift, NeumannSystem};
use crate::qortho::{gegenbauer, gegenbauer_gen, little_q_jacobi, PolyParams};
use crate::qtransform::measure_constant_mu;

/// i^n
fn i_pow(n: u32, ctx: &QContext) -> Complex {
    match n % 4 {
        0 => ctx.complex(1.0, 0.0),
        1 => ctx.complex(0.0, 1.0),
        2 => ctx.complex(-1.0, 0.0),
        _ => ctx.complex(0.0, -1.0),
    }
}

/// (base^{2 num};q^2)_inf/(base^{2 den};q^2)_inf with exact exponents in
/// base q^2.
fn inf_ratio(num_exp: &Rational, den_exp: &Rational, ctx: &QContext) -> Result<Float> {
    let q2 = ctx.q_squared();
    let num = ctx.pow_rational(&q2, num_exp);
    let den = ctx.pow_rational(&q2, den_exp);
    Ok(qpochhammer_inf_real(&num, &q2, ctx)? / qpochhammer_inf_real(&den, &q2, ctx)?)
}

/// Kernel values E_a(i q^e;q^2) cached by lattice exponent; negative real
/// arguments come for free by conjugation (even real part, odd imaginary
/// part).
struct EvenOddKernelCache<'a> {
    params: KernelParams,
    ctx: &'a QContext,
    map: HashMap<i64, Complex>,
}

impl<'a> EvenOddKernelCache<'a> {
    fn new(alpha: &Rational, ctx: &'a QContext) -> Result<Self> {
        Ok(EvenOddKernelCache {
            params: KernelParams::new(alpha.clone())?,
            ctx,
            map: HashMap::new(),
        })
    }

    /// E_a(i sigma q^e;q^2)
    fn get(&mut self, sigma: Sign, e: i64) -> Result<Complex> {
        let v = if let Some(v) = self.map.get(&e) {
            v.clone()
        } else {
            let x = self.ctx.qpow(&Rational::from(e));
            let v = dunkl_kernel(&self.params, &x, self.ctx)?.value;
            self.map.insert(e, v.clone());
            v
        };
        Ok(match sigma {
            Sign::Plus => v,
            Sign::Minus => v.conj(),
        })
    }
}

/// The x-dependent coefficients of the kernel expansion at x = x_sign q^{x_exp}:
/// c_n = i^n q^{-floor(n/2) b} (1 - q^{2a+2b+2n+2}) N_{a+b,n}(x),
/// for n = 0..=n_max, so the partial sum is pref * sum_n c_n C_n(t) with
/// pref = (q^2;q^2)_inf/(q^{2a+2b+2};q^2)_inf.
fn expansion_coefficients_at(
    p: &PolyParams,
    x_sign: Sign,
    x_exp: i64,
    n_max: u32,
    ctx: &QContext,
) -> Result<Vec<Complex>> {
    let s = p.sum_checked()?;
    let sys = NeumannSystem::new(s.clone(), n_max)?;
    let x: Float =
        Float::with_val(ctx.prec(), x_sign.factor()) * ctx.qpow(&Rational::from(x_exp));
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let shift = Rational::from(n as i64 / 2);
        let qfac = ctx.qpow(&(-p.beta().clone() * shift));
        let one_minus: Float =
            ctx.one() - ctx.pow_rational(&ctx.q_squared(), &(s.clone() + Rational::from(n as i64 + 1)));
        let jn = neumann_fn(&sys, n, &x, ctx)?;
        let scale: Float = qfac * one_minus * jn;
        let mut c = i_pow(n, ctx);
        c *= &scale;
        out.push(c);
    }
    Ok(out)
}

/// Partial sum of the kernel expansion
/// E_a(ixt;q^2) ~ (q^2;q^2)_inf/(q^{2a+2b+2};q^2)_inf
///   sum_n i^n q^{-floor(n/2) b} (1-q^{2a+2b+2n+2})
///         N_{a+b,n}(x;q^2) C_n^{(b+1/2,a+1/2)}(t;q^2)
/// truncated at n = n_max, at the lattice point x = x_sign q^{x_exp}.
pub fn kernel_expansion_partial(
    p: &PolyParams,
    x_sign: Sign,
    x_exp: i64,
    t: &Float,
    n_max: u32,
    ctx: &QContext,
) -> Result<Complex> {
    let s = p.sum_checked()?;
    let pref = inf_ratio(&Rational::from(1), &(s + 1i32), ctx)?;
    let coeffs = expansion_coefficients_at(p, x_sign, x_exp, n_max, ctx)?;
    let mut sum = Complex::with_val(ctx.prec(), (0, 0));
    for (n, c) in coeffs.iter().enumerate() {
        let g = gegenbauer_gen(n as u32, t, p, ctx)?;
        let mut term = c.clone();
        term *= &g;
        sum += term;
    }
    sum *= &pref;
    Ok(sum)
}

/// Residual of the N-term kernel expansion against E_a(ixt;q^2) in the
/// discrete L^2([-1,1], dmu_{q,a}) norm over t (lattice exponents 0..=j_max).
/// Summed directly: the integrand is nonnegative and geometrically weighted,
/// so the truncation tail beyond j_max is bounded by the last weight, and no
/// mass-capture check is applied (the residual may sit at roundoff level).
pub fn kernel_l2_residual(
    p: &PolyParams,
    x_sign: Sign,
    x_exp: i64,
    n_max: u32,
    j_max: i64,
    ctx: &QContext,
) -> Result<Float> {
    let s = p.sum_checked()?;
    let pref = inf_ratio(&Rational::from(1), &(s + 1i32), ctx)?;
    let coeffs = expansion_coefficients_at(p, x_sign, x_exp, n_max, ctx)?;
    let mut cache = EvenOddKernelCache::new(p.alpha(), ctx)?;
    let w_exp = Rational::from(2) * p.alpha().clone() + 2i32;
    let mut acc = Float::with_val(ctx.prec(), 0);
    for j in 0..=j_max {
        let weight = ctx.qpow(&(w_exp.clone() * Rational::from(j)));
        for s_t in [Sign::Plus, Sign::Minus] {
            let t: Float =
                Float::with_val(ctx.prec(), s_t.factor()) * ctx.qpow(&Rational::from(j));
            let mut partial = Complex::with_val(ctx.prec(), (0, 0));
            for (n, c) in coeffs.iter().enumerate() {
                let g = gegenbauer_gen(n as u32, &t, p, ctx)?;
                let mut term = c.clone();
                term *= &g;
                partial += term;
            }
            partial *= &pref;
            let sigma = if s_t == x_sign { Sign::Plus } else { Sign::Minus };
            let e = cache.get(sigma, x_exp + j)?;
            let diff: Complex = e - partial;
            let a2: Float = Float::with_val(ctx.prec(), diff.abs().into_real_imag().0).square();
            acc += a2 * &weight;
        }
    }
    let half_c: Float = measure_constant_mu(p.alpha(), ctx)? / 2u32;
    acc *= half_c;
    Ok(acc.sqrt())
}

/// Partial sum of the plane-wave expansion of the q-exponential e(ixt;q^2):
/// (q^2;q^2)_inf/(q^{2b};q^2)_inf x^{-b}
///   sum_n i^n q^{-floor(n/2)(b-1/2)} (1-q^{2b+2n})
///         J_{b+n}(x q^{floor(n/2)};q^2) C_n^b(t;q^2),
/// truncated at n_max, x = x_sign q^{x_exp}, valid for b > -1/2 (the powers
/// of x are resolved through |x| with the parity carried by x^n).
pub fn plane_wave_partial(
    beta: &Rational,
    x_sign: Sign,
    x_exp: i64,
    t: &Float,
    n_max: u32,
    ctx: &QContext,
) -> Result<Complex> {
    if *beta <= Rational::from((-1, 2)) {
        return Err(QError::InvalidParameter(format!(
            "plane-wave parameter must exceed -1/2, got {beta}"
        )));
    }
    let q2 = ctx.q_squared();
    let pref = inf_ratio(&Rational::from(1), beta, ctx)?;
    let x: Float =
        Float::with_val(ctx.prec(), x_sign.factor()) * ctx.qpow(&Rational::from(x_exp));
    let half_shift = beta.clone() - Rational::from((1, 2));
    let mut sum = Complex::with_val(ctx.prec(), (0, 0));
    for n in 0..=n_max {
        let shift = Rational::from(n as i64 / 2);
        let qfac = ctx.qpow(&(-half_shift.clone() * shift.clone()));
        let one_minus: Float =
            ctx.one() - ctx.pow_rational(&q2, &(beta.clone() + Rational::from(n as i64)));
        let order = BesselOrder::new(beta.clone() + Rational::from(n as i64))?;
        let arg: Float = x.clone().abs() * ctx.qpow(&shift);
        let jn = bessel_normalized(&order, &arg, &q2, ctx)?.re();
        // x^{-b} J_{b+n}(x q^s) = Jnorm_{b+n}(|x| q^s) x^n q^{s(b+n)}
        let power = ctx.qpow(&(shift * (beta.clone() + Rational::from(n as i64))));
        let xn = Float::with_val(ctx.prec(), x.clone().pow(n));
        let g = gegenbauer(n, t, beta, ctx)?;
        let scale: Float = qfac * one_minus * jn * power * xn * g;
        let mut term = i_pow(n, ctx);
        term *= &scale;
        sum += term;
    }
    sum *= &pref;
    Ok(sum)
}

/// Partial sum of the q-Hankel-kernel expansion
/// J_a(xt;q^2)/(xt)^a ~ (q^{2a+2};q^2)_inf/(q^{2a+2b+2};q^2)_inf
///   sum_n q^{-nb} (1-q^{2a+2b+4n+2})
///         (q^{2a+2b+2};q^2)_n/(q^{2a+2};q^2)_n
///         J_{a+b+2n+1}(xq^n;q^2)/x^{a+b+1} p_n^{(a,b)}(t^2;q^2),
/// truncated at n_max; even in both x and t.
pub fn hankel_kernel_partial(
    p: &PolyParams,
    x: &Float,
    t: &Float,
    n_max: u32,
    ctx: &QContext,
) -> Result<Float> {
    let s = p.sum_checked()?;
    if x.is_zero() {
        return Err(QError::ZeroArgument);
    }
    let q2 = ctx.q_squared();
    let pref = inf_ratio(&(p.alpha().clone() + 1i32), &(s.clone() + 1i32), ctx)?;
    let poch_num = ctx.pow_rational(&q2, &(s.clone() + 1i32));
    let poch_den = ctx.pow_rational(&q2, &(p.alpha().clone() + 1i32));
    let x2 = Float::with_val(ctx.prec(), x.clone().square());
    let t2 = Float::with_val(ctx.prec(), t.clone().square());
    let mut sum = Float::with_val(ctx.prec(), 0);
    for n in 0..=n_max {
        let head = ctx.qpow(&(-p.beta().clone() * Rational::from(n)));
        let order_exp = s.clone() + Rational::from(2 * n as i64 + 1);
        let one_minus: Float = ctx.one() - ctx.pow_rational(&q2, &order_exp);
        let finite: Float = qpochhammer_real(&poch_num, &q2, n) / qpochhammer_real(&poch_den, &q2, n);
        let order = BesselOrder::new(order_exp.clone())?;
        let arg: Float = x.clone().abs() * ctx.qpow(&Rational::from(n));
        let jn = bessel_normalized(&order, &arg, &q2, ctx)?.re();
        // J_{a+b+2n+1}(xq^n)/x^{a+b+1} = Jnorm(xq^n) x^{2n} q^{n(a+b+2n+1)}
        let power = ctx.qpow(&(order_exp * Rational::from(n)));
        let x2n = Float::with_val(ctx.prec(), x2.clone().pow(n));
        let pj = little_q_jacobi(n, &t2, p, &q2, true, ctx)?;
        sum += head * one_minus * finite * jn * power * x2n * pj;
    }
    Ok(sum * pref)
}

/// A spectrum on the [-1,1] lattice: a signed-lattice function supported on
/// exponents k >= 0, together with the measure parameter of the synthesis
/// integral.
#[derive(Debug, Clone)]
pub struct PWSpec {
    u: LatticeFunction,
    alpha: Rational,
}

impl PWSpec {
    pub fn new(u: LatticeFunction, alpha: Rational) -> Result<Self> {
        if u.domain() != LatticeDomain::RealLine {
            return Err(QError::InvalidParameter(
                "spectrum must live on the signed lattice".into(),
            ));
        }
        if alpha <= -1i32 {
            return Err(QError::InvalidParameter(format!(
                "measure parameter must exceed -1, got {alpha}"
            )));
        }
        for (_s, k, v) in u.iter() {
            if k < 0 && !v.is_zero() {
                return Err(QError::DomainError(
                    "spectrum must vanish outside the [-1,1] lattice".into(),
                ));
            }
        }
        Ok(PWSpec { u, alpha })
    }

    pub fn spectrum(&self) -> &LatticeFunction {
        &self.u
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }
}

/// Synthesize f(t) = int_{-1}^{1} u(x) E_a(ixt;q^2) dmu_{q,a}(x) on the
/// signed lattice over the requested output window.
pub fn pw_synthesize(
    spec: &PWSpec,
    out_window: (i64, i64),
    ctx: &QContext,
) -> Result<LatticeFunction> {
    let half_c: Float = measure_constant_mu(&spec.alpha, ctx)? / 2u32;
    let mut cache = EvenOddKernelCache::new(&spec.alpha, ctx)?;
    let w_exp = Rational::from(2) * spec.alpha.clone() + 2i32;
    let (j_lo, j_hi) = spec.u.window();
    let mut out = LatticeFunction::zero(LatticeDomain::RealLine, out_window, ctx.prec())?;
    for k in out_window.0..=out_window.1 {
        for s_t in [Sign::Plus, Sign::Minus] {
            let mut acc = Complex::with_val(ctx.prec(), (0, 0));
            for j in j_lo.max(0)..=j_hi {
                let up = spec.u.get(Sign::Plus, j)?;
                let um = spec.u.get(Sign::Minus, j)?;
                if up.is_zero() && um.is_zero() {
                    continue;
                }
                let weight = ctx.qpow(&(w_exp.clone() * Rational::from(j)));
                // kernel argument i(s_x q^j)(s_t q^k)
                let kp = cache.get(s_t, j + k)?;
                let km = cache.get(
                    match s_t {
                        Sign::Plus => Sign::Minus,
                        Sign::Minus => Sign::Plus,
                    },
                    j + k,
                )?;
                let mut term = up.clone() * kp + um.clone() * km;
                term *= &weight;
                acc += term;
            }
            acc *= &half_c;
            out.set(s_t, k, acc)?;
        }
    }
    Ok(out)
}

/// Expansion coefficients a_n of a function against the q-Neumann system with
/// base order a+b under dmu_{q,a+b}.
#[derive(Debug, Clone)]
pub struct ExpansionCoefficients {
    pub params: PolyParams,
    pub coeffs: Vec<Complex>,
}

impl ExpansionCoefficients {
    /// |a_n| per index, for decay monitoring.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| {
                let prec = c.prec().0;
                Float::with_val(prec, c.clone().abs().into_real_imag().0).to_f64()
            })
            .collect()
    }
}

/// a_n(f) = (q^2;q^2)_inf/(q^{2a+2b+2};q^2)_inf
///          int_R f(t) N_{a+b,n}(t;q^2) dmu_{q,a+b}(t), n = 0..=n_max.
/// f is treated as exactly zero outside its window, so the sum runs over the
/// window with no boundary mass-capture check.
pub fn neumann_coefficients(
    f: &LatticeFunction,
    p: &PolyParams,
    n_max: u32,
    ctx: &QContext,
) -> Result<ExpansionCoefficients> {
    if f.domain() != LatticeDomain::RealLine {
        return Err(QError::InvalidParameter(
            "expected a function on the signed lattice".into(),
        ));
    }
    let s = p.sum_checked()?;
    let pref = inf_ratio(&Rational::from(1), &(s.clone() + 1i32), ctx)?;
    let sys = NeumannSystem::new(s.clone(), n_max)?;
    let half_c: Float = measure_constant_mu(&s, ctx)? / 2u32;
    let w_exp = Rational::from(2) * s.clone() + 2i32;
    let (k_lo, k_hi) = f.window();
    let mut coeffs = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let mut acc = Complex::with_val(ctx.prec(), (0, 0));
        for k in k_lo..=k_hi {
            let weight = ctx.qpow(&(w_exp.clone() * Rational::from(k)));
            for sg in [Sign::Plus, Sign::Minus] {
                let fv = f.get(sg, k)?;
                if fv.is_zero() {
                    continue;
                }
                let t: Float =
                    Float::with_val(ctx.prec(), sg.factor()) * ctx.qpow(&Rational::from(k));
                let jn = neumann_fn(&sys, n, &t, ctx)?;
                let mut term = fv.clone();
                term *= &jn;
                term *= &weight;
                acc += term;
            }
        }
        acc *= &half_c;
        acc *= &pref;
        coeffs.push(acc);
    }
    Ok(ExpansionCoefficients {
        params: p.clone(),
        coeffs,
    })
}

/// Reconstruction sum_n a_n (1-q^{2a+2b+2n+2}) N_{a+b,n}(x;q^2) at the
/// lattice point x = x_sign q^{x_exp}.
pub fn neumann_reconstruct(
    coeffs: &ExpansionCoefficients,
    x_sign: Sign,
    x_exp: i64,
    ctx: &QContext,
) -> Result<Complex> {
    let p = &coeffs.params;
    let s = p.sum_checked()?;
    let n_max = coeffs.coeffs.len() as u32 - 1;
    let sys = NeumannSystem::new(s.clone(), n_max)?;
    let x: Float =
        Float::with_val(ctx.prec(), x_sign.factor()) * ctx.qpow(&Rational::from(x_exp));
    let mut sum = Complex::with_val(ctx.prec(), (0, 0));
    for (n, a) in coeffs.coeffs.iter().enumerate() {
        let one_minus: Float = ctx.one()
            - ctx.pow_rational(
                &ctx.q_squared(),
                &(s.clone() + Rational::from(n as i64 + 1)),
            );
        let jn = neumann_fn(&sys, n as u32, &x, ctx)?;
        let scale: Float = one_minus * jn;
        let mut term = a.clone();
        term *= &scale;
        sum += term;
    }
    Ok(sum)
}

/// The floor shift of index n, re-exported for callers assembling reports.
pub fn expansion_shift(n: u32) -> u32 {
    neumann_shift(n)
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

    fn params() -> PolyParams {
        PolyParams::from_parts(3, 10, 7, 10).unwrap()
    }

    #[test]
    fn residual_monotone_and_small() {
        let c = ctx();
        let p = params();
        let mut last = c.float(f64::INFINITY);
        for n_max in [0u32, 5, 10, 15, 20] {
            let r = kernel_l2_residual(&p, Sign::Plus, 0, n_max, 60, &c).unwrap();
            assert!(r <= last, "residual grew at N={n_max}: {r} > {last}");
            last = r;
        }
        assert!(last < tol(&c, -12), "final residual {last}");
    }

    #[test]
    fn partial_sum_conjugate_symmetry() {
        let c = ctx();
        let p = params();
        let t = c.float(0.4);
        let a = kernel_expansion_partial(&p, Sign::Plus, 1, &t, 7, &c).unwrap();
        let b = kernel_expansion_partial(&p, Sign::Plus, 1, &c.float(-0.4), 7, &c).unwrap();
        let d: Complex = a.conj() - b;
        let m = Float::with_val(c.prec(), d.abs().into_real_imag().0);
        assert!(m < tol(&c, -30), "asymmetry {m}");
    }

    #[test]
    fn plane_wave_is_kernel_specialization() {
        // beta = 3/4 corresponds to parameters (-1/2, 1/4)
        let c = ctx();
        let beta = Rational::from((3, 4));
        let p = PolyParams::new(Rational::from((-1, 2)), Rational::from((1, 4))).unwrap();
        let t = c.float(0.25);
        let a = plane_wave_partial(&beta, Sign::Plus, 1, &t, 6, &c).unwrap();
        let b = kernel_expansion_partial(&p, Sign::Plus, 1, &t, 6, &c).unwrap();
        let d: Complex = a - &b;
        let m = Float::with_val(c.prec(), d.abs().into_real_imag().0);
        assert!(m < tol(&c, -28), "mismatch {m}");
    }

    #[test]
    fn plane_wave_converges_to_q_exponential() {
        use crate::qbessel::rubin_exp_i;
        let c = ctx();
        let beta = Rational::from((3, 4));
        let t = c.qpow(&Rational::from(2));
        let v = plane_wave_partial(&beta, Sign::Plus, 1, &t, 30, &c).unwrap();
        let y: Float = c.qpow(&Rational::from(1)) * &t;
        let e = rubin_exp_i(&y, &c).unwrap().value;
        let d: Complex = v - &e;
        let m = Float::with_val(c.prec(), d.abs().into_real_imag().0);
        assert!(m < tol(&c, -12), "mismatch {m}");
    }

    #[test]
    fn plane_wave_rejects_small_beta() {
        let c = ctx();
        let t = c.float(0.25);
        assert!(plane_wave_partial(&Rational::from((-1, 2)), Sign::Plus, 0, &t, 3, &c).is_err());
    }

    #[test]
    fn hankel_kernel_matches_normalized_bessel() {
        let c = ctx();
        let p = params();
        let x = c.one();
        let t = c.qpow(&Rational::from(2));
        let v = hankel_kernel_partial(&p, &x, &t, 10, &c).unwrap();
        let xt: Float = x.clone() * &t;
        let order = BesselOrder::new(p.alpha().clone()).unwrap();
        let e = bessel_normalized(&order, &xt, &c.q_squared(), &c).unwrap().re();
        let d: Float = (v - e).abs();
        assert!(d < tol(&c, -12), "mismatch {d}");
    }

    #[test]
    fn zero_spectrum_round_trip() {
        let c = ctx();
        let p = params();
        let u = LatticeFunction::zero(LatticeDomain::RealLine, (0, 5), c.prec()).unwrap();
        let spec = PWSpec::new(u, p.alpha().clone()).unwrap();
        let f = pw_synthesize(&spec, c.trunc.lattice_window, &c).unwrap();
        for (_s, _k, v) in f.iter() {
            assert!(v.is_zero());
        }
        let coeffs = neumann_coefficients(&f, &p, 4, &c).unwrap();
        for a in &coeffs.coeffs {
            assert!(a.is_zero());
        }
    }

    #[test]
    fn synthesis_reconstruction_pipeline() {
        let c = ctx();
        let p = params();
        let mut u = LatticeFunction::zero(LatticeDomain::RealLine, (0, 5), c.prec()).unwrap();
        u.set(Sign::Plus, 0, c.complex(0.3, 0.0)).unwrap();
        u.set(Sign::Plus, 1, c.complex(-0.2, 0.0)).unwrap();
        u.set(Sign::Minus, 0, c.complex(0.1, 0.0)).unwrap();
        u.set(Sign::Plus, 2, c.complex(0.5, 0.0)).unwrap();
        let spec = PWSpec::new(u, p.alpha().clone()).unwrap();
        let f = pw_synthesize(&spec, c.trunc.lattice_window, &c).unwrap();
        let coeffs = neumann_coefficients(&f, &p, 16, &c).unwrap();
        let mut sup = c.zero();
        for e in 0..=6i64 {
            for s in [Sign::Plus, Sign::Minus] {
                let r = neumann_reconstruct(&coeffs, s, e, &c).unwrap();
                let d: Complex = r - f.get(s, e).unwrap();
                let m = Float::with_val(c.prec(), d.abs().into_real_imag().0);
                if m > sup {
                    sup = m;
                }
            }
        }
        assert!(sup < tol(&c, -10), "sup reconstruction error {sup}");
    }

    #[test]
    fn spectrum_validation() {
        let c = ctx();
        let mut u = LatticeFunction::zero(LatticeDomain::RealLine, (-2, 5), c.prec()).unwrap();
        u.set(Sign::Plus, -1, c.complex(1.0, 0.0)).unwrap();
        assert!(PWSpec::new(u, Rational::from((3, 10))).is_err());
    }
}
