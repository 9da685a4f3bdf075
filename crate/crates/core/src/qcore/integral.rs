//! Jackson q-integrals on (0,a], (0,inf) and the whole real line.

use rug::{Complex, Float, Rational};

use crate::context::{QContext, SeriesValue};
use crate::error::{QError, Result};

/// Integration domain of a q-integral.
#[derive(Debug, Clone)]
pub enum QDomain {
    /// (0, a] with the q-lattice a q^n, n >= 0.
    ZeroToA(Float),
    /// (0, inf) with the lattice q^n, n in Z (windowed).
    ZeroToInf,
    /// The whole real line with the signed lattice +-q^n, n in Z (windowed).
    RealLine,
}

/// Jackson q-integral of `f` over `domain` with lattice base `q`.
///
/// On (0,a] this is (1-q) a sum_{n>=0} f(a q^n) q^n; on (0,inf) and R it is
/// the doubly infinite lattice sum (1-q) sum_n f(+-q^n) q^n restricted to
/// `ctx.trunc.lattice_window`. A still-significant boundary term is a hard
/// `WindowTooSmall` error, not a warning.
pub fn q_integral<F>(mut f: F, domain: &QDomain, q: &Float, ctx: &QContext) -> Result<SeriesValue>
where
    F: FnMut(&Float) -> Result<Complex>,
{
    let prec = ctx.prec().max(q.prec());
    let one_minus_q = Float::with_val(prec, 1) - q;
    match domain {
        QDomain::ZeroToA(a) => {
            let mut sum = Complex::with_val(prec, (0, 0));
            let mut xqn = Float::with_val(prec, a); // a q^n
            let mut qn = Float::with_val(prec, 1); // q^n
            for n in 0..ctx.trunc.max_terms {
                let term: Complex = f(&xqn)? * &qn;
                let abs_t = Float::with_val(prec, term.clone().abs().into_real_imag().0);
                sum += term;
                xqn *= q;
                qn *= q;
                let scale = Float::with_val(prec, sum.clone().abs().into_real_imag().0);
                if n > 4 && abs_t.clone() <= ctx.trunc.tail_rel_tol.clone() * scale {
                    let value: Complex = sum * &one_minus_q * a;
                    let err: Float = abs_t * &one_minus_q * a / &one_minus_q;
                    return Ok(SeriesValue { value, err_estimate: err, terms_used: n + 1 });
                }
            }
            Err(QError::NonConvergent {
                max_terms: ctx.trunc.max_terms,
                last_term: f64::NAN,
            })
        }
        QDomain::ZeroToInf | QDomain::RealLine => {
            let (k_min, k_max) = ctx.trunc.lattice_window;
            let signed = matches!(domain, QDomain::RealLine);
            let mut sum = Complex::with_val(prec, (0, 0));
            let mut first_abs = Float::with_val(prec, 0);
            let mut last_abs = Float::with_val(prec, 0);
            // k_min indexes the largest lattice points, k_max the ones near 0
            for n in k_min..=k_max {
                let x = ctx.pow_rational(q, &Rational::from(n));
                let mut term: Complex = f(&x)?;
                if signed {
                    let xm = -x.clone();
                    term += f(&xm)?;
                }
                term *= &x; // q^n weight
                let abs_t = Float::with_val(prec, term.clone().abs().into_real_imag().0);
                if n == k_min {
                    first_abs = abs_t.clone();
                }
                if n == k_max {
                    last_abs = abs_t.clone();
                }
                sum += term;
            }
            let scale = Float::with_val(prec, sum.clone().abs().into_real_imag().0);
            let boundary = Float::with_val(prec, first_abs.max(&last_abs));
            if !boundary.is_zero() && boundary > ctx.trunc.tail_rel_tol.clone() * &scale {
                return Err(QError::WindowTooSmall {
                    k_min,
                    k_max,
                    boundary: boundary.to_f64(),
                });
            }
            let value: Complex = sum * &one_minus_q;
            Ok(SeriesValue {
                value,
                err_estimate: boundary,
                terms_used: (k_max - k_min + 1) as usize,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn ctx() -> QContext {
        QContext::new(0.5, 40).unwrap()
    }

    #[test]
    fn constant_on_unit_interval() {
        // integral of 1 over (0,1] telescopes to 1
        let c = ctx();
        let dom = QDomain::ZeroToA(c.one());
        let v = q_integral(|_| Ok(c.complex(1.0, 0.0)), &dom, c.q(), &c).unwrap();
        let diff: Float = (v.re() - 1u32).abs();
        assert!(diff < c.float(1e-30), "got {}", v.re());
    }

    #[test]
    fn identity_on_unit_interval() {
        // integral of t over (0,1] is 1/(1+q) = 2/3 at q = 0.5
        let c = ctx();
        let dom = QDomain::ZeroToA(c.one());
        let v = q_integral(
            |t| Ok(Complex::with_val(c.prec(), (t, &c.zero()))),
            &dom,
            c.q(),
            &c,
        )
        .unwrap();
        let expect = c.float(2.0) / c.float(3.0);
        let diff: Float = (v.re() - expect).abs();
        assert!(diff < c.float(1e-30), "got {}", v.re());
    }

    #[test]
    fn odd_function_on_real_line_cancels() {
        let c = ctx();
        // x exp(-x^2)-like damped odd function, evaluable on the window
        let v = q_integral(
            |x| {
                let g = x.clone() / (Float::with_val(c.prec(), 1) + x.clone().square());
                Ok(Complex::with_val(c.prec(), (&g, &c.zero())))
            },
            &QDomain::RealLine,
            c.q(),
            &c,
        )
        .unwrap();
        assert!(v.value.is_zero() || v.abs() < c.float(1e-36));
    }

    #[test]
    fn window_too_small_is_hard_error() {
        let c = ctx().with_window(-3, 10);
        // f = 1/x stays significant at the large-x end of the window
        let r = q_integral(
            |x| Ok(Complex::with_val(c.prec(), (&x.clone().recip(), &c.zero()))),
            &QDomain::ZeroToInf,
            c.q(),
            &c,
        );
        assert!(matches!(r, Err(QError::WindowTooSmall { .. })));
    }

    #[test]
    fn monomials_geometric_oracle() {
        // integral over (0,1] of x^m equals (1-q)/(1-q^{m+1}), m = 0..6
        let c = ctx();
        for m in 0..=6u32 {
            let dom = QDomain::ZeroToA(c.one());
            let v = q_integral(
                |t| {
                    let p = Float::with_val(c.prec(), t.clone().pow(m));
                    Ok(Complex::with_val(c.prec(), (&p, &c.zero())))
                },
                &dom,
                c.q(),
                &c,
            )
            .unwrap();
            let one_minus_q = c.one() - c.q();
            let qm1 = c.qpow(&Rational::from(m + 1));
            let expect: Float = one_minus_q / (c.one() - qm1);
            let diff: Float = (v.re() - &expect).abs();
            let tol: Float = c.float(1e-30) * &expect;
            assert!(diff < tol, "m={m}: got {}", v.re());
        }
    }

    #[test]
    fn substitution_identity_for_polynomials() {
        // int_0^1 f d_{q^2}x = (1+q) int_0^1 x f(x^2) d_q x for deg <= 6
        let c = ctx();
        let coeffs: Vec<Float> = (0..=6).map(|i| c.float(1.0 + i as f64 * 0.37)).collect();
        let eval = |t: &Float| {
            let mut acc = c.zero();
            for ci in coeffs.iter().rev() {
                acc = acc * t + ci;
            }
            acc
        };
        let q2 = c.q_squared();
        let dom = QDomain::ZeroToA(c.one());
        let lhs = q_integral(
            |t| Ok(Complex::with_val(c.prec(), (&eval(t), &c.zero()))),
            &dom,
            &q2,
            &c,
        )
        .unwrap();
        let rhs = q_integral(
            |x| {
                let x2 = x.clone().square();
                let g = x.clone() * eval(&x2);
                Ok(Complex::with_val(c.prec(), (&g, &c.zero())))
            },
            &dom,
            c.q(),
            &c,
        )
        .unwrap();
        let rhs_scaled: Float = rhs.re() * (c.one() + c.q());
        let diff: Float = (lhs.re() - rhs_scaled).abs();
        assert!(diff < c.float(1e-35), "diff = {diff}");
    }
}
