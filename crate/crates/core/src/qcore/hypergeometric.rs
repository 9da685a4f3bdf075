//! Basic hypergeometric series s_phi_r with the sign/power compensation
//! factor ((-1)^n q^{n(n-1)/2})^{r-s+1}.

use rug::{ops::Pow, Complex, Float};

use crate::context::{QContext, SeriesValue};
use crate::error::{QError, Result};

/// Smallest m >= 0 such that some upper parameter equals q^{-m} (within a
/// floating-point slack well below any genuine parameter gap), i.e. the
/// series terminates after m+1 terms.
pub fn detect_termination(upper: &[Complex], q: &Float, prec: u32) -> Option<u32> {
    let eps = Float::with_val(prec, 2).pow(-((prec as i32) * 3 / 4));
    let ln_q = Float::with_val(prec, q).ln();
    let mut best: Option<u32> = None;
    for a in upper {
        let re = a.real();
        let im_small = a.imag().clone().abs() < eps;
        if !im_small || re < &Float::with_val(prec, 1) {
            continue;
        }
        let m_est: Float = -(re.clone().ln() / &ln_q);
        let m_round = m_est.to_f64().round();
        if !(0.0..=1e6).contains(&m_round) {
            continue;
        }
        let m = m_round as u32;
        let qm = Float::with_val(prec, q).pow(m);
        let resid: Float = (re.clone() * qm - 1u32).abs();
        if resid < eps {
            best = Some(best.map_or(m, |b: u32| b.min(m)));
        }
    }
    best
}

fn near_zero(x: &Float, prec: u32) -> bool {
    let eps = Float::with_val(prec, 2).pow(-((prec as i32) * 3 / 4));
    x.clone().abs() < eps
}

/// s_phi_r with complex parameters. `upper` holds a_1..a_s, `lower` holds
/// b_1..b_r; the argument base is `q` (callers pass q or q^2 as needed).
/// Terminating series (some a_i = q^{-m}) are summed exactly in m+1 terms
/// with zero error estimate.
pub fn basic_hypergeometric(
    upper: &[Complex],
    lower: &[Complex],
    q: &Float,
    z: &Complex,
    ctx: &QContext,
) -> Result<SeriesValue> {
    let prec = ctx.prec().max(q.prec());
    let one = Complex::with_val(prec, (1, 0));
    if z.is_zero() {
        return Ok(SeriesValue::exact(one, 1));
    }
    let excess = lower.len() as i64 - upper.len() as i64 + 1; // r - s + 1
    let terminate = detect_termination(upper, q, prec);
    if terminate.is_none() {
        if excess < 0 {
            return Err(QError::DivergentSeries(
                "s > r + 1 without a terminating upper parameter".into(),
            ));
        }
        let abs_z = Float::with_val(prec, z.clone().abs().into_real_imag().0);
        if excess == 0 && abs_z >= 1u32 {
            return Err(QError::DivergentSeries(
                "|z| >= 1 for a (r+1)_phi_r series without termination".into(),
            ));
        }
    }
    let one_minus_q = Float::with_val(prec, 1) - q;
    let mut sum = one.clone();
    let mut term = one.clone();
    let mut qn = Float::with_val(prec, 1); // q^n
    let mut qn1 = Float::with_val(prec, q); // q^{n+1}
    let mut prev_abs = Float::with_val(prec, 1);
    for n in 0..ctx.trunc.max_terms {
        if let Some(m) = terminate {
            if n as u32 == m {
                return Ok(SeriesValue::exact(sum, n + 1));
            }
        }
        // ratio from term n to term n+1
        let mut num = z.clone();
        for a in upper {
            num *= one.clone() - a.clone() * &qn;
        }
        if excess != 0 {
            let sign_pow = Float::with_val(prec, qn.clone().pow(excess as i32));
            num *= sign_pow;
            if excess % 2 != 0 {
                num = -num;
            }
        }
        let mut den: Complex = one.clone() * (Float::with_val(prec, 1) - &qn1);
        for b in lower {
            let f = one.clone() - b.clone() * &qn;
            let fa = Float::with_val(prec, f.clone().abs().into_real_imag().0);
            if near_zero(&fa, prec) {
                return Err(QError::PoleInParameters { term: n + 1 });
            }
            den *= f;
        }
        term *= num / den;
        sum += &term;
        qn *= q;
        qn1 *= q;
        let abs_t = Float::with_val(prec, term.clone().abs().into_real_imag().0);
        if terminate.is_none() {
            let scale = Float::with_val(prec, sum.clone().abs().into_real_imag().0);
            let decaying = abs_t <= prev_abs;
            let small = abs_t.clone() <= ctx.trunc.tail_rel_tol.clone() * scale;
            if abs_t.is_zero() || (decaying && small) {
                let err = abs_t / &one_minus_q;
                return Ok(SeriesValue { value: sum, err_estimate: err, terms_used: n + 2 });
            }
        }
        prev_abs = abs_t;
    }
    if terminate.is_some() {
        // termination index beyond max_terms
        return Err(QError::NonConvergent {
            max_terms: ctx.trunc.max_terms,
            last_term: prev_abs.to_f64(),
        });
    }
    Err(QError::NonConvergent {
        max_terms: ctx.trunc.max_terms,
        last_term: prev_abs.to_f64(),
    })
}

/// Real-parameter fast path; same contract as [`basic_hypergeometric`].
pub fn phi_real(
    upper: &[Float],
    lower: &[Float],
    q: &Float,
    z: &Float,
    ctx: &QContext,
) -> Result<SeriesValue> {
    let cupper: Vec<Complex> = upper
        .iter()
        .map(|a| Complex::with_val(a.prec().max(ctx.prec()), (a, &Float::with_val(a.prec(), 0))))
        .collect();
    let prec = ctx.prec().max(q.prec());
    if z.is_zero() {
        return Ok(SeriesValue::exact(Complex::with_val(prec, (1, 0)), 1));
    }
    let excess = lower.len() as i64 - upper.len() as i64 + 1;
    let terminate = detect_termination(&cupper, q, prec);
    if terminate.is_none() {
        if excess < 0 {
            return Err(QError::DivergentSeries(
                "s > r + 1 without a terminating upper parameter".into(),
            ));
        }
        if excess == 0 && z.clone().abs() >= 1u32 {
            return Err(QError::DivergentSeries(
                "|z| >= 1 for a (r+1)_phi_r series without termination".into(),
            ));
        }
    }
    let one_minus_q = Float::with_val(prec, 1) - q;
    let mut sum = Float::with_val(prec, 1);
    let mut term = Float::with_val(prec, 1);
    let mut qn = Float::with_val(prec, 1);
    let mut qn1 = Float::with_val(prec, q);
    let mut prev_abs = Float::with_val(prec, 1);
    for n in 0..ctx.trunc.max_terms {
        if let Some(m) = terminate {
            if n as u32 == m {
                return Ok(SeriesValue::exact(Complex::with_val(prec, (&sum, &Float::with_val(prec, 0))), n + 1));
            }
        }
        let mut num = Float::with_val(prec, z);
        for a in upper {
            num *= Float::with_val(prec, 1) - Float::with_val(prec, a.clone() * &qn);
        }
        if excess != 0 {
            num *= Float::with_val(prec, qn.clone().pow(excess as i32));
            if excess % 2 != 0 {
                num = -num;
            }
        }
        let mut den = Float::with_val(prec, 1) - &qn1;
        for b in lower {
            let f = Float::with_val(prec, 1) - Float::with_val(prec, b.clone() * &qn);
            if near_zero(&f, prec) {
                return Err(QError::PoleInParameters { term: n + 1 });
            }
            den *= f;
        }
        term *= num / den;
        sum += &term;
        qn *= q;
        qn1 *= q;
        let abs_t = term.clone().abs();
        if terminate.is_none() {
            let scale = sum.clone().abs();
            let decaying = abs_t <= prev_abs;
            let small = abs_t.clone() <= ctx.trunc.tail_rel_tol.clone() * scale;
            if abs_t.is_zero() || (decaying && small) {
                let err = abs_t / &one_minus_q;
                return Ok(SeriesValue {
                    value: Complex::with_val(prec, (&sum, &Float::with_val(prec, 0))),
                    err_estimate: err,
                    terms_used: n + 2,
                });
            }
        }
        prev_abs = abs_t;
    }
    Err(QError::NonConvergent {
        max_terms: ctx.trunc.max_terms,
        last_term: prev_abs.to_f64(),
    })
}

/// 1_phi_1(0; b | q; z) with real data: the series behind the third Jackson
/// q-Bessel function and the q-exponential kernels. Kept tight because it
/// dominates the transform inner loops.
pub fn one_phi_one_real(b: &Float, q: &Float, z: &Float, ctx: &QContext) -> Result<SeriesValue> {
    let prec = ctx.prec().max(q.prec());
    if z.is_zero() {
        return Ok(SeriesValue::exact(Complex::with_val(prec, (1, 0)), 1));
    }
    let one_minus_q = Float::with_val(prec, 1) - q;
    let mut sum = Float::with_val(prec, 1);
    let mut term = Float::with_val(prec, 1);
    let mut qn = Float::with_val(prec, 1);
    let mut qn1 = Float::with_val(prec, q);
    let mut prev_abs = Float::with_val(prec, 1);
    for n in 0..ctx.trunc.max_terms {
        let bf = Float::with_val(prec, 1) - Float::with_val(prec, b.clone() * &qn);
        if near_zero(&bf, prec) {
            return Err(QError::PoleInParameters { term: n + 1 });
        }
        let den = bf * (Float::with_val(prec, 1) - &qn1);
        // ratio: -z q^n / den
        term *= -(z.clone() * &qn) / den;
        sum += &term;
        qn *= q;
        qn1 *= q;
        let abs_t = term.clone().abs();
        let decaying = abs_t <= prev_abs;
        let small = abs_t.clone() <= ctx.trunc.tail_rel_tol.clone() * sum.clone().abs();
        if abs_t.is_zero() || (decaying && small) {
            let err = abs_t / &one_minus_q;
            return Ok(SeriesValue {
                value: Complex::with_val(prec, (&sum, &Float::with_val(prec, 0))),
                err_estimate: err,
                terms_used: n + 2,
            });
        }
        prev_abs = abs_t;
    }
    Err(QError::NonConvergent {
        max_terms: ctx.trunc.max_terms,
        last_term: prev_abs.to_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::new(0.5, 40).unwrap()
    }

    #[test]
    fn z_zero_is_one() {
        let c = ctx();
        let v = basic_hypergeometric(
            &[c.complex(0.3, 0.0)],
            &[c.complex(0.2, 0.0)],
            c.q(),
            &c.complex(0.0, 0.0),
            &c,
        )
        .unwrap();
        assert_eq!(v.value, c.complex(1.0, 0.0));
    }

    #[test]
    fn terminating_2phi1_closed_form() {
        // 2phi1(a, q^{-1}; c | q; q) = (a - c)/(1 - c) for n = 1.
        let c = ctx();
        let a = c.complex(0.3, 0.0);
        let qinv = c.complex(2.0, 0.0); // q^{-1} at q = 0.5
        let cc = c.complex(0.2, 0.0);
        let v = basic_hypergeometric(&[a, qinv], &[cc], c.q(), &c.complex(0.5, 0.0), &c).unwrap();
        assert!(v.err_estimate.is_zero());
        assert_eq!(v.terms_used, 2);
        // expected value from the same binary-rounded inputs
        let expect: Float = (c.float(0.3) - c.float(0.2)) / (c.float(1.0) - c.float(0.2));
        let diff: Float = (v.re() - expect).abs();
        assert!(diff < c.float(1e-36), "got {}", v.re());
    }

    #[test]
    fn detects_termination_index() {
        let c = ctx();
        let q3 = c.complex(8.0, 0.0); // q^{-3}
        assert_eq!(detect_termination(&[q3], c.q(), c.prec()), Some(3));
        let plain = c.complex(0.7, 0.0);
        assert_eq!(detect_termination(&[plain], c.q(), c.prec()), None);
    }

    #[test]
    fn divergent_without_termination() {
        let c = ctx();
        let r = basic_hypergeometric(
            &[c.complex(0.3, 0.0), c.complex(0.4, 0.0)],
            &[c.complex(0.2, 0.0)],
            c.q(),
            &c.complex(1.5, 0.0),
            &c,
        );
        assert!(matches!(r, Err(QError::DivergentSeries(_))));
    }

    #[test]
    fn pole_in_lower_parameter() {
        let c = ctx();
        // lower parameter q^{-2}: factor (1 - q^{-2} q^2) = 0 at n = 2,
        // reached because the series does not terminate before it.
        let r = basic_hypergeometric(
            &[c.complex(0.3, 0.0)],
            &[c.complex(4.0, 0.0)],
            c.q(),
            &c.complex(0.25, 0.0),
            &c,
        );
        assert!(matches!(r, Err(QError::PoleInParameters { .. })));
    }

    #[test]
    fn real_and_complex_paths_agree() {
        let c = ctx();
        let v1 = phi_real(&[c.float(0.3)], &[c.float(0.2)], c.q(), &c.float(0.4), &c).unwrap();
        let v2 = basic_hypergeometric(
            &[c.complex(0.3, 0.0)],
            &[c.complex(0.2, 0.0)],
            c.q(),
            &c.complex(0.4, 0.0),
            &c,
        )
        .unwrap();
        let diff: Float = (v1.re() - v2.re()).abs();
        assert!(diff < c.float(1e-36));
    }

    #[test]
    fn one_phi_one_matches_general() {
        let c = ctx();
        let b = c.float(0.7);
        let z = c.float(0.3);
        let v1 = one_phi_one_real(&b, c.q(), &z, &c).unwrap();
        let v2 = phi_real(&[c.float(0.0)], &[b.clone()], c.q(), &z, &c).unwrap();
        let diff: Float = (v1.re() - v2.re()).abs();
        assert!(diff < c.float(1e-36));
    }
}
