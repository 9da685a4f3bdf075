//! q-Pochhammer symbols (a;q)_n and (a;q)_inf.

use rug::{Complex, Float};

use crate::context::{QContext, SeriesValue};
use crate::error::{QError, Result};

/// Finite product (a;q)_n = prod_{k=1}^{n} (1 - a q^{k-1}); (a;q)_0 = 1.
pub fn qpochhammer(a: &Complex, q: &Float, n: u32) -> Complex {
    let prec = a.prec().0.max(q.prec());
    let one = Complex::with_val(prec, (1, 0));
    let mut prod = one.clone();
    let mut aq = a.clone();
    for _ in 0..n {
        prod *= one.clone() - &aq;
        aq *= q;
    }
    prod
}

/// Real-argument variant of [`qpochhammer`].
pub fn qpochhammer_real(a: &Float, q: &Float, n: u32) -> Float {
    let prec = a.prec().max(q.prec());
    let mut prod = Float::with_val(prec, 1);
    let mut aq = Float::with_val(prec, a);
    for _ in 0..n {
        prod *= Float::with_val(prec, 1) - &aq;
        aq *= q;
    }
    prod
}

/// Truncated infinite product (a;q)_inf for |q| < 1, with tail estimate
/// |a| q^N / (1-q) (relative) from the first neglected factor.
pub fn qpochhammer_inf(a: &Complex, q: &Float, ctx: &QContext) -> Result<SeriesValue> {
    let prec = ctx.prec().max(a.prec().0);
    let one = Complex::with_val(prec, (1, 0));
    if a.is_zero() {
        return Ok(SeriesValue::exact(one, 0));
    }
    let mut prod = one.clone();
    let mut aq = a.clone();
    let one_minus_q = Float::with_val(prec, 1) - q;
    for n in 0..ctx.trunc.max_terms {
        let abs_aq = Float::with_val(prec, aq.clone().abs().into_real_imag().0);
        if abs_aq < ctx.trunc.tail_rel_tol {
            // relative tail -> absolute error estimate
            let scale = Float::with_val(prec, prod.clone().abs().into_real_imag().0);
            let err = abs_aq / &one_minus_q * scale;
            return Ok(SeriesValue { value: prod, err_estimate: err, terms_used: n });
        }
        prod *= one.clone() - &aq;
        aq *= q;
    }
    let last = Float::with_val(prec, aq.abs().into_real_imag().0);
    Err(QError::NonConvergent {
        max_terms: ctx.trunc.max_terms,
        last_term: last.to_f64(),
    })
}

/// Real-argument variant of [`qpochhammer_inf`], returning just the value.
pub fn qpochhammer_inf_real(a: &Float, q: &Float, ctx: &QContext) -> Result<Float> {
    let prec = ctx.prec().max(a.prec());
    if a.is_zero() {
        return Ok(Float::with_val(prec, 1));
    }
    let mut prod = Float::with_val(prec, 1);
    let mut aq = Float::with_val(prec, a);
    for _ in 0..ctx.trunc.max_terms {
        if aq.clone().abs() < ctx.trunc.tail_rel_tol {
            return Ok(prod);
        }
        prod *= Float::with_val(prec, 1) - &aq;
        aq *= q;
    }
    Err(QError::NonConvergent {
        max_terms: ctx.trunc.max_terms,
        last_term: aq.to_f64(),
    })
}

/// Product of infinite symbols prod_i (num_i;q)_inf / prod_j (den_j;q)_inf.
pub fn qpochhammer_inf_ratio(num: &[Float], den: &[Float], q: &Float, ctx: &QContext) -> Result<Float> {
    let prec = ctx.prec();
    let mut r = Float::with_val(prec, 1);
    for a in num {
        r *= qpochhammer_inf_real(a, q, ctx)?;
    }
    for a in den {
        r /= qpochhammer_inf_real(a, q, ctx)?;
    }
    Ok(r)
}
