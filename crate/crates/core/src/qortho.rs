//! Little q-Jacobi polynomials, generalized little q-Gegenbauer polynomials,
//! their norm constants and orthogonality Gram matrices, plus a classical
//! Jacobi oracle for the q -> 1 limit.

use rug::{Float, Rational};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::integral::{q_integral, QDomain};
use crate::qcore::pochhammer::{qpochhammer_inf_real, qpochhammer_real};

/// Parameter pair (alpha, beta), both > -1, stored exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParams {
    alpha: Rational,
    beta: Rational,
}

impl PolyParams {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if alpha <= -1i32 || beta <= -1i32 {
            return Err(QError::InvalidParameter(format!(
                "polynomial parameters must exceed -1, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(PolyParams { alpha, beta })
    }

    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64) -> Result<Self> {
        if ad == 0 || bd == 0 {
            return Err(QError::InvalidParameter("zero denominator".into()));
        }
        Self::new(Rational::from((an, ad)), Rational::from((bn, bd)))
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// Same beta with alpha raised by an integer.
    pub fn alpha_shifted(&self, delta: i64) -> Result<Self> {
        Self::new(self.alpha.clone() + delta, self.beta.clone())
    }

    /// alpha + beta without any range restriction; the polynomials themselves
    /// are defined for every parameter pair with alpha, beta > -1.
    pub fn sum(&self) -> Rational {
        self.alpha.clone() + &self.beta
    }

    /// alpha + beta, needed by the orthogonality closed forms; errors if <= -1.
    pub fn sum_checked(&self) -> Result<Rational> {
        let s = self.alpha.clone() + &self.beta;
        if s <= -1i32 {
            return Err(QError::InvalidParameter(format!(
                "alpha + beta must exceed -1, got {s}"
            )));
        }
        Ok(s)
    }
}

/// Orthogonality residuals of an (N+1)x(N+1) Gram matrix: entries hold the
/// residual of each inner product (off-diagonal: the raw value; diagonal:
/// relative deviation from the closed form).
#[derive(Debug, Clone)]
pub struct GramReport {
    pub size: usize,
    pub offdiag_max: Float,
    pub diag_rel_err_max: Float,
    pub entries: Vec<Vec<Float>>,
}

impl GramReport {
    pub fn from_entries(entries: Vec<Vec<Float>>, prec: u32) -> Self {
        let size = entries.len();
        let mut off = Float::with_val(prec, 0);
        let mut diag = Float::with_val(prec, 0);
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let a = e.clone().abs();
                if i == j {
                    if a > diag {
                        diag = a;
                    }
                } else if a > off {
                    off = a;
                }
            }
        }
        GramReport {
            size,
            offdiag_max: off,
            diag_rel_err_max: diag,
            entries,
        }
    }

    pub fn passes(&self, tol: &Float) -> bool {
        self.offdiag_max <= *tol && self.diag_rel_err_max <= *tol
    }
}

/// Extra working bits for a terminating degree-n series whose largest term
/// can reach about base^{-n(n-1)/2}.
fn terminating_boost_bits(n: u32, base: &Float) -> u32 {
    if n < 2 {
        return 0;
    }
    let ln2_inv_base = -base.to_f64().log2();
    let peak = (n as f64) * (n as f64 - 1.0) / 2.0 * ln2_inv_base;
    peak.ceil() as u32 + 32
}

/// Little q-Jacobi polynomial in the given base:
/// raw form 2_phi_1(base^{-n}, base^{alpha+beta+n+1}; base^{alpha+1} | base; base*x),
/// summed exactly in n+1 terms; the normalized variant multiplies by
/// base^{-n(alpha+1)/2} (base^{alpha+1};base)_n / (base;base)_n.
pub fn little_q_jacobi(
    n: u32,
    x: &Float,
    p: &PolyParams,
    base: &Float,
    normalized: bool,
    ctx: &QContext,
) -> Result<Float> {
    let boost = terminating_boost_bits(n, base);
    let c = ctx.boosted(boost);
    let prec = c.prec();
    let mut bb = Float::with_val(prec, base);
    bb.set_prec(prec);
    let xa = Float::with_val(prec, x);

    let a1 = c.pow_rational(&bb, &Rational::from(-(n as i64)));
    let s = p.sum();
    let a2 = c.pow_rational(&bb, &(s + 1 + n as i64));
    let b1 = c.pow_rational(&bb, &(p.alpha.clone() + 1i32));
    let z: Float = xa * &bb;

    let mut sum = Float::with_val(prec, 1);
    let mut term = Float::with_val(prec, 1);
    let mut bk = Float::with_val(prec, 1); // base^k
    let mut bk1 = bb.clone(); // base^{k+1}
    for _k in 0..n {
        let f1: Float = Float::with_val(prec, 1) - Float::with_val(prec, a1.clone() * &bk);
        let f2: Float = Float::with_val(prec, 1) - Float::with_val(prec, a2.clone() * &bk);
        let g1: Float = Float::with_val(prec, 1) - Float::with_val(prec, b1.clone() * &bk);
        let g2: Float = Float::with_val(prec, 1) - &bk1;
        term *= f1 * f2 / (g1 * g2) * &z;
        sum += &term;
        bk *= &bb;
        bk1 *= &bb;
    }
    if normalized {
        // base^{-n(alpha+1)/2}
        let e = (p.alpha.clone() + 1i32) * Rational::from((-(n as i64), 2));
        let pw = c.pow_rational(&bb, &e);
        let num = qpochhammer_real(&b1, &bb, n);
        let den = qpochhammer_real(&bb, &bb, n);
        sum *= pw * num / den;
    }
    sum.set_prec(ctx.prec());
    Ok(sum)
}

/// Generalized little q-Gegenbauer polynomial with superscripts
/// (beta+1/2, alpha+1/2), base q^2 taken from the context:
/// even degree 2n:  (-1)^n (q^{2a+2b+2};q^2)_n/(q^{2a+2};q^2)_n p_n^{(a,b)}(t^2;q^2),
/// odd degree 2n+1: (-1)^n (q^{2a+2b+2};q^2)_{n+1}/(q^{2a+2};q^2)_{n+1} t p_n^{(a+1,b)}(t^2;q^2).
pub fn gegenbauer_gen(n: u32, t: &Float, p: &PolyParams, ctx: &QContext) -> Result<Float> {
    let q2 = ctx.q_squared();
    let half = n / 2;
    let ratio_len = if n % 2 == 0 { half } else { half + 1 };
    let s = p.sum();
    let top = ctx.pow_rational(&q2, &(s.clone() + 1i32));
    let bot = ctx.pow_rational(&q2, &(p.alpha.clone() + 1i32));
    let mut pref: Float =
        qpochhammer_real(&top, &q2, ratio_len) / qpochhammer_real(&bot, &q2, ratio_len);
    if half % 2 == 1 {
        pref = -pref;
    }
    let t2 = Float::with_val(ctx.prec(), t.clone().square());
    let poly = if n % 2 == 0 {
        little_q_jacobi(half, &t2, p, &q2, true, ctx)?
    } else {
        let shifted = p.alpha_shifted(1)?;
        let inner = little_q_jacobi(half, &t2, &shifted, &q2, true, ctx)?;
        inner * t
    };
    Ok(pref * poly)
}

/// Little q-Gegenbauer polynomial C_n^beta(t;q^2), the superscript-(beta,0)
/// case of [`gegenbauer_gen`], i.e. parameters (alpha, beta) = (-1/2, beta-1/2).
pub fn gegenbauer(n: u32, t: &Float, beta: &Rational, ctx: &QContext) -> Result<Float> {
    let p = PolyParams::new(
        Rational::from((-1, 2)),
        beta.clone() - Rational::from((1, 2)),
    )?;
    gegenbauer_gen(n, t, &p, ctx)
}

/// Closed-form norm h_n of the generalized little q-Gegenbauer polynomial of
/// degree n against the weight
/// (t^2 q^2;q^2)_inf/(t^2 q^{2b+2};q^2)_inf d(mu_{q,a}) over [-1,1]:
/// h_{2n} = (q^{2a+2b+2};q^2)_n/(q^{2a+2};q^2)_n
///          /(1-q^{2a+2b+4n+2})
///          * (q^{2n+2},q^{2a+2b+2};q^2)_inf/((q^{2b+2n+2},q^2;q^2)_inf),
/// h_{2n+1} analogous with (n+1)-subscripts and 4n+4 in the power.
pub fn gegenbauer_norm(n: u32, p: &PolyParams, ctx: &QContext) -> Result<Float> {
    let q2 = ctx.q_squared();
    let half = n / 2;
    let (ratio_len, gap) = if n % 2 == 0 {
        (half, Rational::from(2 * half as i64 + 1))
    } else {
        (half + 1, Rational::from(2 * half as i64 + 2))
    };
    let s = p.sum_checked()?;
    let top = ctx.pow_rational(&q2, &(s.clone() + 1i32));
    let bot = ctx.pow_rational(&q2, &(p.alpha.clone() + 1i32));
    let finite: Float =
        qpochhammer_real(&top, &q2, ratio_len) / qpochhammer_real(&bot, &q2, ratio_len);
    // 1 - q^{2a+2b+4n+2} (even) or 1 - q^{2a+2b+4n+4} (odd): exponent s+gap in base q^2
    let power = ctx.pow_rational(&q2, &(s.clone() + gap));
    let head: Float = (ctx.one() - power).recip();
    let inf_n1 = ctx.pow_rational(&q2, &Rational::from(half as i64 + 1)); // q^{2n+2}
    let inf_n2 = ctx.pow_rational(&q2, &(s + 1i32)); // q^{2a+2b+2}
    let inf_d1 = ctx.pow_rational(&q2, &(p.beta.clone() + 1i32 + half as i64)); // q^{2b+2n+2}
    let num = qpochhammer_inf_real(&inf_n1, &q2, ctx)? * qpochhammer_inf_real(&inf_n2, &q2, ctx)?;
    let den = qpochhammer_inf_real(&inf_d1, &q2, ctx)? * qpochhammer_inf_real(&q2, &q2, ctx)?;
    Ok(finite * head * num / den)
}

/// Weight (q^2 t^2;q^2)_inf / (q^{2b+2} t^2;q^2)_inf appearing in the
/// polynomial orthogonality relations.
pub fn jacobi_weight(t: &Float, beta: &Rational, ctx: &QContext) -> Result<Float> {
    let q2 = ctx.q_squared();
    let t2 = Float::with_val(ctx.prec(), t.clone().square());
    let num_arg: Float = t2.clone() * &q2;
    let den_exp = ctx.pow_rational(&q2, &(beta.clone() + 1i32));
    let den_arg: Float = t2 * den_exp;
    let num = qpochhammer_inf_real(&num_arg, &q2, ctx)?;
    let den = qpochhammer_inf_real(&den_arg, &q2, ctx)?;
    Ok(num / den)
}

/// Closed form of the diagonal entry n of the little q-Jacobi Gram matrix:
/// (1-q)/(1-q^{2a+2b+4n+2}) * (q^{2n+2},q^{2a+2b+2n+2};q^2)_inf
///                            /((q^{2a+2n+2},q^{2b+2n+2};q^2)_inf).
pub fn jacobi_gram_diagonal(n: u32, p: &PolyParams, ctx: &QContext) -> Result<Float> {
    let q2 = ctx.q_squared();
    let s = p.sum_checked()?;
    let head_pow = ctx.pow_rational(&q2, &(s.clone() + Rational::from(2 * n as i64 + 1)));
    let head: Float = (ctx.one() - ctx.q()) / (ctx.one() - head_pow);
    let n1 = ctx.pow_rational(&q2, &Rational::from(n as i64 + 1));
    let n2 = ctx.pow_rational(&q2, &(s + Rational::from(n as i64 + 1)));
    let d1 = ctx.pow_rational(&q2, &(p.alpha.clone() + 1i32 + n as i64));
    let d2 = ctx.pow_rational(&q2, &(p.beta.clone() + 1i32 + n as i64));
    let num = qpochhammer_inf_real(&n1, &q2, ctx)? * qpochhammer_inf_real(&n2, &q2, ctx)?;
    let den = qpochhammer_inf_real(&d1, &q2, ctx)? * qpochhammer_inf_real(&d2, &q2, ctx)?;
    Ok(head * num / den)
}

/// Gram matrix of the normalized little q-Jacobi polynomials p_n^{(a,b)}(x^2;q^2)
/// under int_0^1 weight * x^{2a+1} d_q x, n,m = 0..N. Off-diagonal entries are
/// compared with 0, diagonal entries with the closed form (relative residual).
pub fn jacobi_gram(p: &PolyParams, n_max: u32, ctx: &QContext) -> Result<GramReport> {
    // The integrand is a product of two terminating series whose individual
    // terms can dwarf the near-zero off-diagonal result, so the whole sum is
    // carried at boosted precision and rounded back only at the end.
    let c = ctx.boosted(2 * terminating_boost_bits(n_max, &ctx.q_squared()));
    let q2 = c.q_squared();
    let dom = QDomain::ZeroToA(c.one());
    let two_a1 = Rational::from(2) * p.alpha.clone() + 1i32;
    let mut entries: Vec<Vec<Float>> = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let mut row = Vec::with_capacity(n_max as usize + 1);
        for m in 0..=n_max {
            let v = q_integral(
                |x| {
                    let x2 = Float::with_val(c.prec(), x.clone().square());
                    let pn = little_q_jacobi(n, &x2, p, &q2, true, &c)?;
                    let pm = if m == n {
                        pn.clone()
                    } else {
                        little_q_jacobi(m, &x2, p, &q2, true, &c)?
                    };
                    let w = jacobi_weight(x, &p.beta, &c)?;
                    let xp = c.pow_rational(x, &two_a1);
                    let re: Float = pn * pm * w * xp;
                    Ok(rug::Complex::with_val(c.prec(), (&re, &c.zero())))
                },
                &dom,
                c.q(),
                &c,
            )?;
            let mut residual = if n == m {
                let closed = jacobi_gram_diagonal(n, p, &c)?;
                let diff: Float = v.re() - &closed;
                diff / closed
            } else {
                v.re()
            };
            residual.set_prec(ctx.prec());
            row.push(residual);
        }
        entries.push(row);
    }
    Ok(GramReport::from_entries(entries, ctx.prec()))
}

/// Classical Jacobi polynomial P_n^{(alpha,beta)}(y) by the standard
/// three-term recurrence; desk-scale oracle for the q -> 1 limit.
pub fn classical_jacobi_oracle(n: u32, y: f64, alpha: f64, beta: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let p1 = (alpha + 1.0) + (alpha + beta + 2.0) * (y - 1.0) / 2.0;
    if n == 1 {
        return p1;
    }
    let mut prev = 1.0;
    let mut cur = p1;
    for k in 2..=n {
        let kf = k as f64;
        let a2 = 2.0 * kf + alpha + beta;
        let c1 = 2.0 * kf * (kf + alpha + beta) * (a2 - 2.0);
        let c2 = (a2 - 1.0) * ((a2) * (a2 - 2.0) * y + alpha * alpha - beta * beta);
        let c3 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * a2;
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    cur
}
