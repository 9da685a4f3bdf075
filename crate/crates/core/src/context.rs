//! Working-precision context threaded through every computation.

use rug::{ops::Pow, Complex, Float, Rational};

use crate::error::{QError, Result};

/// Bits per decimal digit, rounded up a little.
const BITS_PER_DIGIT: f64 = 3.3219280948873626;

/// Truncation policy for infinite series, products and lattice sums.
#[derive(Debug, Clone)]
pub struct TruncationPolicy {
    /// Hard cap on the number of summed terms.
    pub max_terms: usize,
    /// Relative tail tolerance; a series stops once the current term falls
    /// below this fraction of the partial sum.
    pub tail_rel_tol: Float,
    /// Window (k_min, k_max) of lattice exponents for doubly infinite sums,
    /// with k_min < 0 < k_max.
    pub lattice_window: (i64, i64),
}

impl TruncationPolicy {
    /// Default policy at the given precision: `tail_rel_tol = 10^(-digits+5)`,
    /// `max_terms = 10000`, window (-40, 60).
    pub fn default_for(precision_digits: u32, prec_bits: u32) -> Self {
        let tol = Float::with_val(prec_bits, 10).pow(-(precision_digits as i32) + 5);
        TruncationPolicy {
            max_terms: 10_000,
            tail_rel_tol: tol,
            lattice_window: (-40, 60),
        }
    }
}

/// Base q together with the working precision and truncation policy.
#[derive(Debug, Clone)]
pub struct QContext {
    q: Float,
    precision_digits: u32,
    prec_bits: u32,
    pub trunc: TruncationPolicy,
}

impl QContext {
    pub const DEFAULT_DIGITS: u32 = 40;

    /// Build a context from a decimal string for q (parsed at working
    /// precision) and a digit count. Rejects q outside (0,1) and
    /// `precision_digits < 30`.
    pub fn from_decimal(q: &str, precision_digits: u32) -> Result<Self> {
        let prec_bits = bits_for(precision_digits);
        let parsed = Float::parse(q)
            .map_err(|e| QError::Parse(format!("invalid q {q:?}: {e}")))?;
        Self::from_float(Float::with_val(prec_bits, parsed), precision_digits)
    }

    pub fn new(q: f64, precision_digits: u32) -> Result<Self> {
        let prec_bits = bits_for(precision_digits);
        Self::from_float(Float::with_val(prec_bits, q), precision_digits)
    }

    pub fn from_float(q: Float, precision_digits: u32) -> Result<Self> {
        if precision_digits < 30 {
            return Err(QError::InvalidParameter(format!(
                "precision_digits must be >= 30, got {precision_digits}"
            )));
        }
        if !(q.is_finite() && q.is_sign_positive() && !q.is_zero()) || q >= 1u32 {
            return Err(QError::InvalidParameter(
                "q must satisfy 0 < q < 1 strictly".into(),
            ));
        }
        let prec_bits = bits_for(precision_digits);
        let mut q = q;
        q.set_prec(prec_bits);
        let trunc = TruncationPolicy::default_for(precision_digits, prec_bits);
        Ok(QContext { q, precision_digits, prec_bits, trunc })
    }

    pub fn q(&self) -> &Float {
        &self.q
    }

    /// q^2, the base in which most of the special functions here live.
    pub fn q_squared(&self) -> Float {
        Float::with_val(self.prec_bits, self.q.clone().square())
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    pub fn prec(&self) -> u32 {
        self.prec_bits
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.prec_bits, v)
    }

    pub fn float_from(&self, v: &Float) -> Float {
        Float::with_val(self.prec_bits, v)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.prec_bits, (re, im))
    }

    pub fn zero(&self) -> Float {
        Float::with_val(self.prec_bits, 0)
    }

    pub fn one(&self) -> Float {
        Float::with_val(self.prec_bits, 1)
    }

    /// b^r for a positive real base and exact rational exponent.
    pub fn pow_rational(&self, base: &Float, r: &Rational) -> Float {
        let e = Float::with_val(self.prec_bits, r);
        Float::with_val(self.prec_bits, base.clone().pow(e))
    }

    /// q^r.
    pub fn qpow(&self, r: &Rational) -> Float {
        self.pow_rational(&self.q, r)
    }

    /// A context identical to this one except for `extra_bits` of additional
    /// working precision. The value of q is preserved bit for bit, so all
    /// lattice points coincide with the unboosted ones.
    pub fn boosted(&self, extra_bits: u32) -> QContext {
        if extra_bits == 0 {
            return self.clone();
        }
        let prec_bits = self.prec_bits + extra_bits;
        let mut q = self.q.clone();
        q.set_prec(prec_bits);
        let mut tol = self.trunc.tail_rel_tol.clone();
        tol.set_prec(prec_bits);
        QContext {
            q,
            precision_digits: self.precision_digits + (extra_bits as f64 / BITS_PER_DIGIT) as u32,
            prec_bits,
            trunc: TruncationPolicy {
                max_terms: self.trunc.max_terms,
                tail_rel_tol: tol,
                lattice_window: self.trunc.lattice_window,
            },
        }
    }

    /// Same context with a different lattice window.
    pub fn with_window(&self, k_min: i64, k_max: i64) -> QContext {
        let mut c = self.clone();
        c.trunc.lattice_window = (k_min, k_max);
        c
    }

    /// Same context with a different term cap.
    pub fn with_max_terms(&self, max_terms: usize) -> QContext {
        let mut c = self.clone();
        c.trunc.max_terms = max_terms;
        c
    }

    /// Same context with a different tail tolerance (given as 10^exp10).
    pub fn with_tail_tol_exp10(&self, exp10: i32) -> QContext {
        let mut c = self.clone();
        c.trunc.tail_rel_tol = Float::with_val(self.prec_bits, 10).pow(exp10);
        c
    }
}

pub fn bits_for(precision_digits: u32) -> u32 {
    (precision_digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 16
}

/// A truncated numeric value together with an a-posteriori error estimate
/// (first neglected term times 1/(1-q), a geometric majorant) and the number
/// of terms that were summed.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: Complex,
    pub err_estimate: Float,
    pub terms_used: usize,
}

impl SeriesValue {
    pub fn exact(value: Complex, terms_used: usize) -> Self {
        let prec = value.prec().0;
        SeriesValue { value, err_estimate: Float::with_val(prec, 0), terms_used }
    }

    pub fn re(&self) -> Float {
        self.value.real().clone()
    }

    pub fn im(&self) -> Float {
        self.value.imag().clone()
    }

    /// |value|.
    pub fn abs(&self) -> Float {
        Float::with_val(self.value.prec().0, self.value.clone().abs().into_real_imag().0)
    }
}
