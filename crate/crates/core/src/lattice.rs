//! The q-lattice {±q^k : k in Z} and complex-valued functions sampled on a
//! lattice window.

use std::fmt;
use std::io::{BufRead, Write};

use rug::{Complex, Float};

use crate::context::QContext;
use crate::error::{QError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(&self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(s: i8) -> Result<Sign> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(QError::Parse(format!("sign must be +1 or -1, got {s}"))),
        }
    }
}

/// A point of the q-lattice, stored exactly as (sign, exponent); the numeric
/// value sign*q^k is reconstructed on demand. Zero is a distinguished point,
/// not a limit of exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticePoint {
    Zero,
    Node { sign: Sign, k: i64 },
}

impl LatticePoint {
    pub fn pos(k: i64) -> Self {
        LatticePoint::Node { sign: Sign::Plus, k }
    }

    pub fn neg(k: i64) -> Self {
        LatticePoint::Node { sign: Sign::Minus, k }
    }

    pub fn value(&self, ctx: &QContext) -> Float {
        match self {
            LatticePoint::Zero => ctx.zero(),
            LatticePoint::Node { sign, k } => {
                let mut v = ctx.qpow(&rug::Rational::from(*k));
                if *sign == Sign::Minus {
                    v = -v;
                }
                v
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LatticePoint::Zero)
    }

    /// |x| = q^k for nonzero points.
    pub fn abs_exponent(&self) -> Option<i64> {
        match self {
            LatticePoint::Zero => None,
            LatticePoint::Node { k, .. } => Some(*k),
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match self {
            LatticePoint::Zero => None,
            LatticePoint::Node { sign, .. } => Some(*sign),
        }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticePoint::Zero => write!(f, "0"),
            LatticePoint::Node { sign, k } => {
                write!(f, "{}q^{}", if *sign == Sign::Minus { "-" } else { "" }, k)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeDomain {
    /// Points q^k only.
    PositiveAxis,
    /// Points ±q^k.
    RealLine,
}

/// A complex-valued function tabulated at every lattice point with exponent
/// inside a window. Evaluation outside the window is an error, never a
/// silent zero.
#[derive(Debug, Clone)]
pub struct LatticeFunction {
    domain: LatticeDomain,
    window: (i64, i64),
    pos: Vec<Complex>,
    neg: Vec<Complex>,
}

impl LatticeFunction {
    pub fn zero(domain: LatticeDomain, window: (i64, i64), prec: u32) -> Result<Self> {
        if window.0 > window.1 {
            return Err(QError::InvalidParameter(format!(
                "window ({}, {}) is empty",
                window.0, window.1
            )));
        }
        let n = (window.1 - window.0 + 1) as usize;
        let z = Complex::with_val(prec, (0, 0));
        Ok(LatticeFunction {
            domain,
            window,
            pos: vec![z.clone(); n],
            neg: if domain == LatticeDomain::RealLine { vec![z; n] } else { Vec::new() },
        })
    }

    /// Tabulate `f` at every windowed lattice point.
    pub fn from_fn<F>(domain: LatticeDomain, window: (i64, i64), ctx: &QContext, mut f: F) -> Result<Self>
    where
        F: FnMut(Sign, i64, &Float) -> Result<Complex>,
    {
        let mut lf = LatticeFunction::zero(domain, window, ctx.prec())?;
        for k in window.0..=window.1 {
            let x = LatticePoint::pos(k).value(ctx);
            let v = f(Sign::Plus, k, &x)?;
            lf.set(Sign::Plus, k, v)?;
            if domain == LatticeDomain::RealLine {
                let xm = -x.clone();
                let v = f(Sign::Minus, k, &xm)?;
                lf.set(Sign::Minus, k, v)?;
            }
        }
        Ok(lf)
    }

    pub fn domain(&self) -> LatticeDomain {
        self.domain
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    fn index(&self, sign: Sign, k: i64) -> Result<usize> {
        if k < self.window.0 || k > self.window.1 {
            return Err(QError::OutsideWindow {
                sign: sign.factor() as i8,
                k,
                k_min: self.window.0,
                k_max: self.window.1,
            });
        }
        if sign == Sign::Minus && self.domain == LatticeDomain::PositiveAxis {
            return Err(QError::DomainError(
                "negative lattice point on a (0,inf) function".into(),
            ));
        }
        Ok((k - self.window.0) as usize)
    }

    pub fn get(&self, sign: Sign, k: i64) -> Result<&Complex> {
        let i = self.index(sign, k)?;
        Ok(match sign {
            Sign::Plus => &self.pos[i],
            Sign::Minus => &self.neg[i],
        })
    }

    pub fn set(&mut self, sign: Sign, k: i64, v: Complex) -> Result<()> {
        let i = self.index(sign, k)?;
        match sign {
            Sign::Plus => self.pos[i] = v,
            Sign::Minus => self.neg[i] = v,
        }
        Ok(())
    }

    pub fn at(&self, p: &LatticePoint) -> Result<&Complex> {
        match p {
            LatticePoint::Zero => Err(QError::ZeroArgument),
            LatticePoint::Node { sign, k } => self.get(*sign, *k),
        }
    }

    /// Iterate over (sign, k, value) for every tabulated point.
    pub fn iter(&self) -> impl Iterator<Item = (Sign, i64, &Complex)> {
        let (k_min, _) = self.window;
        let pos = self.pos.iter().enumerate().map(move |(i, v)| (Sign::Plus, k_min + i as i64, v));
        let neg = self.neg.iter().enumerate().map(move |(i, v)| (Sign::Minus, k_min + i as i64, v));
        pos.chain(neg)
    }

    /// max |self - other| over the common points; windows must match.
    pub fn sup_distance(&self, other: &LatticeFunction) -> Result<Float> {
        if self.window != other.window || self.domain != other.domain {
            return Err(QError::InvalidParameter("mismatched lattice windows".into()));
        }
        let prec = self.pos[0].prec().0;
        let mut sup = Float::with_val(prec, 0);
        for (s, k, v) in self.iter() {
            let d: Complex = v.clone() - other.get(s, k)?;
            let a = d.abs().into_real_imag().0;
            if a > sup {
                sup = a;
            }
        }
        Ok(sup)
    }

    /// Write as CSV with columns (sign, k, re, im), 25 significant digits.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "sign,k,re,im")?;
        for (s, k, v) in self.iter() {
            writeln!(
                w,
                "{},{},{},{}",
                s.factor(),
                k,
                crate::report::format_float(v.real()),
                crate::report::format_float(v.imag()),
            )?;
        }
        Ok(())
    }

    /// Read the CSV format produced by `write_csv`. The window is the hull of
    /// the exponents present; the domain is RealLine iff any negative-sign row
    /// appears, unless `force_real_line` is set.
    pub fn read_csv<R: BufRead>(r: R, prec: u32, force_real_line: bool) -> Result<Self> {
        let mut rows: Vec<(i8, i64, Float, Float)> = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with("sign") {
                continue;
            }
            let cols: Vec<&str> = t.split(',').map(str::trim).collect();
            if cols.len() != 4 {
                return Err(QError::Parse(format!(
                    "line {}: expected 4 columns (sign,k,re,im)",
                    lineno + 1
                )));
            }
            let sign: i8 = cols[0]
                .parse()
                .map_err(|_| QError::Parse(format!("line {}: bad sign {:?}", lineno + 1, cols[0])))?;
            let k: i64 = cols[1]
                .parse()
                .map_err(|_| QError::Parse(format!("line {}: bad exponent {:?}", lineno + 1, cols[1])))?;
            let re = parse_float(cols[2], prec, lineno)?;
            let im = parse_float(cols[3], prec, lineno)?;
            Sign::from_i8(sign)?;
            rows.push((sign, k, re, im));
        }
        if rows.is_empty() {
            return Err(QError::Parse("empty lattice CSV".into()));
        }
        let k_min = rows.iter().map(|r| r.1).min().unwrap();
        let k_max = rows.iter().map(|r| r.1).max().unwrap();
        let has_neg = rows.iter().any(|r| r.0 == -1);
        let domain = if has_neg || force_real_line {
            LatticeDomain::RealLine
        } else {
            LatticeDomain::PositiveAxis
        };
        let mut lf = LatticeFunction::zero(domain, (k_min, k_max), prec)?;
        for (s, k, re, im) in rows {
            lf.set(Sign::from_i8(s)?, k, Complex::with_val(prec, (re, im)))?;
        }
        Ok(lf)
    }
}

fn parse_float(s: &str, prec: u32, lineno: usize) -> Result<Float> {
    Float::parse(s)
        .map(|p| Float::with_val(prec, p))
        .map_err(|e| QError::Parse(format!("line {}: bad number {s:?}: {e}", lineno + 1)))
}
