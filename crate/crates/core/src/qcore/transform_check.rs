//! Cross-checks of 2_phi_1 transformation identities, used both as a
//! self-test of the series engine and as a CLI suite.

use rug::{Complex, Float};

use crate::context::QContext;
use crate::error::Result;
use crate::report::Report;

use super::hypergeometric::basic_hypergeometric;
use super::pochhammer::qpochhammer_inf;

fn phi21(a: &Complex, b: &Complex, c: &Complex, q: &Float, z: &Complex, ctx: &QContext) -> Result<Complex> {
    Ok(basic_hypergeometric(&[a.clone(), b.clone()], &[c.clone()], q, z, ctx)?.value)
}

fn poch_inf(a: &Complex, q: &Float, ctx: &QContext) -> Result<Complex> {
    Ok(qpochhammer_inf(a, q, ctx)?.value)
}

/// Residuals of the 2_phi_1 transformation
/// `phi(a,b;c;z) = (abz/c;q)_inf/(z;q)_inf  phi(c/a,c/b;c;abz/c)`
/// and of Heine's transformation
/// `phi(a,b;c;z) = (b,az;q)_inf/((c,z;q)_inf) phi(c/b,z;az;b)`,
/// evaluated where both series converge.
pub fn hypergeometric_transform_check(
    a: &Complex,
    b: &Complex,
    c: &Complex,
    z: &Complex,
    q: &Float,
    tol: &Float,
    ctx: &QContext,
) -> Result<Report> {
    let mut report = Report::new(
        "hypergeometric-transforms",
        tol,
        ctx.precision_digits(),
        ctx.trunc.lattice_window,
        ctx.trunc.max_terms,
    );
    report.set_param("a", crate::report::format_complex(a));
    report.set_param("b", crate::report::format_complex(b));
    report.set_param("c", crate::report::format_complex(c));
    report.set_param("z", crate::report::format_complex(z));
    report.set_param("q", crate::report::format_float(q));

    let lhs = phi21(a, b, c, q, z, ctx)?;

    // (abz/c;q)_inf/(z;q)_inf phi(c/a, c/b; c; abz/c)
    let abz_c: Complex = a.clone() * b * z / c.clone();
    let ca: Complex = Complex::from(c / a.clone());
    let cb: Complex = Complex::from(c / b.clone());
    let pref: Complex = Complex::from(poch_inf(&abz_c, q, ctx)? / poch_inf(z, q, ctx)?);
    let rhs: Complex = pref * phi21(&ca, &cb, c, q, &abz_c, ctx)?;
    report.add_complex("basictransform", &lhs, &rhs, tol);

    // Heine: (b,az;q)_inf/((c,z;q)_inf) phi(c/b, z; az; b)
    let az: Complex = Complex::from(a * z.clone());
    let num: Complex = Complex::from(poch_inf(b, q, ctx)? * poch_inf(&az, q, ctx)?);
    let den: Complex = Complex::from(poch_inf(c, q, ctx)? * poch_inf(z, q, ctx)?);
    let pref: Complex = num / den;
    let rhs_heine: Complex = pref * phi21(&cb, z, &az, q, b, ctx)?;
    report.add_complex("heine", &lhs, &rhs_heine, tol);

    Ok(report)
}
