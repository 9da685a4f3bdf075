//! Structured results of identity suites: per-case residuals, tolerances,
//! pass/fail, plus provenance. Serializes to JSON or CSV with 25 significant
//! digits.

use std::collections::BTreeMap;

use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

/// Decimal rendering used everywhere a number leaves the library.
pub const REPORT_DIGITS: usize = 25;

/// Format a float with 25 significant digits.
pub fn format_float(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    // rug's format precision counts significant digits, not fraction digits.
    format!("{:.*e}", REPORT_DIGITS, x)
}

/// Format a complex value without commas (CSV-safe): `re` or `re+imi`.
pub fn format_complex(z: &Complex) -> String {
    if z.imag().is_zero() {
        format_float(z.real())
    } else {
        let im = format_float(z.imag());
        if im.starts_with('-') {
            format!("{}{}i", format_float(z.real()), im)
        } else {
            format!("{}+{}i", format_float(z.real()), im)
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseResult {
    pub case_id: String,
    pub computed: String,
    pub reference: String,
    pub abs_err: String,
    pub rel_err: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub max_rel_err: String,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub precision_digits: u32,
    pub window: (i64, i64),
    pub max_terms: usize,
    pub tolerance: String,
    pub seed: Option<u64>,
    /// Free-form notes, e.g. empirically determined constants.
    pub notes: Vec<String>,
}

/// Result of an identity suite. `all_pass` holds iff every case's relative
/// error (absolute error for zero references) is within the tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub suite_name: String,
    pub parameters: BTreeMap<String, String>,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(suite_name: &str, tol: &Float, precision_digits: u32, window: (i64, i64), max_terms: usize) -> Self {
        Report {
            suite_name: suite_name.to_string(),
            parameters: BTreeMap::new(),
            cases: Vec::new(),
            summary: Summary { max_rel_err: "0".into(), all_pass: true },
            provenance: Provenance {
                precision_digits,
                window,
                max_terms,
                tolerance: format_float(tol),
                seed: None,
                notes: Vec::new(),
            },
        }
    }

    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.provenance.seed = Some(seed);
    }

    pub fn note(&mut self, note: impl ToString) {
        self.provenance.notes.push(note.to_string());
    }

    fn push(&mut self, case: CaseResult, err_used: &Float, tol: &Float) {
        if err_used > tol {
            self.summary.all_pass = false;
        }
        let current = Float::parse(&self.summary.max_rel_err)
            .map(|p| Float::with_val(err_used.prec(), p))
            .unwrap_or_else(|_| Float::with_val(err_used.prec(), 0));
        if *err_used > current {
            self.summary.max_rel_err = format_float(err_used);
        }
        // canonical ordering by case_id regardless of insertion order
        let at = self.cases.partition_point(|c| c.case_id <= case.case_id);
        self.cases.insert(at, case);
    }

    /// Record a case comparing complex values. For zero references the
    /// absolute error is measured against the tolerance.
    pub fn add_complex(&mut self, id: impl ToString, computed: &Complex, reference: &Complex, tol: &Float) {
        let prec = computed.prec().0;
        let d: Complex = (computed - reference.clone()).into();
        let abs_err = Float::with_val(prec, d.abs().into_real_imag().0);
        let ref_abs = Float::with_val(prec, reference.clone().abs().into_real_imag().0);
        let (rel_err, err_used) = if ref_abs.is_zero() {
            (abs_err.clone(), abs_err.clone())
        } else {
            let r: Float = abs_err.clone() / &ref_abs;
            (r.clone(), r)
        };
        let case = CaseResult {
            case_id: id.to_string(),
            computed: format_complex(computed),
            reference: format_complex(reference),
            abs_err: format_float(&abs_err),
            rel_err: format_float(&rel_err),
            pass: err_used <= *tol,
        };
        self.push(case, &err_used, tol);
    }

    pub fn add_real(&mut self, id: impl ToString, computed: &Float, reference: &Float, tol: &Float) {
        let prec = computed.prec();
        let c = Complex::with_val(prec, (computed, &Float::with_val(prec, 0)));
        let r = Complex::with_val(prec, (reference, &Float::with_val(prec, 0)));
        self.add_complex(id, &c, &r, tol);
    }

    /// Record a structural (boolean) case.
    pub fn add_flag(&mut self, id: impl ToString, ok: bool, tol: &Float) {
        let prec = tol.prec();
        let err = Float::with_val(prec, if ok { 0 } else { 1 });
        let case = CaseResult {
            case_id: id.to_string(),
            computed: if ok { "true".into() } else { "false".into() },
            reference: "true".into(),
            abs_err: format_float(&err),
            rel_err: format_float(&err),
            pass: ok,
        };
        self.push(case, &err, tol);
    }

    pub fn all_pass(&self) -> bool {
        self.summary.all_pass
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// One case per row; parameters and summary as commented header lines.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# suite,{}\n", self.suite_name));
        for (k, v) in &self.parameters {
            out.push_str(&format!("# param,{k},{v}\n"));
        }
        out.push_str(&format!(
            "# summary,max_rel_err={},all_pass={}\n",
            self.summary.max_rel_err, self.summary.all_pass
        ));
        out.push_str("case_id,computed,reference,abs_err,rel_err,pass\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.case_id, c.computed, c.reference, c.abs_err, c.rel_err, c.pass
            ));
        }
        out
    }
}
