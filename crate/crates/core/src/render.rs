//! Shared helpers for the canonical text forms.

use std::fmt::{self, Write};

use crate::scalar::Scalar;

/// Writes `coeff*label` for one term. An empty label means a bare scalar.
pub(crate) fn write_term(f: &mut impl Write, coeff: &Scalar, label: &str) -> fmt::Result {
    if label.is_empty() {
        return write!(f, "{coeff}");
    }
    if coeff.is_one() {
        return f.write_str(label);
    }
    if (-coeff).is_one() {
        return write!(f, "-{label}");
    }
    if coeff.term_count() > 1 {
        write!(f, "({coeff})*{label}")
    } else {
        write!(f, "{coeff}*{label}")
    }
}

/// Joins terms with `" + "`; an empty sum renders as `0`.
pub(crate) fn write_sum<'a, I, S>(f: &mut impl Write, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Scalar, S)>,
    S: AsRef<str>,
{
    let mut first = true;
    for (c, label) in terms {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        write_term(f, c, label.as_ref())?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
