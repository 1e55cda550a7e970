// Shared helpers for the textual scalar syntax (`a+b*i`, `3-t^2`, ...).

use super::{ParseScalarError, Rational};

/// Splits `s` into signed terms at top-level `+`/`-`. A sign directly after
/// another operator (or at the start) belongs to the following term.
pub(crate) fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start => {
                let prev = bytes[i - 1];
                if !matches!(prev, b'+' | b'-' | b'*' | b'^' | b'/' | b'(') {
                    terms.push(&s[start..i]);
                    start = i;
                }
            }
            _ => {}
        }
    }
    if start < s.len() {
        terms.push(&s[start..]);
    }
    terms
}

/// Strips a leading `+` or `-`, returning `(negative, rest)`.
pub(crate) fn strip_sign(term: &str) -> (bool, &str) {
    let mut neg = false;
    let mut rest = term;
    loop {
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            neg = !neg;
            rest = r;
        } else {
            return (neg, rest);
        }
    }
}

/// Splits a term like `3/2*i` into `(Some("3/2"), "i")`, `i` into
/// `(None, "i")` and `7` into `(Some("7"), "")`, given the unit symbols that
/// may appear.
pub(crate) fn split_unit<'a>(term: &'a str, units: &[&str]) -> (Option<&'a str>, &'a str) {
    for unit in units {
        if term == *unit {
            return (None, term);
        }
        if let Some(coef) = term.strip_suffix(unit) {
            if let Some(coef) = coef.strip_suffix('*') {
                return (Some(coef), &term[term.len() - unit.len()..]);
            }
        }
    }
    (Some(term), "")
}

/// Appends `coef*unit` to `out` with canonical sign handling: the first term
/// carries a bare `-`, later terms are joined with `+` or `-`. `coef_abs` is
/// the printed magnitude; `"1"` is elided in front of a unit.
pub(crate) fn push_term(out: &mut String, negative: bool, coef_abs: &str, unit: &str) {
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push(if negative { '-' } else { '+' });
    }
    if unit.is_empty() {
        out.push_str(coef_abs);
    } else {
        if coef_abs != "1" {
            out.push_str(coef_abs);
            out.push('*');
        }
        out.push_str(unit);
    }
}

/// Parses `a+b*u1+c*u2...` into one rational per unit; `units[0]` must be
/// the empty string (the real part). Repeated units accumulate.
pub(crate) fn parse_components(token: &str, units: &[&str]) -> Result<Vec<Rational>, ParseScalarError> {
    let bad = || ParseScalarError::Invalid(token.to_string());
    if token.is_empty() {
        return Err(bad());
    }
    let named: Vec<&str> = units[1..].to_vec();
    let mut parts = vec![Rational::from_integer(0); units.len()];
    for term in split_terms(token) {
        let (neg, body) = strip_sign(term);
        if body.is_empty() {
            return Err(bad());
        }
        let (coef, unit) = split_unit(body, &named);
        let mut value = match coef {
            Some(c) => Rational::parse(c).map_err(|e| match e {
                ParseScalarError::ZeroDenominator(_) => ParseScalarError::ZeroDenominator(token.to_string()),
                _ => bad(),
            })?,
            None => Rational::from_integer(1),
        };
        if neg {
            value = value.neg_value();
        }
        let slot = units.iter().position(|u| *u == unit).ok_or_else(bad)?;
        parts[slot] = parts[slot].add_value(&value);
    }
    Ok(parts)
}

/// Inverse of [`parse_components`]: nonzero parts only, `0` when all vanish.
pub(crate) fn format_components(parts: &[&Rational], units: &[&str]) -> String {
    let mut out = String::new();
    for (value, unit) in parts.iter().zip(units) {
        if value.is_zero_value() {
            continue;
        }
        push_term(&mut out, value.is_negative(), &value.abs().to_string(), unit);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_signed_terms() {
        assert_eq!(split_terms("1+2*i-3*j"), vec!["1", "+2*i", "-3*j"]);
        assert_eq!(split_terms("-1/2*i"), vec!["-1/2*i"]);
        assert_eq!(split_terms("1+-2*t^3"), vec!["1", "+-2*t^3"]);
        assert_eq!(split_terms("(1+t)/(2-t)"), vec!["(1+t)/(2-t)"]);
    }

    #[test]
    fn unit_split() {
        assert_eq!(split_unit("3/2*i", &["i"]), (Some("3/2"), "i"));
        assert_eq!(split_unit("i", &["i"]), (None, "i"));
        assert_eq!(split_unit("7", &["i"]), (Some("7"), ""));
    }
}
