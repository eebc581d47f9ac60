//! Shared lexical helpers for the polynomial text grammars.

use crate::error::{Error, Result};
use crate::rational::{parse_q, Q};

/// Rewrites unicode superscript digits into `^n`, the unicode minus sign into
/// `-` and drops whitespace.
pub(crate) fn normalize(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_sup = false;
    for ch in text.chars() {
        let sup = match ch {
            '⁰' => Some('0'),
            '¹' => Some('1'),
            '²' => Some('2'),
            '³' => Some('3'),
            '⁴' => Some('4'),
            '⁵' => Some('5'),
            '⁶' => Some('6'),
            '⁷' => Some('7'),
            '⁸' => Some('8'),
            '⁹' => Some('9'),
            _ => None,
        };
        match sup {
            Some(d) => {
                if !in_sup {
                    out.push('^');
                    in_sup = true;
                }
                out.push(d);
            }
            None => {
                in_sup = false;
                if ch == '\u{2212}' {
                    out.push('-');
                } else if !ch.is_whitespace() {
                    out.push(ch);
                }
            }
        }
    }
    out
}

/// Splits on `sep` outside parentheses.
pub(crate) fn split_top_level(text: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (idx, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced `)` in `{text}`")));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&text[start..idx]);
                start = idx + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced `(` in `{text}`")));
    }
    parts.push(&text[start..]);
    Ok(parts)
}

/// Reads a leading rational (`-3`, `3/2`, `0.5` or a parenthesised one) and
/// returns it with the unparsed remainder.
pub(crate) fn leading_rational(term: &str) -> Result<(Option<Q>, &str)> {
    if let Some(rest) = term.strip_prefix('(') {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced `(` in `{term}`")))?;
        let value = parse_q(&rest[..close])?;
        return Ok((Some(value), &rest[close + 1..]));
    }
    let bytes = term.as_bytes();
    let mut end = 0;
    if end < bytes.len() && bytes[end] == b'-' {
        end += 1;
    }
    let digits_start = end;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    if end == digits_start {
        if digits_start > 0 {
            return Err(Error::Parse(format!("dangling `-` in `{term}`")));
        }
        return Ok((None, term));
    }
    if end < bytes.len() && (bytes[end] == b'/' || bytes[end] == b'.') {
        let mark = end;
        end += 1;
        let frac_start = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == frac_start {
            return Err(Error::Parse(format!("malformed number near `{}`", &term[mark..])));
        }
    }
    Ok((Some(parse_q(&term[..end])?), &term[end..]))
}

/// Parses a product of variable powers such as `x^2*y`, `xy`, `y^3z`.
/// Returns the exponent of each name in `vars`.
pub(crate) fn monomial_exponents(text: &str, vars: &[char]) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; vars.len()];
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    while pos < chars.len() {
        let ch = chars[pos];
        if ch == '*' {
            pos += 1;
            continue;
        }
        let slot = vars
            .iter()
            .position(|&v| v == ch)
            .ok_or_else(|| Error::Parse(format!("unexpected `{ch}` in monomial `{text}`")))?;
        pos += 1;
        let mut power = 1u32;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(Error::Parse(format!("missing exponent in `{text}`")));
            }
            let digits: String = chars[start..pos].iter().collect();
            power = digits
                .parse()
                .map_err(|_| Error::Parse(format!("exponent out of range in `{text}`")))?;
        }
        exps[slot] += power;
    }
    Ok(exps)
}

/// Parses `coeff *? monomial` terms joined by `+`. A missing coefficient is the
/// tropical unit 0.
pub(crate) fn parse_tropical_terms(text: &str, vars: &[char]) -> Result<Vec<(Vec<u32>, Q)>> {
    let normalized = normalize(text);
    if normalized.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    for raw in split_top_level(&normalized, '+')? {
        if raw.is_empty() {
            return Err(Error::Parse(format!("empty term in `{text}`")));
        }
        let (coeff, rest) = leading_rational(raw)?;
        let rest = rest.strip_prefix('*').unwrap_or(rest);
        if coeff.is_none() && rest.is_empty() {
            return Err(Error::Parse(format!("empty term in `{text}`")));
        }
        let exps = monomial_exponents(rest, vars)?;
        terms.push((exps, coeff.unwrap_or_else(|| Q::from_integer(0.into()))));
    }
    Ok(terms)
}

pub(crate) fn format_power(name: &str, exp: u32) -> String {
    match exp {
        0 => String::new(),
        1 => name.to_string(),
        e => format!("{name}^{e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn superscripts_become_carets() {
        assert_eq!(normalize("6z⁸ + 9z¹⁰"), "6z^8+9z^10");
        assert_eq!(normalize("0x² − 1"), "0x^2-1");
    }

    #[test]
    fn monomials_accept_juxtaposition_and_stars() {
        assert_eq!(monomial_exponents("xy", &['x', 'y']).unwrap(), vec![1, 1]);
        assert_eq!(monomial_exponents("x^2*y^3", &['x', 'y']).unwrap(), vec![2, 3]);
        assert_eq!(monomial_exponents("y^3z", &['z', 'y']).unwrap(), vec![1, 3]);
        assert!(monomial_exponents("w", &['x', 'y']).is_err());
    }

    #[test]
    fn parenthesised_negative_coefficient() {
        let terms = parse_tropical_terms("-2+0x+(-1)y", &['x', 'y']).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[2].0, vec![0, 1]);
    }
}
