//! Argument parsing helpers.

use std::ops::RangeInclusive;

/// Parses `lo:hi` into an inclusive range with `lo <= hi`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound {lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound {hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok(lo..=hi)
}

/// Removes one pair of parentheses enclosing the whole string.
fn strip_outer_parens(s: &str) -> &str {
    let s = s.trim();
    if !(s.starts_with('(') && s.ends_with(')')) {
        return s;
    }
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 < s.len() {
                    return s;
                }
            }
            _ => {}
        }
    }
    s[1..s.len() - 1].trim()
}

/// Splits generator arguments on commas, after removing parentheses
/// around the whole list.
pub fn split_generators(args: &[String]) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for a in args {
        for g in strip_outer_parens(a).split(',') {
            let g = g.trim();
            if g.is_empty() {
                return Err(format!("empty generator in {a:?}"));
            }
            out.push(g.to_string());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-6:8").unwrap(), -6..=8);
        assert_eq!(parse_range("4:4").unwrap(), 4..=4);
        assert!(parse_range("5:4").is_err());
        assert!(parse_range("5").is_err());
        assert!(parse_range("a:4").is_err());
    }

    #[test]
    fn generators() {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(split_generators(&v(&["(xy, x*z,y*z)"])).unwrap(), v(&["xy", "x*z", "y*z"]));
        assert_eq!(split_generators(&v(&["x*y", "t^3"])).unwrap(), v(&["x*y", "t^3"]));
        assert_eq!(split_generators(&v(&["(x+y)*z"])).unwrap(), v(&["(x+y)*z"]));
        assert_eq!(split_generators(&v(&["(x+y)*(z-t)"])).unwrap(), v(&["(x+y)*(z-t)"]));
        assert_eq!(split_generators(&v(&["((x+y)*z, t^2)"])).unwrap(), v(&["(x+y)*z", "t^2"]));
        assert!(split_generators(&v(&["x,,y"])).is_err());
    }
}
