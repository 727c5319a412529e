use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::GradedIdeal;
use crate::poly::{count_monomials, monomials_of_degree, Monomial, MonomialOrder};

/// Univariate polynomial in the degree variable `d`, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coeffs: Vec<BigRational>,
}

impl HilbertPolynomial {
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, d: i64) -> BigRational {
        let x = BigRational::from_integer(d.into());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Newton interpolation through `(start + k, values[k])`.
    fn interpolate(start: i64, values: &[i64]) -> Self {
        let n = values.len();
        // forward differences
        let mut diffs: Vec<BigRational> = values.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let mut newton = Vec::with_capacity(n);
        for k in 0..n {
            newton.push(diffs[0].clone());
            for i in 0..n - k - 1 {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
        }
        // sum_k newton[k] * C(d - start, k)
        let mut coeffs = vec![BigRational::zero(); n.max(1)];
        let mut basis = vec![BigRational::one()]; // C(d - start, 0)
        for (k, a) in newton.iter().enumerate() {
            for (i, b) in basis.iter().enumerate() {
                coeffs[i] += a * b;
            }
            // basis *= (d - start - k) / (k + 1)
            let shift = BigRational::from_integer((-(start + k as i64)).into());
            let denom = BigRational::from_integer(((k + 1) as i64).into());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b / &denom;
                next[i] += b * &shift / &denom;
            }
            basis = next;
        }
        let mut hp = HilbertPolynomial { coeffs };
        while hp.coeffs.len() > 1 && hp.coeffs.last().map_or(false, |c| c.is_zero()) {
            hp.coeffs.pop();
        }
        hp
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match k {
                0 => mag.to_string(),
                _ => {
                    let v = if k == 1 { "d".to_string() } else { format!("d^{k}") };
                    if mag.is_one() { v } else { format!("{mag}*{v}") }
                }
            };
            parts.push((sign, body));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (sign, body)) in parts.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

/// Hilbert function and polynomial of `S/I`, with the projective dimension
/// and degree of the vanishing scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// `dim (S/I)_d` for `0 <= d <= regularity_bound + num_vars`.
    pub hilbert_function: BTreeMap<i64, u64>,
    pub hilbert_polynomial: HilbertPolynomial,
    /// From this degree on the Hilbert function equals the polynomial.
    pub regularity_bound: i64,
    /// `None` when the scheme is empty (`I` is irrelevant or the unit ideal).
    pub dimension: Option<i64>,
    pub degree: u64,
}

impl HilbertData {
    pub fn is_empty(&self) -> bool {
        self.dimension.is_none()
    }

    /// Value of the Hilbert function in any degree, using the polynomial
    /// past the tabulated range.
    pub fn value(&self, d: i64) -> u64 {
        if d < 0 {
            return 0;
        }
        match self.hilbert_function.get(&d) {
            Some(v) => *v,
            None => self.hilbert_polynomial.eval(d).to_integer().to_u64().unwrap_or(0),
        }
    }
}

/// Number of degree-`d` monomials outside the monomial ideal `lts`.
pub(crate) fn standard_monomial_count(n: usize, lts: &[Monomial], d: i64) -> u64 {
    if lts.is_empty() {
        return count_monomials(n, d);
    }
    monomials_of_degree(n, d, &MonomialOrder::Lex)
        .iter()
        .filter(|m| !lts.iter().any(|l| l.divides(m)))
        .count() as u64
}

/// Hilbert data of `S/I`, read off the leading-term ideal of the reduced
/// Groebner basis. `regularity_hint` (e.g. from Betti shifts) tightens the
/// degree from which the polynomial is interpolated; without it the bound
/// comes from the lcm of the leading terms, which is always safe.
pub fn hilbert_data(ideal: &GradedIdeal, regularity_hint: Option<i64>) -> HilbertData {
    let n = ideal.ring().num_vars();
    let lts: Vec<Monomial> = if ideal.is_zero() {
        Vec::new()
    } else {
        ideal.groebner_basis().leading_monomials()
    };
    let lcm_bound = match lts.split_first() {
        None => 0,
        Some((first, rest)) => {
            let l = rest.iter().fold(first.clone(), |acc, m| acc.lcm(m));
            (l.degree() as i64 - (n as i64 - 1)).max(0)
        }
    };
    let bound = match regularity_hint {
        Some(h) => h.max(0).min(lcm_bound),
        None => lcm_bound,
    };
    let top = bound + n as i64;
    let hilbert_function: BTreeMap<i64, u64> = (0..=top)
        .map(|d| (d, standard_monomial_count(n, &lts, d)))
        .collect();
    let samples: Vec<i64> = (bound..bound + n as i64)
        .map(|d| hilbert_function[&d] as i64)
        .collect();
    let hp = HilbertPolynomial::interpolate(bound, &samples);
    let (dimension, degree) = match hp.degree() {
        None => (None, 0),
        Some(k) => {
            let mut fact = BigInt::one();
            for i in 2..=k {
                fact *= i;
            }
            let lead = &hp.coeffs[k] * BigRational::from_integer(fact);
            (Some(k as i64), lead.to_integer().to_u64().expect("nonnegative degree"))
        }
    };
    HilbertData { hilbert_function, hilbert_polynomial: hp, regularity_bound: bound, dimension, degree }
}

/// `dim I_d`: the number of degree-`d` monomials minus `dim (S/I)_d`.
pub fn graded_piece_dimension(ideal: &GradedIdeal, d: i64) -> u64 {
    let n = ideal.ring().num_vars();
    if ideal.is_zero() {
        return 0;
    }
    let lts = ideal.groebner_basis().leading_monomials();
    count_monomials(n, d) - standard_monomial_count(n, &lts, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingContext;

    fn ideal(gens: &[&str]) -> GradedIdeal {
        GradedIdeal::parse(&RingContext::p3(), gens).unwrap()
    }

    /// Standard monomials of (xy, xz, yz, t^3) in degree d, enumerated by
    /// brute force over exponent vectors.
    fn brute_count(d: i64) -> u64 {
        let mut n = 0;
        for a in 0..=d {
            for b in 0..=d - a {
                for c in 0..=d - a - b {
                    let e = d - a - b - c;
                    let bad = (a > 0 && b > 0) || (a > 0 && c > 0) || (b > 0 && c > 0) || e >= 3;
                    if !bad {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn three_points_with_triple_structure() {
        let h = hilbert_data(&ideal(&["x*y", "x*z", "y*z", "t^3"]), None);
        for d in 0..15 {
            assert_eq!(h.value(d), brute_count(d), "degree {d}");
        }
        assert_eq!(brute_count(3), 9);
        for d in 3..15 {
            assert_eq!(h.value(d), 9);
        }
        assert_eq!(h.dimension, Some(0));
        assert_eq!(h.degree, 9);
    }

    #[test]
    fn complete_intersection_degree() {
        let h = hilbert_data(&ideal(&["3*x^2*y - y^3", "x^3 - 3*x*y^2", "t^3"]), None);
        assert_eq!(h.dimension, Some(0));
        assert_eq!(h.degree, 27);
    }

    #[test]
    fn zero_and_unit_ideals() {
        let z = GradedIdeal::zero(&RingContext::p3());
        let h = hilbert_data(&z, None);
        for d in 0..6 {
            assert_eq!(h.value(d), count_monomials(4, d));
        }
        assert_eq!(h.dimension, Some(3));
        assert_eq!(h.degree, 1);
        assert_eq!(graded_piece_dimension(&z, 5), 0);
        let u = hilbert_data(&ideal(&["1"]), None);
        assert!(u.is_empty());
        assert_eq!(u.degree, 0);
    }

    #[test]
    fn quartic_surface_and_line() {
        let h = hilbert_data(&ideal(&["x^4 + y^4 + z^4 + t^4"]), None);
        assert_eq!(h.dimension, Some(2));
        assert_eq!(h.degree, 4);
        let line = hilbert_data(&ideal(&["x", "y"]), None);
        assert_eq!(line.dimension, Some(1));
        assert_eq!(line.degree, 1);
        assert_eq!(line.hilbert_polynomial.to_string(), "d + 1");
    }

    #[test]
    fn graded_pieces() {
        assert_eq!(graded_piece_dimension(&ideal(&["x*y", "x*z", "y*z", "t^3"]), 4), 26);
        assert_eq!(graded_piece_dimension(&ideal(&["3*x^2*y - y^3", "x^3 - 3*x*y^2", "t^3"]), 4), 12);
    }
}
