//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] keeps its terms sorted strictly descending under the
//! monomial order of its [`RingContext`], with no zero coefficients, so two
//! equal polynomials are always structurally equal.

mod monomial;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use monomial::{binomial, count_monomials, monomials_of_degree, Monomial, MonomialOrder};
pub use parse::parse_polynomial;

/// Variable names and monomial order of a polynomial ring over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Vec<String>,
    order: MonomialOrder,
}

impl RingContext {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            let valid = a
                .chars()
                .next()
                .map_or(false, |c| c.is_ascii_alphabetic() || c == '_')
                && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("invalid variable name {a:?}")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidRing(format!("duplicate variable {a:?}")));
            }
        }
        if let MonomialOrder::Elimination(mask) = &order {
            if mask.len() != names.len() {
                return Err(Error::InvalidRing("elimination mask length mismatch".into()));
            }
        }
        Ok(Arc::new(RingContext { names, order }))
    }

    /// `Q[x, y, z, t]` with grevlex, x > y > z > t.
    pub fn p3() -> Arc<Self> {
        Self::new(&["x", "y", "z", "t"], MonomialOrder::GrevLex).expect("valid ring")
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(&self.names, order)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }
}

/// Polynomial over `Q` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<RingContext>,
    terms: Vec<(Monomial, BigRational)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<RingContext>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<RingContext>, c: BigRational) -> Self {
        Self::term(ring, Monomial::one(ring.num_vars()), c)
    }

    pub fn one(ring: &Arc<RingContext>) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn var(ring: &Arc<RingContext>, index: usize) -> Self {
        Self::term(ring, Monomial::var(ring.num_vars(), index, 1), BigRational::one())
    }

    pub fn term(ring: &Arc<RingContext>, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.num_vars(), ring.num_vars(), "monomial arity mismatch");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms.
    pub fn from_terms(
        ring: &Arc<RingContext>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut v: Vec<(Monomial, BigRational)> = terms.into_iter().collect();
        for (m, _) in &v {
            assert_eq!(m.num_vars(), ring.num_vars(), "monomial arity mismatch");
        }
        v.sort_by(|a, b| ring.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, BigRational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(ring: &Arc<RingContext>, terms: &[(i64, &[u16])]) -> Self {
        Self::from_terms(
            ring,
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exponents(e), BigRational::from_integer((*c).into()))),
        )
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| a.checked_div(m).map(|q| (q, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiple of `self` with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (ints, _) = self.integer_coefficients();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints[0].is_negative() {
            g = -g;
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .zip(ints)
                .map(|((m, _), c)| (m.clone(), BigRational::from_integer(c / &g)))
                .collect(),
        }
    }

    /// Multiple of `self` with leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Coefficients scaled by the lcm of their denominators, and that lcm.
    pub fn integer_coefficients(&self) -> (Vec<BigInt>, BigInt) {
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
        }
        let ints = self
            .terms
            .iter()
            .map(|(_, c)| c.numer() * (&l / c.denom()))
            .collect();
        (ints, l)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.ring.num_vars(), "variable index out of range");
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            m.lower(var).map(|q| (q, c * BigRational::from_integer(e.into())))
        });
        // lowering one exponent preserves the relative order of terms
        Polynomial { ring: self.ring.clone(), terms: terms.collect() }
    }

    /// Whether `sum_i x_i * df/dx_i = deg(f) * f`.
    pub fn euler_relation_check(&self) -> Result<bool> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(self.to_string()));
        }
        let Some(d) = self.total_degree() else {
            return Ok(true);
        };
        let mut lhs = Self::zero(&self.ring);
        for i in 0..self.ring.num_vars() {
            lhs = &lhs + &(&Self::var(&self.ring, i) * &self.partial_derivative(i));
        }
        Ok(lhs == self.scale(&BigRational::from_integer(d.into())))
    }

    /// Replaces variable `i` by `images[i]` (all in the target ring).
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.num_vars());
        let target = images[0].ring.clone();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Same polynomial in a ring with the same variables but another order.
    pub fn reorder(&self, ring: &Arc<RingContext>) -> Polynomial {
        assert_eq!(ring.num_vars(), self.ring.num_vars());
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms
            .iter()
            .find(|(a, _)| a == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.ring.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Polynomial { ring: self.ring.clone(), terms: out }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                terms.push((a.mul(b), c * d));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    /// Renders in the input grammar, e.g. `3*x*y^2 + z^3` or `1/3*z^3 - t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Graded comparison of two polynomials: term by term under the ring order,
/// then coefficients. Used to sort generator lists canonically.
pub fn canonical_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    for (x, y) in a.terms.iter().zip(b.terms.iter()) {
        let c = a.ring.compare(&x.0, &y.0).then_with(|| x.1.cmp(&y.1));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.terms.len().cmp(&b.terms.len())
}
