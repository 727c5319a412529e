use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial. Rings used here have at most a handful of
/// variables, so the exponents live inline.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u16; 6]>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, num_vars))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(num_vars: usize, index: usize, power: u16) -> Self {
        let mut m = Self::one(num_vars);
        m.0[index] = power;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a - b)
                .collect(),
        ))
    }

    /// Exponent vector with `var` lowered by one; `None` when absent.
    pub fn lower(&self, var: usize) -> Option<Monomial> {
        if self.0[var] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[var] -= 1;
        Some(m)
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.0[var]
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A multiplicative total order on monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, with variable 0 the largest.
    GrevLex,
    /// Pure lexicographic, with variable 0 the largest.
    Lex,
    /// Block order: monomials are first compared by grevlex restricted to
    /// the flagged variables, then by grevlex on the rest. Any polynomial
    /// whose leading term is free of the flagged variables lies entirely in
    /// the subring of the others.
    Elimination(Vec<bool>),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(a.exponents(), b.exponents(), |_| true),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Elimination(mask) => {
                grevlex(a.exponents(), b.exponents(), |i| mask[i]).then_with(|| {
                    grevlex(a.exponents(), b.exponents(), |i| !mask[i])
                })
            }
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}

fn grevlex(a: &[u16], b: &[u16], include: impl Fn(usize) -> bool) -> Ordering {
    let mut da = 0u32;
    let mut db = 0u32;
    for i in 0..a.len() {
        if include(i) {
            da += a[i] as u32;
            db += b[i] as u32;
        }
    }
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if include(i) && a[i] != b[i] {
            // smaller power of the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// All monomials of total degree `d` in `n` variables, sorted descending
/// under `order`. Empty for negative `d`.
pub fn monomials_of_degree(n: usize, d: i64, order: &MonomialOrder) -> Vec<Monomial> {
    if d < 0 || n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    fill(&mut exps, 0, d as u16, &mut out);
    out.sort_by(|a, b| order.compare(b, a));
    out
}

fn fill(exps: &mut [u16], var: usize, remaining: u16, out: &mut Vec<Monomial>) {
    if var + 1 == exps.len() {
        exps[var] = remaining;
        out.push(Monomial::from_exponents(exps));
        return;
    }
    for e in (0..=remaining).rev() {
        exps[var] = e;
        fill(exps, var + 1, remaining - e, out);
    }
    exps[var] = 0;
}

/// `C(d + n - 1, n - 1)`: the number of monomials of degree `d` in `n`
/// variables, zero for negative `d`.
pub fn count_monomials(n: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GrevLex;
        // x y^2 > y^3 > y z^2 > t^3 in degree three
        assert_eq!(o.compare(&m(&[1, 2, 0, 0]), &m(&[0, 3, 0, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 3, 0, 0]), &m(&[0, 1, 2, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 1, 2, 0]), &m(&[0, 0, 0, 3])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 2, 0, 0]), &m(&[0, 0, 3, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 0, 1]), &m(&[1, 0, 0, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[0, 0, 0, 2]), &m(&[1, 0, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_ranks_flagged_block_first() {
        let o = MonomialOrder::Elimination(vec![true, false, false]);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn degree_piece_sizes() {
        let o = MonomialOrder::GrevLex;
        assert_eq!(monomials_of_degree(4, 4, &o).len(), 35);
        assert_eq!(monomials_of_degree(4, 0, &o), vec![Monomial::one(4)]);
        assert_eq!(monomials_of_degree(4, 3, &o).len(), 20);
        assert!(monomials_of_degree(4, -1, &o).is_empty());
        for d in 0..12 {
            assert_eq!(monomials_of_degree(4, d, &o).len() as u64, count_monomials(4, d));
        }
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[0, 1, 3]);
        assert_eq!(a.lcm(&b), m(&[1, 2, 3]));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.lcm(&b).checked_div(&a), Some(m(&[0, 0, 3])));
        assert_eq!(a.checked_div(&b), None);
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
    }
}
