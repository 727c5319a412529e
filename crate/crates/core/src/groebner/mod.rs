//! Groebner bases of homogeneous ideals and the ideal operations built on
//! them: normal forms, elimination, intersection, quotients, saturation and
//! Hilbert functions.

pub(crate) mod engine;
mod hilbert;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{canonical_cmp, Monomial, MonomialOrder, Polynomial, RingContext};
use engine::{ModuleOrder, Vector};

pub use hilbert::{graded_piece_dimension, hilbert_data, HilbertData, HilbertPolynomial};

/// Homogeneous ideal given by generators. Generators are stored primitive
/// (coprime integer coefficients, positive leading coefficient), sorted
/// descending and without duplicates; the zero ideal has no generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedIdeal {
    ring: Arc<RingContext>,
    generators: Vec<Polynomial>,
}

impl GradedIdeal {
    pub fn new(ring: &Arc<RingContext>, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ring() != ring {
                return Err(Error::InvalidRing("generator from a different ring".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
            if !g.is_zero() {
                gens.push(g.primitive());
            }
        }
        gens.sort_by(|a, b| canonical_cmp(b, a));
        gens.dedup();
        Ok(GradedIdeal { ring: ring.clone(), generators: gens })
    }

    pub fn parse(ring: &Arc<RingContext>, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| crate::poly::parse_polynomial(s, ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn unit(ring: &Arc<RingContext>) -> Self {
        GradedIdeal { ring: ring.clone(), generators: vec![Polynomial::one(ring)] }
    }

    pub fn zero(ring: &Arc<RingContext>) -> Self {
        GradedIdeal { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner_basis(&self) -> GroebnerBasis {
        buchberger(self)
    }

    /// Whether both ideals have the same reduced Groebner basis.
    pub fn ideal_eq(&self, other: &GradedIdeal) -> bool {
        self.groebner_basis().elements == other.groebner_basis().elements
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &GradedIdeal) -> bool {
        let gb = self.groebner_basis();
        other.generators.iter().all(|g| gb.contains(g))
    }

    /// Generator strings in the input grammar.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }

    /// Largest and smallest generator degrees, `None` for the zero ideal.
    pub fn degree_range(&self) -> Option<(u32, u32)> {
        let degs: Vec<u32> = self.generators.iter().filter_map(|g| g.total_degree()).collect();
        Some((*degs.iter().min()?, *degs.iter().max()?))
    }
}

impl fmt::Display for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

impl fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedIdeal{self}")
    }
}

impl Serialize for GradedIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.generator_strings().serialize(s)
    }
}

/// Groebner basis under a fixed monomial order. When `reduced` is set the
/// elements are monic, pairwise non-divisible in leading terms, tail-reduced,
/// and sorted descending by leading term, which makes the basis a canonical
/// invariant of (ideal, order).
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<RingContext>,
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    fn module_order(&self) -> ModuleOrder {
        ModuleOrder::pot(self.order.clone(), vec![0])
    }

    /// The unique remainder of `p` modulo this basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let ring = self.working_ring();
        let p = p.reorder(&ring);
        if self.elements.is_empty() || p.is_zero() {
            return p.reorder(&self.ring);
        }
        let ord = self.module_order();
        let gb: Vec<Vector> = self.elements.iter().map(|g| to_vector(g, 0, &ord)).collect();
        let (pv, scale) = to_vector_with_scale(&p, 0, &ord);
        let (r, _, c) = engine::reduce_with_quotients(&pv, &gb, &ord, ring.num_vars());
        // c * (scale * p) - sum q g = r, so NF(p) = r / (c * scale)
        let denom = BigRational::from_integer(c) * scale;
        from_vector(&r, &ring).scale(&denom.recip()).reorder(&self.ring)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Ring carrying this basis's order (it may differ from the ring the
    /// ideal was defined in, e.g. for elimination).
    fn working_ring(&self) -> Arc<RingContext> {
        if self.ring.order() == &self.order {
            self.ring.clone()
        } else {
            self.ring.with_order(self.order.clone()).expect("same variables")
        }
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els: Vec<String> = self.elements.iter().map(|g| g.to_string()).collect();
        write!(f, "GroebnerBasis[{}]", els.join(", "))
    }
}

/// Clears denominators: returns the integer vector and the scalar `s` with
/// `vector = s * p`.
fn to_vector_with_scale(p: &Polynomial, pos: u32, ord: &ModuleOrder) -> (Vector, BigRational) {
    let (ints, l) = p.integer_coefficients();
    let terms = p
        .terms()
        .iter()
        .zip(ints)
        .map(|((m, _), c)| (pos, m.clone(), c))
        .collect();
    (Vector::from_terms(terms, ord), BigRational::from_integer(l))
}

pub(crate) fn to_vector(p: &Polynomial, pos: u32, ord: &ModuleOrder) -> Vector {
    to_vector_with_scale(p, pos, ord).0
}

/// Rank-one vector (or one component of a vector) back to a polynomial.
pub(crate) fn from_vector(v: &Vector, ring: &Arc<RingContext>) -> Polynomial {
    Polynomial::from_terms(
        ring,
        v.terms.iter().map(|(_, m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
    )
}

/// Reduced Groebner basis of arbitrary (not necessarily homogeneous)
/// polynomials under `order`.
pub fn groebner_basis_of(
    ring: &Arc<RingContext>,
    polys: &[Polynomial],
    order: &MonomialOrder,
) -> GroebnerBasis {
    let wring = if ring.order() == order {
        ring.clone()
    } else {
        ring.with_order(order.clone()).expect("same variables")
    };
    let ord = ModuleOrder::pot(order.clone(), vec![0]);
    let gens: Vec<Vector> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| to_vector(&p.reorder(&wring), 0, &ord))
        .collect();
    let out = engine::buchberger(&gens, &ord, ring.num_vars(), false);
    let elements = out
        .elems
        .iter()
        .map(|v| from_vector(v, &wring).monic().reorder(ring))
        .collect();
    GroebnerBasis { ring: ring.clone(), elements, order: order.clone(), reduced: true }
}

/// Reduced Groebner basis of a graded ideal under its ring's order.
pub fn buchberger(ideal: &GradedIdeal) -> GroebnerBasis {
    groebner_basis_of(&ideal.ring, &ideal.generators, ideal.ring.order())
}

/// Graded ideal generated by the elements of a reduced basis.
fn ideal_from_basis(gb: &GroebnerBasis) -> GradedIdeal {
    GradedIdeal::new(&gb.ring, gb.elements.to_vec()).expect("basis of a homogeneous ideal")
}

/// `polys` intersected with the subring on the variables flagged in `keep`,
/// computed with a block order ranking the other variables first.
pub fn eliminate(ring: &Arc<RingContext>, polys: &[Polynomial], keep: &[usize]) -> Vec<Polynomial> {
    let n = ring.num_vars();
    let mask: Vec<bool> = (0..n).map(|i| !keep.contains(&i)).collect();
    let gb = groebner_basis_of(ring, polys, &MonomialOrder::Elimination(mask.clone()));
    let mut out: Vec<Polynomial> = gb
        .elements
        .into_iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(m, _)| m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || !mask[i]))
        })
        .collect();
    out.sort_by(|a, b| canonical_cmp(b, a));
    out
}

/// Elimination ideal of a graded ideal, as a graded ideal of the same ring.
pub fn elimination_ideal(ideal: &GradedIdeal, keep: &[usize]) -> GradedIdeal {
    let polys = eliminate(&ideal.ring, &ideal.generators, keep);
    GradedIdeal::new(&ideal.ring, polys).expect("elimination preserves homogeneity")
}

/// Ring with one extra variable placed first, flagged for elimination.
fn aux_ring(ring: &Arc<RingContext>) -> Arc<RingContext> {
    let mut names = vec!["aux_".to_string()];
    let mut k = 0;
    while ring.variable_names().contains(&names[0]) {
        k += 1;
        names[0] = format!("aux_{k}");
    }
    names.extend(ring.variable_names().iter().cloned());
    let mut mask = vec![false; names.len()];
    mask[0] = true;
    RingContext::new(&names, MonomialOrder::Elimination(mask)).expect("valid aux ring")
}

/// Embeds `p` into `aux_ring(ring)`.
fn lift_to_aux(p: &Polynomial, aux: &Arc<RingContext>) -> Polynomial {
    Polynomial::from_terms(
        aux,
        p.terms().iter().map(|(m, c)| {
            let mut e = vec![0u16];
            e.extend_from_slice(m.exponents());
            (Monomial::from_exponents(&e), c.clone())
        }),
    )
}

fn drop_aux(p: &Polynomial, ring: &Arc<RingContext>) -> Polynomial {
    Polynomial::from_terms(
        ring,
        p.terms().iter().map(|(m, c)| {
            debug_assert_eq!(m.exponent(0), 0);
            (Monomial::from_exponents(&m.exponents()[1..]), c.clone())
        }),
    )
}

/// `I ∩ J`, as the elimination of `u` from `u I + (1 - u) J`.
pub fn intersection(a: &GradedIdeal, b: &GradedIdeal) -> GradedIdeal {
    let ring = &a.ring;
    if a.is_zero() || b.is_zero() {
        return GradedIdeal::zero(ring);
    }
    let aux = aux_ring(ring);
    let u = Polynomial::var(&aux, 0);
    let one_minus_u = &Polynomial::one(&aux) - &u;
    let mut polys: Vec<Polynomial> =
        a.generators.iter().map(|g| &u * &lift_to_aux(g, &aux)).collect();
    polys.extend(b.generators.iter().map(|g| &one_minus_u * &lift_to_aux(g, &aux)));
    let keep: Vec<usize> = (1..aux.num_vars()).collect();
    let elim = eliminate(&aux, &polys, &keep);
    let gens = elim.iter().map(|p| drop_aux(p, ring)).collect();
    GradedIdeal::new(ring, gens).expect("intersection of homogeneous ideals")
}

/// Exact division of `p` by `g` (in the ring order); `None` if `g` does
/// not divide `p`.
pub fn divide_exact(p: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let ring = p.ring();
    let lm = g.leading_monomial()?.clone();
    let lc = g.leading_coefficient()?.clone();
    let mut rest = p.clone();
    let mut quot = Polynomial::zero(ring);
    while let Some(m) = rest.leading_monomial().cloned() {
        let q = m.checked_div(&lm)?;
        let c = rest.leading_coefficient().unwrap() / &lc;
        let t = Polynomial::term(ring, q, c);
        rest = &rest - &(&t * g);
        quot = &quot + &t;
    }
    Some(quot)
}

/// `(I : g) = { p : p g ∈ I }`, via `(I ∩ (g)) / g`.
pub fn ideal_quotient(ideal: &GradedIdeal, g: &Polynomial) -> Result<GradedIdeal> {
    if g.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    if !g.is_homogeneous() {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    let ring = &ideal.ring;
    let principal = GradedIdeal::new(ring, vec![g.clone()])?;
    let meet = intersection(ideal, &principal);
    let gens = meet
        .generators
        .iter()
        .map(|h| divide_exact(h, g).ok_or_else(|| Error::Internal(format!("{g} does not divide {h}"))))
        .collect::<Result<Vec<_>>>()?;
    let q = GradedIdeal::new(ring, gens)?;
    Ok(ideal_from_basis(&q.groebner_basis()))
}

/// `p` with variables `a` and `b` exchanged.
fn swap_vars(p: &Polynomial, a: usize, b: usize) -> Polynomial {
    Polynomial::from_terms(
        p.ring(),
        p.terms().iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.swap(a, b);
            (Monomial::from_exponents(&e), c.clone())
        }),
    )
}

/// `(I : x_v^∞)` by Bayer's method: with `x_v` moved to the last position,
/// dividing a grevlex basis of `I` by the largest powers of `x_v` gives a
/// basis of the saturation.
pub fn saturation_by_variable(ideal: &GradedIdeal, v: usize) -> GradedIdeal {
    let ring = &ideal.ring;
    let last = ring.num_vars() - 1;
    let swapped: Vec<Polynomial> = ideal.generators.iter().map(|g| swap_vars(g, v, last)).collect();
    let gb = groebner_basis_of(ring, &swapped, &MonomialOrder::GrevLex);
    let gens = gb
        .elements
        .iter()
        .map(|g| {
            let k = g.terms().iter().map(|(m, _)| m.exponent(last)).min().unwrap_or(0);
            let h = g.div_monomial(&Monomial::var(ring.num_vars(), last, k)).expect("divisible");
            swap_vars(&h, v, last)
        })
        .collect();
    let q = GradedIdeal::new(ring, gens).expect("homogeneous");
    ideal_from_basis(&q.groebner_basis())
}

/// `(I : g^∞)`, the limit of the increasing chain `I ⊆ (I : g) ⊆ (I : g^2) ...`.
/// A single variable goes through [`saturation_by_variable`].
pub fn saturation_by(ideal: &GradedIdeal, g: &Polynomial) -> Result<GradedIdeal> {
    if g.num_terms() == 1 && g.total_degree() == Some(1) {
        let v = (0..ideal.ring.num_vars())
            .find(|&i| g.leading_monomial().unwrap().exponent(i) == 1)
            .unwrap();
        return Ok(saturation_by_variable(ideal, v));
    }
    saturation_by_quotients(ideal, g)
}

/// The quotient chain itself, with no shortcut.
pub fn saturation_by_quotients(ideal: &GradedIdeal, g: &Polynomial) -> Result<GradedIdeal> {
    let mut current = ideal_from_basis(&ideal.groebner_basis());
    loop {
        let next = ideal_quotient(&current, g)?;
        if next.generators == current.generators {
            return Ok(current);
        }
        current = next;
    }
}

/// Saturation with respect to the irrelevant ideal: the intersection over
/// all variables `x_i` of `(I : x_i^∞)`, canonicalized by its reduced basis.
pub fn saturate_irrelevant(ideal: &GradedIdeal) -> Result<GradedIdeal> {
    let ring = &ideal.ring;
    if ideal.is_zero() {
        return Ok(ideal.clone());
    }
    if hilbert_data(ideal, None).is_empty() {
        return Ok(GradedIdeal::unit(ring));
    }
    let mut acc: Option<GradedIdeal> = None;
    for i in 0..ring.num_vars() {
        let s = saturation_by_variable(ideal, i);
        acc = Some(match acc {
            None => s,
            Some(a) if a.contains_ideal(&s) => s,
            Some(a) if s.contains_ideal(&a) => a,
            Some(a) => intersection(&a, &s),
        });
    }
    let sat = acc.expect("at least one variable");
    Ok(ideal_from_basis(&sat.groebner_basis()))
}

/// Minimal homogeneous generating set, chosen greedily in increasing degree
/// among the given generators.
pub fn minimal_generators(ideal: &GradedIdeal) -> GradedIdeal {
    let ring = &ideal.ring;
    let mut gens = ideal.generators.clone();
    gens.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| canonical_cmp(b, a)));
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in gens {
        let gb = groebner_basis_of(ring, &kept, ring.order());
        if kept.is_empty() || !gb.contains(&g) {
            kept.push(g);
        }
    }
    GradedIdeal::new(ring, kept).expect("subset of homogeneous generators")
}

/// Distinct leading monomials of a basis as a sorted set (for tests and
/// combinatorics).
pub fn leading_monomial_set(gb: &GroebnerBasis) -> BTreeSet<Vec<u16>> {
    gb.elements
        .iter()
        .map(|g| g.leading_monomial().unwrap().exponents().to_vec())
        .collect()
}
