//! Fraction-free Buchberger and Schreyer machinery over `Z`.
//!
//! Everything here works on [`Vector`]s: elements of a graded free module
//! `S^r` with integer coefficients, terms kept sorted descending under a
//! [`ModuleOrder`]. Ideals are the rank-one case. Vectors are only ever
//! meaningful up to a nonzero rational scalar, so every reduction clears
//! denominators implicitly and divides by the content as it goes.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, MonomialOrder};

/// One term `c * m * e_pos`.
pub(crate) type Term = (u32, Monomial, BigInt);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

/// Term order on a free module. Without a Schreyer frame this is
/// position-over-term (lower position index ranks higher) extending the
/// monomial order. With a frame, `m e_a` is compared through its image
/// `m * lead(g_a)` one level down, ties broken by index (lower index ranks
/// higher).
#[derive(Clone, Debug)]
pub(crate) struct ModuleOrder {
    pub mono: MonomialOrder,
    /// Degree of each basis vector, i.e. minus its twist.
    pub shifts: Vec<i64>,
    frame: Option<Arc<SchreyerFrame>>,
}

#[derive(Debug)]
struct SchreyerFrame {
    /// Product of leading monomials down to the base module.
    total: Vec<Monomial>,
    /// Positions at each level, base module first, the vector itself last.
    chain: Vec<Vec<u32>>,
}

impl ModuleOrder {
    pub fn pot(mono: MonomialOrder, shifts: Vec<i64>) -> Self {
        ModuleOrder { mono, shifts, frame: None }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn cmp(&self, p: u32, m: &Monomial, q: u32, n: &Monomial) -> Ordering {
        match &self.frame {
            None => q.cmp(&p).then_with(|| self.mono.compare(m, n)),
            Some(fr) => {
                let (cp, cq) = (&fr.chain[p as usize], &fr.chain[q as usize]);
                let base = cq[0].cmp(&cp[0]).then_with(|| {
                    let a = m.mul(&fr.total[p as usize]);
                    let b = n.mul(&fr.total[q as usize]);
                    self.mono.compare(&a, &b)
                });
                if base != Ordering::Equal {
                    return base;
                }
                for k in 1..cp.len() {
                    match cq[k].cmp(&cp[k]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }

    #[inline]
    pub fn term_cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(a.0, &a.1, b.0, &b.1)
    }

    #[inline]
    pub fn degree(&self, pos: u32, m: &Monomial) -> i64 {
        m.degree() as i64 + self.shifts[pos as usize]
    }

    /// Schreyer order on the free module whose basis maps onto elements
    /// with the given leading terms.
    pub fn induced(&self, leads: &[(u32, Monomial)]) -> ModuleOrder {
        let (total, chain) = leads
            .iter()
            .enumerate()
            .map(|(a, (p, m))| match &self.frame {
                None => (m.clone(), vec![*p, a as u32]),
                Some(fr) => {
                    let mut c = fr.chain[*p as usize].clone();
                    c.push(a as u32);
                    (m.mul(&fr.total[*p as usize]), c)
                }
            })
            .unzip();
        let shifts = leads.iter().map(|(p, m)| self.degree(*p, m)).collect();
        ModuleOrder {
            mono: self.mono.clone(),
            shifts,
            frame: Some(Arc::new(SchreyerFrame { total, chain })),
        }
    }
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn unit(pos: u32, num_vars: usize) -> Self {
        Vector { terms: vec![(pos, Monomial::one(num_vars), BigInt::one())] }
    }

    pub fn from_terms(mut terms: Vec<Term>, ord: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| ord.term_cmp(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.0 == t.0 && l.1 == t.1 => l.2 += t.2,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.2.is_zero());
        Vector { terms: out }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&t.2);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&mut self, c: &BigInt) {
        if !c.is_one() {
            for t in &mut self.terms {
                t.2 *= c;
            }
        }
    }

    pub fn div_exact(&mut self, c: &BigInt) {
        if !c.is_one() {
            for t in &mut self.terms {
                t.2 /= c;
            }
        }
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        let Some(lead) = self.terms.first() else { return };
        let mut g = self.content();
        if lead.2.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.2 /= &g;
            }
        }
    }

    pub fn max_degree(&self, ord: &ModuleOrder) -> Option<i64> {
        self.terms.iter().map(|t| ord.degree(t.0, &t.1)).max()
    }

    /// `a * self - b * q * other`.
    pub fn lincomb(
        &self,
        a: &BigInt,
        b: &BigInt,
        q: &Monomial,
        other: &Vector,
        ord: &ModuleOrder,
    ) -> Vector {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let x = &self.terms;
        let y: Vec<Term> = other
            .terms
            .iter()
            .map(|(p, m, c)| (*p, m.mul(q), -(c * b)))
            .collect();
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match ord.term_cmp(&x[i], &y[j]) {
                Ordering::Greater => {
                    out.push((x[i].0, x[i].1.clone(), &x[i].2 * a));
                    i += 1;
                }
                Ordering::Less => {
                    out.push(y[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &x[i].2 * a + &y[j].2;
                    if !c.is_zero() {
                        out.push((x[i].0, x[i].1.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(x[i..].iter().map(|(p, m, c)| (*p, m.clone(), c * a)));
        out.extend(y.into_iter().skip(j));
        Vector { terms: out }
    }
}

/// Index of reducers by leading position.
struct LeadIndex {
    by_pos: Vec<Vec<usize>>,
}

impl LeadIndex {
    fn new(rank: usize) -> Self {
        LeadIndex { by_pos: vec![Vec::new(); rank.max(1)] }
    }

    fn push(&mut self, pos: u32, idx: usize) {
        self.by_pos[pos as usize].push(idx);
    }

    fn find(&self, basis: &[Vector], pos: u32, m: &Monomial) -> Option<usize> {
        self.by_pos[pos as usize]
            .iter()
            .copied()
            .find(|&k| basis[k].terms[0].1.divides(m))
    }
}

/// Reduction of `p` modulo `basis`. With `full` set every term is reduced,
/// otherwise only the leading term. When `track` is given, the
/// representation `rep` is updated in lockstep: whenever `p` becomes
/// `a p - b q g_k`, `rep` becomes `a rep - b q reps[k]`.
struct Reducer<'a> {
    basis: &'a [Vector],
    index: &'a LeadIndex,
    ord: &'a ModuleOrder,
    track: Option<(&'a [Vector], &'a ModuleOrder)>,
}

impl Reducer<'_> {
    fn reduce(&self, mut p: Vector, mut rep: Vector, full: bool) -> (Vector, Vector) {
        let mut rem: Vec<Term> = Vec::new();
        let mut steps = 0usize;
        let mut start = 0usize;
        loop {
            let Some((pos, m, c)) = p.terms.get(start) else { break };
            match self.index.find(self.basis, *pos, m) {
                Some(k) => {
                    let g = &self.basis[k];
                    let (gp, gm, gc) = &g.terms[0];
                    debug_assert_eq!(gp, pos);
                    let q = m.checked_div(gm).expect("divisible");
                    let d = c.gcd(gc);
                    let a = gc / &d;
                    let b = c / &d;
                    if start > 0 {
                        rem.extend(p.terms.drain(..start));
                        start = 0;
                    }
                    p = p.lincomb(&a, &b, &q, g, self.ord);
                    for t in &mut rem {
                        t.2 *= &a;
                    }
                    if let Some((reps, rord)) = self.track {
                        rep = rep.lincomb(&a, &b, &q, &reps[k], rord);
                    }
                    steps += 1;
                    if steps % 4 == 0 {
                        normalize(&mut p, &mut rem, &mut rep);
                    }
                }
                None if full => {
                    // irreducible leading term moves to the remainder
                    start += 1;
                    if start > 64 {
                        rem.extend(p.terms.drain(..start));
                        start = 0;
                    }
                }
                None => break,
            }
        }
        if full {
            rem.extend(p.terms.drain(..));
            p = Vector { terms: rem };
        } else {
            debug_assert!(rem.is_empty());
        }
        let mut empty = Vec::new();
        normalize(&mut p, &mut empty, &mut rep);
        (p, rep)
    }
}

fn normalize(p: &mut Vector, rem: &mut [Term], rep: &mut Vector) {
    let mut g = p.content();
    for t in rem.iter() {
        if g.is_one() {
            break;
        }
        g = g.gcd(&t.2);
    }
    if !g.is_one() {
        g = g.gcd(&rep.content());
    }
    if !g.is_one() && !g.is_zero() {
        p.div_exact(&g);
        for t in rem.iter_mut() {
            t.2 /= &g;
        }
        rep.div_exact(&g);
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: u32,
    lcm: Monomial,
    degree: i64,
}

/// Output of [`buchberger`]. When tracking was requested, `reps[k]`
/// expresses `elems[k]` in terms of the input generators (as a vector of
/// `S^n`, `n` the number of generators, up to the fact that both sides are
/// only defined up to scalars: `elems[k] = sum reps[k]_j gens[j]` exactly).
#[derive(Clone, Debug)]
pub(crate) struct GbOutput {
    pub elems: Vec<Vector>,
    pub reps: Option<Vec<Vector>>,
}

pub(crate) fn rep_order(num_gens: usize) -> ModuleOrder {
    ModuleOrder::pot(MonomialOrder::GrevLex, vec![0; num_gens.max(1)])
}

/// Reduced Groebner basis of the submodule generated by `gens`, using the
/// normal selection strategy and the Gebauer-Moeller criteria. Output
/// elements are primitive with positive leading coefficient and sorted
/// descending by leading term.
pub(crate) fn buchberger(
    gens: &[Vector],
    ord: &ModuleOrder,
    num_vars: usize,
    track: bool,
) -> GbOutput {
    let rord = rep_order(gens.len());
    let is_ideal = ord.rank() == 1;

    let mut basis: Vec<Vector> = Vec::new();
    let mut reps: Vec<Vector> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut index = LeadIndex::new(ord.rank());
    let mut pairs: Vec<Pair> = Vec::new();

    let mut pending: Vec<(usize, i64)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| (k, g.max_degree(ord).unwrap()))
        .collect();
    // stable: by degree, then input position
    pending.sort_by_key(|&(k, d)| (d, k));
    let mut pending = pending.into_iter().peekable();

    loop {
        let next_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then_with(|| ord.cmp(a.pos, &a.lcm, b.pos, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, p)| (k, p.degree));
        let take_gen = match (pending.peek(), next_pair) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(&(_, gd)), Some((_, pd))) => gd <= pd,
        };

        let (cand, cand_rep) = if take_gen {
            let (k, _) = pending.next().unwrap();
            let r = if track { Vector::unit(k as u32, num_vars) } else { Vector::zero() };
            (gens[k].clone(), r)
        } else {
            let (k, _) = next_pair.unwrap();
            let pr = pairs.swap_remove(k);
            spair(&basis, &reps, pr.i, pr.j, &pr.lcm, ord, &rord, track)
        };

        let red = Reducer {
            basis: &basis,
            index: &index,
            ord,
            track: if track { Some((&reps, &rord)) } else { None },
        };
        let (mut h, mut hrep) = red.reduce(cand, cand_rep, true);
        if h.is_zero() {
            continue;
        }
        if h.terms[0].2.is_negative() {
            h.scale(&BigInt::from(-1));
            hrep.scale(&BigInt::from(-1));
        }
        let new = basis.len();
        update_pairs(&basis, &active, &mut pairs, &h, new, ord, is_ideal);
        let (hp, hm, _) = h.terms[0].clone();
        for k in 0..basis.len() {
            if active[k] && basis[k].terms[0].0 == hp && hm.divides(&basis[k].terms[0].1) {
                active[k] = false;
            }
        }
        index.push(hp, new);
        basis.push(h);
        reps.push(hrep);
        active.push(true);
    }

    interreduce(basis, reps, ord, &rord, track)
}

#[allow(clippy::too_many_arguments)]
fn spair(
    basis: &[Vector],
    reps: &[Vector],
    i: usize,
    j: usize,
    lcm: &Monomial,
    ord: &ModuleOrder,
    rord: &ModuleOrder,
    track: bool,
) -> (Vector, Vector) {
    let (gi, gj) = (&basis[i], &basis[j]);
    let (ci, cj) = (&gi.terms[0].2, &gj.terms[0].2);
    let d = ci.gcd(cj);
    let a = cj / &d;
    let b = ci / &d;
    let qi = lcm.checked_div(&gi.terms[0].1).unwrap();
    let qj = lcm.checked_div(&gj.terms[0].1).unwrap();
    let left = Vector::zero().lincomb(&BigInt::one(), &(-&a), &qi, gi, ord);
    let s = left.lincomb(&BigInt::one(), &b, &qj, gj, ord);
    let r = if track {
        let l = Vector::zero().lincomb(&BigInt::one(), &(-&a), &qi, &reps[i], rord);
        l.lincomb(&BigInt::one(), &b, &qj, &reps[j], rord)
    } else {
        Vector::zero()
    };
    (s, r)
}

fn update_pairs(
    basis: &[Vector],
    active: &[bool],
    pairs: &mut Vec<Pair>,
    h: &Vector,
    new: usize,
    ord: &ModuleOrder,
    is_ideal: bool,
) {
    let (hp, hm, _) = &h.terms[0];
    // old pairs made redundant by the new leading term
    pairs.retain(|pr| {
        if pr.pos != *hp || !hm.divides(&pr.lcm) {
            return true;
        }
        let li = basis[pr.i].terms[0].1.lcm(hm);
        let lj = basis[pr.j].terms[0].1.lcm(hm);
        li == pr.lcm || lj == pr.lcm
    });

    let mut cands: Vec<(Pair, bool)> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        if !active[k] || g.terms[0].0 != *hp {
            continue;
        }
        let gm = &g.terms[0].1;
        let lcm = gm.lcm(hm);
        let coprime = is_ideal && gm.is_coprime(hm);
        let degree = ord.degree(*hp, &lcm);
        cands.push((Pair { i: k, j: new, pos: *hp, lcm, degree }, coprime));
    }
    // chain criterion among the new pairs: drop (k, h) when some other
    // (l, h) has an lcm properly dividing it
    let keep: Vec<bool> = cands
        .iter()
        .map(|(p, _)| {
            !cands
                .iter()
                .any(|(q, _)| q.lcm != p.lcm && q.lcm.divides(&p.lcm))
        })
        .collect();
    let mut survivors: Vec<(Pair, bool)> = cands
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect();
    // among equal lcms keep one; when any of them is coprime drop them all
    survivors.sort_by(|a, b| ord.mono.compare(&a.0.lcm, &b.0.lcm).then(a.0.i.cmp(&b.0.i)));
    let mut k = 0;
    while k < survivors.len() {
        let mut e = k + 1;
        while e < survivors.len() && survivors[e].0.lcm == survivors[k].0.lcm {
            e += 1;
        }
        let any_coprime = survivors[k..e].iter().any(|(_, c)| *c);
        if !any_coprime {
            pairs.push(survivors[k].0.clone());
        }
        k = e;
    }
}

fn interreduce(
    basis: Vec<Vector>,
    reps: Vec<Vector>,
    ord: &ModuleOrder,
    rord: &ModuleOrder,
    track: bool,
) -> GbOutput {
    // minimal basis: leading terms pairwise non-divisible
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        let (pi, mi, _) = &basis[i].terms[0];
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let (pj, mj, _) = &basis[j].terms[0];
            if pi == pj && mj.divides(mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut elems: Vec<Vector> = Vec::new();
    let mut ereps: Vec<Vector> = Vec::new();
    for i in 0..n {
        if keep[i] {
            elems.push(basis[i].clone());
            ereps.push(reps[i].clone());
        }
    }
    // tail-reduce each element by the others
    let m = elems.len();
    let rank = ord.rank();
    let mut out = Vec::with_capacity(m);
    let mut out_reps = Vec::with_capacity(m);
    for i in 0..m {
        let others: Vec<Vector> = (0..m).filter(|&j| j != i).map(|j| elems[j].clone()).collect();
        let other_reps: Vec<Vector> =
            (0..m).filter(|&j| j != i).map(|j| ereps[j].clone()).collect();
        let mut index = LeadIndex::new(rank);
        for (k, o) in others.iter().enumerate() {
            index.push(o.terms[0].0, k);
        }
        let red = Reducer {
            basis: &others,
            index: &index,
            ord,
            track: if track { Some((&other_reps, rord)) } else { None },
        };
        let (mut h, mut hrep) = red.reduce(elems[i].clone(), ereps[i].clone(), true);
        if h.terms[0].2.is_negative() {
            h.scale(&BigInt::from(-1));
            hrep.scale(&BigInt::from(-1));
        }
        out.push(h);
        out_reps.push(hrep);
    }
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&a, &b| ord.term_cmp(&out[b].terms[0], &out[a].terms[0]));
    let elems = idx.iter().map(|&k| out[k].clone()).collect();
    let reps = track.then(|| idx.iter().map(|&k| out_reps[k].clone()).collect());
    GbOutput { elems, reps }
}

/// Full normal form of `p` modulo a Groebner basis `gb`.
pub(crate) fn normal_form(p: &Vector, gb: &[Vector], ord: &ModuleOrder) -> Vector {
    let mut index = LeadIndex::new(ord.rank());
    for (k, g) in gb.iter().enumerate() {
        index.push(g.terms[0].0, k);
    }
    let red = Reducer { basis: gb, index: &index, ord, track: None };
    red.reduce(p.clone(), Vector::zero(), true).0
}

/// Normal form together with quotients: returns `(r, q, c)` with
/// `c p - sum_k q_k gb_k = r` and `c` a nonzero integer.
pub(crate) fn reduce_with_quotients(
    p: &Vector,
    gb: &[Vector],
    ord: &ModuleOrder,
    num_vars: usize,
) -> (Vector, Vector, BigInt) {
    // Track an extra coordinate e_n standing for p, with g_k standing for
    // -e_k. At the end r = c p - sum rep_k g_k.
    let n = gb.len();
    let rord = rep_order(n + 1);
    let reps: Vec<Vector> = (0..n)
        .map(|k| Vector { terms: vec![(k as u32, Monomial::one(num_vars), BigInt::from(-1))] })
        .collect();
    let mut index = LeadIndex::new(ord.rank());
    for (k, g) in gb.iter().enumerate() {
        index.push(g.terms[0].0, k);
    }
    let red = Reducer { basis: gb, index: &index, ord, track: Some((&reps, &rord)) };
    let start = Vector::unit(n as u32, num_vars);
    let (r, rep) = red.reduce(p.clone(), start, true);
    let mut c = BigInt::zero();
    let mut q = Vec::new();
    for (pos, m, coef) in rep.terms {
        if pos as usize == n {
            debug_assert!(m.is_one());
            c = coef;
        } else {
            q.push((pos, m, coef));
        }
    }
    (r, Vector { terms: q }, c)
}

/// Schreyer syzygies of a Groebner basis `gb` (under `ord`). Returns the
/// syzygy vectors, which form a Groebner basis of the syzygy module under
/// the returned induced order, with leading terms `(lcm/lead_i) e_i`.
/// Only pairs whose leading quotient is a minimal generator of its
/// position's quotient ideal are kept; that subset still has the full
/// leading-term module.
pub(crate) fn schreyer_syzygies(
    gb: &[Vector],
    ord: &ModuleOrder,
    num_vars: usize,
) -> (Vec<Vector>, ModuleOrder) {
    let leads: Vec<(u32, Monomial)> = gb.iter().map(|g| (g.terms[0].0, g.terms[0].1.clone())).collect();
    let sord = ord.induced(&leads);
    let units: Vec<Vector> = (0..gb.len()).map(|k| Vector::unit(k as u32, num_vars)).collect();
    let mut index = LeadIndex::new(ord.rank());
    for (k, (p, _)) in leads.iter().enumerate() {
        index.push(*p, k);
    }
    let red = Reducer { basis: gb, index: &index, ord, track: Some((&units, &sord)) };

    let mut out = Vec::new();
    for i in 0..gb.len() {
        let (pi, mi) = &leads[i];
        let mut quots: Vec<(usize, Monomial)> = Vec::new();
        for j in i + 1..gb.len() {
            let (pj, mj) = &leads[j];
            if pi != pj {
                continue;
            }
            let q = mi.lcm(mj).checked_div(mi).unwrap();
            quots.push((j, q));
        }
        let minimal: Vec<(usize, Monomial)> = quots
            .iter()
            .enumerate()
            .filter(|(a, (_, q))| {
                !quots.iter().enumerate().any(|(b, (_, r))| {
                    r.divides(q) && (r != q || b < *a)
                })
            })
            .map(|(_, x)| x.clone())
            .collect();
        for (j, qi) in minimal {
            let lcm = mi.mul(&qi);
            let (s, start) = {
                let (gi, gj) = (&gb[i], &gb[j]);
                let (ci, cj) = (&gi.terms[0].2, &gj.terms[0].2);
                let d = ci.gcd(cj);
                let a = cj / &d;
                let b = ci / &d;
                let qj = lcm.checked_div(&gj.terms[0].1).unwrap();
                let s = Vector::zero()
                    .lincomb(&BigInt::one(), &(-&a), &qi, gi, ord)
                    .lincomb(&BigInt::one(), &b, &qj, gj, ord);
                let start = Vector::from_terms(
                    vec![(i as u32, qi.clone(), a), (j as u32, qj, -b)],
                    &sord,
                );
                (s, start)
            };
            let (r, mut syz) = red.reduce(s, start, false);
            debug_assert!(r.is_zero(), "S-vector of a Groebner basis must reduce to zero");
            syz.make_primitive();
            out.push(syz);
        }
    }
    (out, sord)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(terms: &[(i64, &[u16])]) -> Vector {
        let ord = ModuleOrder::pot(MonomialOrder::GrevLex, vec![0]);
        Vector::from_terms(
            terms
                .iter()
                .map(|(c, e)| (0, Monomial::from_exponents(e), BigInt::from(*c)))
                .collect(),
            &ord,
        )
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let ord = ModuleOrder::pot(MonomialOrder::GrevLex, vec![0]);
        let g = buchberger(&[v(&[(2, &[1, 0])])], &ord, 2, false);
        assert_eq!(g.elems, vec![v(&[(1, &[1, 0])])]);
    }

    #[test]
    fn tracked_representations_are_exact() {
        // x^2 - y, x y - 1 in Q[x, y]
        let ord = ModuleOrder::pot(MonomialOrder::GrevLex, vec![0]);
        let gens = vec![v(&[(1, &[2, 0]), (-1, &[0, 1])]), v(&[(1, &[1, 1]), (-1, &[0, 0])])];
        let out = buchberger(&gens, &ord, 2, true);
        let reps = out.reps.unwrap();
        for (e, r) in out.elems.iter().zip(&reps) {
            let mut acc = Vector::zero();
            for (pos, m, c) in &r.terms {
                acc = acc.lincomb(&BigInt::one(), &(-c), m, &gens[*pos as usize], &ord);
            }
            // acc is a nonzero scalar multiple of e
            let mut a = acc.clone();
            a.make_primitive();
            let mut b = e.clone();
            b.make_primitive();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn quotients_satisfy_division_identity() {
        let ord = ModuleOrder::pot(MonomialOrder::GrevLex, vec![0]);
        let gb = buchberger(&[v(&[(2, &[1, 1]), (3, &[0, 2])]), v(&[(1, &[2, 0])])], &ord, 2, false).elems;
        let p = v(&[(5, &[3, 1]), (1, &[1, 3]), (7, &[0, 4])]);
        let (r, q, c) = reduce_with_quotients(&p, &gb, &ord, 2);
        assert!(!c.is_zero());
        let mut lhs = Vector::zero().lincomb(&BigInt::one(), &(-&c), &Monomial::one(2), &p, &ord);
        for (k, m, a) in &q.terms {
            lhs = lhs.lincomb(&BigInt::one(), a, m, &gb[*k as usize], &ord);
        }
        assert_eq!(lhs, r);
    }

    #[test]
    fn schreyer_syzygies_of_three_monomials() {
        // (xy, xz, yz): two minimal relations survive
        let ord = ModuleOrder::pot(MonomialOrder::GrevLex, vec![0]);
        let gens = vec![v(&[(1, &[1, 1, 0])]), v(&[(1, &[1, 0, 1])]), v(&[(1, &[0, 1, 1])])];
        let gb = buchberger(&gens, &ord, 3, false).elems;
        let (syz, sord) = schreyer_syzygies(&gb, &ord, 3);
        assert_eq!(syz.len(), 2);
        for s in &syz {
            assert_eq!(s.max_degree(&sord), Some(3));
        }
    }
}
