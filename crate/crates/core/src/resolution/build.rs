use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{minimize, FreeResolution, GradedFreeModule, GradedMap};
use crate::error::{Error, Result};
use crate::groebner::engine::{self, ModuleOrder, Term, Vector};
use crate::groebner::GradedIdeal;
use crate::poly::{Monomial, MonomialOrder, Polynomial, RingContext};

/// Column of polynomials to an integer vector; returns the vector and the
/// integer it was scaled by.
pub(super) fn column_to_vector(col: &[Polynomial], ord: &ModuleOrder) -> (Vector, BigInt) {
    let mut l = BigInt::one();
    for p in col {
        for (_, c) in p.terms() {
            l = l.lcm(c.denom());
        }
    }
    let terms: Vec<Term> = col
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            let l = &l;
            p.terms()
                .iter()
                .map(move |(m, c)| (i as u32, m.clone(), (c * BigRational::from_integer(l.clone())).to_integer()))
        })
        .collect();
    (Vector::from_terms(terms, ord), l)
}

fn vector_to_column(v: &Vector, rank: usize, ring: &Arc<RingContext>) -> Vec<Polynomial> {
    let mut parts: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); rank];
    for (p, m, c) in &v.terms {
        parts[*p as usize].push((m.clone(), BigRational::from_integer(c.clone())));
    }
    parts.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
}

fn columns_to_map(
    ring: &Arc<RingContext>,
    cols: &[Vector],
    source: GradedFreeModule,
    target: GradedFreeModule,
) -> GradedMap {
    let rank = target.rank();
    let cols: Vec<Vec<Polynomial>> = cols.iter().map(|v| vector_to_column(v, rank, ring)).collect();
    let matrix = (0..rank)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    GradedMap::new_unchecked(ring, source, target, matrix)
}

/// Leading position ascending, then leading monomial descending in lex.
fn schreyer_sort(v: &mut [Vector]) {
    v.sort_by(|a, b| {
        let (pa, ma, _) = &a.terms[0];
        let (pb, mb, _) = &b.terms[0];
        pa.cmp(pb).then_with(|| MonomialOrder::Lex.compare(mb, ma))
    });
}

/// Schreyer resolution of `ideal`, not minimized. Fails if more than
/// `num_vars` syzygy steps would be needed, which the sorted frame rules
/// out.
pub fn free_resolution_nonminimal(ideal: &GradedIdeal) -> Result<FreeResolution> {
    let ring = ideal.ring();
    let n = ring.num_vars();
    if ideal.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let ord0 = ModuleOrder::pot(MonomialOrder::GrevLex, vec![0]);
    let gens: Vec<Vector> = ideal
        .generators()
        .iter()
        .map(|p| crate::groebner::to_vector(p, 0, &ord0))
        .collect();
    let mut level = engine::buchberger(&gens, &ord0, n, false).elems;
    schreyer_sort(&mut level);

    let augmentation: Vec<Polynomial> = level
        .iter()
        .map(|v| crate::groebner::from_vector(v, ring))
        .collect();
    let mut prev = GradedFreeModule::new(
        level.iter().map(|v| -v.max_degree(&ord0).unwrap()).collect(),
    );
    let mut ord = ord0;
    let mut maps = Vec::new();
    loop {
        let (mut syz, sord) = engine::schreyer_syzygies(&level, &ord, n);
        if syz.is_empty() {
            break;
        }
        if maps.len() == n {
            return Err(Error::ResolutionTooLong(maps.len() + 1));
        }
        schreyer_sort(&mut syz);
        let source = GradedFreeModule::new(
            syz.iter().map(|v| -v.max_degree(&sord).unwrap()).collect(),
        );
        maps.push(columns_to_map(ring, &syz, source.clone(), prev));
        prev = source;
        level = syz;
        ord = sord;
    }
    FreeResolution::new(ring, augmentation, maps)
}

/// Minimal graded free resolution of a nonzero homogeneous ideal: a
/// Schreyer resolution with the unit entries cancelled, twists of each
/// module sorted descending.
pub fn free_resolution(ideal: &GradedIdeal) -> Result<FreeResolution> {
    let r = free_resolution_nonminimal(ideal)?;
    Ok(minimize(&r))
}

/// Kernel of a graded map, as a map from a free module onto a minimal
/// generating set of the kernel.
pub fn syzygies(map: &GradedMap) -> Result<GradedMap> {
    let ring = map.ring();
    let n = ring.num_vars();
    let tshifts: Vec<i64> = map.target().twists().iter().map(|a| -a).collect();
    let sshifts: Vec<i64> = map.source().twists().iter().map(|a| -a).collect();
    let tord = ModuleOrder::pot(MonomialOrder::GrevLex, if tshifts.is_empty() { vec![0] } else { tshifts });
    let sord = ModuleOrder::pot(MonomialOrder::GrevLex, sshifts.clone());
    let m = map.source().rank();

    let mut scales = Vec::with_capacity(m);
    let mut cols = Vec::with_capacity(m);
    for j in 0..m {
        let (v, l) = column_to_vector(&map.column(j), &tord);
        cols.push(v);
        scales.push(l);
    }

    let gb = engine::buchberger(&cols, &tord, n, true);
    let reps = gb.reps.expect("tracked");
    let rord = engine::rep_order(m);
    let mut candidates: Vec<Vector> = Vec::new();

    // zero columns are kernel elements outright
    for (j, c) in cols.iter().enumerate() {
        if c.is_zero() {
            candidates.push(Vector::unit(j as u32, n));
        }
    }
    // lifted Schreyer syzygies of the basis
    let (syz, _) = engine::schreyer_syzygies(&gb.elems, &tord, n);
    for s in &syz {
        let mut acc = Vector::zero();
        for (a, mono, c) in &s.terms {
            acc = acc.lincomb(&BigInt::one(), &-c, mono, &reps[*a as usize], &rord);
        }
        if !acc.is_zero() {
            candidates.push(acc);
        }
    }
    // each column against the basis: c e_j - sum q_a T_a
    for (j, col) in cols.iter().enumerate() {
        if col.is_zero() {
            continue;
        }
        let (r, q, c) = engine::reduce_with_quotients(col, &gb.elems, &tord, n);
        debug_assert!(r.is_zero());
        let mut acc = Vector::from_terms(vec![(j as u32, Monomial::one(n), c)], &rord);
        for (a, mono, qc) in &q.terms {
            acc = acc.lincomb(&BigInt::one(), qc, mono, &reps[*a as usize], &rord);
        }
        if !acc.is_zero() {
            candidates.push(acc);
        }
    }

    // back to the original (unscaled) columns and the graded order
    let candidates: Vec<Vector> = candidates
        .into_iter()
        .map(|v| {
            let terms = v
                .terms
                .into_iter()
                .map(|(p, mono, c)| (p, mono, c * &scales[p as usize]))
                .collect();
            let mut v = Vector::from_terms(terms, &sord);
            v.make_primitive();
            v
        })
        .filter(|v| !v.is_zero())
        .collect();

    let kept = minimal_subset(candidates, &sord, n);
    let source = GradedFreeModule::new(kept.iter().map(|v| -v.max_degree(&sord).unwrap()).collect());
    Ok(columns_to_map(ring, &kept, source, map.source().clone()))
}

/// Greedy minimal generating subset, lowest degree first.
fn minimal_subset(mut cands: Vec<Vector>, ord: &ModuleOrder, n: usize) -> Vec<Vector> {
    cands.sort_by_key(|v| v.max_degree(ord).unwrap());
    let mut kept: Vec<Vector> = Vec::new();
    let mut gb: Vec<Vector> = Vec::new();
    for c in cands {
        if !gb.is_empty() && engine::normal_form(&c, &gb, ord).is_zero() {
            continue;
        }
        kept.push(c);
        gb = engine::buchberger(&kept, ord, n, false).elems;
    }
    kept
}

/// Syzygies of a list of homogeneous polynomials, i.e. the kernel of
/// `⊕ S(-deg f_j) → S`.
pub fn syzygies_of(polys: &[Polynomial]) -> Result<GradedMap> {
    let ring = polys.first().ok_or(Error::ZeroGenerator)?.ring().clone();
    let mut twists = Vec::with_capacity(polys.len());
    for p in polys {
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous(p.to_string()));
        }
        twists.push(-(p.total_degree().ok_or(Error::ZeroGenerator)? as i64));
    }
    let map = GradedMap::new(
        &ring,
        GradedFreeModule::new(twists),
        GradedFreeModule::new(vec![0]),
        vec![polys.to_vec()],
    )?;
    syzygies(&map)
}
