//! Graded free modules, homogeneous maps between them, and minimal graded
//! free resolutions of homogeneous ideals.

mod build;
mod exactness;
mod minimize;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::engine::{self, ModuleOrder, Vector};
use crate::linalg::Echelon;
use crate::poly::{count_monomials, monomials_of_degree, Monomial, MonomialOrder, Polynomial, RingContext};

pub use build::{free_resolution, free_resolution_nonminimal, syzygies, syzygies_of};
pub use exactness::{default_probe, verify_exactness, ExactnessCertificate, RankEntry};
pub use minimize::minimize;

/// `⊕ S(a_i)`. Twists are kept in the order of the basis; resolutions
/// produced here list them descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Dimension of the degree-`d` piece in `n` variables.
    pub fn dim(&self, n: usize, d: i64) -> u64 {
        self.twists.iter().map(|a| count_monomials(n, d + a)).sum()
    }

    /// The dual module `⊕ S(-a_i)`.
    pub fn dual(&self) -> Self {
        GradedFreeModule { twists: self.twists.iter().map(|a| -a).collect() }
    }

    /// Basis of the degree-`d` piece: (summand, monomial) pairs.
    fn degree_basis(&self, n: usize, d: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (j, a) in self.twists.iter().enumerate() {
            for m in monomials_of_degree(n, d + a, &MonomialOrder::Lex) {
                out.push((j, m));
            }
        }
        out
    }
}

impl fmt::Display for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return f.write_str("0");
        }
        let mut groups: Vec<(i64, usize)> = Vec::new();
        for &a in &self.twists {
            match groups.last_mut() {
                Some((b, k)) if *b == a => *k += 1,
                _ => groups.push((a, 1)),
            }
        }
        let parts: Vec<String> = groups
            .iter()
            .map(|(a, k)| if *k == 1 { format!("S({a})") } else { format!("S({a})^{k}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Homogeneous map `source → target` of degree zero, stored as a
/// `target.rank() × source.rank()` matrix acting on column vectors. Entry
/// `(i, j)` is zero or homogeneous of degree `target.twist(i) - source.twist(j)`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    ring: Arc<RingContext>,
    source: GradedFreeModule,
    target: GradedFreeModule,
    matrix: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    pub fn new(
        ring: &Arc<RingContext>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        matrix: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::DegreeMismatch(format!(
                "matrix shape does not match {} x {}",
                target.rank(),
                source.rank()
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let want = target.twists[i] - source.twists[j];
                let ok = e.is_homogeneous() && e.total_degree().map(|d| d as i64) == Some(want);
                if !ok {
                    return Err(Error::DegreeMismatch(format!(
                        "entry ({i}, {j}) = {e} should be homogeneous of degree {want}"
                    )));
                }
            }
        }
        Ok(GradedMap { ring: ring.clone(), source, target, matrix })
    }

    pub(crate) fn new_unchecked(
        ring: &Arc<RingContext>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        matrix: Vec<Vec<Polynomial>>,
    ) -> Self {
        debug_assert!(Self::new(ring, source.clone(), target.clone(), matrix.clone()).is_ok());
        GradedMap { ring: ring.clone(), source, target, matrix }
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<Polynomial>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.matrix[i][j]
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.matrix.iter().map(|r| r[j].clone()).collect()
    }

    /// Hilbert function of the image submodule, from the leading terms of
    /// its Groebner basis in the target.
    pub fn image_hilbert(&self) -> ImageHilbert {
        let n = self.ring.num_vars();
        let shifts: Vec<i64> = self.target.twists.iter().map(|a| -a).collect();
        let ord = ModuleOrder::pot(MonomialOrder::GrevLex, if shifts.is_empty() { vec![0] } else { shifts });
        let cols: Vec<Vector> = (0..self.source.rank())
            .map(|j| build::column_to_vector(&self.column(j), &ord).0)
            .filter(|v| !v.is_zero())
            .collect();
        let mut leads = vec![Vec::new(); self.target.rank()];
        if !cols.is_empty() {
            for g in engine::buchberger(&cols, &ord, n, false).elems {
                let (p, m, _) = &g.terms[0];
                leads[*p as usize].push(m.clone());
            }
        }
        ImageHilbert { num_vars: n, twists: self.target.twists.clone(), leads }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &GradedMap) -> Result<GradedMap> {
        if self.source != rhs.target {
            return Err(Error::DegreeMismatch("composition of incompatible maps".into()));
        }
        let rows = self.target.rank();
        let cols = rhs.source.rank();
        let mut m = vec![vec![Polynomial::zero(&self.ring); cols]; rows];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.source.rank() {
                    let a = &self.matrix[i][k];
                    let b = &rhs.matrix[k][j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                *slot = acc;
            }
        }
        GradedMap::new(&self.ring, rhs.source.clone(), self.target.clone(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.matrix
            .iter()
            .any(|r| r.iter().any(|e| !e.is_zero() && e.is_constant()))
    }

    /// The dual map `target^∨ → source^∨`, given by the transposed matrix.
    pub fn dual(&self) -> GradedMap {
        let rows = self.source.rank();
        let cols = self.target.rank();
        let m = (0..rows)
            .map(|j| (0..cols).map(|i| self.matrix[i][j].clone()).collect())
            .collect();
        GradedMap {
            ring: self.ring.clone(),
            source: self.target.dual(),
            target: self.source.dual(),
            matrix: m,
        }
    }

    /// Rank of the linear map between degree-`d` pieces, by exact
    /// elimination.
    pub fn rank_in_degree(&self, d: i64) -> usize {
        let n = self.ring.num_vars();
        let target_basis = self.target.degree_basis(n, d);
        if target_basis.is_empty() {
            return 0;
        }
        let col_index: std::collections::HashMap<(usize, Monomial), usize> = target_basis
            .into_iter()
            .enumerate()
            .map(|(k, key)| (key, k))
            .collect();
        let mut ech = Echelon::new();
        for (j, a) in self.source.twists.iter().enumerate() {
            let column: Vec<(usize, &Polynomial)> = self
                .matrix
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[j].is_zero())
                .map(|(i, r)| (i, &r[j]))
                .collect();
            if column.is_empty() {
                continue;
            }
            for m in monomials_of_degree(n, d + a, &MonomialOrder::Lex) {
                let mut row: Vec<(usize, BigRational)> = Vec::new();
                for (i, e) in &column {
                    for (em, c) in e.terms() {
                        let key = (*i, em.mul(&m));
                        row.push((col_index[&key], c.clone()));
                    }
                }
                ech.insert_rational(&row);
                if ech.rank() == col_index.len() {
                    return ech.rank();
                }
            }
        }
        ech.rank()
    }
}

impl fmt::Display for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} <- {}", self.target, self.source)?;
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [ {} ]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Leading terms of a Groebner basis of the image of a map, per summand of
/// the target.
#[derive(Clone, Debug)]
pub struct ImageHilbert {
    num_vars: usize,
    twists: Vec<i64>,
    leads: Vec<Vec<Monomial>>,
}

impl ImageHilbert {
    /// Dimension of the image in degree `d`, i.e. the rank of the map there.
    pub fn dim(&self, d: i64) -> usize {
        let mut total = 0;
        for (a, leads) in self.twists.iter().zip(&self.leads) {
            if leads.is_empty() {
                continue;
            }
            if leads.iter().any(|l| l.is_one()) {
                total += count_monomials(self.num_vars, d + a) as usize;
                continue;
            }
            total += monomials_of_degree(self.num_vars, d + a, &MonomialOrder::Lex)
                .iter()
                .filter(|m| leads.iter().any(|l| l.divides(m)))
                .count();
        }
        total
    }
}

/// `0 → F_k → ... → F_1 → F_0 → I → 0`. `maps[i]` is `d_{i+1}: F_{i+1} → F_i`;
/// `augmentation` lists the images of the basis of `F_0` in `S`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Arc<RingContext>,
    augmentation: Vec<Polynomial>,
    modules: Vec<GradedFreeModule>,
    maps: Vec<GradedMap>,
    minimal: bool,
}

impl FreeResolution {
    /// Assembles a complex from its pieces, checking degree compatibility
    /// (not exactness; see [`verify_exactness`]).
    pub fn new(
        ring: &Arc<RingContext>,
        augmentation: Vec<Polynomial>,
        maps: Vec<GradedMap>,
    ) -> Result<Self> {
        let f0 = GradedFreeModule::new(
            augmentation
                .iter()
                .map(|g| {
                    g.total_degree()
                        .map(|d| -(d as i64))
                        .ok_or(Error::ZeroGenerator)
                })
                .collect::<Result<Vec<_>>>()?,
        );
        let mut modules = vec![f0];
        for (i, m) in maps.iter().enumerate() {
            if m.target() != &modules[i] {
                return Err(Error::DegreeMismatch(format!(
                    "d_{} targets {} but F_{} is {}",
                    i + 1,
                    m.target(),
                    i,
                    modules[i]
                )));
            }
            modules.push(m.source().clone());
        }
        let mut r = FreeResolution {
            ring: ring.clone(),
            augmentation,
            modules,
            maps,
            minimal: false,
        };
        r.minimal = !r.maps.iter().any(|m| m.has_unit_entry());
        Ok(r)
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn augmentation(&self) -> &[Polynomial] {
        &self.augmentation
    }

    /// `F_0, ..., F_k`.
    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    /// `d_1, ..., d_k`.
    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    /// `d_i` for `1 <= i <= k`.
    pub fn differential(&self, i: usize) -> &GradedMap {
        &self.maps[i - 1]
    }

    /// Augmentation `F_0 → S(0)` as a graded map.
    pub fn augmentation_map(&self) -> GradedMap {
        GradedMap::new_unchecked(
            &self.ring,
            self.modules[0].clone(),
            GradedFreeModule::new(vec![0]),
            vec![self.augmentation.clone()],
        )
    }

    /// Length `k` of the complex (index of the last nonzero module).
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, m) in self.modules.iter().enumerate() {
            for &a in m.twists() {
                *entries.entry((i, a)).or_insert(0usize) += 1;
            }
        }
        BettiTable { entries }
    }

    /// Largest `-a` over all twists `a`, i.e. the top degree of a generator
    /// or syzygy.
    pub fn max_shift(&self) -> i64 {
        self.modules
            .iter()
            .flat_map(|m| m.twists().iter().map(|a| -a))
            .max()
            .unwrap_or(0)
    }

    /// Castelnuovo-Mumford regularity of the resolved ideal,
    /// `max_i (shift - i)`.
    pub fn regularity(&self) -> i64 {
        self.modules
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.twists().iter().map(move |a| -a - i as i64))
            .max()
            .unwrap_or(0)
    }
}

/// Multiplicity of `S(a)` in `F_i`, keyed by `(i, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, twist: i64) -> usize {
        self.entries.get(&(i, twist)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), usize> {
        &self.entries
    }

    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Twists of `F_i` with multiplicity, descending.
    pub fn shape(&self, i: usize) -> Vec<i64> {
        let mut out = Vec::new();
        for (&(j, a), &k) in self.entries.iter().rev() {
            if j == i {
                out.extend(std::iter::repeat(a).take(k));
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// Nested map `{ "i": { "twist": multiplicity } }`.
    pub fn to_nested(&self) -> BTreeMap<String, BTreeMap<String, usize>> {
        let mut out: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        for (&(i, a), &k) in &self.entries {
            out.entry(i.to_string()).or_default().insert(a.to_string(), k);
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nested = self.to_nested();
        let mut map = s.serialize_map(Some(nested.len()))?;
        for (k, v) in &nested {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl fmt::Display for BettiTable {
    /// Rows are homological positions, columns twists (descending).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut twists: Vec<i64> = self.entries.keys().map(|(_, a)| *a).collect();
        twists.sort_by(|a, b| b.cmp(a));
        twists.dedup();
        let rows = self.length();
        let width = twists
            .iter()
            .map(|a| a.to_string().len())
            .chain(self.entries.values().map(|k| k.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(2);
        write!(f, "{:>4}", "")?;
        for a in &twists {
            write!(f, " {:>width$}", a)?;
        }
        writeln!(f)?;
        for i in 0..=rows {
            write!(f, "{:<4}", format!("F{i}:"))?;
            for a in &twists {
                let k = self.get(i, *a);
                if k == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {:>width$}", k)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
