//! Sheaf cohomology on `P^3`: line bundles by formula, twisted ideal
//! sheaves `J(d)` of saturated ideals either from a minimal free resolution
//! or, for finite schemes, from the restriction map to `O_Z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{graded_piece_dimension, hilbert_data, GradedIdeal, HilbertData};
use crate::poly::count_monomials;
use crate::resolution::{minimize, FreeResolution, ImageHilbert};

/// Twists reported by default.
pub const DEFAULT_TWISTS: RangeInclusive<i64> = -6..=8;

/// `h^i(P^3, O(a))`.
pub fn line_bundle_cohomology(a: i64, i: usize) -> u64 {
    match i {
        0 => count_monomials(4, a),
        3 => count_monomials(4, -a - 4),
        _ => 0,
    }
}

/// `chi(O(d)) = (d+1)(d+2)(d+3)/6`, valid for every `d`.
pub fn chi_line_bundle(d: i64) -> i64 {
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// `(h^0, h^1, h^2, h^3)`.
pub type CohomologyRow = [u64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Resolution,
    Restriction,
}

/// Precomputed data for the resolution method: the dual maps and the
/// modules of the resolution.
struct Strand<'a> {
    res: &'a FreeResolution,
    first: Option<ImageHilbert>,
    duals: Vec<ImageHilbert>,
}

impl<'a> Strand<'a> {
    fn new(res: &'a FreeResolution) -> Result<Self> {
        if res.ring().num_vars() != 4 {
            return Err(Error::InvalidRing("cohomology is computed on P^3 only".into()));
        }
        debug_assert!(res.is_minimal());
        match res.length() {
            0..=2 => {}
            // a minimal resolution of length 3 in 4 variables means depth 0,
            // i.e. the irrelevant ideal is associated
            3 => return Err(Error::NotSaturated),
            k => return Err(Error::ResolutionLengthUnsupported(k)),
        }
        Ok(Strand {
            res,
            first: res.maps().first().map(|m| m.image_hilbert()),
            duals: res.maps().iter().map(|m| m.dual().image_hilbert()).collect(),
        })
    }

    fn row(&self, d: i64) -> CohomologyRow {
        let mods = self.res.modules();
        let k = self.res.length();
        let mut h = [0u64; 4];
        h[0] = {
            let f0 = mods[0].dim(4, d);
            let r = self.first.as_ref().map_or(0, |m| m.dim(d));
            f0 - r as u64
        };
        // H^3 strand through Serre duality: B_p^dual = (F_p^dual)_e
        let e = -d - 4;
        let ranks: Vec<u64> = self.duals.iter().map(|m| m.dim(e) as u64).collect();
        for p in 0..=k {
            let dim = mods[p].dual().dim(4, e);
            let r_in = if p >= 1 { ranks[p - 1] } else { 0 };
            let r_out = if p < k { ranks[p] } else { 0 };
            h[3 - p] += dim - r_in - r_out;
        }
        h
    }
}

/// `h^i(J(d))` from a minimal free resolution of a saturated ideal `J`.
pub fn ideal_sheaf_cohomology_via_resolution(res: &FreeResolution, d: i64) -> Result<CohomologyRow> {
    let owned;
    let res = if res.is_minimal() {
        res
    } else {
        owned = minimize(res);
        &owned
    };
    Ok(Strand::new(res)?.row(d))
}

/// Hilbert data of a saturated ideal with finite (possibly empty) vanishing
/// scheme; positive-dimensional schemes are rejected.
fn finite_scheme_data(jsat: &GradedIdeal) -> Result<HilbertData> {
    if jsat.ring().num_vars() != 4 {
        return Err(Error::InvalidRing("cohomology is computed on P^3 only".into()));
    }
    let h = hilbert_data(jsat, None);
    match h.dimension {
        Some(k) if k > 0 => Err(Error::PositiveDimensional(k)),
        _ => Ok(h),
    }
}

fn restriction_row(jsat: &GradedIdeal, hd: &HilbertData, d: i64) -> Result<CohomologyRow> {
    let h0 = if d < 0 { 0 } else { graded_piece_dimension(jsat, d) };
    // rank of H^0(O(d)) -> H^0(O_Z(d)) is dim (S/J)_d
    let rank = line_bundle_cohomology(d, 0) - h0;
    let h1 = hd.degree.checked_sub(rank).ok_or(Error::NotSaturated)?;
    Ok([h0, h1, 0, line_bundle_cohomology(d, 3)])
}

/// `h^i(J(d))` for a saturated ideal of a finite scheme `Z`, from the
/// cokernel of the restriction map `H^0(O(d)) → H^0(O_Z(d))`.
pub fn ideal_sheaf_cohomology_via_restriction(jsat: &GradedIdeal, d: i64) -> Result<CohomologyRow> {
    let hd = finite_scheme_data(jsat)?;
    restriction_row(jsat, &hd, d)
}

/// `h^i(P^3, J(d))` for a range of twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub method: Method,
    rows: BTreeMap<i64, CohomologyRow>,
}

impl CohomologyTable {
    pub fn via_resolution(res: &FreeResolution, twists: RangeInclusive<i64>) -> Result<Self> {
        let owned;
        let res = if res.is_minimal() {
            res
        } else {
            owned = minimize(res);
            &owned
        };
        let strand = Strand::new(res)?;
        let rows = twists
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|d| (d, strand.row(d)))
            .collect();
        Ok(CohomologyTable { method: Method::Resolution, rows })
    }

    pub fn via_restriction(jsat: &GradedIdeal, twists: RangeInclusive<i64>) -> Result<Self> {
        let hd = finite_scheme_data(jsat)?;
        let rows = twists
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|d| Ok((d, restriction_row(jsat, &hd, d)?)))
            .collect::<Result<_>>()?;
        Ok(CohomologyTable { method: Method::Restriction, rows })
    }

    pub fn rows(&self) -> &BTreeMap<i64, CohomologyRow> {
        &self.rows
    }

    pub fn row(&self, d: i64) -> Option<CohomologyRow> {
        self.rows.get(&d).copied()
    }

    pub fn h(&self, i: usize, d: i64) -> Option<u64> {
        self.row(d).map(|r| r[i])
    }

    pub fn twists(&self) -> RangeInclusive<i64> {
        let lo = self.rows.keys().next().copied().unwrap_or(0);
        let hi = self.rows.keys().next_back().copied().unwrap_or(-1);
        lo..=hi
    }

    /// Same numbers, regardless of method.
    pub fn same_values(&self, other: &CohomologyTable) -> bool {
        self.rows == other.rows
    }

    /// Twists where `sum (-1)^i h^i != chi(O(d)) - degree` fails.
    pub fn euler_violations(&self, degree: u64) -> Vec<i64> {
        self.rows
            .iter()
            .filter(|(d, h)| {
                let alt = h[0] as i64 - h[1] as i64 + h[2] as i64 - h[3] as i64;
                alt != chi_line_bundle(**d) - degree as i64
            })
            .map(|(d, _)| *d)
            .collect()
    }
}

impl Serialize for CohomologyTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.rows.len()))?;
        for (d, h) in &self.rows {
            let entry: BTreeMap<&str, u64> =
                [("h0", h[0]), ("h1", h[1]), ("h2", h[2]), ("h3", h[3])].into_iter().collect();
            map.serialize_entry(&d.to_string(), &entry)?;
        }
        map.end()
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self
            .rows
            .values()
            .flat_map(|h| h.iter().map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(3);
        writeln!(f, "{:>4} {:>w$} {:>w$} {:>w$} {:>w$}", "d", "h0", "h1", "h2", "h3")?;
        for (d, h) in &self.rows {
            writeln!(f, "{:>4} {:>w$} {:>w$} {:>w$} {:>w$}", d, h[0], h[1], h[2], h[3])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingContext;
    use crate::resolution::free_resolution;

    fn ideal(gens: &[&str]) -> GradedIdeal {
        GradedIdeal::parse(&RingContext::p3(), gens).unwrap()
    }

    fn binom3(n: i64) -> u64 {
        if n < 3 {
            0
        } else {
            (n * (n - 1) * (n - 2) / 6) as u64
        }
    }

    #[test]
    fn line_bundles() {
        assert_eq!(line_bundle_cohomology(4, 0), 35);
        assert_eq!(line_bundle_cohomology(-4, 3), 1);
        assert_eq!(line_bundle_cohomology(-5, 3), 4);
        assert_eq!(line_bundle_cohomology(-3, 3), 0);
        assert_eq!(line_bundle_cohomology(2, 1), 0);
        for a in -12..12 {
            assert_eq!(line_bundle_cohomology(a, 0), binom3(a + 3));
            assert_eq!(line_bundle_cohomology(a, 3), binom3(-a - 1));
            // Serre duality
            assert_eq!(line_bundle_cohomology(a, 3), line_bundle_cohomology(-a - 4, 0));
            let chi = line_bundle_cohomology(a, 0) as i64 - line_bundle_cohomology(a, 3) as i64;
            assert_eq!(chi, chi_line_bundle(a));
        }
    }

    fn both(gens: &[&str]) -> (CohomologyTable, CohomologyTable, u64) {
        let i = ideal(gens);
        let res = free_resolution(&i).unwrap();
        let a = CohomologyTable::via_resolution(&res, DEFAULT_TWISTS).unwrap();
        let b = CohomologyTable::via_restriction(&i, DEFAULT_TWISTS).unwrap();
        let deg = hilbert_data(&i, None).degree;
        (a, b, deg)
    }

    #[test]
    fn three_points() {
        let (a, b, deg) = both(&["x*y", "x*z", "y*z", "t^3"]);
        assert_eq!(deg, 9);
        assert_eq!(a.h(1, 4), Some(0));
        assert_eq!(a.row(4), Some([26, 0, 0, 0]));
        assert!(a.same_values(&b));
        assert!(a.euler_violations(deg).is_empty());
    }

    #[test]
    fn koszul_quartic() {
        let (a, b, deg) = both(&["3*x^2*y - y^3", "x^3 - 3*x*y^2", "t^3"]);
        assert_eq!(deg, 27);
        assert_eq!(a.row(4), Some([12, 4, 0, 0]));
        assert!(a.same_values(&b));
        assert!(a.euler_violations(deg).is_empty());
        assert!((-6..=8).all(|d| a.h(2, d) == Some(0)));
    }

    #[test]
    fn cusp_chain() {
        let (a, b, deg) = both(&["t^3", "y^3", "3*x*y^2 + z^3", "y*z^2"]);
        assert_eq!(deg, 21);
        assert_eq!(a.row(4), Some([15, 1, 0, 0]));
        assert!(a.same_values(&b));
        assert!(a.euler_violations(deg).is_empty());
    }

    #[test]
    fn low_twists() {
        let (a, _, deg) = both(&["x*y", "x*z", "y*z", "t^3"]);
        for d in -6..2 {
            assert_eq!(a.h(0, d), Some(0));
        }
        assert_eq!(a.row(-6), Some([0, deg, 0, 10]));
    }

    #[test]
    fn rejects_bad_input() {
        let m = ideal(&["x", "y", "z", "t"]);
        let r = free_resolution(&m).unwrap();
        assert_eq!(r.length(), 3);
        assert_eq!(ideal_sheaf_cohomology_via_resolution(&r, 0), Err(Error::NotSaturated));
        let line = ideal(&["x", "y"]);
        assert_eq!(ideal_sheaf_cohomology_via_restriction(&line, 2), Err(Error::PositiveDimensional(1)));
    }

    #[test]
    fn line_resolution_method_still_works() {
        // the line x = y = 0 is saturated of length 1: h^1(J(d)) = 0 and
        // h^0 = dim J_d
        let line = ideal(&["x", "y"]);
        let r = free_resolution(&line).unwrap();
        for d in -3..6 {
            let h = ideal_sheaf_cohomology_via_resolution(&r, d).unwrap();
            assert_eq!(h[0], graded_piece_dimension(&line, d.max(0)) * (d >= 0) as u64);
            assert_eq!(h[1], 0);
        }
    }

    #[test]
    fn table_rendering() {
        let (a, _, _) = both(&["x*y", "x*z", "y*z", "t^3"]);
        let json = serde_json::to_value(&a).unwrap();
        assert_eq!(json["4"]["h0"], 26);
        assert_eq!(json["-6"]["h3"], 10);
        let text = a.to_string();
        assert_eq!(text.lines().count(), 16);
        assert!(text.lines().next().unwrap().trim_start().starts_with('d'));
    }
}
