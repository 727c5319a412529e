//! Smoothability analysis of a quartic surface `X = V(f) ⊂ P^3`.
//!
//! The Jacobian ideal is saturated, its vanishing scheme `Z` measured, and
//! `h^1(P^3, J(4))` computed for `J` the ideal sheaf of `Z`. When `Z` is a
//! nonempty finite scheme, `h^1(J(4)) = 0` is equivalent to surjectivity of
//! `Ext^1(P, O_X) → H^0(T^1_X)`, which gives `H^2(X, T_X) = 0` and
//! polarized smoothability of `(X, O_X(1))`.

use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::cohomology::{CohomologyTable, DEFAULT_TWISTS};
use crate::error::{Error, Result};
use crate::groebner::{hilbert_data, saturate_irrelevant, GradedIdeal};
use crate::poly::Polynomial;
use crate::resolution::{free_resolution, BettiTable};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// The saturated Jacobian ideal is the unit ideal.
    Smooth,
    /// Finite singular scheme and `h^1(J(4)) = 0`.
    CriterionHolds,
    /// Finite singular scheme and `h^1(J(4)) > 0`; says nothing about
    /// smoothability either way.
    CriterionFailsInconclusive,
    /// Singular locus of positive dimension.
    NotApplicablePositiveDim,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Smooth => "SMOOTH",
            Verdict::CriterionHolds => "CRITERION_HOLDS",
            Verdict::CriterionFailsInconclusive => "CRITERION_FAILS_INCONCLUSIVE",
            Verdict::NotApplicablePositiveDim => "NOT_APPLICABLE_POSITIVE_DIM",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Vanishing scheme of the saturated Jacobian ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularScheme {
    pub empty: bool,
    /// Projective dimension; `None` when empty.
    pub dimension: Option<i64>,
    /// Degree (the total Tjurina number when finite); 0 when empty.
    pub degree: u64,
    #[serde(skip)]
    pub saturated_ideal: GradedIdeal,
}

/// Hypotheses established by the analysis. `None` means not established,
/// which is not the same as false.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub psi_surjective: Option<bool>,
    #[serde(rename = "h2_TX_zero")]
    pub h2_tx_zero: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticReport {
    pub schema_version: u32,
    pub input: String,
    pub jacobian: GradedIdeal,
    pub saturation: GradedIdeal,
    pub singular_scheme: SingularScheme,
    pub betti: BettiTable,
    pub cohomology: CohomologyTable,
    #[serde(rename = "h1_J4")]
    pub h1_j4: u64,
    pub verdict: Verdict,
    pub hypotheses: Hypotheses,
    pub notes: Vec<String>,
}

fn check_quartic(f: &Polynomial) -> Result<()> {
    let ok = f.ring().num_vars() == 4
        && !f.is_zero()
        && f.is_homogeneous()
        && f.total_degree() == Some(4);
    if ok {
        Ok(())
    } else {
        Err(Error::NotAQuartic(f.to_string()))
    }
}

/// Ideal of the four partials, each divided by its content.
pub fn jacobian_ideal(f: &Polynomial) -> Result<GradedIdeal> {
    check_quartic(f)?;
    let partials = (0..4).map(|v| f.partial_derivative(v)).collect();
    GradedIdeal::new(f.ring(), partials)
}

/// Saturated Jacobian ideal with the dimension and degree of its scheme.
pub fn singular_scheme(f: &Polynomial) -> Result<SingularScheme> {
    let j = jacobian_ideal(f)?;
    scheme_of(&j, None)
}

fn scheme_of(j: &GradedIdeal, regularity_hint: Option<i64>) -> Result<SingularScheme> {
    let sat = saturate_irrelevant(j)?;
    let h = hilbert_data(&sat, regularity_hint);
    Ok(SingularScheme {
        empty: h.is_empty(),
        dimension: h.dimension,
        degree: h.degree,
        saturated_ideal: sat,
    })
}

/// Full analysis of a quartic, cohomology over [`DEFAULT_TWISTS`].
pub fn analyze_quartic(f: &Polynomial) -> Result<QuarticReport> {
    analyze_quartic_with(f, DEFAULT_TWISTS)
}

/// Full analysis with the cohomology table over `twists`, which must
/// contain 4.
pub fn analyze_quartic_with(f: &Polynomial, twists: RangeInclusive<i64>) -> Result<QuarticReport> {
    if !twists.contains(&4) {
        return Err(Error::InvalidTwistRange(format!(
            "{}:{} does not contain 4",
            twists.start(),
            twists.end()
        )));
    }
    let jacobian = jacobian_ideal(f)?;
    let saturation = saturate_irrelevant(&jacobian)?;
    let res = free_resolution(&saturation)?;
    let hd = hilbert_data(&saturation, Some(res.regularity()));
    let scheme = SingularScheme {
        empty: hd.is_empty(),
        dimension: hd.dimension,
        degree: hd.degree,
        saturated_ideal: saturation.clone(),
    };

    let cohomology = CohomologyTable::via_resolution(&res, twists.clone())?;
    let h1_j4 = cohomology.h(1, 4).expect("twist 4 is in range");

    let mut notes = Vec::new();
    if !saturation.ideal_eq(&jacobian) {
        notes.push("jacobian ideal is not saturated; the saturation is used throughout".to_string());
    }

    let finite = matches!(scheme.dimension, None | Some(0));
    if finite {
        let other = CohomologyTable::via_restriction(&saturation, twists)?;
        if !cohomology.same_values(&other) {
            return Err(Error::Internal("resolution and restriction cohomology disagree".into()));
        }
        let bad = cohomology.euler_violations(scheme.degree);
        if !bad.is_empty() {
            return Err(Error::Internal(format!("Euler characteristic mismatch at twists {bad:?}")));
        }
    } else {
        notes.push(
            "singular locus has positive dimension; the criterion needs isolated singularities and the restriction cross-check is skipped"
                .to_string(),
        );
    }

    let verdict = if scheme.empty {
        Verdict::Smooth
    } else if !finite {
        Verdict::NotApplicablePositiveDim
    } else if h1_j4 == 0 {
        Verdict::CriterionHolds
    } else {
        Verdict::CriterionFailsInconclusive
    };

    let hypotheses = match verdict {
        Verdict::Smooth | Verdict::CriterionHolds => Hypotheses {
            psi_surjective: Some(true),
            h2_tx_zero: Some(true),
        },
        _ => Hypotheses::default(),
    };

    match verdict {
        Verdict::CriterionHolds => notes.push(
            "h^1(J(4)) = 0: Ext^1(P, O_X) -> H^0(T^1_X) is surjective, H^2(X, T_X) = 0, and (X, O_X(1)) is polarized smoothable"
                .to_string(),
        ),
        Verdict::CriterionFailsInconclusive => {
            notes.push(format!(
                "h^1(J(4)) = {h1_j4}: the sufficient criterion fails; no conclusion about smoothability is drawn"
            ));
            notes.push(format!(
                "h^2(J(4)) = 0 as for every finite scheme; the nonzero dimension {h1_j4} sits in h^1"
            ));
        }
        _ => {}
    }
    if finite && !scheme.empty {
        notes.push("only dimension and degree of the singular scheme are computed, not its support points".to_string());
    }

    Ok(QuarticReport {
        schema_version: SCHEMA_VERSION,
        input: f.primitive().to_string(),
        jacobian,
        saturation,
        singular_scheme: scheme,
        betti: res.betti_table(),
        cohomology,
        h1_j4,
        verdict,
        hypotheses,
        notes,
    })
}

impl QuarticReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for SingularScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dimension {
            None => f.write_str("empty"),
            Some(d) => write!(f, "dimension {d}, degree {}", self.degree),
        }
    }
}

impl fmt::Display for QuarticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "schema version:  {}", self.schema_version)?;
        writeln!(f, "input:           {}", self.input)?;
        writeln!(f, "jacobian:        {}", self.jacobian)?;
        writeln!(f, "saturation:      {}", self.saturation)?;
        writeln!(f, "singular scheme: {}", self.singular_scheme)?;
        writeln!(f, "betti table:")?;
        for line in self.betti.to_string().lines() {
            writeln!(f, "  {line}")?;
        }
        writeln!(f, "cohomology of J(d):")?;
        for line in self.cohomology.to_string().lines() {
            writeln!(f, "  {line}")?;
        }
        writeln!(f, "h^1(J(4)):       {}", self.h1_j4)?;
        writeln!(f, "verdict:         {}", self.verdict)?;
        let flag = |b: Option<bool>| b.map_or("not established".to_string(), |b| b.to_string());
        writeln!(
            f,
            "hypotheses:      psi_surjective = {}, h2_TX_zero = {}",
            flag(self.hypotheses.psi_surjective),
            flag(self.hypotheses.h2_tx_zero)
        )?;
        if !self.notes.is_empty() {
            writeln!(f, "notes:")?;
            for n in &self.notes {
                writeln!(f, "  - {n}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingContext};

    fn f(s: &str) -> Polynomial {
        parse_polynomial(s, &RingContext::p3()).unwrap()
    }

    #[test]
    fn jacobian_generators() {
        let j = jacobian_ideal(&f("x*y^3 + y*z^3 + t^4")).unwrap();
        let want = GradedIdeal::parse(&RingContext::p3(), &["t^3", "y^3", "3*x*y^2 + z^3", "y*z^2"]).unwrap();
        assert_eq!(j, want);
        let j = jacobian_ideal(&f("x^4 + y^4 + z^4 + t^4")).unwrap();
        assert_eq!(j.generator_strings(), vec!["x^3", "y^3", "z^3", "t^3"]);
        let j = jacobian_ideal(&f("t^4 + x^3*y - x*y^3")).unwrap();
        let want = GradedIdeal::parse(&RingContext::p3(), &["3*x^2*y - y^3", "x^3 - 3*x*y^2", "t^3"]).unwrap();
        assert_eq!(j, want);
    }

    #[test]
    fn rejects_non_quartics() {
        assert!(matches!(jacobian_ideal(&f("x^3 + y^3")), Err(Error::NotAQuartic(_))));
        assert!(matches!(jacobian_ideal(&f("x^4 + y")), Err(Error::NotAQuartic(_))));
        assert!(matches!(jacobian_ideal(&f("0")), Err(Error::NotAQuartic(_))));
    }

    #[test]
    fn cusp_chain_report() {
        let r = analyze_quartic(&f("x*y^3 + y*z^3 + t^4")).unwrap();
        assert_eq!(r.verdict, Verdict::CriterionFailsInconclusive);
        assert_eq!(r.h1_j4, 1);
        assert_eq!(r.singular_scheme.dimension, Some(0));
        assert_eq!(r.singular_scheme.degree, 21);
        assert_eq!(r.hypotheses, Hypotheses::default());
    }

    #[test]
    fn three_points_report() {
        let r = analyze_quartic(&f("t^4 + x^2*y^2 + x^2*z^2 + y^2*z^2")).unwrap();
        assert_eq!(r.verdict, Verdict::CriterionHolds);
        assert_eq!(r.h1_j4, 0);
        assert_eq!(r.singular_scheme.degree, 9);
        assert_eq!(r.hypotheses.psi_surjective, Some(true));
        assert_eq!(r.hypotheses.h2_tx_zero, Some(true));
        let want = GradedIdeal::parse(&RingContext::p3(), &["x*y", "x*z", "y*z", "t^3"]).unwrap();
        assert!(r.saturation.ideal_eq(&want));
    }

    #[test]
    fn fermat_and_cone() {
        let r = analyze_quartic(&f("x^4 + y^4 + z^4 + t^4")).unwrap();
        assert_eq!(r.verdict, Verdict::Smooth);
        assert!(r.singular_scheme.empty);
        // x^4 + y^4 is singular along the line x = y = 0
        let r = analyze_quartic(&f("x^4 + y^4")).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicablePositiveDim);
        assert_eq!(r.singular_scheme.dimension, Some(1));
    }

    #[test]
    fn twist_range_override() {
        let r = analyze_quartic_with(&f("x*y^3 + y*z^3 + t^4"), 0..=5).unwrap();
        assert_eq!(r.cohomology.twists(), 0..=5);
        assert_eq!(r.h1_j4, 1);
        assert!(matches!(
            analyze_quartic_with(&f("x*y^3 + y*z^3 + t^4"), 5..=8),
            Err(Error::InvalidTwistRange(_))
        ));
    }

    #[test]
    fn json_keys() {
        let r = analyze_quartic(&f("t^4 + x^3*y - x*y^3")).unwrap();
        let v = r.to_json();
        for k in ["input", "jacobian", "saturation", "singular_scheme", "betti", "cohomology", "h1_J4", "verdict", "notes", "schema_version"] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
        assert_eq!(v["verdict"], "CRITERION_FAILS_INCONCLUSIVE");
        assert_eq!(v["h1_J4"], 4);
        assert_eq!(v["singular_scheme"]["degree"], 27);
        assert_eq!(v["cohomology"]["4"]["h2"], 0);
        assert_eq!(v["betti"]["2"]["-9"], 1);
        assert!(r.to_string().contains("verdict:         CRITERION_FAILS_INCONCLUSIVE"));
    }
}
