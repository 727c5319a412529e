//! Dimension bookkeeping for moduli of simple perfect sheaves on a K3
//! surface: the dimension formula, Riemann-Roch, the invariants of
//! extension and generalized syzygy bundles, and the dimension identities
//! behind the half-dimensionality of the associated correspondences.

use serde::Serialize;

use crate::error::{Error, Result};

/// Inputs are bounded so that every derived quantity fits in `i128` with
/// room to spare.
pub const INVARIANT_BOUND: i64 = 1 << 40;

/// Rank, `L^2` and `c_2` of a sheaf on a K3 surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModuliInvariants {
    pub r: i64,
    #[serde(rename = "Lsq")]
    pub lsq: i64,
    pub c2: i64,
}

impl ModuliInvariants {
    pub fn new(r: i64, lsq: i64, c2: i64) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidInvariants(format!("rank must be positive, got {r}")));
        }
        if lsq % 2 != 0 {
            return Err(Error::InvalidInvariants(format!(
                "L^2 must be even on a K3 surface, got {lsq}"
            )));
        }
        for (name, v) in [("r", r), ("Lsq", lsq), ("c2", c2)] {
            if v.abs() > INVARIANT_BOUND {
                return Err(Error::InvalidInvariants(format!("|{name}| exceeds 2^40")));
            }
        }
        Ok(ModuliInvariants { r, lsq, c2 })
    }

    fn wide(&self) -> (i128, i128, i128) {
        (self.r as i128, self.lsq as i128, self.c2 as i128)
    }
}

/// `dim PSpl(r; L, c_2) = 2 r c_2 - (r - 1) L^2 - 2 r^2 + 2`.
pub fn pspl_dimension(m: &ModuliInvariants) -> i128 {
    let (r, l, c) = m.wide();
    2 * r * c - (r - 1) * l - 2 * r * r + 2
}

/// `chi(F) = 2r + L^2/2 - c_2`.
pub fn chi_sheaf(m: &ModuliInvariants) -> i128 {
    let (r, l, c) = m.wide();
    2 * r + l / 2 - c
}

/// `chi(F, F) = 2r^2 + (r - 1) L^2 - 2 r c_2`.
pub fn chi_ff(m: &ModuliInvariants) -> i128 {
    let (r, l, c) = m.wide();
    2 * r * r + (r - 1) * l - 2 * r * c
}

/// `u = c_2 - L^2/2 - 2r = -chi(F^*)`.
pub fn chi_dual_deficit(m: &ModuliInvariants) -> i128 {
    let (r, l, c) = m.wide();
    c - l / 2 - 2 * r
}

/// Invariants of the syzygy bundle of an evaluation `W ⊗ O → F` with
/// `dim W = w`: rank `w - r`, determinant `-L`, `c_2 = L^2 - c_2`.
pub fn syzygy_invariants(m: &ModuliInvariants, w: i64) -> Result<ModuliInvariants> {
    if w < m.r + 2 {
        return Err(Error::InvalidInvariants(format!(
            "need w >= r + 2 = {}, got {w}",
            m.r + 2
        )));
    }
    ModuliInvariants::new(w - m.r, m.lsq, m.lsq - m.c2)
}

/// Invariants of an extension of `F` by `V ⊗ O` with `dim V = v`.
pub fn extension_invariants(m: &ModuliInvariants, v: i64) -> Result<ModuliInvariants> {
    if v < 1 {
        return Err(Error::InvalidInvariants(format!("need v >= 1, got {v}")));
    }
    ModuliInvariants::new(m.r + v, m.lsq, m.c2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(name: &'static str, lhs: i128, rhs: i128) -> Self {
        IdentityCheck { name, lhs, rhs, holds: lhs == rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LagrangianReport {
    pub invariants: ModuliInvariants,
    pub w: i64,
    pub v: i64,
    /// `chi(F)`, standing in for `h^0(F)` on the locus where `F` is
    /// globally generated with `H^1(F) = 0`.
    pub h0: i128,
    /// `-chi(F^*)`, standing in for `h^1(F^*)` where `H^0(F) = H^0(F^*) = 0`.
    pub u: i128,
    pub pspl_dimension: i128,
    pub syzygy: ModuliInvariants,
    pub syzygy_pspl_dimension: i128,
    pub extension: ModuliInvariants,
    pub extension_pspl_dimension: i128,
    pub identities: Vec<IdentityCheck>,
    pub note: &'static str,
}

impl LagrangianReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }
}

/// Checks, in exact integers:
/// (a) `dim PSpl(syz) - dim PSpl = 2 w (h0 - w)`,
/// (b) `dim PSpl(ext) - dim PSpl = 2 v (u - v)`,
/// together with `2 - chi(F, F) = dim PSpl` and the parity of the dimension.
pub fn lagrangian_dimension_identities(m: &ModuliInvariants, w: i64, v: i64) -> Result<LagrangianReport> {
    let syz = syzygy_invariants(m, w)?;
    let ext = extension_invariants(m, v)?;
    let d = pspl_dimension(m);
    let h0 = chi_sheaf(m);
    let u = chi_dual_deficit(m);
    let (dw, dv) = (w as i128, v as i128);
    let ds = pspl_dimension(&syz);
    let de = pspl_dimension(&ext);
    let identities = vec![
        IdentityCheck::new("syzygy: dim difference = 2w(h0 - w)", ds - d, 2 * dw * (h0 - dw)),
        IdentityCheck::new("extension: dim difference = 2v(u - v)", de - d, 2 * dv * (u - dv)),
        IdentityCheck::new("2 - chi(F,F) = dim PSpl", 2 - chi_ff(m), d),
        IdentityCheck::new("dim PSpl mod 2 = 0", d.rem_euclid(2), 0),
    ];
    Ok(LagrangianReport {
        invariants: *m,
        w,
        v,
        h0,
        u,
        pspl_dimension: d,
        syzygy: syz,
        syzygy_pspl_dimension: ds,
        extension: ext,
        extension_pspl_dimension: de,
        identities,
        note: "h0 and u are chi-valued under the locus hypotheses",
    })
}
