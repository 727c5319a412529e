use serde::Serialize;

use super::FreeResolution;
use crate::error::{Error, Result};

/// One line of the rank ledger: at `F_position` in `degree`,
/// `dim - rank_out` (the kernel of the outgoing map) must equal `rank_in`
/// (the image of the incoming one).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub position: usize,
    pub degree: i64,
    pub dim: u64,
    pub rank_out: usize,
    pub rank_in: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessCertificate {
    pub degrees: (i64, i64),
    pub ledger: Vec<RankEntry>,
}

/// Default probe range: from the lowest generator degree to two past the
/// largest shift in the complex.
pub fn default_probe(res: &FreeResolution) -> (i64, i64) {
    let lo = res.modules()[0].twists().iter().map(|a| -a).min().unwrap_or(0);
    (lo, res.max_shift() + 2)
}

/// Checks that consecutive maps compose to zero (the augmentation included)
/// and that every homology group vanishes in each degree of `probe`
/// (default [`default_probe`]). Ranks are Hilbert functions of the images,
/// read off from their Groebner bases.
pub fn verify_exactness(res: &FreeResolution, probe: Option<(i64, i64)>) -> Result<ExactnessCertificate> {
    let aug = res.augmentation_map();
    let mut chain = vec![aug];
    chain.extend(res.maps().iter().cloned());

    for i in 0..chain.len() - 1 {
        let comp = chain[i].compose(&chain[i + 1])?;
        if let Some(j) = (0..comp.source().rank()).find(|&j| comp.column(j).iter().any(|e| !e.is_zero())) {
            return Err(Error::NotExact {
                position: i,
                degree: -comp.source().twists()[j],
                detail: format!("d_{} d_{} is nonzero on basis element {j}", i, i + 1),
            });
        }
    }

    let (lo, hi) = probe.unwrap_or_else(|| default_probe(res));
    let n = res.ring().num_vars();
    let images: Vec<_> = chain.iter().map(|m| m.image_hilbert()).collect();
    let mut ledger = Vec::new();
    for d in lo..=hi {
        // ranks[i] is the rank of chain[i] = d_i (d_0 the augmentation)
        let ranks: Vec<usize> = images.iter().map(|h| h.dim(d)).collect();
        for (i, module) in res.modules().iter().enumerate() {
            let dim = module.dim(n, d);
            let rank_out = ranks[i];
            let rank_in = ranks.get(i + 1).copied().unwrap_or(0);
            ledger.push(RankEntry { position: i, degree: d, dim, rank_out, rank_in });
            if dim - rank_out as u64 != rank_in as u64 {
                return Err(Error::NotExact {
                    position: i,
                    degree: d,
                    detail: format!(
                        "kernel has dimension {} but the incoming image has rank {rank_in}",
                        dim - rank_out as u64
                    ),
                });
            }
        }
    }
    Ok(ExactnessCertificate { degrees: (lo, hi), ledger })
}
