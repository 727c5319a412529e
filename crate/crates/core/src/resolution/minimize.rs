use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FreeResolution, GradedFreeModule, GradedMap};
use crate::poly::Polynomial;

type Matrix = Vec<Vec<Polynomial>>;

/// Cancels unit entries until no differential has a nonzero constant
/// entry. Each cancellation splits off a trivial complex `S(a) → S(a)`;
/// what remains is the minimal resolution (unique up to isomorphism).
/// The output lists each module's twists descending and has primitive
/// integer columns.
pub fn minimize(res: &FreeResolution) -> FreeResolution {
    let ring = res.ring().clone();
    let mut aug = res.augmentation().to_vec();
    let mut twists: Vec<Vec<i64>> = res.modules().iter().map(|m| m.twists().to_vec()).collect();
    let mut mats: Vec<Matrix> = res.maps().iter().map(|m| m.matrix().to_vec()).collect();

    while let Some((i, r, c)) = find_unit(&mats) {
        cancel(&mut aug, &mut twists, &mut mats, i, r, c);
    }
    while mats.last().map_or(false, |m| m.first().map_or(true, |row| row.is_empty())) {
        mats.pop();
        twists.pop();
    }

    sort_modules(&mut aug, &mut twists, &mut mats);
    normalize(&mut aug, &mut mats);

    let maps = mats
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            GradedMap::new(
                &ring,
                GradedFreeModule::new(twists[i + 1].clone()),
                GradedFreeModule::new(twists[i].clone()),
                m,
            )
            .expect("cancellation preserves degrees")
        })
        .collect();
    FreeResolution::new(&ring, aug, maps).expect("cancellation preserves the complex")
}

/// First unit entry: lowest homological position, then column, then row.
fn find_unit(mats: &[Matrix]) -> Option<(usize, usize, usize)> {
    for (i, m) in mats.iter().enumerate() {
        let cols = m.first().map_or(0, |r| r.len());
        for c in 0..cols {
            for (r, row) in m.iter().enumerate() {
                let e = &row[c];
                if !e.is_zero() && e.is_constant() {
                    return Some((i, r, c));
                }
            }
        }
    }
    None
}

/// Removes `S(a) --u--> S(a)` sitting at row `r`, column `c` of `mats[i]`.
fn cancel(
    aug: &mut Vec<Polynomial>,
    twists: &mut [Vec<i64>],
    mats: &mut [Matrix],
    i: usize,
    r: usize,
    c: usize,
) {
    let u = mats[i][r][c].leading_coefficient().unwrap().clone();
    let m = &mats[i];
    let pivot_row: Vec<Polynomial> = m[r].iter().map(|e| e.scale(&(BigRational::one() / &u))).collect();
    let mut next: Matrix = Vec::with_capacity(m.len() - 1);
    for (k, row) in m.iter().enumerate() {
        if k == r {
            continue;
        }
        let f = &row[c];
        let new_row = row
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != c)
            .map(|(j, e)| {
                if f.is_zero() || pivot_row[j].is_zero() {
                    e.clone()
                } else {
                    e - &(f * &pivot_row[j])
                }
            })
            .collect();
        next.push(new_row);
    }
    mats[i] = next;
    if i + 1 < mats.len() {
        mats[i + 1].remove(c);
    }
    if i == 0 {
        aug.remove(r);
    } else {
        for row in mats[i - 1].iter_mut() {
            row.remove(r);
        }
    }
    twists[i].remove(r);
    twists[i + 1].remove(c);
}

fn sort_modules(aug: &mut Vec<Polynomial>, twists: &mut [Vec<i64>], mats: &mut [Matrix]) {
    for i in 0..twists.len() {
        let mut perm: Vec<usize> = (0..twists[i].len()).collect();
        perm.sort_by(|&a, &b| twists[i][b].cmp(&twists[i][a]));
        if perm.iter().enumerate().all(|(k, &p)| k == p) {
            continue;
        }
        twists[i] = perm.iter().map(|&p| twists[i][p]).collect();
        if i == 0 {
            *aug = perm.iter().map(|&p| aug[p].clone()).collect();
        } else {
            for row in mats[i - 1].iter_mut() {
                *row = perm.iter().map(|&p| row[p].clone()).collect();
            }
        }
        if i < mats.len() {
            let m = &mats[i];
            mats[i] = perm.iter().map(|&p| m[p].clone()).collect();
        }
    }
}

/// Scalar making the entries coprime integers with the first nonzero
/// coefficient positive.
fn normalizer<'a>(entries: impl Iterator<Item = &'a Polynomial>) -> BigRational {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    let mut first: Option<bool> = None;
    for p in entries {
        for (_, c) in p.terms() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
            if first.is_none() {
                first = Some(c.is_negative());
            }
        }
    }
    if g.is_zero() {
        return BigRational::one();
    }
    let s = BigRational::new(l, g);
    if first == Some(true) {
        -s
    } else {
        s
    }
}

fn normalize(aug: &mut [Polynomial], mats: &mut [Matrix]) {
    // basis vector e scaled by 1/s turns its image into s * image and the
    // row of e in the next differential into (1/s) * row
    for (r, g) in aug.iter_mut().enumerate() {
        let s = normalizer(std::iter::once(&*g));
        if s.is_one() {
            continue;
        }
        *g = g.scale(&s);
        if let Some(m) = mats.first_mut() {
            m[r] = m[r].iter().map(|e| e.scale(&(BigRational::one() / &s))).collect();
        }
    }
    for i in 0..mats.len() {
        let cols = mats[i].first().map_or(0, |r| r.len());
        for j in 0..cols {
            let s = normalizer(mats[i].iter().map(|row| &row[j]));
            if s.is_one() {
                continue;
            }
            for row in mats[i].iter_mut() {
                row[j] = row[j].scale(&s);
            }
            if i + 1 < mats.len() {
                let inv = BigRational::one() / &s;
                mats[i + 1][j] = mats[i + 1][j].iter().map(|e| e.scale(&inv)).collect();
            }
        }
    }
}
