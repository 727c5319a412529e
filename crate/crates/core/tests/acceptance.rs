//! Acceptance criteria 1 to 9. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use k3smooth::cohomology::{line_bundle_cohomology, CohomologyTable};
use k3smooth::groebner::saturate_irrelevant;
use k3smooth::moduli::{lagrangian_dimension_identities, pspl_dimension, ModuliInvariants};
use k3smooth::pipeline::{jacobian_ideal, singular_scheme};
use k3smooth::poly::monomials_of_degree;
use k3smooth::resolution::{free_resolution, verify_exactness};
use k3smooth::{analyze_quartic, parse_polynomial, GradedIdeal, Monomial, Polynomial, RingContext, Verdict};

const CUSP_CHAIN: &str = "x*y^3 + y*z^3 + t^4";
const KOSZUL: &str = "t^4 + x^3*y - x*y^3";
const THREE_POINTS: &str = "t^4 + x^2*y^2 + x^2*z^2 + y^2*z^2";
const FERMAT: &str = "x^4 + y^4 + z^4 + t^4";

fn ring() -> Arc<RingContext> {
    RingContext::p3()
}

fn quartic(s: &str) -> Polynomial {
    parse_polynomial(s, &ring()).unwrap()
}

fn ideal(gens: &[&str]) -> GradedIdeal {
    GradedIdeal::parse(&ring(), gens).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(d+1)(d+2)(d+3)/6` as a polynomial in `d`, i.e. `chi(O(d))`.
fn chi_o(d: i64) -> i64 {
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// Degree of `V(I)` for a finite scheme: number of standard monomials of a
/// large degree with respect to the leading terms of a Groebner basis.
fn standard_monomial_degree(i: &GradedIdeal, big: i64) -> usize {
    let leads: Vec<Monomial> = i.groebner_basis().leading_monomials();
    monomials_of_degree(4, big, ring().order())
        .into_iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .count()
}

fn both_tables(sat: &GradedIdeal) -> (CohomologyTable, CohomologyTable) {
    let res = free_resolution(sat).unwrap();
    (
        CohomologyTable::via_resolution(&res, -6..=8).unwrap(),
        CohomologyTable::via_restriction(sat, -6..=8).unwrap(),
    )
}

fn assert_euler(table: &CohomologyTable, degree: i64) {
    for (d, h) in table.rows() {
        let alt = h[0] as i64 - h[1] as i64 + h[2] as i64 - h[3] as i64;
        assert_eq!(alt, chi_o(*d) - degree, "Euler characteristic at d = {d}");
    }
}

fn assert_within(t: Instant, limit: Duration, what: &str) {
    let e = t.elapsed();
    assert!(e < limit, "{what} took {e:?}, limit {limit:?}");
}

fn criterion_1() {
    let t = Instant::now();
    let r = analyze_quartic(&quartic(CUSP_CHAIN)).unwrap();
    assert_within(t, Duration::from_secs(30), "x*y^3 + y*z^3 + t^4");
    assert_eq!(r.singular_scheme.dimension, Some(0));
    assert_eq!(r.h1_j4, 1);
    assert_eq!(r.verdict, Verdict::CriterionFailsInconclusive);
    assert_eq!(r.betti.shape(0), vec![-3; 4]);
    let f2 = r.betti.shape(2);
    assert!(f2.contains(&-7) && f2.contains(&-8), "F2 = {f2:?}");
}

fn criterion_2() {
    let t = Instant::now();
    let r = analyze_quartic(&quartic(KOSZUL)).unwrap();
    assert_within(t, Duration::from_secs(30), "t^4 + x^3*y - x*y^3");
    assert_eq!(r.h1_j4, 4);
    assert_eq!(r.betti.shape(0), vec![-3; 3]);
    assert_eq!(r.betti.shape(1), vec![-6; 3]);
    assert_eq!(r.betti.shape(2), vec![-9]);
    assert_eq!(r.betti.length(), 2);
    let (a, b) = both_tables(&r.saturation);
    assert_eq!(a.h(2, 4), Some(0));
    assert_eq!(b.h(2, 4), Some(0));
    assert_eq!(a.h(1, 4), Some(4));
    assert_eq!(b.h(1, 4), Some(4));
}

fn criterion_3() {
    let t = Instant::now();
    let f = quartic(THREE_POINTS);
    let r = analyze_quartic(&f).unwrap();
    assert_within(t, Duration::from_secs(30), "t^4 + x^2*y^2 + x^2*z^2 + y^2*z^2");
    let sat = saturate_irrelevant(&jacobian_ideal(&f).unwrap()).unwrap();
    assert!(sat.ideal_eq(&ideal(&["x*y", "x*z", "y*z", "t^3"])));
    assert!(r.saturation.ideal_eq(&sat));
    assert_eq!(r.h1_j4, 0);
    assert_eq!(r.verdict, Verdict::CriterionHolds);
    assert_eq!(r.singular_scheme.degree, 9);
    assert_eq!(standard_monomial_degree(&sat, 12), 9);
}

fn criterion_4() {
    let t = Instant::now();
    let f = quartic(FERMAT);
    let r = analyze_quartic(&f).unwrap();
    assert_within(t, Duration::from_secs(5), "Fermat quartic");
    assert_eq!(r.verdict, Verdict::Smooth);
    assert!(r.saturation.ideal_eq(&GradedIdeal::unit(&ring())));
    assert!(r.singular_scheme.empty);
}

/// Adds `k` random rational multiples of random quartic monomials to `base`.
fn perturb(base: &Polynomial, k: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let monos = monomials_of_degree(4, 4, ring().order());
    let mut f = base.clone();
    for _ in 0..k {
        let m = monos.choose(rng).unwrap().clone();
        let mut n = rng.gen_range(-5i64..=5);
        if n == 0 {
            n = 1;
        }
        let c = rat(n, rng.gen_range(1i64..=4));
        f = &f + &Polynomial::term(&ring(), m, c);
    }
    f
}

/// The three worked quartics plus at least 20 random quartics with a nonempty
/// finite singular scheme, each with its scheme degree.
fn finite_instances() -> Vec<(Polynomial, u64)> {
    let mut out = Vec::new();
    for s in [CUSP_CHAIN, KOSZUL, THREE_POINTS] {
        let f = quartic(s);
        let deg = singular_scheme(&f).unwrap().degree;
        out.push((f, deg));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let bases = [quartic(CUSP_CHAIN), quartic(KOSZUL), quartic(THREE_POINTS)];
    let mut found = 0;
    let mut tries = 0;
    while found < 24 {
        tries += 1;
        assert!(tries < 400, "too few finite singular schemes among perturbations");
        let base = &bases[tries % 3];
        let k = rng.gen_range(1..=3);
        let f = perturb(base, k, &mut rng);
        let scheme = singular_scheme(&f).unwrap();
        if !scheme.empty && scheme.dimension == Some(0) {
            out.push((f, scheme.degree));
            found += 1;
        }
    }
    out
}

fn criteria_5_and_6() -> (Result<(), String>, Result<(), String>) {
    let instances = finite_instances();
    let mut c5 = Ok(());
    let mut c6 = Ok(());
    for (f, degree) in &instances {
        let sat = saturate_irrelevant(&jacobian_ideal(f).unwrap()).unwrap();
        // independent degree oracle
        let oracle = standard_monomial_degree(&sat, 24) as u64;
        if oracle != *degree {
            c6 = Err(format!("{f}: degree {degree} but {oracle} standard monomials"));
        }
        let (a, b) = both_tables(&sat);
        if !a.same_values(&b) || a.rows() != b.rows() {
            c5 = Err(format!("{f}: resolution and restriction tables differ"));
        }
        for table in [&a, &b] {
            if let Err(e) = catch(|| assert_euler(table, oracle as i64)) {
                c6 = Err(format!("{f}: {e}"));
            }
        }
    }
    if c5.is_ok() {
        println!("    criterion 5: {} instances compared", instances.len());
    }
    (c5, c6)
}

fn binom3(n: i64) -> u64 {
    if n < 3 {
        0
    } else {
        (n * (n - 1) * (n - 2) / 6) as u64
    }
}

fn criterion_7() {
    assert_eq!(line_bundle_cohomology(4, 0), 35);
    assert_eq!(line_bundle_cohomology(-4, 3), 1);
    assert_eq!(line_bundle_cohomology(-5, 3), 4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let a = rng.gen_range(-60i64..=60);
        let i = rng.gen_range(1usize..=2);
        assert_eq!(line_bundle_cohomology(a, i), 0, "h^{i}(O({a}))");
        // h0 counts monomials, h3 by Serre duality
        assert_eq!(line_bundle_cohomology(a, 0), monomials_of_degree(4, a, ring().order()).len() as u64);
        assert_eq!(line_bundle_cohomology(a, 3), binom3(-a - 1));
    }
}

fn criterion_8() {
    let t = Instant::now();
    let mut checked = 0u64;
    for r in 1i64..=10 {
        for l in (-40i64..=40).step_by(2) {
            for c in -40i64..=40 {
                let m = ModuliInvariants::new(r, l, c).unwrap();
                let (r1, l1, c1) = (r as i128, l as i128, c as i128);
                let dim = 2 * r1 * c1 - (r1 - 1) * l1 - 2 * r1 * r1 + 2;
                assert_eq!(pspl_dimension(&m), dim);
                let chi_ff = 2 * r1 * r1 + (r1 - 1) * l1 - 2 * r1 * c1;
                assert_eq!(2 - chi_ff, dim);
                assert_eq!(dim.rem_euclid(2), 0);
                let h0 = 2 * r1 + l1 / 2 - c1;
                let u = c1 - l1 / 2 - 2 * r1;
                for w in r + 2..=r + 20 {
                    for v in 1..=20 {
                        let rep = lagrangian_dimension_identities(&m, w, v).unwrap();
                        assert!(rep.all_hold(), "({r}, {l}, {c}), w = {w}, v = {v}");
                        let (w1, v1) = (w as i128, v as i128);
                        // syzygy bundle: rank w - r, same L^2, c2 = L^2 - c2
                        let ds = 2 * (w1 - r1) * (l1 - c1) - (w1 - r1 - 1) * l1 - 2 * (w1 - r1) * (w1 - r1) + 2;
                        let de = 2 * (r1 + v1) * c1 - (r1 + v1 - 1) * l1 - 2 * (r1 + v1) * (r1 + v1) + 2;
                        assert_eq!(rep.syzygy_pspl_dimension, ds);
                        assert_eq!(rep.extension_pspl_dimension, de);
                        assert_eq!(ds - dim, 2 * w1 * (h0 - w1));
                        assert_eq!(de - dim, 2 * v1 * (u - v1));
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_within(t, Duration::from_secs(10), "moduli grid");
    println!("    criterion 8: {checked} cases");
}

fn random_quartic(rng: &mut ChaCha8Rng, terms: usize) -> Polynomial {
    let monos = monomials_of_degree(4, 4, ring().order());
    let picked: Vec<(Monomial, BigRational)> = monos
        .choose_multiple(rng, terms)
        .map(|m| {
            let mut n = rng.gen_range(-9i64..=9);
            if n == 0 {
                n = 2;
            }
            (m.clone(), rat(n, rng.gen_range(1i64..=3)))
        })
        .collect();
    Polynomial::from_terms(&ring(), picked)
}

/// Random unimodular integer substitution: a permutation followed by
/// elementary transvections `x_i -> x_i + c x_j`.
fn unimodular(rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let r = ring();
    let mut images: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(&r, i)).collect();
    images.shuffle(rng);
    for _ in 0..2 {
        let i = rng.gen_range(0..4);
        let mut j = rng.gen_range(0..4);
        while j == i {
            j = rng.gen_range(0..4);
        }
        let c = [-1i64, 1, 2][rng.gen_range(0..3)];
        let add = images[j].scale(&rat(c, 1));
        images[i] = &images[i] + &add;
    }
    images
}

fn criterion_9() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    // reduced Groebner bases do not depend on generator order or scaling
    let mut ideals: Vec<GradedIdeal> = [CUSP_CHAIN, KOSZUL, THREE_POINTS, FERMAT]
        .iter()
        .map(|s| jacobian_ideal(&quartic(s)).unwrap())
        .collect();
    ideals.push(ideal(&["x*y", "x*z", "y*z", "t^3", "x^2 + y^2 + z^2"]));
    for i in &ideals {
        let gb = i.groebner_basis();
        assert!(gb.is_reduced());
        for _ in 0..5 {
            let mut gens: Vec<Polynomial> = i.generators().to_vec();
            gens.shuffle(&mut rng);
            let gens = gens.into_iter().map(|g| g.scale(&rat(rng.gen_range(1..=7), rng.gen_range(1..=5)))).collect();
            let j = GradedIdeal::new(&ring(), gens).unwrap();
            assert_eq!(j.groebner_basis(), gb);
        }
    }

    // Euler identity puts f in its Jacobian ideal
    for _ in 0..100 {
        let n = rng.gen_range(3..=10);
        let f = random_quartic(&mut rng, n);
        assert!(f.euler_relation_check().unwrap());
        let j = jacobian_ideal(&f).unwrap();
        assert!(j.groebner_basis().contains(&f), "{f} not in its Jacobian ideal");
    }

    // exactness certificates and minimality on the goldens
    for s in [CUSP_CHAIN, KOSZUL, THREE_POINTS, FERMAT] {
        let sat = saturate_irrelevant(&jacobian_ideal(&quartic(s)).unwrap()).unwrap();
        let res = free_resolution(&sat).unwrap();
        let cert = verify_exactness(&res, None).unwrap();
        assert!(!cert.ledger.is_empty());
        assert!(res.is_minimal());
        assert!(res.maps().iter().all(|m| !m.has_unit_entry()));
    }

    // coordinate changes preserve h^1(J(4)) and the scheme degree
    for s in [CUSP_CHAIN, KOSZUL, THREE_POINTS] {
        let f = quartic(s);
        let base = analyze_quartic(&f).unwrap();
        for _ in 0..10 {
            let g = f.substitute(&unimodular(&mut rng));
            let r = analyze_quartic(&g).unwrap();
            assert_eq!(r.h1_j4, base.h1_j4, "{g}");
            assert_eq!(r.singular_scheme.degree, base.singular_scheme.degree, "{g}");
            assert_eq!(r.verdict, base.verdict);
        }
    }
}

fn catch(f: impl FnOnce()) -> Result<(), String> {
    catch_value(f)
}

fn catch_value<T>(f: impl FnOnce() -> T) -> Result<T, String> {
    let prev = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let r = panic::catch_unwind(AssertUnwindSafe(f));
    panic::set_hook(prev);
    r.map_err(|e| {
        e.downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())
    })
}

fn timed<T>(f: impl FnOnce() -> T) -> (Result<T, String>, Duration) {
    let t = Instant::now();
    let r = catch_value(f);
    (r, t.elapsed())
}

fn main() {
    let mut results: Vec<(u32, &str, Result<(), String>, Duration)> = Vec::new();
    let single: [(u32, &str, fn()); 4] = [
        (1, "golden: x*y^3 + y*z^3 + t^4", criterion_1),
        (2, "golden: t^4 + x^3*y - x*y^3", criterion_2),
        (3, "golden: t^4 + x^2*y^2 + x^2*z^2 + y^2*z^2", criterion_3),
        (4, "Fermat quartic is smooth", criterion_4),
    ];
    for (n, name, f) in single {
        let (r, e) = timed(f);
        results.push((n, name, r, e));
    }
    let (r, e) = timed(criteria_5_and_6);
    let (c5, c6) = r.unwrap_or_else(|msg| (Err(msg.clone()), Err(msg)));
    results.push((5, "resolution and restriction cohomology agree", c5, e));
    results.push((6, "Euler characteristic conservation", c6, e));
    let rest: [(u32, &str, fn()); 3] = [
        (7, "line bundle cohomology", criterion_7),
        (8, "moduli dimension identities", criterion_8),
        (9, "algebra properties", criterion_9),
    ];
    for (n, name, f) in rest {
        let (r, e) = timed(f);
        results.push((n, name, r, e));
    }

    let mut failed = Vec::new();
    for (n, name, r, e) in &results {
        match r {
            Ok(()) => println!("criterion {n}: PASS  {name} ({:.2}s)", e.as_secs_f64()),
            Err(msg) => {
                println!("criterion {n}: FAIL  {name} ({:.2}s): {msg}", e.as_secs_f64());
                failed.push(*n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
