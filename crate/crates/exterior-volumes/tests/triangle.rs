use exterior_volumes::{linear_chain, triangle_map, triangle_map_inverse, upsilon, upsilon_in_cylinder, TrianglePoint};
use lattice_enum::farey::next_denominator;
use lattice_enum::farey_sequence;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn random_triangle_point(rng: &mut ChaCha8Rng) -> TrianglePoint {
    loop {
        let x = 1.0 - rng.gen::<f64>();
        let y = 1.0 - rng.gen::<f64>();
        if x + y > 1.0 {
            return TrianglePoint::new(x, y);
        }
    }
}

#[test]
fn inverse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let p = random_triangle_point(&mut rng);
        let q = triangle_map(triangle_map_inverse(p).unwrap()).unwrap();
        assert!((q.x - p.x).abs() <= 1e-12 && (q.y - p.y).abs() <= 1e-12, "{p:?} -> {q:?}");
        let r = triangle_map_inverse(triangle_map(p).unwrap()).unwrap();
        assert!((r.x - p.x).abs() <= 1e-12 && (r.y - p.y).abs() <= 1e-12, "{p:?} -> {r:?}");
        assert!(triangle_map(p).unwrap().in_triangle());
    }
}

/// Images of uniform points of the triangle, binned on a 50×50 grid: cells on the
/// diagonal are half inside, so they expect half as many points.
#[test]
fn measure_preservation_chi_squared() {
    const N: usize = 1_000_000;
    const G: usize = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut counts = vec![0u64; G * G];
    for _ in 0..N {
        let q = triangle_map(random_triangle_point(&mut rng)).unwrap();
        let i = ((q.x * G as f64) as usize).min(G - 1);
        let j = ((q.y * G as f64) as usize).min(G - 1);
        counts[i * G + j] += 1;
    }
    let mut chi2 = 0.0;
    let mut cells = 0;
    for i in 0..G {
        for j in 0..G {
            let c = counts[i * G + j] as f64;
            if i + j + 1 < G {
                assert_eq!(c, 0.0, "image outside the triangle in cell ({i},{j})");
                continue;
            }
            let share = if i + j + 1 == G { 1.0 } else { 2.0 };
            let expected = N as f64 * share / (G * G) as f64;
            chi2 += (c - expected).powi(2) / expected;
            cells += 1;
        }
    }
    assert_eq!(cells, 1275);
    let crit = ChiSquared::new((cells - 1) as f64).unwrap().inverse_cdf(0.99);
    assert!(chi2 <= crit, "chi2 {chi2} > {crit}");
}

/// `Q·L_i(q/Q, q′/Q)` walks the denominators of `F_Q` from the neighbours `(q, q′)`.
#[test]
fn chain_reproduces_farey_denominators() {
    for order in 2..=100i64 {
        let f = farey_sequence(order);
        let qs: Vec<i64> = f.iter().map(|t| t.q).collect();
        for start in 0..qs.len().saturating_sub(5) {
            let (q, qq) = (qs[start], qs[start + 1]);
            let ell = 3;
            let closing = (order + qs[start + ell]) / qs[start + ell + 1];
            let qf = order as f64;
            let chain = linear_chain(q as f64 / qf, qq as f64 / qf, ell, closing).unwrap();
            for i in -1..=(ell as i64 + 1) {
                let expect = qs[(start as i64 + i + 1) as usize];
                let got = chain.at(i) * qf;
                assert_eq!(got.round() as i64, expect, "Q={order} start={start} i={i}");
                assert!((got - expect as f64).abs() < 1e-9);
            }
            for (n, &k) in chain.ks.iter().enumerate() {
                let prev = qs[start + n];
                let cur = qs[start + n + 1];
                assert_eq!(k * cur - prev, next_denominator(order, prev, cur));
            }
        }
    }
}

#[test]
fn chain_on_random_neighbours_q20() {
    let f = farey_sequence(20);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let s = rng.gen_range(0..f.len() - 4);
        let chain = linear_chain(f[s].q as f64 / 20.0, f[s + 1].q as f64 / 20.0, 2, 1);
        if let Ok(c) = chain {
            assert_eq!((c.at(1) * 20.0).round() as i64, f[s + 2].q);
            assert_eq!((c.at(2) * 20.0).round() as i64, f[s + 3].q);
        }
    }
}

#[test]
fn homogeneity_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut n = 0;
    while n < 10_000 {
        let (x, y) = (1.0 - rng.gen::<f64>(), 1.0 - rng.gen::<f64>());
        let k = rng.gen_range(1..5i64);
        let r = 0.05 + 0.95 * rng.gen::<f64>();
        // no digits: the closed form is a rational function
        if let (Ok(u), Ok(v)) = (upsilon(x, y, 0, k), upsilon(r * x, r * y, 0, k)) {
            assert!((v * r * r - u).abs() <= 1e-10 * u, "{x} {y} {k} {r}");
        }
        // with digits: homogeneous within the cylinder of the unscaled point
        if let Ok(c) = linear_chain(x, y, 2, k) {
            let u = upsilon_in_cylinder(x, y, &c.ks, k);
            assert!((u - c.upsilon()).abs() <= 1e-12 * u);
            let v = upsilon_in_cylinder(r * x, r * y, &c.ks, k);
            assert!((v * r * r - u).abs() <= 1e-10 * u);
        }
        n += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn images_stay_in_triangle(x in 0.001f64..=1.0, u in 0.0f64..1.0) {
        let y = 1.0 - x * u;
        let p = TrianglePoint::new(x, y);
        let q = triangle_map(p).unwrap();
        prop_assert!(q.in_triangle());
        let back = triangle_map_inverse(q).unwrap();
        prop_assert!((back.x - x).abs() <= 1e-12 && (back.y - y).abs() <= 1e-12);
    }

    #[test]
    fn chain_invariants(x in 0.001f64..=1.0, y in 0.001f64..=1.0, ell in 0usize..6, k in 1i64..6) {
        if let Ok(c) = linear_chain(x, y, ell, k) {
            for i in 0..=ell as i64 {
                prop_assert!(c.at(i) > 0.0 && c.at(i) <= 1.0 + 1e-12);
            }
            for i in 1..=ell as i64 {
                prop_assert!(c.at(i - 1) + c.at(i) > 1.0);
                prop_assert!((c.at(i) - (c.ks[(i - 1) as usize] as f64 * c.at(i - 1) - c.at(i - 2))).abs() < 1e-15);
            }
            prop_assert!(c.last() > 0.0);
            prop_assert!(c.upsilon() > 0.0);
        }
    }
}
