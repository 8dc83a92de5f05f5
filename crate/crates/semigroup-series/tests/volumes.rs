use semigroup_series::{
    b_m, b_m_exact, b_m_prime, branch_of, enumerate_semigroup, vol_s, vol_s_closed, vol_s_monte_carlo, vol_s_prime,
    Branch, SemigroupElement,
};

fn el(w: &str) -> SemigroupElement {
    SemigroupElement::from_word(w).unwrap()
}

#[test]
fn quadrature_agrees_with_closed_angular_integral() {
    for e in enumerate_semigroup(40) {
        for xi in [0.1, 0.7, 1.5, 2.2, 3.0, 5.0, 9.0] {
            let q = b_m(&e, xi).unwrap();
            let x = b_m_exact(&e, xi).unwrap();
            assert!((q - x).abs() <= 1e-12, "{} {xi}: {q} {x}", e.word());
        }
    }
}

#[test]
fn derivative_matches_finite_differences() {
    let h = 1e-4;
    let mut seen = [false; 3];
    for w in ["L", "R", "LR", "LLR", "RRL", "LLLR"] {
        let e = el(w);
        for xi in [0.3, 1.0, 2.1, 2.6, 3.5, 4.5, 7.0] {
            let fd = (b_m(&e, xi + h).unwrap() - b_m(&e, xi - h).unwrap()) / (2.0 * h);
            let exact = b_m_prime(&e, xi).unwrap();
            let b = branch_of(&e, xi);
            seen[b as usize] = true;
            assert!(((fd - exact) / exact).abs() <= 1e-6, "{w} {xi} {b:?}: {fd} vs {exact}");
        }
    }
    assert!(seen.iter().all(|s| *s));
    assert_eq!(branch_of(&el("L"), 2.1), Branch::Middle);
}

#[test]
fn monotone_in_xi() {
    for e in enumerate_semigroup(30) {
        let mut prev = 0.0;
        for k in 1..60 {
            let v = b_m_exact(&e, 0.1 * k as f64).unwrap();
            assert!(v >= prev);
            assert!(b_m_prime(&e, 0.1 * k as f64).unwrap() >= 0.0);
            prev = v;
        }
    }
}

#[test]
fn eta_symmetry() {
    for e in enumerate_semigroup(300) {
        let f = e.eta();
        for xi in [0.5, 2.0, 4.0] {
            assert!((b_m(&e, xi).unwrap() - b_m(&f, xi).unwrap()).abs() <= 1e-10);
            assert!((vol_s(&e, xi).unwrap() - vol_s(&f, xi).unwrap()).abs() <= 1e-10);
        }
    }
}

#[test]
fn closed_volume_matches_general_quadrature() {
    for e in enumerate_semigroup(200) {
        for xi in [0.1, 0.25, 0.5, 1.0] {
            if xi > e.z as f64 {
                continue;
            }
            let a = vol_s_closed(&e, xi).unwrap();
            let b = vol_s(&e, xi).unwrap();
            assert!((a - b).abs() <= 1e-12, "{} {xi}: {a} {b}", e.word());
        }
    }
}

#[test]
fn closed_volume_depends_only_on_trace() {
    // LLR and LRR share T
    let (a, b) = (el("LLR"), el("LRR"));
    assert_eq!(a.t, b.t);
    assert!((vol_s_closed(&a, 0.5).unwrap() - vol_s_closed(&b, 0.5).unwrap()).abs() < 1e-14);
}

#[test]
fn volume_bound() {
    for e in enumerate_semigroup(400) {
        for xi in [0.25, 1.0, 3.0, 8.0] {
            let v = vol_s(&e, xi).unwrap();
            let t = e.t as f64;
            assert!(v <= 2.0 * xi / (t * t), "{} {xi}: {v}", e.word());
        }
    }
}

#[test]
fn monte_carlo_volume() {
    for (w, xi) in [("L", 1.0), ("LR", 0.5)] {
        let e = el(w);
        let (m, se) = vol_s_monte_carlo(&e, xi, 2_000_000, 7);
        let v = vol_s(&e, xi).unwrap();
        assert!((m - v).abs() <= 4.0 * se, "{w} {xi}: {m} ± {se} vs {v}");
    }
}

#[test]
fn nested_area_relation() {
    // B_M(ξ) = (π/4) · area at t = 0 with ξ/2
    for e in enumerate_semigroup(50) {
        for xi in [0.5, 2.0, 3.0] {
            let a = semigroup_series::area_s(&e, xi / 2.0, 0.0);
            let b = b_m_exact(&e, xi).unwrap();
            assert!((std::f64::consts::FRAC_PI_4 * a - b).abs() < 1e-15);
        }
    }
}

#[test]
fn volume_derivative_matches_finite_differences() {
    let h = 1e-4;
    for w in ["L", "LR", "LLR", "RRRL", "LRLR"] {
        let e = el(w);
        for xi in [0.2, 0.9, 1.3, 2.0, 3.1, 4.4] {
            let fd = (vol_s(&e, xi + h).unwrap() - vol_s(&e, xi - h).unwrap()) / (2.0 * h);
            let exact = vol_s_prime(&e, xi).unwrap();
            assert!((fd - exact).abs() <= 1e-7 * exact.max(1e-3), "{w} {xi}: {fd} vs {exact}");
        }
    }
}
