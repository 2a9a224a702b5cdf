use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use udode_core::elliptic::{complete_k, jacobi_derivatives, jacobi_sncndn, EllipticParam};

const PARAMS: [f64; 4] = [0.0, 0.25, 0.5, 0.75];

fn points(seed: u64, count: usize, span: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(-span..span)).collect()
}

#[test]
fn pythagorean_and_modular_identities() {
    for m in PARAMS {
        let m = EllipticParam::new(m).unwrap();
        for x in points(1, 1000, 20.0) {
            let t = jacobi_sncndn(x, m).unwrap();
            assert!(t.pythagorean_defect().abs() <= 1e-12, "x={x}");
            assert!(t.modular_defect(m).abs() <= 1e-12, "x={x}");
        }
    }
}

#[test]
fn zero_parameter_is_trigonometric() {
    for x in points(2, 1000, 50.0) {
        let t = jacobi_sncndn(x, EllipticParam::ZERO).unwrap();
        assert!((t.s - x.sin()).abs() <= 1e-12);
        assert!((t.c - x.cos()).abs() <= 1e-12);
        assert_eq!(t.d, 1.0);
    }
}

#[test]
fn periodicity_and_parity() {
    for m in PARAMS {
        let m = EllipticParam::new(m).unwrap();
        let k = complete_k(m);
        for x in points(3, 200, 10.0) {
            let t = jacobi_sncndn(x, m).unwrap();
            let p = jacobi_sncndn(x + 4.0 * k, m).unwrap();
            let h = jacobi_sncndn(x + 2.0 * k, m).unwrap();
            let r = jacobi_sncndn(-x, m).unwrap();
            assert!((t.s - p.s).abs() < 1e-11 && (t.c - p.c).abs() < 1e-11 && (t.d - p.d).abs() < 1e-11);
            assert!((t.s + h.s).abs() < 1e-11 && (t.c + h.c).abs() < 1e-11 && (t.d - h.d).abs() < 1e-11);
            assert!((t.s + r.s).abs() < 1e-14 && (t.c - r.c).abs() < 1e-14 && (t.d - r.d).abs() < 1e-14);
        }
    }
}

#[test]
fn derivatives_match_central_differences() {
    let h = 1e-5;
    for m in PARAMS {
        let m = EllipticParam::new(m).unwrap();
        for x in points(4, 200, 8.0) {
            let t = jacobi_sncndn(x, m).unwrap();
            let (ds, dc, dd) = jacobi_derivatives(&t, m);
            let a = jacobi_sncndn(x + h, m).unwrap();
            let b = jacobi_sncndn(x - h, m).unwrap();
            assert!((ds - (a.s - b.s) / (2.0 * h)).abs() < 1e-8);
            assert!((dc - (a.c - b.c) / (2.0 * h)).abs() < 1e-8);
            assert!((dd - (a.d - b.d) / (2.0 * h)).abs() < 1e-8);
        }
    }
}

#[test]
fn half_parameter_at_quarter_period() {
    let m = EllipticParam::HALF;
    let t = jacobi_sncndn(complete_k(m), m).unwrap();
    assert!((t.s - 1.0).abs() <= 1e-12);
    assert!(t.c.abs() <= 1e-12);
    assert!((t.d - 0.5f64.sqrt()).abs() <= 1e-12);
}
