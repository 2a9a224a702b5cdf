use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use udode_core::elliptic::{jacobi_sncndn, EllipticParam};
use udode_core::smodule::CnPowerJet;
use udode_symverify::poly::rat;
use udode_symverify::{symbolic_g_derivatives, ElementRing, Exponent};

#[test]
fn symbolic_derivatives_match_the_numeric_jet() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let k: i64 = rng.gen_range(0..16);
        let n: u32 = rng.gen_range(4..=12);
        let x: f64 = rng.gen_range(-5.0..5.0);
        let m = EllipticParam::new(k as f64 / 16.0).unwrap();
        let t = jacobi_sncndn(x, m).unwrap();

        let jet = CnPowerJet::new(n, m, 3);
        let ring = ElementRing::new(rat(k, 16), Exponent::Integer(n)).unwrap();
        let sym = symbolic_g_derivatives(&ring);
        for (order, p) in [&sym.g, &sym.g1, &sym.g2, &sym.g3].into_iter().enumerate() {
            let want = jet.eval(&t, order);
            let got = p.eval(t.s, t.c, t.d, n as f64);
            let scale = want.abs().max(1e-6);
            assert!(
                (got - want).abs() <= 1e-9 * scale,
                "n={n} m={k}/16 x={x} order={order}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn symbolic_exponent_agrees_with_integer_exponent() {
    let sym = symbolic_g_derivatives(&ElementRing::new(rat(1, 2), Exponent::Symbolic).unwrap());
    let m = EllipticParam::HALF;
    for n in [4u32, 7, 11] {
        let int = symbolic_g_derivatives(&ElementRing::new(rat(1, 2), Exponent::Integer(n)).unwrap());
        let t = jacobi_sncndn(0.9, m).unwrap();
        for (a, b) in [(&sym.g3, &int.g3), (&sym.g2, &int.g2)] {
            let (va, vb) = (a.eval(t.s, t.c, t.d, n as f64), b.eval(t.s, t.c, t.d, n as f64));
            assert!((va - vb).abs() <= 1e-12 * vb.abs().max(1.0));
        }
    }
}

#[test]
fn second_derivative_n5_matches_finite_difference() {
    let m = EllipticParam::HALF;
    let ring = ElementRing::new(rat(1, 2), Exponent::Integer(5)).unwrap();
    let g2 = symbolic_g_derivatives(&ring).g2;
    let x = 0.7;
    let h = 1e-4;
    let g = |x: f64| jacobi_sncndn(x, m).unwrap().c.powi(5);
    let fd = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
    let t = jacobi_sncndn(x, m).unwrap();
    assert!((g2.eval(t.s, t.c, t.d, 5.0) - fd).abs() < 1e-6);
}
