use liepoisson::group::{adjoint_apply, adjoint_matrix, coadjoint_apply, exp};
use liepoisson::{DualVector, LieAlgebra};
use proptest::prelude::*;

fn vec3() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0_f64, 3)
}

fn vec8() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.5..1.5_f64, 8)
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn alg(name: &str) -> LieAlgebra {
    LieAlgebra::builtin(name).unwrap()
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric_and_jacobi(x in vec3(), y in vec3(), z in vec3()) {
        for name in ["so3", "su2"] {
            let g = alg(name);
            let xy = g.bracket_vectors(&x, &y).unwrap();
            let yx = g.bracket_vectors(&y, &x).unwrap();
            prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).abs() < 1e-12));
            let j1 = g.bracket_vectors(&x, &g.bracket_vectors(&y, &z).unwrap()).unwrap();
            let j2 = g.bracket_vectors(&y, &g.bracket_vectors(&z, &x).unwrap()).unwrap();
            let j3 = g.bracket_vectors(&z, &xy).unwrap();
            let s: Vec<f64> = (0..3).map(|i| j1[i] + j2[i] + j3[i]).collect();
            prop_assert!(s.iter().all(|v| v.abs() < 1e-10));
        }
    }

    #[test]
    fn exp_stays_in_group(x in vec8()) {
        let su3 = alg("su3");
        let g = exp(&su3, &x).unwrap();
        prop_assert!(g.membership_defect(su3.group_kind()) < 1e-10);
    }

    #[test]
    fn adjoint_is_a_homomorphism(a in vec3(), b in vec3(), x in vec3(), y in vec3()) {
        let su2 = alg("su2");
        let (g, h) = (exp(&su2, &a).unwrap(), exp(&su2, &b).unwrap());
        let gh = adjoint_matrix(&su2, &g.mul(&h)).unwrap();
        let prod = adjoint_matrix(&su2, &g).unwrap() * adjoint_matrix(&su2, &h).unwrap();
        prop_assert!((gh - prod).amax() < 1e-10);
        // Ad(g)[x, y] = [Ad(g)x, Ad(g)y]
        let lhs = adjoint_apply(&su2, &g, &su2.bracket_vectors(&x, &y).unwrap()).unwrap();
        let rhs = su2
            .bracket_vectors(&adjoint_apply(&su2, &g, &x).unwrap(), &adjoint_apply(&su2, &g, &y).unwrap())
            .unwrap();
        prop_assert!(max_diff(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn killing_form_is_ad_invariant(a in vec8()) {
        let su3 = alg("su3");
        let ad = adjoint_matrix(&su3, &exp(&su3, &a).unwrap()).unwrap();
        let k = su3.killing_form();
        prop_assert!((ad.transpose() * &k * &ad - &k).amax() < 1e-9);
    }

    #[test]
    fn casimir_is_constant_on_coadjoint_orbits(a in vec3(), xi in vec3()) {
        for name in ["so3", "su2"] {
            let g = alg(name);
            let xi = DualVector(xi.clone());
            let moved = coadjoint_apply(&g, &exp(&g, &a).unwrap(), &xi).unwrap();
            let (c0, c1) = (g.quadratic_casimir(&xi).unwrap(), g.quadratic_casimir(&moved).unwrap());
            prop_assert!((c0 - c1).abs() < 1e-10 * (1.0 + c0.abs()));
        }
    }

    #[test]
    fn ad_star_pairs_with_bracket(x in vec3(), y in vec3(), xi in vec3()) {
        let so3 = alg("so3");
        let xi = DualVector(xi);
        let lhs = so3.ad_star(&x, &xi).unwrap().pair(&y);
        let rhs = xi.pair(&so3.bracket_vectors(&x, &y).unwrap());
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }
}

#[test]
fn abelian_algebra_has_no_casimir() {
    let u1 = alg("u1");
    assert!(u1.is_abelian());
    assert_eq!(u1.killing_form()[(0, 0)], 0.0);
    assert!(u1.inverse_form().is_err());
}
