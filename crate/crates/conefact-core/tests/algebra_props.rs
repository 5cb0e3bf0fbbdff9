//! Randomized property checks for the algebra operations: Jordan identity,
//! inner-product associativity, spectral decompositions, powers, the
//! quadratic representation, and the geometric mean.

mod common;

use common::{arbitrary, interior, rng, test_structures};
use conefact_core::operator::{lyapunov_matrix, quad_matrix};
use conefact_core::spectral::{geometric_mean, in_cone, min_eigenvalue, power, spectral};
use conefact_core::Element;

const N_INSTANCES: usize = 200;

#[test]
fn jordan_product_commutes_exactly() {
    let mut r = rng(1);
    for s in test_structures() {
        for _ in 0..N_INSTANCES {
            let x = arbitrary(&s, &mut r);
            let y = arbitrary(&s, &mut r);
            let xy = x.jordan_product(&y).unwrap();
            let yx = y.jordan_product(&x).unwrap();
            assert_eq!(xy, yx);
        }
    }
}

#[test]
fn jordan_identity_holds() {
    let mut r = rng(2);
    for s in test_structures() {
        for _ in 0..N_INSTANCES {
            let x = arbitrary(&s, &mut r);
            let y = arbitrary(&s, &mut r);
            let x2 = x.jordan_product(&x).unwrap();
            let lhs = x2.jordan_product(&x.jordan_product(&y).unwrap()).unwrap();
            let rhs = x.jordan_product(&x2.jordan_product(&y).unwrap()).unwrap();
            let scale = 1.0 + lhs.norm().max(rhs.norm());
            assert!(lhs.sub(&rhs).unwrap().norm() / scale < 1e-10);
        }
    }
}

#[test]
fn inner_product_is_associative() {
    let mut r = rng(3);
    for s in test_structures() {
        for _ in 0..N_INSTANCES {
            let x = arbitrary(&s, &mut r);
            let y = arbitrary(&s, &mut r);
            let z = arbitrary(&s, &mut r);
            let lhs = x.jordan_product(&y).unwrap().inner(&z).unwrap();
            let rhs = y.inner(&x.jordan_product(&z).unwrap()).unwrap();
            assert!((lhs - rhs).abs() / (1.0 + lhs.abs()) < 1e-10);
        }
    }
}

#[test]
fn inner_equals_trace_of_product() {
    let mut r = rng(4);
    for s in test_structures() {
        for _ in 0..N_INSTANCES {
            let x = arbitrary(&s, &mut r);
            let y = arbitrary(&s, &mut r);
            let direct = x.inner(&y).unwrap();
            let via_trace = x.jordan_product(&y).unwrap().trace();
            assert!((direct - via_trace).abs() / (1.0 + direct.abs()) < 1e-12);
        }
    }
}

#[test]
fn spectral_reconstruction_and_frame_axioms() {
    let mut r = rng(5);
    for s in test_structures() {
        for _ in 0..N_INSTANCES {
            let x = arbitrary(&s, &mut r);
            let tol = 1e-9 * (1.0 + x.norm());
            let dec = spectral(&x).unwrap();
            assert!(dec.reconstruct().sub(&x).unwrap().norm() < tol);

            let e = Element::identity(&s);
            for (bi, bs) in dec.blocks().iter().enumerate() {
                let kind = s.blocks()[bi];
                let frame: Vec<Element<f64>> = bs
                    .frame
                    .iter()
                    .map(|c| {
                        // embed the block idempotent into the full algebra
                        let mut blocks: Vec<_> = Element::<f64>::zero(&s)
                            .blocks()
                            .to_vec();
                        blocks[bi] = c.clone();
                        let _ = kind;
                        Element::new(s.clone(), blocks).unwrap()
                    })
                    .collect();
                let mut sum = Element::zero(&s);
                for (i, ci) in frame.iter().enumerate() {
                    // idempotence
                    let sq = ci.jordan_product(ci).unwrap();
                    assert!(sq.sub(ci).unwrap().norm() < 1e-9);
                    // orthogonality
                    for cj in frame.iter().skip(i + 1) {
                        assert!(ci.jordan_product(cj).unwrap().norm() < 1e-9);
                    }
                    sum = sum.add(ci).unwrap();
                }
                // frames of different blocks sum to the block component of e
                let mut e_block = Element::<f64>::zero(&s).blocks().to_vec();
                e_block[bi] = e.blocks()[bi].clone();
                let e_block = Element::new(s.clone(), e_block).unwrap();
                assert!(sum.sub(&e_block).unwrap().norm() < 1e-9);
            }
        }
    }
}

#[test]
fn power_laws() {
    let mut r = rng(6);
    for s in test_structures() {
        for _ in 0..N_INSTANCES {
            let x = interior(&s, &mut r);
            // sqrt squared
            let sqrt = power(&x, 0.5).unwrap();
            let back = power(&sqrt, 2.0).unwrap();
            assert!(back.sub(&x).unwrap().norm() / (1.0 + x.norm()) < 1e-8);
            // inverse via quadratic representation: P(x) x^{-1} = x
            let inv = power(&x, -1.0).unwrap();
            let px = x.quad_apply(&inv).unwrap();
            assert!(px.sub(&x).unwrap().norm() / (1.0 + x.norm()) < 1e-8);
            // x o x^{-1} = e
            let e = Element::identity(&s);
            assert!(x.jordan_product(&inv).unwrap().sub(&e).unwrap().norm() < 1e-8);
            // powers of one and zero
            assert_eq!(power(&x, 1.0).unwrap(), x);
            assert_eq!(power(&x, 0.0).unwrap(), e);
        }
    }
}

#[test]
fn quad_identity_operator() {
    let mut r = rng(7);
    for s in test_structures() {
        let e = Element::identity(&s);
        for _ in 0..50 {
            let y = arbitrary(&s, &mut r);
            let py = e.quad_apply(&y).unwrap();
            assert!(py.sub(&y).unwrap().norm() < 1e-12);
        }
    }
}

#[test]
fn quad_operator_composition_rule() {
    // P(P(x) y) = P(x) P(y) P(x) as matrices
    let mut r = rng(8);
    for s in test_structures() {
        for _ in 0..40 {
            let x = interior(&s, &mut r);
            let y = interior(&s, &mut r);
            let pxy = x.quad_apply(&y).unwrap();
            let lhs = quad_matrix(&pxy);
            let px = quad_matrix(&x);
            let py = quad_matrix(&y);
            let rhs = px.compose(&py).unwrap().compose(&px).unwrap();
            let scale = 1.0 + rhs.matrix().frobenius_norm();
            assert!(lhs.sub(&rhs).unwrap().matrix().frobenius_norm() / scale < 1e-8);
        }
    }
}

#[test]
fn quad_operator_power_rule() {
    // (P(x))^a = P(x^a) for a in {2, 1/2, -1}
    let mut r = rng(9);
    for s in test_structures() {
        for _ in 0..40 {
            let x = interior(&s, &mut r);
            let px = quad_matrix(&x);
            let scale = 1.0 + px.matrix().frobenius_norm();

            let sq = px.compose(&px).unwrap();
            let via = quad_matrix(&power(&x, 2.0).unwrap());
            assert!(sq.sub(&via).unwrap().matrix().frobenius_norm() / (scale * scale) < 1e-8);

            let root = px.sqrt_psd().unwrap();
            let via = quad_matrix(&power(&x, 0.5).unwrap());
            assert!(root.sub(&via).unwrap().matrix().frobenius_norm() / scale < 1e-8);

            // P(x^{-1}) P(x) = I
            let via = quad_matrix(&power(&x, -1.0).unwrap());
            let prod = via.compose(&px).unwrap();
            let eye = quad_matrix(&Element::identity(&s));
            assert!(prod.sub(&eye).unwrap().matrix().frobenius_norm() < 1e-6 * scale);
        }
    }
}

#[test]
fn quad_maps_cone_to_cone() {
    let mut r = rng(10);
    for s in test_structures() {
        for _ in 0..N_INSTANCES {
            let x = interior(&s, &mut r);
            let y = interior(&s, &mut r);
            let image = x.quad_apply(&y).unwrap();
            assert!(in_cone(&image, 1e-8 * (1.0 + image.norm())).unwrap());
        }
    }
}

#[test]
fn quad_matrix_psd_on_cone_and_pd_on_interior() {
    let mut r = rng(11);
    for s in test_structures() {
        for _ in 0..60 {
            let x = interior(&s, &mut r);
            let q = quad_matrix(&x);
            assert!(q.min_eigenvalue().unwrap() > 0.0);
            // symmetry of P(x) and L(x)
            let m = q.matrix();
            assert!(m.sub(&m.transpose()).frobenius_norm() < 1e-12);
            let l = lyapunov_matrix(&x);
            assert!(l.matrix().sub(&l.matrix().transpose()).frobenius_norm() < 1e-12);
        }
    }
}

#[test]
fn sym_quad_apply_is_congruence() {
    // P(X) Y = X Y X via the dense product
    use conefact_core::linalg::Mat;
    use conefact_core::BlockData;
    let mut r = rng(12);
    let s = common::sym(3);
    for _ in 0..N_INSTANCES {
        let x = arbitrary(&s, &mut r);
        let y = arbitrary(&s, &mut r);
        let (xm, ym) = match (&x.blocks()[0], &y.blocks()[0]) {
            (BlockData::Sym(a), BlockData::Sym(b)) => (a.clone(), b.clone()),
            _ => unreachable!(),
        };
        let oracle: Mat<f64> = xm.matmul(&ym).matmul(&xm);
        let got = x.quad_apply(&y).unwrap();
        match &got.blocks()[0] {
            BlockData::Sym(g) => {
                assert!(g.sub(&oracle).frobenius_norm() / (1.0 + oracle.frobenius_norm()) < 1e-12)
            }
            _ => unreachable!(),
        }
    }
}

#[test]
fn geometric_mean_identities() {
    let mut r = rng(13);
    for s in test_structures() {
        for _ in 0..60 {
            let x = interior(&s, &mut r);
            let y = interior(&s, &mut r);
            let m = geometric_mean(&x, &y).unwrap();
            let scale = 1.0 + y.norm();

            // defining relation P(x#y) x^{-1} = y
            let x_inv = power(&x, -1.0).unwrap();
            let image = m.quad_apply(&x_inv).unwrap();
            assert!(image.sub(&y).unwrap().norm() / scale < 1e-8);

            // symmetry
            let m2 = geometric_mean(&y, &x).unwrap();
            assert!(m.sub(&m2).unwrap().norm() / (1.0 + m.norm()) < 1e-8);

            // inverse rule (x#y)^{-1} = x^{-1} # y^{-1}
            let lhs = power(&m, -1.0).unwrap();
            let rhs = geometric_mean(&x_inv, &power(&y, -1.0).unwrap()).unwrap();
            assert!(lhs.sub(&rhs).unwrap().norm() / (1.0 + lhs.norm()) < 1e-8);

            // x # e = sqrt(x)
            let e = Element::identity(&s);
            let me = geometric_mean(&x, &e).unwrap();
            assert!(me.sub(&power(&x, 0.5).unwrap()).unwrap().norm() < 1e-8 * (1.0 + x.norm()));
        }
    }
}

#[test]
fn min_eigenvalue_of_identity() {
    for s in test_structures() {
        let e = Element::<f64>::identity(&s);
        assert!((min_eigenvalue(&e).unwrap() - 1.0).abs() < 1e-14);
    }
}
