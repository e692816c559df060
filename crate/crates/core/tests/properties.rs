use proptest::prelude::*;

use purespin::bilinear::{
    decompose_momentum, real_momentum, vector_bilinear, Momentum, PairingMode, SignConvention,
};
use purespin::clifford::{build_gamma_rep, GammaRep, Signature};
use purespin::constants::{wyler_alpha_with, Domain, WylerInputs};
use purespin::field::{
    adjoint_residual, em_tensor, minkowski_rep, quad_tensor, two_spinor_momentum, weyl_residual, weyl_solutions, Sign,
};
use purespin::fock::zonal::{chebyshev_u, gegenbauer_zonal};
use purespin::linalg::{max_abs, C64};
use purespin::seeds::rng_from;
use purespin::spinor::{
    is_pure, null_plane_of, random_chiral_spinor, random_pure_spinor, random_spin_element, Chirality, Spinor,
};
use purespin::tolerance::{NULL_TOL, RANK_TOL};

fn c64() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| C64::new(re, im))
}

fn nonzero_c64() -> impl Strategy<Value = C64> {
    c64().prop_filter("nonzero", |z| z.norm() > 1e-2)
}

fn chirality() -> impl Strategy<Value = Chirality> {
    prop_oneof![Just(Chirality::Plus), Just(Chirality::Minus)]
}

fn rep(n: usize) -> GammaRep {
    build_gamma_rep(n, Signature::lorentzian(n)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn purity_is_scale_invariant(n in 1usize..=5, ch in chirality(), seed: u64, pure: bool, c in nonzero_c64()) {
        let rep = rep(n);
        let psi = if pure {
            random_pure_spinor(&rep, ch, seed).unwrap()
        } else {
            random_chiral_spinor(&rep, ch, seed)
        };
        let a = is_pure(&psi, &rep, RANK_TOL).unwrap().pure;
        let b = is_pure(&psi.scaled(c), &rep, RANK_TOL).unwrap().pure;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn null_plane_dimension_is_spin_invariant(n in 4usize..=5, ch in chirality(), seed: u64, pure: bool) {
        let rep = rep(n);
        let psi = if pure {
            random_pure_spinor(&rep, ch, seed).unwrap()
        } else {
            random_chiral_spinor(&rep, ch, seed)
        };
        let s = random_spin_element(&rep, &mut rng_from(seed ^ 0x55), 0.3);
        let d0 = null_plane_of(&psi, &rep, RANK_TOL).unwrap();
        let d1 = null_plane_of(&psi.transformed(&s), &rep, RANK_TOL).unwrap();
        prop_assert_eq!(d0.dim, d1.dim);
        prop_assert!(d0.dim <= n);
        prop_assert_eq!(d0.dim == n, pure);
    }

    #[test]
    fn null_plane_basis_is_totally_null(n in 1usize..=5, ch in chirality(), seed: u64) {
        let rep = rep(n);
        let psi = random_pure_spinor(&rep, ch, seed).unwrap();
        let plane = null_plane_of(&psi, &rep, RANK_TOL).unwrap();
        prop_assert_eq!(plane.dim, n);
        prop_assert!(plane.nullity_residual <= NULL_TOL);
    }

    #[test]
    fn bilinear_is_sesquilinear(n in 1usize..=4, seed: u64, a in c64(), b in c64()) {
        let rep = rep(n);
        let s: Vec<Spinor> = (0..3).map(|k| random_chiral_spinor(&rep, Chirality::None, seed.wrapping_add(k))).collect();
        for mode in PairingMode::ALL {
            let z = |x: &Spinor, y: &Spinor| vector_bilinear(x, y, &rep, mode).unwrap().components;
            let left = Spinor::combine(a, &s[0], b, &s[1]);
            let lhs = z(&left, &s[2]);
            let (z0, z1) = (z(&s[0], &s[2]), z(&s[1], &s[2]));
            let (ca, cb) = match mode {
                PairingMode::LorentzianAdjoint => (a.conj(), b.conj()),
                PairingMode::TransposeIntertwiner => (a, b),
            };
            for k in 0..lhs.len() {
                prop_assert!((lhs[k] - (ca * z0[k] + cb * z1[k])).norm() < 1e-11);
            }
            let right = Spinor::combine(a, &s[0], b, &s[1]);
            let rhs = z(&s[2], &right);
            let (w0, w1) = (z(&s[2], &s[0]), z(&s[2], &s[1]));
            for k in 0..rhs.len() {
                prop_assert!((rhs[k] - (a * w0[k] + b * w1[k])).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn pure_member_forces_nullity(n in 1usize..=5, seed: u64, which in 0usize..3) {
        let rep = rep(n);
        for mode in PairingMode::ALL {
            let phi_ch = purespin::bilinear::compatible_chirality(&rep, mode, Chirality::Plus).unwrap();
            let (psi_pure, phi_pure) = [(true, true), (true, false), (false, true)][which];
            let psi = if psi_pure { random_pure_spinor(&rep, Chirality::Plus, seed).unwrap() }
                else { random_chiral_spinor(&rep, Chirality::Plus, seed) };
            let phi = if phi_pure { random_pure_spinor(&rep, phi_ch, !seed).unwrap() }
                else { random_chiral_spinor(&rep, phi_ch, !seed) };
            let z = vector_bilinear(&psi, &phi, &rep, mode).unwrap();
            if let Some(r) = z.relative_nullity(rep.metric()) {
                prop_assert!(r <= NULL_TOL, "mode {:?} residual {}", mode, r);
            }
        }
    }

    #[test]
    fn momentum_is_real(n in 1usize..=5, ch in chirality(), seed: u64) {
        let rep = rep(n);
        let psi = random_chiral_spinor(&rep, ch, seed);
        prop_assert!(real_momentum(&psi, &rep, 1e-10).is_ok());
    }

    #[test]
    fn decomposition_identities(p in proptest::collection::vec(-3.0f64..3.0, 4..=10), m2 in 0.0f64..4.0) {
        let mut metric = vec![-1.0; p.len()];
        metric[0] = 1.0;
        let mom = Momentum::new(p.clone(), metric).unwrap();
        let d = decompose_momentum(&mom, SignConvention::Plus, 1e-10).unwrap();
        let scale = mom.euclidean_norm_sq().max(1.0);
        prop_assert!(d.identity_residual() <= 1e-12 * scale);
        prop_assert!(d.full_square_residual() <= 1e-12 * scale);
        if let Some(r) = d.sphere_radius(m2) {
            let extras_sq: f64 = d.extras.iter().map(|x| x * x).sum();
            // extras sit on the sphere of this radius exactly when M^2 equals m2
            prop_assert_eq!((r * r - extras_sq).abs() <= 1e-9 * scale, (d.mass_squared - m2).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn two_spinor_momenta_are_null(a in nonzero_c64(), b in c64()) {
        let p = two_spinor_momentum([a, b]).unwrap();
        let p0 = p.components()[0];
        prop_assert!(p0 > 0.0);
        prop_assert!(p.square().abs() <= 1e-12 * p0 * p0);
    }

    #[test]
    fn weyl_solutions_satisfy_both_equations(a in nonzero_c64(), b in c64(), x in c64(), y in c64()) {
        let rep = minkowski_rep();
        let p = two_spinor_momentum([a, b]).unwrap();
        let sol = weyl_solutions(&p, &rep, RANK_TOL).unwrap();
        let scale = p.euclidean_norm_sq().sqrt();
        for s in &sol.spinors {
            prop_assert!(weyl_residual(s, &p, &rep).unwrap() <= 1e-12 * scale);
            prop_assert!(adjoint_residual(s, &p, &rep).unwrap() <= 1e-12 * scale);
        }
        let psi = sol.combination(&[x, y]);
        let bound = 1e-12 * scale * psi.norm().max(1.0);
        prop_assert!(weyl_residual(&psi, &p, &rep).unwrap() <= bound);
        prop_assert!(adjoint_residual(&psi, &p, &rep).unwrap() <= bound);
    }

    #[test]
    fn field_tensors_are_phase_invariant(seed: u64, theta in 0.0f64..6.3) {
        let rep = minkowski_rep();
        let ph = C64::from_polar(1.0, theta);
        let s: Vec<Spinor> = (0..4).map(|k| random_chiral_spinor(&rep, Chirality::None, seed.wrapping_add(k))).collect();
        for sign in [Sign::Plus, Sign::Minus] {
            let f = em_tensor(&s[0], &rep, sign).unwrap();
            let g = em_tensor(&s[0].scaled(ph), &rep, sign).unwrap();
            prop_assert_eq!(f.antisymmetry_residual(), 0.0);
            prop_assert!(max_abs(&(&f.f - &g.f)) <= 1e-12 * max_abs(&f.f).max(1.0));
        }
        let j = quad_tensor([&s[0], &s[1], &s[2], &s[3]], &rep).unwrap();
        let (t0, t1) = (s[0].scaled(ph), s[1].scaled(ph));
        let k = quad_tensor([&t0, &t1, &s[2], &s[3]], &rep).unwrap();
        prop_assert!(max_abs(&(&j.j - &k.j)) <= 1e-12 * max_abs(&j.j).max(1.0));
        let swapped = quad_tensor([&s[2], &s[3], &s[0], &s[1]], &rep).unwrap();
        prop_assert!(max_abs(&(&j.j - swapped.j.transpose())) <= 1e-12);
        prop_assert!(j.rank(RANK_TOL) <= 1);
    }

    #[test]
    fn zonal_recurrence(n in 3usize..40, theta in 0.0f64..std::f64::consts::PI) {
        let x = theta.cos();
        let lhs = gegenbauer_zonal(n, theta);
        let rhs = 2.0 * x * chebyshev_u(n - 1, x) - chebyshev_u(n - 2, x);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * n as f64);
    }

    #[test]
    fn wyler_round_trip(d5 in 0.01f64..10.0, s4 in 1.0f64..100.0, q5 in 1.0f64..100.0) {
        let inputs = WylerInputs::default()
            .with_override("V_D5", d5).unwrap()
            .with_override("S4", s4).unwrap()
            .with_override("v_q5", q5).unwrap();
        let r = wyler_alpha_with(&inputs);
        prop_assert!(r.round_trip_residual <= 1e-12);
        prop_assert!(r.alpha > 0.0);
        prop_assert_eq!(r.overrides, Domain::ALL.to_vec());
    }
}

#[test]
fn gamma_reps_are_bit_deterministic() {
    for n in 1..=6 {
        let a = build_gamma_rep(n, Signature::lorentzian(n)).unwrap();
        let b = build_gamma_rep(n, Signature::lorentzian(n)).unwrap();
        for (x, y) in a.generators().iter().zip(b.generators()) {
            assert!(x.iter().zip(y.iter()).all(|(u, v)| u.re.to_bits() == v.re.to_bits() && u.im.to_bits() == v.im.to_bits()));
        }
    }
}
