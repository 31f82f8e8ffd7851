//! Randomized identities of the closed-subspace lattice, with independent
//! oracles for the projection identities: the image of a projection is
//! computed both by the lattice formula and as the span of projected basis
//! vectors, and the preimage both by the formula and as a kernel through the
//! ortho/span primitives.

mod common;

use common::*;
use hdql::linalg::{CMatrix, CVector};
use hdql::subspace::Subspace;
use proptest::prelude::*;
use rand::Rng;

const TOL: f64 = 1e-8;

#[test]
fn double_orthocomplement_is_identity() {
    let mut rng = rng(101);
    for dim in [2usize, 3, 4, 8] {
        for _ in 0..50 {
            let s = random_subspace(&mut rng, dim, None);
            let back = s.orthocomplement(EPS).orthocomplement(EPS);
            assert!(s.approx_eq(&back, TOL));
        }
    }
}

#[test]
fn direct_sum_agrees_with_combined_span() {
    let mut rng = rng(102);
    for dim in [2usize, 3, 4, 8] {
        for _ in 0..50 {
            let s = random_subspace(&mut rng, dim, None);
            let t = random_subspace(&mut rng, dim, None);
            let sum = s.direct_sum(&t, EPS).unwrap();
            let mut gens: Vec<CVector> = s.basis().to_vec();
            gens.extend(t.basis().iter().cloned());
            let spanned = Subspace::span(dim, &gens, EPS).unwrap();
            assert!(sum.approx_eq(&spanned, TOL));
        }
    }
}

#[test]
fn local_closure_equals_global_closure() {
    // for S ⊆ T: S = T ∩ (T ∩ S⊥)⊥
    let mut rng = rng(103);
    for dim in [2usize, 3, 4, 8] {
        for _ in 0..50 {
            let t = random_subspace(&mut rng, dim, None);
            let s = random_subspace_inside(&mut rng, &t);
            let local = t
                .meet(&s.orthocomplement(EPS), EPS)
                .unwrap()
                .orthocomplement(EPS)
                .meet(&t, EPS)
                .unwrap();
            assert!(local.approx_eq(&s, TOL));
        }
    }
}

#[test]
fn subspace_plus_complement_is_everything() {
    let mut rng = rng(104);
    for dim in [2usize, 3, 4, 8] {
        for _ in 0..50 {
            let s = random_subspace(&mut rng, dim, None);
            let whole = s.direct_sum(&s.orthocomplement(EPS), EPS).unwrap();
            assert!(whole.is_full());
        }
    }
}

#[test]
fn projection_image_matches_projected_basis() {
    let mut rng = rng(105);
    for dim in [2usize, 3, 4, 8] {
        for _ in 0..50 {
            let s = random_subspace(&mut rng, dim, None);
            let t = random_subspace(&mut rng, dim, None);
            let image = s.image_of_projection(&t, EPS).unwrap();
            let projected: Vec<CVector> = t
                .basis()
                .iter()
                .map(|b| s.project(b).unwrap())
                .collect();
            let oracle = Subspace::span(dim, &projected, EPS).unwrap();
            assert!(image.approx_eq(&oracle, TOL));
        }
    }
}

/// Kernel of a matrix through the span/ortho primitives: ker(M) = range(M†)⊥.
fn kernel(m: &CMatrix) -> Subspace {
    let adj = m.adjoint();
    let cols: Vec<CVector> = (0..m.dim()).map(|j| adj.column(j)).collect();
    Subspace::span(m.dim(), &cols, EPS).unwrap().orthocomplement(EPS)
}

#[test]
fn projection_preimage_matches_kernel_oracle() {
    // {w | P_S w ∈ T} is the kernel of (I − P_T)·P_S
    let mut rng = rng(106);
    for dim in [2usize, 3, 4, 8] {
        for _ in 0..50 {
            let s = random_subspace(&mut rng, dim, None);
            let t = random_subspace(&mut rng, dim, None);
            let pre = s.preimage_of_projection(&t, EPS).unwrap();
            let rejector = CMatrix::identity(dim)
                .sub(t.projector())
                .unwrap()
                .mul(s.projector())
                .unwrap();
            assert!(pre.approx_eq(&kernel(&rejector), TOL));
        }
    }
}

#[test]
fn preimage_membership_agrees_pointwise() {
    let mut rng = rng(107);
    let mut checked = 0;
    while checked < 500 {
        let dim = *[2usize, 3, 4, 8].iter().nth(checked % 4).unwrap();
        let s = random_subspace(&mut rng, dim, None);
        let t = random_subspace(&mut rng, dim, None);
        let pre = s.preimage_of_projection(&t, EPS).unwrap();
        // a state inside the preimage projects into T
        let w_in = state_in(&mut rng, &pre);
        assert!(t.contains(&s.project(&w_in).unwrap(), 1e-7).unwrap());
        // a random state agrees both ways
        let w = random_vector(&mut rng, dim);
        let lhs = pre.contains(&w, EPS).unwrap();
        let rhs = t.contains(&s.project(&w).unwrap(), EPS).unwrap();
        assert_eq!(lhs, rhs);
        checked += 1;
    }
}

#[test]
fn sasaki_hook_is_the_projection_preimage() {
    let mut rng = rng(108);
    for dim in [2usize, 3, 4] {
        for _ in 0..30 {
            let s = random_subspace(&mut rng, dim, None);
            let t = random_subspace(&mut rng, dim, None);
            assert!(s
                .sasaki_hook(&t, EPS)
                .unwrap()
                .approx_eq(&s.preimage_of_projection(&t, EPS).unwrap(), TOL));
        }
    }
}

#[test]
fn projection_splits_every_vector() {
    let mut rng = rng(109);
    for dim in [2usize, 3, 4, 8] {
        for _ in 0..50 {
            let s = random_subspace(&mut rng, dim, None);
            let w = random_vector(&mut rng, dim);
            let p = s.project(&w).unwrap();
            let q = s.orthocomplement(EPS).project(&w).unwrap();
            assert!(p.add(&q).unwrap().approx_eq(&w, 1e-9));
            assert!(s.contains(&p, 1e-7).unwrap());
        }
    }
}

#[test]
fn measure_outputs_are_unit_and_inside() {
    let mut rng = rng(110);
    for dim in [2usize, 3, 4, 8] {
        for _ in 0..50 {
            let rank = rng.gen_range(1..=dim);
            let s = random_subspace(&mut rng, dim, Some(rank));
            let w = random_state(&mut rng, dim);
            if let Some(out) = s.measure(&w, EPS).unwrap() {
                assert!((out.norm() - 1.0).abs() <= 1e-9);
                assert!(s.contains(&out, 1e-7).unwrap());
            }
        }
    }
}

// structural invariants as property tests

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_bounds_hold(seed in 0u64..1_000_000, dim in 2usize..=5) {
        let mut rng = rng(seed);
        let s = random_subspace(&mut rng, dim, None);
        let t = random_subspace(&mut rng, dim, None);
        prop_assert!(s.rank() <= dim);
        let meet = s.meet(&t, EPS).unwrap();
        prop_assert!(meet.rank() <= s.rank().min(t.rank()));
        let sum = s.direct_sum(&t, EPS).unwrap();
        prop_assert!(sum.rank() <= (s.rank() + t.rank()).min(dim));
        prop_assert!(sum.rank() >= s.rank().max(t.rank()));
    }

    #[test]
    fn constructed_projectors_validate(seed in 0u64..1_000_000, dim in 2usize..=5) {
        let mut rng = rng(seed);
        let s = random_subspace(&mut rng, dim, None);
        prop_assert!(s.validate(1e-9).is_ok());
        prop_assert!(s.orthocomplement(EPS).validate(1e-9).is_ok());
        prop_assert_eq!(s.orthocomplement(EPS).rank(), dim - s.rank());
    }

    #[test]
    fn span_is_invariant_under_scaling_and_duplication(seed in 0u64..1_000_000, dim in 2usize..=5) {
        let mut rng = rng(seed);
        let v = random_vector(&mut rng, dim);
        let w = random_vector(&mut rng, dim);
        let a = Subspace::span(dim, &[v.clone(), w.clone()], EPS).unwrap();
        let b = Subspace::span(
            dim,
            &[w.scale(hdql::C64::new(0.5, -1.5)), v.clone(), v],
            EPS,
        )
        .unwrap();
        prop_assert!(a.approx_eq(&b, TOL));
    }
}
