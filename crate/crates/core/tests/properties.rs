use std::sync::Arc;

use nonsplit_core::coh::{cocycle_from_extension, extension_from_cocycle, tensor_with_invariant, Cocycle, H1};
use nonsplit_core::grp::{family_a, family_a_full, MatrixGroup, DEFAULT_ORDER_CAP};
use nonsplit_core::linalg::{is_inconsistency_certificate, kron_apply, solve, RowBasis, Solution};
use nonsplit_core::poly::{Monomial, Polynomial};
use nonsplit_core::{Field, GModule, Matrix};
use proptest::prelude::*;

const FIELDS: &[(u32, u32)] = &[(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)];

fn field_strategy() -> impl Strategy<Value = Field> {
    prop::sample::select(FIELDS).prop_map(|(p, k)| Field::new(p, k, None).unwrap())
}

fn field_and_codes(len: usize) -> impl Strategy<Value = (Field, Vec<u32>)> {
    field_strategy().prop_flat_map(move |f| {
        let q = f.order();
        (Just(f), prop::collection::vec(0..q, len))
    })
}

fn matrix_pair(max: usize) -> impl Strategy<Value = (Field, Matrix, Matrix)> {
    (field_strategy(), 1..=max, 1..=max, 1..=max).prop_flat_map(|(f, r, c, k)| {
        let q = f.order();
        (Just(f), prop::collection::vec(0..q, r * c), prop::collection::vec(0..q, r * k), Just((r, c, k))).prop_map(
            |(f, a, b, (r, c, k))| {
                let am = Matrix::from_codes(&f, r, c, a).unwrap();
                let bm = Matrix::from_codes(&f, r, k, b).unwrap();
                (f, am, bm)
            },
        )
    })
}

fn small_group() -> impl Strategy<Value = Arc<MatrixGroup>> {
    prop::sample::select(vec![(2u32, 2u32, 2usize), (2, 1, 2), (3, 1, 2), (2, 2, 3), (3, 2, 2), (5, 1, 2)]).prop_map(|(p, k, n)| {
        let f = Field::new(p, k, None).unwrap();
        Arc::new(family_a_full(&f, n, DEFAULT_ORDER_CAP).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, xs) in field_and_codes(3)) {
        let (a, b, c) = (xs[0], xs[1], xs[2]);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        } else {
            prop_assert!(f.inv(a).is_none());
        }
        // Frobenius is a ring homomorphism with order k
        prop_assert_eq!(f.frob(f.mul(a, b)), f.mul(f.frob(a), f.frob(b)));
        prop_assert_eq!(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
        let mut x = a;
        for _ in 0..f.degree() {
            x = f.frob(x);
        }
        prop_assert_eq!(x, a);
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
    }

    #[test]
    fn solve_is_sound((_f, a, b) in matrix_pair(6)) {
        match solve(&a, &b).unwrap() {
            Solution::Consistent { particular, kernel } => {
                prop_assert_eq!(a.mul(&particular).unwrap(), b);
                prop_assert_eq!(kernel.len(), a.cols() - a.rank());
                for v in kernel {
                    prop_assert!(a.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
                }
            }
            Solution::Inconsistent { certificate } => {
                prop_assert!(is_inconsistency_certificate(&a, &b, &certificate));
                prop_assert!(a.rank() < a.hstack(&b).unwrap().rank());
            }
        }
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn row_basis_tracks_rank((f, a, _b) in matrix_pair(6)) {
        let mut basis = RowBasis::new(&f, a.cols());
        for r in 0..a.rows() {
            basis.insert(a.row(r));
        }
        prop_assert_eq!(basis.rank(), a.rank());
        for r in 0..a.rows() {
            prop_assert!(basis.contains(a.row(r)));
        }
        prop_assert_eq!(basis.to_matrix().rank(), a.rank());
    }

    #[test]
    fn inverse_and_kron((f, a, b) in matrix_pair(4)) {
        let sq = a.mul(&a.transpose()).unwrap();
        match sq.inverse() {
            Ok(inv) => prop_assert!(sq.mul(&inv).unwrap().is_identity()),
            Err(_) => prop_assert!(sq.rank() < sq.rows()),
        }
        let x: Vec<u32> = (0..a.cols() * b.cols()).map(|i| (i as u32 * 7 + 3) % f.order()).collect();
        prop_assert_eq!(kron_apply(&a, &b, &x).unwrap(), a.kron(&b).unwrap().mul_vec(&x).unwrap());
    }

    #[test]
    fn substitution_is_multiplicative((f, xs) in field_and_codes(10)) {
        let m = Matrix::from_codes(&f, 2, 2, xs[..4].to_vec()).unwrap();
        let p1 = Polynomial::term(&f, Monomial(vec![2, 1]), xs[4]).add(&Polynomial::term(&f, Monomial(vec![0, 3]), xs[5])).unwrap();
        let p2 = Polynomial::term(&f, Monomial(vec![1, 0]), xs[6]).add(&Polynomial::constant(&f, 2, xs[7])).unwrap();
        let lhs = p1.mul(&p2).unwrap().substitute_linear(&m).unwrap();
        let rhs = p1.substitute_linear(&m).unwrap().mul(&p2.substitute_linear(&m).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn constructed_modules_are_representations(g in small_group()) {
        let p = g.field().characteristic();
        let (v, _) = GModule::sym_power(&g, p).unwrap();
        let w = GModule::frobenius_twist(&g);
        for m in [&v, &w, &v.dual(), &GModule::hom(&v, &w).unwrap(), &GModule::determinant(&g)] {
            prop_assert!(m.is_homomorphism(), "{}", m.recipe());
        }
        let dd = v.dual().dual();
        prop_assert_eq!(dd.actions(), v.actions());
        let n = g.n();
        let big = v.dim();
        for id in 0..g.order() {
            prop_assert_eq!(v.action(id).submatrix(0..n, 0..n), w.action(id).clone());
            prop_assert!(v.action(id).submatrix(n..big, 0..n).is_zero());
        }
        for x in v.fixed_space() {
            for id in 0..g.order() {
                prop_assert_eq!(&v.action(id).mul_vec(&x).unwrap(), &x);
            }
        }
    }

    #[test]
    fn class_is_invariant_under_coboundaries(g in small_group(), seed in any::<u64>()) {
        let f = g.field().clone();
        let (v, _) = GModule::sym_power(&g, f.characteristic()).unwrap();
        let h = H1::compute(&v).unwrap();
        prop_assume!(h.dim_z1() > 0);
        let pick = |i: u64| ((seed >> (i * 5)) as u32) % f.order();
        let z = &h.z1_basis()[(seed as usize) % h.dim_z1()];
        let c = Cocycle::from_generator_values(&v, z).unwrap();
        prop_assert!(c.is_cocycle());
        let shift: Vec<u32> = (0..v.dim() as u64).map(pick).collect();
        let moved = c.add(&Cocycle::coboundary(&v, &shift).unwrap()).unwrap();
        prop_assert_eq!(h.class_of(&moved).unwrap(), h.class_of(&c).unwrap());

        // a different preimage of 1 gives the same class
        let e = extension_from_cocycle(&c).unwrap();
        let mut v0 = shift.clone();
        v0.push(1);
        let back = cocycle_from_extension(&v, &e.total, &e.embedding(), &e.projection(), &v0).unwrap();
        prop_assert_eq!(h.class_of(&back).unwrap(), h.class_of(&c).unwrap());

        // tensoring with a fixed vector respects classes
        let t = GModule::trivial(&g, 2);
        let w = vec![pick(7), pick(8)];
        let tw = GModule::trivial(&g, 2).tensor(&v).unwrap();
        let ht = H1::compute(&tw).unwrap();
        let a = tensor_with_invariant(&t, &w, &c).unwrap();
        let b = tensor_with_invariant(&t, &w, &moved).unwrap();
        prop_assert!(a.is_cocycle());
        prop_assert_eq!(ht.class_of(&a).unwrap(), ht.class_of(&b).unwrap());
    }

    #[test]
    fn subgroup_families_close_to_their_size(k in 1u32..=3) {
        let f = Field::new(2, k, None).unwrap();
        let g = family_a_full(&f, 2, DEFAULT_ORDER_CAP).unwrap();
        prop_assert_eq!(g.order(), f.order() as usize);
        let sub = family_a(&f, &[0, 1], 2, DEFAULT_ORDER_CAP).unwrap();
        prop_assert_eq!(sub.order(), 2);
    }
}

#[test]
fn b1_inside_z1_and_rank_nullity() {
    for (p, k, n) in [(2, 2, 2), (3, 1, 2), (2, 2, 3), (3, 2, 2)] {
        let f = Field::new(p, k, None).unwrap();
        let g = Arc::new(family_a_full(&f, n, DEFAULT_ORDER_CAP).unwrap());
        let (v, _) = GModule::sym_power(&g, p).unwrap();
        for m in [v.clone(), v.dual(), GModule::natural(&g), GModule::frobenius_twist(&g)] {
            let h = H1::compute(&m).unwrap();
            assert!(h.dim_b1() <= h.dim_z1());
            assert_eq!(h.dim_b1(), m.dim() - m.fixed_space().len());
            assert_eq!(h.dim(), h.dim_z1() - h.dim_b1());
        }
    }
}
