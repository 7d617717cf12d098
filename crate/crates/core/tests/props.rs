//! Property tests: randomized algebraic invariants over a spread of
//! small fields and towers.

use std::sync::OnceLock;

use proptest::prelude::*;

use normgraph::diffsets::h_eval;
use normgraph::normsys::solve_3eq;
use normgraph::TowerCtx;

const TOWERS: [(u64, u32); 6] = [(2, 3), (3, 3), (4, 3), (5, 3), (7, 3), (3, 4)];

fn tower(i: usize) -> &'static TowerCtx {
    static CACHE: OnceLock<Vec<TowerCtx>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        TOWERS
            .iter()
            .map(|&(q, t)| TowerCtx::for_q_t(q, t).expect("small tower"))
            .collect()
    })[i]
}

prop_compose! {
    fn tower_and_indices(n: usize)
        (ti in 0..TOWERS.len(), seed in proptest::collection::vec(any::<u64>(), n))
        -> (usize, Vec<u64>)
    {
        (ti, seed)
    }
}

proptest! {
    #[test]
    fn field_axioms((ti, idx) in tower_and_indices(3)) {
        let tc = tower(ti);
        let f = tc.field();
        let o = f.order();
        let a = f.elt_from_index(idx[0] % o);
        let b = f.elt_from_index(idx[1] % o);
        let c = f.elt_from_index(idx[2] % o);
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(
            f.mul(&a, &f.add(&b, &c)),
            f.add(&f.mul(&a, &b), &f.mul(&a, &c))
        );
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    #[test]
    fn norm_is_multiplicative_trace_additive((ti, idx) in tower_and_indices(2)) {
        let tc = tower(ti);
        let f = tc.field();
        let o = f.order();
        let a = f.elt_from_index(idx[0] % o);
        let b = f.elt_from_index(idx[1] % o);
        prop_assert_eq!(tc.norm(&f.mul(&a, &b)), f.mul(&tc.norm(&a), &tc.norm(&b)));
        prop_assert_eq!(tc.trace(&f.add(&a, &b)), f.add(&tc.trace(&a), &tc.trace(&b)));
        prop_assert!(tc.in_base(&tc.norm(&a)));
        prop_assert!(tc.in_base(&tc.trace(&a)));
    }

    #[test]
    fn frobenius_is_a_field_automorphism((ti, idx) in tower_and_indices(2)) {
        let tc = tower(ti);
        let f = tc.field();
        let o = f.order();
        let a = f.elt_from_index(idx[0] % o);
        let b = f.elt_from_index(idx[1] % o);
        prop_assert_eq!(
            tc.frobenius(&f.add(&a, &b), 1),
            f.add(&tc.frobenius(&a, 1), &tc.frobenius(&b, 1))
        );
        prop_assert_eq!(
            tc.frobenius(&f.mul(&a, &b), 1),
            f.mul(&tc.frobenius(&a, 1), &tc.frobenius(&b, 1))
        );
        // phi^t is the identity
        prop_assert_eq!(tc.frobenius(&a, tc.t()), a);
    }

    #[test]
    fn hilbert90_image_has_norm_one((ti, idx) in tower_and_indices(1)) {
        let tc = tower(ti);
        let f = tc.field();
        let o = f.order();
        let y = f.elt_from_index(1 + idx[0] % (o - 1)); // nonzero
        let a = tc.hilbert90_map(&y).unwrap();
        prop_assert!(f.is_one(&tc.norm(&a)));
    }

    #[test]
    fn h_polynomials_satisfy_the_inversion_identity((ti, idx) in tower_and_indices(1)) {
        // h2(1/Y) * Y * phi(Y) = h1(Y) on towers of degree 3
        let tc = tower(ti % 5);
        let f = tc.field();
        let o = f.order();
        let y = f.elt_from_index(1 + idx[0] % (o - 1));
        let lhs = f.mul(
            &f.mul(&h_eval(tc, 2, &f.inv(&y).unwrap()).unwrap(), &y),
            &tc.frobenius(&y, 1),
        );
        prop_assert_eq!(lhs, h_eval(tc, 1, &y).unwrap());
    }

    #[test]
    fn three_equation_solutions_close_under_reflection((ti, idx) in tower_and_indices(1)) {
        let tc = tower(ti % 5);
        let f = tc.field();
        let group = tc.norm_one_group().unwrap();
        if group.len() > 1 {
            let k = 1 + idx[0] % (group.len() as u64 - 1);
            let a = f.pow(group.generator(), k);
            let sols = solve_3eq(tc, &a).unwrap();
            prop_assert!(sols.len() <= 6);
            for y in &sols {
                // Y -> A/Y permutes the solution set
                prop_assert!(sols.contains(&f.div(&a, y).unwrap()));
                prop_assert!(f.is_one(&tc.norm(y)));
            }
        }
    }

    #[test]
    fn sqrt_inverts_squaring_in_odd_characteristic((ti, idx) in tower_and_indices(1)) {
        let tc = tower(ti);
        let f = tc.field();
        if f.p() != 2 {
            let o = f.order();
            let a = f.elt_from_index(idx[0] % o);
            let sq = f.mul(&a, &a);
            prop_assert!(f.is_square(&sq));
            let r = f.sqrt(&sq).unwrap();
            prop_assert!(r == a || r == f.neg(&a));
        }
    }
}
