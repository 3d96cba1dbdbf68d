//! Randomized property tests for the exact-arithmetic layer and the
//! monotonicity of mixed multiplier ideals.

use multiplane::catalog::fixtures;
use multiplane::exact::{solve_affine, ExactMatrix, FieldElement, Fraction, NumberField};
use proptest::prelude::*;

fn fraction() -> impl Strategy<Value = Fraction> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Fraction::new(n, d))
}

fn omega_element() -> impl Strategy<Value = (NumberField, FieldElement)> {
    (fraction(), fraction()).prop_map(|(a, b)| {
        let k = NumberField::omega_field();
        let e = k.element(vec![a, b]).unwrap();
        (k, e)
    })
}

proptest! {
    #[test]
    fn field_arithmetic_axioms(
        (k, a) in omega_element(),
        (_, b) in omega_element(),
        (_, c) in omega_element(),
    ) {
        // Associativity and commutativity.
        prop_assert_eq!(k.add(&k.add(&a, &b), &c), k.add(&a, &k.add(&b, &c)));
        prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
        prop_assert_eq!(k.add(&a, &b), k.add(&b, &a));
        prop_assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
        // Distributivity.
        prop_assert_eq!(
            k.mul(&a, &k.add(&b, &c)),
            k.add(&k.mul(&a, &b), &k.mul(&a, &c))
        );
        // Two-sided inverses.
        if !a.is_zero() {
            let inv = k.inv(&a).unwrap();
            prop_assert_eq!(k.mul(&a, &inv), k.one());
            prop_assert_eq!(k.mul(&inv, &a), k.one());
        }
    }

    #[test]
    fn rank_nullity(rows in 1usize..5, cols in 1usize..6, seed in any::<u64>()) {
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        let data: Vec<Vec<Fraction>> = (0..rows)
            .map(|_| (0..cols).map(|_| Fraction::from_int(next())).collect())
            .collect();
        let m = ExactMatrix::from_fractions(&data);
        prop_assert_eq!(m.rank() + m.kernel().len(), cols);
    }

    #[test]
    fn solve_affine_solution_checks_out(
        rows in 1usize..4,
        cols in 1usize..5,
        seed in any::<u64>(),
    ) {
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 9) as i64 - 4
        };
        let a: Vec<Vec<Fraction>> = (0..rows)
            .map(|_| (0..cols).map(|_| Fraction::from_int(next())).collect())
            .collect();
        let b: Vec<Fraction> = (0..rows).map(|_| Fraction::from_int(next())).collect();
        if let Some(space) = solve_affine(&a, &b) {
            // The base point solves the system exactly.
            for (row, rhs) in a.iter().zip(&b) {
                let v: Fraction = row.iter().zip(&space.base).map(|(c, x)| c * x).sum();
                prop_assert_eq!(&v, rhs);
            }
            // Every direction is in the kernel.
            for d in &space.directions {
                for row in &a {
                    let v: Fraction = row.iter().zip(d).map(|(c, x)| c * x).sum();
                    prop_assert!(v.is_zero());
                }
            }
            // The directions are independent: the parametrization pins the
            // free coordinates.
            prop_assert_eq!(space.dim() + space.pivots.len(), cols);
        }
    }

    #[test]
    fn mixed_ideal_monotone(
        x1 in 0i64..24, y1 in 0i64..24, dx in 0i64..12, dy in 0i64..12,
    ) {
        let data = fixtures::two_germ_cluster().derive().unwrap();
        let lo = vec![Fraction::new(x1, 12), Fraction::new(y1, 12)];
        let hi = vec![Fraction::new(x1 + dx, 12), Fraction::new(y1 + dy, 12)];
        let a = data.mixed_mi(&lo);
        let b = data.mixed_mi(&hi);
        for (p, q) in a.coeffs.iter().zip(&b.coeffs) {
            prop_assert!(p <= q);
        }
        let fa = data.mixed_mi_full(&lo);
        let fb = data.mixed_mi_full(&hi);
        for (p, q) in fa.coeffs.iter().zip(&fb.coeffs) {
            prop_assert!(p <= q);
        }
    }

    #[test]
    fn scaled_ideals_match_exact_ideals(cx in 0i64..36, cy in 0i64..36) {
        let data = fixtures::two_germ_cluster().derive().unwrap();
        let x = vec![Fraction::new(cx, 18), Fraction::new(cy, 18)];
        let exact = data.mixed_mi_full(&x);
        let scaled = data.mixed_mi_scaled(&[cx, cy], 18, None);
        prop_assert_eq!(exact, scaled);
    }
}
