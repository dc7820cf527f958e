use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use tangent_forge::{
    canonical_key, derive, instantiate, normalize, verify_numeric, Assignment, NumericSolution, NumericTuple,
    Polynomial, Power, ProblemSpec, VarId,
};

fn vars() -> [VarId; 4] {
    [VarId::M, VarId::N, VarId::p(1), VarId::s(2)]
}

prop_compose! {
    fn term()(coef in -1_000_000i64..=1_000_000, exps in proptest::collection::vec(0u32..=3, 4)) -> Polynomial {
        vars()
            .iter()
            .zip(exps)
            .fold(Polynomial::constant(coef), |acc, (v, e)| acc * Polynomial::var(*v).pow(e))
    }
}

fn poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(term(), 0..=6).prop_map(|ts| ts.into_iter().sum())
}

fn full_assignment() -> impl Strategy<Value = Assignment> {
    proptest::collection::vec(-500i64..=500, 4)
        .prop_map(|xs| vars().into_iter().zip(xs.into_iter().map(BigInt::from)).collect())
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn self_difference_is_canonical_zero(a in poly()) {
        let d = &a - &a;
        prop_assert!(d.is_zero());
        prop_assert_eq!(d.num_terms(), 0);
        prop_assert_eq!(d, Polynomial::zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), at in full_assignment()) {
        let ev = |p: &Polynomial| p.eval(&at).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
        prop_assert_eq!(ev(&a.pow(3)), num_traits::pow(ev(&a), 3));
    }

    #[test]
    fn full_substitution_agrees_with_eval(a in poly(), at in full_assignment()) {
        prop_assert_eq!(a.substitute_values(&at), Polynomial::constant(a.eval(&at).unwrap()));
    }

    #[test]
    fn rendering_round_trips(a in poly()) {
        let back: Polynomial = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

fn scaled(t: &NumericTuple, c: i64) -> NumericTuple {
    let c = BigInt::from(c);
    NumericTuple {
        m: t.m.clone(),
        n: t.n.clone(),
        xs: t.xs.iter().map(|x| x * &c).collect(),
        ys: t.ys.iter().map(|y| y * &c).collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instantiated_tuples_normalize_idempotently(
        t1 in 3usize..=6,
        t2 in 3usize..=6,
        seed in proptest::collection::vec(-20i64..=20, 12),
        m in 1i64..=9,
        n in 1i64..=9,
        c in 1i64..=50,
    ) {
        let sol = derive(&ProblemSpec::symbolic(t1, t2).unwrap()).unwrap();
        let mut values: Assignment = sol
            .parameters()
            .into_iter()
            .zip(seed.iter().cycle())
            .map(|(v, x)| (v, BigInt::from(*x)))
            .collect();
        values.insert(VarId::M, BigInt::from(m));
        values.insert(VarId::N, BigInt::from(n));
        let s = instantiate(&sol, &values).unwrap();
        for k in Power::BOTH {
            prop_assert!(verify_numeric(s.tuple(), k).ok);
        }
        if s.tuple().entries().all(|e| *e == BigInt::from(0)) {
            return Ok(());
        }
        let once = normalize(&s).unwrap();
        let twice = normalize(&once).unwrap();
        prop_assert_eq!(once.tuple(), twice.tuple());
        prop_assert_eq!(once.primitive_gcd(), twice.primitive_gcd());

        let bigger = NumericSolution::from_tuple(scaled(s.tuple(), c)).unwrap();
        let renormalized = normalize(&bigger).unwrap();
        prop_assert_eq!(canonical_key(renormalized.tuple()), canonical_key(once.tuple()));
    }
}

#[test]
fn canonical_keys_are_unique_per_class() {
    let t = NumericTuple::from_i64(2, 3, &[3, -1, 4], &[1, 5, -9]);
    let negated = NumericTuple::from_i64(2, 3, &[-4, 1, -3], &[9, -5, -1]);
    let other = NumericTuple::from_i64(2, 3, &[3, 1, 4], &[1, 5, -9]);
    let keys: BTreeSet<_> = [&t, &negated, &other].into_iter().map(canonical_key).collect();
    assert_eq!(keys.len(), 2);
}
