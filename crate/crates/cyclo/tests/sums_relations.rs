use cyclo::sums::{duplicate_h1, duplicate_h2, eval_lincomb, eval_sum_definition, stuffle, synchronize, SumIndex, Triple};
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = Triple> {
    (1i64..=4, 0i64..4, 1i64..=2, any::<bool>()).prop_map(|(a, b, c, neg)| {
        let b = b % a;
        Triple::new(a, b, if neg { -c } else { c })
    })
}

fn index(max_depth: usize) -> impl Strategy<Value = SumIndex> {
    prop::collection::vec(triple(), 1..=max_depth).prop_map(SumIndex::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stuffle_is_the_product(x in index(2), y in index(2), n in 1u64..=25) {
        let p = stuffle(&x, &y);
        let lhs = eval_sum_definition(&x, n).unwrap() * eval_sum_definition(&y, n).unwrap();
        prop_assert_eq!(lhs, eval_lincomb(&p, n).unwrap());
        prop_assert_eq!(p.clone(), stuffle(&y, &x));
        for (idx, _) in p.iter() {
            prop_assert!(idx.weight() <= x.weight() + y.weight());
        }
    }

    #[test]
    fn synchronization_holds(x in index(3), k in 2u64..=3, n in 1u64..=8) {
        prop_assert!(synchronize(&x, k).unwrap().check(n).unwrap());
    }

    #[test]
    fn duplications_hold(x in index(3), n in 1u64..=20) {
        prop_assert!(duplicate_h1(&x).unwrap().check(n).unwrap());
        prop_assert!(duplicate_h2(&x).unwrap().check(n).unwrap());
    }
}

#[test]
fn spec_instances() {
    let r = duplicate_h1(&"S[{2,1,1}]".parse().unwrap()).unwrap();
    assert!(r.check(1).unwrap());
    let r = duplicate_h2(&"S[{2,1,1}]".parse().unwrap()).unwrap();
    assert_eq!(r.rhs.coeff(&"S[{4,-1,1}]".parse().unwrap()), 2);
    let r = synchronize(&"S[{2,1,1},{1,0,1}]".parse().unwrap(), 2).unwrap();
    for n in 1..=10 {
        assert!(r.check(n).unwrap());
    }
}
