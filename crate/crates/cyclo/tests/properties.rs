use cyclo::constants::eval::eval_constant;
use cyclo::constants::polygamma::cot_derivative_expr;
use cyclo::constants::special::polygamma;
use cyclo::cyclopoly::{cyclotomic, divisors, factor_xn_minus_1, factor_xn_plus_1, gcd, product_of_cyclotomics, totient};
use cyclo::numerics::phi::phi_sequence;
use cyclo::numerics::pi;
use cyclo::numerics::series::eval_hpl_series;
use cyclo::sums::mellin::{eval_mellin, mellin_to_sum, sum_to_mellin, SumExpr};
use cyclo::sums::{eval_sum_definition, SumIndex, Triple};
use cyclo::words::shuffle;
use cyclo::{IntPolynomial, Letter, Word};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

const PREC: u32 = 200;

fn rel(a: &Float, b: &Float) -> f64 {
    let d = Float::with_val(PREC, a - b).abs();
    let s = Float::with_val(PREC, b.abs_ref()).max(&Float::with_val(PREC, 1));
    (d / s).to_f64()
}

fn coprime() -> impl Strategy<Value = (u64, u64)> {
    (2u64..=12, 1u64..12).prop_filter_map("p/q in lowest terms", |(q, p)| (p < q && gcd(p, q) == 1).then_some((p, q)))
}

// letters with a series template at x < 1
fn word(max: usize) -> impl Strategy<Value = Word> {
    let letters = [(1u32, 0u32), (2, 0), (4, 0), (4, 1)];
    prop::collection::vec(0..letters.len(), 1..=max)
        .prop_map(move |v| Word::new(v.iter().map(|&i| Letter::new(letters[i].0, letters[i].1).unwrap()).collect()))
}

// denominators k, 2k, 2k+1 to weight three
fn mellin_index() -> impl Strategy<Value = SumIndex> {
    let triple = (prop_oneof![Just((1i64, 0i64)), Just((2, 1)), Just((2, 0))], 1i64..=2, any::<bool>())
        .prop_map(|((a, b), c, neg)| Triple::new(a, b, if neg { -c } else { c }));
    prop::collection::vec(triple, 1..=2).prop_filter("weight <= 3", |v| v.iter().map(|t| t.c).sum::<u32>() <= 3).prop_map(SumIndex::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polygamma_reflection((p, q) in coprime(), n in 1u32..=3) {
        let x = Rational::from((p, q));
        let a = polygamma(n, &x, PREC).unwrap();
        let b = polygamma(n, &(Rational::from(1) - &x), PREC).unwrap();
        let lhs = if n % 2 == 0 { Float::with_val(PREC, &b - &a) } else { Float::with_val(PREC, -Float::with_val(PREC, &b + &a)) };
        let cot = eval_constant(&cot_derivative_expr(n, p, q), 30).unwrap();
        let rhs = Float::with_val(PREC, pi(PREC).pow(n + 1) * cot);
        prop_assert!(rel(&lhs, &rhs) < 1e-25, "ψ^({n})({p}/{q})");
    }

    #[test]
    fn polygamma_multiplication((p, q) in coprime(), n in 1u32..=3, m in 2u64..=4) {
        let x = Rational::from((p, q));
        let mut s = Float::with_val(PREC, 0);
        for j in 0..m {
            s += polygamma(n, &(x.clone() + Rational::from((j, m))), PREC).unwrap();
        }
        let lhs = polygamma(n, &(x.clone() * m), PREC).unwrap() * Float::with_val(PREC, m).pow(n + 1);
        prop_assert!(rel(&lhs, &s) < 1e-25);
    }

    #[test]
    fn shuffle_is_the_product(a in word(2), b in word(2)) {
        let x = Float::with_val(PREC, Rational::from((1, 3)));
        let lhs = eval_hpl_series(&a, &x, 25).unwrap() * eval_hpl_series(&b, &x, 25).unwrap();
        let p = shuffle(&a, &b);
        let mut rhs = Float::with_val(PREC, 0);
        for (w, c) in p.iter() {
            prop_assert_eq!(w.weight(), a.weight() + b.weight());
            rhs += eval_hpl_series(w, &x, 25).unwrap() * c;
        }
        prop_assert!(rel(&Float::with_val(PREC, lhs), &rhs) < 1e-22, "{} ш {}", a, b);
        prop_assert_eq!(p, shuffle(&b, &a));
    }

    #[test]
    fn phi_recurrence(k in 2u64..=16, l in 0u64..=3) {
        // Σ_j c_j φ_k(l, N+j) = 1/(N+l+1) for Φ_k = Σ c_j x^j
        let poly = cyclotomic(k).unwrap();
        let deg = poly.degree().unwrap();
        let seq = phi_sequence(k, l, 30, 25, false).unwrap();
        for n in 0..=30 - deg {
            let mut s = Float::with_val(PREC, 0);
            for (j, c) in poly.coeffs().iter().enumerate() {
                s += Float::with_val(PREC, &seq[n + j] * c);
            }
            let want = Float::with_val(PREC, 1) / (n as u64 + l + 1);
            prop_assert!(rel(&s, &want) < 1e-22, "φ_{k}({l}) at {n}");
        }
    }

    #[test]
    fn cyclotomic_products(l in 1u64..=60) {
        let minus = product_of_cyclotomics(&factor_xn_minus_1(l));
        let plus = product_of_cyclotomics(&factor_xn_plus_1(l));
        prop_assert_eq!(minus, IntPolynomial::binomial(l as usize, -1));
        prop_assert_eq!(plus, IntPolynomial::binomial(l as usize, 1));
        let deg: u64 = divisors(l).iter().map(|&d| totient(d)).sum();
        prop_assert_eq!(deg, l);
    }

    #[test]
    fn mellin_round_trip(idx in mellin_index(), n in 1u64..=6) {
        let m = sum_to_mellin(&idx).unwrap();
        let want = eval_sum_definition(&idx, n).unwrap();
        prop_assert!(rel(&eval_mellin(&m, n, 25).unwrap(), &Float::with_val(PREC, &want)) < 1e-20, "{}", idx);
        let back = mellin_to_sum(&m).unwrap();
        prop_assert!(rel(&back.eval(n, 25).unwrap(), &Float::with_val(PREC, &want)) < 1e-20, "{}", idx);
        if idx.triples().iter().all(|t| t.b != 0 || t.a == 1) {
            prop_assert_eq!(back, SumExpr::from_index(&idx));
        }
    }
}
