use panachee::diagram::baer_sum_ses;
use panachee::dsl::{parse_problem, ProblemSource};
use panachee::ext::{class_of_ses, ext_group, ses_of_class};
use panachee::linalg::{howell_form, smith_normal_form, Int, Mat, Ring};
use panachee::module::{compose, solve_hom, FpModule};
use panachee::sample::{random_extension, random_module, random_problem};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matrix(ring: Ring, max: usize, bound: i64) -> impl Strategy<Value = Mat> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        let ring = ring.clone();
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| Mat::from_fn(&ring, r, c, |i, j| Int::from(v[i * c + j])))
    })
}

fn ring_of(n: u64) -> Ring {
    Ring::modulo(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_is_diagonal_chain(a in matrix(Ring::integers(), 4, 12)) {
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), Mat::identity(&Ring::integers(), a.rows()));
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                prop_assert!(r == c || s.d.get(r, c).is_zero());
            }
        }
    }

    #[test]
    fn howell_keeps_the_row_span(n in 2u64..40, a in matrix(Ring::integers(), 4, 50)) {
        let a = a.with_ring(&ring_of(n));
        let h = howell_form(&a).unwrap();
        prop_assert_eq!(h.u.mul(&a).unwrap(), h.h.clone());
        prop_assert_eq!(h.back.mul(&h.h).unwrap(), a);
    }

    #[test]
    fn presentation_order_matches_element_count(n in prop::sample::select(vec![4u64, 6, 8, 9]), a in matrix(Ring::integers(), 3, 9)) {
        let ring = ring_of(n);
        let m = FpModule::present(&ring, a.rows(), a.with_ring(&ring)).unwrap();
        let count = m.elements().unwrap().len();
        prop_assert_eq!(m.order().unwrap(), Int::from(count));
    }

    #[test]
    fn baer_sum_adds_classes(seed in any::<u64>(), n in prop::sample::select(vec![4u64, 8, 9, 0])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Ring::modulo(n);
        let a = random_module(&mut rng, &ring, 8);
        let c = random_module(&mut rng, &ring, 8);
        let s1 = random_extension(&mut rng, &a, &c).unwrap();
        let s2 = random_extension(&mut rng, &a, &c).unwrap();
        let sum = class_of_ses(&baer_sum_ses(&s1, &s2).unwrap()).unwrap();
        let expect = class_of_ses(&s1).unwrap().add(&class_of_ses(&s2).unwrap()).unwrap();
        prop_assert_eq!(sum, expect);
    }

    #[test]
    fn class_survives_realization(seed in any::<u64>(), n in prop::sample::select(vec![4u64, 8, 9, 12])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Ring::modulo(n);
        let a = random_module(&mut rng, &ring, 8);
        let c = random_module(&mut rng, &ring, 8);
        let g = ext_group(1, &c, &a).unwrap();
        for xi in g.elements().unwrap().into_iter().take(8) {
            prop_assert_eq!(class_of_ses(&ses_of_class(&xi).unwrap()).unwrap(), xi);
        }
    }

    #[test]
    fn dsl_round_trip(seed in any::<u64>(), n in prop::sample::select(vec![4u64, 8, 9, 0])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pr = random_problem(&mut rng, &Ring::modulo(n), 8).unwrap();
        let src = ProblemSource::from_problem(&pr);
        let text = src.to_string();
        let again = parse_problem(&text).unwrap();
        prop_assert_eq!(&again, &src);
        prop_assert_eq!(again.to_string(), text);
    }

    #[test]
    fn composition_matches_matrices(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Ring::modulo(8);
        let pick = |rng: &mut ChaCha8Rng, s: &FpModule, t: &FpModule| {
            let all = solve_hom(s, t, &[]).unwrap().unwrap().enumerate().unwrap();
            all[rng.gen_range(0..all.len())].clone()
        };
        let a = random_module(&mut rng, &ring, 8);
        let b = random_module(&mut rng, &ring, 8);
        let c = random_module(&mut rng, &ring, 8);
        let f = pick(&mut rng, &a, &b);
        let g = pick(&mut rng, &b, &c);
        let gf = compose(&g, &f).unwrap();
        prop_assert_eq!(gf.matrix(), &g.matrix().mul(f.matrix()).unwrap());
        for x in a.elements().unwrap() {
            prop_assert!(c.elements_equal(&gf.apply(&x).unwrap(), &g.apply(&f.apply(&x).unwrap()).unwrap()));
        }
    }
}
