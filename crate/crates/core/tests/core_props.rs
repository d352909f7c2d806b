use geotype::boundary::{s_boundary_positive_code, u_boundary_negative_code, SULabel};
use geotype::corpus::{random_binary_mixing, random_family, random_type, rng};
use geotype::refine::s_refine;
use geotype::shift::{count_periodic_points, enumerate_orbits};
use geotype::text::{parse_type, serialize_type};
use geotype::IncidenceMatrix;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invert_is_an_involution(seed in any::<u64>()) {
        let t = random_type(&mut rng(seed), 5, 4);
        let inv = t.invert();
        prop_assert_eq!(inv.alpha(), t.alpha());
        prop_assert_eq!(inv.invert(), t);
    }

    #[test]
    fn lex_index_is_a_bijection(seed in any::<u64>()) {
        let t = random_type(&mut rng(seed), 5, 4);
        let all: Vec<usize> = t.h_labels().map(|a| t.lex_index(a).unwrap()).collect();
        prop_assert_eq!(all, (1..=t.alpha()).collect::<Vec<_>>());
        for r in 1..=t.alpha() {
            prop_assert_eq!(t.lex_index(t.lex_unindex(r).unwrap()).unwrap(), r);
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let t = random_type(&mut rng(seed), 5, 4);
        let text = serialize_type(&t);
        prop_assert_eq!(parse_type(&text).unwrap(), t);
    }

    #[test]
    fn incidence_sums_and_transpose(seed in any::<u64>()) {
        let t = random_type(&mut rng(seed), 5, 4);
        let a = IncidenceMatrix::of(&t);
        for i in 1..=t.n() {
            prop_assert_eq!((1..=t.n()).map(|k| a.get(i, k)).sum::<u64>(), t.h(i) as u64);
            prop_assert_eq!((1..=t.n()).map(|k| a.get(k, i)).sum::<u64>(), t.v(i) as u64);
        }
        prop_assert_eq!(IncidenceMatrix::of(&t.invert()), a.transpose());
    }

    #[test]
    fn necklace_identity(seed in any::<u64>()) {
        let t = random_binary_mixing(&mut rng(seed), 4);
        let a = IncidenceMatrix::of(&t);
        let orbits = enumerate_orbits(&a, 6).unwrap();
        for p in 1..=6usize {
            let total: u128 = orbits.iter().filter(|o| p % o.period() == 0).map(|o| o.period() as u128).sum();
            prop_assert_eq!(total, a.trace_power(p));
            prop_assert_eq!(count_periodic_points(&a, p), a.trace_power(p));
        }
    }

    #[test]
    fn boundary_codes_cycle_early_and_are_distinct(seed in any::<u64>()) {
        let t = random_binary_mixing(&mut rng(seed), 4);
        let n = t.n();
        let mut codes = Vec::new();
        for l in SULabel::all(n) {
            let s = s_boundary_positive_code(&t, l);
            let u = u_boundary_negative_code(&t, l);
            prop_assert!(s.preperiod.len() <= 2 * n && u.preperiod.len() <= 2 * n);
            codes.push(s);
        }
        for x in 0..codes.len() {
            for y in x + 1..codes.len() {
                prop_assert!(!codes[x].same_sequence(&codes[y]), "{} and {}", codes[x].label, codes[y].label);
            }
        }
    }

    #[test]
    fn phase_choice_does_not_matter(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_binary_mixing(&mut r, 4);
        let w = random_family(&mut r, &t, 8);
        let canonical: Vec<_> = w.iter().map(|c| c.orbit().canonical().clone()).collect();
        prop_assert_eq!(s_refine(&t, &w).unwrap().refined, s_refine(&t, &canonical).unwrap().refined);
    }
}
