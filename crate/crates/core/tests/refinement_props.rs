use geotype::boundary::{boundary_sets, has_corner_property, per_s_codes};
use geotype::corpus::{random_binary_mixing, random_family, random_type, rng};
use geotype::oracle::{cut_lines, oracle_s_refine, realize};
use geotype::refine::{bin_refine, build_order, corner_refine, s_refine, u_refine};
use geotype::{IncidenceMatrix, PeriodicCode};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bin_refine_is_binary(seed in any::<u64>()) {
        let t = random_type(&mut rng(seed), 5, 4);
        let b = bin_refine(&t).refined;
        prop_assert!(IncidenceMatrix::of(&b).is_binary());
        prop_assert_eq!(b.n(), t.alpha());
    }

    #[test]
    fn formula_matches_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_binary_mixing(&mut r, 4);
        let w = random_family(&mut r, &t, 8);
        let formula = s_refine(&t, &w).unwrap();
        let oracle = oracle_s_refine(&t, &w).unwrap();
        prop_assert_eq!(&formula.refined, &oracle.refined);
        prop_assert_eq!(&formula.labels, &oracle.labels);
    }

    #[test]
    fn order_matches_heights(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_binary_mixing(&mut r, 4);
        let w = random_family(&mut r, &t, 8);
        let order = build_order(&t, &w).unwrap();
        let lines = cut_lines(&realize(&t), &w).unwrap();
        for i in 1..=t.n() {
            let by_formula: Vec<(usize, usize)> = order.sorted(i).iter().map(|c| (c.t, c.code)).collect();
            let by_height: Vec<(usize, usize)> = lines[i - 1].iter().map(|c| (c.t, c.code)).collect();
            prop_assert_eq!(by_formula, by_height);
        }
    }

    #[test]
    fn counts_and_duality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_binary_mixing(&mut r, 4);
        let w = random_family(&mut r, &t, 8);
        let res = s_refine(&t, &w).unwrap();
        let n: usize = (1..=t.n()).map(|i| res.order.cuts_in(i) + 1).sum();
        prop_assert_eq!(res.refined.n(), n);
        for (r0, &(i, _)) in res.labels.iter().enumerate() {
            prop_assert_eq!(res.refined.v(r0 + 1), t.v(i));
        }
        let inv = t.invert();
        let wu = random_family(&mut r, &inv, 8);
        let back: Vec<PeriodicCode> = wu.iter().map(PeriodicCode::reversed).collect();
        let u = u_refine(&t, &back).unwrap();
        prop_assert_eq!(u.refined.invert(), s_refine(&inv, &wu).unwrap().refined);
    }

    #[test]
    fn recoded_cuts_become_boundary(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_binary_mixing(&mut r, 4);
        let w = random_family(&mut r, &t, 8);
        let res = s_refine(&t, &w).unwrap();
        let per_s = per_s_codes(&res.refined).unwrap();
        for c in &w {
            for rc in res.recode(c).unwrap() {
                prop_assert!(per_s.contains(&rc), "{} -> {} not s-boundary", c, rc);
            }
        }
    }

    #[test]
    fn corner_post_condition(seed in any::<u64>()) {
        let t = random_binary_mixing(&mut rng(seed), 4);
        let chain = corner_refine(&t).unwrap();
        prop_assert!(has_corner_property(chain.refined()).unwrap(),
            "{:?}", boundary_sets(chain.refined()).unwrap());
    }
}
