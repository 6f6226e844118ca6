use mumu_core::harness::{Calc, Fragment, Gen, GenConfig, Generated, Sort};
use mumu_core::lm::{LmStrategy, LmSubject};
use mumu_core::lmm::{LbMode, LbStrategy, LbSubject};
use mumu_core::translate::{circ, dag};
use proptest::prelude::*;

fn sort() -> impl Strategy<Value = Sort> {
    prop_oneof![Just(Sort::Term), Just(Sort::Command), Just(Sort::Context)]
}

fn lm_subject() -> impl Strategy<Value = LmSubject> {
    (any::<u64>(), sort(), 2usize..14).prop_map(|(seed, sort, size)| {
        Gen::new(seed).lm_subject(sort, size, false).unwrap()
    })
}

fn lb_subject() -> impl Strategy<Value = LbSubject> {
    (any::<u64>(), sort(), 3usize..14).prop_map(|(seed, sort, size)| {
        Gen::new(seed).lb_subject(sort, size, Fragment::Any, false).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generator_is_deterministic(seed in any::<u64>(), size in 3usize..16) {
        let cfg = GenConfig::new(Calc::Lmm, Sort::Command, seed, size);
        let a = mumu_core::harness::gen::gen(&cfg).unwrap();
        prop_assert_eq!(a.clone(), mumu_core::harness::gen::gen(&cfg).unwrap());
        let Generated::Lmm(s) = a else { unreachable!() };
        prop_assert!(s.size() <= size);
    }

    #[test]
    fn canonical_forms_are_alpha_equivalent(s in lm_subject()) {
        let c = s.canonical(false);
        prop_assert!(c.alpha_eq(&s));
        prop_assert_eq!(c.canonical(false), c);
    }

    #[test]
    fn lm_steps_replay_and_linear_steps_shrink(s in lm_subject()) {
        for r in s.redexes(LmStrategy::Free) {
            prop_assert_eq!(s.step(&r).unwrap(), r.result.clone());
            if r.linear {
                prop_assert!(r.result.measure() < s.measure());
            }
        }
    }

    #[test]
    fn lmm_steps_replay_and_linear_steps_shrink(s in lb_subject()) {
        for r in s.redexes(LbMode::with_beta_prime(LbStrategy::Free)).unwrap() {
            prop_assert_eq!(s.step(&r).unwrap(), r.result.clone());
            if r.linear {
                prop_assert!(r.result.measure() < s.measure());
            }
        }
    }

    #[test]
    fn strategies_are_sub_relations(s in lm_subject()) {
        let free = s.redexes(LmStrategy::Free);
        for strategy in [LmStrategy::Cbn, LmStrategy::Cbv, LmStrategy::CbvOs] {
            for r in s.redexes(strategy) {
                prop_assert!(free.contains(&r));
            }
        }
    }

    #[test]
    fn dag_preserves_free_names(s in lm_subject()) {
        prop_assert_eq!(dag(&s).free_names(), s.free_names());
    }

    #[test]
    fn circ_preserves_free_names_up_to_reserved(s in lb_subject()) {
        prop_assert_eq!(circ(&s).free_names().without_reserved(), s.free_names().without_reserved());
    }

    #[test]
    fn fragment_generators_stay_in_fragment(seed in any::<u64>(), size in 3usize..14) {
        let mut g = Gen::new(seed);
        let t = g.lb_subject(Sort::Command, size, Fragment::T, false).unwrap();
        prop_assert!(t.in_t());
        prop_assert!(t.redexes(LbStrategy::Cbn).is_ok());
        let q = g.lb_subject(Sort::Command, size, Fragment::Q, false).unwrap();
        prop_assert!(q.in_q());
        prop_assert!(q.redexes(LbStrategy::Cbv).is_ok());
    }
}
