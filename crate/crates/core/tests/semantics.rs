//! Laws relating the semantics, the compiler and weakest preconditions on
//! randomly generated programs.

use std::collections::BTreeSet;

use imp::harness::{cross_fuel, rng_for, GenConfig, Generator, SUITE_FUEL};
use imp::hoare::{entails, eval_assertion, vcgen, wp_loop_free, Assertion, Mode};
use imp::{big_step, ccomp, equivalent_com, exec, parse_annotated_com, parse_com, star_run, BExp, Com};
use imp::{MachineConfig, MachineOutcome, ProgConfig, State};
use proptest::prelude::*;

fn draw(seed: u64, cfg: &GenConfig, f: impl FnOnce(&mut Generator<'_>) -> (Com, State)) -> (Com, State) {
    let mut rng = rng_for(seed);
    let mut gen = Generator::new(cfg, &mut rng);
    f(&mut gen)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn while_unfolds_to_if(seed in any::<u64>()) {
        let cfg = GenConfig::default();
        let mut rng = rng_for(seed);
        let mut gen = Generator::new(&cfg, &mut rng);
        let b = gen.bexp(2);
        let body = gen.com(3);
        let s = gen.state();
        let w = Com::while_(b.clone(), body.clone());
        let unfolded = Com::if_(b, Com::seq(body, w.clone()), Com::Skip);
        let short = big_step(&w, &s, SUITE_FUEL);
        let long = big_step(&unfolded, &s, cross_fuel(SUITE_FUEL));
        if let Some(t) = short.final_state() {
            prop_assert_eq!(long.final_state(), Some(t));
        }
        let short = big_step(&unfolded, &s, SUITE_FUEL);
        let long = big_step(&w, &s, cross_fuel(SUITE_FUEL));
        if let Some(t) = short.final_state() {
            prop_assert_eq!(long.final_state(), Some(t));
        }
    }

    #[test]
    fn skip_is_a_left_unit(seed in any::<u64>()) {
        let cfg = GenConfig::default();
        let (c, s) = draw(seed, &cfg, |g| (g.com(4), g.state()));
        let states = [s, State::new()];
        prop_assert!(equivalent_com(&Com::seq(Com::Skip, c.clone()), &c, &states, usize::MAX));
    }

    // wp is exact for loop-free code: it holds before exactly when Q holds after.
    #[test]
    fn wp_is_exact(seed in any::<u64>()) {
        let cfg = GenConfig::default();
        let mut rng = rng_for(seed);
        let mut gen = Generator::new(&cfg, &mut rng);
        let c = gen.loop_free_com(4);
        let q = gen.assertion(3);
        let s = gen.state();
        let wp = wp_loop_free(&c, &q).unwrap();
        let t = big_step(&c, &s, usize::MAX).final_state().cloned().unwrap();
        prop_assert_eq!(eval_assertion(&wp, &s), eval_assertion(&q, &t));
    }

    #[test]
    fn compiled_code_matches_small_step(seed in any::<u64>()) {
        let cfg = GenConfig::default();
        let (c, s) = draw(seed, &cfg, |g| (g.com(5), g.state()));
        let trace = star_run(ProgConfig::new(c.clone(), s.clone()), SUITE_FUEL);
        if let Some(t) = trace.final_state() {
            let program = ccomp(&c);
            let out = exec(&program, &MachineConfig::start(s), usize::MAX);
            let MachineOutcome::Halted { config, .. } = out else {
                return Err(TestCaseError::fail(format!("{out:?}")));
            };
            prop_assert_eq!(config, MachineConfig::new(program.len() as i64, t.clone(), vec![]));
        }
    }
}

#[test]
fn countdown_compiles_and_runs() {
    let c = parse_com("while (i < 2) { i := i + 1 }").unwrap();
    let program = ccomp(&c);
    let start = MachineConfig::start(State::new().update("i", 0));
    let out = exec(&program, &start, 1000);
    let expected = big_step(&c, &start.state, 1000).final_state().cloned().unwrap();
    assert_eq!(expected.read("i"), 2);
    assert_eq!(out.halted(), Some(&MachineConfig::new(program.len() as i64, expected, vec![])));
}

#[test]
fn loop_free_vcgen_is_wp() {
    let cfg = GenConfig::default();
    for seed in 0..200 {
        let mut rng = rng_for(seed);
        let mut gen = Generator::new(&cfg, &mut rng);
        let c = gen.loop_free_com(4);
        let q = gen.assertion(2);
        let annotated = parse_annotated_com(&imp::pretty_com(&c)).unwrap();
        let generated = vcgen(&annotated, &q, Mode::Total).unwrap();
        assert!(generated.vcs.is_empty());
        assert_eq!(generated.precondition, wp_loop_free(&c, &q).unwrap(), "seed {seed}");
    }
}

#[test]
fn guard_strengthening_is_not_entailed_backwards() {
    let x_pos = Assertion::from(&BExp::less(imp::AExp::num(0), imp::AExp::var("x")));
    let vars: BTreeSet<String> = ["x".to_owned()].into();
    assert!(entails(&x_pos, &Assertion::True, &vars, 4).is_valid());
    assert!(!entails(&Assertion::True, &x_pos, &vars, 4).is_valid());
}
