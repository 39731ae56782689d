//! Compilation of IMP to stack-machine code.

use crate::machine::Instr;
use crate::syntax::{AExp, BExp, Com};

/// Post-order code leaving the value of `a` on top of the stack.
pub fn acomp(a: &AExp) -> Vec<Instr> {
    let mut out = Vec::new();
    acomp_into(a, &mut out);
    out
}

fn acomp_into(a: &AExp, out: &mut Vec<Instr>) {
    match a {
        AExp::NumLit(n) => out.push(Instr::LoadI(*n)),
        AExp::Var(x) => out.push(Instr::Load(x.clone())),
        AExp::Plus(l, r) => {
            acomp_into(l, out);
            acomp_into(r, out);
            out.push(Instr::Add);
        }
    }
}

/// Code that falls through when `bval b != jump_if` and otherwise jumps
/// `offset` instructions past its own end.
pub fn bcomp(b: &BExp, jump_if: bool, offset: i64) -> Vec<Instr> {
    match b {
        BExp::BoolLit(v) => {
            if *v == jump_if {
                vec![Instr::Jmp(offset)]
            } else {
                vec![]
            }
        }
        BExp::Not(inner) => bcomp(inner, !jump_if, offset),
        BExp::And(b1, b2) => {
            let cb2 = bcomp(b2, jump_if, offset);
            let len2 = cb2.len() as i64;
            let cb1 = bcomp(b1, false, if jump_if { len2 } else { len2 + offset });
            [cb1, cb2].concat()
        }
        BExp::Less(a1, a2) => {
            let mut out = acomp(a1);
            acomp_into(a2, &mut out);
            out.push(if jump_if {
                Instr::JmpLess(offset)
            } else {
                Instr::JmpGe(offset)
            });
            out
        }
    }
}

pub fn ccomp(c: &Com) -> Vec<Instr> {
    let mut out = Vec::new();
    ccomp_into(c, &mut out);
    out
}

fn ccomp_into(c: &Com, out: &mut Vec<Instr>) {
    match c {
        Com::Skip => {}
        Com::Assign(x, a) => {
            acomp_into(a, out);
            out.push(Instr::Store(x.clone()));
        }
        Com::Seq(c1, c2) => {
            // Flatten the right spine iteratively.
            ccomp_into(c1, out);
            let mut rest = c2;
            while let Com::Seq(d1, d2) = &**rest {
                ccomp_into(d1, out);
                rest = d2;
            }
            ccomp_into(rest, out);
        }
        Com::If(b, c1, c2) => {
            let cc1 = ccomp(c1);
            let cc2 = ccomp(c2);
            out.extend(bcomp(b, false, cc1.len() as i64 + 1));
            out.extend(cc1);
            out.push(Instr::Jmp(cc2.len() as i64));
            out.extend(cc2);
        }
        Com::While(b, body) => {
            let cc = ccomp(body);
            let cb = bcomp(b, false, cc.len() as i64 + 1);
            let back = -((cb.len() + cc.len() + 1) as i64);
            out.extend(cb);
            out.extend(cc);
            out.push(Instr::Jmp(back));
        }
    }
}

/// Jump targets that fall outside `[0, len]`, as `(pc, target)` pairs.
pub fn stray_jumps(program: &[Instr]) -> Vec<(usize, i64)> {
    program
        .iter()
        .enumerate()
        .filter_map(|(pc, instr)| {
            let target = (pc as i64) + 1 + instr.jump_offset()?;
            (target < 0 || target > program.len() as i64).then_some((pc, target))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big_step::big_step;
    use crate::machine::{exec, MachineConfig, MachineOutcome};
    use crate::parser::parse_com;
    use crate::state::State;
    use crate::syntax::{aval, bval};
    use proptest::prelude::*;

    #[test]
    fn acomp_examples() {
        assert_eq!(acomp(&AExp::num(5)), vec![Instr::LoadI(5)]);
        assert_eq!(
            acomp(&AExp::plus(AExp::var("x"), AExp::num(3))),
            vec![Instr::Load("x".into()), Instr::LoadI(3), Instr::Add]
        );
    }

    #[test]
    fn bcomp_examples() {
        assert_eq!(bcomp(&BExp::BoolLit(true), true, 3), vec![Instr::Jmp(3)]);
        assert_eq!(bcomp(&BExp::BoolLit(true), false, 3), vec![]);
        let less = BExp::less(AExp::num(1), AExp::num(2));
        assert_eq!(
            bcomp(&less, true, 4),
            vec![Instr::LoadI(1), Instr::LoadI(2), Instr::JmpLess(4)]
        );
    }

    #[test]
    fn ccomp_examples() {
        assert!(ccomp(&Com::Skip).is_empty());
        assert_eq!(
            ccomp(&parse_com("x := x + 1").unwrap()),
            vec![
                Instr::Load("x".into()),
                Instr::LoadI(1),
                Instr::Add,
                Instr::Store("x".into())
            ]
        );
    }

    #[test]
    fn counting_loop_runs_to_end() {
        let c = parse_com("while (i < 2) { i := i + 1 }").unwrap();
        let p = ccomp(&c);
        let start = State::new().update("i", 0);
        let out = exec(&p, &MachineConfig::start(start.clone()), 1000);
        let expected = big_step(&c, &start, 1000).final_state().cloned().unwrap();
        assert_eq!(expected.read("i"), 2);
        assert_eq!(
            out.halted(),
            Some(&MachineConfig::new(p.len() as i64, expected, vec![]))
        );
        assert!(stray_jumps(&p).is_empty());
    }

    fn aexp() -> impl Strategy<Value = AExp> {
        let leaf = prop_oneof![
            (-6i64..6).prop_map(AExp::num),
            prop::sample::select(vec!["x", "y"]).prop_map(AExp::var),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            (inner.clone(), inner).prop_map(|(l, r)| AExp::plus(l, r))
        })
    }

    fn bexp() -> impl Strategy<Value = BExp> {
        let leaf = prop_oneof![
            any::<bool>().prop_map(BExp::BoolLit),
            (aexp(), aexp()).prop_map(|(l, r)| BExp::less(l, r)),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(BExp::not),
                (inner.clone(), inner).prop_map(|(l, r)| BExp::and(l, r)),
            ]
        })
    }

    fn state() -> impl Strategy<Value = State> {
        (-6i64..6, -6i64..6).prop_map(|(x, y)| State::from_iter([("x", x), ("y", y)]))
    }

    proptest! {
        #[test]
        fn acomp_pushes_value(a in aexp(), s in state(), below in prop::collection::vec(-9i64..9, 0..3)) {
            let code = acomp(&a);
            let cfg = MachineConfig::new(0, s.clone(), below.clone());
            let out = exec(&code, &cfg, code.len());
            let mut stack = below;
            stack.push(aval(&a, &s));
            prop_assert_eq!(
                out,
                MachineOutcome::Halted {
                    config: MachineConfig::new(code.len() as i64, s, stack),
                    steps: code.len()
                }
            );
        }

        #[test]
        fn bcomp_jumps_iff_condition_matches(
            b in bexp(), s in state(), jump_if in any::<bool>(), offset in 0i64..5,
        ) {
            let code = bcomp(&b, jump_if, offset);
            let below = vec![42];
            let out = exec(&code, &MachineConfig::new(0, s.clone(), below.clone()), 10_000);
            let end = code.len() as i64;
            let target = if bval(&b, &s) == jump_if { end + offset } else { end };
            let config = out.halted().cloned();
            prop_assert_eq!(config, Some(MachineConfig::new(target, s, below)));
        }
    }
}
