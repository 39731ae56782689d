//! Computes weakest preconditions of loop-free code and checks them by
//! bounded enumeration.
//!
//!     cargo run --example weakest_precondition

use std::collections::BTreeSet;

use imp::hoare::{check_triple, entails, wp_loop_free, Mode};
use imp::parser::parse_assertion;
use imp::parse_com;

fn main() {
    let c = parse_com("if (x < 0) { y := 0 + -1 } else { y := x + 1 }; x := y + y").unwrap();
    let q = parse_assertion("0 < x").unwrap();
    let wp = wp_loop_free(&c, &q).unwrap();
    println!("wp = {wp}");

    let vars: BTreeSet<String> = c.vars();
    println!("{{wp}} c {{Q}}: {:?}", check_triple(&wp, &c, &q, &vars, 5, 1_000, Mode::Total));

    let guess = parse_assertion("0 <= x").unwrap();
    println!("0 <= x entails wp: {:?}", entails(&guess, &wp, &vars, 5));
    let wrong = parse_assertion("-1 <= x").unwrap();
    println!("-1 <= x entails wp: {:?}", entails(&wrong, &wp, &vars, 5));
}
