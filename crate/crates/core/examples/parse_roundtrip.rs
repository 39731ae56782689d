//! Parses, pretty-prints and re-parses programs and assembly, and shows
//! parse errors with positions.
//!
//!     cargo run --example parse_roundtrip

use imp::{parse_asm, parse_com, pretty_asm, pretty_com};

fn main() {
    let c = parse_com("x := 1; { y := 2; z := x + (y + 3) }; while (!(x < y) && true) { x := x + -1 }").unwrap();
    let text = pretty_com(&c);
    println!("{text}");
    assert_eq!(parse_com(&text).unwrap(), c);

    let asm = parse_asm("LOADI 7\nSTORE x\nLOAD x\nLOADI 0\nJMPLESS -3\n").unwrap();
    print!("{}", pretty_asm(&asm));
    assert_eq!(parse_asm(&pretty_asm(&asm)).unwrap(), asm);

    for bad in ["x := 1 < 2 < 3", "while (x < 1) x := 2", "__tmp := 1"] {
        match parse_com(bad) {
            Ok(c) => println!("unexpectedly parsed: {c:?}"),
            Err(e) => println!("{bad:?}: {e}"),
        }
    }
}
