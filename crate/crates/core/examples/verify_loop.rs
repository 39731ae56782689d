//! Verifies an annotated loop for total correctness and shows a
//! counterexample for a wrong postcondition.
//!
//!     cargo run --example verify_loop

use imp::hoare::{verify, Mode};
use imp::parser::parse_assertion;
use imp::parse_annotated_com;

fn main() {
    let c = parse_annotated_com(
        "while (0 < x && 0 < y)
           invariant (0 <= x && 0 <= y)
           measure (x + y)
         {
           if (x < y) { y := y + -1 } else { x := x + -1 }
         }",
    )
    .unwrap();
    let pre = parse_assertion("0 <= x && 0 <= y").unwrap();

    for post in ["x = 0 || y = 0", "x = 0"] {
        let post = parse_assertion(post).unwrap();
        let report = verify(&pre, &c, &post, 6, 10_000, Mode::Total).unwrap();
        println!("post {post}: all valid = {}", report.all_valid());
        for (vc, verdict) in &report.vcs {
            println!("  {}: {:?}", vc.label, verdict);
        }
        println!("  triple: {:?}", report.triple);
        println!("{}", serde_json::to_string(&report.to_serializable()).unwrap());
    }
}
