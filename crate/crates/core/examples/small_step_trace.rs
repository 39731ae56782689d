//! Prints a small-step trace, as text and as JSON lines.
//!
//!     cargo run --example small_step_trace

use imp::{parse_com, pretty_com, star_run, ProgConfig, State};

fn main() {
    let c = parse_com("x := 1; if (x < 2) { y := x + x } else { skip }").unwrap();
    let trace = star_run(ProgConfig::new(c, State::new()), 100);
    for (i, cfg) in trace.configs.iter().enumerate() {
        println!("[{i}] {}  {}", cfg.state, pretty_com(&cfg.command).replace('\n', " "));
    }
    println!("status: {:?}", trace.status);
    for record in trace.records() {
        println!("{}", serde_json::to_string(&record).unwrap());
    }
}
