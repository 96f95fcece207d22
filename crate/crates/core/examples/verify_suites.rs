//! Runs the verification suites and prints their summary tables.
//!
//! `cargo run --release --example verify_suites -- theorem2 lemmas`

use std::time::Instant;

use hallpi::verify::{run_suite, Suite, SuiteOptions};
use hallpi::Limits;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let suites: Vec<Suite> = if args.is_empty() {
        vec![Suite::Example1, Suite::Example2]
    } else {
        args.iter().map(|a| a.parse().expect("suite name")).collect()
    };
    let opts = SuiteOptions { jobs: 4, ..SuiteOptions::default() };
    for s in suites {
        let t = Instant::now();
        let report = run_suite(s, &opts, &Limits::default());
        println!("== {} ({:.1?})", s.name(), t.elapsed());
        print!("{}", report.summary_table());
        for r in report.results.iter().filter(|r| r.verdict != hallpi::verify::Verdict::Pass) {
            println!("{}", r.text_line());
        }
    }
}
