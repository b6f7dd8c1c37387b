//! Timing table for the two checkers on ut(n,2).
//! Pass sizes as arguments, e.g. `cargo run --release --example method_comparison 8 12 16`.

use rsp::bench::{bench_input, document, render_table};
use rsp::consistency::{CheckOptions, Method};
use rsp::corpus;

fn main() {
    let sizes: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let sizes = if sizes.is_empty() { vec![4, 6, 8, 10, 12] } else { sizes };
    let mut records = Vec::new();
    for n in sizes {
        let p = corpus::ut(n, 2).unwrap();
        records.extend(bench_input(&format!("ut({n},2)"), &p, &[Method::Solv, Method::Overlap], 3, CheckOptions::default()));
    }
    print!("{}", render_table(&document(records)));
}
