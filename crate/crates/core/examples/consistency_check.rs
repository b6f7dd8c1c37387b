//! Both checkers on a consistent group and on a non-polycyclic input.

use rsp::consistency::{check_overlap, check_solv, CheckOptions, Mode};
use rsp::corpus;
use rsp::presentation::parse;

fn main() {
    let opts = CheckOptions::default();
    // x2^-1 x1 x2 = x1^2 does not define a polycyclic group
    let bad = parse("rsp 1\ngen x1 block 1 order inf\ngen x2 block 2 order inf\ncnj x1 x2 = x1^2\n").unwrap();
    let good = corpus::ut(5, 3).unwrap();
    for (name, p) in [("ut(5,3)", &good), ("x1^x2 = x1^2", &bad)] {
        println!("== {name}");
        print!("{}", check_solv(p, Mode::Incremental, opts).document(p).to_text());
        print!("{}", check_overlap(p, opts).document(p).to_text());
    }
    let report = check_solv(&bad, Mode::Incremental, opts);
    println!("{}", serde_json::to_string_pretty(&report.document(&bad)).unwrap());
}
