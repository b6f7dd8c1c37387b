//! Parse presentation text, list support violations, print it back.

use rsp::presentation::{parse, parse_unchecked, serialize};

const HEISENBERG: &str = "rsp 1
# integral Heisenberg group
gen x1 block 1 order inf
gen x2 block 2 order inf
gen x3 block 2 order inf
cnj x2 x3 = x2 x1
";

// inside a block x2^x3 must be x2 times lower terms
const BROKEN: &str = "rsp 1
gen x1 block 1 order inf
gen x2 block 2 order inf
gen x3 block 2 order inf
cnj x2 x3 = x2^2 x1
";

fn main() {
    let p = parse(HEISENBERG).expect("well formed");
    println!("{} generators in {} blocks", p.len(), p.num_blocks());
    for s in p.sections_below(p.len()) {
        println!("  section {:?}", s);
    }
    print!("{}", serialize(&p));

    let q = parse_unchecked(BROKEN).expect("syntax is fine");
    for v in q.validate() {
        println!("violation: {v}");
    }
    match parse("rsp 1\ngen x1 block 1 order 4\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error: {e}"),
    }
}
