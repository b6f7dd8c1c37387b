//! Collection from the left in Q8 and the Heisenberg group.

use rsp::collector::{restrict, Collector};
use rsp::consistency::{check_solv_with_table, CheckOptions, Mode};
use rsp::corpus;
use rsp::presentation::parse_word;
use rsp::word::{Int, NormalWord};

fn main() {
    for p in [corpus::quaternion8(), corpus::heisenberg()] {
        // the inverse conjugates come out of the consistency check
        let (report, table) = check_solv_with_table(&p, Mode::Incremental, CheckOptions::default());
        assert!(report.is_consistent());
        let c = Collector::new(restrict(&p, p.len()).unwrap(), &table);
        println!("{}", rsp::presentation::serialize(&p).lines().skip(1).collect::<Vec<_>>().join("; "));
        for text in ["x1 x2", "x2 x1", "x2^-1 x1^3 x2", "x1^7 x2^5"] {
            let w = parse_word(&p, text).unwrap();
            let nf = c.collect(&w).unwrap();
            println!("  {text:<16} -> {}", p.word_string(&nf));
        }
        let g = NormalWord::from_exponents([(0, Int::from(2)), (1, Int::from(1))]);
        let inv = c.invert(&g).unwrap();
        println!("  ({})^-1 = {}", p.word_string(&g), p.word_string(&inv));
        println!("  ({})^10 = {}", p.word_string(&g), p.word_string(&c.power(&g, &Int::from(10)).unwrap()));
        println!("  {} rewrite steps", c.steps());
    }
}
