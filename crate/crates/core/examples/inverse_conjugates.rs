//! The conjugates x^(y^-1), derived from the induced section maps.

use rsp::collector::{derive_inverse_conjugates, restrict, Collector, InverseConjugateTable, DEFAULT_STEP_LIMIT};
use rsp::consistency::{induced_matrix, section_inverses};
use rsp::corpus;
use rsp::word::NormalWord;

fn main() {
    let h = corpus::heisenberg();
    let mut table = InverseConjugateTable::new();
    for z in 0..h.len() {
        for s in h.sections_below(z) {
            println!("{} on {:?}: {:?}", h.name(z), s.gens, induced_matrix(&h, z, &s).entries);
        }
        let inv = section_inverses(&h, z).expect("invertible");
        let ctx = restrict(&h, z).unwrap();
        table = derive_inverse_conjugates(ctx, z, table, &inv, DEFAULT_STEP_LIMIT).unwrap().0;
    }
    for (x, y, w) in table.entries() {
        println!("{}^({}^-1) = {}", h.name(x), h.name(y), h.word_string(w));
    }
    let c = Collector::new(restrict(&h, h.len()).unwrap(), &table);
    for (x, y, w) in table.entries() {
        let back = c.conjugate(w, &NormalWord::generator(y)).unwrap();
        assert_eq!(back, NormalWord::generator(x));
    }
    println!("every entry conjugates back");
}
