//! Idempotent splitting: a summand of e1 ⊕ e1 and its complement.

use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::pretr::{karoubi_hom, search_karoubi_iso, KaroubiObject, SearchConfig};

fn main() {
    let s = fixtures::kronecker_summand(Field::Rational);
    s.verify().unwrap();
    let c = s.complement();
    let whole = KaroubiObject::whole(s.carrier());
    println!("End(summand) = {}, Hom(summand, complement) = {}, End(e1 ⊕ e1) = {}",
        karoubi_hom(&s, &s, 0).unwrap(), karoubi_hom(&s, &c, 0).unwrap(), karoubi_hom(&whole, &whole, 0).unwrap());
    let found = search_karoubi_iso(&s, &c, &SearchConfig::default()).unwrap();
    println!("summand ≅ complement: {}", found.found().is_some());
}
