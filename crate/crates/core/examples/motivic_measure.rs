//! The Grothendieck ring ledger: verified relations, equality queries and the measure check.

use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::ptring::ClassExpr;

fn main() {
    let l = fixtures::motivic_ledger(Field::Rational).unwrap();
    for (a, b) in [("[P1]", "2*[pt]"), ("[P1]*[P1]", "4*[pt]"), ("[P2]", "3*[pt]"), ("[P1]", "3*[pt]")] {
        let o = l.eq(&ClassExpr::parse(a).unwrap(), &ClassExpr::parse(b).unwrap()).unwrap();
        println!("{a} = {b}: {o}");
    }
    println!("{}", l.group_invariants().unwrap());
    println!("{}", l.measure_check("P1").unwrap());
}
