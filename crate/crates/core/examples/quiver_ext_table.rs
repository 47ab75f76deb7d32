//! Path categories of quivers and their graded Ext tables.

use dgcat::dgcore::{from_quiver, validate, Quiver};
use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::sodgen::{check_exceptional_collection, ext_table};

fn main() {
    let f = Field::Rational;
    // A3 with the composite set to zero
    let a3 = from_quiver(&Quiver::new(f).vertex("1").vertex("2").vertex("3").arrow("x", "1", "2").arrow("y", "2", "3").relation(&[(1, "x*y")])).unwrap();
    println!("A3 modulo xy valid: {}", validate(&a3).is_valid());

    for (name, c) in [("A3/(xy)", a3), ("Kronecker", fixtures::kronecker(f)), ("Beilinson P2", fixtures::beilinson(f, 2))] {
        let objs: Vec<_> = c.objects().collect();
        println!("{name}: exceptional {}", check_exceptional_collection(&c, &objs));
        for (a, row) in objs.iter().zip(ext_table(&c, &objs)) {
            println!("  {:>3}: {:?}", c.label(*a), row);
        }
    }
}
