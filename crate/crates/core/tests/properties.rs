use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dgcat::dgcore::{validate, ObjId};
use dgcat::exactlin::Field;
use dgcat::pretr::{ho_hom, hull_subcategory, TwistedComplex};
use dgcat::random::{random_quiver_category, random_twisted_complex, CategoryShape};

fn field(p: bool) -> Field {
    if p {
        Field::prime(101).unwrap()
    } else {
        Field::Rational
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_categories_validate(seed in any::<u64>(), prime in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = CategoryShape { max_objects: 3, ..CategoryShape::default() };
        let base = Arc::new(random_quiver_category(&mut rng, field(prime), shape));
        let objs: Vec<(String, TwistedComplex)> =
            (0..3).map(|i| (format!("X{i}"), random_twisted_complex(&mut rng, &base, 3))).collect();
        let hull = hull_subcategory(&objs).unwrap();
        let report = validate(&hull);
        prop_assert!(report.is_valid(), "{:?}", report);
        // Hom in the hull is the twisted Hom complex
        for (i, (_, x)) in objs.iter().enumerate() {
            for (j, (_, y)) in objs.iter().enumerate() {
                let h = hull.hom(ObjId(i), ObjId(j)).complex.cohomology_dims();
                for n in -4..=4 {
                    prop_assert_eq!(h.get(&n).copied().unwrap_or(0), ho_hom(x, y, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn shifts_move_hom_degrees(seed in any::<u64>(), s in -2i64..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = Arc::new(random_quiver_category(&mut rng, Field::Rational, CategoryShape::default()));
        let x = random_twisted_complex(&mut rng, &base, 4);
        let y = random_twisted_complex(&mut rng, &base, 4);
        for n in -3..=3 {
            prop_assert_eq!(ho_hom(&x, &y.shift(s), n).unwrap(), ho_hom(&x, &y, n + s).unwrap());
        }
    }
}
