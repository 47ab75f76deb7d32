use std::collections::BTreeMap;
use std::sync::Arc;

use dgcat::dgcore::{validate, DgCategory, ObjId};
use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::pretr::*;

fn q() -> Field {
    Field::Rational
}

fn kron() -> Arc<DgCategory> {
    Arc::new(fixtures::kronecker(q()))
}

fn arrow(c: &Arc<DgCategory>, name: &str) -> TwistedMorphism {
    let m = c.named_morphism(c.obj("e1").unwrap(), c.obj("e2").unwrap(), name).unwrap();
    TwistedMorphism::from_base(c.clone(), &m)
}

#[test]
fn embed_is_full() {
    let c = kron();
    let (e1, e2) = (ObjId(0), ObjId(1));
    let x = TwistedComplex::embed(c.clone(), e1);
    let y = TwistedComplex::embed(c.clone(), e2);
    assert_eq!(&hom_complex(&x, &y).unwrap(), &c.hom(e1, e2).complex);
    assert!(x.maurer_cartan_defect().is_empty());
    assert_eq!(ho_hom(&x, &y, 0).unwrap(), 2);
    assert_eq!(ho_hom(&x, &x, 0).unwrap(), 1);
    for n in -3..=3 {
        assert_eq!(ho_hom(&y, &x, n).unwrap(), 0);
    }
}

#[test]
fn shifts() {
    let c = kron();
    let a = arrow(&c, "a");
    let x = cone(&a).unwrap();
    assert_eq!(x.shift(0), x);
    assert_eq!(x.shift(1).shift(-1), x);
    let v = &x.twist()[&(0, 1)];
    let neg: Vec<_> = v.iter().map(|s| -s).collect();
    assert_eq!(x.shift(1).twist()[&(0, 1)], neg);
    let y = TwistedComplex::embed(c.clone(), ObjId(1));
    for n in -2..=2 {
        assert_eq!(ho_hom(&x, &y, n).unwrap(), ho_hom(&x, &y.shift(1), n - 1).unwrap());
    }
}

#[test]
fn cone_of_zero_map() {
    let c = kron();
    let e1 = TwistedComplex::embed(c.clone(), ObjId(0));
    let e2 = TwistedComplex::embed(c.clone(), ObjId(1));
    let z = TwistedMorphism::zero(&e1, &e2, 0);
    let x = cone(&z).unwrap();
    assert!(x.twist().is_empty());
    assert_eq!(x.terms().len(), 2);
    // Hom(e1, e2 ⊕ e1[1]) in degree 0 is Hom(e1, e2)
    assert_eq!(ho_hom(&e1, &x, 0).unwrap(), 2);
}

#[test]
fn cone_of_identity_is_contractible() {
    let c = kron();
    for o in [ObjId(0), ObjId(1)] {
        let x = TwistedComplex::embed(c.clone(), o);
        let maps = cone_maps(&x.identity()).unwrap();
        assert!(verify_cone_axioms(&maps, &x.identity()));
        let h = is_contractible(&maps.cone).unwrap().expect("contractible");
        assert_eq!(h.d(), maps.cone.identity());
        let (y, f) = reduce(&maps.cone).unwrap();
        assert!(y.is_empty());
        assert!(f.is_zero());
    }
}

#[test]
fn cone_of_arrow() {
    let c = kron();
    let a = arrow(&c, "a");
    let maps = cone_maps(&a).unwrap();
    assert!(verify_cone_axioms(&maps, &a));
    // j replaced by 2j breaks sj = 1
    let mut bad = maps.clone();
    bad.j = bad.j.scaled(&q().from_i64(2));
    assert!(!verify_cone_axioms(&bad, &a));
    // End^0 = k², End^1 = Hom(e1,e2) = k², d(x, y) = (x - y)a: H^0 = H^1 = 1
    let end = hom_complex(&maps.cone, &maps.cone).unwrap();
    assert_eq!(end.dims(), &BTreeMap::from([(0, 2), (1, 2)]));
    assert_eq!(end.cohomology_dims(), BTreeMap::from([(0, 1), (1, 1)]));
    assert!(is_contractible(&maps.cone).unwrap().is_none());
    let x = TwistedComplex::embed(c.clone(), ObjId(0));
    assert!(is_contractible(&x).unwrap().is_none());
}

#[test]
fn ho_iso_basics() {
    let c = kron();
    let x = TwistedComplex::embed(c.clone(), ObjId(0));
    assert!(is_ho_iso(&x.identity()).unwrap());
    assert!(!is_ho_iso(&TwistedMorphism::zero(&x, &x, 0)).unwrap());
    // the evaluation map e1 ⊕ e1 → e2, (a, b), is not an equivalence
    let e2 = TwistedComplex::embed(c.clone(), ObjId(1));
    let x2 = x.direct_sum(&x).unwrap();
    let ev = TwistedMorphism::new(
        x2.clone(),
        e2.clone(),
        0,
        BTreeMap::from([((0, 0), arrow(&c, "a").entry(0, 0)), ((0, 1), arrow(&c, "b").entry(0, 0))]),
    )
    .unwrap();
    assert!(ev.is_closed());
    assert!(!is_ho_iso(&ev).unwrap());
    let l = cone(&ev).unwrap();
    assert!(is_contractible(&l).unwrap().is_none());
}

#[test]
fn not_closed_or_wrong_degree() {
    let c = Arc::new(fixtures::epsilon(q()));
    let o = c.obj("o").unwrap();
    let eps = TwistedMorphism::from_base(c.clone(), &c.named_morphism(o, o, "ε").unwrap());
    assert_eq!(cone(&eps).unwrap_err(), PretrError::NotDegreeZero);
}

#[test]
fn compose_units_and_single_entries() {
    let c = kron();
    let a = arrow(&c, "a");
    assert_eq!(a.src().identity().compose(&a).unwrap(), a);
    assert_eq!(a.compose(&a.dst().identity()).unwrap(), a);
    // single entries reduce to base composition
    let e = Arc::new(fixtures::epsilon(q()));
    let o = e.obj("o").unwrap();
    let m = e.named_morphism(o, o, "ε").unwrap();
    let t = TwistedMorphism::from_base(e.clone(), &m);
    assert!(t.compose(&t).unwrap().is_zero());
}

#[test]
fn reduce_three_term() {
    // cone(id_e1) ⊕ e2: the cone cancels and e2 stays
    let c = kron();
    let e1 = TwistedComplex::embed(c.clone(), ObjId(0));
    let e2 = TwistedComplex::embed(c.clone(), ObjId(1));
    let x = cone(&e1.identity()).unwrap().direct_sum(&e2).unwrap();
    assert_eq!(x.len(), 3);
    let (y, f) = reduce(&x).unwrap();
    assert_eq!(y.len(), 1);
    assert_eq!(y.terms()[0].obj, ObjId(1));
    assert!(f.is_closed() && is_ho_iso(&f).unwrap());

    // a 3-term complex with a nontrivial off-pivot twist: cone(e1 ⊕ e1 → e1 ⊕ e2, diag(1, a))
    let s = e1.direct_sum(&e1).unwrap();
    let t = e1.direct_sum(&e2).unwrap();
    let g = TwistedMorphism::new(
        s.clone(),
        t.clone(),
        0,
        BTreeMap::from([((0, 0), c.identity_coords(ObjId(0)).clone()), ((1, 1), arrow(&c, "a").entry(0, 0))]),
    )
    .unwrap();
    let x = cone(&g).unwrap();
    let (y, f) = reduce(&x).unwrap();
    assert_eq!(y.len(), 2);
    assert!(is_ho_iso(&f).unwrap());
    for o in [ObjId(0), ObjId(1)] {
        let p = TwistedComplex::embed(c.clone(), o);
        for n in -2..=2 {
            assert_eq!(ho_hom(&p, &x, n).unwrap(), ho_hom(&p, &y, n).unwrap());
        }
    }
    assert_eq!(reduce(&e1).unwrap().0, e1);
}

#[test]
fn karoubi() {
    let c = kron();
    let e1 = TwistedComplex::embed(c.clone(), ObjId(0));
    let x = e1.direct_sum(&e1).unwrap();
    let id = c.identity_coords(ObjId(0)).clone();
    let e = TwistedMorphism::new(x.clone(), x.clone(), 0, BTreeMap::from([((0, 0), id)])).unwrap();
    let k = KaroubiObject::new(x.clone(), e, TwistedMorphism::zero(&x, &x, -1)).unwrap();
    assert_eq!(karoubi_hom(&k, &k, 0).unwrap(), 1);
    let kc = k.complement();
    let whole = KaroubiObject::whole(&x);
    assert_eq!(karoubi_hom(&whole, &whole, 0).unwrap(), ho_hom(&x, &x, 0).unwrap());
    let cross = karoubi_hom(&k, &kc, 0).unwrap() + karoubi_hom(&kc, &k, 0).unwrap();
    assert_eq!(karoubi_hom(&k, &k, 0).unwrap() + karoubi_hom(&kc, &kc, 0).unwrap() + cross, 4);
    // (e1 ⊕ e1, e) ≅ e1
    let single = KaroubiObject::whole(&e1);
    let found = search_karoubi_iso(&k, &single, &SearchConfig::default()).unwrap();
    assert!(found.found().is_some());
    // a bad idempotent is rejected
    let two = x.identity().scaled(&q().from_i64(2));
    assert!(KaroubiObject::new(x.clone(), two, TwistedMorphism::zero(&x, &x, -1)).is_err());
}

#[test]
fn search_finds_isos_and_reports_not_found() {
    let c = Arc::new(fixtures::kronecker(Field::prime(101).unwrap()));
    let e1 = TwistedComplex::embed(c.clone(), ObjId(0));
    let e2 = TwistedComplex::embed(c.clone(), ObjId(1));
    let r = search_ho_iso(&e1, &e1, &SearchConfig::default()).unwrap();
    assert!(r.found().is_some());
    let r = search_ho_iso(&e1, &e2, &SearchConfig::default()).unwrap();
    assert_eq!(r, SearchOutcome::NotFound { tried: 101 * 101, exhaustive: true });
}

#[test]
fn hull_subcategory_validates() {
    let c = kron();
    let a = arrow(&c, "a");
    let e1 = TwistedComplex::embed(c.clone(), ObjId(0));
    let e2 = TwistedComplex::embed(c.clone(), ObjId(1));
    let objs = vec![("e1".to_string(), e1), ("e2".to_string(), e2), ("cone(a)".to_string(), cone(&a).unwrap())];
    let h = hull_subcategory(&objs).unwrap();
    let report = validate(&h);
    assert!(report.is_valid(), "{:?}", report.violations);
    assert_eq!(h.hom(ObjId(0), ObjId(1)).dim(0), 2);
}
