use std::collections::BTreeMap;
use std::sync::Arc;

use dgcat::dgcore::{opposite, swap_iso, DgCategory, ObjId};
use dgcat::exactlin::{ChainComplex, Field, Matrix};
use dgcat::fixtures;
use dgcat::functors::*;
use dgcat::pretr::{cone, ho_hom, hull_subcategory, search_ho_iso, SearchConfig, TwistedComplex, TwistedMorphism};

fn q() -> Field {
    Field::Rational
}

fn arrow(c: &Arc<DgCategory>, name: &str) -> TwistedMorphism {
    let m = c.named_morphism(ObjId(0), ObjId(1), name).unwrap();
    TwistedMorphism::from_base(c.clone(), &m)
}

#[test]
fn functor_validation() {
    let k = Arc::new(fixtures::kronecker(q()));
    assert!(validate_functor(&DgFunctor::identity(k.clone())).is_empty());
    let e = fixtures::epsilon(q());
    assert!(validate_functor(&swap_iso(&e, &e).unwrap()).is_empty());
    assert!(validate_functor(&swap_iso(&k, &e).unwrap()).is_empty());

    // identity on the P^2 quiver with the Hom(1,3) block dropped
    let p2 = Arc::new(fixtures::beilinson(q(), 2));
    let id = DgFunctor::identity(p2.clone());
    let mut maps = id.blocks().clone();
    maps.remove(&(0, 2, 0));
    let broken = DgFunctor::new(p2.clone(), p2, id.object_map().to_vec(), maps).unwrap();
    let report = validate_functor(&broken);
    assert!(!report.is_empty());
    assert!(report.iter().all(|v| matches!(v, FunctorViolation::Composition { .. })));
}

#[test]
fn pretr_extension() {
    let k = Arc::new(fixtures::kronecker(q()));
    let a = arrow(&k, "a");
    let x = cone(&a).unwrap();
    let id = DgFunctor::identity(k.clone());
    assert_eq!(pretr_extend(&id).object(&x).unwrap(), x);
    assert_eq!(pretr_extend(&id).morphism(&a).unwrap(), a);

    let g = fixtures::kronecker_collapse(q());
    let ext = pretr_extend(&g);
    let ga = ext.morphism(&a).unwrap();
    assert!(ga.is_zero());
    let image = ext.object(&x).unwrap();
    assert_eq!(image, cone(&ga).unwrap());
    assert!(image.twist().is_empty());
    assert_eq!(ext.object(&x.shift(1)).unwrap(), image.shift(1));
}

#[test]
fn yoneda_full_faithfulness() {
    for c in [fixtures::kronecker(q()), fixtures::epsilon(q()), fixtures::beilinson(q(), 2)] {
        let c = Arc::new(c);
        for a in c.objects() {
            let ha = yoneda(c.clone(), a);
            assert!(ha.validate().is_empty());
            for b in c.objects() {
                let hb = yoneda(c.clone(), b);
                let h = module_hom(&ha, &hb).unwrap();
                let direct = c.hom(a, b).complex.cohomology_dims();
                assert_eq!(h.complex().cohomology_dims(), direct, "{} {}", c.label(a), c.label(b));
            }
        }
    }
    let k = Arc::new(fixtures::kronecker(q()));
    let h = module_hom(&yoneda(k.clone(), ObjId(0)), &yoneda(k.clone(), ObjId(1))).unwrap();
    assert_eq!(h.complex().cohomology_dim(0), 2);
}

#[test]
fn evaluation_is_an_isomorphism_of_complexes() {
    for c in [fixtures::epsilon(q()), fixtures::kronecker(q())] {
        let c = Arc::new(c);
        for a in c.objects() {
            for b in c.objects() {
                let n = yoneda(c.clone(), b);
                let h = module_hom(&yoneda(c.clone(), a), &n).unwrap();
                let target = n.value(a);
                for k in -2..=2 {
                    let e = evaluation_matrix(&h, a, &c, k, target.dim(k)).unwrap();
                    assert_eq!(e.rows(), h.complex().dim(k));
                    assert_eq!(e.rank(), target.dim(k));
                    let e1 = evaluation_matrix(&h, a, &c, k + 1, target.dim(k + 1)).unwrap();
                    let lhs = e1.mul(&h.complex().diff(k)).unwrap();
                    let rhs = target.diff(k).mul(&e).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn naturality_rank_on_a2() {
    // t: h^{e2} → h^{e2} in degree 0 has one unknown per object; naturality along a forces them equal
    let c = Arc::new(fixtures::a2(q()));
    let h = module_hom(&yoneda(c.clone(), ObjId(1)), &yoneda(c.clone(), ObjId(1))).unwrap();
    assert_eq!(h.constraint_rank(0), 1);
    assert_eq!(h.complex().dim(0), 1);
    // t: h^{e1} → h^{e2} has a single unknown and no constraint
    let h = module_hom(&yoneda(c.clone(), ObjId(0)), &yoneda(c.clone(), ObjId(1))).unwrap();
    assert_eq!(h.constraint_rank(0), 0);
    assert_eq!(h.complex().dim(0), 1);
}

#[test]
fn modules_over_the_point_are_complexes() {
    let pt = Arc::new(fixtures::point(q()));
    let v = ChainComplex::new(
        q(),
        BTreeMap::from([(0, 1), (1, 1)]),
        BTreeMap::from([(0, Matrix::from_i64(q(), &[&[1]]))]),
    )
    .unwrap();
    let w = ChainComplex::graded(q(), BTreeMap::from([(0, 2)]));
    let module = |c: &ChainComplex| {
        let mut action = BTreeMap::new();
        for (&m, &d) in c.dims() {
            let t = (0..d).map(|j| ((0, j), vec![(j, q().one())])).collect();
            action.insert((0, 0, 0, m), t);
        }
        DgModule::new(pt.clone(), vec![c.clone()], action).unwrap()
    };
    let (mv, mw) = (module(&v), module(&w));
    assert!(mv.validate().is_empty());
    for (x, y) in [(&v, &v), (&v, &w), (&w, &v), (&w, &w)] {
        let h = module_hom(&module(x), &module(y)).unwrap();
        for k in -2..=2 {
            let expect: usize = x.dims().iter().map(|(m, d)| d * y.dim(m + k)).sum();
            assert_eq!(h.complex().dim(k), expect);
        }
    }
    assert!(module_hom(&mv, &mv).unwrap().complex().cohomology_dims().is_empty());
    assert_eq!(module_hom(&mw, &mw).unwrap().complex().cohomology_dims(), BTreeMap::from([(0, 4)]));
}

#[test]
fn restriction() {
    let k = Arc::new(fixtures::kronecker(q()));
    let h = yoneda(k.clone(), ObjId(1));
    assert_eq!(restrict_module(&DgFunctor::identity(k.clone()), &h).unwrap(), h);

    // along the collapse: both values are k, identities act by 1, arrows by 0
    let g = fixtures::kronecker_collapse(q());
    let r = restrict_module(&g, &yoneda(g.dst().clone(), ObjId(0))).unwrap();
    assert!(r.validate().is_empty());
    for o in k.objects() {
        assert_eq!(r.value(o).dims(), &BTreeMap::from([(0, 1)]));
        assert_eq!(r.act(o, o, 0, &[q().one()], 0, &[q().one()]), vec![q().one()]);
    }
    for coords in [[q().one(), q().zero()], [q().zero(), q().one()]] {
        assert_eq!(r.act(ObjId(0), ObjId(1), 0, &coords, 0, &[q().one()]), vec![q().zero()]);
    }

    // Hom(h^A, Res h^{GA}) = Hom(GA, GA) on the A_2 hull inclusion
    let s = fixtures::a2_serre(q());
    let i = &s.inclusion;
    for a in i.src().objects() {
        let res = restrict_module(i, &yoneda(i.dst().clone(), i.object(a))).unwrap();
        let h = module_hom(&yoneda(i.src().clone(), a), &res).unwrap();
        assert_eq!(h.complex().cohomology_dims(), i.dst().hom(i.object(a), i.object(a)).complex.cohomology_dims());
    }
}

#[test]
fn quasi_equivalences() {
    let k = Arc::new(fixtures::kronecker(q()));
    let cert = EquivCertificate::with_object_witnesses(DgFunctor::identity(k.clone())).unwrap();
    assert_eq!(check_quasi_equiv(&cert).unwrap(), Verdict::Pass);

    let cert = EquivCertificate::with_object_witnesses(fixtures::kronecker_collapse(q())).unwrap();
    match check_quasi_equiv(&cert).unwrap() {
        Verdict::Fail(r) => assert_eq!(r, "H^0 Hom(e1,e2): 2 vs 1, induced rank 0"),
        Verdict::Pass => panic!("collapse is not a quasi-equivalence"),
    }
}

#[test]
fn inclusion_into_hull_is_a_quasi_equivalence() {
    let f = Field::prime(101).unwrap();
    let c = Arc::new(fixtures::kronecker(f));
    let a = arrow(&c, "a");
    let x = cone(&a).unwrap();
    let (e1, e2) = (TwistedComplex::embed(c.clone(), ObjId(0)), TwistedComplex::embed(c.clone(), ObjId(1)));
    let objs = vec![("e1".to_string(), e1.clone()), ("e2".to_string(), e2.clone()), ("c".to_string(), x.clone())];
    let d = Arc::new(hull_subcategory(&objs).unwrap());
    let mut maps = BTreeMap::new();
    for ((s, t), h) in c.homs() {
        for (&n, &dim) in h.complex.dims() {
            maps.insert((s.0, t.0, n), Matrix::identity(f, dim));
        }
    }
    let incl = DgFunctor::new(c.clone(), d.clone(), vec![ObjId(0), ObjId(1)], maps).unwrap();
    assert!(validate_functor(&incl).is_empty());

    let ext = pretr_extend(&incl);
    let image = ext.object(&x).unwrap();
    let target = TwistedComplex::embed(d.clone(), ObjId(2));
    let map = search_ho_iso(&image, &target, &SearchConfig::default()).unwrap().found().unwrap().clone();
    let mut witnesses = Vec::new();
    for (o, obj) in [(0, e1.clone()), (1, e2.clone())] {
        witnesses.push(EquivWitness { target: ObjId(o), object: obj, map: TwistedComplex::embed(d.clone(), ObjId(o)).identity() });
    }
    witnesses.push(EquivWitness { target: ObjId(2), object: x.clone(), map });
    let cert = EquivCertificate { functor: incl.clone(), witnesses: witnesses.clone() };
    assert_eq!(check_quasi_equiv(&cert).unwrap(), Verdict::Pass);

    // the extension is fully faithful on twisted complexes over the generators
    let b = arrow(&c, "b");
    let samples = [e1.clone(), e2.clone(), x.clone(), cone(&b).unwrap().shift(1), x.direct_sum(&e1).unwrap()];
    for s in &samples {
        for t in &samples {
            for n in -2..=2 {
                let (es, et) = (ext.object(s).unwrap(), ext.object(t).unwrap());
                assert_eq!(ho_hom(s, t, n).unwrap(), ho_hom(&es, &et, n).unwrap());
            }
        }
    }

    // a missing witness fails
    let cert = EquivCertificate { functor: cert.functor, witnesses: witnesses[..2].to_vec() };
    assert!(!check_quasi_equiv(&cert).unwrap().is_pass());
}

#[test]
fn serre_functors() {
    let s = fixtures::a2_serre(q());
    assert_eq!(verify_serre(&s).unwrap(), Verdict::Pass);
    for c in [3, -2] {
        assert!(verify_serre(&s.rescaled(&[q().from_i64(c), q().from_i64(c)])).unwrap().is_pass());
    }
    // independent rescaling keeps every pairing perfect but breaks naturality along a
    match verify_serre(&s.rescaled(&[q().from_i64(3), q().one()])).unwrap() {
        Verdict::Fail(r) => assert!(r.contains("not natural"), "{r}"),
        Verdict::Pass => panic!("naturality must fail"),
    }
    // a zero trace is degenerate
    assert!(!verify_serre(&s.rescaled(&[q().one(), q().zero()])).unwrap().is_pass());

    let k = Arc::new(fixtures::kronecker(q()));
    let id = SerreData::endo(DgFunctor::identity(k), vec![vec![q().one()], vec![q().one()]]);
    match verify_serre(&id).unwrap() {
        Verdict::Fail(r) => assert_eq!(r, "dim H^0 Hom(e1,e2) = 2 but dim H^0 Hom(e2,Se1) = 0"),
        Verdict::Pass => panic!("identity is not a Serre functor on the Kronecker quiver"),
    }

    let pt = Arc::new(fixtures::point(q()));
    let s = SerreData::endo(DgFunctor::identity(pt), vec![vec![q().one()]]);
    assert_eq!(verify_serre(&s).unwrap(), Verdict::Pass);
}

#[test]
fn duality() {
    let k = Arc::new(fixtures::kronecker(q()));
    let op = Arc::new(opposite(&k));
    let e1 = TwistedComplex::embed(k.clone(), ObjId(0));
    let e2 = TwistedComplex::embed(k.clone(), ObjId(1));
    assert_eq!(dualize_over(&e1, op.clone()).unwrap(), TwistedComplex::embed(op.clone(), ObjId(0)));

    let (a, b) = (arrow(&k, "a"), arrow(&k, "b"));
    let ca = cone(&a).unwrap();
    let e11 = e1.direct_sum(&e1).unwrap();
    let ev = TwistedMorphism::new(
        e11.clone(),
        e2.clone(),
        0,
        BTreeMap::from([((0, 0), a.entry(0, 0)), ((0, 1), b.entry(0, 0))]),
    )
    .unwrap();
    let samples = vec![
        e1.clone(),
        e2.clone().shift(2),
        ca.clone(),
        cone(&b).unwrap().shift(-1),
        cone(&ev).unwrap(),
        ca.direct_sum(&e1.shift(1)).unwrap(),
    ];
    let duals: Vec<_> = samples.iter().map(|x| dualize_over(x, op.clone()).unwrap()).collect();
    for (x, dx) in samples.iter().zip(&duals) {
        assert!(dx.terms().len() <= 3);
        assert_eq!(&dualize_over(dx, k.clone()).unwrap(), x);
        assert_eq!(&dualize(&dualize(x).unwrap()).unwrap(), x);
    }
    for (x, dx) in samples.iter().zip(&duals) {
        for (y, dy) in samples.iter().zip(&duals) {
            for n in -3..=3 {
                assert_eq!(ho_hom(dy, dx, n).unwrap(), ho_hom(x, y, n).unwrap());
            }
        }
    }
}
