use std::collections::BTreeMap;
use std::sync::Arc;

use dgcat::dgcore::{tensor, ObjId};
use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::pretr::{cone, hom_complex, is_ho_iso, TwistedComplex, TwistedMorphism};
use dgcat::sodgen::*;

fn q() -> Field {
    Field::Rational
}

fn ev_certificate() -> GenerationCertificate {
    let k = Arc::new(fixtures::kronecker(q()));
    let ev = fixtures::evaluation(&k);
    let target = cone(&ev).unwrap();
    GenerationCertificate {
        base: k.clone(),
        generators: vec![ObjId(0), ObjId(1)],
        steps: vec![
            Step::Leaf { generator: ObjId(0), shift: 0 },
            Step::Leaf { generator: ObjId(0), shift: 0 },
            Step::Sum(vec![0, 1]),
            Step::Leaf { generator: ObjId(1), shift: 0 },
            Step::Cone { src: 2, dst: 3, map: ev },
        ],
        final_iso: target.identity(),
        target,
    }
}

#[test]
fn generation_layers() {
    let k = Arc::new(fixtures::kronecker(q()));
    let r = verify_generation(&GenerationCertificate::leaf(k.clone(), ObjId(0))).unwrap();
    assert_eq!((r.ok, r.layers), (true, 1));

    let cert = ev_certificate();
    let r = verify_generation(&cert).unwrap();
    assert_eq!((r.ok, r.layers), (true, 2));

    // a cone of the previous object with a leaf adds the layer counts
    let mut nested = cert.clone();
    let x = cert.target.clone();
    let e2 = TwistedComplex::embed(k.clone(), ObjId(1));
    let s = fixtures::evaluation(&k);
    let maps = dgcat::pretr::cone_maps(&s).unwrap();
    nested.steps.push(Step::Leaf { generator: ObjId(1), shift: 0 });
    nested.steps.push(Step::Cone { src: 5, dst: 4, map: maps.j.clone() });
    let t = cone(&maps.j).unwrap();
    nested.final_iso = t.identity();
    nested.target = t;
    assert_eq!(maps.j.src(), &e2);
    assert_eq!(maps.j.dst(), &x);
    let r = verify_generation(&nested).unwrap();
    assert_eq!((r.ok, r.layers), (true, 3));
}

#[test]
fn generation_failures() {
    let k = Arc::new(fixtures::kronecker(q()));
    let e1 = TwistedComplex::embed(k.clone(), ObjId(0));
    let x = e1.direct_sum(&e1).unwrap();
    let two = x.identity().scaled(&q().from_i64(2));
    let proj = TwistedMorphism::new(x.clone(), e1.clone(), 0, BTreeMap::from([((0, 0), k.identity_coords(ObjId(0)).clone())])).unwrap();
    let mut cert = GenerationCertificate {
        base: k.clone(),
        generators: vec![ObjId(0)],
        steps: vec![
            Step::Leaf { generator: ObjId(0), shift: 0 },
            Step::Leaf { generator: ObjId(0), shift: 0 },
            Step::Sum(vec![0, 1]),
            Step::Summand { of: 2, idempotent: two, witness: TwistedMorphism::zero(&x, &x, -1) },
        ],
        target: e1.clone(),
        final_iso: proj.clone(),
    };
    let r = verify_generation(&cert).unwrap();
    assert!(!r.ok);
    assert_eq!(r.failure.as_ref().unwrap().0, 3);

    // the honest projector splits off e1
    let e = TwistedMorphism::new(x.clone(), x.clone(), 0, BTreeMap::from([((0, 0), k.identity_coords(ObjId(0)).clone())])).unwrap();
    cert.steps[3] = Step::Summand { of: 2, idempotent: e, witness: TwistedMorphism::zero(&x, &x, -1) };
    let r = verify_generation(&cert).unwrap();
    assert_eq!((r.ok, r.layers), (true, 1));

    cert.steps.push(Step::Sum(vec![7]));
    assert_eq!(verify_generation(&cert).unwrap_err(), SodError::DanglingStep { step: 4, reference: 7 });

    // leaves must use the declared generators
    let mut c2 = GenerationCertificate::leaf(k.clone(), ObjId(1));
    c2.generators = vec![ObjId(0)];
    assert_eq!(verify_generation(&c2).unwrap().failure.unwrap().0, 0);

    // a zero final map is not an equivalence
    let mut c3 = GenerationCertificate::leaf(k.clone(), ObjId(0));
    c3.final_iso = TwistedMorphism::zero(&e1, &e1, 0);
    assert_eq!(verify_generation(&c3).unwrap().failure.unwrap().0, 1);
}

#[test]
fn orthogonality() {
    let k = Arc::new(fixtures::kronecker(q()));
    let (e1, e2) = (ObjId(0), ObjId(1));
    assert!(!right_orthogonal_check(&[e1], &TwistedComplex::embed(k.clone(), e2)).unwrap());
    assert!(right_orthogonal_check(&[e2], &TwistedComplex::embed(k.clone(), e1)).unwrap());
    let l = cone(&fixtures::evaluation(&k)).unwrap();
    assert!(right_orthogonal_check(&[e1], &l).unwrap());
    // the Hom complex k² → k² is an isomorphism
    let h = hom_complex(&TwistedComplex::embed(k.clone(), e1), &l).unwrap();
    assert_eq!(h.dims(), &BTreeMap::from([(-1, 2), (0, 2)]));
    assert_eq!(h.diff(-1).rank(), 2);

    assert!(check_semiorthogonality(&k, &[vec![e1], vec![e2]]));
    assert!(!check_semiorthogonality(&k, &[vec![e2], vec![e1]]));
    let kk = tensor(&k, &k).unwrap();
    let order: Vec<Vec<ObjId>> = ["(e1,e1)", "(e1,e2)", "(e2,e1)", "(e2,e2)"].iter().map(|l| vec![kk.obj(l).unwrap()]).collect();
    assert!(check_semiorthogonality(&kk, &order));
}

#[test]
fn exceptional_collections_and_ext_tables() {
    let k = fixtures::kronecker(q());
    assert!(check_exceptional_collection(&k, &[ObjId(0), ObjId(1)]));
    assert!(!check_exceptional_collection(&k, &[ObjId(1), ObjId(0)]));
    let b = fixtures::beilinson(q(), 2);
    let objs: Vec<ObjId> = b.objects().collect();
    assert!(check_exceptional_collection(&b, &objs));
    let e = fixtures::epsilon(q());
    assert!(!check_exceptional_collection(&e, &[ObjId(0)]));

    let m = |pairs: &[(i64, usize)]| pairs.iter().copied().collect::<BTreeMap<_, _>>();
    assert_eq!(
        ext_table(&k, &[ObjId(0), ObjId(1)]),
        vec![vec![m(&[(0, 1)]), m(&[(0, 2)])], vec![m(&[]), m(&[(0, 1)])]]
    );
    assert_eq!(ext_table(&fixtures::point(q()), &[ObjId(0)]), vec![vec![m(&[(0, 1)])]]);
    let t = ext_table(&b, &objs);
    assert_eq!((t[0][1][&0], t[1][2][&0], t[0][2][&0]), (3, 3, 6));
    for i in 0..3 {
        assert_eq!(t[i][i], m(&[(0, 1)]));
        for j in 0..i {
            assert!(t[i][j].is_empty());
        }
    }
}

#[test]
fn kronecker_claims() {
    let trail = check_sod(&fixtures::kronecker_claim(q())).unwrap();
    assert!(trail.passed(), "{trail}");
    assert!(!trail.notes.is_empty());

    let trail = check_sod(&fixtures::kronecker_claim_broken(q())).unwrap();
    assert!(!trail.passed());
    let failed: Vec<&str> = trail.failures().map(|o| o.name.as_str()).collect();
    assert!(failed.contains(&"e2 @ cut 1: cone(u) right-orthogonal to the later blocks"), "{trail}");
    assert!(failed.contains(&"e2 @ cut 1: cone(u) generated"), "{trail}");
    assert!(failed.iter().all(|n| n.starts_with("e2")));

    // a missing witness is reported, not an error
    let mut claim = fixtures::kronecker_claim(q());
    claim.witnesses.pop();
    assert!(!check_sod(&claim).unwrap().passed());
}

#[test]
fn mutated_kronecker_claim() {
    let claim = fixtures::kronecker_mutated_claim(q());
    let trail = check_sod(&claim).unwrap();
    assert!(trail.passed(), "{trail}");
    assert!(check_semiorthogonality(&claim.base, &claim.blocks));

    // triangle Euler identity against every probe
    let d = &claim.base;
    for w in &claim.witnesses {
        let e = TwistedComplex::embed(d.clone(), w.generator);
        let c = cone(&w.u).unwrap();
        assert!(is_ho_iso(&w.cone.final_iso).unwrap());
        for t in d.objects() {
            let t = TwistedComplex::embed(d.clone(), t);
            let chi = |x: &TwistedComplex| -> i64 {
                hom_complex(&t, x).unwrap().cohomology_dims().iter().map(|(n, k)| if n % 2 == 0 { *k as i64 } else { -(*k as i64) }).sum()
            };
            assert_eq!(chi(&w.x_b.target) - chi(&e) + chi(&c), 0);
        }
    }
}

#[test]
fn larger_claims() {
    for claim in [fixtures::beilinson_claim(q(), 2), fixtures::kronecker_square_claim(q())] {
        let trail = check_sod(&claim).unwrap();
        assert!(trail.passed(), "{trail}");
        let objs: Vec<ObjId> = claim.blocks.iter().flatten().copied().collect();
        assert!(check_exceptional_collection(&claim.base, &objs));
    }
}
