//! Standard small categories used by the examples, tests and shipped fixture files.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dgcore::{from_quiver, point_category, tensor, DgCategory, ObjId, Quiver};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::cli::schema::{self, Document};
use crate::functors::{point_equivalence, DgFunctor, SerreData};
use crate::pretr::{cone, cone_maps, hull_subcategory, KaroubiObject, TwistedComplex, TwistedHom, TwistedMorphism};
use crate::ptring::{ClassExpr, Ledger, ProductMode, Provenance, RingError, TensorValue, DEFAULT_DEGREE_BOUND};
use crate::sodgen::{CutWitness, GenerationCertificate, SodClaim, Step};

pub fn point(field: Field) -> DgCategory {
    point_category(field)
}

/// One object `o` with `End(o) = k[ε]/ε²`, `|ε| = 1`, `dε = 0`.
pub fn epsilon(field: Field) -> DgCategory {
    from_quiver(&Quiver::new(field).vertex("o").graded_arrow("ε", "o", "o", 1).relation(&[(1, "ε*ε")]))
        .expect("finite")
}

/// `e1 → e2` with one arrow `a`.
pub fn a2(field: Field) -> DgCategory {
    from_quiver(&Quiver::new(field).vertex("e1").vertex("e2").arrow("a", "e1", "e2")).expect("finite")
}

/// Two parallel arrows `a, b: e1 → e2`; a model of the derived category of the projective line.
pub fn kronecker(field: Field) -> DgCategory {
    from_quiver(&Quiver::new(field).vertex("e1").vertex("e2").arrow("a", "e1", "e2").arrow("b", "e1", "e2"))
        .expect("finite")
}

/// The Beilinson quiver for the projective space of dimension `n`: vertices `1..=n+1`, arrows
/// `x{k}_{i}: k → k+1`, commutativity relations `x{k}_i x{k+1}_j = x{k}_j x{k+1}_i`.
pub fn beilinson(field: Field, n: usize) -> DgCategory {
    let mut q = Quiver::new(field);
    for v in 1..=n + 1 {
        q = q.vertex(&v.to_string());
    }
    for k in 1..=n {
        for i in 0..=n {
            q = q.arrow(&format!("x{k}_{i}"), &k.to_string(), &(k + 1).to_string());
        }
    }
    for k in 1..n {
        for i in 0..=n {
            for j in i + 1..=n {
                let (a, b) = (format!("x{k}_{i}*x{}_{j}", k + 1), format!("x{k}_{j}*x{}_{i}", k + 1));
                q = q.relation(&[(1, &a), (-1, &b)]);
            }
        }
    }
    from_quiver(&q).expect("finite")
}

/// The functor from the Kronecker quiver to the point sending both arrows to zero.
pub fn kronecker_collapse(field: Field) -> DgFunctor {
    let k = Arc::new(kronecker(field));
    let pt = Arc::new(point(field));
    let mut maps = BTreeMap::new();
    for o in [0, 1] {
        maps.insert((o, o, 0), Matrix::identity(field, 1));
    }
    DgFunctor::new(k, pt, vec![ObjId(0), ObjId(0)], maps).expect("well-shaped")
}

/// The Nakayama functor of the `A_2` quiver realized in the pretriangulated hull of `A_2` on
/// `e1, e2, cone(a)`: `S(e1) = e2`, `S(e2) = cone(a)`, `S(a) = j`, with the trace pairings
/// reading off the coefficient of `a` and of `id_{e2}`.
pub fn a2_serre(field: Field) -> SerreData {
    let c = Arc::new(a2(field));
    let (e1, e2) = (ObjId(0), ObjId(1));
    let a = TwistedMorphism::from_base(c.clone(), &c.named_morphism(e1, e2, "a").expect("arrow a"));
    let maps = cone_maps(&a).expect("a is closed");
    let x1 = TwistedComplex::embed(c.clone(), e1);
    let x2 = TwistedComplex::embed(c.clone(), e2);
    let objs = vec![("e1".to_string(), x1), ("e2".to_string(), x2.clone()), ("cone(a)".to_string(), maps.cone.clone())];
    let d = Arc::new(hull_subcategory(&objs).expect("hull"));
    let cc = ObjId(2);
    let col = |v: Vec<Scalar>| Matrix::from_columns(field, v.len(), &[v]).expect("column");
    let j = TwistedHom::new(&x2, &maps.cone).expect("hom").coords(&maps.j);
    let s_maps = BTreeMap::from([
        ((0, 0, 0), Matrix::identity(field, 1)),
        ((1, 1, 0), col(d.identity_coords(cc).clone())),
        ((0, 1, 0), col(j)),
    ]);
    let s = DgFunctor::new(c.clone(), d.clone(), vec![e2, cc], s_maps).expect("well-shaped");
    let i_maps = BTreeMap::from([
        ((0, 0, 0), Matrix::identity(field, 1)),
        ((1, 1, 0), Matrix::identity(field, 1)),
        ((0, 1, 0), Matrix::identity(field, 1)),
    ]);
    let i = DgFunctor::new(c, d, vec![e1, e2], i_maps).expect("well-shaped");
    SerreData { functor: s, inclusion: i, traces: vec![vec![field.one()], vec![field.one()]] }
}

/// The Kronecker quiver with blocks `({e1}, {e2})`.
pub fn kronecker_claim(field: Field) -> SodClaim {
    SodClaim::from_blocks(Arc::new(kronecker(field)), vec![vec![ObjId(0)], vec![ObjId(1)]])
}

/// [`kronecker_claim`] with the triangle for `e2` replaced by `u = 0: e2 → e2`.
pub fn kronecker_claim_broken(field: Field) -> SodClaim {
    let mut claim = kronecker_claim(field);
    let w = claim.witnesses.iter_mut().find(|w| w.generator == ObjId(1)).expect("witness for e2");
    let e2 = w.x_b.target.clone();
    w.u = TwistedMorphism::zero(&e2, &e2, 0);
    let c = cone(&w.u).expect("zero is closed");
    w.cone = GenerationCertificate::zero(w.cone.base.clone(), w.cone.generators.clone(), c);
    claim
}

/// The full exceptional collection `(1, ..., n+1)` of the Beilinson quiver.
pub fn beilinson_claim(field: Field, n: usize) -> SodClaim {
    let c = Arc::new(beilinson(field, n));
    let blocks = c.objects().map(|o| vec![o]).collect();
    SodClaim::from_blocks(c, blocks)
}

/// The tensor square of the Kronecker quiver with blocks `(1,1), (1,2), (2,1), (2,2)`.
pub fn kronecker_square_claim(field: Field) -> SodClaim {
    let k = kronecker(field);
    let c = Arc::new(tensor(&k, &k).expect("same field"));
    let blocks = c.objects().map(|o| vec![o]).collect();
    SodClaim::from_blocks(c, blocks)
}

/// The Kronecker hull on `e1, e2, L = cone(ev: e1 ⊕ e1 → e2)`, with the ambient generators
/// `e1, e2` decomposed along the blocks `({L}, {e1})`. The triangle for `e2` is
/// `e1 ⊕ e1 → e2 → cone(ev)` with `cone(ev) ≅ L`.
pub fn kronecker_mutated_claim(field: Field) -> SodClaim {
    let k = Arc::new(kronecker(field));
    let l = cone(&evaluation(&k)).expect("ev is closed");
    let objs = vec![
        ("e1".to_string(), TwistedComplex::embed(k.clone(), ObjId(0))),
        ("e2".to_string(), TwistedComplex::embed(k.clone(), ObjId(1))),
        ("L".to_string(), l),
    ];
    let d = Arc::new(hull_subcategory(&objs).expect("hull"));
    let (e1, e2, lo) = (ObjId(0), ObjId(1), ObjId(2));
    let mut claim = SodClaim::from_blocks(d.clone(), vec![vec![lo], vec![e1]]);
    claim.ambient_generators = vec![e1, e2];
    claim.witnesses.retain(|w| w.generator == e1);

    let ev = evaluation(&d);
    let x_b = ev.src().clone();
    let c = cone(&ev).expect("ev is closed");
    let embed_l = TwistedComplex::embed(d.clone(), lo);
    let hom = TwistedHom::new(&embed_l, &c).expect("same base");
    let rep = hom.complex().cohomology_basis(0).representatives()[0].clone();
    let x_cert = GenerationCertificate {
        base: d.clone(),
        generators: vec![e1],
        steps: vec![Step::Leaf { generator: e1, shift: 0 }, Step::Leaf { generator: e1, shift: 0 }, Step::Sum(vec![0, 1])],
        final_iso: x_b.identity(),
        target: x_b,
    };
    let cone_cert = GenerationCertificate {
        base: d.clone(),
        generators: vec![lo],
        steps: vec![Step::Leaf { generator: lo, shift: 0 }],
        final_iso: hom.morphism(0, &rep),
        target: c,
    };
    claim.witnesses.push(CutWitness { generator: e2, cut: 1, x_b: x_cert, u: ev, cone: cone_cert });
    claim
}

/// `ev = (a, b): e1 ⊕ e1 → e2` over a category whose first two objects are `e1, e2` with
/// `Hom(e1, e2)^0` spanned by `a, b`.
pub fn evaluation(c: &Arc<DgCategory>) -> TwistedMorphism {
    let e1 = TwistedComplex::embed(c.clone(), ObjId(0));
    let e2 = TwistedComplex::embed(c.clone(), ObjId(1));
    let h = c.hom(ObjId(0), ObjId(1));
    assert_eq!(h.dim(0), 2, "Hom(e1, e2)^0 must be 2-dimensional");
    let f = c.field();
    let entries = BTreeMap::from([((0, 0), vec![f.one(), f.zero()]), ((0, 1), vec![f.zero(), f.one()])]);
    TwistedMorphism::new(e1.direct_sum(&e1).expect("same base"), e2, 0, entries).expect("well-shaped")
}

/// Singleton blocks in object order on `left ⊗ right`.
pub fn tensor_claim(left: &DgCategory, right: &DgCategory) -> SodClaim {
    let c = Arc::new(tensor(left, right).expect("same field"));
    let blocks = c.objects().map(|o| vec![o]).collect();
    SodClaim::from_blocks(c, blocks)
}

/// Blocks `{(b, x) : x}` for each object `b` of `left`, in order, on `left ⊗ right`.
pub fn induced_tensor_claim(left: &DgCategory, right: &DgCategory) -> SodClaim {
    let c = Arc::new(tensor(left, right).expect("same field"));
    let n = right.num_objects();
    let blocks = left.objects().map(|b| (0..n).map(|x| ObjId(b.0 * n + x)).collect()).collect();
    SodClaim::from_blocks(c, blocks)
}

/// `[P1] = 2[pt]` from the Kronecker decomposition.
pub fn kronecker_ledger(field: Field) -> Result<Ledger, RingError> {
    Ledger::gamma(DEFAULT_DEGREE_BOUND)
        .register("P1", true, Some(Arc::new(kronecker(field))))?
        .add_sod_relation("P1", Ledger::point_blocks(kronecker_claim(field))?)
}

/// The motivic dataset: verified decompositions of `P1`, `P2` and `P1xP1`, verified tensor
/// identifications for products with `P1`, and cited relations for a blowup `X` of `Y` along
/// `Z` of codimension 2 with exceptional divisor `E`.
pub fn motivic_ledger(field: Field) -> Result<Ledger, RingError> {
    let k = kronecker(field);
    let b = beilinson(field, 2);
    let kk = tensor(&k, &k).expect("same field");
    let mut l = kronecker_ledger(field)?
        .register("P2", true, Some(Arc::new(b.clone())))?
        .register("P1xP1", true, Some(Arc::new(kk.clone())))?;
    for v in ["X", "Y", "Z", "E"] {
        l = l.register(v, true, None)?;
    }
    l = l
        .add_sod_relation("P2", Ledger::point_blocks(beilinson_claim(field, 2))?)?
        .add_sod_relation("P1xP1", Ledger::point_blocks(kronecker_square_claim(field))?)?
        .add_relation(
            ClassExpr::parse("[E] - 2*[Z]").expect("literal"),
            Provenance::Paper("projective bundle formula: E is a P^1-bundle over Z, so [E] = 2[Z]".into()),
        )?
        .add_relation(
            ClassExpr::parse("[X] + [Z] - [Y] - [E]").expect("literal"),
            Provenance::Paper("blowup formula: [X] + [Z] = [Y] + [E] for the blowup X of Y along Z".into()),
        )?;
    let tensor_fact = |right: &str, value: TensorValue| Provenance::VerifiedTensor {
        left: "P1".into(),
        right: right.into(),
        mode: ProductMode::Bullet,
        value,
    };
    l = l
        .add_product_fact("P1", "P1", ClassExpr::generator("P1xP1"), tensor_fact("P1", TensorValue::Generator("P1xP1".into())))?
        .add_product_fact(
            "P1",
            "P2",
            ClassExpr::integer(6),
            tensor_fact("P2", TensorValue::Decomposed(Ledger::point_blocks(tensor_claim(&k, &b))?)),
        )?
        .add_product_fact(
            "P1",
            "P1xP1",
            ClassExpr::integer(8),
            tensor_fact("P1xP1", TensorValue::Decomposed(Ledger::point_blocks(tensor_claim(&k, &kk))?)),
        )?;
    for v in ["X", "Y", "Z", "E"] {
        let value = &ClassExpr::integer(2) * &ClassExpr::generator(v);
        l = l.add_product_fact("P1", v, value, Provenance::Paper(format!("[P1]*[{v}] = [P1 x {v}] = 2[{v}], trivial P^1-bundle")))?;
    }
    Ok(l)
}

/// `x, y` with `Hom(x, y) = k` in degrees 0, 1, 2 and both differentials the identity, so
/// `d² ≠ 0` in degree 0.
pub fn broken_differential(field: Field) -> DgCategory {
    use crate::dgcore::HomSpace;
    use crate::exactlin::ChainComplex;
    let mut c = DgCategory::new(field);
    let (x, y) = (c.add_object("x").expect("fresh"), c.add_object("y").expect("fresh"));
    let one = |n: i64| (n, vec![format!("f{n}")]);
    let end = HomSpace::new(ChainComplex::graded(field, [(0, 1)].into()), [(0, vec!["1".to_string()])].into()).expect("consistent");
    let id = Matrix::identity(field, 1);
    let d = ChainComplex::new(field, [(0, 1), (1, 1), (2, 1)].into(), [(0, id.clone()), (1, id)].into()).expect("shapes");
    let hom = HomSpace::new(d, [one(0), one(1), one(2)].into()).expect("consistent");
    for o in [x, y] {
        c.set_hom(o, o, end.clone()).expect("valid");
        c.set_comp(o, o, o, 0, 0, 0, 0, vec![field.one()]).expect("valid");
        c.set_identity(o, vec![field.one()]).expect("valid");
    }
    c.set_hom(x, y, hom).expect("valid");
    for n in 0..3 {
        c.set_comp(x, x, y, 0, 0, n, 0, vec![field.one()]).expect("valid");
        c.set_comp(x, y, y, n, 0, 0, 0, vec![field.one()]).expect("valid");
    }
    c
}

/// `e1 ⊕ e1` cut down by the projection onto the first summand.
pub fn kronecker_summand(field: Field) -> KaroubiObject {
    let c = Arc::new(kronecker(field));
    let e1 = TwistedComplex::embed(c.clone(), ObjId(0));
    let x = e1.direct_sum(&e1).expect("same base");
    let e = TwistedMorphism::new(x.clone(), x.clone(), 0, BTreeMap::from([((0, 0), c.identity_coords(ObjId(0)).clone())]))
        .expect("well-shaped");
    KaroubiObject::new(x.clone(), e, TwistedMorphism::zero(&x, &x, -1)).expect("strict idempotent")
}

/// `cone(a)` built from the leaves `e1`, `e2` and one cone step.
pub fn kronecker_cone_certificate(field: Field) -> GenerationCertificate {
    let c = Arc::new(kronecker(field));
    let a = TwistedMorphism::from_base(c.clone(), &c.named_morphism(ObjId(0), ObjId(1), "a").expect("arrow a"));
    let target = cone(&a).expect("closed");
    GenerationCertificate {
        base: c.clone(),
        generators: vec![ObjId(0), ObjId(1)],
        steps: vec![
            Step::Leaf { generator: ObjId(0), shift: 0 },
            Step::Leaf { generator: ObjId(1), shift: 0 },
            Step::Cone { src: 0, dst: 1, map: a },
        ],
        final_iso: target.identity(),
        target,
    }
}

/// Every shipped fixture file name with its document, over Q.
pub fn shipped() -> Vec<(&'static str, Document)> {
    let q = Field::Rational;
    let k = Arc::new(kronecker(q));
    let ev = evaluation(&k);
    let e1 = TwistedComplex::embed(k.clone(), ObjId(0));
    let kk = tensor(&k, &k).expect("same field");
    let e1_block = Arc::new(k.full_subcategory(&[ObjId(0)]).expect("object"));
    let point_cert = point_equivalence(&e1_block).expect("computable").expect("e1 is exceptional");
    vec![
        ("point.json", schema::category_document(&point(q))),
        ("epsilon.json", schema::category_document(&epsilon(q))),
        ("a2.json", schema::category_document(&a2(q))),
        ("kronecker.json", schema::category_document(&k)),
        ("beilinson3.json", schema::category_document(&beilinson(q, 2))),
        ("kronecker_squared.json", schema::category_document(&kk)),
        ("broken_differential.json", schema::category_document(&broken_differential(q))),
        ("kronecker_collapse.json", schema::functor_document(&kronecker_collapse(q))),
        ("kronecker_ev.json", schema::morphism_document(&ev)),
        ("kronecker_ev_cone.json", schema::complex_document(&cone(&ev).expect("closed"))),
        ("cone_id.json", schema::complex_document(&cone(&e1.identity()).expect("closed"))),
        ("kronecker_summand.json", schema::karoubi_document(&kronecker_summand(q))),
        ("kronecker_cone_certificate.json", schema::certificate_document(&kronecker_cone_certificate(q))),
        ("kronecker_sod.json", schema::claim_document(&kronecker_claim(q))),
        ("kronecker_sod_broken.json", schema::claim_document(&kronecker_claim_broken(q))),
        ("kronecker_mutated_sod.json", schema::claim_document(&kronecker_mutated_claim(q))),
        ("beilinson3_sod.json", schema::claim_document(&beilinson_claim(q, 2))),
        ("kronecker_squared_sod.json", schema::claim_document(&kronecker_square_claim(q))),
        ("point_block_qe.json", schema::equiv_document(&point_cert)),
        ("a2_serre.json", schema::serre_document(&a2_serre(q))),
        ("kronecker_identity_serre.json", schema::serre_document(&SerreData::endo(DgFunctor::identity(k.clone()), vec![vec![q.one()], vec![q.one()]]))),
        ("kronecker_ledger.json", schema::ledger_document(&kronecker_ledger(q).expect("verified"), q)),
        ("motivic_ledger.json", schema::ledger_document(&motivic_ledger(q).expect("verified"), q)),
    ]
}
