//! Seeded generators for randomized checks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dgcore::{from_quiver, DgCategory, ObjId, Quiver};
use crate::exactlin::{axpy, zero_vector, Field, Scalar};
use crate::pretr::{cone, TwistedComplex, TwistedHom};

#[derive(Clone, Copy, Debug)]
pub struct CategoryShape {
    pub max_objects: usize,
    pub max_arrows_per_pair: usize,
    /// Upper bound on the total dimension of every Hom complex.
    pub max_hom_dim: usize,
}

impl Default for CategoryShape {
    fn default() -> Self {
        CategoryShape { max_objects: 4, max_arrows_per_pair: 2, max_hom_dim: 6 }
    }
}

struct Arr {
    name: String,
    src: usize,
    dst: usize,
    degree: i64,
    closed: bool,
}

fn nonzero_coeff(rng: &mut impl Rng) -> i64 {
    *[-2, -1, 1, 2].choose(rng).unwrap()
}

/// Path category of a random acyclic graded quiver.
///
/// Arrows are either closed, or have a differential in the span of parallel closed arrows
/// and composites of two closed arrows; most non-closed arrows get a closed parallel partner
/// one degree up. Some composites of closed arrows are set to zero.
pub fn random_quiver_category(rng: &mut impl Rng, field: Field, shape: CategoryShape) -> DgCategory {
    loop {
        if let Some(c) = try_quiver_category(rng, field, shape) {
            return c;
        }
    }
}

fn try_quiver_category(rng: &mut impl Rng, field: Field, shape: CategoryShape) -> Option<DgCategory> {
    let n = rng.gen_range(1..=shape.max_objects);
    let mut arrows: Vec<Arr> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for _ in 0..rng.gen_range(0..=shape.max_arrows_per_pair) {
                let name = format!("a{}", arrows.len());
                arrows.push(Arr { name, src: i, dst: j, degree: rng.gen_range(-1..=1), closed: rng.gen_bool(0.6) });
            }
        }
    }
    let partners: Vec<Arr> = arrows
        .iter()
        .filter(|a| !a.closed && rng.gen_bool(0.7))
        .enumerate()
        .map(|(k, a)| Arr { name: format!("b{k}"), src: a.src, dst: a.dst, degree: a.degree + 1, closed: true })
        .collect();
    arrows.extend(partners);
    let mut q = Quiver::new(field);
    for i in 0..n {
        q = q.vertex(&format!("v{i}"));
    }
    for a in &arrows {
        q = q.graded_arrow(&a.name, &format!("v{}", a.src), &format!("v{}", a.dst), a.degree);
    }
    let closed: Vec<&Arr> = arrows.iter().filter(|a| a.closed).collect();
    for a in arrows.iter().filter(|a| !a.closed) {
        let mut candidates: Vec<String> = closed
            .iter()
            .filter(|b| b.src == a.src && b.dst == a.dst && b.degree == a.degree + 1)
            .map(|b| b.name.clone())
            .collect();
        for u in closed.iter().filter(|u| u.src == a.src) {
            for v in closed.iter().filter(|v| v.src == u.dst && v.dst == a.dst) {
                if u.degree + v.degree == a.degree + 1 {
                    candidates.push(format!("{}*{}", u.name, v.name));
                }
            }
        }
        if candidates.is_empty() {
            continue;
        }
        candidates.shuffle(rng);
        let k = rng.gen_range(1..=candidates.len().min(2));
        let terms: Vec<(i64, &str)> = candidates[..k].iter().map(|p| (nonzero_coeff(rng), p.as_str())).collect();
        q = q.diff(&a.name, &terms);
    }
    for u in &closed {
        for v in closed.iter().filter(|v| v.src == u.dst) {
            if rng.gen_bool(0.3) {
                q = q.relation(&[(1, &format!("{}*{}", u.name, v.name))]);
            }
        }
    }
    let c = from_quiver(&q).ok()?;
    let small = c.homs().all(|(_, h)| h.complex.total_dim() <= shape.max_hom_dim);
    small.then_some(c)
}

fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

/// Random closed degree-0 map `x → y`: a random combination of a basis of degree-0 cycles.
pub fn random_closed_map(
    rng: &mut impl Rng,
    x: &TwistedComplex,
    y: &TwistedComplex,
) -> crate::pretr::TwistedMorphism {
    let h = TwistedHom::new(x, y).expect("same base");
    let field = x.base().field();
    let mut coords = zero_vector(field, h.dim(0));
    for z in h.complex().diff(0).nullspace() {
        axpy(&mut coords, &random_scalar(rng, field), &z);
    }
    h.morphism(0, &coords)
}

/// Random twisted complex with `1..=max_terms` terms, built from shifted objects by direct
/// sums and cones of random closed maps.
pub fn random_twisted_complex(rng: &mut impl Rng, base: &Arc<DgCategory>, max_terms: usize) -> TwistedComplex {
    let n = rng.gen_range(1..=max_terms.max(1));
    build(rng, base, n)
}

fn build(rng: &mut impl Rng, base: &Arc<DgCategory>, n: usize) -> TwistedComplex {
    if n == 1 {
        let a = ObjId(rng.gen_range(0..base.num_objects()));
        return TwistedComplex::embed(base.clone(), a).shift(rng.gen_range(-1..=1));
    }
    let k = rng.gen_range(1..n);
    let x = build(rng, base, k);
    let y = build(rng, base, n - k);
    if rng.gen_bool(0.25) {
        return x.direct_sum(&y).expect("same base");
    }
    let f = random_closed_map(rng, &x, &y);
    cone(&f).expect("closed of degree 0")
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::dgcore::validate;

    #[test]
    fn generated_categories_respect_the_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let shape = CategoryShape::default();
        for _ in 0..20 {
            let c = random_quiver_category(&mut rng, Field::Rational, shape);
            assert!(c.num_objects() <= 4);
            assert!(c.homs().all(|(_, h)| h.complex.total_dim() <= 6));
            assert!(validate(&c).is_valid());
        }
    }

    #[test]
    fn generated_complexes_satisfy_maurer_cartan() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let base = Arc::new(crate::fixtures::kronecker(Field::Rational));
        for _ in 0..20 {
            let x = random_twisted_complex(&mut rng, &base, 5);
            assert!(x.len() <= 5 && !x.is_empty());
            assert!(x.maurer_cartan_defect().is_empty());
        }
    }
}
