use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{Field, Scalar, Vector};

use super::{is_ho_iso, karoubi_inverse, KaroubiObject, PretrError, TwistedComplex, TwistedHom, TwistedMorphism};

/// Budget for equivalence searches. Over a prime field all classes are enumerated when there
/// are at most `max_enumeration` of them; otherwise `samples` random classes are tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_enumeration: u64,
    pub samples: usize,
    pub seed: u64,
    pub coeff_bound: i64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_enumeration: 100_000, samples: 200, seed: 0, coeff_bound: 3 }
    }
}

/// A failed search proves nothing about non-isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(TwistedMorphism),
    NotFound { tried: u64, exhaustive: bool },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&TwistedMorphism> {
        match self {
            SearchOutcome::Found(f) => Some(f),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

/// Candidate coefficient vectors for classes in an `n`-dimensional cohomology space.
fn candidates(field: Field, n: usize, cfg: &SearchConfig) -> (Box<dyn Iterator<Item = Vector>>, bool) {
    if let Field::Prime(p) = field {
        let total = (p as u64).checked_pow(n as u32);
        if let Some(total) = total.filter(|t| *t <= cfg.max_enumeration) {
            let it = (0..total).map(move |mut k| {
                (0..n)
                    .map(|_| {
                        let d = (k % p as u64) as i64;
                        k /= p as u64;
                        field.from_i64(d)
                    })
                    .collect()
            });
            return (Box::new(it), true);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bound = cfg.coeff_bound.max(1);
    let it = (0..cfg.samples).map(move |_| (0..n).map(|_| field.from_i64(rng.gen_range(-bound..=bound))).collect());
    (Box::new(it), false)
}

fn combine(hom: &TwistedHom, reps: &[Vector], c: &[Scalar]) -> TwistedMorphism {
    let field = hom.src().base().field();
    let mut v = vec![field.zero(); hom.dim(0)];
    for (x, r) in c.iter().zip(reps) {
        crate::exactlin::axpy(&mut v, x, r);
    }
    hom.morphism(0, &v)
}

/// Looks for a homotopy equivalence `x → y` among classes in `H^0 Hom(x, y)`.
pub fn search_ho_iso(x: &TwistedComplex, y: &TwistedComplex, cfg: &SearchConfig) -> Result<SearchOutcome, PretrError> {
    let hom = TwistedHom::new(x, y)?;
    let basis = hom.complex().cohomology_basis(0);
    let reps = basis.representatives().to_vec();
    let (it, exhaustive) = candidates(x.base().field(), reps.len(), cfg);
    let mut tried = 0;
    for c in it {
        tried += 1;
        let f = combine(&hom, &reps, &c);
        if is_ho_iso(&f)? {
            return Ok(SearchOutcome::Found(f));
        }
    }
    Ok(SearchOutcome::NotFound { tried, exhaustive })
}

/// Looks for an isomorphism `a → b` in the Karoubi envelope.
pub fn search_karoubi_iso(a: &KaroubiObject, b: &KaroubiObject, cfg: &SearchConfig) -> Result<SearchOutcome, PretrError> {
    let hom = TwistedHom::new(a.carrier(), b.carrier())?;
    let basis = hom.complex().cohomology_basis(0);
    let reps = basis.representatives().to_vec();
    let (it, exhaustive) = candidates(a.carrier().base().field(), reps.len(), cfg);
    let mut tried = 0;
    for c in it {
        tried += 1;
        let f = combine(&hom, &reps, &c);
        if karoubi_inverse(a, b, &f)?.is_some() {
            return Ok(SearchOutcome::Found(f));
        }
    }
    Ok(SearchOutcome::NotFound { tried, exhaustive })
}
