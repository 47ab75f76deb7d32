use crate::exactlin::{Matrix, Vector};

use super::{PretrError, TwistedComplex, TwistedHom, TwistedMorphism};

/// An object of the Karoubi envelope of the homotopy category: a twisted complex with a closed
/// degree-0 endomorphism `e` and a witness `h` for `e² - e = dh`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KaroubiObject {
    carrier: TwistedComplex,
    idem: TwistedMorphism,
    witness: TwistedMorphism,
}

impl KaroubiObject {
    pub fn new(carrier: TwistedComplex, idem: TwistedMorphism, witness: TwistedMorphism) -> Result<Self, PretrError> {
        let k = KaroubiObject { carrier, idem, witness };
        k.verify()?;
        Ok(k)
    }

    /// `(x, 1_x)`.
    pub fn whole(x: &TwistedComplex) -> KaroubiObject {
        KaroubiObject { carrier: x.clone(), idem: x.identity(), witness: TwistedMorphism::zero(x, x, -1) }
    }

    /// Re-checks the idempotent and its witness.
    pub fn verify(&self) -> Result<(), PretrError> {
        let (x, e, h) = (&self.carrier, &self.idem, &self.witness);
        if e.src() != x || e.dst() != x || h.src() != x || h.dst() != x {
            return Err(PretrError::ShapeMismatch);
        }
        if e.degree() != 0 || h.degree() != -1 {
            return Err(PretrError::WitnessFailed("idempotent must have degree 0 and witness degree -1".into()));
        }
        if !e.is_closed() {
            return Err(PretrError::NotClosed);
        }
        if e.compose(e)?.sub(e)? != h.d() {
            return Err(PretrError::WitnessFailed("e^2 - e != dh".into()));
        }
        Ok(())
    }

    pub fn carrier(&self) -> &TwistedComplex {
        &self.carrier
    }

    pub fn idempotent(&self) -> &TwistedMorphism {
        &self.idem
    }

    pub fn witness(&self) -> &TwistedMorphism {
        &self.witness
    }

    /// `(x, 1 - e)`, with the same witness.
    pub fn complement(&self) -> KaroubiObject {
        let one = self.carrier.identity();
        let idem = one.sub(&self.idem).expect("same shape");
        KaroubiObject { carrier: self.carrier.clone(), idem, witness: self.witness.clone() }
    }
}

/// Matrix of `[f] ↦ [e_a · f · e_b]` on `H^n Hom(a, b)` in the cohomology basis.
fn sandwich(a: &KaroubiObject, b: &KaroubiObject, n: i64) -> Result<(TwistedHom, Matrix), PretrError> {
    let hom = TwistedHom::new(&a.carrier, &b.carrier)?;
    let basis = hom.complex().cohomology_basis(n);
    let field = a.carrier.base().field();
    let cols: Vec<Vector> = basis
        .representatives()
        .iter()
        .map(|r| {
            let f = hom.morphism(n, r);
            let g = a.idem.compose(&f)?.compose(&b.idem)?;
            Ok(basis.project(&hom.coords(&g))?)
        })
        .collect::<Result<_, PretrError>>()?;
    Ok((hom, Matrix::from_columns(field, basis.dim(), &cols)?))
}

/// `dim e_a H^n Hom(a, b) e_b`.
pub fn karoubi_hom(a: &KaroubiObject, b: &KaroubiObject, n: i64) -> Result<usize, PretrError> {
    a.verify()?;
    b.verify()?;
    Ok(sandwich(a, b, n)?.1.rank())
}

/// Given a closed degree-0 `phi: a → b`, finds `psi: b → a` with `e_a phi psi e_a = e_a` and
/// `e_b psi phi e_b = e_b` in cohomology. Returns the sandwiched `psi` when `phi` is invertible.
pub fn karoubi_inverse(
    a: &KaroubiObject,
    b: &KaroubiObject,
    phi: &TwistedMorphism,
) -> Result<Option<TwistedMorphism>, PretrError> {
    a.verify()?;
    b.verify()?;
    if phi.degree() != 0 || !phi.is_closed() {
        return Err(PretrError::NotClosed);
    }
    let field = a.carrier.base().field();
    let phi = a.idem.compose(phi)?.compose(&b.idem)?;
    let back = TwistedHom::new(&b.carrier, &a.carrier)?;
    let back_basis = back.complex().cohomology_basis(0);
    let end_a = TwistedHom::new(&a.carrier, &a.carrier)?;
    let end_b = TwistedHom::new(&b.carrier, &b.carrier)?;
    let (ba, bb) = (end_a.complex().cohomology_basis(0), end_b.complex().cohomology_basis(0));
    let mut cols = Vec::new();
    let mut psis = Vec::new();
    for r in back_basis.representatives() {
        let psi = b.idem.compose(&back.morphism(0, r))?.compose(&a.idem)?;
        let mut col = ba.project(&end_a.coords(&phi.compose(&psi)?))?;
        col.extend(bb.project(&end_b.coords(&psi.compose(&phi)?))?);
        cols.push(col);
        psis.push(psi);
    }
    let m = Matrix::from_columns(field, ba.dim() + bb.dim(), &cols)?;
    let mut target = ba.project(&end_a.coords(&a.idem))?;
    target.extend(bb.project(&end_b.coords(&b.idem))?);
    let Some(c) = m.solve(&target)? else { return Ok(None) };
    let mut psi = TwistedMorphism::zero(&b.carrier, &a.carrier, 0);
    for (x, p) in c.iter().zip(&psis) {
        psi = psi.add(&p.scaled(x))?;
    }
    Ok(Some(psi))
}
